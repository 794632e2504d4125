#include "g2gaps/arithmetic.hpp"

#include <algorithm>
#include <cmath>

namespace g2gaps {

using namespace intmath;

std::string to_string(SplitType t) {
    switch (t) {
        case SplitType::Split: return "split";
        case SplitType::Inert: return "inert";
        case SplitType::Ramified: return "ramified";
    }
    return "?";
}

std::string to_string(ElementTag t) {
    switch (t) {
        case ElementTag::Zero: return "zero";
        case ElementTag::Unit: return "unit";
        case ElementTag::Prime: return "prime";
        case ElementTag::G2: return "g2";
        case ElementTag::Composite: return "composite";
    }
    return "?";
}

SplitType split_type(const FieldParams& f, i64 p) {
    if (p < 2 || !is_prime_u64(static_cast<u64>(p)))
        throw ValidationError("split_type requires a rational prime");
    if (f.disc() % p == 0) return SplitType::Ramified;
    int k = kronecker(f.disc(), p);
    return k == 1 ? SplitType::Split : SplitType::Inert;
}

namespace {

// Root of the minimal polynomial of omega modulo p, when one exists.
// x^2 - d for omega = sqrt(d); x^2 - x + (1-d)/4 for omega = (1+sqrt(d))/2.
std::optional<i64> omega_root_mod_p(const FieldParams& f, i64 p) {
    if (p == 2) {
        for (i64 t = 0; t < 2; ++t) {
            i64 v = (f.omega_kind() == OmegaKind::SqrtD)
                        ? t * t - f.d()
                        : t * t - t + f.norm_q0();
            if (mod_floor(v, 2) == 0) return t;
        }
        return std::nullopt;
    }
    if (f.omega_kind() == OmegaKind::SqrtD) {
        auto s = sqrt_mod_p(static_cast<u64>(mod_floor(f.d(), p)), static_cast<u64>(p));
        if (!s) return std::nullopt;
        return static_cast<i64>(*s);
    }
    // roots of x^2 - x + q0: (1 +- sqrt(1 - 4 q0)) / 2 = (1 +- sqrt(d)) / 2 mod p
    auto s = sqrt_mod_p(static_cast<u64>(mod_floor(f.d(), p)), static_cast<u64>(p));
    if (!s) return std::nullopt;
    u64 inv2 = powmod(2, static_cast<u64>(p - 2), static_cast<u64>(p));
    return static_cast<i64>(mulmod(1 + *s, inv2, static_cast<u64>(p)));
}

// Gauss (Lagrange) reduction of the rank-2 lattice spanned by v1, v2 in O_K
// under the norm form; returns a shortest nonzero vector.
QuadInt gauss_reduce(const FieldParams& f, QuadInt v1, QuadInt v2) {
    auto ip = [&](const QuadInt& x, const QuadInt& y) -> i128 {
        // twice the polar form of the norm: N(x+y) - N(x) - N(y)
        return static_cast<i128>(2) * x.a * y.a + static_cast<i128>(f.norm_q1()) * (x.a * y.b + x.b * y.a) +
               static_cast<i128>(2) * f.norm_q0() * x.b * y.b;
    };
    if (f.norm(v1) < f.norm(v2)) std::swap(v1, v2);
    while (true) {
        // round(ip / (2 N(v2)))
        i128 num = ip(v1, v2);
        i128 den = static_cast<i128>(2) * f.norm(v2);
        i128 q = (num >= 0 ? (num + den / 2) : (num - den / 2)) / den;
        QuadInt r = v1;
        if (q != 0) {
            QuadInt qv{static_cast<i64>(q * v2.a), static_cast<i64>(q * v2.b)};
            r = f.sub(v1, qv);
        }
        if (f.norm(r) >= f.norm(v2)) return v2;
        v1 = v2;
        v2 = r;
    }
}

} // namespace

QuadInt prime_above(const FieldParams& f, i64 p) {
    SplitType t = split_type(f, p);
    if (t == SplitType::Inert)
        throw ValidationError("no element of norm p exists above an inert prime");
    auto root = omega_root_mod_p(f, p);
    if (!root)
        throw ValidationError("internal: no omega root for non-inert prime");
    i64 r0 = mod_floor(*root, p);
    if (r0 > p / 2) r0 -= p;
    // The ideal (p, omega - t) has norm p and equals the lattice
    // Z*p + Z*(omega - t); its shortest vector is a generator.
    QuadInt g = gauss_reduce(f, QuadInt(p, 0), QuadInt(-r0, 1));
    if (f.norm(g) != p)
        throw ConsistencyError("prime_above: reduced vector has wrong norm");
    return f.canonical_associate(g);
}

Factorization factor_element(const FieldParams& f, const QuadInt& x) {
    if (x.is_zero())
        throw ValidationError("cannot factor zero");
    Factorization out;
    i64 n = f.norm(x);
    QuadInt rest = x;
    for (auto [pu, e] : factor_u64(static_cast<u64>(n))) {
        i64 p = static_cast<i64>(pu);
        SplitType t = split_type(f, p);
        if (t == SplitType::Inert) {
            if (e % 2 != 0)
                throw ConsistencyError("odd inert valuation in a norm");
            QuadInt gen(p, 0);
            out.factors.push_back({gen, e / 2});
            for (int i = 0; i < e / 2; ++i) rest = f.divide_exact(rest, gen);
        } else if (t == SplitType::Ramified) {
            QuadInt pi = prime_above(f, p);
            out.factors.push_back({pi, e});
            for (int i = 0; i < e; ++i) rest = f.divide_exact(rest, pi);
        } else {
            QuadInt pi = prime_above(f, p);
            QuadInt pib = f.canonical_associate(f.conjugate(pi));
            int e1 = 0;
            while (true) {
                auto q = f.try_divide(rest, pi);
                if (!q) break;
                rest = *q;
                ++e1;
            }
            int e2 = e - e1;
            for (int i = 0; i < e2; ++i) rest = f.divide_exact(rest, pib);
            if (e1 > 0) out.factors.push_back({pi, e1});
            if (e2 > 0) out.factors.push_back({pib, e2});
        }
    }
    if (!f.is_unit(rest))
        throw ConsistencyError("factor_element: residual quotient is not a unit");
    out.unit = rest;
    std::sort(out.factors.begin(), out.factors.end(), [&](const auto& l, const auto& r) {
        i64 nl = f.norm(l.first), nr = f.norm(r.first);
        if (nl != nr) return nl < nr;
        return coord_less(l.first, r.first);
    });
    return out;
}

ElementClass classify(const FieldParams& f, const QuadInt& x) {
    if (x.is_zero()) return {ElementTag::Zero, 0};
    if (f.is_unit(x)) return {ElementTag::Unit, 0};
    int om = factor_element(f, x).big_omega();
    ElementTag tag = om == 1 ? ElementTag::Prime : om == 2 ? ElementTag::G2 : ElementTag::Composite;
    return {tag, om};
}

i64 ideal_count(const FieldParams& f, i64 n) {
    if (n < 1)
        throw ValidationError("ideal_count requires n >= 1");
    i64 r = 1;
    for (auto [pu, e] : factor_u64(static_cast<u64>(n))) {
        i64 p = static_cast<i64>(pu);
        SplitType t = split_type(f, p);
        if (t == SplitType::Split) r *= (e + 1);
        else if (t == SplitType::Inert) { if (e % 2 != 0) return 0; }
        // ramified contributes factor 1
    }
    return r;
}

std::vector<std::int32_t> ideal_count_table(const FieldParams& f, i64 X) {
    std::vector<std::int32_t> r(static_cast<std::size_t>(X + 1), 0);
    for (i64 m = 1; m <= X; ++m) {
        int c = kronecker(f.disc(), m);
        if (c == 0) continue;
        for (i64 n = m; n <= X; n += m) r[static_cast<std::size_t>(n)] += c;
    }
    return r;
}

double residue_check(const FieldParams& f, i64 X) {
    if (X < 1000)
        throw ValidationError("residue_check requires X >= 10^3");
    auto r = ideal_count_table(f, X);
    i64 sum = 0;
    for (i64 n = 1; n <= X; ++n) sum += r[static_cast<std::size_t>(n)];
    return static_cast<double>(sum) / static_cast<double>(X);
}

int mobius(const Factorization& fac) {
    for (const auto& [p, e] : fac.factors)
        if (e >= 2) return 0;
    return fac.factors.size() % 2 == 0 ? 1 : -1;
}

i64 euler_phi(const FieldParams& f, const Factorization& fac) {
    i64 phi = 1;
    for (const auto& [p, e] : fac.factors) {
        i64 np = f.norm(p);
        i64 q = 1;
        for (int i = 0; i < e - 1; ++i) q = checked_mul(q, np);
        phi = checked_mul(phi, checked_mul(q, np - 1));
    }
    return phi;
}

i64 tau_k(const Factorization& fac, int k) {
    // tau_k(p^e) = C(e + k - 1, k - 1)
    i64 t = 1;
    for (const auto& [p, e] : fac.factors) {
        i64 binom = 1;
        for (int i = 1; i <= k - 1; ++i)
            binom = binom * (e + i) / i;
        t = checked_mul(t, binom);
    }
    return t;
}

int omega_distinct(const Factorization& fac) {
    return static_cast<int>(fac.factors.size());
}

std::vector<PrimeIdeal> prime_ideals_up_to(const FieldParams& f, i64 limit) {
    std::vector<PrimeIdeal> out;
    for (i64 p : primes_up_to(limit)) {
        SplitType t = split_type(f, p);
        if (t == SplitType::Inert) {
            if (p <= limit / p) // p^2 <= limit without overflow
                out.push_back({QuadInt(p, 0), p * p, p, t});
        } else if (t == SplitType::Ramified) {
            out.push_back({prime_above(f, p), p, p, t});
        } else {
            QuadInt pi = prime_above(f, p);
            QuadInt pib = f.canonical_associate(f.conjugate(pi));
            out.push_back({pi, p, p, t});
            out.push_back({pib, p, p, t});
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& l, const PrimeIdeal& r) {
        if (l.nrm != r.nrm) return l.nrm < r.nrm;
        return coord_less(l.gen, r.gen);
    });
    return out;
}

SingularSeriesResult singular_series(const FieldParams& f,
                                     const std::function<mpq_class(const PrimeIdeal&)>& gamma,
                                     const mpq_class& kappa, i64 cutoff) {
    long double kap = mpq_get_d(kappa.get_mpq_t());
    long double value = 1.0L;
    long double at_decade = 1.0L;
    i64 decade_mark = cutoff / 10;
    auto primes = prime_ideals_up_to(f, cutoff);
    for (const PrimeIdeal& P : primes) {
        mpq_class g = gamma(P);
        if (g == P.nrm)
            throw ValidationError("singular_series: gamma(p) = |p| gives a zero factor");
        long double gp = mpq_get_d(g.get_mpq_t());
        long double np = static_cast<long double>(P.nrm);
        long double factor = powl(1.0L - 1.0L / np, kap) / (1.0L - gp / np);
        if (P.nrm <= decade_mark) at_decade *= factor;
        value *= factor;
    }
    SingularSeriesResult res;
    res.value = static_cast<double>(value);
    res.last_decade_rel_change =
        value != 0.0L ? static_cast<double>(fabsl(value - at_decade) / fabsl(value)) : 0.0;
    return res;
}

std::pair<double, double> mertens_sums(const FieldParams& f, i64 R) {
    if (R < 10)
        throw ValidationError("mertens_sums requires R >= 10");
    auto r = ideal_count_table(f, R);
    long double ideal_sum = 0;
    for (i64 n = 1; n <= R; ++n)
        ideal_sum += static_cast<long double>(r[static_cast<std::size_t>(n)]) / n;
    long double prime_sum = 0;
    for (const PrimeIdeal& P : prime_ideals_up_to(f, R))
        prime_sum += 1.0L / static_cast<long double>(P.nrm);
    return {static_cast<double>(ideal_sum), static_cast<double>(prime_sum)};
}

IdealTable::IdealTable(const FieldParams& f, i64 limit) : f_(f), limit_(limit) {
    primes_ = prime_ideals_up_to(f, limit);
    // depth-first products over the prime list
    ideals_.push_back(Ideal{QuadInt(1, 0), 1, {}, 1, 1, true});
    std::vector<std::pair<std::uint32_t, int>> fac;
    std::function<void(std::size_t, QuadInt, i64)> rec = [&](std::size_t i, QuadInt gen, i64 nrm) {
        if (i == primes_.size()) {
            if (nrm > 1) {
                Ideal id;
                id.gen = f_.canonical_associate(gen);
                id.nrm = nrm;
                id.fac = fac;
                id.mu = 1;
                id.phi = 1;
                id.squarefree = true;
                for (auto& [pi, e] : fac) {
                    i64 np = primes_[pi].nrm;
                    i64 q = 1;
                    for (int j = 0; j < e - 1; ++j) q *= np;
                    id.phi *= q * (np - 1);
                    if (e >= 2) { id.squarefree = false; id.mu = 0; }
                }
                if (id.squarefree) id.mu = (fac.size() % 2 == 0) ? 1 : -1;
                ideals_.push_back(std::move(id));
            }
            return;
        }
        rec(i + 1, gen, nrm);
        QuadInt g = gen;
        i64 n = nrm;
        for (int e = 1;; ++e) {
            if (primes_[i].nrm > limit_ / n) break;
            n *= primes_[i].nrm;
            g = f_.mul(g, primes_[i].gen);
            fac.push_back({static_cast<std::uint32_t>(i), e});
            rec(i + 1, g, n);
            fac.pop_back();
        }
    };
    rec(0, QuadInt(1, 0), 1);
    std::sort(ideals_.begin(), ideals_.end(), [](const Ideal& l, const Ideal& r) {
        if (l.nrm != r.nrm) return l.nrm < r.nrm;
        return coord_less(l.gen, r.gen);
    });
    for (std::uint32_t i = 0; i < ideals_.size(); ++i)
        by_gen_[{ideals_[i].gen.a, ideals_[i].gen.b}] = i;

    multiples_.resize(ideals_.size());
    for (std::uint32_t a = 0; a < ideals_.size(); ++a)
        for (std::uint32_t b = 0; b < ideals_.size(); ++b)
            if (divides(a, b)) multiples_[a].push_back(b);
}

std::optional<std::uint32_t> IdealTable::index_of(const QuadInt& g) const {
    auto it = by_gen_.find({g.a, g.b});
    if (it == by_gen_.end()) return std::nullopt;
    return it->second;
}

bool IdealTable::divides(std::uint32_t a, std::uint32_t b) const {
    const auto& fa = ideals_[a].fac;
    const auto& fb = ideals_[b].fac;
    std::size_t j = 0;
    for (const auto& [pi, e] : fa) {
        while (j < fb.size() && fb[j].first < pi) ++j;
        if (j == fb.size() || fb[j].first != pi || fb[j].second < e) return false;
    }
    return true;
}

bool IdealTable::coprime(std::uint32_t a, std::uint32_t b) const {
    const auto& fa = ideals_[a].fac;
    const auto& fb = ideals_[b].fac;
    std::size_t i = 0, j = 0;
    while (i < fa.size() && j < fb.size()) {
        if (fa[i].first == fb[j].first) return false;
        if (fa[i].first < fb[j].first) ++i;
        else ++j;
    }
    return true;
}

const std::vector<std::uint32_t>& IdealTable::multiples_of(std::uint32_t a) const {
    return multiples_[a];
}

std::vector<std::uint32_t> IdealTable::divisors_of_element(const QuadInt& x) const {
    Factorization fx = factor_element(f_, x);
    // valuation of x at each tabulated prime ideal
    std::vector<int> val(primes_.size(), 0);
    for (const auto& [p, e] : fx.factors) {
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            if (primes_[i].gen == p) { val[i] = e; break; }
        }
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < ideals_.size(); ++i) {
        bool ok = true;
        for (const auto& [pi, e] : ideals_[i].fac)
            if (e > val[pi]) { ok = false; break; }
        if (ok) out.push_back(i);
    }
    return out;
}

} // namespace g2gaps
