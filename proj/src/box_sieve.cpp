#include "g2gaps/box_sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "g2gaps/parallel.hpp"
#include "g2gaps/residues.hpp"

namespace g2gaps {

using namespace intmath;

std::pair<i64, i64> BoxSpec::norm_range() const {
    if (!(N >= 1))
        throw ValidationError("box requires N >= 1");
    long double N2 = static_cast<long double>(N) * N;
    long double top = (shell == Shell::Full) ? N2 : 4.0L * N2;
    if (top > 0x1p60)
        throw ValidationError("box norm bound exceeds the 2^60 working range");
    i64 n2 = static_cast<i64>(floorl(N2 + 1e-9L));
    i64 hi = static_cast<i64>(floorl(top + 1e-9L));
    i64 lo = (shell == Shell::Full) ? 1 : n2 + 1;
    return {lo, hi};
}

void BetaParams::validate() const {
    if (!(theta > 0 && theta <= 1))
        throw ValidationError("theta must lie in (0, 1]");
    if (!(b > theta / 2 && b <= mpq_class(1, 2)))
        throw ValidationError("b must lie in (theta/2, 1/2]");
    if (!(Yprime >= 1.0))
        throw ValidationError("Y' must be >= 1");
    if (!(eta >= 0))
        throw ValidationError("eta must be nonnegative");
}

BetaParams BetaParams::from_eta(double N, const mpq_class& theta, const mpq_class& b,
                                const mpq_class& eta) {
    BetaParams p;
    p.b = b;
    p.theta = theta;
    p.eta = eta;
    p.Yprime = std::pow(N, mpq_get_d(eta.get_mpq_t()));
    p.validate();
    return p;
}

void SieveCensus::absorb(const SieveCensus& o) {
    total += o.total;
    primes += o.primes;
    g2 += o.g2;
    beta_ones += o.beta_ones;
    for (const BandRow& r : o.bands) {
        auto it = std::find_if(bands.begin(), bands.end(),
                               [&](const BandRow& x) { return x.log2_lo == r.log2_lo; });
        if (it == bands.end()) bands.push_back(r);
        else {
            it->total += r.total;
            it->primes += r.primes;
            it->g2 += r.g2;
            it->beta_ones += r.beta_ones;
        }
    }
    std::sort(bands.begin(), bands.end(),
              [](const BandRow& l, const BandRow& r) { return l.log2_lo < r.log2_lo; });
}

NormClassifier::NormClassifier(const FieldParams& f, i64 lo, i64 hi) : lo_(lo), hi_(hi) {
    std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    info_.assign(len, NormInfo{});
    std::vector<i64> rem(len);
    for (std::size_t i = 0; i < len; ++i) rem[i] = lo + static_cast<i64>(i);

    auto add_factor = [](NormInfo& in, i64 fn, int count) {
        for (int c = 0; c < count; ++c) {
            if (in.omega == 0) in.f1 = fn;
            else if (in.omega == 1) {
                in.f2 = fn;
                if (in.f2 < in.f1) std::swap(in.f1, in.f2);
            }
            ++in.omega;
        }
    };

    i64 root = static_cast<i64>(isqrt(static_cast<u64>(hi)));
    for (i64 p : primes_up_to(root)) {
        // p is prime by construction; classify by the Kronecker symbol directly
        SplitType t = f.disc() % p == 0 ? SplitType::Ramified
                      : kronecker(f.disc(), p) == 1 ? SplitType::Split
                                                    : SplitType::Inert;
        i64 start = std::max(p, ((lo + p - 1) / p) * p);
        for (i64 n = start; n <= hi; n += p) {
            std::size_t idx = static_cast<std::size_t>(n - lo);
            int v = 0;
            while (rem[idx] % p == 0) { rem[idx] /= p; ++v; }
            if (v == 0) continue;
            NormInfo& in = info_[idx];
            if (t == SplitType::Inert) {
                if (v % 2 != 0) { in.valid = false; continue; }
                add_factor(in, p * p, v / 2);
            } else {
                add_factor(in, p, v);
            }
        }
    }
    // leftover cofactors are primes > sqrt(hi)
    for (std::size_t i = 0; i < len; ++i) {
        i64 q = rem[i];
        if (q <= 1) continue;
        NormInfo& in = info_[i];
        if (f.disc() % q == 0) { add_factor(in, q, 1); continue; }
        int k = kronecker(f.disc(), q);
        if (k == 1) add_factor(in, q, 1);
        else in.valid = false; // inert prime at odd valuation: not a norm
    }
    // n = 1 has omega 0 (units)
    if (lo <= 1 && 1 <= hi) info_[static_cast<std::size_t>(1 - lo)] = NormInfo{0, 0, 0, true};
}

namespace {

// Visits every lattice point (a, b) of the field with lo <= norm <= hi,
// using 4*norm = s^2 + |disc|*b^2, s = 2a + q1*b. Unordered.
template <typename Fn>
void visit_lattice(const FieldParams& f, i64 lo, i64 hi, Fn&& fn) {
    const i64 absdisc = -f.disc();
    const i64 q1 = f.norm_q1();
    if (hi < lo) return;
    if (hi > (i64(1) << 62) / 4)
        throw ValidationError("norm range exceeds the working bound");
    const i64 bmax = static_cast<i64>(isqrt(static_cast<u64>((4 * hi) / absdisc)));
    for (i64 b = -bmax; b <= bmax; ++b) {
        i64 c = absdisc * b * b;
        i64 s2max = 4 * hi - c;
        if (s2max < 0) continue;
        i64 smax = static_cast<i64>(isqrt(static_cast<u64>(s2max)));
        i64 s2min = 4 * lo - c;
        i64 smin = s2min <= 0 ? 0 : static_cast<i64>(isqrt(static_cast<u64>(s2min - 1))) + 1;
        // s must have the parity of q1*b
        i64 parity = mod_floor(q1 * b, 2);
        for (i64 s = smin + (mod_floor(smin, 2) == parity ? 0 : 1); s <= smax; s += 2) {
            i64 n = (s * s + c) / 4;
            i64 a = (s - q1 * b) / 2;
            fn(QuadInt{a, b}, n);
            if (s != 0) fn(QuadInt{(-s - q1 * b) / 2, b}, n);
        }
    }
}

int band_of(i64 n) { return 63 - std::countl_zero(static_cast<std::uint64_t>(n)); }

// fixed-slot accumulator, converted to sparse rows once per segment
struct BandAccum {
    std::array<BandRow, 63> rows{};

    BandRow& at(i64 n) {
        int j = band_of(n);
        rows[static_cast<std::size_t>(j)].log2_lo = j;
        return rows[static_cast<std::size_t>(j)];
    }
    void flush(SieveCensus& c) const {
        for (const BandRow& r : rows)
            if (r.total > 0) c.bands.push_back(r);
    }
};

struct BetaThresholds {
    long double y_lo;  // (Y')^2
    long double t;     // N^{2b}
};

BetaThresholds beta_thresholds(double N, const BetaParams& p) {
    long double yl = static_cast<long double>(p.Yprime) * p.Yprime;
    long double expo = 2.0L * mpq_get_d(p.b.get_mpq_t());
    long double t = powl(static_cast<long double>(N), expo);
    if (yl > t * (1 + 1e-12L))
        throw ValidationError("beta window is empty: Y' must not exceed N^b");
    return {yl, t};
}

bool beta_from_info(const NormInfo& in, const BetaThresholds& th) {
    if (!in.valid || in.omega != 2) return false;
    long double m1 = static_cast<long double>(in.f1);
    long double m2 = static_cast<long double>(in.f2);
    return m1 >= th.y_lo && m1 <= th.t && m2 > th.t;
}

std::vector<std::pair<i64, i64>> make_segments(i64 lo, i64 hi, i64 seg) {
    std::vector<std::pair<i64, i64>> out;
    for (i64 s = lo; s <= hi; s += seg)
        out.push_back({s, std::min(hi, s + seg - 1)});
    return out;
}

} // namespace

BoxCount count_box(const FieldParams& f, const BoxSpec& box) {
    auto [lo, hi] = box.norm_range();
    const i64 absdisc = -f.disc();
    const i64 q1 = f.norm_q1();
    i64 count = 0;
    const i64 bmax = static_cast<i64>(isqrt(static_cast<u64>((4 * hi) / absdisc)));
    for (i64 b = -bmax; b <= bmax; ++b) {
        i64 c = absdisc * b * b;
        i64 s2max = 4 * hi - c;
        if (s2max < 0) continue;
        i64 smax = static_cast<i64>(isqrt(static_cast<u64>(s2max)));
        i64 s2min = 4 * lo - c;
        i64 smin = s2min <= 0 ? 0 : static_cast<i64>(isqrt(static_cast<u64>(s2min - 1))) + 1;
        i64 parity = mod_floor(q1 * b, 2);
        // count s in [smin, smax] with s ≡ parity (mod 2), both signs, 0 once
        auto count_side = [&](i64 a_, i64 b_) {
            if (b_ < a_) return i64(0);
            i64 first = a_ + (mod_floor(a_, 2) == parity ? 0 : 1);
            if (first > b_) return i64(0);
            return (b_ - first) / 2 + 1;
        };
        i64 pos = count_side(std::max<i64>(smin, 1), smax);
        count += 2 * pos;
        if (smin == 0 && parity == 0) count += 1; // s = 0
    }
    const double pi = 3.14159265358979323846;
    double N2 = box.N * box.N;
    double expected = (box.shell == Shell::Full ? 2.0 : 6.0) * pi * N2 / std::sqrt(double(absdisc));
    return {count, expected, double(count) / expected};
}

void enumerate_box(const FieldParams& f, const BoxSpec& box,
                   const std::function<void(const QuadInt&, i64)>& emit) {
    auto [lo, hi] = box.norm_range();
    struct Row { i64 n; QuadInt x; };
    for (auto [slo, shi] : make_segments(lo, hi, i64(1) << 20)) {
        std::vector<Row> rows;
        visit_lattice(f, slo, shi, [&](const QuadInt& x, i64 n) { rows.push_back({n, x}); });
        std::sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) {
            if (l.n != r.n) return l.n < r.n;
            return coord_less(l.x, r.x);
        });
        for (const Row& r : rows) emit(r.x, r.n);
    }
}

namespace {

SieveCensus census_segment(const FieldParams& f, i64 lo, i64 hi, double N, const BetaParams* bp) {
    NormClassifier cls(f, lo, hi);
    SieveCensus c;
    BandAccum acc;
    BetaThresholds th{0, 0};
    if (bp) th = beta_thresholds(N, *bp);
    visit_lattice(f, lo, hi, [&](const QuadInt&, i64 n) {
        const NormInfo& in = cls.info(n);
        BandRow& row = acc.at(n);
        ++c.total;
        ++row.total;
        if (!in.valid)
            throw ConsistencyError("lattice point with a non-norm norm value");
        if (in.omega == 1) { ++c.primes; ++row.primes; }
        else if (in.omega == 2) {
            ++c.g2;
            ++row.g2;
            if (bp && beta_from_info(in, th)) { ++c.beta_ones; ++row.beta_ones; }
        }
    });
    acc.flush(c);
    return c;
}

} // namespace

SieveCensus census_box(const FieldParams& f, const BoxSpec& box, const SieveOptions& opts) {
    auto [lo, hi] = box.norm_range();
    if (opts.beta) opts.beta->validate();
    auto segs = make_segments(lo, hi, opts.segment_size);
    std::vector<SieveCensus> parts(segs.size());
    parallel_for_index(segs.size(), [&](std::size_t i) {
        parts[i] = census_segment(f, segs[i].first, segs[i].second, box.N, opts.beta);
    }, opts.threads);
    SieveCensus out;
    for (const SieveCensus& p : parts) out.absorb(p);
    return out;
}

SieveCensus sieve_primes(const FieldParams& f, const BoxSpec& box,
                         const std::function<void(const QuadInt&, i64)>& emit,
                         const SieveOptions& opts) {
    auto [lo, hi] = box.norm_range();
    if (opts.beta) opts.beta->validate();
    auto segs = make_segments(lo, hi, opts.segment_size);
    std::vector<SieveCensus> parts(segs.size());
    struct Row { i64 n; QuadInt x; };
    std::vector<std::vector<Row>> emitted(segs.size());
    parallel_for_index(segs.size(), [&](std::size_t i) {
        auto [slo, shi] = segs[i];
        NormClassifier cls(f, slo, shi);
        SieveCensus c;
        BandAccum acc;
        BetaThresholds th{0, 0};
        if (opts.beta) th = beta_thresholds(box.N, *opts.beta);
        std::vector<Row>& rows = emitted[i];
        visit_lattice(f, slo, shi, [&](const QuadInt& x, i64 n) {
            const NormInfo& in = cls.info(n);
            BandRow& row = acc.at(n);
            ++c.total;
            ++row.total;
            if (in.omega == 1) {
                ++c.primes;
                ++row.primes;
                rows.push_back({n, x});
            } else if (in.omega == 2) {
                ++c.g2;
                ++row.g2;
                if (opts.beta && beta_from_info(in, th)) { ++c.beta_ones; ++row.beta_ones; }
            }
        });
        acc.flush(c);
        std::sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) {
            if (l.n != r.n) return l.n < r.n;
            return coord_less(l.x, r.x);
        });
        parts[i] = c;
    }, opts.threads);
    SieveCensus out;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        out.absorb(parts[i]);
        for (const Row& r : emitted[i]) emit(r.x, r.n);
    }
    return out;
}

int beta(const FieldParams& f, const QuadInt& x, double N, const BetaParams& p) {
    p.validate();
    if (x.is_zero())
        throw ValidationError("beta of zero");
    if (f.is_unit(x)) return 0;
    Factorization fac = factor_element(f, x);
    if (fac.big_omega() != 2) return 0;
    i64 m1, m2;
    if (fac.factors.size() == 1) {
        m1 = m2 = f.norm(fac.factors[0].first);
    } else {
        m1 = f.norm(fac.factors[0].first);
        m2 = f.norm(fac.factors[1].first);
        if (m1 > m2) std::swap(m1, m2);
    }
    BetaThresholds th = beta_thresholds(N, p);
    return beta_from_info(NormInfo{2, m1, m2, true}, th) ? 1 : 0;
}

namespace {

// Shared scan over A(N) with per-element prime/beta flags.
template <typename Fn>
void scan_shell(const FieldParams& f, double N, const BetaParams* bp, Fn&& fn) {
    BoxSpec box(N, Shell::Dyadic);
    auto [lo, hi] = box.norm_range();
    BetaThresholds th{0, 0};
    if (bp) th = beta_thresholds(N, *bp);
    for (auto [slo, shi] : make_segments(lo, hi, i64(1) << 20)) {
        NormClassifier cls(f, slo, shi);
        visit_lattice(f, slo, shi, [&](const QuadInt& x, i64 n) {
            const NormInfo& in = cls.info(n);
            bool is_prime = in.omega == 1;
            bool is_beta = bp && beta_from_info(in, th);
            fn(x, n, is_prime, is_beta);
        });
    }
}

} // namespace

i64 pi_flat(const FieldParams& f, double N) {
    i64 c = 0;
    scan_shell(f, N, nullptr, [&](const QuadInt&, i64, bool p, bool) { if (p) ++c; });
    return c;
}

i64 pi_flat_residue(const FieldParams& f, double N, const QuadInt& q, const QuadInt& a) {
    if (q.is_zero())
        throw ValidationError("residue count requires a nonzero modulus");
    if (f.is_unit(q)) return pi_flat(f, N);
    ResidueSystem rs(f, q);
    QuadInt target = rs.reduce(a);
    i64 c = 0;
    scan_shell(f, N, nullptr, [&](const QuadInt& x, i64, bool p, bool) {
        if (p && rs.reduce(x) == target) ++c;
    });
    return c;
}

i64 pi_beta(const FieldParams& f, double N, const BetaParams& p) {
    p.validate();
    i64 c = 0;
    scan_shell(f, N, &p, [&](const QuadInt&, i64, bool, bool b) { if (b) ++c; });
    return c;
}

i64 pi_beta_residue(const FieldParams& f, double N, const BetaParams& p, const QuadInt& q,
                    const QuadInt& gamma) {
    p.validate();
    if (q.is_zero())
        throw ValidationError("residue count requires a nonzero modulus");
    if (f.is_unit(q)) return pi_beta(f, N, p);
    ResidueSystem rs(f, q);
    QuadInt target = rs.reduce(gamma);
    i64 c = 0;
    scan_shell(f, N, &p, [&](const QuadInt& x, i64, bool, bool b) {
        if (b && rs.reduce(x) == target) ++c;
    });
    return c;
}

i64 pi_beta_coprime(const FieldParams& f, double N, const BetaParams& p, const QuadInt& u) {
    p.validate();
    if (u.is_zero())
        throw ValidationError("coprimality count requires a nonzero u");
    Factorization fu = factor_element(f, u);
    i64 c = 0;
    scan_shell(f, N, &p, [&](const QuadInt& x, i64, bool, bool b) {
        if (!b) return;
        for (const auto& [pe, e] : fu.factors)
            if (f.divides(pe, x)) return;
        ++c;
    });
    return c;
}

i64 prime_count_by_splitting(const FieldParams& f, i64 lo, i64 hi) {
    // prime elements have norm p (split: two ideals, ramified: one) or p^2 (inert)
    i64 w = f.w_K();
    i64 count = 0;
    for (i64 p : primes_up_to(hi)) {
        SplitType t = split_type(f, p);
        if (t == SplitType::Inert) {
            if (p <= hi / p && p * p >= lo) count += w;
        } else if (p >= lo) {
            count += (t == SplitType::Split) ? 2 * w : w;
        }
    }
    return count;
}

} // namespace g2gaps
