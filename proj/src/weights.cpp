#include "g2gaps/weights.hpp"

#include <algorithm>
#include <cmath>

namespace g2gaps {

using namespace intmath;

namespace {

const WeightConfig& validated(const WeightConfig& cfg) {
    if (cfg.k < 1)
        throw ValidationError("weights require k >= 1");
    if (cfg.F.k() != cfg.k || cfg.tuple.k() != cfg.k)
        throw ValidationError("F and the shift tuple must have arity k");
    if (!(cfg.R > 1))
        throw ValidationError("weights require R > 1");
    if (cfg.R > 5000)
        throw ValidationError("R too large for exhaustive ideal-tuple enumeration");
    return cfg;
}

} // namespace

WeightSystem::WeightSystem(WeightConfig cfg)
    : cfg_(validated(cfg)),
      table_(cfg_.field, static_cast<i64>(std::floor(cfg_.R))),
      m_(modulus_m(cfg_.field, cfg_.D0)),
      v0_(0, 0) {
    logR_ = std::log(cfg_.R);

    V0Result v = choose_v0(cfg_.field, cfg_.tuple, cfg_.D0);
    if (!v.ok)
        throw ValidationError("no admissible residue v0 exists for this tuple and D0");
    v0_ = v.v0;

    const FieldParams& f = cfg_.field;
    coprime_m_.resize(table_.size(), true);
    if (!f.is_unit(m_)) {
        Factorization fm = factor_element(f, m_);
        for (std::uint32_t i = 0; i < table_.size(); ++i) {
            for (const auto& [p, e] : fm.factors) {
                if (f.divides(p, table_[i].gen)) { coprime_m_[i] = false; break; }
            }
        }
    }

    for (const IdealTuple& d : lambda_support())
        lambda_[d] = lambda_value(d);
}

bool WeightSystem::coprime_to_m(std::uint32_t idx) const { return coprime_m_[idx]; }

namespace {

bool product_squarefree(const IdealTable& t, const IdealTuple& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!t[r[i]].squarefree) return false;
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (!t.coprime(r[i], r[j])) return false;
    }
    return true;
}

double product_norm(const IdealTable& t, const IdealTuple& r) {
    double n = 1;
    for (std::uint32_t i : r) n *= static_cast<double>(t[i].nrm);
    return n;
}

} // namespace

double WeightSystem::y_value(const IdealTuple& r) const {
    if (static_cast<int>(r.size()) != cfg_.k)
        throw ValidationError("tuple arity mismatch");
    if (!product_squarefree(table_, r)) return 0;
    double pn = 1;
    std::vector<long double> x(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!coprime_m_[r[i]]) return 0;
        pn *= static_cast<double>(table_[r[i]].nrm);
        x[i] = logl(static_cast<long double>(table_[r[i]].nrm)) / logR_;
    }
    if (pn > cfg_.R) return 0; // F vanishes outside the closed simplex
    return static_cast<double>(cfg_.F.eval_raw(x));
}

double WeightSystem::lambda_value(const IdealTuple& d) const {
    if (static_cast<int>(d.size()) != cfg_.k)
        throw ValidationError("tuple arity mismatch");
    // support: prod d squarefree, coprime to m, |prod d| < R
    double pn = 1;
    double pref = 1;
    for (std::uint32_t i : d) {
        if (table_[i].mu == 0 || !coprime_m_[i]) return 0;
        pn *= static_cast<double>(table_[i].nrm);
        pref *= static_cast<double>(table_[i].mu) * static_cast<double>(table_[i].nrm);
    }
    if (!(pn < cfg_.R)) return 0;
    if (!product_squarefree(table_, d)) return 0;

    // sum over r-tuples with d_i | r_i, prod r squarefree coprime to m
    double sum = 0;
    IdealTuple r(d.size());
    std::vector<long double> x(d.size());
    std::function<void(std::size_t, double, double)> rec = [&](std::size_t i, double nprod,
                                                               double phiprod) {
        if (i == d.size()) {
            long double val = cfg_.F.eval_raw(x);
            sum += static_cast<double>(val) / phiprod;
            return;
        }
        for (std::uint32_t ri : table_.multiples_of(d[i])) {
            const Ideal& I = table_[ri];
            if (!I.squarefree || !coprime_m_[ri]) continue;
            double np = nprod * static_cast<double>(I.nrm);
            if (np > cfg_.R) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i; ++j)
                if (!table_.coprime(r[j], ri)) { ok = false; break; }
            if (!ok) continue;
            r[i] = ri;
            x[i] = logl(static_cast<long double>(I.nrm)) / logR_;
            rec(i + 1, np, phiprod * static_cast<double>(I.phi));
        }
    };
    rec(0, 1, 1);
    return pref * sum;
}

double WeightSystem::lambda_from_y(const IdealTuple& d) const {
    double pref = 1;
    for (std::uint32_t i : d) {
        if (table_[i].mu == 0) return 0;
        pref *= static_cast<double>(table_[i].mu) * static_cast<double>(table_[i].nrm);
    }
    double pn = product_norm(table_, d);
    if (!(pn < cfg_.R)) return 0;
    // no structural filtering here: y_value handles its own support
    double sum = 0;
    IdealTuple r(d.size());
    std::function<void(std::size_t, double, double)> rec = [&](std::size_t i, double nprod,
                                                               double phiprod) {
        if (i == d.size()) {
            double y = y_value(r);
            if (y != 0) sum += y / phiprod;
            return;
        }
        for (std::uint32_t ri : table_.multiples_of(d[i])) {
            const Ideal& I = table_[ri];
            double np = nprod * static_cast<double>(I.nrm);
            if (np > cfg_.R) continue;
            r[i] = ri;
            rec(i + 1, np, phiprod * static_cast<double>(I.phi));
        }
    };
    rec(0, 1, 1);
    return pref * sum;
}

double WeightSystem::y_from_lambda(const IdealTuple& rt) const {
    double pref = 1;
    for (std::uint32_t i : rt) {
        pref *= static_cast<double>(table_[i].mu) * static_cast<double>(table_[i].phi);
    }
    if (pref == 0) return 0;
    double sum = 0;
    IdealTuple a(rt.size());
    std::function<void(std::size_t, double, double)> rec = [&](std::size_t i, double nprod,
                                                               double normprod) {
        if (i == rt.size()) {
            auto it = lambda_.find(a);
            if (it != lambda_.end()) sum += it->second / normprod;
            return;
        }
        for (std::uint32_t ai : table_.multiples_of(rt[i])) {
            double np = nprod * static_cast<double>(table_[ai].nrm);
            if (np >= cfg_.R) continue; // lambda support bound
            a[i] = ai;
            rec(i + 1, np, normprod * static_cast<double>(table_[ai].nrm));
        }
    };
    rec(0, 1, 1);
    return pref * sum;
}

void WeightSystem::for_each_tuple(double bound,
                                  const std::function<void(const IdealTuple&)>& fn) const {
    IdealTuple t(static_cast<std::size_t>(cfg_.k));
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double nprod) {
        if (i == t.size()) {
            fn(t);
            return;
        }
        for (std::uint32_t idx = 0; idx < table_.size(); ++idx) {
            double np = nprod * static_cast<double>(table_[idx].nrm);
            if (np > bound) continue;
            t[i] = idx;
            rec(i + 1, np);
        }
    };
    rec(0, 1);
}

std::vector<IdealTuple> WeightSystem::lambda_support() const {
    std::vector<IdealTuple> out;
    for_each_tuple(cfg_.R, [&](const IdealTuple& d) {
        double pn = product_norm(table_, d);
        if (!(pn < cfg_.R)) return;
        for (std::uint32_t i : d)
            if (table_[i].mu == 0 || !coprime_m_[i]) return;
        if (!product_squarefree(table_, d)) return;
        out.push_back(d);
    });
    return out;
}

WeightSystem::InversionReport WeightSystem::inversion_check() const {
    InversionReport rep;
    for_each_tuple(cfg_.R, [&](const IdealTuple& d) {
        if (!(product_norm(table_, d) < cfg_.R)) return;
        double direct = lambda_value(d);
        double viay = lambda_from_y(d);
        rep.max_abs_discrepancy = std::max(rep.max_abs_discrepancy, std::abs(direct - viay));
        rep.lambda_max = std::max(rep.lambda_max, std::abs(direct));
        ++rep.tuples_checked;
    });
    for_each_tuple(cfg_.R, [&](const IdealTuple& r) {
        rep.y_max = std::max(rep.y_max, std::abs(y_value(r)));
    });
    return rep;
}

double WeightSystem::inner_lambda_sum(
    const std::vector<std::vector<std::uint32_t>>& divisors) const {
    double sum = 0;
    IdealTuple d(divisors.size());
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double nprod) {
        if (i == d.size()) {
            auto it = lambda_.find(d);
            if (it != lambda_.end()) sum += it->second;
            return;
        }
        for (std::uint32_t di : divisors[i]) {
            double np = nprod * static_cast<double>(table_[di].nrm);
            if (np >= cfg_.R) continue;
            d[i] = di;
            rec(i + 1, np);
        }
    };
    rec(0, 1);
    return sum;
}

namespace {

void check_shell_scale(const FieldParams& f, double N, double R) {
    BoxCount bc = count_box(f, BoxSpec(N, Shell::Dyadic));
    if (bc.count > 10'000'000)
        throw ValidationError("empirical sums are desk-scale only (|A(N)| <= 1e7)");
    // standing assumption R <= |A(N)|^{1/2}
    if (R * R > static_cast<double>(bc.count))
        throw ValidationError("R exceeds |A(N)|^{1/2}");
}

} // namespace

double WeightSystem::empirical_S1(double N) const {
    check_shell_scale(cfg_.field, N, cfg_.R);
    BoxSpec box(N, Shell::Dyadic);
    const FieldParams& f = cfg_.field;
    ResidueSystem rs(f, f.is_unit(m_) ? QuadInt(1, 0) : m_);
    bool all_residues = f.is_unit(m_);
    QuadInt target = all_residues ? QuadInt(0, 0) : rs.reduce(v0_);
    double S1 = 0;
    enumerate_box(f, box, [&](const QuadInt& alpha, i64) {
        if (!all_residues && rs.reduce(alpha) != target) return;
        std::vector<std::vector<std::uint32_t>> divisors;
        for (const QuadInt& h : cfg_.tuple.shifts)
            divisors.push_back(table_.divisors_of_element(f.add(alpha, h)));
        double inner = inner_lambda_sum(divisors);
        S1 += inner * inner;
    });
    return S1;
}

double WeightSystem::empirical_S2(double N) const {
    check_shell_scale(cfg_.field, N, cfg_.R);
    BoxSpec box(N, Shell::Dyadic);
    const FieldParams& f = cfg_.field;
    ResidueSystem rs(f, f.is_unit(m_) ? QuadInt(1, 0) : m_);
    bool all_residues = f.is_unit(m_);
    QuadInt target = all_residues ? QuadInt(0, 0) : rs.reduce(v0_);
    double S2 = 0;
    enumerate_box(f, box, [&](const QuadInt& alpha, i64) {
        if (!all_residues && rs.reduce(alpha) != target) return;
        int bsum = 0;
        std::vector<std::vector<std::uint32_t>> divisors;
        for (const QuadInt& h : cfg_.tuple.shifts) {
            QuadInt shifted = f.add(alpha, h);
            bsum += beta(f, shifted, N, cfg_.beta_params);
            divisors.push_back(table_.divisors_of_element(shifted));
        }
        if (bsum == 0) return;
        double inner = inner_lambda_sum(divisors);
        S2 += bsum * inner * inner;
    });
    return S2;
}

i64 WeightSystem::g_value(std::uint32_t idx) const {
    i64 g = 1;
    for (const auto& [pi, e] : table_[idx].fac) {
        i64 gp = table_.primes()[pi].nrm - 2;
        for (int j = 0; j < e; ++j) g = checked_mul(g, gp);
    }
    return g;
}

double WeightSystem::y_m_value(int m, const IdealTuple& u, std::uint32_t w1_ideal) const {
    if (static_cast<int>(u.size()) != cfg_.k)
        throw ValidationError("tuple arity mismatch");
    if (table_[u[static_cast<std::size_t>(m)]].nrm != 1)
        throw ValidationError("y^{(m)} requires u_m to be the unit ideal");
    const Ideal& w1 = table_[w1_ideal];
    if (w1.fac.size() != 1 || w1.fac[0].second != 1)
        throw ValidationError("y^{(m)} requires w1 to be a prime ideal");
    double pref = 1;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (static_cast<int>(j) == m) continue;
        pref *= static_cast<double>(table_[u[j]].mu) * static_cast<double>(g_value(u[j]));
    }
    if (pref == 0) return 0;
    double sum = 0;
    IdealTuple a(u.size());
    std::function<void(std::size_t, double, double)> rec = [&](std::size_t i, double nprod,
                                                               double phiprod) {
        if (i == u.size()) {
            auto it = lambda_.find(a);
            if (it != lambda_.end()) sum += it->second / phiprod;
            return;
        }
        if (static_cast<int>(i) == m) {
            // a_m | (w1): unit ideal or (w1) itself
            for (std::uint32_t am : {std::uint32_t(0), w1_ideal}) {
                double np = nprod * static_cast<double>(table_[am].nrm);
                if (np >= cfg_.R) continue;
                a[i] = am;
                rec(i + 1, np, phiprod);
            }
            return;
        }
        for (std::uint32_t ai : table_.multiples_of(u[i])) {
            double np = nprod * static_cast<double>(table_[ai].nrm);
            if (np >= cfg_.R) continue;
            a[i] = ai;
            rec(i + 1, np, phiprod * static_cast<double>(table_[ai].phi));
        }
    };
    rec(0, 1, 1);
    return pref * sum;
}

} // namespace g2gaps
