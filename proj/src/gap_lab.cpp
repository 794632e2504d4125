#include "g2gaps/gap_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "g2gaps/residues.hpp"

namespace g2gaps {

using namespace intmath;

void find_gap_pairs(const FieldParams& f, const HTuple& t, double Nmax,
                    const std::function<void(const GapPair&)>& emit) {
    if (!is_admissible(f, t).admissible)
        throw ValidationError("gap search expects an admissible tuple");
    BoxSpec box(Nmax, Shell::Full);
    auto [lo, hi] = box.norm_range();

    // classification by norm is enough for scanning; emitted pairs carry full
    // factorizations computed from scratch
    i64 max_shift_norm = 0;
    for (const QuadInt& h : t.shifts) {
        if (!h.is_zero()) max_shift_norm = std::max(max_shift_norm, f.norm(h));
    }
    // norm(alpha + h) <= (sqrt(hi) + sqrt(max_shift_norm))^2
    i64 cls_hi = static_cast<i64>(
        std::ceil(std::pow(std::sqrt(double(hi)) + std::sqrt(double(max_shift_norm)), 2.0))) + 1;
    NormClassifier cls(f, 1, cls_hi);

    std::set<std::pair<std::pair<i64, i64>, std::pair<i64, i64>>> seen;
    enumerate_box(f, box, [&](const QuadInt& alpha, i64) {
        const int k = t.k();
        std::vector<QuadInt> shifted(static_cast<std::size_t>(k));
        std::vector<bool> is_g2(static_cast<std::size_t>(k), false);
        for (int i = 0; i < k; ++i) {
            QuadInt s = f.add(alpha, t.shifts[static_cast<std::size_t>(i)]);
            shifted[static_cast<std::size_t>(i)] = s;
            if (s.is_zero()) continue;
            i64 n = f.norm(s);
            if (n >= 1 && n <= cls_hi) is_g2[static_cast<std::size_t>(i)] = cls.info(n).omega == 2;
        }
        for (int i = 0; i < k; ++i) {
            if (!is_g2[static_cast<std::size_t>(i)]) continue;
            for (int j = i + 1; j < k; ++j) {
                if (!is_g2[static_cast<std::size_t>(j)]) continue;
                const QuadInt& x1 = shifted[static_cast<std::size_t>(i)];
                const QuadInt& x2 = shifted[static_cast<std::size_t>(j)];
                QuadInt diff = f.sub(x2, x1);
                if (f.norm(diff) > 4) continue;
                auto key = std::make_pair(std::make_pair(x1.a, x1.b), std::make_pair(x2.a, x2.b));
                if (!seen.insert(key).second) continue;
                GapPair p;
                p.alpha1 = x1;
                p.alpha2 = x2;
                p.diff = diff;
                p.fac1 = factor_element(f, x1);
                p.fac2 = factor_element(f, x2);
                if (p.fac1.big_omega() != 2 || p.fac2.big_omega() != 2)
                    throw ConsistencyError("gap pair failed re-factorization");
                p.diff_abs = f.embedding_abs(diff);
                emit(p);
            }
        }
    });
}

namespace {

std::vector<NormFormFactor> norm_form_factors(const FieldParams& f, const Factorization& fac) {
    std::vector<NormFormFactor> out;
    for (const auto& [pe, e] : fac.factors) {
        for (int i = 0; i < e; ++i) {
            NormFormFactor nf;
            nf.p = f.norm(pe);
            auto [A, B] = f.sqrt_basis_coords(pe);
            nf.A = A;
            nf.B = B;
            // norm of a prime element is p (split/ramified) or p^2 (inert)
            nf.inert = !is_prime_u64(static_cast<u64>(nf.p));
            out.push_back(nf);
        }
    }
    return out;
}

} // namespace

CorollaryDecomposition corollary_decomposition(const FieldParams& f, const GapPair& pair) {
    CorollaryDecomposition d;
    d.scale = (f.omega_kind() == OmegaKind::SqrtD) ? 1 : 4;
    d.first = norm_form_factors(f, pair.fac1);
    d.second = norm_form_factors(f, pair.fac2);
    if (f.omega_kind() == OmegaKind::SqrtD) {
        // with omega = sqrt(d), (A, B) = (2a, b): halve to the classic a^2+|d|b^2
        for (auto* v : {&d.first, &d.second})
            for (NormFormFactor& nf : *v) nf.A /= 2;
        d.scale = 1;
    }
    d.rational_shift = (pair.diff.b == 0);
    if (d.rational_shift) {
        d.h = pair.diff.a;
        // |alpha1 + h|^2 = |alpha1|^2 + h*Tr(alpha1) + h^2, exact in Z
        i64 lhs = f.norm(pair.alpha2);
        i64 rhs = f.norm(pair.alpha1) + d.h * f.trace(pair.alpha1) + d.h * d.h;
        d.norm_identity_ok = (lhs == rhs);
    }
    return d;
}

namespace {

struct ShellFlags {
    std::vector<QuadInt> elems;
    std::vector<bool> flag; // prime or beta, per target
};

// Flags over A(M). The beta window is anchored at the report scale N_beta:
// beta is one fixed function while the box shrinks for the eps* samples.
ShellFlags collect_shell(const FieldParams& f, double M, double N_beta, EquidistTarget which,
                         const BetaParams& p) {
    ShellFlags out;
    BoxSpec box(M, Shell::Dyadic);
    auto [lo, hi] = box.norm_range();
    NormClassifier cls(f, lo, hi);
    long double ylo = 0, th = 0;
    if (which == EquidistTarget::Beta) {
        p.validate();
        ylo = static_cast<long double>(p.Yprime) * p.Yprime;
        th = powl(static_cast<long double>(N_beta), 2.0L * mpq_get_d(p.b.get_mpq_t()));
    }
    enumerate_box(f, box, [&](const QuadInt& x, i64 n) {
        const NormInfo& in = cls.info(n);
        bool fl;
        if (which == EquidistTarget::Primes) {
            fl = in.omega == 1;
        } else {
            fl = in.omega == 2 && static_cast<long double>(in.f1) >= ylo &&
                 static_cast<long double>(in.f1) <= th && static_cast<long double>(in.f2) > th;
        }
        out.elems.push_back(x);
        out.flag.push_back(fl);
    });
    return out;
}

// residue-classified counts for one modulus at one scale
struct ModulusCounts {
    std::map<std::pair<i64, i64>, i64> hits; // canonical residue -> flagged count
    i64 flagged_total = 0;                   // all flagged
    i64 flagged_coprime = 0;                 // flagged and coprime to q
};

ModulusCounts count_mod(const FieldParams& f, const ShellFlags& sf, const ResidueSystem& rs,
                        const std::vector<QuadInt>& q_primes) {
    ModulusCounts mc;
    for (std::size_t i = 0; i < sf.elems.size(); ++i) {
        if (!sf.flag[i]) continue;
        ++mc.flagged_total;
        QuadInt r = rs.reduce(sf.elems[i]);
        mc.hits[{r.a, r.b}]++;
        bool coprime = true;
        for (const QuadInt& pe : q_primes)
            if (f.divides(pe, sf.elems[i])) { coprime = false; break; }
        if (coprime) ++mc.flagged_coprime;
    }
    return mc;
}

} // namespace

EquidistReport equidist_report(const FieldParams& f, double N, i64 Q, EquidistTarget which,
                               const BetaParams& p) {
    if (Q < 1 || Q > 2000)
        throw ValidationError("equidistribution moduli must satisfy 1 <= Q <= 2000");
    EquidistReport rep;
    rep.N = N;
    rep.Q = Q;
    rep.target = which;

    IdealTable table(f, Q);
    std::vector<double> scales = {N / 4, N / 2, N};
    std::vector<ShellFlags> shells;
    for (double M : scales) shells.push_back(collect_shell(f, M, N, which, p));
    const ShellFlags& at_N = shells.back();
    rep.total = static_cast<i64>(std::count(at_N.flag.begin(), at_N.flag.end(), true));

    for (std::uint32_t qi = 0; qi < table.size(); ++qi) {
        const Ideal& I = table[qi];
        if (!I.squarefree) continue;
        EquidistRow row;
        row.modulus_gen = I.gen;
        row.modulus_norm = I.nrm;
        row.phi = I.phi;
        std::vector<QuadInt> q_primes;
        for (const auto& [pi, e] : I.fac) q_primes.push_back(table.primes()[pi].gen);

        if (I.nrm == 1) {
            // unit ideal: one class, phi = 1, eps identically 0
            row.max_abs_eps = 0;
            row.main_term = static_cast<double>(rep.total);
            row.eps_star_sampled = 0;
            rep.rows.push_back(row);
            continue;
        }

        ResidueSystem rs(f, I.gen);
        // coprime residues mod q
        std::vector<QuadInt> coprime_residues;
        for (const QuadInt& r : rs.representatives()) {
            bool cop = true;
            for (const QuadInt& pe : q_primes)
                if (f.divides(pe, r)) { cop = false; break; }
            if (cop) coprime_residues.push_back(r);
        }
        if (static_cast<i64>(coprime_residues.size()) != I.phi)
            throw ConsistencyError("residue system phi mismatch");

        double star = 0;
        for (std::size_t si = 0; si < shells.size(); ++si) {
            ModulusCounts mc = count_mod(f, shells[si], rs, q_primes);
            double main = (which == EquidistTarget::Primes)
                              ? static_cast<double>(mc.flagged_total) / static_cast<double>(I.phi)
                              : static_cast<double>(mc.flagged_coprime) / static_cast<double>(I.phi);
            double worst = 0;
            for (const QuadInt& r : coprime_residues) {
                auto it = mc.hits.find({r.a, r.b});
                i64 cnt = it == mc.hits.end() ? 0 : it->second;
                worst = std::max(worst, std::abs(static_cast<double>(cnt) - main));
            }
            star = std::max(star, worst);
            if (si + 1 == shells.size()) {
                row.max_abs_eps = worst;
                row.main_term = main;
            }
        }
        row.eps_star_sampled = star;
        rep.rows.push_back(row);
    }
    for (const EquidistRow& r : rep.rows) {
        rep.aggregate_max_eps += r.max_abs_eps;
        rep.aggregate_eps_star += r.eps_star_sampled;
    }
    return rep;
}

std::vector<DensityBand> density_report(const FieldParams& f, const HTuple& t, double Nmax,
                                        const BetaParams& p) {
    std::vector<DensityBand> bands;
    for (double N = 2; N <= Nmax; N *= 2) {
        DensityBand b;
        b.N = N;
        SieveOptions opts;
        opts.beta = &p;
        SieveCensus c = census_box(f, BoxSpec(N, Shell::Dyadic), opts);
        b.total = c.total;
        b.g2 = c.g2;
        b.beta_ones = c.beta_ones;
        bands.push_back(b);
    }
    // pair counts per band by norm(alpha1)
    i64 cum = 0;
    std::vector<i64> pair_count(bands.size(), 0);
    find_gap_pairs(f, t, Nmax, [&](const GapPair& gp) {
        i64 n1 = f.norm(gp.alpha1);
        for (std::size_t i = 0; i < bands.size(); ++i) {
            double N = bands[i].N;
            if (static_cast<double>(n1) > N * N && static_cast<double>(n1) <= 4 * N * N) {
                ++pair_count[i];
                break;
            }
        }
    });
    for (std::size_t i = 0; i < bands.size(); ++i) {
        bands[i].gap_pairs = pair_count[i];
        cum += pair_count[i];
        bands[i].cumulative_pairs = cum;
    }
    return bands;
}

} // namespace g2gaps
