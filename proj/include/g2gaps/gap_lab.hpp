#pragma once

#include <functional>
#include <vector>

#include "g2gaps/box_sieve.hpp"
#include "g2gaps/tuples.hpp"

namespace g2gaps {

// Two G2-numbers within embedding distance 2, i.e. norm(alpha2 - alpha1) <= 4.
struct GapPair {
    QuadInt alpha1, alpha2, diff;
    Factorization fac1, fac2;
    double diff_abs = 0;
};

// Scans alpha in A^0(Nmax); whenever at least two of alpha + h_i are
// G2-numbers and their difference has norm <= 4, emits the pair. Pairs are
// deduplicated and emitted in deterministic scan order.
void find_gap_pairs(const FieldParams& f, const HTuple& t, double Nmax,
                    const std::function<void(const GapPair&)>& emit);

// One prime factor of a pair element, rendered in the +-sqrt(d) basis:
// scale * p = A^2 + |d| * B^2 with scale 1 (d = 2,3 mod 4) or 4 (d = 1 mod 4).
// Inert factors have p equal to the square of a rational prime and the
// norm-form display does not apply to the prime itself; they are flagged.
struct NormFormFactor {
    i64 p = 0;      // norm of the prime element
    i64 A = 0, B = 0;
    bool inert = false;
};

struct CorollaryDecomposition {
    std::vector<NormFormFactor> first;  // two factors of alpha1
    std::vector<NormFormFactor> second; // two factors of alpha2
    int scale = 1;                      // 1 or 4
    bool rational_shift = false;        // diff is a rational integer h
    i64 h = 0;
    // when rational_shift: norm(alpha2) == norm(alpha1) + h*trace(alpha1) + h^2
    bool norm_identity_ok = false;
};

CorollaryDecomposition corollary_decomposition(const FieldParams& f, const GapPair& pair);

struct EquidistRow {
    QuadInt modulus_gen;
    i64 modulus_norm = 0;
    i64 phi = 0;
    double max_abs_eps = 0;   // max over coprime residues of |count - main/phi|
    double main_term = 0;     // total/phi
    double eps_star_sampled = 0; // max over M in {N/4, N/2, N} of max_abs_eps(M)
};

enum class EquidistTarget { Primes, Beta };

struct EquidistReport {
    double N = 0;
    i64 Q = 0;
    EquidistTarget target = EquidistTarget::Primes;
    i64 total = 0; // pi_flat(N) or pi_beta(N)
    std::vector<EquidistRow> rows; // squarefree moduli of norm <= Q
    double aggregate_max_eps = 0;  // sum over rows of max_abs_eps
    double aggregate_eps_star = 0;
};

EquidistReport equidist_report(const FieldParams& f, double N, i64 Q, EquidistTarget which,
                               const BetaParams& p);

struct DensityBand {
    double N = 0;        // band A(N), norms (N^2, 4N^2]
    i64 total = 0;
    i64 g2 = 0;
    i64 beta_ones = 0;
    i64 gap_pairs = 0;       // pairs with norm(alpha1) in the band
    i64 cumulative_pairs = 0;
};

// Dyadic bands N = 2, 4, ..., Nmax with G2/beta/pair counts per band.
std::vector<DensityBand> density_report(const FieldParams& f, const HTuple& t, double Nmax,
                                        const BetaParams& p);

} // namespace g2gaps
