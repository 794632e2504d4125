#pragma once

#include <functional>
#include <vector>

#include <gmpxx.h>

#include "g2gaps/arithmetic.hpp"

namespace g2gaps {

enum class Shell { Full, Dyadic };

// The norm box A^0(N) (Full: 1 <= |sigma(alpha)| <= N, i.e. 1 <= norm <= N^2)
// or its dyadic shell A(N) = A^0(2N) \ A^0(N) (N^2 < norm <= 4N^2).
struct BoxSpec {
    double N = 2;
    Shell shell = Shell::Full;

    BoxSpec() = default;
    BoxSpec(double N_, Shell s) : N(N_), shell(s) {}

    // Inclusive norm bounds; guards against exceeding the 2^62 working range.
    std::pair<i64, i64> norm_range() const;
};

// Parameters of the beta indicator: beta(alpha) = 1 iff alpha = w1*w2 with
// Y' <= |sigma(w1)| <= N^b and |sigma(w2)| > N^b.
struct BetaParams {
    mpq_class b{1, 2};
    double Yprime = 1.0;
    mpq_class theta{2, 5};
    mpq_class eta{1, 250};

    void validate() const; // 0 <= theta/2 < b <= 1/2, Yprime >= 1
    // Y' = N^eta, so that Y = (Y')^2 = (N^2)^eta.
    static BetaParams from_eta(double N, const mpq_class& theta, const mpq_class& b,
                               const mpq_class& eta);
};

struct BandRow {
    int log2_lo = 0;    // band covers norms [2^j, 2^{j+1}) within the box
    i64 total = 0;
    i64 primes = 0;
    i64 g2 = 0;
    i64 beta_ones = 0;
};

struct SieveCensus {
    i64 total = 0;
    i64 primes = 0;
    i64 g2 = 0;
    i64 beta_ones = 0;
    std::vector<BandRow> bands;

    void absorb(const SieveCensus& other);
};

struct SieveOptions {
    int threads = 0;            // 0 = hardware concurrency
    i64 segment_size = i64(1) << 20;
    const BetaParams* beta = nullptr; // enables the beta_ones census column
};

// Element-level classification data derived from a factored norm.
struct NormInfo {
    int omega = 0;        // number of prime-element factors, with multiplicity
    i64 f1 = 0, f2 = 0;   // the two factor norms when omega == 2, f1 <= f2
    bool valid = true;    // false for integers that are not norms
};

// Factor-classifies every integer in [lo, hi] for one field. Memory O(hi-lo).
class NormClassifier {
public:
    NormClassifier(const FieldParams& f, i64 lo, i64 hi);
    const NormInfo& info(i64 n) const { return info_[static_cast<std::size_t>(n - lo_)]; }
    i64 lo() const { return lo_; }
    i64 hi() const { return hi_; }

private:
    i64 lo_, hi_;
    std::vector<NormInfo> info_;
};

// Exact lattice count of the box plus the Minkowski-area comparison:
// 2*pi*N^2/sqrt(|disc|) for A^0(N), 6*pi*N^2/sqrt(|disc|) for A(N).
struct BoxCount {
    i64 count = 0;
    double expected = 0;
    double ratio = 0;
};

BoxCount count_box(const FieldParams& f, const BoxSpec& box);

// Streams every element of the box exactly once in (norm, a, b) order.
void enumerate_box(const FieldParams& f, const BoxSpec& box,
                   const std::function<void(const QuadInt&, i64)>& emit);

// Census of the box; classification is per-norm (a norm determines the
// factorization shape of all its elements).
SieveCensus census_box(const FieldParams& f, const BoxSpec& box, const SieveOptions& opts = {});

// Emits exactly the prime elements of the box in (norm, a, b) order and
// returns the census. Segmented; emission is merged in deterministic order.
SieveCensus sieve_primes(const FieldParams& f, const BoxSpec& box,
                         const std::function<void(const QuadInt&, i64)>& emit,
                         const SieveOptions& opts = {});

// Single-element beta evaluation through a full factorization.
int beta(const FieldParams& f, const QuadInt& x, double N, const BetaParams& p);

// Counting functions over the dyadic shell A(N).
i64 pi_flat(const FieldParams& f, double N);
i64 pi_flat_residue(const FieldParams& f, double N, const QuadInt& q, const QuadInt& a);
i64 pi_beta(const FieldParams& f, double N, const BetaParams& p);
i64 pi_beta_residue(const FieldParams& f, double N, const BetaParams& p, const QuadInt& q,
                    const QuadInt& gamma);
i64 pi_beta_coprime(const FieldParams& f, double N, const BetaParams& p, const QuadInt& u);

// Prime-element count of a norm range by prime splitting; an independent
// route to census.primes.
i64 prime_count_by_splitting(const FieldParams& f, i64 lo, i64 hi);

} // namespace g2gaps
