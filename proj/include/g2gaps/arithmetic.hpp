#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "g2gaps/quadfield.hpp"

namespace g2gaps {

enum class SplitType { Split, Inert, Ramified };

std::string to_string(SplitType t);

// Behavior of a rational prime p in O_K: Ramified iff p | disc, else by the
// Kronecker symbol (disc/p). Rejects composite p.
SplitType split_type(const FieldParams& f, i64 p);

// A prime element of norm p (split/ramified only; no element of norm p exists
// for inert p). Found by a root of the minimal polynomial of omega mod p
// followed by Gauss lattice reduction of the prime ideal (p, omega - t).
// Result is in canonical associate form.
QuadInt prime_above(const FieldParams& f, i64 p);

// unit * prod factors[i].first ^ factors[i].second == original element,
// every factor a canonical-form prime element, sorted by (norm, a, b).
struct Factorization {
    QuadInt unit{1, 0};
    std::vector<std::pair<QuadInt, int>> factors;

    int big_omega() const {
        int s = 0;
        for (const auto& [p, e] : factors) s += e;
        return s;
    }
};

Factorization factor_element(const FieldParams& f, const QuadInt& x);

enum class ElementTag { Zero, Unit, Prime, G2, Composite };

std::string to_string(ElementTag t);

struct ElementClass {
    ElementTag tag = ElementTag::Zero;
    int big_omega = 0;
};

// Classification by the number of prime-element factors counted with
// multiplicity. G2 includes squares of primes.
ElementClass classify(const FieldParams& f, const QuadInt& x);

// Number of ideals of O_K of norm n: r(n) = sum_{m | n} kronecker(disc, m).
i64 ideal_count(const FieldParams& f, i64 n);

// Table r(1..X) via the divisor-sum sieve; O(X log X).
std::vector<std::int32_t> ideal_count_table(const FieldParams& f, i64 X);

// (sum_{n<=X} r(n))/X, which converges to c_K.
double residue_check(const FieldParams& f, i64 X);

// Multiplicative functions of an ideal given as a factorization of one of
// its generators.
int mobius(const Factorization& fac);
i64 euler_phi(const FieldParams& f, const Factorization& fac);
i64 tau_k(const Factorization& fac, int k);
int omega_distinct(const Factorization& fac);

struct PrimeIdeal {
    QuadInt gen;       // canonical generator
    i64 nrm = 0;       // |p| (= p, or p^2 for inert p)
    i64 p = 0;         // underlying rational prime
    SplitType type = SplitType::Inert;
};

// All prime ideals of norm <= limit, sorted by (norm, a, b) of the generator.
std::vector<PrimeIdeal> prime_ideals_up_to(const FieldParams& f, i64 limit);

struct SingularSeriesResult {
    double value = 0;
    // |v(cutoff) - v(cutoff/10)| / |v(cutoff)|; crude tail estimate
    double last_decade_rel_change = 0;
};

// Truncated Euler product prod_p (1 - gamma(p)/|p|)^{-1} (1 - 1/|p|)^kappa
// over prime ideals of norm <= cutoff.
SingularSeriesResult singular_series(const FieldParams& f,
                                     const std::function<mpq_class(const PrimeIdeal&)>& gamma,
                                     const mpq_class& kappa, i64 cutoff);

// (sum_{|u| <= R} 1/|u| over nonzero ideals, sum_{|p| <= R} 1/|p| over prime ideals)
std::pair<double, double> mertens_sums(const FieldParams& f, i64 R);

// ---------------------------------------------------------------------------
// Ideal table: every ideal of norm <= limit as its canonical generator, with
// factorization bookkeeping. Shared by the admissibility, weight and gap
// modules. Index 0 is the unit ideal.
// ---------------------------------------------------------------------------
struct Ideal {
    QuadInt gen;
    i64 nrm = 1;
    std::vector<std::pair<std::uint32_t, int>> fac; // (prime index, exponent), ascending
    int mu = 1;
    i64 phi = 1;
    bool squarefree = true;
};

class IdealTable {
public:
    IdealTable(const FieldParams& f, i64 limit);

    const FieldParams& field() const { return f_; }
    i64 limit() const { return limit_; }
    const std::vector<PrimeIdeal>& primes() const { return primes_; }
    const std::vector<Ideal>& ideals() const { return ideals_; }
    const Ideal& operator[](std::size_t i) const { return ideals_[i]; }
    std::size_t size() const { return ideals_.size(); }

    // Index of the ideal with the given canonical generator, if tabulated.
    std::optional<std::uint32_t> index_of(const QuadInt& canonical_gen) const;

    bool divides(std::uint32_t a, std::uint32_t b) const;           // a | b
    bool coprime(std::uint32_t a, std::uint32_t b) const;
    const std::vector<std::uint32_t>& multiples_of(std::uint32_t a) const;

    // Ideal of the table dividing both x and the table range, i.e. the indices
    // of all tabulated ideals dividing the element x.
    std::vector<std::uint32_t> divisors_of_element(const QuadInt& x) const;

private:
    FieldParams f_;
    i64 limit_;
    std::vector<PrimeIdeal> primes_;
    std::vector<Ideal> ideals_;
    std::map<std::pair<i64, i64>, std::uint32_t> by_gen_;
    mutable std::vector<std::vector<std::uint32_t>> multiples_; // built eagerly
};

} // namespace g2gaps
