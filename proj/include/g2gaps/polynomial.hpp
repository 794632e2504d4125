#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "g2gaps/intmath.hpp"

namespace g2gaps {

// Exact Dirichlet integral of a monomial over the standard simplex
// {x in [0,1]^k : sum x_i <= 1}: prod a_i! / (k + sum a_i)!.
mpq_class simplex_monomial(int k, const std::vector<int>& exps);

// A k-variable polynomial with exact rational coefficients. As a sieve
// cutoff function it is read as identically zero outside the closed simplex
// sum x_i <= 1, x_i >= 0 (eval_simplex); eval_raw is the bare polynomial.
class PolyF {
public:
    using Terms = std::map<std::vector<int>, mpq_class>;

    PolyF() = default;
    explicit PolyF(int k) : k_(k) {}

    // 1 - (x_1 + ... + x_k) + (x_1^2 + ... + x_k^2)
    static PolyF quadratic_cutoff(int k);
    static PolyF constant(int k, const mpq_class& c);
    static PolyF monomial(int k, std::vector<int> exps, const mpq_class& c);

    int k() const { return k_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    void add_term(std::vector<int> exps, const mpq_class& c);
    mpq_class coeff(const std::vector<int>& exps) const;

    PolyF operator+(const PolyF& o) const;
    PolyF operator-(const PolyF& o) const;
    PolyF operator*(const PolyF& o) const;
    PolyF scaled(const mpq_class& c) const;

    long double eval_raw(std::span<const long double> x) const;
    long double eval_simplex(std::span<const long double> x) const;

    // Exact integral over the standard simplex R_k.
    mpq_class integrate_simplex() const;

    // Antiderivative in variable m, vanishing at x_m = 0.
    PolyF antiderivative(int m) const;
    // Substitute x_m := c; the slot stays but every exponent there becomes 0.
    PolyF substitute_const(int m, const mpq_class& c) const;
    // Substitute x_m := 1 - sum_{j != m} x_j.
    PolyF substitute_one_minus_others(int m) const;

    // True iff invariant under every permutation of the variables.
    bool is_symmetric() const;

    // "c:e1,..,ek;c:e1,..,ek" with rational c; used by the CLI.
    static PolyF parse(int k, const std::string& spec);
    std::string to_coeff_string() const;

    bool operator==(const PolyF& o) const { return k_ == o.k_ && terms_ == o.terms_; }

private:
    int k_ = 0;
    Terms terms_;
};

} // namespace g2gaps
