#pragma once

#include <map>
#include <vector>

#include "g2gaps/box_sieve.hpp"
#include "g2gaps/polynomial.hpp"
#include "g2gaps/tuples.hpp"

namespace g2gaps {

struct WeightConfig {
    FieldParams field = FieldParams::make(-1);
    int k = 2;
    double R = 20;
    int D0 = 3;
    PolyF F = PolyF::quadratic_cutoff(2);
    HTuple tuple = HTuple::from_integers({0, 2});
    BetaParams beta_params;
};

using IdealTuple = std::vector<std::uint32_t>; // indices into the ideal table

// Sieve-weight laboratory over the ideals of norm <= R: the y-array from F,
// the lambda-array, the inversion cross-check and direct evaluation of the
// quadratic sums S1, S2 at desk scale.
class WeightSystem {
public:
    explicit WeightSystem(WeightConfig cfg);

    const WeightConfig& config() const { return cfg_; }
    const IdealTable& table() const { return table_; }
    const QuadInt& modulus() const { return m_; }
    const QuadInt& v0() const { return v0_; }

    bool coprime_to_m(std::uint32_t idx) const;

    // y_{r_1,...,r_k}: mu(prod r)^2 F(log|r_1|/log R, ...) on tuples with
    // prod r squarefree and coprime to m; 0 otherwise.
    double y_value(const IdealTuple& r) const;

    // lambda via the direct F-formula; 0 outside the support
    // (|prod d| < R, prod d squarefree and coprime to m).
    double lambda_value(const IdealTuple& d) const;

    // lambda via the inversion formula through the y-array.
    double lambda_from_y(const IdealTuple& d) const;

    // y via its definition from the lambda-array (the other inversion
    // direction); equals y_value identically.
    double y_from_lambda(const IdealTuple& r) const;

    struct InversionReport {
        double max_abs_discrepancy = 0;
        double lambda_max = 0;
        double y_max = 0;
        std::size_t tuples_checked = 0;
    };
    // Max |lambda_direct - lambda_from_y| over every k-tuple with
    // |prod d| < R; zero up to rounding.
    InversionReport inversion_check() const;

    // Every support tuple of lambda.
    std::vector<IdealTuple> lambda_support() const;

    // All k-tuples of table ideals with norm product <= bound.
    void for_each_tuple(double bound,
                        const std::function<void(const IdealTuple&)>& fn) const;

    // Direct evaluation of the quadratic sums over alpha in A(N),
    // alpha = v0 (mod m). Guarded to |A(N)| <= 10^7.
    double empirical_S1(double N) const;
    double empirical_S2(double N) const;

    // Multiplicative helper g with g(p) = |p| - 2 on prime ideals.
    i64 g_value(std::uint32_t idx) const;

    // y^{(m)}(w1) transform: for a tuple u with u_m the unit ideal,
    //   prod_{j != m} mu(u_j) g(u_j) *
    //     sum_{a : u_j | a_j, a_m | (w1)} lambda_a / prod_{j != m} phi(a_j).
    double y_m_value(int m, const IdealTuple& u, std::uint32_t w1_ideal) const;

private:
    double inner_lambda_sum(const std::vector<std::vector<std::uint32_t>>& divisors) const;

    WeightConfig cfg_;
    IdealTable table_;
    QuadInt m_;
    QuadInt v0_;
    std::vector<bool> coprime_m_;      // per table ideal
    double logR_;
    std::map<IdealTuple, double> lambda_; // support tuples only
};

} // namespace g2gaps
