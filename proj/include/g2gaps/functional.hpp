#pragma once

#include <vector>

#include "g2gaps/polynomial.hpp"

namespace g2gaps {

// I1(F) = integral of F^2 over the simplex R_k, exact.
mpq_class I1(const PolyF& F);

// The truncated inner antiderivative profile of F in variable m at height y:
// below the hyperplane sum_{j != m} x_j = 1 - y it is int_0^y F dx_m, above
// it the section integral int_0^{1 - sum} F dx_m. Both pieces are stored as
// k-variable polynomials with slot m unused.
struct InnerProfile {
    int m = 0;
    mpq_class y;
    PolyF below;
    PolyF above;

    long double eval(std::span<const long double> x_others) const;
};

InnerProfile inner_profile(const PolyF& F, int m, const mpq_class& y);

struct I2Result {
    mpq_class q2;       // the y-independent inner double integral
    long double value;  // q2 * log(B-1)
};

// I2^{(m)}(F) for B > 2: the outer weight integrates to log(B-1) in closed
// form; the inner factor is exact.
I2Result I2(const PolyF& F, int m, const mpq_class& B);

struct I3Result {
    // value = rational_part + c_log_lower * log(1/lower)
    //                       + c_log_upper * log((B-lower)/(B-1))
    mpq_class rational_part;
    mpq_class c_log_lower;   // = q(0), the residue at y = 0
    mpq_class c_log_upper;   // = q(B)
    mpq_class lower;         // B*eta
    mpq_class B;
    long double value;           // closed form
    long double quadrature;      // adaptive-quadrature cross-check
    std::vector<mpq_class> q_coeffs; // Q(y) ascending coefficients
};

// I3^{(m)}(F) for 0 < B*eta < 1. Evaluated by exact partial fractions and
// by adaptive quadrature; throws ConsistencyError if they disagree by more
// than 1e-9.
I3Result I3(const PolyF& F, int m, const mpq_class& B, const mpq_class& eta);

struct FunctionalReport {
    int k = 0;
    mpq_class theta, B, eta, rho;
    int m_K = 2;
    bool symmetric = false;

    mpq_class I1_exact;
    long double I1_value = 0;
    std::vector<I2Result> I2_per_m;
    std::vector<I3Result> I3_per_m;

    long double Itilde = 0;
    bool positive = false;
};

// The positivity criterion: B = 2/theta and
//   Itilde = (m_K/B) * sum_m (I2^{(m)} + I3^{(m)}) - rho * I1,
// which for symmetric F equals (k*m_K/B)(I2^{(1)} + I3^{(1)}) - rho*I1.
FunctionalReport criterion(const PolyF& F, const mpq_class& theta, const mpq_class& eta,
                           const mpq_class& rho, int m_K);

// Decimal rendering with 12 fractional digits, used for report serialization.
std::string format_real(long double v);

} // namespace g2gaps
