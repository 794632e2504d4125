#include "g2gaps/functional.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace g2gaps {

namespace {

long double to_ld(const mpq_class& q) { return mpq_get_d(q.get_mpq_t()); }

// log of a positive rational via mantissa/exponent splits, safe for large
// numerators and denominators.
long double log_ld(const mpq_class& q) {
    if (q <= 0)
        throw ValidationError("log of a nonpositive rational");
    constexpr long double ln2 = 0.693147180559945309417232121458176568L;
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return (logl(mn) + en * ln2) - (logl(md) + ed * ln2);
}

// Dirichlet integral over the (k-1)-simplex in the variables other than m;
// requires exps[m] == 0.
mpq_class simplex_monomial_excluding(int k, int m, const std::vector<int>& exps) {
    std::vector<int> sub;
    sub.reserve(static_cast<std::size_t>(k - 1));
    for (int i = 0; i < k; ++i)
        if (i != m) sub.push_back(exps[i]);
    return simplex_monomial(k - 1, sub);
}

// Univariate polynomial with exact coefficients, ascending order.
using RatPoly = std::vector<mpq_class>;

void rp_add(RatPoly& p, std::size_t deg, const mpq_class& c) {
    if (p.size() <= deg) p.resize(deg + 1, mpq_class(0));
    p[deg] += c;
}

mpq_class rp_eval(const RatPoly& p, const mpq_class& x) {
    mpq_class v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

// (1 - y)^n as an ascending RatPoly.
RatPoly one_minus_y_pow(int n) {
    RatPoly p{mpq_class(1)};
    for (int i = 0; i < n; ++i) {
        RatPoly q(p.size() + 1, mpq_class(0));
        for (std::size_t j = 0; j < p.size(); ++j) {
            q[j] += p[j];
            q[j + 1] -= p[j];
        }
        p = std::move(q);
    }
    return p;
}

void rp_axpy(RatPoly& acc, const mpq_class& c, const RatPoly& p, std::size_t shift) {
    for (std::size_t j = 0; j < p.size(); ++j) rp_add(acc, j + shift, c * p[j]);
}

// exact integral of p over [a, b]
mpq_class rp_integrate(const RatPoly& p, const mpq_class& a, const mpq_class& b) {
    mpq_class s = 0;
    mpq_class pa = a, pb = b;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += p[i] * (pb - pa) / mpq_class(static_cast<long>(i + 1));
        pa *= a;
        pb *= b;
    }
    return s;
}

// Q(y) = int over [0,1]^{k-1} of inner_profile(y)^2, assembled exactly as a
// polynomial in y: the region splits along sum_{j != m} x_j = 1 - y, and both
// pieces reduce to scaled-simplex Dirichlet integrals.
RatPoly build_Q_poly(const PolyF& F, int m) {
    const int k = F.k();
    PolyF G = F.antiderivative(m);                 // int_0^{x_m} F, slot m = height
    PolyF V = G.substitute_one_minus_others(m);    // full section integral
    PolyF G2 = G * G;
    PolyF V2 = V * V;

    RatPoly q;
    // piece below the split: int_{(1-y) R_{k-1}} G(y, x)^2 dx
    for (const auto& [e, c] : G2.terms()) {
        int beta = e[m];
        std::vector<int> alpha = e;
        alpha[m] = 0;
        int asum = std::accumulate(alpha.begin(), alpha.end(), 0);
        mpq_class D = simplex_monomial_excluding(k, m, alpha);
        rp_axpy(q, c * D, one_minus_y_pow(asum + (k - 1)), static_cast<std::size_t>(beta));
    }
    // piece above the split: int_{R_{k-1}} V^2 - int_{(1-y) R_{k-1}} V^2
    for (const auto& [e, c] : V2.terms()) {
        std::vector<int> alpha = e;
        int asum = std::accumulate(alpha.begin(), alpha.end(), 0);
        mpq_class D = simplex_monomial_excluding(k, m, alpha);
        rp_add(q, 0, c * D);
        rp_axpy(q, -c * D, one_minus_y_pow(asum + (k - 1)), 0);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    return q;
}

// rational_part + c1*log(arg1) + c2*log(arg2) evaluated at 256-bit
// precision; the rational pieces can be huge and cancel, so double-precision
// conversion before combining would destroy the result.
long double log_combination(const mpq_class& rational_part, const mpq_class& c1,
                            const mpq_class& arg1, const mpq_class& c2, const mpq_class& arg2) {
    mpfr_t acc, t;
    mpfr_init2(acc, 256);
    mpfr_init2(t, 256);
    mpfr_set_q(acc, rational_part.get_mpq_t(), MPFR_RNDN);
    if (c1 != 0) {
        mpfr_set_q(t, arg1.get_mpq_t(), MPFR_RNDN);
        mpfr_log(t, t, MPFR_RNDN);
        mpfr_mul_q(t, t, c1.get_mpq_t(), MPFR_RNDN);
        mpfr_add(acc, acc, t, MPFR_RNDN);
    }
    if (c2 != 0) {
        mpfr_set_q(t, arg2.get_mpq_t(), MPFR_RNDN);
        mpfr_log(t, t, MPFR_RNDN);
        mpfr_mul_q(t, t, c2.get_mpq_t(), MPFR_RNDN);
        mpfr_add(acc, acc, t, MPFR_RNDN);
    }
    long double v = mpfr_get_ld(acc, MPFR_RNDN);
    mpfr_clear(acc);
    mpfr_clear(t);
    return v;
}

// Adaptive Simpson on [a, b].
template <typename Fn>
long double adaptive_simpson(Fn&& fn, long double a, long double b, long double tol, int depth,
                             long double fa, long double fm, long double fb) {
    long double m = (a + b) / 2;
    long double lm = (a + m) / 2, rm = (m + b) / 2;
    long double flm = fn(lm), frm = fn(rm);
    long double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    long double left = (m - a) / 6 * (fa + 4 * flm + fm);
    long double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || fabsl(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(fn, a, m, tol / 2, depth - 1, fa, flm, fm) +
           adaptive_simpson(fn, m, b, tol / 2, depth - 1, fm, frm, fb);
}

template <typename Fn>
long double integrate_adaptive(Fn&& fn, long double a, long double b, long double tol) {
    long double fa = fn(a), fb = fn(b), fm = fn((a + b) / 2);
    return adaptive_simpson(fn, a, b, tol, 48, fa, fm, fb);
}

} // namespace

mpq_class I1(const PolyF& F) { return (F * F).integrate_simplex(); }

long double InnerProfile::eval(std::span<const long double> x_others) const {
    const int k = below.k();
    if (static_cast<int>(x_others.size()) != k - 1)
        throw ValidationError("profile evaluation expects k-1 coordinates");
    std::vector<long double> x(static_cast<std::size_t>(k), 0.0L);
    long double s = 0;
    for (int i = 0, j = 0; i < k; ++i) {
        if (i == m) continue;
        x[static_cast<std::size_t>(i)] = x_others[static_cast<std::size_t>(j)];
        s += x_others[static_cast<std::size_t>(j)];
        ++j;
    }
    long double yv = to_ld(y);
    if (s >= 1)
        return 0; // outside the section support
    if (s <= 1 - yv) return below.eval_raw(x);
    return above.eval_raw(x);
}

InnerProfile inner_profile(const PolyF& F, int m, const mpq_class& y) {
    if (m < 0 || m >= F.k())
        throw ValidationError("profile index out of range");
    if (y < 0 || y > 1)
        throw ValidationError("profile height must lie in [0, 1]");
    PolyF G = F.antiderivative(m);
    InnerProfile p;
    p.m = m;
    p.y = y;
    p.below = G.substitute_const(m, y);
    p.above = G.substitute_one_minus_others(m);
    return p;
}

I2Result I2(const PolyF& F, int m, const mpq_class& B) {
    if (B <= 2)
        throw ValidationError("I2 requires B > 2 (empty outer range otherwise)");
    PolyF V = F.antiderivative(m).substitute_one_minus_others(m);
    PolyF V2 = V * V;
    mpq_class q2 = 0;
    for (const auto& [e, c] : V2.terms())
        q2 += c * simplex_monomial_excluding(F.k(), m, e);
    long double value = to_ld(q2) * log_ld(B - 1);
    return {q2, value};
}

I3Result I3(const PolyF& F, int m, const mpq_class& B, const mpq_class& eta) {
    mpq_class a = B * eta;
    if (!(a > 0 && a < 1))
        throw ValidationError("I3 requires 0 < B*eta < 1");
    RatPoly q = build_Q_poly(F, m);

    I3Result r;
    r.B = B;
    r.lower = a;
    r.q_coeffs = q;

    // B/(y(B-y)) = 1/y + 1/(B-y); split q against each pole.
    mpq_class q0 = q.empty() ? mpq_class(0) : rp_eval(q, 0);
    mpq_class qB = q.empty() ? mpq_class(0) : rp_eval(q, B);
    r.c_log_lower = q0;
    r.c_log_upper = qB;

    // (q(y) - q(0))/y : shift down
    RatPoly p1;
    for (std::size_t i = 1; i < q.size(); ++i) p1.push_back(q[i]);
    // (q(y) - q(B))/(B - y) = -s(y) where q(y) - q(B) = (y - B) s(y)
    RatPoly p2;
    if (!q.empty()) {
        // synthetic division by (y - B)
        RatPoly s(q.size() > 0 ? q.size() - 1 : 0, mpq_class(0));
        mpq_class carry = 0;
        for (std::size_t i = q.size(); i-- > 1;) {
            carry = q[i] + carry * B;
            s[i - 1] = carry;
        }
        for (auto& c : s) c = -c;
        p2 = std::move(s);
    }
    RatPoly psum = p1;
    for (std::size_t i = 0; i < p2.size(); ++i) rp_add(psum, i, p2[i]);
    r.rational_part = rp_integrate(psum, a, 1);

    r.value = log_combination(r.rational_part, q0, mpq_class(1) / a, qB, (B - a) / (B - 1));

    // cross-check: adaptive quadrature of the weighted integrand
    std::vector<long double> qc;
    qc.reserve(q.size());
    for (const auto& c : q) qc.push_back(to_ld(c));
    long double Bld = to_ld(B);
    auto fn = [&](long double y) {
        long double v = 0;
        for (std::size_t i = qc.size(); i-- > 0;) v = v * y + qc[i];
        return Bld / (y * (Bld - y)) * v;
    };
    r.quadrature = integrate_adaptive(fn, to_ld(a), 1.0L, 1e-13L);

    if (fabsl(r.value - r.quadrature) > 1e-9L)
        throw ConsistencyError("I3 closed form and quadrature disagree beyond 1e-9");
    return r;
}

FunctionalReport criterion(const PolyF& F, const mpq_class& theta, const mpq_class& eta,
                           const mpq_class& rho, int m_K) {
    if (!(theta > 0 && theta <= 1))
        throw ValidationError("theta must lie in (0, 1]");
    FunctionalReport rep;
    rep.k = F.k();
    rep.theta = theta;
    rep.B = mpq_class(2) / theta;
    rep.eta = eta;
    rep.rho = rho;
    rep.m_K = m_K;
    rep.symmetric = F.is_symmetric();

    rep.I1_exact = I1(F);
    rep.I1_value = to_ld(rep.I1_exact);

    long double sum23 = 0;
    for (int m = 0; m < F.k(); ++m) {
        I2Result i2 = I2(F, m, rep.B);
        I3Result i3 = I3(F, m, rep.B, eta);
        sum23 += i2.value + i3.value;
        rep.I2_per_m.push_back(std::move(i2));
        rep.I3_per_m.push_back(std::move(i3));
    }
    rep.Itilde = to_ld(mpq_class(m_K) / rep.B) * sum23 - to_ld(rho) * rep.I1_value;
    rep.positive = rep.Itilde > 0;
    return rep;
}

std::string format_real(long double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(12);
    os << static_cast<double>(v);
    return os.str();
}

} // namespace g2gaps
