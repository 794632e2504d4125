#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "g2gaps/intmath.hpp"

namespace g2gaps {

using intmath::i64;
using intmath::i128;

// An algebraic integer a + b*omega in coordinates over the integral basis
// {1, omega}, where omega = sqrt(d) for d = 2,3 mod 4 and (1+sqrt(d))/2 for
// d = 1 mod 4. Coordinate equality is element equality; "equal up to units"
// is a separate predicate on FieldParams.
struct QuadInt {
    i64 a = 0;
    i64 b = 0;

    QuadInt() = default;
    QuadInt(i64 a_, i64 b_) : a(a_), b(b_) {}

    bool operator==(const QuadInt&) const = default;
    bool is_zero() const { return a == 0 && b == 0; }
};

// Deterministic total order used everywhere an element order is needed.
inline bool coord_less(const QuadInt& x, const QuadInt& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
}

enum class OmegaKind { SqrtD, HalfOnePlusSqrtD };

// One of the nine imaginary quadratic fields Q(sqrt(d)) of class number one,
// with its derived constants. Immutable after construction; shares freely
// across threads.
class FieldParams {
public:
    static constexpr std::array<int, 9> kSupportedD = {-1, -2, -3, -7, -11, -19, -43, -67, -163};

    static FieldParams make(int d);
    static std::vector<FieldParams> all();

    int d() const { return d_; }
    int disc() const { return disc_; }
    OmegaKind omega_kind() const { return omega_kind_; }
    int w_K() const { return w_K_; }
    int m_K() const { return w_K_; } // Mitsui constant: w_K/(2^r1 h R) = w_K here
    int r1() const { return 0; }
    int r2() const { return 1; }
    int h_K() const { return 1; }

    // Residue of the Dedekind zeta function at s = 1: 2*pi/(w_K*sqrt(|disc|)).
    long double c_K() const;
    std::string c_K_exact_form() const;

    // Binary quadratic norm form: a^2 + q1*a*b + q0*b^2.
    i64 norm_q1() const { return q1_; }
    i64 norm_q0() const { return q0_; }

    i64 norm(const QuadInt& x) const;
    // sqrt(norm); identical for both complex embeddings. Rejects zero.
    double embedding_abs(const QuadInt& x) const;
    i64 trace(const QuadInt& x) const;

    QuadInt add(const QuadInt& x, const QuadInt& y) const;
    QuadInt sub(const QuadInt& x, const QuadInt& y) const;
    QuadInt neg(const QuadInt& x) const;
    QuadInt mul(const QuadInt& x, const QuadInt& y) const;
    QuadInt conjugate(const QuadInt& x) const;
    QuadInt pow(const QuadInt& x, int e) const;

    // Exact quotient x/y, or nullopt if y does not divide x in O_K.
    std::optional<QuadInt> try_divide(const QuadInt& x, const QuadInt& y) const;
    // Exact quotient; throws ValidationError on y == 0 or non-divisibility.
    QuadInt divide_exact(const QuadInt& x, const QuadInt& y) const;
    bool divides(const QuadInt& y, const QuadInt& x) const;

    // The w_K roots of unity.
    const std::vector<QuadInt>& units() const { return units_; }
    bool is_unit(const QuadInt& x) const { return norm(x) == 1; }
    bool equal_up_to_units(const QuadInt& x, const QuadInt& y) const;

    // Canonical representative of the associate class of x: prefers a > 0,
    // then b >= 0, then lexicographically smallest (a, b). canonical(0) = 0.
    QuadInt canonical_associate(const QuadInt& x) const;

    // Expression of x in the {1, sqrt(d)} basis scaled to integers:
    // 4*norm(x) = A^2 + |disc|*B^2 with (A, B) = (2a + q1*b, b).
    std::pair<i64, i64> sqrt_basis_coords(const QuadInt& x) const;

    std::string to_string(const QuadInt& x) const;

    bool operator==(const FieldParams& o) const { return d_ == o.d_; }

private:
    FieldParams() = default;

    int d_ = 0;
    int disc_ = 0;
    OmegaKind omega_kind_ = OmegaKind::SqrtD;
    int w_K_ = 2;
    i64 q1_ = 0; // norm form middle coefficient (0 or 1)
    i64 q0_ = 0; // norm form b^2 coefficient
    std::vector<QuadInt> units_;
};

} // namespace g2gaps
