#include "g2gaps/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace g2gaps {

FieldParams FieldParams::make(int d) {
    bool ok = std::find(kSupportedD.begin(), kSupportedD.end(), d) != kSupportedD.end();
    if (!ok)
        throw ValidationError("d must be one of -1,-2,-3,-7,-11,-19,-43,-67,-163 "
                              "(class number one with |sigma(w)| = |w|^{1/2})");
    FieldParams f;
    f.d_ = d;
    if (intmath::mod_floor(d, 4) == 1) {
        f.omega_kind_ = OmegaKind::HalfOnePlusSqrtD;
        f.disc_ = d;
        f.q1_ = 1;
        f.q0_ = (1 - static_cast<i64>(d)) / 4;
    } else {
        f.omega_kind_ = OmegaKind::SqrtD;
        f.disc_ = 4 * d;
        f.q1_ = 0;
        f.q0_ = -static_cast<i64>(d);
    }
    f.w_K_ = (d == -1) ? 4 : (d == -3) ? 6 : 2;

    f.units_ = {QuadInt(1, 0), QuadInt(-1, 0)};
    if (d == -1) {
        f.units_.push_back(QuadInt(0, 1));  // i
        f.units_.push_back(QuadInt(0, -1)); // -i
    } else if (d == -3) {
        // omega = (1+sqrt(-3))/2 is a primitive 6th root of unity
        f.units_.push_back(QuadInt(0, 1));   // omega
        f.units_.push_back(QuadInt(0, -1));  // -omega
        f.units_.push_back(QuadInt(-1, 1));  // omega - 1
        f.units_.push_back(QuadInt(1, -1));  // 1 - omega
    }
    return f;
}

std::vector<FieldParams> FieldParams::all() {
    std::vector<FieldParams> v;
    for (int d : kSupportedD) v.push_back(make(d));
    return v;
}

long double FieldParams::c_K() const {
    const long double pi = 3.14159265358979323846264338327950288L;
    return 2.0L * pi / (static_cast<long double>(w_K_) * sqrtl(static_cast<long double>(-disc_)));
}

std::string FieldParams::c_K_exact_form() const {
    std::ostringstream os;
    os << "2*pi/(" << w_K_ << "*sqrt(" << -disc_ << "))";
    return os.str();
}

i64 FieldParams::norm(const QuadInt& x) const {
    i128 n = static_cast<i128>(x.a) * x.a + static_cast<i128>(q1_) * x.a * x.b +
             static_cast<i128>(q0_) * x.b * x.b;
    if (n > INT64_MAX)
        throw ValidationError("norm exceeds the supported 2^63 bound");
    return static_cast<i64>(n);
}

double FieldParams::embedding_abs(const QuadInt& x) const {
    if (x.is_zero())
        throw ValidationError("embedding_abs of zero");
    return static_cast<double>(sqrtl(static_cast<long double>(norm(x))));
}

i64 FieldParams::trace(const QuadInt& x) const {
    // Tr(a + b*omega) = 2a + b*Tr(omega), Tr(omega) = q1
    return 2 * x.a + q1_ * x.b;
}

QuadInt FieldParams::add(const QuadInt& x, const QuadInt& y) const {
    return {intmath::checked_add(x.a, y.a), intmath::checked_add(x.b, y.b)};
}

QuadInt FieldParams::sub(const QuadInt& x, const QuadInt& y) const {
    return {intmath::checked_add(x.a, -y.a), intmath::checked_add(x.b, -y.b)};
}

QuadInt FieldParams::neg(const QuadInt& x) const { return {-x.a, -x.b}; }

QuadInt FieldParams::mul(const QuadInt& x, const QuadInt& y) const {
    // omega^2 = d               for omega = sqrt(d)
    // omega^2 = omega - (1-d)/4 for omega = (1+sqrt(d))/2
    i128 cross = static_cast<i128>(x.a) * y.b + static_cast<i128>(x.b) * y.a;
    i128 bb = static_cast<i128>(x.b) * y.b;
    i128 ra, rb;
    if (omega_kind_ == OmegaKind::SqrtD) {
        ra = static_cast<i128>(x.a) * y.a + static_cast<i128>(d_) * bb;
        rb = cross;
    } else {
        ra = static_cast<i128>(x.a) * y.a - static_cast<i128>(q0_) * bb;
        rb = cross + bb;
    }
    if (ra > INT64_MAX || ra < INT64_MIN || rb > INT64_MAX || rb < INT64_MIN)
        throw ValidationError("coordinate overflow in multiply");
    return {static_cast<i64>(ra), static_cast<i64>(rb)};
}

QuadInt FieldParams::conjugate(const QuadInt& x) const {
    // conj(omega) = -omega or 1 - omega
    if (omega_kind_ == OmegaKind::SqrtD) return {x.a, -x.b};
    return {intmath::checked_add(x.a, x.b), -x.b};
}

QuadInt FieldParams::pow(const QuadInt& x, int e) const {
    QuadInt r(1, 0), base = x;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = (e > 1) ? mul(base, base) : base;
        e >>= 1;
    }
    return r;
}

std::optional<QuadInt> FieldParams::try_divide(const QuadInt& x, const QuadInt& y) const {
    if (y.is_zero()) return std::nullopt;
    i64 ny = norm(y);
    QuadInt z = mul(x, conjugate(y)); // x/y = x*conj(y)/norm(y)
    if (z.a % ny != 0 || z.b % ny != 0) return std::nullopt;
    return QuadInt{z.a / ny, z.b / ny};
}

QuadInt FieldParams::divide_exact(const QuadInt& x, const QuadInt& y) const {
    if (y.is_zero())
        throw ValidationError("division by zero");
    auto q = try_divide(x, y);
    if (!q)
        throw ValidationError("divide_exact: " + to_string(y) + " does not divide " + to_string(x));
    return *q;
}

bool FieldParams::divides(const QuadInt& y, const QuadInt& x) const {
    if (y.is_zero()) return x.is_zero();
    return try_divide(x, y).has_value();
}

bool FieldParams::equal_up_to_units(const QuadInt& x, const QuadInt& y) const {
    for (const QuadInt& u : units_)
        if (mul(x, u) == y) return true;
    return false;
}

QuadInt FieldParams::canonical_associate(const QuadInt& x) const {
    if (x.is_zero()) return x;
    QuadInt best = x;
    auto rank = [](const QuadInt& z) {
        if (z.a > 0 && z.b >= 0) return 0;
        if (z.a > 0) return 1;
        if (z.a == 0 && z.b > 0) return 2;
        return 3;
    };
    for (const QuadInt& u : units_) {
        QuadInt cand = mul(x, u);
        int rc = rank(cand), rb = rank(best);
        if (rc < rb || (rc == rb && coord_less(cand, best))) best = cand;
    }
    return best;
}

std::pair<i64, i64> FieldParams::sqrt_basis_coords(const QuadInt& x) const {
    return {2 * x.a + q1_ * x.b, x.b};
}

std::string FieldParams::to_string(const QuadInt& x) const {
    std::ostringstream os;
    os << "(" << x.a << "," << x.b << ")";
    return os.str();
}

} // namespace g2gaps
