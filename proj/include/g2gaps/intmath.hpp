#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace g2gaps {

// Thrown when a requested parameter violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when two internal computation routes disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace intmath {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline i64 checked_mul(i64 a, i64 b) {
    i128 p = static_cast<i128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN)
        throw ValidationError("integer overflow in 64-bit multiply");
    return static_cast<i64>(p);
}

inline i64 checked_add(i64 a, i64 b) {
    i128 s = static_cast<i128>(a) + b;
    if (s > INT64_MAX || s < INT64_MIN)
        throw ValidationError("integer overflow in 64-bit add");
    return static_cast<i64>(s);
}

// Floor division (C++ '/' truncates toward zero).
inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline i64 mod_floor(i64 a, i64 b) {
    i64 r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? r + b : r;
}

// Exact integer square root: largest r with r*r <= n.
inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (u128)r * r > n) --r;
    while ((u128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(u64 n, u64* root = nullptr) {
    u64 r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = m > 1 ? 1 % m : 0;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) { a %= b; std::swap(a, b); }
    return a;
}

inline i64 gcd_i64(i64 a, i64 b) {
    return static_cast<i64>(gcd_u64(a < 0 ? -(u64)a : a, b < 0 ? -(u64)b : b));
}

// Extended gcd: returns g and (x, y) with a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) { x = (a >= 0) ? 1 : -1; y = 0; return a >= 0 ? a : -a; }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

// Brent-variant Pollard rho; n must be composite.
inline u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 q = 1;
        int lam = 1;
        while (d == 1) {
            y = x;
            for (int i = 0; i < lam; ++i) x = (mulmod(x, x, n) + c) % n;
            int k = 0;
            while (k < lam && d == 1) {
                int cnt = std::min(128, lam - k);
                u64 ys = x;
                for (int i = 0; i < cnt; ++i) {
                    x = (mulmod(x, x, n) + c) % n;
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = gcd_u64(q, n);
                if (d == n) {
                    // backtrack one step at a time
                    d = 1;
                    x = ys;
                    do {
                        x = (mulmod(x, x, n) + c) % n;
                        d = gcd_u64(x > y ? x - y : y - x, n);
                    } while (d == 1);
                    break;
                }
                k += cnt;
            }
            lam *= 2;
        }
        if (d != n) return d;
    }
}

inline void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) { out.push_back(n); return; }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace detail

// Prime factorization of n, sorted, as (prime, exponent) pairs.
inline std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::vector<u64> ps;
    u64 m = n;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull,
                  41ull, 43ull, 47ull, 53ull, 59ull, 61ull, 67ull, 71ull, 73ull, 79ull, 83ull,
                  89ull, 97ull}) {
        while (m % p == 0) { ps.push_back(p); m /= p; }
    }
    detail::factor_rec(m, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<u64, int>> fac;
    for (u64 p : ps) {
        if (!fac.empty() && fac.back().first == p) ++fac.back().second;
        else fac.push_back({p, 1});
    }
    return fac;
}

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(i64 a, i64 n) {
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = n & 7;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// Kronecker symbol (a/n) for n >= 0, completely multiplicative in n.
inline int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    while ((n & 1) == 0) {
        n >>= 1;
        if ((a & 1) == 0) return 0;
        i64 r = mod_floor(a, 8);
        if (r == 3 || r == 5) result = -result;
    }
    int j = jacobi(a, n); // Jacobi is periodic mod odd n, so negative a is fine
    if (j == 0) return 0;
    return result * j;
}

// Tonelli-Shanks: square root of a modulo odd prime p, if one exists.
inline std::optional<u64> sqrt_mod_p(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
        u64 b = powmod(c, u64(1) << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

// Simple Eratosthenes sieve; returns primes <= n.
inline std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
    for (i64 i = 2; i <= n; ++i) {
        if (!composite[static_cast<std::size_t>(i)]) {
            primes.push_back(i);
            for (i64 j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
        }
    }
    return primes;
}

} // namespace intmath
} // namespace g2gaps
