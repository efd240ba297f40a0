#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace weilval {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Bad input or violated precondition (CLI exit code 2).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A checked mathematical statement failed on a scanned instance (CLI exit code 3).
struct ViolationError : std::runtime_error {
    explicit ViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two routes that must agree disagreed, or a certified object failed its
/// certificate. Always a bug, never a property of the input (CLI exit code 4).
struct DefectError : std::logic_error {
    explicit DefectError(const std::string& msg) : std::logic_error(msg) {}
};

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<i128>(a) * b % m);
}

inline i64 powmod(i64 base, i64 exp, i64 m) {
    if (m == 1) return 0;
    i64 r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Least nonnegative residue, also for negative a.
inline i64 mod_reduce(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// Inverse of a modulo m, or -1 when gcd(a, m) != 1.
inline i64 inv_mod(i64 a, i64 m) {
    i64 t = 0, new_t = 1;
    i64 r = m, new_r = mod_reduce(a, m);
    while (new_r != 0) {
        i64 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) return -1;
    return mod_reduce(t, m);
}

/// Deterministic trial-division primality test; adequate for the table-backed
/// field sizes this library supports.
inline bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d : {i64(2), i64(3), i64(5), i64(7)}) {
        if (p == d) return true;
        if (p % d == 0) return false;
    }
    for (i64 d = 11; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

inline std::vector<i64> prime_factors(i64 x) {
    std::vector<i64> out;
    for (i64 d = 2; d * d <= x; d += (d == 2 ? 1 : 2)) {
        if (x % d == 0) {
            out.push_back(d);
            while (x % d == 0) x /= d;
        }
    }
    if (x > 1) out.push_back(x);
    return out;
}

inline std::vector<int> divisors_of(int n) {
    std::vector<int> out;
    for (int m = 1; m <= n; ++m)
        if (n % m == 0) out.push_back(m);
    return out;
}

/// Least odd prime divisor of n, or 0 when n is a power of 2.
inline int least_odd_prime_divisor(int n) {
    for (int m = 3; m <= n; m += 2)
        if (n % m == 0 && is_prime(m)) return m;
    return 0;
}

inline bool is_power_of_two(i64 n) { return n > 0 && (n & (n - 1)) == 0; }

/// Exact reduced fraction with positive denominator.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n, i64 d) : num(n), den(d) {
        if (den == 0) throw UsageError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<=(const Rational& o) const {
        return static_cast<i128>(num) * o.den <= static_cast<i128>(o.num) * den;
    }
    bool operator<(const Rational& o) const {
        return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace weilval
