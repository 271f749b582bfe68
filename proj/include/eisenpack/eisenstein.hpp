#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace eisenpack {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("eisenstein: 64-bit addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("eisenstein: 64-bit subtraction overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("eisenstein: 64-bit multiplication overflow");
    return r;
}

}  // namespace detail

/**
 * Element a + b*omega of Z[omega], omega = (-1 + sqrt(-3))/2.
 *
 * omega^2 = -1 - omega, so
 *   (a+b*omega)(c+d*omega) = (ac - bd) + (ad + bc - bd)*omega
 * and norm(a+b*omega) = a^2 - ab + b^2 >= 0 with equality iff a = b = 0.
 * All arithmetic is overflow-checked; out-of-range results throw instead of
 * wrapping.
 */
struct EisensteinInt {
    std::int64_t a{0};  // coefficient of 1
    std::int64_t b{0};  // coefficient of omega

    constexpr EisensteinInt() = default;
    constexpr EisensteinInt(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}

    bool is_zero() const { return a == 0 && b == 0; }

    friend bool operator==(const EisensteinInt&, const EisensteinInt&) = default;

    friend EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) {
        return {detail::checked_add(x.a, y.a), detail::checked_add(x.b, y.b)};
    }

    friend EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) {
        return {detail::checked_sub(x.a, y.a), detail::checked_sub(x.b, y.b)};
    }

    friend EisensteinInt operator-(const EisensteinInt& x) {
        return {detail::checked_sub(0, x.a), detail::checked_sub(0, x.b)};
    }

    friend EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
        using detail::checked_add;
        using detail::checked_mul;
        using detail::checked_sub;
        const std::int64_t ac = checked_mul(x.a, y.a);
        const std::int64_t bd = checked_mul(x.b, y.b);
        const std::int64_t ad = checked_mul(x.a, y.b);
        const std::int64_t bc = checked_mul(x.b, y.a);
        return {checked_sub(ac, bd), checked_sub(checked_add(ad, bc), bd)};
    }
};

/// Complex conjugate: conj(a + b*omega) = (a - b) - b*omega.
inline EisensteinInt conj(const EisensteinInt& x) {
    return {detail::checked_sub(x.a, x.b), detail::checked_sub(0, x.b)};
}

/// Field norm a^2 - ab + b^2. Multiplicative: norm(x*y) = norm(x)*norm(y).
inline std::int64_t norm(const EisensteinInt& x) {
    using detail::checked_mul;
    return detail::checked_add(detail::checked_sub(checked_mul(x.a, x.a), checked_mul(x.a, x.b)),
                               checked_mul(x.b, x.b));
}

/// x^k for k >= 0 by repeated squaring.
EisensteinInt pow(EisensteinInt x, int k);

/// Canonical display form, e.g. "0", "2", "w", "1-2w".
std::string to_string(const EisensteinInt& x);
std::ostream& operator<<(std::ostream& os, const EisensteinInt& x);

/// Image of u + omega*v in R^2: (u - v/2, (sqrt(3)/2) v). Preserves length:
/// the Euclidean norm of the image equals |u + omega*v| as a complex number.
inline std::array<double, 2> embed(double u, double v) {
    return {u - 0.5 * v, 0.8660254037844386467637231707529362 * v};
}

inline std::array<double, 2> embed(const EisensteinInt& x) {
    return embed(static_cast<double>(x.a), static_cast<double>(x.b));
}

enum class PrimeKind { Split, Inert, Ramified };

std::string to_string(PrimeKind kind);

/**
 * Splitting data of a rational prime p in Q(sqrt(-3)):
 * a generator t of a prime ideal above p, its norm Q, and a fixed residue
 * system reps for O_K/(t) with reps[0] = 0.
 */
struct PrimeIdealInfo {
    std::int64_t p{0};
    PrimeKind kind{PrimeKind::Split};
    EisensteinInt t;
    std::int64_t Q{0};
    std::vector<EisensteinInt> reps;
};

bool is_prime(std::int64_t n);

/**
 * Splitting law for Q(sqrt(-3)):
 *   p = 3            -> Ramified, Q = 3
 *   p = 1 (mod 3)    -> Split,    Q = p
 *   otherwise        -> Inert,    Q = p^2, t = p
 * For Split/Ramified, t is found by scanning a = 0,1,2,... and b ascending
 * for the first a^2 - ab + b^2 = Q, which fixes one associate
 * deterministically (p = 3 gives t = 1 - omega).
 * Residues: {0, .., p-1} for Split/Ramified, {a + b*omega : 0 <= a,b < p}
 * for Inert.
 */
PrimeIdealInfo split_prime(std::int64_t p);

/// True iff t divides x in Z[omega]; both coordinates of x*conj(t) must be
/// divisible by norm(t).
bool divisible(const EisensteinInt& x, const EisensteinInt& t);

/// Index j with x = info.reps[j] (mod info.t). Always succeeds for a valid
/// residue system.
std::size_t reduce(const EisensteinInt& x, const PrimeIdealInfo& info);

}  // namespace eisenpack
