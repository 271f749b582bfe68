#include "eisenpack/eisenstein.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace eisenpack {

EisensteinInt pow(EisensteinInt x, int k) {
    if (k < 0) throw std::invalid_argument("pow: negative exponent");
    EisensteinInt result{1, 0};
    while (k > 0) {
        if (k & 1) result = result * x;
        x = x * x;
        k >>= 1;
    }
    return result;
}

std::string to_string(const EisensteinInt& x) {
    auto omega_part = [](std::int64_t b, bool leading) {
        std::ostringstream os;
        if (b == 1)
            os << (leading ? "w" : "+w");
        else if (b == -1)
            os << "-w";
        else if (b > 0)
            os << (leading ? "" : "+") << b << "w";
        else
            os << b << "w";
        return os.str();
    };
    if (x.a == 0 && x.b == 0) return "0";
    std::ostringstream os;
    if (x.a != 0) os << x.a;
    if (x.b != 0) os << omega_part(x.b, x.a == 0);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const EisensteinInt& x) {
    return os << to_string(x);
}

std::string to_string(PrimeKind kind) {
    switch (kind) {
        case PrimeKind::Split: return "Split";
        case PrimeKind::Inert: return "Inert";
        case PrimeKind::Ramified: return "Ramified";
    }
    return "?";
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

EisensteinInt find_generator(std::int64_t Q) {
    const auto bound = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(Q)))) + 1;
    for (std::int64_t a = 0; a <= bound; ++a) {
        for (std::int64_t b = -bound; b <= bound; ++b) {
            const EisensteinInt t{a, b};
            if (!t.is_zero() && norm(t) == Q) return t;
        }
    }
    throw std::logic_error("split_prime: no generator found (not a norm)");
}

}  // namespace

PrimeIdealInfo split_prime(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("split_prime: " + std::to_string(p) + " is not prime");

    PrimeIdealInfo info;
    info.p = p;
    if (p == 3) {
        info.kind = PrimeKind::Ramified;
        info.Q = 3;
        info.t = find_generator(3);  // 1 - omega
    } else if (p % 3 == 1) {
        info.kind = PrimeKind::Split;
        info.Q = p;
        info.t = find_generator(p);
    } else {
        info.kind = PrimeKind::Inert;
        info.Q = detail::checked_mul(p, p);
        info.t = EisensteinInt{p, 0};
    }

    if (info.kind == PrimeKind::Inert) {
        // 0, 1, .., p-1, w, 1+w, ...: reps[0] stays zero.
        info.reps.reserve(static_cast<std::size_t>(info.Q));
        for (std::int64_t b = 0; b < p; ++b)
            for (std::int64_t a = 0; a < p; ++a) info.reps.push_back({a, b});
    } else {
        info.reps.reserve(static_cast<std::size_t>(info.Q));
        for (std::int64_t a = 0; a < info.Q; ++a) info.reps.push_back({a, 0});
    }
    return info;
}

bool divisible(const EisensteinInt& x, const EisensteinInt& t) {
    if (t.is_zero()) throw std::invalid_argument("divisible: zero divisor");
    const EisensteinInt y = x * conj(t);
    const std::int64_t q = norm(t);
    return y.a % q == 0 && y.b % q == 0;
}

std::size_t reduce(const EisensteinInt& x, const PrimeIdealInfo& info) {
    for (std::size_t j = 0; j < info.reps.size(); ++j) {
        if (divisible(x - info.reps[j], info.t)) return j;
    }
    throw std::logic_error("reduce: residue system does not cover input");
}

}  // namespace eisenpack
