#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace prorand {

// Sizes, seeds and field orders routinely exceed 64 bits (q^k, n*d^(l-1)).
using Natural = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct NotPrimePower : Error {
    explicit NotPrimePower(const Natural& size)
        : Error("not a prime power: " + size.str()), value(size) {}
    Natural value;
};

struct IterationCapExceeded : Error {
    using Error::Error;
};

struct BitSourceDefective : Error {
    using Error::Error;
};

struct SizeExceedsCap : Error {
    SizeExceedsCap(const Natural& size, const Natural& cap)
        : Error("size " + size.str() + " exceeds cap " + cap.str()) {}
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidArgument(message);
}

inline Natural pow_natural(Natural base, std::uint64_t exp) {
    Natural result = 1;
    while (exp > 0) {
        if (exp & 1U) result *= base;
        exp >>= 1U;
        if (exp > 0) base *= base;
    }
    return result;
}

// Number of bits needed to write every value in [0, bound); 0 for bound <= 1.
inline std::uint64_t bits_for_range(const Natural& bound) {
    if (bound <= 1) return 0;
    Natural top = bound - 1;
    return static_cast<std::uint64_t>(boost::multiprecision::msb(top)) + 1;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d <= n / d; ++d)
        if (n % d == 0) return false;
    return true;
}

struct PrimePower {
    std::uint64_t prime;
    std::uint64_t exponent;
};

// Trial division up to sqrt(m); returns exponent 0 when m is not p^j, j >= 1.
inline PrimePower prime_power_decompose(const Natural& m) {
    if (m < 2) return {0, 0};
    Natural rest = m;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; Natural(d) * d <= rest; ++d) {
        if (rest % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) {
        // m itself is prime
        if (m > std::numeric_limits<std::uint64_t>::max()) return {0, 0};
        return {m.convert_to<std::uint64_t>(), 1};
    }
    std::uint64_t e = 0;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) return {0, 0};
    return {p, e};
}

inline bool is_prime_power(const Natural& m) { return prime_power_decompose(m).exponent > 0; }

// Smallest e with base^e >= n (0 for n <= 1).
inline std::uint64_t ceil_log(std::uint64_t base, const Natural& n) {
    std::uint64_t e = 0;
    Natural power = 1;
    while (power < n) {
        power *= base;
        ++e;
    }
    return e;
}

inline std::string render_rational(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    return num.str() + "/" + den.str();
}

}  // namespace prorand
