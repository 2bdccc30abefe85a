#pragma once

#include "prorand/bit_source.hpp"
#include "prorand/core.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prorand::gf {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    if (s < a || s >= p) s -= p;
    return s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // Fermat: a^(p-2)
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint64_t e = p - 2;
    while (e > 0) {
        if (e & 1U) result = mulmod(result, base, p);
        base = mulmod(base, base, p);
        e >>= 1U;
    }
    return result;
}

}  // namespace detail

/// Polynomial over GF(p). Coefficients are little-endian (index i holds the
/// coefficient of X^i) and normalized: the zero polynomial is empty and the
/// highest stored coefficient is never zero.
class Poly {
public:
    Poly() = default;

    Poly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
        require(p_ >= 2, "Poly: modulus must be >= 2");
        for (auto c : coeffs_) require(c < p_, "Poly: coefficient out of range");
        trim();
    }

    static Poly zero(std::uint64_t p) { return Poly(p, {}); }
    static Poly constant(std::uint64_t p, std::uint64_t c) { return Poly(p, {c % p}); }
    static Poly monomial(std::uint64_t p, std::uint64_t coeff, std::size_t degree) {
        std::vector<std::uint64_t> c(degree + 1, 0);
        c[degree] = coeff % p;
        return Poly(p, std::move(c));
    }
    static Poly x(std::uint64_t p) { return monomial(p, 1, 1); }

    std::uint64_t modulus() const { return p_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    std::uint64_t lead() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    std::uint64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.p_ == b.p_ && a.coeffs_ == b.coeffs_; }

    /// Descending powers, e.g. "X^2+2*X+1"; the zero polynomial is "0".
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const std::uint64_t c = coeffs_[i];
            if (c == 0) continue;
            if (!out.empty()) out += '+';
            if (i == 0) {
                out += std::to_string(c);
                continue;
            }
            if (c != 1) out += std::to_string(c) + "*";
            out += 'X';
            if (i > 1) out += '^' + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::uint64_t p_ = 2;
    std::vector<std::uint64_t> coeffs_;
};

inline std::ostream& operator<<(std::ostream& out, const Poly& f) { return out << f.to_string(); }

inline void check_same_field(const Poly& a, const Poly& b) {
    require(a.modulus() == b.modulus(), "polynomials over different prime fields");
}

inline Poly add(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    const auto p = a.modulus();
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::addmod(a.coeff(i), b.coeff(i), p);
    return Poly(p, std::move(c));
}

inline Poly sub(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    const auto p = a.modulus();
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::submod(a.coeff(i), b.coeff(i), p);
    return Poly(p, std::move(c));
}

inline Poly scale(const Poly& a, std::uint64_t factor) {
    const auto p = a.modulus();
    std::vector<std::uint64_t> c(a.coeffs());
    for (auto& x : c) x = detail::mulmod(x, factor % p, p);
    return Poly(p, std::move(c));
}

inline Poly mul(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    const auto p = a.modulus();
    if (a.is_zero() || b.is_zero()) return Poly::zero(p);
    std::vector<std::uint64_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] = detail::addmod(c[i + j], detail::mulmod(a.coeffs()[i], b.coeffs()[j], p), p);
    }
    return Poly(p, std::move(c));
}

/// Long division: returns (quotient, remainder).
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    const auto p = a.modulus();
    if (a.degree() < b.degree()) return {Poly::zero(p), a};
    std::vector<std::uint64_t> rem(a.coeffs());
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<std::uint64_t> quot(rem.size() - db, 0);
    const std::uint64_t lead_inv = detail::invmod(b.lead(), p);
    for (std::size_t i = rem.size(); i-- > db;) {
        const std::uint64_t factor = detail::mulmod(rem[i], lead_inv, p);
        if (factor == 0) continue;
        quot[i - db] = factor;
        for (std::size_t j = 0; j <= db; ++j)
            rem[i - db + j] = detail::submod(rem[i - db + j], detail::mulmod(factor, b.coeffs()[j], p), p);
    }
    rem.resize(db);
    return {Poly(p, std::move(quot)), Poly(p, std::move(rem))};
}

inline Poly mod(const Poly& a, const Poly& m) { return divmod(a, m).second; }

inline Poly make_monic(const Poly& a) {
    if (a.is_zero()) return a;
    return scale(a, detail::invmod(a.lead(), a.modulus()));
}

/// Monic greatest common divisor (zero when both inputs are zero).
inline Poly gcd(Poly a, Poly b) {
    check_same_field(a, b);
    while (!b.is_zero()) {
        Poly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/// a^e mod m by binary exponentiation.
inline Poly powmod(const Poly& a, Natural e, const Poly& m) {
    check_same_field(a, m);
    if (m.is_zero()) throw InvalidArgument("powmod: zero modulus");
    require(e >= 0, "powmod: negative exponent");
    Poly result = mod(Poly::constant(a.modulus(), 1), m);
    Poly base = mod(a, m);
    while (e > 0) {
        if ((e & 1) != 0) result = mod(mul(result, base), m);
        e >>= 1;
        if (e > 0) base = mod(mul(base, base), m);
    }
    return result;
}

/// Parses the rendering produced by Poly::to_string (terms joined by '+',
/// whitespace ignored). Coefficients are reduced mod p.
inline Poly parse_poly(std::uint64_t p, std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    require(!s.empty(), "empty polynomial text");
    if (s == "0") return Poly::zero(p);
    std::vector<std::uint64_t> coeffs;
    std::size_t pos = 0;
    auto read_number = [&](std::uint64_t& out) {
        std::size_t start = pos;
        std::uint64_t value = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            value = value * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            ++pos;
        }
        if (pos == start) return false;
        out = value;
        return true;
    };
    while (pos < s.size()) {
        std::uint64_t c = 1;
        std::size_t power = 0;
        bool has_coeff = read_number(c);
        if (pos < s.size() && (s[pos] == 'X' || s[pos] == 'x' || s[pos] == '*')) {
            if (s[pos] == '*') {
                require(has_coeff, "polynomial: '*' without coefficient");
                ++pos;
            }
            require(pos < s.size() && (s[pos] == 'X' || s[pos] == 'x'), "polynomial: expected X");
            ++pos;
            power = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                std::uint64_t e = 0;
                require(read_number(e), "polynomial: expected exponent");
                power = static_cast<std::size_t>(e);
            }
        } else {
            require(has_coeff, "polynomial: expected term at offset " + std::to_string(pos));
        }
        if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
        coeffs[power] = detail::addmod(coeffs[power], c % p, p);
        if (pos < s.size()) {
            require(s[pos] == '+', "polynomial: expected '+' at offset " + std::to_string(pos));
            ++pos;
            require(pos < s.size(), "polynomial: trailing '+'");
        }
    }
    return Poly(p, std::move(coeffs));
}

inline int mobius(std::uint64_t n) {
    require(n >= 1, "mobius: n must be >= 1");
    int result = 1;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Gauss's count of monic irreducible polynomials of degree k over GF(p).
inline Natural count_irreducible(std::uint64_t p, std::uint64_t k) {
    require(is_prime(p), "count_irreducible: p must be prime");
    require(k >= 1, "count_irreducible: degree must be >= 1");
    Natural sum = 0;
    for (std::uint64_t d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        Natural term = pow_natural(Natural(p), k / d);
        sum += mu > 0 ? term : Natural(-term);
    }
    return sum / k;
}

/// Rabin's irreducibility test for a monic polynomial of degree >= 1.
inline bool rabin_test(const Poly& f) {
    require(f.degree() >= 1, "rabin_test: polynomial must be non-constant");
    require(f.is_monic(), "rabin_test: polynomial must be monic");
    const auto p = f.modulus();
    const auto n = static_cast<std::uint64_t>(f.degree());
    const Poly x_mod_f = mod(Poly::x(p), f);

    // frobenius[i] = X^(p^i) mod f
    std::vector<Poly> frobenius{x_mod_f};
    for (std::uint64_t i = 1; i <= n; ++i) frobenius.push_back(powmod(frobenius.back(), Natural(p), f));

    if (!(frobenius[n] == x_mod_f)) return false;
    for (auto r : prime_divisors(n)) {
        Poly g = sub(frobenius[n / r], x_mod_f);
        Poly common = gcd(f, g);
        if (!(common.degree() == 0)) return false;
    }
    return true;
}

/// The monic degree-deg polynomial whose lower coefficients are the base-p
/// digits of index (digit i is the coefficient of X^i).
inline Poly enum_monic_poly(std::uint64_t p, std::uint64_t deg, Natural index) {
    require(index >= 0 && index < pow_natural(Natural(p), deg), "enum_monic_poly: index out of range");
    std::vector<std::uint64_t> coeffs(deg + 1, 0);
    for (std::uint64_t i = 0; i < deg; ++i) {
        coeffs[i] = static_cast<std::uint64_t>(index % p);
        index /= p;
    }
    coeffs[deg] = 1;
    return Poly(p, std::move(coeffs));
}

/// Inverse of enum_monic_poly.
inline Natural monic_poly_index(const Poly& f) {
    Natural index = 0;
    for (std::size_t i = f.coeffs().size() - 1; i-- > 0;) index = index * f.modulus() + f.coeffs()[i];
    return index;
}

/// Irreducible monic polynomial of the given degree with the smallest
/// enum_monic_poly index.
inline Poly find_irreducible_det(std::uint64_t p, std::uint64_t deg) {
    require(is_prime(p), "find_irreducible_det: p must be prime");
    require(deg >= 1, "find_irreducible_det: degree must be >= 1");
    const Natural total = pow_natural(Natural(p), deg);
    for (Natural i = 0; i < total; ++i) {
        Poly candidate = enum_monic_poly(p, deg, i);
        if (rabin_test(candidate)) return candidate;
    }
    throw Error("find_irreducible_det: no irreducible polynomial found");
}

struct SampledIrreducible {
    Poly poly;
    std::uint64_t trials;
};

/// Rejection sampling of a uniformly random monic polynomial until Rabin's
/// test passes; capped at 128 * deg trials.
inline SampledIrreducible sample_irreducible(std::uint64_t p, std::uint64_t deg, BitSource& bits) {
    require(is_prime(p), "sample_irreducible: p must be prime");
    require(deg >= 1, "sample_irreducible: degree must be >= 1");
    const Natural total = pow_natural(Natural(p), deg);
    const std::uint64_t cap = 128 * deg;
    for (std::uint64_t trial = 1; trial <= cap; ++trial) {
        Poly candidate = enum_monic_poly(p, deg, bits.uniform_below(total));
        if (rabin_test(candidate)) return {std::move(candidate), trial};
    }
    throw IterationCapExceeded("sample_irreducible: exceeded " + std::to_string(cap) + " trials");
}

/// Element of GF(p^n): a residue polynomial of degree < n.
struct FieldElem {
    Poly residue;
    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.residue == b.residue; }
};

/// GF(p^n) as GF(p)[X] modulo a monic irreducible polynomial of degree n.
class Field {
public:
    Field(std::uint64_t p, Poly modulus) : p_(p), modulus_(std::move(modulus)) {
        require(is_prime(p_), "Field: p must be prime");
        require(modulus_.modulus() == p_, "Field: modulus over wrong prime");
        require(modulus_.degree() >= 1 && modulus_.is_monic(), "Field: modulus must be monic and non-constant");
        require(rabin_test(modulus_), "Field: modulus is reducible");
        n_ = static_cast<std::uint64_t>(modulus_.degree());
        order_ = pow_natural(Natural(p_), n_);
        if (order_ < (Natural(1) << 62)) small_order_ = order_.convert_to<std::uint64_t>();
        if (p_ == 2 && n_ <= 62) {
            for (std::size_t i = 0; i < modulus_.coeffs().size(); ++i)
                if (modulus_.coeffs()[i] != 0) binary_modulus_ |= std::uint64_t{1} << i;
        }
    }

    /// n = 1 always uses the modulus X, so GF(p) goes through the same path.
    static Field deterministic(std::uint64_t p, std::uint64_t n) {
        require(is_prime(p), "field_new: p must be prime");
        require(n >= 1, "field_new: degree must be >= 1");
        return Field(p, n == 1 ? Poly::x(p) : find_irreducible_det(p, n));
    }

    static Field randomized(std::uint64_t p, std::uint64_t n, BitSource& bits) {
        require(is_prime(p), "field_new: p must be prime");
        require(n >= 1, "field_new: degree must be >= 1");
        return Field(p, n == 1 ? Poly::x(p) : sample_irreducible(p, n, bits).poly);
    }

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t degree() const { return n_; }
    const Poly& modulus() const { return modulus_; }
    const Natural& order() const { return order_; }

    FieldElem zero() const { return {Poly::zero(p_)}; }
    FieldElem one() const { return {Poly::constant(p_, 1)}; }

    FieldElem add(const FieldElem& a, const FieldElem& b) const { return {gf::add(a.residue, b.residue)}; }
    FieldElem sub(const FieldElem& a, const FieldElem& b) const { return {gf::sub(a.residue, b.residue)}; }
    FieldElem mul(const FieldElem& a, const FieldElem& b) const {
        return {mod(gf::mul(a.residue, b.residue), modulus_)};
    }

    /// Inverse via the extended Euclidean algorithm.
    FieldElem inv(const FieldElem& a) const {
        if (a.residue.is_zero()) throw InvalidArgument("field inverse of zero");
        Poly r0 = modulus_, r1 = a.residue;
        Poly s0 = Poly::zero(p_), s1 = Poly::constant(p_, 1);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            Poly s = gf::sub(s0, gf::mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        return {mod(scale(s0, detail::invmod(r0.lead(), p_)), modulus_)};
    }

    FieldElem pow(const FieldElem& a, const Natural& e) const { return {powmod(a.residue, e, modulus_)}; }

    /// Index = sum of coeff_j * p^j over the residue.
    Natural index(const FieldElem& a) const {
        Natural out = 0;
        const auto& c = a.residue.coeffs();
        for (std::size_t i = c.size(); i-- > 0;) out = out * p_ + c[i];
        return out;
    }

    FieldElem from_index(Natural i) const {
        require(i >= 0 && i < order_, "fe_from_index: index out of range");
        std::vector<std::uint64_t> coeffs(n_, 0);
        for (std::uint64_t j = 0; j < n_ && i > 0; ++j) {
            coeffs[j] = static_cast<std::uint64_t>(i % p_);
            i /= p_;
        }
        return {Poly(p_, std::move(coeffs))};
    }

    /// True when index arithmetic fits in 64 bits (order < 2^62).
    bool has_small_indices() const { return small_order_ != 0; }

    std::uint64_t add_index(std::uint64_t a, std::uint64_t b) const {
        if (p_ == 2) return a ^ b;
        std::uint64_t out = 0, place = 1;
        for (std::uint64_t j = 0; j < n_; ++j) {
            out += detail::addmod(a % p_, b % p_, p_) * place;
            a /= p_;
            b /= p_;
            place *= p_;
        }
        return out;
    }

    std::uint64_t mul_index(std::uint64_t a, std::uint64_t b) const {
        if (binary_modulus_ != 0) return binary_mul(a, b);
        return index(mul(small_elem(a), small_elem(b))).convert_to<std::uint64_t>();
    }

private:
    FieldElem small_elem(std::uint64_t i) const { return from_index(Natural(i)); }

    // Carry-less multiply followed by reduction by the modulus bit pattern.
    std::uint64_t binary_mul(std::uint64_t a, std::uint64_t b) const {
        unsigned __int128 product = 0;
        for (std::uint64_t bit = 0; bit < n_; ++bit)
            if ((b >> bit) & 1U) product ^= static_cast<unsigned __int128>(a) << bit;
        for (std::uint64_t bit = 2 * n_; bit-- > n_;)
            if ((product >> bit) & 1U) product ^= static_cast<unsigned __int128>(binary_modulus_) << (bit - n_);
        return static_cast<std::uint64_t>(product);
    }

    std::uint64_t p_;
    std::uint64_t n_ = 0;
    Poly modulus_;
    Natural order_;
    std::uint64_t small_order_ = 0;
    std::uint64_t binary_modulus_ = 0;
};

}  // namespace prorand::gf
