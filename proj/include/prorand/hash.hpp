#pragma once

#include "prorand/bit_source.hpp"
#include "prorand/core.hpp"
#include "prorand/element.hpp"
#include "prorand/gf.hpp"
#include "prorand/pro.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace prorand {

class HashFunction;

/// Carter-Wegman k-independent family of functions [0, n) -> inner.
///
/// Seeds are the q^k polynomials of degree < k over GF(q), q = p^e with p the
/// prime dividing m = |inner| and e = max(ceil(log_p n), log_p m). A seed's
/// base-q digit t is the coefficient of X^t. Evaluation embeds x as the field
/// element with index x and reduces the result's index mod m.
class HashFamily {
public:
    static HashFamily deterministic(std::uint64_t k, const Natural& n, const Pro& inner) {
        auto [p, e] = field_shape(k, n, inner);
        return HashFamily(k, n, inner, gf::Field::deterministic(p, e));
    }

    /// Same family law, but the field modulus is sampled with the given bits.
    static HashFamily randomized(std::uint64_t k, const Natural& n, const Pro& inner, BitSource& bits) {
        auto [p, e] = field_shape(k, n, inner);
        return HashFamily(k, n, inner, gf::Field::randomized(p, e, bits));
    }

    std::uint64_t independence() const { return state_->k; }
    const Natural& domain_size() const { return state_->n; }
    const Pro& inner() const { return state_->inner; }
    const gf::Field& field() const { return state_->field; }
    const Natural& range_size() const { return state_->inner.size(); }
    /// q^k
    const Natural& size() const { return state_->size; }

    HashFunction function(const Natural& seed) const;
    Pro as_pro() const;

private:
    struct State {
        std::uint64_t k;
        Natural n;
        Pro inner;
        gf::Field field;
        Natural size;
        std::uint64_t small_range = 0;  // m when the field has 64-bit indices
    };

    HashFamily(std::uint64_t k, const Natural& n, const Pro& inner, gf::Field field) {
        Natural size = pow_natural(field.order(), k);
        std::uint64_t small_range = field.has_small_indices() ? inner.size().convert_to<std::uint64_t>() : 0;
        state_ = std::make_shared<const State>(State{k, n, inner, std::move(field), std::move(size), small_range});
    }

    static std::pair<std::uint64_t, std::uint64_t> field_shape(std::uint64_t k, const Natural& n, const Pro& inner) {
        require(k >= 1, "hash_pro: k must be >= 1");
        require(n >= 1, "hash_pro: n must be >= 1");
        const PrimePower pp = prime_power_decompose(inner.size());
        if (pp.exponent == 0) throw NotPrimePower(inner.size());
        return {pp.prime, std::max(ceil_log(pp.prime, n), pp.exponent)};
    }

    std::shared_ptr<const State> state_;

    friend class HashFunction;
};

/// One member of a HashFamily, identified by its seed; never tabulated.
class HashFunction final : public FunctionValue {
public:
    HashFunction(std::shared_ptr<const HashFamily::State> family, const Natural& seed) : family_(std::move(family)) {
        const auto& field = family_->field;
        require(seed >= 0 && seed < family_->size, "hash function seed out of range");
        Natural rest = seed;
        coeffs_.reserve(family_->k);
        for (std::uint64_t t = 0; t < family_->k; ++t) {
            Natural digit;
            boost::multiprecision::divide_qr(rest, field.order(), rest, digit);
            coeffs_.push_back(std::move(digit));
        }
        if (family_->small_range != 0) {
            small_coeffs_.reserve(coeffs_.size());
            for (const auto& c : coeffs_) small_coeffs_.push_back(c.convert_to<std::uint64_t>());
        }
    }

    Natural domain_size() const override { return family_->n; }

    /// Coefficient indices c_0..c_{k-1}.
    const std::vector<Natural>& coefficients() const { return coeffs_; }

    /// Index into the inner object selected for x.
    Natural range_index(const Natural& x) const {
        require(x >= 0 && x < family_->n, "hash function argument out of domain");
        if (family_->small_range != 0) return range_index_small(x.convert_to<std::uint64_t>());
        const auto& field = family_->field;
        const gf::FieldElem point = field.from_index(x);
        gf::FieldElem acc = field.from_index(coeffs_.back());
        for (std::size_t t = coeffs_.size() - 1; t-- > 0;)
            acc = field.add(field.mul(acc, point), field.from_index(coeffs_[t]));
        return field.index(acc) % family_->inner.size();
    }

    /// 64-bit fast path of range_index; requires has_small_path().
    std::uint64_t range_index_small(std::uint64_t x) const {
        const auto& field = family_->field;
        std::uint64_t acc = small_coeffs_.back();
        for (std::size_t t = small_coeffs_.size() - 1; t-- > 0;)
            acc = field.add_index(field.mul_index(acc, x), small_coeffs_[t]);
        return acc % family_->small_range;
    }

    bool has_small_path() const { return family_->small_range != 0; }

    Element at(const Natural& x) const override { return family_->inner.select(range_index(x)); }

private:
    std::shared_ptr<const HashFamily::State> family_;
    std::vector<Natural> coeffs_;
    std::vector<std::uint64_t> small_coeffs_;
};

inline HashFunction HashFamily::function(const Natural& seed) const { return HashFunction(state_, seed); }

namespace detail {

class HashPro final : public ProImpl {
public:
    explicit HashPro(HashFamily family) : family_(std::move(family)) {}
    const Natural& size() const override { return family_.size(); }
    Element select(const Natural& index) const override {
        return Element::function(std::make_shared<HashFunction>(family_.function(index)));
    }
    ElementKind kind() const override { return ElementKind::function; }
    const HashFamily& family() const { return family_; }

private:
    HashFamily family_;
};

}  // namespace detail

inline Pro HashFamily::as_pro() const { return Pro(std::make_shared<detail::HashPro>(*this)); }

/// H k n inner, with the lexicographically smallest irreducible modulus.
inline Pro hash_pro(std::uint64_t k, const Natural& n, const Pro& inner) {
    return HashFamily::deterministic(k, n, inner).as_pro();
}

/// H_P k n inner: modulus drawn with sample_irreducible.
inline Pro hash_pro_rand(std::uint64_t k, const Natural& n, const Pro& inner, BitSource& bits) {
    return HashFamily::randomized(k, n, inner, bits).as_pro();
}

/// The family behind a Pro built by hash_pro / hash_pro_rand, if any.
inline const HashFamily* as_hash_family(const Pro& pro) {
    const auto* impl = dynamic_cast<const detail::HashPro*>(&pro.impl());
    return impl == nullptr ? nullptr : &impl->family();
}

}  // namespace prorand
