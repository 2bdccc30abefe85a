#pragma once

#include "prorand/bit_source.hpp"
#include "prorand/core.hpp"
#include "prorand/element.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace prorand {

enum class ElementKind { integer, signed_integer, pair, function, tuple };

/// Implementation hook for a pseudorandom object. `select` is only called
/// with indices already checked against size().
class ProImpl {
public:
    virtual ~ProImpl() = default;
    virtual const Natural& size() const = 0;
    virtual Element select(const Natural& index) const = 0;
    virtual ElementKind kind() const = 0;
};

/// A pseudorandom object: a nonempty indexed multiset, sampled by choosing an
/// index uniformly from [0, size()). Immutable and cheap to copy.
class Pro {
public:
    explicit Pro(std::shared_ptr<const ProImpl> impl) : impl_(std::move(impl)) {
        require(impl_ != nullptr && impl_->size() >= 1, "pseudorandom object must have at least one element");
    }

    const Natural& size() const { return impl_->size(); }
    ElementKind kind() const { return impl_->kind(); }

    Element select(const Natural& index) const {
        if (index < 0 || index >= impl_->size())
            throw InvalidArgument("select: index " + index.str() + " outside [0, " + impl_->size().str() + ")");
        return impl_->select(index);
    }

    const ProImpl& impl() const { return *impl_; }
    const std::shared_ptr<const ProImpl>& shared_impl() const { return impl_; }

private:
    std::shared_ptr<const ProImpl> impl_;
};

/// Uniform index by rejection sampling, then select.
inline Element sample_pro(const Pro& pro, BitSource& bits) { return pro.select(bits.uniform_below(pro.size())); }

namespace detail {

class ListPro final : public ProImpl {
public:
    explicit ListPro(std::vector<Element> items) : items_(std::move(items)), size_(items_.size()) {
        for (const auto& e : items_)
            if (e.kind() == Element::Kind::integer && e.as_integer() < 0) kind_ = ElementKind::signed_integer;
        if (!items_.empty() && items_.front().kind() != Element::Kind::integer) kind_ = ElementKind::tuple;
    }
    const Natural& size() const override { return size_; }
    Element select(const Natural& index) const override { return items_[index.convert_to<std::size_t>()]; }
    ElementKind kind() const override { return kind_; }
    const std::vector<Element>& items() const { return items_; }

private:
    std::vector<Element> items_;
    Natural size_;
    ElementKind kind_ = ElementKind::integer;
};

class NatPro final : public ProImpl {
public:
    explicit NatPro(Natural n) : size_(std::move(n)) {}
    const Natural& size() const override { return size_; }
    Element select(const Natural& index) const override { return Element::integer(index); }
    ElementKind kind() const override { return ElementKind::integer; }

private:
    Natural size_;
};

class GeomPro final : public ProImpl {
public:
    explicit GeomPro(std::uint64_t nmax) : nmax_(nmax), size_(Natural(1) << nmax) {}
    const Natural& size() const override { return size_; }
    Element select(const Natural& index) const override {
        std::uint64_t ones = 0;
        while (ones < nmax_ && boost::multiprecision::bit_test(index, static_cast<unsigned>(ones))) ++ones;
        return Element::integer(ones);
    }
    ElementKind kind() const override { return ElementKind::integer; }
    std::uint64_t nmax() const { return nmax_; }

private:
    std::uint64_t nmax_;
    Natural size_;
};

// First component occupies the high digits: index = i_P * |Q| + i_Q.
class ProductPro final : public ProImpl {
public:
    ProductPro(Pro first, Pro second)
        : first_(std::move(first)), second_(std::move(second)), size_(first_.size() * second_.size()) {}
    const Natural& size() const override { return size_; }
    Element select(const Natural& index) const override {
        Natural hi, lo;
        boost::multiprecision::divide_qr(index, second_.size(), hi, lo);
        return Element::pair(first_.select(hi), second_.select(lo));
    }
    ElementKind kind() const override { return ElementKind::pair; }

private:
    Pro first_;
    Pro second_;
    Natural size_;
};

}  // namespace detail

inline Pro list_pro(std::vector<Element> items) {
    require(!items.empty(), "list_pro: list must be nonempty");
    return Pro(std::make_shared<detail::ListPro>(std::move(items)));
}

inline Pro list_pro(const std::vector<long long>& values) {
    std::vector<Element> items;
    items.reserve(values.size());
    for (auto v : values) items.push_back(Element::integer(v));
    return list_pro(std::move(items));
}

/// Uniform on {0, ..., n-1}.
inline Pro nat_pro(const Natural& n) {
    require(n >= 1, "nat_pro: n must be >= 1");
    return Pro(std::make_shared<detail::NatPro>(n));
}

/// Geometric primitive over 2^nmax indices: select(i) counts the trailing one
/// bits of i, so value v < nmax has mass 2^-(v+1) and nmax keeps the rest.
inline Pro geom_pro(std::uint64_t nmax) {
    require(nmax >= 1, "geom_pro: nmax must be >= 1");
    require(nmax <= 4096, "geom_pro: nmax too large");
    return Pro(std::make_shared<detail::GeomPro>(nmax));
}

inline Pro prod_pro(const Pro& first, const Pro& second) {
    return Pro(std::make_shared<detail::ProductPro>(first, second));
}

}  // namespace prorand
