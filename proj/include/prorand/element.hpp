#pragma once

#include "prorand/core.hpp"

#include <memory>
#include <string>
#include <vector>

namespace prorand {

class Element;

/// A function value over the domain [0, domain_size()), evaluated on demand.
class FunctionValue {
public:
    virtual ~FunctionValue() = default;
    virtual Natural domain_size() const = 0;
    virtual Element at(const Natural& x) const = 0;
};

/// Value selected from a pseudorandom object: an integer, a pair, a tuple
/// (walks), or a function (hash families). Functions compare and render
/// extensionally, by their value table over the domain.
class Element {
public:
    enum class Kind { integer, pair, tuple, function };

    Element() = default;

    static Element integer(Natural value) {
        Element e;
        e.kind_ = Kind::integer;
        e.value_ = std::move(value);
        return e;
    }
    static Element pair(Element first, Element second) {
        Element e;
        e.kind_ = Kind::pair;
        e.items_ = std::make_shared<const std::vector<Element>>(std::vector<Element>{std::move(first), std::move(second)});
        return e;
    }
    static Element tuple(std::vector<Element> items) {
        Element e;
        e.kind_ = Kind::tuple;
        e.items_ = std::make_shared<const std::vector<Element>>(std::move(items));
        return e;
    }
    static Element function(std::shared_ptr<const FunctionValue> fn) {
        Element e;
        e.kind_ = Kind::function;
        e.fn_ = std::move(fn);
        return e;
    }

    Kind kind() const { return kind_; }
    const Natural& as_integer() const {
        require(kind_ == Kind::integer, "element is not an integer");
        return value_;
    }
    const std::vector<Element>& items() const {
        require(kind_ == Kind::pair || kind_ == Kind::tuple, "element has no components");
        return *items_;
    }
    const Element& first() const { return items().at(0); }
    const Element& second() const { return items().at(1); }
    const FunctionValue& function() const {
        require(kind_ == Kind::function, "element is not a function");
        return *fn_;
    }
    Element operator()(const Natural& x) const { return function().at(x); }

    /// Integers in decimal, pairs "(a,b)", tuples "[a,b,c]", functions as
    /// their value table "{h(0),h(1),...}".
    std::string render() const {
        switch (kind_) {
        case Kind::integer:
            return value_.str();
        case Kind::pair:
            return "(" + first().render() + "," + second().render() + ")";
        case Kind::tuple: {
            std::string out = "[";
            for (std::size_t i = 0; i < items_->size(); ++i) {
                if (i > 0) out += ',';
                out += (*items_)[i].render();
            }
            return out + "]";
        }
        case Kind::function: {
            std::string out = "{";
            const Natural n = fn_->domain_size();
            for (Natural x = 0; x < n; ++x) {
                if (x > 0) out += ',';
                out += fn_->at(x).render();
            }
            return out + "}";
        }
        }
        return {};
    }

    static int compare(const Element& a, const Element& b) {
        if (a.kind_ != b.kind_) return a.kind_ < b.kind_ ? -1 : 1;
        switch (a.kind_) {
        case Kind::integer:
            return a.value_ < b.value_ ? -1 : (b.value_ < a.value_ ? 1 : 0);
        case Kind::pair:
        case Kind::tuple: {
            const auto& x = *a.items_;
            const auto& y = *b.items_;
            if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (int c = compare(x[i], y[i]); c != 0) return c;
            return 0;
        }
        case Kind::function: {
            if (a.fn_ == b.fn_) return 0;
            const Natural na = a.fn_->domain_size(), nb = b.fn_->domain_size();
            if (na != nb) return na < nb ? -1 : 1;
            for (Natural x = 0; x < na; ++x)
                if (int c = compare(a.fn_->at(x), b.fn_->at(x)); c != 0) return c;
            return 0;
        }
        }
        return 0;
    }

    friend bool operator<(const Element& a, const Element& b) { return compare(a, b) < 0; }
    friend bool operator==(const Element& a, const Element& b) { return compare(a, b) == 0; }

private:
    Kind kind_ = Kind::integer;
    Natural value_ = 0;
    std::shared_ptr<const std::vector<Element>> items_;
    std::shared_ptr<const FunctionValue> fn_;
};

}  // namespace prorand
