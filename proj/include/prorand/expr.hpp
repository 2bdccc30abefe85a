#pragma once

#include "prorand/bit_source.hpp"
#include "prorand/core.hpp"
#include "prorand/expander.hpp"
#include "prorand/hash.hpp"
#include "prorand/pro.hpp"

#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace prorand::expr {

// Grammar (whitespace insignificant):
//   expr := term { 'x' term }
//   term := 'L' '[' int {',' int} ']' | 'N' '(' nat ')' | 'G' '(' nat ')'
//         | 'H' '(' nat ',' nat ',' expr ')' | 'HP' '(' nat ',' nat ',' expr ')'
//         | 'E' '(' nat ',' real ',' expr ')' | '(' expr ')'
//   real := decimal | nat '/' nat

struct ProExpr {
    enum class Kind { list, nat, geom, hash, hash_rand, walk, product };

    Kind kind = Kind::nat;
    std::vector<Natural> values;  // L items
    Natural first = 0;            // N n, G nmax, H/HP k, E l
    Natural second = 0;           // H/HP n
    Rational lambda = 0;          // E
    std::vector<ProExpr> children;

    friend bool operator==(const ProExpr& a, const ProExpr& b) {
        return a.kind == b.kind && a.values == b.values && a.first == b.first && a.second == b.second &&
               a.lambda == b.lambda && a.children == b.children;
    }
};

struct ParseError : Error {
    ParseError(std::size_t offset, const std::set<std::string>& expected)
        : Error(message(offset, expected)), offset(offset), expected(expected) {}

    std::size_t offset;
    std::set<std::string> expected;

private:
    static std::string message(std::size_t offset, const std::set<std::string>& expected) {
        std::string out = "syntax error at byte " + std::to_string(offset) + ": expected one of";
        for (const auto& e : expected) out += " " + e;
        return out;
    }
};

struct MissingBitSource : Error {
    MissingBitSource() : Error("HP requires a bit source (--seed)") {}
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ProExpr parse() {
        ProExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"'x'", "end of input"});
        return e;
    }

private:
    [[noreturn]] void fail(std::set<std::string> expected) const { throw ParseError(pos_, expected); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail({std::string("'") + c + "'"});
        ++pos_;
    }

    ProExpr expr() {
        ProExpr left = term();
        while (peek('x')) {
            ++pos_;
            ProExpr node;
            node.kind = ProExpr::Kind::product;
            node.children = {std::move(left), term()};
            left = std::move(node);
        }
        return left;
    }

    ProExpr term() {
        skip_ws();
        ProExpr node;
        if (pos_ >= text_.size()) fail({"'L'", "'N'", "'G'", "'H'", "'HP'", "'E'", "'('"});
        const char c = text_[pos_];
        if (c == 'L') {
            ++pos_;
            node.kind = ProExpr::Kind::list;
            expect('[');
            node.values.push_back(integer());
            while (peek(',')) {
                ++pos_;
                node.values.push_back(integer());
            }
            expect(']');
        } else if (c == 'N' || c == 'G') {
            ++pos_;
            node.kind = c == 'N' ? ProExpr::Kind::nat : ProExpr::Kind::geom;
            expect('(');
            node.first = natural();
            expect(')');
        } else if (c == 'H') {
            ++pos_;
            node.kind = ProExpr::Kind::hash;
            if (pos_ < text_.size() && text_[pos_] == 'P') {
                ++pos_;
                node.kind = ProExpr::Kind::hash_rand;
            }
            expect('(');
            node.first = natural();
            expect(',');
            node.second = natural();
            expect(',');
            node.children.push_back(expr());
            expect(')');
        } else if (c == 'E') {
            ++pos_;
            node.kind = ProExpr::Kind::walk;
            expect('(');
            node.first = natural();
            expect(',');
            node.lambda = real();
            expect(',');
            node.children.push_back(expr());
            expect(')');
        } else if (c == '(') {
            ++pos_;
            node = expr();
            expect(')');
        } else {
            fail({"'L'", "'N'", "'G'", "'H'", "'HP'", "'E'", "'('"});
        }
        return node;
    }

    Natural digits(const char* what) {
        skip_ws();
        const std::size_t start = pos_;
        Natural value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) fail({what});
        return value;
    }

    Natural natural() { return digits("natural"); }

    Natural integer() {
        bool negative = false;
        if (peek('-')) {
            ++pos_;
            negative = true;
        }
        Natural v = digits("integer");
        return negative ? Natural(-v) : v;
    }

    Rational real() {
        Natural whole = digits("real");
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            const std::size_t den_at = pos_;
            Natural den = digits("denominator");
            if (den == 0) {
                pos_ = den_at;
                fail({"nonzero denominator"});
            }
            return Rational(whole, den);
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            const std::size_t start = pos_;
            Natural frac = 0, scale = 1;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                frac = frac * 10 + (text_[pos_] - '0');
                scale *= 10;
                ++pos_;
            }
            if (pos_ == start) fail({"fraction digits"});
            return Rational(whole * scale + frac, scale);
        }
        return Rational(whole);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline std::string render_real(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return render_rational(r);
}

}  // namespace detail

inline ProExpr parse_pro_expr(std::string_view text) { return detail::Parser(text).parse(); }

/// Canonical text; parse(render(e)) == e.
inline std::string render(const ProExpr& e) {
    switch (e.kind) {
    case ProExpr::Kind::list: {
        std::string out = "L[";
        for (std::size_t i = 0; i < e.values.size(); ++i) out += (i ? "," : "") + e.values[i].str();
        return out + "]";
    }
    case ProExpr::Kind::nat:
        return "N(" + e.first.str() + ")";
    case ProExpr::Kind::geom:
        return "G(" + e.first.str() + ")";
    case ProExpr::Kind::hash:
    case ProExpr::Kind::hash_rand:
        return std::string(e.kind == ProExpr::Kind::hash ? "H(" : "HP(") + e.first.str() + "," + e.second.str() + "," +
               render(e.children[0]) + ")";
    case ProExpr::Kind::walk:
        return "E(" + e.first.str() + "," + detail::render_real(e.lambda) + "," + render(e.children[0]) + ")";
    case ProExpr::Kind::product: {
        const auto& right = e.children[1];
        std::string r = render(right);
        if (right.kind == ProExpr::Kind::product) r = "(" + r + ")";
        return render(e.children[0]) + " x " + r;
    }
    }
    return {};
}

inline std::uint64_t small_natural(const Natural& v, const char* what) {
    require(v <= std::numeric_limits<std::uint32_t>::max(), std::string(what) + " too large");
    return v.convert_to<std::uint64_t>();
}

/// Builds the object; HP nodes draw their field modulus from `bits`.
inline Pro build_pro(const ProExpr& e, BitSource* bits = nullptr) {
    switch (e.kind) {
    case ProExpr::Kind::list: {
        std::vector<Element> items;
        for (const auto& v : e.values) items.push_back(Element::integer(v));
        return list_pro(std::move(items));
    }
    case ProExpr::Kind::nat:
        return nat_pro(e.first);
    case ProExpr::Kind::geom:
        return geom_pro(small_natural(e.first, "G parameter"));
    case ProExpr::Kind::hash:
        return hash_pro(small_natural(e.first, "H independence"), e.second, build_pro(e.children[0], bits));
    case ProExpr::Kind::hash_rand: {
        if (bits == nullptr) throw MissingBitSource();
        Pro inner = build_pro(e.children[0], bits);
        return hash_pro_rand(small_natural(e.first, "HP independence"), e.second, inner, *bits);
    }
    case ProExpr::Kind::walk: {
        require(e.lambda > 0 && e.lambda < 1, "E: lambda must lie in (0, 1)");
        return walk_pro(small_natural(e.first, "E walk length"), e.lambda.convert_to<double>(), build_pro(e.children[0], bits));
    }
    case ProExpr::Kind::product:
        return prod_pro(build_pro(e.children[0], bits), build_pro(e.children[1], bits));
    }
    throw Error("build_pro: unknown node");
}

}  // namespace prorand::expr
