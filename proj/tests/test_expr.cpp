#include "prorand/expr.hpp"
#include "prorand/harness.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace prorand;
using expr::ProExpr;
using Kind = ProExpr::Kind;

namespace {

ProExpr random_expr(oracle::Bits& bits, int depth) {
    ProExpr e;
    const auto pick = depth <= 0 ? bits.below(3) : bits.below(7);
    switch (pick) {
    case 0:
        e.kind = Kind::list;
        for (std::uint64_t i = 0, len = 1 + bits.below(4); i < len; ++i)
            e.values.emplace_back(static_cast<long long>(bits.below(2001)) - 1000);
        break;
    case 1:
        e.kind = Kind::nat;
        e.first = bits.below(100000);
        break;
    case 2:
        e.kind = Kind::geom;
        e.first = bits.below(64);
        break;
    case 3:
    case 4:
        e.kind = pick == 3 ? Kind::hash : Kind::hash_rand;
        e.first = bits.below(10);
        e.second = bits.below(1000);
        e.children.push_back(random_expr(bits, depth - 1));
        break;
    case 5:
        e.kind = Kind::walk;
        e.first = bits.below(20);
        e.lambda = bits.below(2) ? Rational(bits.below(50), 1 + bits.below(50)) : Rational(bits.below(1000), 1000);
        e.children.push_back(random_expr(bits, depth - 1));
        break;
    default:
        e.kind = Kind::product;
        e.children.push_back(random_expr(bits, depth - 1));
        e.children.push_back(random_expr(bits, depth - 1));
        break;
    }
    return e;
}

std::size_t error_offset(const std::string& text) {
    try {
        expr::parse_pro_expr(text);
    } catch (const expr::ParseError& e) {
        return e.offset;
    }
    ADD_FAILURE() << "no parse error for " << text;
    return 0;
}

}  // namespace

TEST(ParseExpr, Examples) {
    const ProExpr h = expr::parse_pro_expr("H(4,8,L[1,-1])");
    EXPECT_EQ(h.kind, Kind::hash);
    EXPECT_EQ(h.first, 4);
    EXPECT_EQ(h.second, 8);
    ASSERT_EQ(h.children.size(), 1U);
    EXPECT_EQ(h.children[0].kind, Kind::list);
    EXPECT_EQ(h.children[0].values, (std::vector<Natural>{1, -1}));

    const ProExpr p = expr::parse_pro_expr("N(2) x L[5]");
    EXPECT_EQ(p.kind, Kind::product);
    EXPECT_EQ(p.children[0].kind, Kind::nat);
    EXPECT_EQ(p.children[0].first, 2);
    EXPECT_EQ(p.children[1].values, (std::vector<Natural>{5}));

    const ProExpr w = expr::parse_pro_expr("E(3,1/8,H(2,4,N(4)))");
    EXPECT_EQ(w.kind, Kind::walk);
    EXPECT_EQ(w.first, 3);
    EXPECT_EQ(w.lambda, Rational(1, 8));
    EXPECT_EQ(w.children[0].kind, Kind::hash);
}

TEST(ParseExpr, WhitespaceAndAssociativity) {
    EXPECT_EQ(expr::parse_pro_expr(" H ( 2 , 3 , N ( 3 ) ) "), expr::parse_pro_expr("H(2,3,N(3))"));
    const ProExpr e = expr::parse_pro_expr("N(1) x N(2) x N(3)");
    ASSERT_EQ(e.kind, Kind::product);
    EXPECT_EQ(e.children[0].kind, Kind::product);
    EXPECT_EQ(e.children[1].first, 3);
    EXPECT_EQ(expr::parse_pro_expr("E(2,0.125,N(4))").lambda, Rational(1, 8));
    EXPECT_EQ(expr::parse_pro_expr("HP(2,3,N(3))").kind, Kind::hash_rand);
}

TEST(ParseExpr, ErrorOffsets) {
    EXPECT_EQ(error_offset(""), 0U);
    EXPECT_EQ(error_offset("Q(3)"), 0U);
    EXPECT_EQ(error_offset("N(3"), 3U);
    EXPECT_EQ(error_offset("N(3) y"), 5U);
    EXPECT_EQ(error_offset("L[1,]"), 4U);
    EXPECT_EQ(error_offset("H(2,3 N(3))"), 6U);
    EXPECT_EQ(error_offset("E(2,1/0,N(4))"), 6U);
    try {
        expr::parse_pro_expr("N(x)");
        FAIL();
    } catch (const expr::ParseError& e) {
        EXPECT_EQ(e.offset, 2U);
        EXPECT_EQ(e.expected, (std::set<std::string>{"natural"}));
    }
}

TEST(RenderExpr, Canonical) {
    EXPECT_EQ(expr::render(expr::parse_pro_expr(" H( 4 ,8, L[ 1, -1 ] )")), "H(4,8,L[1,-1])");
    EXPECT_EQ(expr::render(expr::parse_pro_expr("N(1) x (N(2) x N(3))")), "N(1) x (N(2) x N(3))");
    EXPECT_EQ(expr::render(expr::parse_pro_expr("(N(1) x N(2)) x N(3)")), "N(1) x N(2) x N(3)");
    EXPECT_EQ(expr::render(expr::parse_pro_expr("E(3,0.5,N(4))")), "E(3,1/2,N(4))");
}

TEST(RenderExpr, RandomRoundTrips) {
    oracle::Bits bits(2718);
    for (int i = 0; i < 1000; ++i) {
        const ProExpr e = random_expr(bits, 4);
        const std::string text = expr::render(e);
        ASSERT_EQ(expr::parse_pro_expr(text), e) << text;
    }
}

TEST(BuildPro, Sizes) {
    EXPECT_EQ(expr::build_pro(expr::parse_pro_expr("H(2,3,N(3))")).size(), 9);
    EXPECT_EQ(expr::build_pro(expr::parse_pro_expr("H(2,2,N(3))")).size(), 9);
    EXPECT_EQ(expr::build_pro(expr::parse_pro_expr("H(4,8,L[1,-1])")).size(), 4096);
    EXPECT_EQ(expr::build_pro(expr::parse_pro_expr("N(3) x G(2)")).size(), 12);
    EXPECT_EQ(expr::build_pro(expr::parse_pro_expr("E(3,0.95,N(4))")).size(), 1024);
}

TEST(BuildPro, LawMatchesDirectConstruction) {
    const Pro built = expr::build_pro(expr::parse_pro_expr("N(2) x L[5,6,6]"));
    const Pro direct = prod_pro(nat_pro(2), list_pro(std::vector<long long>{5, 6, 6}));
    EXPECT_EQ(harness::exhaustive_dist(built), harness::exhaustive_dist(direct));
}

TEST(BuildPro, Errors) {
    try {
        expr::build_pro(expr::parse_pro_expr("H(2,2,N(6))"));
        FAIL();
    } catch (const NotPrimePower& e) {
        EXPECT_EQ(e.value, 6);
    }
    EXPECT_THROW(expr::build_pro(expr::parse_pro_expr("HP(2,3,N(3))")), expr::MissingBitSource);
    BitSource bits(0);
    EXPECT_EQ(expr::build_pro(expr::parse_pro_expr("HP(2,3,N(3))"), &bits).size(), 9);
    EXPECT_THROW(expr::build_pro(expr::parse_pro_expr("E(2,1,N(4))")), InvalidArgument);
    EXPECT_THROW(expr::build_pro(expr::parse_pro_expr("N(0)")), InvalidArgument);
}
