#include "prorand/gf.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace prorand;
using gf::Poly;

namespace {

Poly P(std::uint64_t p, std::vector<std::uint64_t> c) { return Poly(p, std::move(c)); }

// Independent oracle: f is irreducible iff no monic polynomial of degree
// 1..deg/2 divides it.
bool irreducible_by_trial_division(const Poly& f) {
    const auto p = f.modulus();
    const auto n = static_cast<std::uint64_t>(f.degree());
    for (std::uint64_t d = 1; 2 * d <= n; ++d) {
        const Natural total = pow_natural(Natural(p), d);
        for (Natural i = 0; i < total; ++i)
            if (gf::mod(f, gf::enum_monic_poly(p, d, i)).is_zero()) return false;
    }
    return true;
}

int mobius_oracle(std::uint64_t n) {
    int primes = 0;
    for (std::uint64_t d = 2; d <= n; ++d) {
        if (n % d != 0) continue;
        bool prime = true;
        for (std::uint64_t e = 2; e * e <= d; ++e) prime = prime && d % e != 0;
        if (!prime) continue;
        if (n % (d * d) == 0) return 0;
        ++primes;
    }
    return primes % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST(PolyArith, ExamplesOverGF2) {
    const Poly x1 = P(2, {1, 1});
    EXPECT_EQ(gf::mul(x1, x1), P(2, {1, 0, 1}));
    EXPECT_EQ(gf::gcd(P(2, {1, 0, 1}), x1), x1);
    EXPECT_EQ(gf::powmod(Poly::x(2), 4, P(2, {1, 1, 1})), Poly::x(2));
}

TEST(PolyArith, NormalizesTrailingZeros) {
    const Poly a = P(3, {1, 2, 0, 0});
    EXPECT_EQ(a.degree(), 1);
    EXPECT_EQ(gf::sub(a, a).degree(), -1);
    EXPECT_TRUE(gf::sub(a, a).is_zero());
}

TEST(PolyArith, Errors) {
    EXPECT_THROW(gf::divmod(P(2, {1, 1}), Poly::zero(2)), InvalidArgument);
    EXPECT_THROW(gf::powmod(P(2, {1, 1}), 3, Poly::zero(2)), InvalidArgument);
    EXPECT_THROW(gf::add(P(2, {1}), P(3, {1})), InvalidArgument);
    EXPECT_THROW(P(3, {3}), InvalidArgument);
}

TEST(PolyArith, DivmodReconstructs) {
    // a = q*b + r with deg r < deg b, over a sweep of GF(5) polynomials
    for (std::uint64_t ai = 0; ai < 200; ++ai) {
        const Poly a = gf::enum_monic_poly(5, 3, ai % 125);
        const Poly b = P(5, {ai % 5, (ai / 5) % 5, 2});
        auto [q, r] = gf::divmod(a, b);
        EXPECT_EQ(gf::add(gf::mul(q, b), r), a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(PolyArith, PowmodMatchesRepeatedMultiplication) {
    const Poly m = P(3, {1, 0, 2, 1});
    const Poly a = P(3, {2, 1});
    Poly acc = P(3, {1});
    for (int e = 0; e < 30; ++e) {
        EXPECT_EQ(gf::powmod(a, e, m), gf::mod(acc, m)) << e;
        acc = gf::mod(gf::mul(acc, a), m);
    }
}

TEST(PolyText, RenderAndParse) {
    EXPECT_EQ(P(2, {1, 1, 1}).to_string(), "X^2+X+1");
    EXPECT_EQ(P(3, {1, 2}).to_string(), "2*X+1");
    EXPECT_EQ(P(5, {0, 0, 3}).to_string(), "3*X^2");
    EXPECT_EQ(Poly::zero(2).to_string(), "0");
    for (std::uint64_t i = 0; i < 125; ++i) {
        const Poly f = gf::enum_monic_poly(5, 3, i);
        EXPECT_EQ(gf::parse_poly(5, f.to_string()), f);
    }
    EXPECT_EQ(gf::parse_poly(3, " X^2 + 2*X + 1 "), P(3, {1, 2, 1}));
    EXPECT_THROW(gf::parse_poly(3, "X^2+"), InvalidArgument);
    EXPECT_THROW(gf::parse_poly(3, "*X"), InvalidArgument);
}

TEST(Mobius, Examples) {
    EXPECT_EQ(gf::mobius(1), 1);
    EXPECT_EQ(gf::mobius(6), 1);
    EXPECT_EQ(gf::mobius(12), 0);
    EXPECT_THROW(gf::mobius(0), InvalidArgument);
    for (std::uint64_t n = 1; n <= 500; ++n) EXPECT_EQ(gf::mobius(n), mobius_oracle(n)) << n;
}

TEST(CountIrreducible, Examples) {
    EXPECT_EQ(gf::count_irreducible(2, 1), 2);
    EXPECT_EQ(gf::count_irreducible(2, 2), 1);
    EXPECT_EQ(gf::count_irreducible(3, 2), 3);
    EXPECT_THROW(gf::count_irreducible(4, 2), InvalidArgument);
    EXPECT_THROW(gf::count_irreducible(2, 0), InvalidArgument);
}

TEST(CountIrreducible, LargeDegreeIsExact) {
    // sum over d | 64 of mu(d) 2^(64/d) = 2^64 - 2^32
    EXPECT_EQ(gf::count_irreducible(2, 64), ((Natural(1) << 64) - (Natural(1) << 32)) / 64);
}

TEST(RabinTest, Examples) {
    EXPECT_TRUE(gf::rabin_test(P(2, {1, 1, 1})));
    EXPECT_FALSE(gf::rabin_test(P(2, {1, 0, 1})));
    EXPECT_TRUE(gf::rabin_test(P(3, {1, 0, 1})));
    EXPECT_THROW(gf::rabin_test(P(3, {1, 0, 2})), InvalidArgument);
    EXPECT_THROW(gf::rabin_test(P(3, {2})), InvalidArgument);
}

TEST(RabinTest, AgreesWithTrialDivisionSmall) {
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::uint64_t k = 1; pow_natural(Natural(p), k) <= 243; ++k) {
            const Natural total = pow_natural(Natural(p), k);
            Natural count = 0;
            for (Natural i = 0; i < total; ++i) {
                const Poly f = gf::enum_monic_poly(p, k, i);
                const bool rabin = gf::rabin_test(f);
                ASSERT_EQ(rabin, irreducible_by_trial_division(f)) << f.to_string() << " over GF(" << p << ")";
                if (rabin) ++count;
            }
            EXPECT_EQ(count, gf::count_irreducible(p, k)) << p << "^" << k;
        }
    }
}

TEST(EnumMonicPoly, Examples) {
    EXPECT_EQ(gf::enum_monic_poly(2, 2, 0), P(2, {0, 0, 1}));
    EXPECT_EQ(gf::enum_monic_poly(2, 2, 3), P(2, {1, 1, 1}));
    EXPECT_EQ(gf::enum_monic_poly(3, 1, 2), P(3, {2, 1}));
    EXPECT_THROW(gf::enum_monic_poly(2, 2, 4), InvalidArgument);
}

TEST(EnumMonicPoly, Bijective) {
    std::set<std::vector<std::uint64_t>> seen;
    for (Natural i = 0; i < 625; ++i) {
        const Poly f = gf::enum_monic_poly(5, 4, i);
        EXPECT_TRUE(f.is_monic());
        EXPECT_EQ(f.degree(), 4);
        EXPECT_EQ(gf::monic_poly_index(f), i);
        seen.insert(f.coeffs());
    }
    EXPECT_EQ(seen.size(), 625U);
}

TEST(FindIrreducible, Examples) {
    EXPECT_EQ(gf::find_irreducible_det(2, 1), Poly::x(2));
    EXPECT_EQ(gf::find_irreducible_det(2, 2), P(2, {1, 1, 1}));
    EXPECT_EQ(gf::find_irreducible_det(3, 2), P(3, {1, 0, 1}));
}

TEST(FindIrreducible, IsSmallestIndex) {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (std::uint64_t k = 1; k <= 4; ++k) {
            const Poly f = gf::find_irreducible_det(p, k);
            const Natural idx = gf::monic_poly_index(f);
            for (Natural i = 0; i < idx; ++i) EXPECT_FALSE(irreducible_by_trial_division(gf::enum_monic_poly(p, k, i)));
            EXPECT_TRUE(irreducible_by_trial_division(f));
        }
    }
}

TEST(SampleIrreducible, UniqueQuadraticOverGF2) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        BitSource bits(seed);
        auto r = gf::sample_irreducible(2, 2, bits);
        EXPECT_EQ(r.poly, P(2, {1, 1, 1}));
        EXPECT_GE(r.trials, 1U);
    }
}

TEST(SampleIrreducible, DegreeOneAcceptsFirstTrial) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        BitSource bits(seed);
        auto r = gf::sample_irreducible(2, 1, bits);
        EXPECT_EQ(r.poly.degree(), 1);
        EXPECT_EQ(r.trials, 1U);
    }
}

TEST(SampleIrreducible, GoldenSeedZero) {
    BitSource bits(0);
    auto r = gf::sample_irreducible(3, 2, bits);
    EXPECT_EQ(r.poly.to_string(), "X^2+2*X+2");
    EXPECT_EQ(r.trials, 4U);
}

TEST(SampleIrreducible, MatchesReferenceStream) {
    // Monic quadratics and cubics are irreducible over GF(p) iff they have no root.
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::uint64_t deg : {2, 3}) {
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                oracle::Bits ref(seed);
                std::uint64_t total = 1;
                for (std::uint64_t i = 0; i < deg; ++i) total *= p;
                std::uint64_t trials = 0;
                std::vector<std::uint64_t> c;
                for (bool root = true; root;) {
                    ++trials;
                    c = oracle::base_digits(ref.below(total), p, deg);
                    c.push_back(1);
                    root = false;
                    for (std::uint64_t x = 0; x < p; ++x) {
                        std::uint64_t v = 0;
                        for (std::size_t i = c.size(); i-- > 0;) v = (v * x + c[i]) % p;
                        root = root || v == 0;
                    }
                }
                BitSource bits(seed);
                auto r = gf::sample_irreducible(p, deg, bits);
                EXPECT_EQ(r.poly, P(p, c)) << p << " " << deg << " " << seed;
                EXPECT_EQ(r.trials, trials);
            }
        }
    }
}

TEST(SampleIrreducible, MeanTrialCount) {
    std::uint64_t total = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        BitSource bits(seed);
        auto r = gf::sample_irreducible(2, 8, bits);
        EXPECT_TRUE(gf::rabin_test(r.poly));
        total += r.trials;
    }
    EXPECT_LE(static_cast<double>(total) / 1000.0, 4.0 * 8);
}

TEST(Field, Construction) {
    const auto f4 = gf::Field::deterministic(2, 2);
    EXPECT_EQ(f4.modulus(), P(2, {1, 1, 1}));
    EXPECT_EQ(f4.order(), 4);
    const auto f5 = gf::Field::deterministic(5, 1);
    EXPECT_EQ(f5.modulus(), Poly::x(5));
    EXPECT_EQ(f5.order(), 5);
    EXPECT_EQ(gf::Field::deterministic(2, 4).order(), 16);
    EXPECT_THROW(gf::Field::deterministic(6, 1), InvalidArgument);
    EXPECT_THROW(gf::Field(2, P(2, {1, 0, 1})), InvalidArgument);
}

TEST(Field, ArithmeticExamples) {
    const auto f = gf::Field::deterministic(2, 2);
    const gf::FieldElem x{Poly::x(2)};
    const gf::FieldElem x1{P(2, {1, 1})};
    EXPECT_EQ(f.mul(x, x), x1);
    EXPECT_EQ(f.inv(x), x1);
    EXPECT_EQ(f.add(x, f.zero()), x);
    EXPECT_THROW(f.inv(f.zero()), InvalidArgument);
}

TEST(Field, IndexBijection) {
    const auto f4 = gf::Field::deterministic(2, 2);
    EXPECT_EQ(f4.index(f4.zero()), 0);
    EXPECT_EQ(f4.from_index(3), gf::FieldElem{P(2, {1, 1})});
    const auto f16 = gf::Field::deterministic(2, 4);
    for (Natural i = 0; i < 16; ++i) EXPECT_EQ(f16.index(f16.from_index(i)), i);
    EXPECT_THROW(f16.from_index(16), InvalidArgument);
}

TEST(Field, PrimeFieldMatchesModularArithmetic) {
    for (std::uint64_t p : {2, 3, 5, 7, 13}) {
        const auto f = gf::Field::deterministic(p, 1);
        for (std::uint64_t a = 0; a < p; ++a) {
            for (std::uint64_t b = 0; b < p; ++b) {
                EXPECT_EQ(f.index(f.add(f.from_index(a), f.from_index(b))), (a + b) % p);
                EXPECT_EQ(f.index(f.mul(f.from_index(a), f.from_index(b))), (a * b) % p);
            }
            if (a != 0) EXPECT_EQ(f.index(f.mul(f.from_index(a), f.inv(f.from_index(a)))), 1);
        }
    }
}

TEST(Field, SmallIndexPathMatchesPolynomialPath) {
    for (auto [p, n] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 1}, {2, 3}, {2, 5}, {3, 2}, {5, 2}, {3, 3}}) {
        const auto f = gf::Field::deterministic(p, n);
        const auto order = f.order().convert_to<std::uint64_t>();
        for (std::uint64_t a = 0; a < order; ++a)
            for (std::uint64_t b = 0; b < order; ++b) {
                ASSERT_EQ(f.mul_index(a, b), f.index(f.mul(f.from_index(a), f.from_index(b))));
                ASSERT_EQ(f.add_index(a, b), f.index(f.add(f.from_index(a), f.from_index(b))));
            }
    }
}

TEST(Field, PowAndFrobenius) {
    const auto f = gf::Field::deterministic(3, 3);
    for (Natural i = 1; i < f.order(); ++i) {
        const auto a = f.from_index(i);
        EXPECT_EQ(f.pow(a, f.order() - 1), f.one());  // multiplicative group order
    }
}

TEST(Field, RandomizedModulusIsIrreducible) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        BitSource bits(seed);
        const auto f = gf::Field::randomized(3, 4, bits);
        EXPECT_TRUE(gf::rabin_test(f.modulus()));
        EXPECT_EQ(f.order(), 81);
    }
    BitSource bits(3);
    EXPECT_EQ(gf::Field::randomized(2, 1, bits).modulus(), Poly::x(2));
}
