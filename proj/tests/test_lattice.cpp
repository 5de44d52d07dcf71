#include <doctest.h>

#include "gitstab/lattice.hpp"

#include "oracles.hpp"

using namespace gitstab;

namespace {
ExponentVector ev(std::vector<int> e) { return ExponentVector(std::move(e)); }
NormalizedOps ops(std::vector<long long> w)
{
    std::vector<Int> v(w.begin(), w.end());
    return NormalizedOps(std::move(v));
}
} // namespace

TEST_CASE("pairing evaluates the defining sum")
{
    CHECK(pairing(ev({2, 1, 0}), ops({1, 0, -1})) == 2);
    CHECK(pairing(ev({1, 1, 1}), ops({1, 0, -1})) == 0);
    // The cusp destabilizer monomials at (4,1,-5).
    CHECK(pairing(ev({2, 0, 1}), ops({4, 1, -5})) == 3);
    CHECK(pairing(ev({0, 3, 0}), ops({4, 1, -5})) == 3);
    CHECK(pairing(ev({0, 2, 1}), ops({4, 1, -5})) == -3);
    CHECK_THROWS_AS(pairing(ev({1, 1}), ops({1, 0, -1})), std::invalid_argument);
}

TEST_CASE("affine weight of a monomial")
{
    CHECK(affine_weight_monomial(ev({2, 1, 0}), ops({1, 0, -1})) == 5);
    CHECK(affine_weight_monomial(ev({0, 0, 3}), ops({1, 0, -1})) == 0);
    CHECK(affine_weight_monomial(ev({0, 0, 3}), ops({4, 1, -5})) == 0);
    CHECK(affine_weight_monomial(ev({3, 0, 0}), ops({1, 1, -2})) == 9);
}

TEST_CASE("lambda factor")
{
    CHECK(lambda_factor(ops({1, 0, -1})) == 3);
    CHECK(lambda_factor(ops({1, 1, -2})) == 6);
    CHECK(lambda_factor(ops({4, 1, -5})) == 15);
}

TEST_CASE("make_normalized_ops sorts, reduces and records the permutation")
{
    {
        auto [lambda, perm] = make_normalized_ops({Int(1), Int(4), Int(-5)});
        CHECK(lambda == ops({4, 1, -5}));
        CHECK(perm.image() == std::vector<int>{1, 0, 2});
    }
    {
        auto [lambda, perm] = make_normalized_ops({Int(2), Int(-1), Int(-1)});
        CHECK(lambda == ops({2, -1, -1}));
        CHECK(perm.is_identity());
    }
    {
        auto [lambda, perm] = make_normalized_ops({Int(2), Int(0), Int(-2)});
        CHECK(lambda == ops({1, 0, -1}));
        CHECK(perm.is_identity());
    }
    CHECK_THROWS_AS(make_normalized_ops({Int(1), Int(1), Int(1)}), std::invalid_argument);
    CHECK_THROWS_AS(make_normalized_ops({Int(0), Int(0), Int(0)}), std::invalid_argument);
}

TEST_CASE("normalized 1-PS invariants are enforced")
{
    CHECK_THROWS_AS(ops({0, 1, -1}), std::invalid_argument);  // not sorted
    CHECK_THROWS_AS(ops({1, 0, -2}), std::invalid_argument);  // nonzero sum
    CHECK_THROWS_AS(ops({0, 0, 0}), std::invalid_argument);   // trivial
    CHECK_THROWS_AS(ops({2, 0, -2}), std::invalid_argument);  // not primitive
}

TEST_CASE("affine weight identity and positivity on random instances")
{
    testing::Rng rng(20240801);
    for (int trial = 0; trial < 2000; ++trial) {
        int n = static_cast<int>(rng.range(1, 4));
        int d = static_cast<int>(rng.range(1, 5));
        auto mono = testing::random_monomial(rng, n, d);
        auto lambda = testing::random_lambda(rng, n);
        Int an = lambda[n];
        CHECK(affine_weight_monomial(mono, lambda) == pairing(mono, lambda) - Int(d) * an);
        CHECK(affine_weight_monomial(mono, lambda) >= 0);
        CHECK(lambda_factor(lambda) == -Int(n + 1) * an);
        CHECK(lambda_factor(lambda) > 0);
    }
}
