#include <doctest.h>

#include "gitstab/opssearch.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <set>

using namespace gitstab;

namespace {

HypersurfaceForm form(int n, int d, std::vector<std::pair<std::vector<int>, long long>> terms)
{
    std::vector<std::pair<std::vector<int>, Rational>> t;
    for (auto& [e, c] : terms)
        t.emplace_back(e, Rational(c));
    return HypersurfaceForm::from_terms(n, d, t);
}

NormalizedOps ops(std::vector<long long> w)
{
    std::vector<Int> v(w.begin(), w.end());
    return NormalizedOps(std::move(v));
}

bool has_ray(const CandidateSet& cs, const NormalizedOps& ray)
{
    return std::find(cs.rays.begin(), cs.rays.end(), ray) != cs.rays.end();
}

const HypersurfaceForm fermat = form(2, 3, {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 1}});
const HypersurfaceForm triangle = form(2, 3, {{{1, 1, 1}, 1}});
const HypersurfaceForm cusp = form(2, 3, {{{0, 2, 1}, 1}, {{3, 0, 0}, -1}});
const HypersurfaceForm nodal = form(2, 3, {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{1, 1, 1}, 1}});

// Brute-force torus verdict over all normalized weight vectors with entries
// bounded by max(subset-sum magnitude, largest candidate entry).
TorusStability oracle_torus_verdict(const TuplePoint& tuple, WeightMode mode, long long bound)
{
    TupleWeightContext ctx(tuple);
    bool any_equality = false;
    for (const auto& raw : testing::enumerate_normalized_box(tuple.ambient(), bound)) {
        NormalizedOps lambda{std::vector<Int>(raw.begin(), raw.end())};
        auto v = verdict_for_lambda(ctx, lambda, mode);
        if (v.classification == Classification::DestabilizedBy)
            return TorusStability::Unstable;
        if (v.classification == Classification::EqualityAt)
            any_equality = true;
    }
    return any_equality ? TorusStability::StrictlySemistable : TorusStability::Stable;
}

long long candidate_entry_bound(const TuplePoint& tuple, const CandidateSet& cs)
{
    Int best = Int(tuple.k()) * Int(tuple.degree());
    for (const auto& ray : cs.rays)
        for (const Int& w : ray.weights()) {
            Int a = boost::multiprecision::abs(w);
            if (a > best)
                best = a;
        }
    return best.convert_to<long long>();
}

} // namespace

TEST_CASE("candidate sets contain the cone extreme rays")
{
    for (const auto& f : {fermat, triangle, cusp}) {
        auto cs = candidate_lambdas(TuplePoint(2, 3, {f}));
        CHECK(has_ray(cs, ops({1, 1, -2})));
        CHECK(has_ray(cs, ops({2, -1, -1})));
    }
}

TEST_CASE("candidate set examples")
{
    {
        // x0^3 - x1^2 x2: the tie hyperplane misses the cone interior.
        auto cs = candidate_lambdas(TuplePoint(2, 3, {cusp}));
        CHECK(cs.rays.size() == 2);
    }
    {
        auto cs = candidate_lambdas(TuplePoint(2, 3, {form(2, 3,
            {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 1}, {{1, 1, 1}, 1}})}));
        CHECK(has_ray(cs, ops({1, 0, -1})));
    }
    {
        // Permuted cusp: the tie between 2(a0-a2) and 3(a1-a2) lands on (4,1,-5).
        auto cs = candidate_lambdas(
            TuplePoint(2, 3, {form(2, 3, {{{2, 0, 1}, 1}, {{0, 3, 0}, -1}})}));
        CHECK(has_ray(cs, ops({4, 1, -5})));
    }
}

TEST_CASE("candidate provenance is recorded")
{
    auto cs = candidate_lambdas(TuplePoint(2, 3, {fermat}));
    REQUIRE(cs.rays.size() == cs.provenance.size());
    for (const auto& p : cs.provenance)
        CHECK_FALSE(p.empty());
    CHECK(cs.arrangement_size > 0);
}

TEST_CASE("torus verdicts for the classical plane cubics")
{
    CHECK(torus_verdict(TuplePoint(2, 3, {fermat}), WeightMode::Exact).stability ==
          TorusStability::Stable);
    {
        auto v = torus_verdict(TuplePoint(2, 3, {triangle}), WeightMode::Exact);
        CHECK(v.stability == TorusStability::StrictlySemistable);
        CHECK(v.equality_count == v.rays_checked); // equality on every candidate ray
    }
    {
        TuplePoint pencil(2, 3,
                          {form(2, 3, {{{3, 0, 0}, 1}, {{2, 1, 0}, 1}}),
                           form(2, 3, {{{3, 0, 0}, 1}, {{2, 1, 0}, -1}})});
        auto v = torus_verdict(pencil, WeightMode::Exact);
        CHECK(v.stability == TorusStability::Unstable);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->omega > v.witness->threshold);
    }
}

TEST_CASE("candidate completeness against the brute-force box")
{
    testing::Rng rng(987123);
    int done = 0;
    while (done < 60) {
        int n = done % 3 == 2 ? 3 : 2;
        int d = static_cast<int>(rng.range(2, 3));
        int k = static_cast<int>(rng.range(1, 2));
        TuplePoint t = testing::random_tuple(rng, n, d, k, n == 3 ? 2 : 3);
        auto cs = candidate_lambdas(t);
        TupleWeightContext ctx(t);
        auto verdict = torus_verdict_with(ctx, cs, WeightMode::Exact);
        long long bound = candidate_entry_bound(t, cs);
        if (bound > 120)
            continue; // keep the brute-force box tractable in unit tests
        CHECK(oracle_torus_verdict(t, WeightMode::Exact, bound) == verdict.stability);
        ++done;
    }
}

TEST_CASE("combinatorial-mode completeness against the brute-force box")
{
    // The assignment minimum has its own piecewise-linear structure; the
    // subset-sum arrangement must cover its walls too.
    testing::Rng rng(661144);
    int done = 0;
    while (done < 30) {
        TuplePoint t = testing::random_tuple(rng, 2, static_cast<int>(rng.range(2, 4)),
                                             static_cast<int>(rng.range(2, 3)), 4);
        auto cs = candidate_lambdas(t);
        long long bound = candidate_entry_bound(t, cs);
        if (bound > 150)
            continue;
        TupleWeightContext ctx(t);
        auto from_rays = torus_verdict_with(ctx, cs, WeightMode::Combinatorial);
        bool destabilized = false, any_equality = false;
        for (const auto& raw : testing::enumerate_normalized_box(2, bound)) {
            NormalizedOps lambda{std::vector<Int>(raw.begin(), raw.end())};
            auto v = verdict_for_lambda(ctx, lambda, WeightMode::Combinatorial);
            if (v.classification == Classification::DestabilizedBy) {
                destabilized = true;
                break;
            }
            if (v.classification == Classification::EqualityAt)
                any_equality = true;
        }
        auto brute = destabilized ? TorusStability::Unstable
                                  : (any_equality ? TorusStability::StrictlySemistable
                                                  : TorusStability::Stable);
        CHECK(brute == from_rays.stability);
        ++done;
    }
}

TEST_CASE("VGIT candidate completeness against the brute-force box")
{
    testing::Rng rng(778899);
    int done = 0;
    while (done < 40) {
        TuplePoint t = testing::random_tuple(rng, 2, 3, static_cast<int>(rng.range(1, 2)), 3);
        std::vector<Rational> coeffs(3);
        bool nonzero = false;
        for (auto& c : coeffs) {
            c = Rational(rng.range(0, 2));
            if (c != 0)
                nonzero = true;
        }
        if (!nonzero)
            coeffs[2] = 1;
        VgitConfig cfg({Rational(rng.range(1, 6), 2)}, {HyperplaneForm(coeffs)});

        auto cs = candidate_lambdas(t, cfg.hyperplanes());
        long long bound = candidate_entry_bound(t, cs);
        if (bound > 120)
            continue;
        TupleWeightContext ctx(t);
        auto from_rays = torus_verdict_with(ctx, cs, WeightMode::Exact, &cfg);

        bool any_equality = false;
        TorusStability brute = TorusStability::Stable;
        bool destabilized = false;
        for (const auto& raw : testing::enumerate_normalized_box(2, bound)) {
            NormalizedOps lambda{std::vector<Int>(raw.begin(), raw.end())};
            auto v = verdict_vgit_for_lambda(ctx, cfg, lambda, WeightMode::Exact);
            if (v.classification == Classification::DestabilizedBy) {
                destabilized = true;
                break;
            }
            if (v.classification == Classification::EqualityAt)
                any_equality = true;
        }
        brute = destabilized
                    ? TorusStability::Unstable
                    : (any_equality ? TorusStability::StrictlySemistable : TorusStability::Stable);
        CHECK(brute == from_rays.stability);
        ++done;
    }
}

TEST_CASE("verdict flips in t happen only at listed walls on random instances")
{
    testing::Rng rng(991122);
    int done = 0;
    while (done < 25) {
        TuplePoint t = testing::random_tuple(rng, 2, 3, static_cast<int>(rng.range(1, 2)), 3);
        std::vector<Rational> coeffs(3);
        bool nonzero = false;
        for (auto& c : coeffs) {
            c = Rational(rng.range(0, 2));
            if (c != 0)
                nonzero = true;
        }
        if (!nonzero)
            coeffs[0] = 1;
        std::vector<HyperplaneForm> hyps{HyperplaneForm(coeffs)};
        auto cs = candidate_lambdas(t, hyps);
        auto walls = vgit_walls(t, hyps, cs, WeightMode::Exact);
        TupleWeightContext ctx(t);

        auto interval_of = [&](const Rational& tv) {
            std::size_t i = 0;
            for (const auto& w : walls.walls)
                if (w < tv)
                    ++i;
            return i;
        };
        bool have_prev = false;
        TorusStability prev = TorusStability::Stable;
        std::size_t prev_interval = 0;
        for (long long num = 1; num <= 64; ++num) {
            Rational tv(num, 16);
            if (std::count(walls.walls.begin(), walls.walls.end(), tv)) {
                have_prev = false;
                continue;
            }
            VgitConfig cfg({tv}, hyps);
            auto v = torus_verdict_with(ctx, cs, WeightMode::Exact, &cfg);
            std::size_t interval = interval_of(tv);
            if (have_prev && interval == prev_interval)
                CHECK(v.stability == prev);
            prev = v.stability;
            prev_interval = interval;
            have_prev = true;
        }
        ++done;
    }
}

TEST_CASE("verdicts are invariant under scaling of the raw weights")
{
    testing::Rng rng(5522);
    for (int trial = 0; trial < 100; ++trial) {
        TuplePoint t = testing::random_tuple(rng, 2, 3, 2, 3);
        auto lambda = testing::random_lambda(rng, 2);
        std::vector<Int> scaled;
        for (const Int& w : lambda.weights())
            scaled.push_back(w * 7);
        auto again = make_normalized_ops(scaled).first;
        CHECK(again == lambda); // primitive representative is canonical
    }
}

TEST_CASE("permutation coherence: evaluating the moved tuple equals permuting the weights")
{
    testing::Rng rng(31881);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2;
        auto f = testing::random_form(rng, n, 3, 4);
        auto lambda = testing::random_lambda(rng, n);
        for (auto image : {std::vector<int>{1, 0, 2}, std::vector<int>{2, 1, 0},
                           std::vector<int>{1, 2, 0}}) {
            Permutation sigma(image);
            auto a = ProjectiveTransform::coordinate_permutation(sigma);
            Int direct = mu_hypersurface(apply_transform(f, a), lambda);
            // - min over Supp(f) of sum_i I_i * a_{sigma(i)}
            bool first = true;
            Int best = 0;
            for (const auto& [mono, coeff] : f.terms()) {
                Int w = 0;
                for (int i = 0; i <= n; ++i)
                    w += Int(mono[i]) * lambda[sigma(i)];
                if (first || w < best) {
                    best = w;
                    first = false;
                }
            }
            CHECK(direct == -best);
        }
    }
}

TEST_CASE("the permutation-closed search outcome is frame independent")
{
    // A single torus verdict is taken in a fixed coordinate frame; closing
    // over all coordinate permutations removes the frame dependence.
    for (auto image : {std::vector<int>{1, 0, 2}, std::vector<int>{2, 1, 0},
                       std::vector<int>{0, 2, 1}}) {
        auto a = ProjectiveTransform::coordinate_permutation(Permutation(image));
        for (const auto& f : {cusp, nodal, fermat}) {
            TuplePoint t(2, 3, {f});
            SearchStrategies strategies;
            bool base = destabilizer_search(t, WeightMode::Exact, strategies)
                            .certificate.has_value();
            bool moved = destabilizer_search(apply_transform(t, a), WeightMode::Exact, strategies)
                             .certificate.has_value();
            CHECK(base == moved);
        }
    }
}

TEST_CASE("destabilizer search finds the cusp certificate")
{
    TuplePoint t(2, 3, {cusp});
    SearchStrategies strategies;
    auto outcome = destabilizer_search(t, WeightMode::Exact, strategies);
    REQUIRE(outcome.certificate.has_value());
    const Certificate& cert = *outcome.certificate;
    CHECK(cert.lambda == ops({4, 1, -5}));
    CHECK(cert.transform_label == "permutation(1 0 2)");
    CHECK(cert.classification == Classification::DestabilizedBy);

    // The certificate replays: the transformed tuple is destabilized by the
    // stored subgroup.
    auto moved = apply_transform(t, cert.transform);
    auto verdict = verdict_for_lambda(moved, cert.lambda, cert.mode);
    CHECK(verdict.classification == cert.classification);
    CHECK(verdict.omega == cert.omega);
    CHECK(verdict.threshold == cert.threshold);
}

TEST_CASE("no destabilizer for the nodal cubic under permutations and random frames")
{
    TuplePoint t(2, 3, {nodal});
    SearchStrategies strategies;
    strategies.random_transforms = 20;
    strategies.seed = 11;
    auto outcome = destabilizer_search(t, WeightMode::Exact, strategies);
    CHECK_FALSE(outcome.certificate.has_value());
    CHECK(outcome.transforms_tried == 26); // 3! permutations + 20 random frames
}

TEST_CASE("base-point moves are searchable frames")
{
    // The pencil (x0^2 x1, x0 x1^2) has base point (1:0:0) among others; the
    // moved frame is destabilized just like the identity frame.
    TuplePoint t(2, 3, {form(2, 3, {{{2, 1, 0}, 1}}), form(2, 3, {{{1, 2, 0}, 1}})});
    SearchStrategies strategies;
    strategies.permutations = false;
    strategies.base_points = {ProjectivePoint({Rational(0), Rational(0), Rational(1)})};
    auto outcome = destabilizer_search(t, WeightMode::Exact, strategies);
    REQUIRE(outcome.certificate.has_value());
    CHECK(outcome.certificate->transform_label == "base_point_move(0:0:1)");
}

TEST_CASE("member verdict combinator")
{
    using MS = MemberStability;
    CHECK(tuple_verdict_from_members({MS::Stable, MS::Stable}) == TupleMemberConclusion::Stable);
    CHECK(tuple_verdict_from_members({MS::StrictlySemistable, MS::Stable, MS::Stable}) ==
          TupleMemberConclusion::Stable);
    CHECK(tuple_verdict_from_members({MS::StrictlySemistable, MS::StrictlySemistable}) ==
          TupleMemberConclusion::Semistable);
    CHECK_THROWS_AS(tuple_verdict_from_members({}), std::invalid_argument);
}

TEST_CASE("VGIT walls for x0^2 x1 with the hyperplane x2")
{
    TuplePoint t(2, 3, {form(2, 3, {{{2, 1, 0}, 1}})});
    std::vector<HyperplaneForm> hyps{HyperplaneForm({Rational(0), Rational(0), Rational(1)})};
    auto cs = candidate_lambdas(t, hyps);
    auto walls = vgit_walls(t, hyps, cs, WeightMode::Exact);
    CHECK(walls.walls == std::vector<Rational>{Rational(3, 2), Rational(2), Rational(3)});
    CHECK(walls.regime_boundary == Rational(3, 2));
    // All three walls sit at or beyond kd/n = 3/2.
    CHECK(walls.outside_regime.size() == 3);

    // The torus verdict in t is unstable exactly below the largest wall.
    for (long long num = 1; num <= 32; ++num) {
        Rational tval(num, 8);
        VgitConfig cfg({tval}, hyps);
        auto v = torus_verdict(t, WeightMode::Exact, &cfg);
        if (tval < Rational(3))
            CHECK(v.stability == TorusStability::Unstable);
        else if (tval == Rational(3))
            CHECK(v.stability == TorusStability::StrictlySemistable);
        else
            CHECK(v.stability == TorusStability::Stable);
    }
}

TEST_CASE("no walls when the comparison is t-independent")
{
    // x2^3 is fixed by the torus action in the relevant sense: omega = 0 on
    // every ray and omega_H(x2) = 0, so no positive wall appears.
    TuplePoint t(2, 3, {form(2, 3, {{{0, 0, 3}, 1}})});
    std::vector<HyperplaneForm> hyps{HyperplaneForm({Rational(0), Rational(0), Rational(1)})};
    auto cs = candidate_lambdas(t, hyps);
    auto walls = vgit_walls(t, hyps, cs, WeightMode::Exact);
    CHECK(walls.walls.empty());
}

TEST_CASE("wall hyperplanes in t-space for two hyperplanes")
{
    TuplePoint t(2, 3, {form(2, 3, {{{2, 1, 0}, 1}})});
    std::vector<HyperplaneForm> hyps{HyperplaneForm({Rational(0), Rational(0), Rational(1)}),
                                     HyperplaneForm({Rational(1), Rational(0), Rational(0)})};
    auto cs = candidate_lambdas(t, hyps);
    auto walls = vgit_walls(t, hyps, cs, WeightMode::Exact);
    CHECK_FALSE(walls.wall_hyperplanes.empty());
    for (const auto& row : walls.wall_hyperplanes)
        CHECK(row.size() == 3); // c_1, c_2, rhs
}

TEST_CASE("ambient dimension four is handled end to end")
{
    // Fermat quadric threefold: weight zero on every ray, so the torus
    // verdict in this frame is stable, and no frame destabilizes it.
    std::vector<std::pair<std::vector<int>, long long>> terms;
    for (int i = 0; i < 5; ++i) {
        std::vector<int> e(5, 0);
        e[static_cast<std::size_t>(i)] = 2;
        terms.emplace_back(e, 1);
    }
    TuplePoint quadric(4, 2, {form(4, 2, terms)});
    auto v = torus_verdict(quadric, WeightMode::Exact);
    CHECK(v.stability == TorusStability::Stable);

    // x0^2 in P^4 is destabilized already in the identity frame.
    TuplePoint cone(4, 2, {form(4, 2, {{{2, 0, 0, 0, 0}, 1}})});
    SearchStrategies strategies;
    auto outcome = destabilizer_search(cone, WeightMode::Exact, strategies);
    REQUIRE(outcome.certificate.has_value());
    CHECK(outcome.certificate->transform_label == "identity");
}

TEST_CASE("Hesse pencil has no destabilizer")
{
    TuplePoint hesse(2, 3, {fermat, triangle});
    SearchStrategies strategies;
    strategies.random_transforms = 10;
    strategies.seed = 7;
    auto outcome = destabilizer_search(hesse, WeightMode::Exact, strategies);
    CHECK_FALSE(outcome.certificate.has_value());
}
