#pragma once

#include "gitstab/forms.hpp"
#include "gitstab/lattice.hpp"
#include "gitstab/weights.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gitstab {

// The finite set of one-parameter subgroups that decides the torus verdict.
// omega(T, .) is a minimum of finitely many linear functions of the weight
// vector, so omega - threshold is piecewise linear on the normalized cone
// {a_0 >= ... >= a_n, sum a = 0}; its sign over the cone is decided on the
// extreme rays of the refinement of the cone by the subset-sum tie
// hyperplanes. The rays below are exactly those extreme rays.
struct CandidateSet {
    std::vector<NormalizedOps> rays;      // deduplicated, lexicographically sorted
    std::vector<std::string> provenance;  // parallel to rays: generating hyperplanes
    std::size_t arrangement_size = 0;     // number of distinct cutting hyperplanes
};

CandidateSet candidate_lambdas(const TuplePoint& tuple,
                               const std::vector<HyperplaneForm>& hyperplanes = {});

// A reproducible witness: re-running the per-lambda verdict on
// (transform . T, lambda) recovers the stored classification.
struct Certificate {
    NormalizedOps lambda;
    ProjectiveTransform transform;
    std::string transform_label;
    Rational omega;
    Rational threshold;
    WeightMode mode;
    Classification classification;
};

enum class TorusStability { Stable, StrictlySemistable, Unstable };

const char* torus_stability_name(TorusStability s);

struct TorusVerdict {
    TorusStability stability = TorusStability::Stable;
    std::optional<LambdaVerdict> witness;    // destabilizing ray, or first equality ray
    std::vector<LambdaVerdict> equality_rays;
    std::size_t rays_checked = 0;
    std::size_t destabilized_count = 0;
    std::size_t equality_count = 0;
    std::size_t compatible_count = 0;
};

TorusVerdict torus_verdict(const TuplePoint& tuple, WeightMode mode,
                           const VgitConfig* cfg = nullptr, int jobs = 1);
TorusVerdict torus_verdict_with(const TupleWeightContext& ctx, const CandidateSet& candidates,
                                WeightMode mode, const VgitConfig* cfg = nullptr, int jobs = 1);

struct SearchStrategies {
    bool permutations = true;
    std::vector<ProjectiveTransform> user_transforms;
    std::vector<ProjectivePoint> base_points; // moved to the last coordinate first
    int random_transforms = 0;
    std::uint64_t seed = 0;
};

struct SearchOutcome {
    std::optional<Certificate> certificate; // present iff some frame is torus-unstable
    std::size_t transforms_tried = 0;
};

// Applies each strategy transform A in a fixed order (identity and
// coordinate permutations, user transforms, base-point moves, seeded random
// transforms) and returns the first torus-instability certificate. Finding
// none is one-sided: it is NOT a semistability proof.
SearchOutcome destabilizer_search(const TuplePoint& tuple, WeightMode mode,
                                  const SearchStrategies& strategies,
                                  const VgitConfig* cfg = nullptr, int jobs = 1);

enum class MemberStability { Stable, StrictlySemistable };
enum class TupleMemberConclusion { Stable, Semistable };

const char* member_conclusion_name(TupleMemberConclusion c);

// Verdict from per-member classifications: only semistable members give a
// semistable tuple, and at worst one strictly semistable member (the rest
// stable) still gives a stable tuple. The caller certifies that the list
// covers all members.
std::optional<TupleMemberConclusion>
tuple_verdict_from_members(const std::vector<MemberStability>& members);

struct VgitWalls {
    struct Record {
        Rational t;
        NormalizedOps ray; // first candidate ray producing this wall
    };
    std::vector<Rational> walls;   // m == 1: sorted ascending, deduplicated
    std::vector<Record> records;
    // m > 1: primitive integer rows (c_1, ..., c_m, rhs) of the wall
    // hyperplanes sum c_i t_i = rhs in t-space.
    std::vector<std::vector<Int>> wall_hyperplanes;
    Rational regime_boundary;          // kd/n
    std::vector<Rational> outside_regime; // walls where the lct sufficiency criterion is void
};

// Solves the per-ray equality omega(T) + sum t_i omega(H_i) =
// ((kd + sum t)/(n+1)) Lambda for t over every candidate ray. The
// torus-level verdict as a function of t can only change at returned
// values; rays contributing no wall are skipped.
VgitWalls vgit_walls(const TuplePoint& tuple, const std::vector<HyperplaneForm>& hyperplanes,
                     const CandidateSet& candidates, WeightMode mode);

} // namespace gitstab
