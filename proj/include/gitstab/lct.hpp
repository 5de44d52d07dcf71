#pragma once

#include "gitstab/errors.hpp"
#include "gitstab/forms.hpp"
#include "gitstab/weights.hpp"

#include <map>
#include <optional>
#include <vector>

namespace gitstab {

// A polynomial germ at the origin of affine n-space: exponent vectors are
// unbounded in total degree and the constant term is absent (the germ
// vanishes at the origin).
class LocalGerm {
public:
    using TermMap = std::map<std::vector<int>, Rational>;

    LocalGerm(int nvars, TermMap terms);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::vector<std::vector<int>> support() const;

    std::string to_string() const; // "u0^2*u1 - u0^3" style

private:
    int nvars_;
    TermMap terms_;
};

// conv(union of (I + R_{>=0}^n)) described by its facet inequalities
// <normal, x> >= offset with primitive nonnegative normals.
class NewtonPolyhedron {
public:
    struct Facet {
        std::vector<Int> normal;
        Int offset;
    };

    static NewtonPolyhedron of(const LocalGerm& germ);

    int dim() const { return dim_; }
    const std::vector<std::vector<int>>& generators() const { return generators_; }
    const std::vector<Facet>& facets() const { return facets_; }

    bool contains_diagonal(const Rational& s) const; // s*(1,...,1) in the polyhedron

    // min { s > 0 : s*(1,...,1) in the polyhedron } together with the index
    // of a facet attaining it.
    std::pair<Rational, std::size_t> diagonal_entry_parameter() const;

private:
    int dim_ = 0;
    std::vector<std::vector<int>> generators_; // componentwise-minimal support points
    std::vector<Facet> facets_;
};

struct LctValue {
    Rational value;              // in (0, 1]
    bool nondegenerate_assumed;  // exact under Newton-nondegeneracy, else an upper bound
};

// Moves p to the last coordinate point and dehomogenizes there.
LocalGerm localize(const HypersurfaceForm& f, const ProjectivePoint& p);

// Newton-polyhedron log canonical threshold: min(1, 1/c) for
// c = min{s > 0 : s*(1,..,1) in NP(germ)}.
LctValue lct_newton(const LocalGerm& germ);

// a(E) = sum w_i - 1 - c * mult_w(germ) for the weighted blow-up with
// strictly positive integer weights w; the pair is non-log-canonical along
// E exactly when this is < -1.
Rational weighted_blowup_discrepancy(const LocalGerm& germ, const std::vector<Int>& weights,
                                     const Rational& c);

// Lambda(lambda) / omega(T, lambda) for a tuple with k > 1 already moved so
// that the base point is (0:...:0:1). The bound is <= lct_p of every member
// for subgroups of the shape used in its proof (all listed weights strictly
// above the last one).
Rational tuple_lct_bound(const TuplePoint& tuple, const ProjectivePoint& p,
                         const NormalizedOps& lambda);

// lambda has the proof shape when a_j > a_n for every j < n.
bool proof_shape(const NormalizedOps& lambda);

// Necessary side: a stable tuple forces lct_p > (n+1)/(kd) for every member
// at every base point, a semistable tuple forces >=. Violations refute the
// corresponding claim (contrapositive use).
struct LctNecessaryReport {
    Rational threshold; // (n+1)/(kd)
    std::vector<std::size_t> stable_violations;     // members with lct <= threshold
    std::vector<std::size_t> semistable_violations; // members with lct < threshold
    bool stable_possible() const { return stable_violations.empty(); }
    bool semistable_possible() const { return semistable_violations.empty(); }
};

LctNecessaryReport necessary_condition_check(int n, int d, int k,
                                             const std::vector<Rational>& member_lcts);

enum class SufficiencyLevel { Semistable, Stable };

const char* sufficiency_name(SufficiencyLevel level);

// lct >= (n+1)/d over all members gives semistable, strict gives stable.
std::optional<SufficiencyLevel> sufficient_semistable_via_lct(int n, int d, int k,
                                                              const Rational& certified_min_lct);

// VGIT version with threshold k(n+1)/(kd - n*sum t); throws OutsideRegime
// when the denominator is not positive.
std::optional<SufficiencyLevel> sufficient_vgit_via_lct(int n, int d, int k,
                                                        const std::vector<Rational>& t,
                                                        const Rational& certified_min_lct);

struct KollarCheck {
    Rational ratio; // omega / Lambda
    Rational bound; // 1/lct (hypersurface) or k/lct (tuple)
    bool ok;        // ratio <= bound
};

KollarCheck kollar_bound_check(const HypersurfaceForm& f, const NormalizedOps& lambda,
                               const Rational& lct);
KollarCheck kollar_bound_check_tuple(const TuplePoint& tuple, const NormalizedOps& lambda,
                                     const Rational& worst_member_lct, WeightMode mode);

// min over supplied points of the local oracle value, capped by 1 (the
// smooth-locus value); an upper bound for the global lct in general.
LctValue global_lct_upper(const HypersurfaceForm& f, const std::vector<ProjectivePoint>& points);

} // namespace gitstab
