#pragma once

#include "gitstab/errors.hpp"
#include "gitstab/forms.hpp"
#include "gitstab/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gitstab {

// Combinatorial mode evaluates the affine weight over distinct support
// tuples exactly as the defining formula quantifies over Supp(f_i) of the
// chosen generators (basis-dependent). Exact mode minimizes over subsets
// with nonvanishing Pluecker minor and is basis-independent. Always
// combinatorial <= exact; an excess over the threshold in combinatorial
// mode therefore certifies instability, while "compatible with stable" is
// conclusive only in exact mode.
enum class WeightMode { Combinatorial, Exact };

const char* weight_mode_name(WeightMode mode);

enum class Classification { DestabilizedBy, EqualityAt, CompatibleWithStable };

const char* classification_name(Classification c);

struct LambdaVerdict {
    NormalizedOps lambda;
    Rational omega;
    Rational threshold; // always > 0
    Classification classification;
};

// t-weights and the m distinct hyperplanes of a VGIT linearization.
class VgitConfig {
public:
    VgitConfig(std::vector<Rational> t, std::vector<HyperplaneForm> hyperplanes);

    int m() const { return static_cast<int>(hyperplanes_.size()); }
    const std::vector<Rational>& t() const { return t_; }
    const std::vector<HyperplaneForm>& hyperplanes() const { return hyperplanes_; }
    Rational t_sum() const;

    // Same hyperplanes with different weights (used by grid scans).
    VgitConfig with_t(std::vector<Rational> t) const { return VgitConfig(std::move(t), hyperplanes_); }

private:
    std::vector<Rational> t_;
    std::vector<HyperplaneForm> hyperplanes_;
};

// mu(f, lambda) = -min over Supp(f) of <I, lambda>.
Int mu_hypersurface(const HypersurfaceForm& f, const NormalizedOps& lambda);

// omega(f, lambda) = min over Supp(f) of the monomial affine weight.
Int omega_hypersurface(const HypersurfaceForm& f, const NormalizedOps& lambda);

Int omega_hyperplane(const HyperplaneForm& h, const NormalizedOps& lambda);

// Per-tuple data reused across many lambda evaluations: the support
// columns, the slot/column incidence for the assignment problem, and the
// index subsets with nonzero Pluecker minor.
class TupleWeightContext {
public:
    explicit TupleWeightContext(const TuplePoint& tuple);

    const TuplePoint& tuple() const { return tuple_; }
    const std::vector<ExponentVector>& columns() const { return columns_; }
    const std::vector<std::vector<int>>& exact_subsets() const { return exact_subsets_; }

    Int omega(const NormalizedOps& lambda, WeightMode mode) const;

private:
    TuplePoint tuple_;
    std::vector<ExponentVector> columns_;
    std::vector<std::vector<char>> allowed_; // k x m incidence
    std::vector<std::vector<int>> exact_subsets_;
};

Int omega_tuple(const TuplePoint& tuple, const NormalizedOps& lambda, WeightMode mode);

// Minimum assignment cost of k slots to distinct columns over the allowed
// incidence; nullopt when no system of distinct representatives exists.
std::optional<Int> min_assignment_cost(const std::vector<std::vector<char>>& allowed,
                                       const std::vector<Int>& column_costs);

LambdaVerdict verdict_for_lambda(const TuplePoint& tuple, const NormalizedOps& lambda,
                                 WeightMode mode);
LambdaVerdict verdict_for_lambda(const TupleWeightContext& ctx, const NormalizedOps& lambda,
                                 WeightMode mode);

LambdaVerdict verdict_for_lambda_hypersurface(const HypersurfaceForm& f,
                                              const NormalizedOps& lambda);

Rational omega_vgit(const TupleWeightContext& ctx, const VgitConfig& cfg,
                    const NormalizedOps& lambda, WeightMode mode);
Rational omega_vgit(const TuplePoint& tuple, const VgitConfig& cfg, const NormalizedOps& lambda,
                    WeightMode mode);

LambdaVerdict verdict_vgit_for_lambda(const TupleWeightContext& ctx, const VgitConfig& cfg,
                                      const NormalizedOps& lambda, WeightMode mode);
LambdaVerdict verdict_vgit_for_lambda(const TuplePoint& tuple, const VgitConfig& cfg,
                                      const NormalizedOps& lambda, WeightMode mode);

// Total order on monomials used by the decomposition: affine weight first,
// lexicographic tie-break.
bool lambda_order_less(const ExponentVector& a, const ExponentVector& b,
                       const NormalizedOps& lambda);

struct OmegaDecomposition {
    std::vector<HypersurfaceForm> complements; // the k-1 members g_i
    std::vector<ExponentVector> selected;      // min monomial of f, then of each g_i
    Int omega_tuple_value;                     // combinatorial omega of the tuple
    Int omega_member_value;                    // omega(f, lambda)
    std::vector<Int> complement_omegas;
};

// Constructive decomposition omega(T) = omega(f) + sum omega(g_i) for a
// member f, following the recursive minimal-monomial selection with the
// generator list re-based so f leads. Failures of the recursion are
// reported as DecompositionFailed, never patched over.
OmegaDecomposition decompose_omegas(const TuplePoint& tuple, const HypersurfaceForm& f,
                                    const NormalizedOps& lambda);

} // namespace gitstab
