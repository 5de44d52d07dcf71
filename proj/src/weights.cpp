#include "gitstab/weights.hpp"

#include "gitstab/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gitstab {

const char* weight_mode_name(WeightMode mode)
{
    return mode == WeightMode::Combinatorial ? "combinatorial" : "exact";
}

const char* classification_name(Classification c)
{
    switch (c) {
    case Classification::DestabilizedBy: return "destabilized_by";
    case Classification::EqualityAt: return "equality_at";
    case Classification::CompatibleWithStable: return "compatible_with_stable";
    }
    return "unknown";
}

VgitConfig::VgitConfig(std::vector<Rational> t, std::vector<HyperplaneForm> hyperplanes)
    : t_(std::move(t)), hyperplanes_(std::move(hyperplanes))
{
    if (hyperplanes_.empty())
        throw std::invalid_argument("VGIT configuration needs at least one hyperplane");
    if (t_.size() != hyperplanes_.size())
        throw std::invalid_argument("VGIT configuration: t and hyperplane counts differ");
    for (const Rational& ti : t_)
        if (ti <= 0)
            throw std::invalid_argument("VGIT weights t_i must be positive");
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
        if (hyperplanes_[i].ambient() != hyperplanes_[0].ambient())
            throw std::invalid_argument("VGIT hyperplanes disagree on ambient dimension");
        for (std::size_t j = i + 1; j < hyperplanes_.size(); ++j)
            if (hyperplanes_[i].proportional_to(hyperplanes_[j]))
                throw std::invalid_argument("VGIT hyperplanes must be pairwise distinct");
    }
}

Rational VgitConfig::t_sum() const
{
    Rational s = 0;
    for (const Rational& ti : t_)
        s += ti;
    return s;
}

Int mu_hypersurface(const HypersurfaceForm& f, const NormalizedOps& lambda)
{
    bool first = true;
    Int best = 0;
    for (const auto& [mono, coeff] : f.terms()) {
        Int w = pairing(mono, lambda);
        if (first || w < best) {
            best = w;
            first = false;
        }
    }
    return -best;
}

Int omega_hypersurface(const HypersurfaceForm& f, const NormalizedOps& lambda)
{
    bool first = true;
    Int best = 0;
    for (const auto& [mono, coeff] : f.terms()) {
        Int w = affine_weight_monomial(mono, lambda);
        if (first || w < best) {
            best = w;
            first = false;
        }
    }
    return best;
}

Int omega_hyperplane(const HyperplaneForm& h, const NormalizedOps& lambda)
{
    return omega_hypersurface(h.as_form(), lambda);
}

TupleWeightContext::TupleWeightContext(const TuplePoint& tuple) : tuple_(tuple)
{
    columns_ = tuple_.union_support();
    const int k = tuple_.k();
    const int m = static_cast<int>(columns_.size());
    allowed_.assign(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(m), 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j)
            if (tuple_.generator(i).coefficient(columns_[static_cast<std::size_t>(j)]) != 0)
                allowed_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;

    PluckerSupport plucker = plucker_support(tuple_);
    for (const auto& entry : plucker.entries) {
        std::vector<int> subset;
        subset.reserve(entry.monomials.size());
        for (const auto& mono : entry.monomials) {
            auto it = std::lower_bound(columns_.begin(), columns_.end(), mono, LexDescending{});
            subset.push_back(static_cast<int>(it - columns_.begin()));
        }
        exact_subsets_.push_back(std::move(subset));
    }
}

std::optional<Int> min_assignment_cost(const std::vector<std::vector<char>>& allowed,
                                       const std::vector<Int>& column_costs)
{
    const int k = static_cast<int>(allowed.size());
    const int m = static_cast<int>(column_costs.size());
    if (k == 0)
        return Int(0);
    if (k > m)
        return std::nullopt;

    Int max_cost = 0;
    for (const Int& c : column_costs)
        if (c > max_cost)
            max_cost = c;
    const Int inf = max_cost * k + 1;
    auto cost = [&](int i, int j) -> Int {
        return allowed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                   ? column_costs[static_cast<std::size_t>(j)]
                   : inf;
    };

    // Jonker-Volgenant style shortest augmenting paths with potentials;
    // exact integer arithmetic throughout. 1-based with column 0 virtual.
    std::vector<Int> u(static_cast<std::size_t>(k + 1), Int(0));
    std::vector<Int> v(static_cast<std::size_t>(m + 1), Int(0));
    std::vector<int> match(static_cast<std::size_t>(m + 1), 0);
    std::vector<int> way(static_cast<std::size_t>(m + 1), 0);
    const Int unreachable = (inf + 1) * (k + 1);
    for (int i = 1; i <= k; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<Int> minv(static_cast<std::size_t>(m + 1), unreachable);
        std::vector<char> used(static_cast<std::size_t>(m + 1), 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            int i0 = match[static_cast<std::size_t>(j0)];
            int j1 = -1;
            Int delta = unreachable;
            for (int j = 1; j <= m; ++j) {
                if (used[static_cast<std::size_t>(j)])
                    continue;
                Int cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0);
    }

    Int total = 0;
    for (int j = 1; j <= m; ++j) {
        if (match[static_cast<std::size_t>(j)] == 0)
            continue;
        Int c = cost(match[static_cast<std::size_t>(j)] - 1, j - 1);
        if (c == inf)
            return std::nullopt; // matched through a forbidden edge
        total += c;
    }
    return total;
}

Int TupleWeightContext::omega(const NormalizedOps& lambda, WeightMode mode) const
{
    if (lambda.ambient() != tuple_.ambient())
        throw std::invalid_argument("omega: 1-PS ambient mismatch");
    std::vector<Int> costs;
    costs.reserve(columns_.size());
    for (const auto& mono : columns_)
        costs.push_back(affine_weight_monomial(mono, lambda));

    if (mode == WeightMode::Combinatorial) {
        auto result = min_assignment_cost(allowed_, costs);
        if (!result)
            throw NoFeasibleAssignment("no system of distinct support monomials exists");
        return *result;
    }

    bool first = true;
    Int best = 0;
    for (const auto& subset : exact_subsets_) {
        Int sum = 0;
        for (int j : subset)
            sum += costs[static_cast<std::size_t>(j)];
        if (first || sum < best) {
            best = sum;
            first = false;
        }
    }
    if (first)
        throw DependentGenerators("no nonvanishing Pluecker minor", {});
    return best;
}

Int omega_tuple(const TuplePoint& tuple, const NormalizedOps& lambda, WeightMode mode)
{
    return TupleWeightContext(tuple).omega(lambda, mode);
}

namespace {

LambdaVerdict make_verdict(NormalizedOps lambda, Rational omega, Rational threshold)
{
    Classification cls = Classification::CompatibleWithStable;
    if (omega > threshold)
        cls = Classification::DestabilizedBy;
    else if (omega == threshold)
        cls = Classification::EqualityAt;
    return LambdaVerdict{std::move(lambda), std::move(omega), std::move(threshold), cls};
}

} // namespace

LambdaVerdict verdict_for_lambda(const TupleWeightContext& ctx, const NormalizedOps& lambda,
                                 WeightMode mode)
{
    const TuplePoint& t = ctx.tuple();
    Rational threshold =
        Rational(Int(t.k()) * Int(t.degree()) * lambda_factor(lambda), Int(t.ambient() + 1));
    return make_verdict(lambda, Rational(ctx.omega(lambda, mode)), std::move(threshold));
}

LambdaVerdict verdict_for_lambda(const TuplePoint& tuple, const NormalizedOps& lambda,
                                 WeightMode mode)
{
    return verdict_for_lambda(TupleWeightContext(tuple), lambda, mode);
}

LambdaVerdict verdict_for_lambda_hypersurface(const HypersurfaceForm& f,
                                              const NormalizedOps& lambda)
{
    Rational threshold =
        Rational(Int(f.degree()) * lambda_factor(lambda), Int(f.ambient() + 1));
    return make_verdict(lambda, Rational(omega_hypersurface(f, lambda)), std::move(threshold));
}

Rational omega_vgit(const TupleWeightContext& ctx, const VgitConfig& cfg,
                    const NormalizedOps& lambda, WeightMode mode)
{
    Rational total(ctx.omega(lambda, mode));
    for (int i = 0; i < cfg.m(); ++i)
        total += cfg.t()[static_cast<std::size_t>(i)] *
                 Rational(omega_hyperplane(cfg.hyperplanes()[static_cast<std::size_t>(i)], lambda));
    return total;
}

Rational omega_vgit(const TuplePoint& tuple, const VgitConfig& cfg, const NormalizedOps& lambda,
                    WeightMode mode)
{
    return omega_vgit(TupleWeightContext(tuple), cfg, lambda, mode);
}

LambdaVerdict verdict_vgit_for_lambda(const TupleWeightContext& ctx, const VgitConfig& cfg,
                                      const NormalizedOps& lambda, WeightMode mode)
{
    const TuplePoint& t = ctx.tuple();
    Rational threshold = (Rational(Int(t.k()) * Int(t.degree())) + cfg.t_sum()) *
                         Rational(lambda_factor(lambda), Int(t.ambient() + 1));
    return make_verdict(lambda, omega_vgit(ctx, cfg, lambda, mode), std::move(threshold));
}

LambdaVerdict verdict_vgit_for_lambda(const TuplePoint& tuple, const VgitConfig& cfg,
                                      const NormalizedOps& lambda, WeightMode mode)
{
    return verdict_vgit_for_lambda(TupleWeightContext(tuple), cfg, lambda, mode);
}

bool lambda_order_less(const ExponentVector& a, const ExponentVector& b,
                       const NormalizedOps& lambda)
{
    Int wa = affine_weight_monomial(a, lambda);
    Int wb = affine_weight_monomial(b, lambda);
    if (wa != wb)
        return wa < wb;
    return a < b;
}

namespace {

ExponentVector lambda_min_monomial(const std::set<ExponentVector>& monos,
                                   const NormalizedOps& lambda)
{
    auto it = monos.begin();
    ExponentVector best = *it;
    for (++it; it != monos.end(); ++it)
        if (lambda_order_less(*it, best, lambda))
            best = *it;
    return best;
}

// Rows of the generator matrix reduced to echelon form with columns in
// ascending lambda-order. The pivot monomials are exactly the achievable
// minimal monomials of members of the system.
struct LambdaEchelon {
    std::vector<ExponentVector> pivots;        // ascending lambda-order
    std::vector<HypersurfaceForm> rows;        // row i has minimal monomial pivots[i]
};

LambdaEchelon lambda_echelon(const TuplePoint& tuple, const NormalizedOps& lambda)
{
    std::vector<ExponentVector> columns = tuple.union_support();
    std::sort(columns.begin(), columns.end(), [&](const ExponentVector& a, const ExponentVector& b) {
        return lambda_order_less(a, b, lambda);
    });
    RationalMatrix m(static_cast<std::size_t>(tuple.k()),
                     std::vector<Rational>(columns.size()));
    for (int i = 0; i < tuple.k(); ++i)
        for (std::size_t j = 0; j < columns.size(); ++j)
            m[static_cast<std::size_t>(i)][j] = tuple.generator(i).coefficient(columns[j]);
    std::vector<int> pivot_cols = rref(m);
    if (static_cast<int>(pivot_cols.size()) != tuple.k())
        throw DependentGenerators("rank drop while building lambda echelon", {});

    LambdaEchelon out;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
        out.pivots.push_back(columns[static_cast<std::size_t>(pivot_cols[r])]);
        HypersurfaceForm::TermMap terms;
        for (std::size_t j = 0; j < columns.size(); ++j)
            if (m[r][j] != 0)
                terms.emplace(columns[j], m[r][j]);
        out.rows.emplace_back(tuple.ambient(), tuple.degree(), std::move(terms));
    }
    return out;
}

} // namespace

OmegaDecomposition decompose_omegas(const TuplePoint& tuple, const HypersurfaceForm& f,
                                    const NormalizedOps& lambda)
{
    const int k = tuple.k();
    if (f.ambient() != tuple.ambient() || f.degree() != tuple.degree())
        throw MemberNotInSystem("candidate member has wrong ambient or degree");

    // Membership: solve the exact linear system for the coordinates of f.
    std::vector<ExponentVector> columns = tuple.union_support();
    for (const auto& [mono, coeff] : f.terms())
        if (!std::binary_search(columns.begin(), columns.end(), mono, LexDescending{}))
            throw MemberNotInSystem("member support leaves the span of the generators");
    RationalMatrix mt(columns.size(), std::vector<Rational>(static_cast<std::size_t>(k)));
    std::vector<Rational> rhs(columns.size());
    for (std::size_t r = 0; r < columns.size(); ++r) {
        for (int c = 0; c < k; ++c)
            mt[r][static_cast<std::size_t>(c)] = tuple.generator(c).coefficient(columns[r]);
        rhs[r] = f.coefficient(columns[r]);
    }
    auto xi = solve_full_column_rank(mt, rhs);
    if (!xi)
        throw MemberNotInSystem("form is not a member of the linear system");

    OmegaDecomposition out{{}, {}, Int(0), Int(0), {}};
    out.selected.push_back(lambda_min_monomial(f.support(), lambda));
    out.omega_member_value = omega_hypersurface(f, lambda);

    if (k == 1) {
        out.omega_tuple_value = out.omega_member_value;
        return out;
    }

    // Re-base so f leads: drop the first generator with nonzero coordinate.
    std::size_t drop = 0;
    while (drop < xi->size() && (*xi)[drop] == 0)
        ++drop;
    std::vector<HypersurfaceForm> basis;
    basis.push_back(f);
    for (int i = 0; i < k; ++i)
        if (static_cast<std::size_t>(i) != drop)
            basis.push_back(tuple.generator(i));

    // Recursive minimal-monomial selection over the leading-set differences.
    std::set<ExponentVector> used = basis[0].support();
    std::vector<ExponentVector> targets;
    for (int i = 1; i < k; ++i) {
        std::set<ExponentVector> supp = basis[static_cast<std::size_t>(i)].support();
        std::set<ExponentVector> diff;
        for (const auto& mono : supp)
            if (!used.count(mono))
                diff.insert(mono);
        if (diff.empty()) {
            std::ostringstream msg;
            msg << "support of generator " << i
                << " is contained in the union of the earlier supports";
            throw DecompositionFailed(DecompositionFailed::Reason::EmptySetDifference, msg.str());
        }
        targets.push_back(lambda_min_monomial(diff, lambda));
        used.insert(supp.begin(), supp.end());
    }

    // Realize each target as the minimal monomial of an actual member via
    // the lambda-ordered echelon pivots.
    LambdaEchelon ech = lambda_echelon(tuple, lambda);
    for (const auto& target : targets) {
        auto it = std::find(ech.pivots.begin(), ech.pivots.end(), target);
        if (it == ech.pivots.end()) {
            throw DecompositionFailed(DecompositionFailed::Reason::MonomialNotRealizable,
                                      "no member of the system has minimal monomial " +
                                          target.to_string());
        }
        const auto& g = ech.rows[static_cast<std::size_t>(it - ech.pivots.begin())];
        out.complements.push_back(g);
        out.selected.push_back(target);
        out.complement_omegas.push_back(omega_hypersurface(g, lambda));
    }

    out.omega_tuple_value = omega_tuple(tuple, lambda, WeightMode::Combinatorial);
    Int total = out.omega_member_value;
    for (const Int& w : out.complement_omegas)
        total += w;
    if (total != out.omega_tuple_value) {
        std::ostringstream msg;
        msg << "decomposition sum " << total.str() << " != omega(T) = "
            << out.omega_tuple_value.str();
        throw DecompositionFailed(DecompositionFailed::Reason::SumMismatch, msg.str());
    }
    return out;
}

} // namespace gitstab
