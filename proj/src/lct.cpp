#include "gitstab/lct.hpp"

#include "gitstab/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace gitstab {

namespace {

// Fraction-free Bareiss determinant for small integer matrices.
Int int_determinant(std::vector<std::vector<Int>> m)
{
    const int n = static_cast<int>(m.size());
    if (n == 0)
        return 1;
    Int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0)
                return 0;
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(swap_row)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                         m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                     m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                         m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
                    prev;
        prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    return sign * m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
}

// Kernel generator of an (r x c) integer matrix with r == c - 1 via signed
// maximal minors; the zero vector signals a rank drop.
std::vector<Int> signed_minor_kernel(const std::vector<std::vector<Int>>& rows, int cols)
{
    std::vector<Int> v(static_cast<std::size_t>(cols), Int(0));
    for (int drop = 0; drop < cols; ++drop) {
        std::vector<std::vector<Int>> sub;
        sub.reserve(rows.size());
        for (const auto& row : rows) {
            std::vector<Int> r;
            r.reserve(static_cast<std::size_t>(cols - 1));
            for (int c = 0; c < cols; ++c)
                if (c != drop)
                    r.push_back(row[static_cast<std::size_t>(c)]);
            sub.push_back(std::move(r));
        }
        Int det = int_determinant(std::move(sub));
        if (drop % 2 == 1)
            det = -det;
        v[static_cast<std::size_t>(drop)] = det;
    }
    return v;
}

bool dominates(const std::vector<int>& a, const std::vector<int>& b)
{
    // a >= b componentwise
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i])
            return false;
    return true;
}

Int dot(const std::vector<Int>& w, const std::vector<int>& p)
{
    Int acc = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        acc += w[i] * p[i];
    return acc;
}

} // namespace

LocalGerm::LocalGerm(int nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms))
{
    if (nvars_ < 1)
        throw std::invalid_argument("germ needs at least one variable");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) {
            it = terms_.erase(it);
            continue;
        }
        if (static_cast<int>(it->first.size()) != nvars_)
            throw std::invalid_argument("germ exponent length mismatch");
        int total = 0;
        for (int e : it->first) {
            if (e < 0)
                throw std::invalid_argument("negative exponent in germ");
            total += e;
        }
        if (total == 0)
            throw std::invalid_argument("germ has a constant term (does not vanish at the origin)");
        ++it;
    }
    if (terms_.empty())
        throw std::invalid_argument("germ is identically zero");
}

std::vector<std::vector<int>> LocalGerm::support() const
{
    std::vector<std::vector<int>> s;
    s.reserve(terms_.size());
    for (const auto& [e, c] : terms_)
        s.push_back(e);
    return s;
}

std::string LocalGerm::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            if (c == -1)
                out << "-";
            else if (c != 1)
                out << gitstab::to_string(c) << "*";
        } else if (c > 0) {
            out << " + ";
            if (c != 1)
                out << gitstab::to_string(c) << "*";
        } else {
            out << " - ";
            if (c != -1)
                out << gitstab::to_string(-c) << "*";
        }
        bool started = false;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (started)
                out << "*";
            out << "u" << i;
            if (e[i] > 1)
                out << "^" << e[i];
            started = true;
        }
        first = false;
    }
    return out.str();
}

NewtonPolyhedron NewtonPolyhedron::of(const LocalGerm& germ)
{
    NewtonPolyhedron np;
    np.dim_ = germ.nvars();
    const int n = np.dim_;

    // Only componentwise-minimal points matter for the polyhedron.
    std::vector<std::vector<int>> pts = germ.support();
    for (const auto& p : pts) {
        bool minimal = true;
        for (const auto& q : pts)
            if (q != p && dominates(p, q))
                minimal = false;
        if (minimal)
            np.generators_.push_back(p);
    }
    std::sort(np.generators_.begin(), np.generators_.end());
    np.generators_.erase(std::unique(np.generators_.begin(), np.generators_.end()),
                         np.generators_.end());
    const auto& gens = np.generators_;

    std::map<std::vector<Int>, Int> facet_map; // primitive normal -> tight offset

    auto consider = [&](std::vector<Int> normal) {
        bool any = false, positive = false, negative = false;
        for (const Int& x : normal) {
            if (x > 0)
                positive = true;
            if (x < 0)
                negative = true;
            if (x != 0)
                any = true;
        }
        if (!any || (positive && negative))
            return; // degenerate span or not an outer normal of the orthant recession
        if (negative)
            for (Int& x : normal)
                x = -x;
        Int g = 0;
        for (const Int& x : normal)
            g = boost::multiprecision::gcd(g, x);
        for (Int& x : normal)
            x /= g;

        Int offset = dot(normal, gens[0]);
        for (const auto& p : gens)
            offset = std::min(offset, dot(normal, p));

        // Keep only genuine facets: the touching points together with the
        // recession directions orthogonal to the normal must span an
        // (n-1)-dimensional affine space.
        std::vector<std::vector<Rational>> span_rows;
        const std::vector<int>* base = nullptr;
        for (const auto& p : gens) {
            if (dot(normal, p) != offset)
                continue;
            if (!base) {
                base = &p;
                continue;
            }
            std::vector<Rational> row(static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c)
                row[static_cast<std::size_t>(c)] =
                    Rational(p[static_cast<std::size_t>(c)] - (*base)[static_cast<std::size_t>(c)]);
            span_rows.push_back(std::move(row));
        }
        for (int c = 0; c < n; ++c) {
            if (normal[static_cast<std::size_t>(c)] != 0)
                continue;
            std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
            row[static_cast<std::size_t>(c)] = 1;
            span_rows.push_back(std::move(row));
        }
        if (n > 1 && rank(span_rows) != n - 1)
            return;
        facet_map.emplace(std::move(normal), std::move(offset));
    };

    if (n == 1) {
        consider({Int(1)});
    } else {
        // Every facet is spanned by j >= 1 of the generating points plus
        // n - j recession directions, so enumerating those spans covers all
        // facet normals.
        const int npts = static_cast<int>(gens.size());
        std::vector<int> psub;
        std::function<void(int, int)> pick_points = [&](int start, int want) {
            if (want == 0) {
                const int dirs_needed = n - static_cast<int>(psub.size());
                std::vector<int> dsub;
                std::function<void(int, int)> pick_dirs = [&](int dstart, int dwant) {
                    if (dwant == 0) {
                        std::vector<std::vector<Int>> rows;
                        const auto& p0 = gens[static_cast<std::size_t>(psub[0])];
                        for (std::size_t i = 1; i < psub.size(); ++i) {
                            std::vector<Int> row(static_cast<std::size_t>(n));
                            const auto& pi = gens[static_cast<std::size_t>(psub[i])];
                            for (int c = 0; c < n; ++c)
                                row[static_cast<std::size_t>(c)] =
                                    pi[static_cast<std::size_t>(c)] - p0[static_cast<std::size_t>(c)];
                            rows.push_back(std::move(row));
                        }
                        for (int dir : dsub) {
                            std::vector<Int> row(static_cast<std::size_t>(n), Int(0));
                            row[static_cast<std::size_t>(dir)] = 1;
                            rows.push_back(std::move(row));
                        }
                        consider(signed_minor_kernel(rows, n));
                        return;
                    }
                    for (int d = dstart; d <= n - dwant; ++d) {
                        dsub.push_back(d);
                        pick_dirs(d + 1, dwant - 1);
                        dsub.pop_back();
                    }
                };
                pick_dirs(0, dirs_needed);
                return;
            }
            for (int i = start; i <= npts - want; ++i) {
                psub.push_back(i);
                pick_points(i + 1, want - 1);
                psub.pop_back();
            }
        };
        for (int j = 1; j <= std::min(n, npts); ++j) {
            psub.clear();
            pick_points(0, j);
        }
    }

    for (auto& [normal, offset] : facet_map)
        np.facets_.push_back(Facet{normal, offset});
    return np;
}

bool NewtonPolyhedron::contains_diagonal(const Rational& s) const
{
    for (const auto& facet : facets_) {
        Int weight_sum = 0;
        for (const Int& w : facet.normal)
            weight_sum += w;
        if (s * Rational(weight_sum) < Rational(facet.offset))
            return false;
    }
    return true;
}

std::pair<Rational, std::size_t> NewtonPolyhedron::diagonal_entry_parameter() const
{
    if (facets_.empty())
        throw std::logic_error("Newton polyhedron with no facets");
    Rational best = 0;
    std::size_t best_index = 0;
    bool found = false;
    for (std::size_t i = 0; i < facets_.size(); ++i) {
        Int weight_sum = 0;
        for (const Int& w : facets_[i].normal)
            weight_sum += w;
        Rational candidate(facets_[i].offset, weight_sum);
        if (!found || candidate > best) {
            best = candidate;
            best_index = i;
            found = true;
        }
    }
    if (best <= 0)
        throw std::logic_error("diagonal entry parameter not positive (constant term present?)");
    return {best, best_index};
}

LocalGerm localize(const HypersurfaceForm& f, const ProjectivePoint& p)
{
    if (f.evaluate(p.coords()) != 0)
        throw PointNotOnHypersurface("point " + p.to_string() + " is not on the hypersurface");
    TuplePoint singleton(f.ambient(), f.degree(), {f});
    auto [moved, transform] = move_point_to_last_coordinate(singleton, p);
    const HypersurfaceForm& g = moved.generator(0);

    const int n = f.ambient();
    LocalGerm::TermMap terms;
    for (const auto& [mono, coeff] : g.terms()) {
        std::vector<int> e(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            e[static_cast<std::size_t>(j)] = mono[j];
        terms.emplace(std::move(e), coeff);
    }
    return LocalGerm(n, std::move(terms));
}

LctValue lct_newton(const LocalGerm& germ)
{
    NewtonPolyhedron np = NewtonPolyhedron::of(germ);
    auto [c, index] = np.diagonal_entry_parameter();
    (void)index;
    Rational value = Rational(1) / c;
    if (value > 1)
        value = 1;
    return LctValue{value, true};
}

Rational weighted_blowup_discrepancy(const LocalGerm& germ, const std::vector<Int>& weights,
                                     const Rational& c)
{
    if (static_cast<int>(weights.size()) != germ.nvars())
        throw std::invalid_argument("weight vector length mismatch");
    for (const Int& w : weights)
        if (w <= 0)
            throw std::invalid_argument("blow-up weights must be strictly positive");
    bool first = true;
    Int mult = 0;
    for (const auto& [e, coeff] : germ.terms()) {
        Int v = dot(weights, e);
        if (first || v < mult) {
            mult = v;
            first = false;
        }
    }
    Int weight_sum = 0;
    for (const Int& w : weights)
        weight_sum += w;
    return Rational(weight_sum - 1) - c * Rational(mult);
}

bool proof_shape(const NormalizedOps& lambda)
{
    const int n = lambda.ambient();
    for (int j = 0; j < n; ++j)
        if (lambda[j] <= lambda[n])
            return false;
    return true;
}

Rational tuple_lct_bound(const TuplePoint& tuple, const ProjectivePoint& p,
                         const NormalizedOps& lambda)
{
    if (tuple.k() <= 1)
        throw std::invalid_argument("tuple_lct_bound needs k > 1");
    if (!(p == ProjectivePoint::coordinate_point(tuple.ambient(), tuple.ambient())))
        throw std::invalid_argument(
            "tuple must be pre-transformed so the base point is (0:...:0:1)");
    if (!is_base_point(tuple, p))
        throw std::invalid_argument("p is not a base point of the tuple");
    Int omega = omega_tuple(tuple, lambda, WeightMode::Combinatorial);
    if (omega == 0)
        throw std::domain_error("omega(T, lambda) = 0: lct bound undefined for this subgroup");
    return Rational(lambda_factor(lambda), omega);
}

LctNecessaryReport necessary_condition_check(int n, int d, int k,
                                             const std::vector<Rational>& member_lcts)
{
    LctNecessaryReport report;
    report.threshold = Rational(Int(n + 1), Int(k) * Int(d));
    for (std::size_t i = 0; i < member_lcts.size(); ++i) {
        if (member_lcts[i] <= report.threshold)
            report.stable_violations.push_back(i);
        if (member_lcts[i] < report.threshold)
            report.semistable_violations.push_back(i);
    }
    return report;
}

const char* sufficiency_name(SufficiencyLevel level)
{
    return level == SufficiencyLevel::Stable ? "stable" : "semistable";
}

std::optional<SufficiencyLevel> sufficient_semistable_via_lct(int n, int d, int /*k*/,
                                                              const Rational& certified_min_lct)
{
    Rational threshold(Int(n + 1), Int(d));
    if (certified_min_lct > threshold)
        return SufficiencyLevel::Stable;
    if (certified_min_lct == threshold)
        return SufficiencyLevel::Semistable;
    return std::nullopt;
}

std::optional<SufficiencyLevel> sufficient_vgit_via_lct(int n, int d, int k,
                                                        const std::vector<Rational>& t,
                                                        const Rational& certified_min_lct)
{
    Rational t_sum = 0;
    for (const Rational& ti : t)
        t_sum += ti;
    Rational denom = Rational(Int(k) * Int(d)) - Rational(n) * t_sum;
    if (denom <= 0)
        throw OutsideRegime("sum of t exceeds kd/n: criterion denominator not positive");
    Rational threshold = Rational(Int(k) * Int(n + 1)) / denom;
    if (certified_min_lct > threshold)
        return SufficiencyLevel::Stable;
    if (certified_min_lct == threshold)
        return SufficiencyLevel::Semistable;
    return std::nullopt;
}

KollarCheck kollar_bound_check(const HypersurfaceForm& f, const NormalizedOps& lambda,
                               const Rational& lct)
{
    if (lct <= 0)
        throw std::invalid_argument("lct must be positive");
    Rational ratio(omega_hypersurface(f, lambda), lambda_factor(lambda));
    Rational bound = Rational(1) / lct;
    return KollarCheck{ratio, bound, ratio <= bound};
}

KollarCheck kollar_bound_check_tuple(const TuplePoint& tuple, const NormalizedOps& lambda,
                                     const Rational& worst_member_lct, WeightMode mode)
{
    if (worst_member_lct <= 0)
        throw std::invalid_argument("lct must be positive");
    Rational ratio(omega_tuple(tuple, lambda, mode), lambda_factor(lambda));
    Rational bound = Rational(tuple.k()) / worst_member_lct;
    return KollarCheck{ratio, bound, ratio <= bound};
}

LctValue global_lct_upper(const HypersurfaceForm& f, const std::vector<ProjectivePoint>& points)
{
    Rational best = 1;
    bool all_nondegenerate = true;
    for (const auto& p : points) {
        LctValue local = lct_newton(localize(f, p));
        if (local.value < best)
            best = local.value;
        all_nondegenerate = all_nondegenerate && local.nondegenerate_assumed;
    }
    return LctValue{best, all_nondegenerate};
}

} // namespace gitstab
