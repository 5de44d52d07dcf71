#include "gitstab/opssearch.hpp"

#include "gitstab/parallel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace gitstab {

namespace {

// ---- small exact kernels ------------------------------------------------

template <typename T>
T small_determinant(std::vector<std::vector<T>> m)
{
    const int n = static_cast<int>(m.size());
    if (n == 0)
        return T(1);
    // Fraction-free Bareiss keeps everything integral.
    T sign(1), prev(1);
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k] == T(0)) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != T(0)) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0)
                return T(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Kernel generator of an n x (n+1) integer matrix via signed maximal
// minors; all-zero result signals a rank drop.
template <typename T>
std::vector<T> minor_kernel(const std::vector<std::vector<T>>& rows)
{
    const int cols = static_cast<int>(rows[0].size());
    std::vector<T> v(static_cast<std::size_t>(cols), T(0));
    for (int drop = 0; drop < cols; ++drop) {
        std::vector<std::vector<T>> sub;
        sub.reserve(rows.size());
        for (const auto& row : rows) {
            std::vector<T> r;
            r.reserve(static_cast<std::size_t>(cols - 1));
            for (int c = 0; c < cols; ++c)
                if (c != drop)
                    r.push_back(row[static_cast<std::size_t>(c)]);
            sub.push_back(std::move(r));
        }
        T det = small_determinant(std::move(sub));
        if (drop % 2 == 1)
            det = -det;
        v[static_cast<std::size_t>(drop)] = det;
    }
    return v;
}

using NormalVec = std::vector<long long>;

void canonicalize_normal(NormalVec& v)
{
    long long g = 0;
    for (long long x : v)
        g = std::gcd(g, x);
    if (g == 0)
        return;
    for (long long& x : v)
        x /= g;
    for (long long x : v) {
        if (x > 0)
            break;
        if (x < 0) {
            for (long long& y : v)
                y = -y;
            break;
        }
    }
}

std::string normal_to_string(const NormalVec& v)
{
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out << ",";
        out << v[i];
    }
    out << "]";
    return out.str();
}

struct Arrangement {
    std::vector<NormalVec> normals;
    std::vector<std::string> labels;
};

void push_normal(Arrangement& arr, std::set<NormalVec>& seen, NormalVec v, std::string label)
{
    canonicalize_normal(v);
    bool nonzero = false;
    for (long long x : v)
        if (x != 0)
            nonzero = true;
    if (!nonzero)
        return;
    if (!seen.insert(v).second)
        return;
    arr.normals.push_back(std::move(v));
    arr.labels.push_back(std::move(label));
}

// Enumerates primitive rays of the refinement of the normalized cone by
// the arrangement hyperplanes, as kernels of (n-1)-subsets of normals
// together with the sum-zero equation.
void enumerate_rays(const Arrangement& arr, int n,
                    std::map<std::vector<Int>, std::string>& rays)
{
    const int pick = n - 1;
    const int total = static_cast<int>(arr.normals.size());

    long long max_coef = 1;
    for (const auto& v : arr.normals)
        for (long long x : v)
            max_coef = std::max(max_coef, std::llabs(x));
    // n! * max_coef^n must stay well inside int64; otherwise use cpp_int.
    bool use_int64 = (n <= 4 && max_coef <= 20000);

    std::vector<int> subset(static_cast<std::size_t>(pick));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == pick) {
            std::vector<Int> ray;
            if (use_int64) {
                std::vector<NormalVec> rows;
                rows.reserve(static_cast<std::size_t>(n));
                for (int s : subset)
                    rows.push_back(arr.normals[static_cast<std::size_t>(s)]);
                rows.emplace_back(static_cast<std::size_t>(n + 1), 1); // sum a = 0
                NormalVec v = minor_kernel(rows);
                ray.assign(v.begin(), v.end());
            } else {
                std::vector<std::vector<Int>> rows;
                for (int s : subset) {
                    std::vector<Int> row;
                    for (long long x : arr.normals[static_cast<std::size_t>(s)])
                        row.push_back(Int(x));
                    rows.push_back(std::move(row));
                }
                rows.emplace_back(static_cast<std::size_t>(n + 1), Int(1));
                ray = minor_kernel(rows);
            }

            bool nonzero = false;
            for (const Int& x : ray)
                if (x != 0)
                    nonzero = true;
            if (!nonzero)
                return;
            // Orient into the normalized cone if possible.
            bool noninc = true, nondec = true;
            for (std::size_t i = 0; i + 1 < ray.size(); ++i) {
                if (ray[i] < ray[i + 1])
                    noninc = false;
                if (ray[i] > ray[i + 1])
                    nondec = false;
            }
            if (!noninc && !nondec)
                return;
            if (!noninc)
                for (Int& x : ray)
                    x = -x;
            Int g = 0;
            for (const Int& x : ray)
                g = boost::multiprecision::gcd(g, x);
            for (Int& x : ray)
                x /= g;

            if (!rays.count(ray)) {
                std::ostringstream prov;
                for (std::size_t i = 0; i < subset.size(); ++i) {
                    if (i)
                        prov << " & ";
                    prov << arr.labels[static_cast<std::size_t>(subset[i])];
                }
                if (subset.empty())
                    prov << "sum-zero line";
                rays.emplace(std::move(ray), prov.str());
            }
            return;
        }
        for (int i = start; i <= total - (pick - depth); ++i) {
            subset[static_cast<std::size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

} // namespace

CandidateSet candidate_lambdas(const TuplePoint& tuple,
                               const std::vector<HyperplaneForm>& hyperplanes)
{
    const int n = tuple.ambient();
    const int k = tuple.k();
    const int d = tuple.degree();

    Arrangement arr;
    std::set<NormalVec> seen;

    // Affine-weight functional of a monomial as a vector on (a_0,...,a_n):
    // (I_0, ..., I_{n-1}, I_n - d). Subset-sum functionals are sums of
    // those; their pairwise differences cut the linearity regions of omega.
    const std::vector<ExponentVector> columns = tuple.union_support();
    const int m = static_cast<int>(columns.size());
    std::vector<NormalVec> mono_vec(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        NormalVec v(static_cast<std::size_t>(n + 1), 0);
        for (int c = 0; c < n; ++c)
            v[static_cast<std::size_t>(c)] = columns[static_cast<std::size_t>(j)][c];
        v[static_cast<std::size_t>(n)] = columns[static_cast<std::size_t>(j)][n] - d;
        mono_vec[static_cast<std::size_t>(j)] = std::move(v);
    }

    std::set<NormalVec> subset_sums;
    if (k <= m) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        std::function<void(int, int, NormalVec)> rec = [&](int start, int depth, NormalVec acc) {
            if (depth == k) {
                subset_sums.insert(std::move(acc));
                return;
            }
            for (int i = start; i <= m - (k - depth); ++i) {
                NormalVec next = acc;
                for (std::size_t c = 0; c < next.size(); ++c)
                    next[c] += mono_vec[static_cast<std::size_t>(i)][c];
                rec(i + 1, depth + 1, std::move(next));
            }
        };
        rec(0, 0, NormalVec(static_cast<std::size_t>(n + 1), 0));
    }
    {
        std::vector<NormalVec> sums(subset_sums.begin(), subset_sums.end());
        for (std::size_t a = 0; a < sums.size(); ++a)
            for (std::size_t b = a + 1; b < sums.size(); ++b) {
                NormalVec diff(sums[a].size());
                for (std::size_t c = 0; c < diff.size(); ++c)
                    diff[c] = sums[a][c] - sums[b][c];
                NormalVec key = diff;
                canonicalize_normal(key);
                push_normal(arr, seen, std::move(diff), "tie" + normal_to_string(key));
            }
    }

    // Facets of the normalized cone.
    for (int i = 0; i < n; ++i) {
        NormalVec v(static_cast<std::size_t>(n + 1), 0);
        v[static_cast<std::size_t>(i)] = 1;
        v[static_cast<std::size_t>(i + 1)] = -1;
        std::ostringstream label;
        label << "facet(a" << i << "=a" << (i + 1) << ")";
        push_normal(arr, seen, std::move(v), label.str());
    }

    if (!hyperplanes.empty()) {
        // Ties among the weight pieces of each hyperplane support.
        for (std::size_t h = 0; h < hyperplanes.size(); ++h) {
            std::vector<int> supp;
            for (int j = 0; j <= n; ++j)
                if (hyperplanes[h].coeffs()[static_cast<std::size_t>(j)] != 0)
                    supp.push_back(j);
            for (std::size_t a = 0; a < supp.size(); ++a)
                for (std::size_t b = a + 1; b < supp.size(); ++b) {
                    NormalVec v(static_cast<std::size_t>(n + 1), 0);
                    v[static_cast<std::size_t>(supp[a])] = 1;
                    v[static_cast<std::size_t>(supp[b])] = -1;
                    std::ostringstream label;
                    label << "h" << h << "_tie(a" << supp[a] << "=a" << supp[b] << ")";
                    push_normal(arr, seen, std::move(v), label.str());
                }
        }
        // Loci where a coordinate weight piece meets the per-hyperplane
        // threshold share Lambda/(n+1); the wall structure in t changes
        // across them.
        for (int j = 0; j < n; ++j) {
            NormalVec v(static_cast<std::size_t>(n + 1), -1);
            v[static_cast<std::size_t>(j)] = n;
            std::ostringstream label;
            label << "lambda_tie(a" << j << ")";
            push_normal(arr, seen, std::move(v), label.str());
        }
    }

    std::map<std::vector<Int>, std::string> rays;
    enumerate_rays(arr, n, rays);

    // The extreme rays of the cone itself always belong to the candidate
    // set; they arise from facet subsets but are pinned explicitly.
    for (int j = 0; j < n; ++j) {
        std::vector<Int> ray(static_cast<std::size_t>(n + 1));
        Int hi = n - j, lo = -(j + 1);
        Int g = boost::multiprecision::gcd(hi, -lo);
        for (int i = 0; i <= n; ++i)
            ray[static_cast<std::size_t>(i)] = (i <= j ? hi : lo) / g;
        rays.emplace(std::move(ray), "cone_extreme_ray");
    }

    CandidateSet out;
    out.arrangement_size = arr.normals.size();
    for (auto& [ray, prov] : rays) {
        out.rays.emplace_back(ray);
        out.provenance.push_back(prov);
    }
    return out;
}

const char* torus_stability_name(TorusStability s)
{
    switch (s) {
    case TorusStability::Stable: return "torus_stable";
    case TorusStability::StrictlySemistable: return "torus_strictly_semistable";
    case TorusStability::Unstable: return "torus_unstable";
    }
    return "unknown";
}

TorusVerdict torus_verdict_with(const TupleWeightContext& ctx, const CandidateSet& candidates,
                                WeightMode mode, const VgitConfig* cfg, int jobs)
{
    std::vector<std::optional<LambdaVerdict>> verdicts(candidates.rays.size());
    parallel_for(candidates.rays.size(), jobs, [&](std::size_t i) {
        const NormalizedOps& lambda = candidates.rays[i];
        verdicts[i] = cfg ? verdict_vgit_for_lambda(ctx, *cfg, lambda, mode)
                          : verdict_for_lambda(ctx, lambda, mode);
    });

    TorusVerdict out;
    out.rays_checked = candidates.rays.size();
    for (auto& v : verdicts) {
        switch (v->classification) {
        case Classification::DestabilizedBy:
            ++out.destabilized_count;
            if (!out.witness || out.witness->classification != Classification::DestabilizedBy)
                out.witness = *v;
            break;
        case Classification::EqualityAt:
            ++out.equality_count;
            out.equality_rays.push_back(*v);
            break;
        case Classification::CompatibleWithStable:
            ++out.compatible_count;
            break;
        }
    }
    if (out.destabilized_count > 0) {
        out.stability = TorusStability::Unstable;
    } else if (out.equality_count > 0) {
        out.stability = TorusStability::StrictlySemistable;
        out.witness = out.equality_rays.front();
    } else {
        out.stability = TorusStability::Stable;
    }
    return out;
}

TorusVerdict torus_verdict(const TuplePoint& tuple, WeightMode mode, const VgitConfig* cfg,
                           int jobs)
{
    CandidateSet candidates =
        candidate_lambdas(tuple, cfg ? cfg->hyperplanes() : std::vector<HyperplaneForm>{});
    TupleWeightContext ctx(tuple);
    return torus_verdict_with(ctx, candidates, mode, cfg, jobs);
}

namespace {

std::string permutation_label(const Permutation& perm)
{
    if (perm.is_identity())
        return "identity";
    std::ostringstream out;
    out << "permutation(";
    for (int i = 0; i < perm.size(); ++i) {
        if (i)
            out << " ";
        out << perm(i);
    }
    out << ")";
    return out.str();
}

ProjectiveTransform random_transform(int n, std::mt19937_64& rng)
{
    // Entries in [-2, 2]; rejection-sample until invertible. The modulus
    // draw is hand-rolled so the stream is identical across platforms.
    while (true) {
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n + 1),
                                             std::vector<Rational>(static_cast<std::size_t>(n + 1)));
        for (auto& row : m)
            for (auto& entry : row)
                entry = Rational(static_cast<long long>(rng() % 5) - 2);
        try {
            return ProjectiveTransform(std::move(m));
        } catch (const std::invalid_argument&) {
            continue; // singular draw
        }
    }
}

} // namespace

SearchOutcome destabilizer_search(const TuplePoint& tuple, WeightMode mode,
                                  const SearchStrategies& strategies, const VgitConfig* cfg,
                                  int jobs)
{
    const int n = tuple.ambient();
    SearchOutcome outcome;

    std::vector<std::pair<ProjectiveTransform, std::string>> transforms;
    if (strategies.permutations) {
        std::vector<int> image(static_cast<std::size_t>(n + 1));
        std::iota(image.begin(), image.end(), 0);
        do {
            Permutation perm{image};
            transforms.emplace_back(ProjectiveTransform::coordinate_permutation(perm),
                                    permutation_label(perm));
        } while (std::next_permutation(image.begin(), image.end()));
    }
    for (std::size_t i = 0; i < strategies.user_transforms.size(); ++i)
        transforms.emplace_back(strategies.user_transforms[i],
                                "user[" + std::to_string(i) + "]");
    for (const auto& p : strategies.base_points) {
        auto [moved, a] = move_point_to_last_coordinate(tuple, p);
        (void)moved;
        transforms.emplace_back(a, "base_point_move" + p.to_string());
    }
    if (strategies.random_transforms > 0) {
        std::mt19937_64 rng(strategies.seed);
        for (int i = 0; i < strategies.random_transforms; ++i)
            transforms.emplace_back(random_transform(n, rng),
                                    "random[seed=" + std::to_string(strategies.seed) +
                                        ",index=" + std::to_string(i) + "]");
    }

    for (const auto& [a, label] : transforms) {
        TuplePoint moved = apply_transform(tuple, a);
        std::optional<VgitConfig> moved_cfg;
        if (cfg) {
            std::vector<HyperplaneForm> hyps;
            hyps.reserve(cfg->hyperplanes().size());
            for (const auto& h : cfg->hyperplanes())
                hyps.push_back(apply_transform(h, a));
            moved_cfg.emplace(cfg->t(), std::move(hyps));
        }
        CandidateSet candidates = candidate_lambdas(
            moved, moved_cfg ? moved_cfg->hyperplanes() : std::vector<HyperplaneForm>{});
        TupleWeightContext ctx(moved);
        TorusVerdict verdict =
            torus_verdict_with(ctx, candidates, mode, moved_cfg ? &*moved_cfg : nullptr, jobs);
        ++outcome.transforms_tried;
        if (verdict.stability == TorusStability::Unstable) {
            outcome.certificate = Certificate{verdict.witness->lambda,
                                              a,
                                              label,
                                              verdict.witness->omega,
                                              verdict.witness->threshold,
                                              mode,
                                              verdict.witness->classification};
            return outcome;
        }
    }
    return outcome;
}

const char* member_conclusion_name(TupleMemberConclusion c)
{
    return c == TupleMemberConclusion::Stable ? "stable" : "semistable";
}

std::optional<TupleMemberConclusion>
tuple_verdict_from_members(const std::vector<MemberStability>& members)
{
    if (members.empty())
        throw std::invalid_argument("member verdict list is empty");
    std::size_t strictly = 0;
    for (MemberStability m : members)
        if (m == MemberStability::StrictlySemistable)
            ++strictly;
    if (strictly == 0)
        return TupleMemberConclusion::Stable;
    if (strictly == 1)
        return TupleMemberConclusion::Stable; // at worst one strictly semistable member
    return TupleMemberConclusion::Semistable; // only semistable members
}

VgitWalls vgit_walls(const TuplePoint& tuple, const std::vector<HyperplaneForm>& hyperplanes,
                     const CandidateSet& candidates, WeightMode mode)
{
    if (hyperplanes.empty())
        throw std::invalid_argument("vgit_walls needs at least one hyperplane");
    const int n = tuple.ambient();
    const int k = tuple.k();
    const int d = tuple.degree();
    const int m = static_cast<int>(hyperplanes.size());

    TupleWeightContext ctx(tuple);
    VgitWalls out;
    out.regime_boundary = Rational(Int(k) * Int(d), Int(n));

    std::set<std::vector<Int>> seen_hyperplanes;
    std::map<Rational, NormalizedOps> wall_map;

    for (const auto& lambda : candidates.rays) {
        Rational omega_t(ctx.omega(lambda, mode));
        Rational lam(lambda_factor(lambda));
        Rational rhs = Rational(Int(k) * Int(d)) / Rational(n + 1) * lam - omega_t;
        std::vector<Rational> coef(static_cast<std::size_t>(m));
        bool all_zero = true;
        for (int i = 0; i < m; ++i) {
            coef[static_cast<std::size_t>(i)] =
                Rational(omega_hyperplane(hyperplanes[static_cast<std::size_t>(i)], lambda)) -
                lam / Rational(n + 1);
            if (coef[static_cast<std::size_t>(i)] != 0)
                all_zero = false;
        }
        if (all_zero)
            continue; // this ray contributes no wall

        if (m == 1) {
            Rational t = rhs / coef[0];
            if (t > 0 && !wall_map.count(t))
                wall_map.emplace(t, lambda);
        } else {
            // Primitive integer row (c_1, ..., c_m, rhs) with sign fixed by
            // the first nonzero coefficient.
            Int lcm = 1;
            auto fold = [&lcm](const Rational& r) {
                Int den = rational_den(r);
                lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
            };
            for (const auto& c : coef)
                fold(c);
            fold(rhs);
            std::vector<Int> row;
            row.reserve(static_cast<std::size_t>(m + 1));
            for (const auto& c : coef)
                row.push_back(rational_num(c * Rational(lcm)));
            row.push_back(rational_num(rhs * Rational(lcm)));
            Int g = 0;
            for (const Int& x : row)
                g = boost::multiprecision::gcd(g, x);
            for (Int& x : row)
                x /= g;
            for (std::size_t i = 0; i + 1 < row.size(); ++i) {
                if (row[i] > 0)
                    break;
                if (row[i] < 0) {
                    for (Int& x : row)
                        x = -x;
                    break;
                }
            }
            if (seen_hyperplanes.insert(row).second)
                out.wall_hyperplanes.push_back(std::move(row));
        }
    }

    for (auto& [t, ray] : wall_map) {
        out.walls.push_back(t);
        out.records.push_back(VgitWalls::Record{t, ray});
        if (t >= out.regime_boundary)
            out.outside_regime.push_back(t);
    }
    std::sort(out.wall_hyperplanes.begin(), out.wall_hyperplanes.end());
    return out;
}

} // namespace gitstab
