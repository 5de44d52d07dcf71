#include "gitstab/analysis.hpp"

#include "gitstab/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace gitstab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
    throw std::invalid_argument(path + ": " + message);
}

const Json& expect_object(const Json& j, const std::string& path)
{
    if (!j.is_object())
        fail(path, "expected an object");
    return j;
}

const Json& expect_array(const Json& j, const std::string& path)
{
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

int expect_int(const Json& j, const std::string& path)
{
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    return j.get<int>();
}

std::string expect_string(const Json& j, const std::string& path)
{
    if (!j.is_string())
        fail(path, "expected a string (decimal literals are not accepted)");
    return j.get<std::string>();
}

Rational expect_rational(const Json& j, const std::string& path)
{
    try {
        return parse_rational(expect_string(j, path));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

void check_keys(const Json& obj, const std::string& path, const std::set<std::string>& allowed)
{
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            fail(path.empty() ? key : path + "." + key, "unknown field");
}

std::string idx(const std::string& base, std::size_t i)
{
    return base + "[" + std::to_string(i) + "]";
}

// ---- serialization helpers ----------------------------------------------

Json lambda_json(const NormalizedOps& lambda)
{
    Json out = Json::array();
    for (const Int& w : lambda.weights())
        out.push_back(w.str());
    return out;
}

Json verdict_json(const LambdaVerdict& v)
{
    Json out;
    out["lambda"] = lambda_json(v.lambda);
    out["omega"] = to_string(v.omega);
    out["threshold"] = to_string(v.threshold);
    out["classification"] = classification_name(v.classification);
    return out;
}

Json transform_json(const ProjectiveTransform& a)
{
    Json rows = Json::array();
    for (const auto& row : a.matrix()) {
        Json r = Json::array();
        for (const Rational& entry : row)
            r.push_back(to_string(entry));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json certificate_json(const Certificate& cert)
{
    Json out;
    out["lambda"] = lambda_json(cert.lambda);
    out["transform"] = transform_json(cert.transform);
    out["transform_label"] = cert.transform_label;
    out["omega"] = to_string(cert.omega);
    out["threshold"] = to_string(cert.threshold);
    out["mode"] = weight_mode_name(cert.mode);
    out["classification"] = classification_name(cert.classification);
    return out;
}

Json torus_verdict_json(const TorusVerdict& v)
{
    Json out;
    out["stability"] = torus_stability_name(v.stability);
    out["rays_checked"] = v.rays_checked;
    Json counts;
    counts["destabilized"] = v.destabilized_count;
    counts["equality"] = v.equality_count;
    counts["compatible"] = v.compatible_count;
    out["classification_counts"] = std::move(counts);
    out["witness"] = v.witness ? verdict_json(*v.witness) : Json(nullptr);
    Json eq = Json::array();
    for (const auto& ray : v.equality_rays)
        eq.push_back(verdict_json(ray));
    out["equality_rays"] = std::move(eq);
    return out;
}

Json point_json(const ProjectivePoint& p)
{
    Json out = Json::array();
    for (const Rational& c : p.coords())
        out.push_back(to_string(c));
    return out;
}

} // namespace

AnalysisRequest parse_request(const Json& input)
{
    expect_object(input, "input");
    check_keys(input, "",
               {"n", "degree", "generators", "hyperplanes", "t", "base_points", "transforms",
                "member_verdicts", "certified_min_lct", "smooth_members", "mode", "seed",
                "random_transforms"});

    AnalysisRequest req;
    if (!input.contains("n") || !input.contains("degree") || !input.contains("generators"))
        fail("input", "fields 'n', 'degree' and 'generators' are required");
    req.n = expect_int(input["n"], "n");
    req.degree = expect_int(input["degree"], "degree");
    if (req.n < 1)
        fail("n", "ambient dimension must be >= 1");
    if (req.degree < 1)
        fail("degree", "degree must be >= 1");

    const Json& gens = expect_array(input["generators"], "generators");
    if (gens.empty())
        fail("generators", "at least one generator is required");
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const std::string gpath = idx("generators", gi);
        expect_object(gens[gi], gpath);
        check_keys(gens[gi], gpath, {"terms"});
        if (!gens[gi].contains("terms"))
            fail(gpath, "field 'terms' is required");
        const Json& terms = expect_array(gens[gi]["terms"], gpath + ".terms");
        if (terms.empty())
            fail(gpath + ".terms", "a generator needs at least one term");
        HypersurfaceForm::TermMap map;
        for (std::size_t ti = 0; ti < terms.size(); ++ti) {
            const std::string tpath = idx(gpath + ".terms", ti);
            expect_object(terms[ti], tpath);
            check_keys(terms[ti], tpath, {"exp", "coeff"});
            if (!terms[ti].contains("exp") || !terms[ti].contains("coeff"))
                fail(tpath, "fields 'exp' and 'coeff' are required");
            const Json& exp = expect_array(terms[ti]["exp"], tpath + ".exp");
            if (static_cast<int>(exp.size()) != req.n + 1)
                fail(tpath + ".exp", "expected " + std::to_string(req.n + 1) + " exponents");
            std::vector<int> exps;
            int total = 0;
            for (std::size_t ei = 0; ei < exp.size(); ++ei) {
                int e = expect_int(exp[ei], idx(tpath + ".exp", ei));
                if (e < 0)
                    fail(idx(tpath + ".exp", ei), "exponents must be nonnegative");
                exps.push_back(e);
                total += e;
            }
            if (total != req.degree)
                fail(tpath + ".exp", "exponents must sum to the degree");
            Rational coeff = expect_rational(terms[ti]["coeff"], tpath + ".coeff");
            if (coeff == 0)
                fail(tpath + ".coeff", "zero coefficients are not stored");
            ExponentVector mono{std::move(exps)};
            if (map.count(mono))
                fail(tpath + ".exp", "duplicate exponent vector in generator");
            map.emplace(std::move(mono), std::move(coeff));
        }
        req.generators.emplace_back(req.n, req.degree, std::move(map));
    }

    if (input.contains("hyperplanes")) {
        const Json& hyps = expect_array(input["hyperplanes"], "hyperplanes");
        for (std::size_t hi = 0; hi < hyps.size(); ++hi) {
            const std::string hpath = idx("hyperplanes", hi);
            expect_object(hyps[hi], hpath);
            check_keys(hyps[hi], hpath, {"coeffs"});
            if (!hyps[hi].contains("coeffs"))
                fail(hpath, "field 'coeffs' is required");
            const Json& coeffs = expect_array(hyps[hi]["coeffs"], hpath + ".coeffs");
            if (static_cast<int>(coeffs.size()) != req.n + 1)
                fail(hpath + ".coeffs",
                     "expected " + std::to_string(req.n + 1) + " coefficients");
            std::vector<Rational> c;
            for (std::size_t ci = 0; ci < coeffs.size(); ++ci)
                c.push_back(expect_rational(coeffs[ci], idx(hpath + ".coeffs", ci)));
            try {
                req.hyperplanes.emplace_back(std::move(c));
            } catch (const std::invalid_argument& e) {
                fail(hpath, e.what());
            }
        }
        for (std::size_t a = 0; a < req.hyperplanes.size(); ++a)
            for (std::size_t b = a + 1; b < req.hyperplanes.size(); ++b)
                if (req.hyperplanes[a].proportional_to(req.hyperplanes[b]))
                    fail(idx("hyperplanes", b), "hyperplanes must be pairwise distinct");
    }

    if (input.contains("t")) {
        const Json& ts = expect_array(input["t"], "t");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            Rational ti = expect_rational(ts[i], idx("t", i));
            if (ti <= 0)
                fail(idx("t", i), "t weights must be positive");
            req.t.push_back(std::move(ti));
        }
        if (req.t.size() != req.hyperplanes.size())
            fail("t", "needs one weight per hyperplane");
    }

    if (input.contains("base_points")) {
        const Json& pts = expect_array(input["base_points"], "base_points");
        for (std::size_t pi = 0; pi < pts.size(); ++pi) {
            const std::string ppath = idx("base_points", pi);
            const Json& coords = expect_array(pts[pi], ppath);
            if (static_cast<int>(coords.size()) != req.n + 1)
                fail(ppath, "expected " + std::to_string(req.n + 1) + " coordinates");
            std::vector<Rational> c;
            for (std::size_t ci = 0; ci < coords.size(); ++ci)
                c.push_back(expect_rational(coords[ci], idx(ppath, ci)));
            try {
                req.base_points.emplace_back(std::move(c));
            } catch (const std::invalid_argument& e) {
                fail(ppath, e.what());
            }
        }
    }

    if (input.contains("transforms")) {
        const Json& trs = expect_array(input["transforms"], "transforms");
        for (std::size_t ti = 0; ti < trs.size(); ++ti) {
            const std::string tpath = idx("transforms", ti);
            const Json& rows = expect_array(trs[ti], tpath);
            if (static_cast<int>(rows.size()) != req.n + 1)
                fail(tpath, "expected an (n+1) x (n+1) matrix");
            std::vector<std::vector<Rational>> m;
            for (std::size_t ri = 0; ri < rows.size(); ++ri) {
                const Json& row = expect_array(rows[ri], idx(tpath, ri));
                if (static_cast<int>(row.size()) != req.n + 1)
                    fail(idx(tpath, ri), "expected " + std::to_string(req.n + 1) + " entries");
                std::vector<Rational> r;
                for (std::size_t ci = 0; ci < row.size(); ++ci)
                    r.push_back(expect_rational(row[ci], idx(idx(tpath, ri), ci)));
                m.push_back(std::move(r));
            }
            try {
                req.transforms.emplace_back(std::move(m));
            } catch (const std::invalid_argument& e) {
                fail(tpath, e.what());
            }
        }
    }

    if (input.contains("member_verdicts")) {
        const Json& mvs = expect_array(input["member_verdicts"], "member_verdicts");
        std::vector<MemberStability> list;
        for (std::size_t i = 0; i < mvs.size(); ++i) {
            std::string s = expect_string(mvs[i], idx("member_verdicts", i));
            if (s == "stable")
                list.push_back(MemberStability::Stable);
            else if (s == "strictly_semistable")
                list.push_back(MemberStability::StrictlySemistable);
            else
                fail(idx("member_verdicts", i), "expected 'stable' or 'strictly_semistable'");
        }
        req.member_verdicts = std::move(list);
    }

    if (input.contains("certified_min_lct"))
        req.certified_min_lct = expect_rational(input["certified_min_lct"], "certified_min_lct");

    if (input.contains("smooth_members")) {
        if (!input["smooth_members"].is_boolean())
            fail("smooth_members", "expected a boolean");
        req.smooth_members = input["smooth_members"].get<bool>();
    }

    if (input.contains("mode")) {
        std::string m = expect_string(input["mode"], "mode");
        if (m == "exact")
            req.mode = WeightMode::Exact;
        else if (m == "combinatorial")
            req.mode = WeightMode::Combinatorial;
        else
            fail("mode", "expected 'exact' or 'combinatorial'");
    }
    if (input.contains("seed")) {
        if (!input["seed"].is_number_unsigned() && !input["seed"].is_number_integer())
            fail("seed", "expected an integer");
        req.seed = input["seed"].get<std::uint64_t>();
    }
    if (input.contains("random_transforms")) {
        req.random_transforms = expect_int(input["random_transforms"], "random_transforms");
        if (req.random_transforms < 0)
            fail("random_transforms", "must be nonnegative");
    }

    return req;
}

TuplePoint request_tuple(const AnalysisRequest& request)
{
    return TuplePoint(request.n, request.degree, request.generators);
}

std::optional<VgitConfig> request_vgit(const AnalysisRequest& request)
{
    if (request.t.empty() || request.hyperplanes.empty())
        return std::nullopt;
    return VgitConfig(request.t, request.hyperplanes);
}

Json echo_request(const AnalysisRequest& request)
{
    Json out;
    out["n"] = request.n;
    out["degree"] = request.degree;
    Json gens = Json::array();
    for (const auto& g : request.generators) {
        Json terms = Json::array();
        for (const auto& [mono, coeff] : g.terms()) {
            Json term;
            term["exp"] = mono.exponents();
            term["coeff"] = to_string(coeff);
            terms.push_back(std::move(term));
        }
        Json gen;
        gen["terms"] = std::move(terms);
        gens.push_back(std::move(gen));
    }
    out["generators"] = std::move(gens);

    if (!request.hyperplanes.empty()) {
        Json hyps = Json::array();
        for (const auto& h : request.hyperplanes) {
            Json coeffs = Json::array();
            for (const Rational& c : h.coeffs())
                coeffs.push_back(to_string(c));
            Json hyp;
            hyp["coeffs"] = std::move(coeffs);
            hyps.push_back(std::move(hyp));
        }
        out["hyperplanes"] = std::move(hyps);
    }
    if (!request.t.empty()) {
        Json ts = Json::array();
        for (const Rational& ti : request.t)
            ts.push_back(to_string(ti));
        out["t"] = std::move(ts);
    }
    if (!request.base_points.empty()) {
        Json pts = Json::array();
        for (const auto& p : request.base_points)
            pts.push_back(point_json(p));
        out["base_points"] = std::move(pts);
    }
    if (!request.transforms.empty()) {
        Json trs = Json::array();
        for (const auto& a : request.transforms)
            trs.push_back(transform_json(a));
        out["transforms"] = std::move(trs);
    }
    if (request.member_verdicts) {
        Json mvs = Json::array();
        for (MemberStability m : *request.member_verdicts)
            mvs.push_back(m == MemberStability::Stable ? "stable" : "strictly_semistable");
        out["member_verdicts"] = std::move(mvs);
    }
    if (request.certified_min_lct)
        out["certified_min_lct"] = to_string(*request.certified_min_lct);
    if (request.smooth_members)
        out["smooth_members"] = true;
    out["mode"] = weight_mode_name(request.mode);
    out["seed"] = request.seed;
    out["random_transforms"] = request.random_transforms;
    return out;
}

namespace {

Json lct_section(const AnalysisRequest& request, const TuplePoint& tuple)
{
    Json out;
    const int k = tuple.k();
    out["necessary_threshold"] =
        to_string(Rational(Int(request.n + 1), Int(k) * Int(request.degree)));
    Json points = Json::array();
    for (const auto& p : request.base_points) {
        Json entry;
        entry["point"] = point_json(p);

        Json members = Json::array();
        std::vector<Rational> member_lcts;
        for (int gi = 0; gi < k; ++gi) {
            LctValue v = lct_newton(localize(tuple.generator(gi), p));
            Json mem;
            mem["generator"] = gi;
            mem["lct"] = to_string(v.value);
            mem["nondegenerate_assumed"] = v.nondegenerate_assumed;
            members.push_back(std::move(mem));
            member_lcts.push_back(v.value);
        }
        entry["members"] = std::move(members);

        if (k > 1) {
            auto [moved, a] = move_point_to_last_coordinate(tuple, p);
            (void)a;
            auto candidates = candidate_lambdas(moved);
            ProjectivePoint last = ProjectivePoint::coordinate_point(request.n, request.n);
            std::optional<Rational> best;
            std::optional<NormalizedOps> best_ray;
            std::size_t swept = 0;
            for (const auto& ray : candidates.rays) {
                if (!proof_shape(ray))
                    continue;
                ++swept;
                try {
                    Rational bound = tuple_lct_bound(moved, last, ray);
                    if (!best || bound > *best) {
                        best = bound;
                        best_ray = ray;
                    }
                } catch (const std::domain_error&) {
                    continue; // omega = 0 on this ray
                }
            }
            Json bound;
            if (best) {
                bound["best"] = to_string(*best);
                bound["ray"] = lambda_json(*best_ray);
            } else {
                bound = Json(nullptr);
            }
            entry["tuple_lct_bound"] = std::move(bound);
            entry["proof_shape_rays_swept"] = swept;

            auto report = necessary_condition_check(request.n, request.degree, k, member_lcts);
            Json nec;
            nec["threshold"] = to_string(report.threshold);
            nec["stable_possible"] = report.stable_possible();
            nec["semistable_possible"] = report.semistable_possible();
            nec["stable_violations"] = report.stable_violations;
            nec["semistable_violations"] = report.semistable_violations;
            entry["necessary_check"] = std::move(nec);
        }
        points.push_back(std::move(entry));
    }
    out["base_points"] = std::move(points);
    return out;
}

Json walls_section(const TuplePoint& tuple, const AnalysisRequest& request,
                   const CandidateSet& candidates)
{
    auto walls = vgit_walls(tuple, request.hyperplanes, candidates, request.mode);
    Json out;
    Json values = Json::array();
    for (const auto& w : walls.walls)
        values.push_back(to_string(w));
    out["values"] = std::move(values);
    Json records = Json::array();
    for (const auto& rec : walls.records) {
        Json r;
        r["t"] = to_string(rec.t);
        r["ray"] = lambda_json(rec.ray);
        records.push_back(std::move(r));
    }
    out["records"] = std::move(records);
    if (!walls.wall_hyperplanes.empty()) {
        Json rows = Json::array();
        for (const auto& row : walls.wall_hyperplanes) {
            Json r = Json::array();
            for (const Int& x : row)
                r.push_back(x.str());
            rows.push_back(std::move(r));
        }
        out["hyperplane_walls"] = std::move(rows);
    }
    out["regime_boundary"] = to_string(walls.regime_boundary);
    Json outside = Json::array();
    for (const auto& w : walls.outside_regime)
        outside.push_back(to_string(w));
    out["outside_regime"] = std::move(outside);
    return out;
}

} // namespace

Json run_analyze(const AnalysisRequest& request)
{
    auto start = std::chrono::steady_clock::now();

    TuplePoint tuple = request_tuple(request);
    std::optional<VgitConfig> cfg = request_vgit(request);

    for (std::size_t i = 0; i < request.base_points.size(); ++i)
        if (!is_base_point(tuple, request.base_points[i]))
            throw std::invalid_argument(idx("base_points", i) +
                                        ": not a base point of the tuple");

    CandidateSet candidates = candidate_lambdas(tuple, request.hyperplanes);
    TupleWeightContext ctx(tuple);

    Json analysis;
    {
        Json cand;
        cand["ray_count"] = candidates.rays.size();
        cand["arrangement_size"] = candidates.arrangement_size;
        analysis["candidates"] = std::move(cand);
    }

    TorusVerdict git = torus_verdict_with(ctx, candidates, request.mode, nullptr, request.jobs);
    analysis["torus_verdict"] = torus_verdict_json(git);

    if (cfg) {
        TorusVerdict vv = torus_verdict_with(ctx, candidates, request.mode, &*cfg, request.jobs);
        Json vgit;
        vgit["torus_verdict"] = torus_verdict_json(vv);
        vgit["t_sum"] = to_string(cfg->t_sum());
        Rational boundary(Int(tuple.k()) * Int(request.degree), Int(request.n));
        vgit["regime_boundary"] = to_string(boundary);
        vgit["outside_regime"] = cfg->t_sum() >= boundary;
        analysis["vgit"] = std::move(vgit);
    }

    if (!request.hyperplanes.empty())
        analysis["walls"] = walls_section(tuple, request, candidates);

    {
        Json search;
        if (request.smooth_members) {
            search["status"] = "skipped_smooth_members";
            search["transforms_tried"] = 0;
            search["certificate"] = Json(nullptr);
        } else {
            SearchStrategies strategies;
            strategies.permutations = true;
            strategies.user_transforms = request.transforms;
            strategies.base_points = request.base_points;
            strategies.random_transforms = request.random_transforms;
            strategies.seed = request.seed;
            SearchOutcome outcome = destabilizer_search(tuple, request.mode, strategies,
                                                        cfg ? &*cfg : nullptr, request.jobs);
            search["status"] = outcome.certificate ? "found" : "none";
            search["transforms_tried"] = outcome.transforms_tried;
            search["certificate"] =
                outcome.certificate ? certificate_json(*outcome.certificate) : Json(nullptr);
            if (!outcome.certificate)
                search["note"] =
                    "no destabilizer found under searched transforms; absence is not a "
                    "semistability proof";
        }
        analysis["destabilizer_search"] = std::move(search);
    }

    if (request.member_verdicts || request.smooth_members) {
        Json combinator;
        if (request.member_verdicts) {
            auto conclusion = tuple_verdict_from_members(*request.member_verdicts);
            combinator["source"] = "member_verdicts";
            combinator["conclusion"] =
                conclusion ? Json(member_conclusion_name(*conclusion)) : Json(nullptr);
        } else {
            // Only smooth members: every member is stable.
            combinator["source"] = "smooth_members";
            combinator["conclusion"] = member_conclusion_name(TupleMemberConclusion::Stable);
        }
        analysis["member_combinator"] = std::move(combinator);
    }

    if (!request.base_points.empty())
        analysis["lct"] = lct_section(request, tuple);

    if (request.certified_min_lct) {
        Json suff;
        {
            auto git_suff = sufficient_semistable_via_lct(request.n, request.degree, tuple.k(),
                                                          *request.certified_min_lct);
            Json g;
            g["threshold"] = to_string(Rational(Int(request.n + 1), Int(request.degree)));
            g["conclusion"] = git_suff ? Json(sufficiency_name(*git_suff)) : Json(nullptr);
            suff["git"] = std::move(g);
        }
        if (!request.t.empty()) {
            Json v;
            try {
                auto vg = sufficient_vgit_via_lct(request.n, request.degree, tuple.k(), request.t,
                                                  *request.certified_min_lct);
                Rational t_sum = 0;
                for (const Rational& ti : request.t)
                    t_sum += ti;
                Rational denom = Rational(Int(tuple.k()) * Int(request.degree)) -
                                 Rational(request.n) * t_sum;
                v["threshold"] = to_string(Rational(Int(tuple.k()) * Int(request.n + 1)) / denom);
                v["conclusion"] = vg ? Json(sufficiency_name(*vg)) : Json(nullptr);
            } catch (const OutsideRegime& e) {
                v["conclusion"] = Json(nullptr);
                v["outside_regime"] = e.what();
            }
            suff["vgit"] = std::move(v);
        }
        analysis["sufficiency"] = std::move(suff);
    }

    Json report;
    report["request"] = echo_request(request);
    report["analysis"] = std::move(analysis);
    if (request.include_timing) {
        auto elapsed = std::chrono::steady_clock::now() - start;
        report["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    return report;
}

Json run_vgit_scan(const AnalysisRequest& request, const Rational& t_from, const Rational& t_to,
                   const Rational& t_step)
{
    auto start = std::chrono::steady_clock::now();

    if (request.hyperplanes.size() != 1)
        throw std::invalid_argument("vgit-scan: the t-range scan needs exactly one hyperplane");
    if (t_from <= 0 || t_to < t_from || t_step <= 0)
        throw std::invalid_argument("vgit-scan: need 0 < t_from <= t_to and a positive step");

    TuplePoint tuple = request_tuple(request);
    CandidateSet candidates = candidate_lambdas(tuple, request.hyperplanes);
    TupleWeightContext ctx(tuple);
    VgitWalls walls = vgit_walls(tuple, request.hyperplanes, candidates, request.mode);

    std::vector<Rational> grid_t;
    for (Rational t = t_from; t <= t_to; t += t_step)
        grid_t.push_back(t);
    std::vector<std::optional<TorusVerdict>> verdicts(grid_t.size());
    parallel_for(grid_t.size(), request.jobs, [&](std::size_t i) {
        VgitConfig cfg({grid_t[i]}, request.hyperplanes);
        verdicts[i] = torus_verdict_with(ctx, candidates, request.mode, &cfg, 1);
    });

    // The verdict must be constant strictly between consecutive walls.
    auto wall_interval = [&](const Rational& t) {
        std::size_t lo = 0;
        for (const auto& w : walls.walls)
            if (w < t)
                ++lo;
        return lo;
    };
    for (std::size_t i = 1; i < grid_t.size(); ++i) {
        bool on_wall_i = std::count(walls.walls.begin(), walls.walls.end(), grid_t[i]) > 0;
        bool on_wall_prev = std::count(walls.walls.begin(), walls.walls.end(), grid_t[i - 1]) > 0;
        if (on_wall_i || on_wall_prev)
            continue;
        if (wall_interval(grid_t[i]) == wall_interval(grid_t[i - 1]) &&
            verdicts[i]->stability != verdicts[i - 1]->stability)
            throw std::logic_error(
                "vgit-scan: verdict changed between walls (internal invariant violation)");
    }

    Json scan;
    {
        Json values = Json::array();
        for (const auto& w : walls.walls)
            values.push_back(to_string(w));
        scan["walls"] = std::move(values);
        Json records = Json::array();
        for (const auto& rec : walls.records) {
            Json r;
            r["t"] = to_string(rec.t);
            r["ray"] = lambda_json(rec.ray);
            records.push_back(std::move(r));
        }
        scan["wall_records"] = std::move(records);
        scan["regime_boundary"] = to_string(walls.regime_boundary);
        Json outside = Json::array();
        for (const auto& w : walls.outside_regime)
            outside.push_back(to_string(w));
        scan["outside_regime_walls"] = std::move(outside);
    }
    scan["t_from"] = to_string(t_from);
    scan["t_to"] = to_string(t_to);
    scan["t_step"] = to_string(t_step);
    {
        Json grid = Json::array();
        bool crosses = false;
        for (std::size_t i = 0; i < grid_t.size(); ++i) {
            Json g;
            g["t"] = to_string(grid_t[i]);
            g["stability"] = torus_stability_name(verdicts[i]->stability);
            if (grid_t[i] >= walls.regime_boundary)
                crosses = true;
            grid.push_back(std::move(g));
        }
        scan["grid"] = std::move(grid);
        scan["grid_crosses_regime_boundary"] = crosses;
    }
    scan["constant_between_walls"] = true;

    Json report;
    report["request"] = echo_request(request);
    report["vgit_scan"] = std::move(scan);
    if (request.include_timing) {
        auto elapsed = std::chrono::steady_clock::now() - start;
        report["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    return report;
}

Json run_lct(const AnalysisRequest& request)
{
    auto start = std::chrono::steady_clock::now();

    if (request.base_points.empty())
        throw std::invalid_argument("lct: at least one point is required in 'base_points'");
    TuplePoint tuple = request_tuple(request);
    const int k = tuple.k();

    Json section;
    {
        Json thresholds;
        thresholds["sufficient_semistable"] =
            to_string(Rational(Int(request.n + 1), Int(request.degree)));
        thresholds["necessary"] =
            to_string(Rational(Int(request.n + 1), Int(k) * Int(request.degree)));
        if (!request.t.empty()) {
            Rational t_sum = 0;
            for (const Rational& ti : request.t)
                t_sum += ti;
            Rational denom =
                Rational(Int(k) * Int(request.degree)) - Rational(request.n) * t_sum;
            if (denom > 0)
                thresholds["vgit_sufficient"] =
                    to_string(Rational(Int(k) * Int(request.n + 1)) / denom);
            else
                thresholds["vgit_sufficient"] = "outside_regime";
        }
        section["thresholds"] = std::move(thresholds);
    }

    Json points = Json::array();
    for (std::size_t pi = 0; pi < request.base_points.size(); ++pi) {
        const auto& p = request.base_points[pi];
        Json entry;
        entry["point"] = point_json(p);
        Json members = Json::array();
        for (int gi = 0; gi < k; ++gi) {
            LctValue v = [&] {
                try {
                    return lct_newton(localize(tuple.generator(gi), p));
                } catch (const PointNotOnHypersurface&) {
                    throw PointNotOnHypersurface(idx("base_points", pi) +
                                                 ": point is not on generator " +
                                                 std::to_string(gi));
                }
            }();
            Json mem;
            mem["generator"] = gi;
            mem["lct"] = to_string(v.value);
            mem["nondegenerate_assumed"] = v.nondegenerate_assumed;
            members.push_back(std::move(mem));
        }
        entry["members"] = std::move(members);
        points.push_back(std::move(entry));
    }
    section["points"] = std::move(points);

    Json report;
    report["request"] = echo_request(request);
    report["lct"] = std::move(section);
    if (request.include_timing) {
        auto elapsed = std::chrono::steady_clock::now() - start;
        report["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    return report;
}

std::string render_summary(const Json& report)
{
    std::ostringstream out;
    const Json& req = report.at("request");
    out << "tuple: n=" << req.at("n").get<int>() << " degree=" << req.at("degree").get<int>()
        << " k=" << req.at("generators").size() << " mode=" << req.at("mode").get<std::string>()
        << " seed=" << req.at("seed") << "\n";

    if (report.contains("analysis")) {
        const Json& a = report.at("analysis");
        const Json& tv = a.at("torus_verdict");
        const Json& counts = tv.at("classification_counts");
        out << "torus verdict: " << tv.at("stability").get<std::string>() << " (rays "
            << tv.at("rays_checked") << ": destabilized " << counts.at("destabilized")
            << ", equality " << counts.at("equality") << ", compatible "
            << counts.at("compatible") << ")\n";
        if (!tv.at("witness").is_null()) {
            const Json& w = tv.at("witness");
            out << "  witness: lambda=" << w.at("lambda").dump()
                << " omega=" << w.at("omega").get<std::string>()
                << " threshold=" << w.at("threshold").get<std::string>() << "\n";
        }
        if (a.contains("vgit"))
            out << "vgit verdict (fixed t): "
                << a.at("vgit").at("torus_verdict").at("stability").get<std::string>() << "\n";
        if (a.contains("walls")) {
            out << "walls:";
            for (const auto& w : a.at("walls").at("values"))
                out << " " << w.get<std::string>();
            out << "  (regime boundary "
                << a.at("walls").at("regime_boundary").get<std::string>() << ")\n";
        }
        const Json& ds = a.at("destabilizer_search");
        out << "destabilizer search: " << ds.at("status").get<std::string>();
        if (!ds.at("certificate").is_null())
            out << " via " << ds.at("certificate").at("transform_label").get<std::string>()
                << " at lambda=" << ds.at("certificate").at("lambda").dump();
        out << "\n";
        if (a.contains("member_combinator") &&
            !a.at("member_combinator").at("conclusion").is_null())
            out << "member combinator: "
                << a.at("member_combinator").at("conclusion").get<std::string>() << "\n";
        if (a.contains("lct")) {
            out << "lct necessary threshold: "
                << a.at("lct").at("necessary_threshold").get<std::string>() << "\n";
            for (const auto& pt : a.at("lct").at("base_points")) {
                out << "  point " << pt.at("point").dump() << ":";
                for (const auto& mem : pt.at("members"))
                    out << " lct(f" << mem.at("generator") << ")="
                        << mem.at("lct").get<std::string>();
                if (pt.contains("tuple_lct_bound") && !pt.at("tuple_lct_bound").is_null())
                    out << " bound=" << pt.at("tuple_lct_bound").at("best").get<std::string>();
                out << "\n";
            }
        }
        if (a.contains("sufficiency")) {
            const Json& s = a.at("sufficiency");
            out << "sufficiency via lct:";
            if (s.contains("git"))
                out << " git="
                    << (s.at("git").at("conclusion").is_null()
                            ? "none"
                            : s.at("git").at("conclusion").get<std::string>());
            if (s.contains("vgit"))
                out << " vgit="
                    << (s.at("vgit").at("conclusion").is_null()
                            ? "none"
                            : s.at("vgit").at("conclusion").get<std::string>());
            out << "\n";
        }
    }

    if (report.contains("vgit_scan")) {
        const Json& scan = report.at("vgit_scan");
        out << "walls:";
        for (const auto& w : scan.at("walls"))
            out << " " << w.get<std::string>();
        out << "\n";
        out << "grid (" << scan.at("t_from").get<std::string>() << " to "
            << scan.at("t_to").get<std::string>() << " step "
            << scan.at("t_step").get<std::string>() << "):\n";
        for (const auto& g : scan.at("grid"))
            out << "  t=" << g.at("t").get<std::string>() << "  "
                << g.at("stability").get<std::string>() << "\n";
    }

    if (report.contains("lct")) {
        const Json& sec = report.at("lct");
        out << "thresholds: " << sec.at("thresholds").dump() << "\n";
        for (const auto& pt : sec.at("points")) {
            out << "point " << pt.at("point").dump() << ":";
            for (const auto& mem : pt.at("members"))
                out << " lct(f" << mem.at("generator") << ")="
                    << mem.at("lct").get<std::string>();
            out << "\n";
        }
    }

    if (report.contains("timing_ms"))
        out << "timing_ms: " << report.at("timing_ms") << "\n";
    return out.str();
}

} // namespace gitstab
