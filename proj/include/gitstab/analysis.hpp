#pragma once

#include "gitstab/lct.hpp"
#include "gitstab/opssearch.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gitstab {

using Json = nlohmann::ordered_json;

// A parsed and validated input document plus execution options. Everything
// that influences verdicts is echoed into reports; execution details (jobs,
// timing) are not, so reports are byte-identical across worker counts.
struct AnalysisRequest {
    int n = 0;
    int degree = 0;
    std::vector<HypersurfaceForm> generators;
    std::vector<HyperplaneForm> hyperplanes;
    std::vector<Rational> t;
    std::vector<ProjectivePoint> base_points;
    std::vector<ProjectiveTransform> transforms;
    std::optional<std::vector<MemberStability>> member_verdicts;
    std::optional<Rational> certified_min_lct;
    bool smooth_members = false;

    WeightMode mode = WeightMode::Exact;
    std::uint64_t seed = 0;
    int random_transforms = 0;

    int jobs = 1;
    bool include_timing = false;
};

// Strict parsing with field-path diagnostics; rejects decimal coefficient
// literals, exponent lists that do not sum to the degree, and dependent
// generators (surfacing the offending relation).
AnalysisRequest parse_request(const Json& input);

TuplePoint request_tuple(const AnalysisRequest& request);
std::optional<VgitConfig> request_vgit(const AnalysisRequest& request);

// Canonical echo of the request; parsing it back reproduces the analysis.
Json echo_request(const AnalysisRequest& request);

Json run_analyze(const AnalysisRequest& request);
Json run_vgit_scan(const AnalysisRequest& request, const Rational& t_from, const Rational& t_to,
                   const Rational& t_step);
Json run_lct(const AnalysisRequest& request);

// Human-readable rendering of a report; never a second source of truth.
std::string render_summary(const Json& report);

} // namespace gitstab
