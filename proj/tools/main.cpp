#include "gitstab/analysis.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct CommonOptions {
    std::string input_path;
    std::string output_path;
    std::string format = "json";
    std::string mode;
    std::uint64_t seed = 0;
    int random_transforms = -1;
    int jobs = 1;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("input", opts.input_path, "input JSON file")->required();
    cmd->add_option("--output", opts.output_path, "write the report to this path");
    cmd->add_option("--format", opts.format, "json|summary")
        ->check(CLI::IsMember({"json", "summary"}));
    cmd->add_option("--mode", opts.mode, "exact|combinatorial (default exact)")
        ->check(CLI::IsMember({"exact", "combinatorial"}));
    cmd->add_option("--seed", opts.seed, "seed for the random-transform strategy");
    cmd->add_option("--random-transforms", opts.random_transforms,
                    "number of seeded random frames to search");
    cmd->add_option("--jobs", opts.jobs, "worker count (reports do not depend on it)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--timing", opts.timing, "include wall-clock timing in the report");
}

gitstab::AnalysisRequest load_request(const CommonOptions& opts, const CLI::App* cmd)
{
    std::ifstream in(opts.input_path);
    if (!in)
        throw std::invalid_argument("cannot open input file '" + opts.input_path + "'");
    gitstab::Json doc;
    try {
        doc = gitstab::Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
    gitstab::AnalysisRequest req = gitstab::parse_request(doc);
    if (cmd->count("--mode"))
        req.mode = opts.mode == "combinatorial" ? gitstab::WeightMode::Combinatorial
                                                : gitstab::WeightMode::Exact;
    if (cmd->count("--seed"))
        req.seed = opts.seed;
    if (cmd->count("--random-transforms")) {
        if (opts.random_transforms < 0)
            throw std::invalid_argument("--random-transforms must be nonnegative");
        req.random_transforms = opts.random_transforms;
    }
    req.jobs = opts.jobs;
    req.include_timing = opts.timing;
    return req;
}

void emit(const gitstab::Json& report, const CommonOptions& opts)
{
    std::string text =
        opts.format == "summary" ? gitstab::render_summary(report) : report.dump(2) + "\n";
    if (opts.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.output_path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file '" + opts.output_path + "'");
    out << text;
}

// "a/b:c/d"
std::pair<gitstab::Rational, gitstab::Rational> parse_range(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--t-range expects \"a/b:c/d\"");
    return {gitstab::parse_rational(text.substr(0, colon)),
            gitstab::parse_rational(text.substr(colon + 1))};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact torus-stability analysis of tuples of hypersurfaces"};
    app.require_subcommand(1);

    CommonOptions analyze_opts, scan_opts, lct_opts;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "torus verdict, destabilizer search, lct criteria, VGIT walls");
    add_common(analyze, analyze_opts);

    CLI::App* scan =
        app.add_subcommand("vgit-scan", "wall list and verdict table over a t-range");
    add_common(scan, scan_opts);
    std::string t_range, t_grid;
    scan->add_option("--t-range", t_range, "t interval \"a/b:c/d\"")->required();
    scan->add_option("--t-grid", t_grid, "grid step \"p/q\"")->required();

    CLI::App* lct = app.add_subcommand("lct", "local lct oracle values and criterion thresholds");
    add_common(lct, lct_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            auto req = load_request(analyze_opts, analyze);
            emit(gitstab::run_analyze(req), analyze_opts);
        } else if (scan->parsed()) {
            auto req = load_request(scan_opts, scan);
            auto [from, to] = parse_range(t_range);
            emit(gitstab::run_vgit_scan(req, from, to, gitstab::parse_rational(t_grid)),
                 scan_opts);
        } else if (lct->parsed()) {
            auto req = load_request(lct_opts, lct);
            emit(gitstab::run_lct(req), lct_opts);
        }
    } catch (const gitstab::DependentGenerators& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const gitstab::PointNotOnHypersurface& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
