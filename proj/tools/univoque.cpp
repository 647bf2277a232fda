// Command-line front end: dimension reports, DOT graphs, expansions, checks.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "univoque/beta.hpp"
#include "univoque/error.hpp"
#include "univoque/graph.hpp"
#include "univoque/io.hpp"
#include "univoque/oracle.hpp"
#include "univoque/pipeline.hpp"

using namespace univoque;

namespace {

struct Instance {
    std::optional<double> beta;
    std::string expansion;
    std::string spec;
    double tolerance = kDefaultTolerance;
    CLI::Option* tolerance_opt = nullptr;
    std::size_t search_bound = kDefaultSearchBound;
    std::size_t depth_max = kDefaultWitnessDepth;
    std::uint64_t budget = kDefaultEnumerationBudget;
    double bisection_tolerance = kBisectionTolerance;
};

struct Outputs {
    std::string report;
    std::string dot;
    bool diagnostics = false;
};

void add_beta_source(CLI::App* app, Instance& in) {
    app->add_option("--beta", in.beta, "base beta > 1, non-integer");
    app->add_option("--expansion", in.expansion, "greedy expansion of 1, e.g. \"111(00001)\"; wins over --beta");
}

void add_tuning(CLI::App* app, Instance& in) {
    in.tolerance_opt = app->add_option("--tolerance", in.tolerance, "boundary tolerance")->check(CLI::PositiveNumber);
    app->add_option("--search-bound", in.search_bound, "digits searched for the lexicographic window");
    app->add_option("--depth-max", in.depth_max, "depth bound of the endpoint witness search");
    app->add_option("--budget", in.budget, "maximum number of words enumerated");
    app->add_option("--bisection-tolerance", in.bisection_tolerance, "bracket width for Phi(t) = 1")
        ->check(CLI::PositiveNumber);
}

void add_outputs(CLI::App* app, Outputs& out) {
    app->add_option("--report", out.report, "also write the JSON report to this file");
    app->add_option("--dot", out.dot, "write the graph in DOT format to this file");
    app->add_flag("--diagnostics", out.diagnostics, "include the forbidden words and vertex labels");
}

BetaOptions beta_options(const Instance& in) {
    return {in.search_bound, in.budget, in.bisection_tolerance};
}

SynthOptions synth_options(const Instance& in) {
    SynthOptions o;
    o.depth_max = in.depth_max;
    o.enumeration_budget = in.budget;
    return o;
}

bool has_beta_source(const Instance& in) {
    return in.beta.has_value() || !in.expansion.empty();
}

// Base plus the digits of its greedy expansion of 1; the expansion string, if
// given, decides both.
std::pair<BetaBase, GreedyExpansion> beta_source(const Instance& in) {
    if (!in.expansion.empty()) {
        const PeriodicExpansion e = parse_expansion(in.expansion);
        const BetaBase b(beta_from_periodic_expansion(e, in.tolerance), in.tolerance);
        return {b, greedy_expansion_from(e, b.max_digit(), in.search_bound)};
    }
    if (!in.beta) {
        throw Error(ErrorCode::InvalidInput, "give --beta or --expansion");
    }
    const BetaBase b(*in.beta, in.tolerance);
    return {b, greedy_expansion_of_one(b, in.search_bound)};
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    }
}

Ifs load_ifs(const Instance& in) {
    Ifs ifs = parse_ifs(read_file(in.spec));
    if (in.tolerance_opt != nullptr && in.tolerance_opt->count() > 0) {
        ifs = Ifs(ifs.maps(), in.tolerance);
    }
    return ifs;
}

json diagnostics_json(const SftSpec& sft, const DimensionResult& r) {
    json vertices = json::array();
    if (r.graph) {
        for (std::size_t v = 0; v < r.graph->vertex_count(); ++v) {
            vertices.push_back(format_word(r.graph->vertex_word(v), r.graph->alphabet));
        }
    }
    return {{"sft", to_json(sft)}, {"vertices", vertices}};
}

std::string dot_of(const DimensionResult& r) {
    return r.graph ? export_dot(*r.graph) : export_dot(UnivoqueGraph{});
}

void emit(json report, const Outputs& out, std::chrono::steady_clock::time_point start) {
    report["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out.report.empty()) {
        write_file(out.report, text);
    }
}

// Every budget and tolerance in force, so a report can be reproduced.
json config_json(const Instance& in) {
    return {{"tolerance", in.tolerance},
            {"search_bound", in.search_bound},
            {"depth_max", in.depth_max},
            {"enumeration_budget", in.budget},
            {"bisection_tolerance", in.bisection_tolerance}};
}

json with_schema(const char* command, json body, const Instance& in) {
    json out = {{"schema", kReportSchema}, {"command", command}, {"config", config_json(in)}};
    for (auto& [k, v] : body.items()) {
        out[k] = v;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hausdorff dimension of univoque sets of interval IFS"};
    app.require_subcommand(1);

    Instance in;
    Outputs out;
    double x = 1.0;
    std::size_t n_digits = 30;
    std::size_t depth = 40;
    std::size_t max_n = 40;
    double radius = 1e-3;
    std::size_t steps = 5;

    auto* dim = app.add_subcommand("dim", "compute the dimension");
    dim->require_subcommand(1);
    auto* dim_beta = dim->add_subcommand("beta", "beta-expansion pipeline");
    add_beta_source(dim_beta, in);
    add_tuning(dim_beta, in);
    add_outputs(dim_beta, out);
    auto* dim_ifs = dim->add_subcommand("ifs", "general IFS pipeline");
    dim_ifs->add_option("--spec", in.spec, "IFS JSON file")->required();
    add_tuning(dim_ifs, in);
    add_outputs(dim_ifs, out);

    auto* expand = app.add_subcommand("expand", "greedy and lazy digits");
    add_beta_source(expand, in);
    add_tuning(expand, in);
    expand->add_option("--x", x, "point to expand (default 1)");
    expand->add_option("-n,--digits", n_digits, "number of digits");

    auto* graph = app.add_subcommand("graph", "print the graph in DOT format");
    add_beta_source(graph, in);
    graph->add_option("--spec", in.spec, "IFS JSON file instead of a base");
    add_tuning(graph, in);
    graph->add_option("--dot", out.dot, "write to this file instead of stdout");

    auto* check = app.add_subcommand("check", "compare the lexicographic and geometric pipelines");
    add_beta_source(check, in);
    add_tuning(check, in);
    check->add_option("--max-n", max_n, "compare word counts up to this length");
    check->add_option("--report", out.report, "also write the JSON report to this file");

    auto* scan = app.add_subcommand("scan", "recompute the SFT on a grid around beta");
    add_beta_source(scan, in);
    add_tuning(scan, in);
    scan->add_option("--radius", radius, "half-width of the grid")->check(CLI::NonNegativeNumber);
    scan->add_option("--steps", steps, "grid points on each side");
    scan->add_option("--report", out.report, "also write the JSON report to this file");

    auto* oracle = app.add_subcommand("oracle", "test whether a point has a unique coding");
    add_beta_source(oracle, in);
    oracle->add_option("--spec", in.spec, "IFS JSON file instead of a base");
    add_tuning(oracle, in);
    oracle->add_option("--x", x, "point of the attractor")->required();
    oracle->add_option("--depth", depth, "orbit depth");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : exit_code(ErrorCode::InvalidInput);
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (dim_beta->parsed()) {
            const auto [b, ge] = beta_source(in);
            const BetaRun run = run_beta_pipeline(b, ge, beta_options(in));
            json report = with_schema("dim beta", to_json(run), in);
            if (!in.expansion.empty()) {
                report["instance"] = {{"expansion", in.expansion}};
            } else {
                report["instance"] = {{"beta", *in.beta}};
            }
            if (out.diagnostics) {
                report["diagnostics"] = diagnostics_json(run.sft, run.result);
            }
            if (!out.dot.empty()) {
                write_file(out.dot, dot_of(run.result));
            }
            emit(std::move(report), out, start);
        } else if (dim_ifs->parsed()) {
            const Ifs ifs = load_ifs(in);
            const IfsRun run = run_ifs_pipeline(ifs, synth_options(in), {}, in.bisection_tolerance);
            json report = with_schema("dim ifs", to_json(run), in);
            report["instance"] = to_json(ifs);
            if (out.diagnostics && run.synthesis) {
                report["diagnostics"] = diagnostics_json(run.synthesis->sft, run.result);
            }
            if (!out.dot.empty()) {
                write_file(out.dot, dot_of(run.result));
            }
            emit(std::move(report), out, start);
        } else if (expand->parsed()) {
            const auto [b, ge] = beta_source(in);
            const auto verdict = is_univoque_by_greedy_lazy(b, x, n_digits);
            json report = with_schema("expand", {
                {"beta", b.beta()},
                {"x", x},
                {"greedy", format_word(greedy_digits(b, x, n_digits), b.digit_count())},
                {"lazy", format_word(lazy_digits(b, x, n_digits), b.digit_count())},
                {"greedy_lazy_verdict", std::string(to_string(verdict.verdict))},
                {"expansion_of_one", to_json(ge, n_digits)},
            }, in);
            emit(std::move(report), out, start);
        } else if (graph->parsed()) {
            std::string dot;
            if (!in.spec.empty()) {
                dot = dot_of(run_ifs_pipeline(load_ifs(in), synth_options(in), {}, in.bisection_tolerance).result);
            } else {
                const auto [b, ge] = beta_source(in);
                dot = dot_of(run_beta_pipeline(b, ge, beta_options(in)).result);
            }
            if (out.dot.empty()) {
                std::cout << dot;
            } else {
                write_file(out.dot, dot);
            }
        } else if (check->parsed()) {
            const auto [b, ge] = beta_source(in);
            AgreementOptions opts;
            opts.max_n = max_n;
            opts.beta = beta_options(in);
            opts.synth = synth_options(in);
            const AgreementReport r = pipelines_agree(b, ge, opts);
            emit(with_schema("check", to_json(r), in), out, start);
            if (r.beta_path_available && !r.agree()) {
                std::cerr << "error: Mismatch: " << r.note << "\n";
                return exit_code(ErrorCode::Mismatch);
            }
        } else if (scan->parsed()) {
            const auto [b, ge] = beta_source(in);
            const ScanReport r = dimension_locally_constant_scan(b, radius, steps, beta_options(in));
            emit(with_schema("scan", to_json(r), in), out, start);
        } else if (oracle->parsed()) {
            json report;
            if (!in.spec.empty()) {
                const Ifs ifs = load_ifs(in);
                const Interval k = attractor(ifs);
                report = to_json(is_univoque_point(ifs, k, switch_regions(ifs, k), x, depth));
            } else {
                const auto [b, ge] = beta_source(in);
                const Ifs ifs = beta_ifs(b);
                const Interval k = attractor(ifs);
                report = to_json(is_univoque_point(ifs, k, switch_regions(ifs, k), x, depth));
                report["beta"] = b.beta();
            }
            report["x"] = x;
            report["depth"] = depth;
            emit(with_schema("oracle", std::move(report), in), out, start);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory; lower --budget\n";
        return exit_code(ErrorCode::Intractable);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
