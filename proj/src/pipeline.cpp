#include "univoque/pipeline.hpp"

#include "univoque/error.hpp"

namespace univoque {

DimensionResult solve_sft(const SftSpec& sft, std::span<const double> ratios, double bisection_tolerance) {
    DimensionResult out;
    try {
        out.graph = build_graph(sft, ratios);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyGraph) {
            throw;
        }
        out.note = "pruning removed every vertex; the univoque set is countable";
        return out;
    }
    out.report = solve_dimension(out.graph->digraph, bisection_tolerance);
    return out;
}

BetaRun run_beta_pipeline(const BetaBase& b, const GreedyExpansion& ge, const BetaOptions& options) {
    const LexWindow window = find_lex_window(ge, options.search_bound);
    SftSpec sft = sft_from_lex(ge, window, options.enumeration_budget);
    const std::vector<double> ratios(static_cast<std::size_t>(b.digit_count()), 1.0 / b.beta());
    DimensionResult result = solve_sft(sft, ratios, options.bisection_tolerance);
    return {b, ge, window, std::move(sft), std::move(result)};
}

BetaRun run_beta_pipeline(const BetaBase& b, const BetaOptions& options) {
    return run_beta_pipeline(b, greedy_expansion_of_one(b, options.search_bound), options);
}

BetaRun run_beta_pipeline(const PeriodicExpansion& e, double tolerance, const BetaOptions& options) {
    const BetaBase b(beta_from_periodic_expansion(e, tolerance), tolerance);
    return run_beta_pipeline(b, greedy_expansion_from(e, b.max_digit(), options.search_bound), options);
}

IfsRun run_ifs_pipeline(const Ifs& ifs, const SynthOptions& options, std::span<const Interval> extra_holes,
                        double bisection_tolerance) {
    IfsRun run;
    run.attractor = attractor(ifs);
    try {
        run.regions = switch_regions(ifs, run.attractor);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoOverlap) {
            throw;
        }
        // Every point has exactly one coding.
        run.result.report.dimension = 1.0;
        run.result.note = "first-level intervals do not overlap; every point is univoque";
        return run;
    }
    std::vector<Interval> holes = region_spans(run.regions);
    holes.insert(holes.end(), extra_holes.begin(), extra_holes.end());
    run.holes = merge_intervals(std::move(holes));

    try {
        run.synthesis = synthesize_sft(ifs, run.attractor, run.holes, options);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::AllForbidden) {
            throw;
        }
        run.result.note = "every cylinder meets an avoided region; the univoque set is countable";
        return run;
    }
    run.result = solve_sft(run.synthesis->sft, ifs.ratios(), bisection_tolerance);
    return run;
}

}  // namespace univoque
