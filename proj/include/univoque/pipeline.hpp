#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "univoque/beta.hpp"
#include "univoque/graph.hpp"
#include "univoque/ifs.hpp"
#include "univoque/sft.hpp"

namespace univoque {

// Graph and dimension for one SFT. The graph is absent when pruning removes
// every vertex (dimension 0) or when no SFT was produced at all.
struct DimensionResult {
    std::optional<UnivoqueGraph> graph;
    SccReport report;
    std::string note;

    double dimension() const { return report.dimension; }
};

DimensionResult solve_sft(const SftSpec& sft, std::span<const double> ratios,
                          double bisection_tolerance = kBisectionTolerance);

struct BetaOptions {
    std::size_t search_bound = kDefaultSearchBound;
    std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
    double bisection_tolerance = kBisectionTolerance;
};

// greedy expansion of 1 -> lexicographic window -> SFT -> graph -> dimension.
struct BetaRun {
    BetaBase base;
    GreedyExpansion expansion;
    LexWindow window;
    SftSpec sft;
    DimensionResult result;
};

BetaRun run_beta_pipeline(const BetaBase& b, const GreedyExpansion& ge, const BetaOptions& options = {});
BetaRun run_beta_pipeline(const BetaBase& b, const BetaOptions& options = {});
// Solves for beta first; the periodic form then supplies the digits.
BetaRun run_beta_pipeline(const PeriodicExpansion& e, double tolerance = kDefaultTolerance,
                          const BetaOptions& options = {});

// attractor -> switch regions -> witnesses, delta, L -> forbidden words ->
// graph -> dimension. `extra_holes` are avoided in addition to the switch
// regions.
struct IfsRun {
    Interval attractor;
    std::vector<SwitchRegion> regions;
    std::vector<Interval> holes;
    std::optional<Synthesis> synthesis;
    DimensionResult result;
};

IfsRun run_ifs_pipeline(const Ifs& ifs, const SynthOptions& options = {}, std::span<const Interval> extra_holes = {},
                        double bisection_tolerance = kBisectionTolerance);

}  // namespace univoque
