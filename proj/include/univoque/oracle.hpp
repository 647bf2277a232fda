#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "univoque/beta.hpp"
#include "univoque/graph.hpp"
#include "univoque/ifs.hpp"
#include "univoque/pipeline.hpp"
#include "univoque/sft.hpp"
#include "univoque/verdict.hpp"

namespace univoque {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2024;

// Prefix of the orbit followed so far plus two branches admissible at its end.
struct BranchWitness {
    Word prefix;
    Symbol first = 0;
    Symbol second = 0;
};

struct UniquenessVerdict {
    Verdict verdict = Verdict::Unique;
    std::size_t depth_reached = 0;
    std::optional<BranchWitness> witness;  // present iff NotUnique
    Word coding;                           // symbols followed along the orbit
};

// Follows the orbit of x under the inverse branches. Two admissible branches
// at some step give NOT_UNIQUE; coming within the tolerance of a region
// boundary gives INDETERMINATE; otherwise UNIQUE to `depth`.
UniquenessVerdict is_univoque_point(const Ifs& ifs, const Interval& attractor, std::span<const SwitchRegion> regions,
                                    double x, std::size_t depth);

// Words of length n with no forbidden length-L window (transfer matrix).
BigCount count_allowed_words(const SftSpec& sft, std::size_t n);
// Words of length n readable along the pruned graph, i.e. words that extend to
// an infinite sequence of the shift. Zero for an absent graph.
BigCount count_language_words(const std::optional<UnivoqueGraph>& g, std::size_t n);

struct AgreementOptions {
    std::size_t max_n = 40;
    double dimension_tolerance = 1e-6;
    BetaOptions beta;
    SynthOptions synth;
};

// Lexicographic SFT against the geometric one. Word counts are compared with
// the geometric synthesis restricted to the core, where the lexicographic SFT
// lives; dimensions are compared against the plain geometric synthesis too.
struct AgreementReport {
    double beta = 0.0;
    bool beta_path_available = true;
    std::string note;
    std::size_t max_n = 0;
    std::vector<BigCount> lex_counts;   // index n-1
    std::vector<BigCount> core_counts;  // index n-1
    std::optional<std::size_t> first_mismatch;
    int lex_level = 0;
    int core_level = 0;
    int plain_level = 0;
    double lex_dimension = 0.0;
    double core_dimension = 0.0;
    double plain_dimension = 0.0;
    bool counts_agree = false;
    bool dimensions_agree = false;

    bool agree() const { return beta_path_available && counts_agree && dimensions_agree; }
};

AgreementReport pipelines_agree(const BetaBase& b, const GreedyExpansion& ge, const AgreementOptions& options = {});
AgreementReport pipelines_agree(const BetaBase& b, const AgreementOptions& options = {});

struct ScanPoint {
    double beta = 0.0;
    bool ok = false;
    std::string error;
    bool same_forbidden = false;
    std::size_t p = 0;
    double lambda = 0.0;     // Phi(0) of the dominant component
    double dimension = 0.0;  // bisection root
    double formula = 0.0;    // log lambda / log beta'
};

struct ScanReport {
    double center = 0.0;
    double radius = 0.0;
    std::size_t steps = 0;
    std::vector<ScanPoint> points;  // increasing beta'
    // Contiguous run of points around the centre sharing the centre's
    // forbidden set; empty when the centre itself fails.
    std::optional<std::size_t> stable_first;
    std::optional<std::size_t> stable_last;
    bool strictly_decreasing = false;
    double max_formula_error = 0.0;

    bool stable_nonempty() const { return stable_first.has_value(); }
};

// Recomputes the lexicographic SFT on the grid beta + k*radius/steps,
// k = -steps..steps.
ScanReport dimension_locally_constant_scan(const BetaBase& b, double radius, std::size_t steps,
                                           const BetaOptions& options = {});

// Uniform random walk of `length` symbols in the graph.
Word random_walk(const UnivoqueGraph& g, std::size_t length, std::mt19937_64& rng);

struct VerdictTally {
    std::size_t total = 0;
    std::size_t unique = 0;
    std::size_t not_unique = 0;
    std::size_t indeterminate = 0;
    std::size_t rejected = 0;  // drawn but discarded (forbidden samples only)

    void add(Verdict v);
};

struct SamplingReport {
    std::uint64_t seed = kDefaultSeed;
    std::size_t samples = 0;
    std::size_t length = 0;
    std::size_t depth = 0;
    VerdictTally allowed;
    VerdictTally forbidden;
};

// Projects random sequences of the lexicographic SFT, and random sequences
// with a planted forbidden word, and classifies the points with
// is_univoque_point. Planted samples must project into the open core.
SamplingReport sample_oracle_agreement(const BetaRun& run, std::size_t samples, std::size_t length, std::size_t depth,
                                       std::uint64_t seed = kDefaultSeed);

}  // namespace univoque
