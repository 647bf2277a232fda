#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "univoque/ifs.hpp"
#include "univoque/word.hpp"

namespace univoque {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;
inline constexpr std::size_t kDefaultWitnessDepth = 64;

// A one-sided subshift of finite type given by its length-L window language:
// a sequence belongs to the shift iff every length-L window is allowed.
class SftSpec {
public:
    SftSpec(int alphabet, int length, std::vector<bool> allowed);

    int alphabet() const { return alphabet_; }
    int length() const { return length_; }
    WordCode word_count() const { return static_cast<WordCode>(allowed_.size()); }

    bool allowed(WordCode code) const { return allowed_[code]; }
    bool allowed(std::span<const Symbol> w) const;

    std::size_t allowed_count() const { return allowed_count_; }
    std::size_t forbidden_count() const { return allowed_.size() - allowed_count_; }

    // Codes in increasing (lexicographic) order.
    std::vector<WordCode> allowed_codes() const;
    std::vector<WordCode> forbidden_codes() const;

    friend bool operator==(const SftSpec&, const SftSpec&) = default;

private:
    int alphabet_;
    int length_;
    std::vector<bool> allowed_;
    std::size_t allowed_count_;
};

// T_word(endpoint) lands in the open interior of an avoided region.
struct EndpointWitness {
    double endpoint = 0.0;
    Word word;
    double image = 0.0;
    double margin = 0.0;     // distance from image to the boundary of its region
    double expansion = 1.0;  // product of 1/r over the word
};

struct SynthDiagnostics {
    double delta = 0.0;
    int level = 0;
    std::vector<EndpointWitness> witnesses;
    std::vector<Interval> enlarged_regions;
    std::size_t near_boundary_words = 0;  // cylinder decisions made within the tolerance
};

struct SynthOptions {
    std::size_t depth_max = kDefaultWitnessDepth;
    std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
    unsigned threads = 0;  // 0: DIM_THREADS or hardware concurrency
};

struct Synthesis {
    SftSpec sft;
    SynthDiagnostics diagnostics;
};

// Breadth-first search over admissible inverse branches from x for the
// shortest word (lexicographically least among equals) whose image lies in the
// open interior of one of `regions`, at distance more than the tolerance from
// its boundary.
EndpointWitness find_endpoint_witness(const Ifs& ifs, const Interval& attractor, std::span<const Interval> regions,
                                      double x, std::size_t depth_max = kDefaultWitnessDepth);

double compute_delta(std::span<const EndpointWitness> witnesses, std::span<const Interval> regions,
                     const Interval& attractor, double tolerance = kDefaultTolerance);

// Smallest L with |K| * r_max^L < delta.
int choose_level(double delta, const Ifs& ifs, const Interval& attractor);

// Forbids every length-L word whose cylinder meets a region (closed
// intersection, near-touches within the tolerance count as meeting).
SftSpec forbidden_words(const Ifs& ifs, const Interval& attractor, std::span<const Interval> regions, int level,
                        std::uint64_t budget = kDefaultEnumerationBudget, unsigned threads = 0,
                        std::size_t* near_boundary = nullptr);

// Region endpoints strictly inside K; these are the points needing witnesses.
std::vector<double> interior_endpoints(std::span<const Interval> regions, const Interval& attractor, double tolerance);

// Witnesses for every interior endpoint, delta, level, then the forbidden set.
Synthesis synthesize_sft(const Ifs& ifs, const Interval& attractor, std::span<const Interval> regions,
                         const SynthOptions& options = {});

// Sorted union of closed intervals, merging any that overlap or touch.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);

unsigned worker_count(unsigned requested);

}  // namespace univoque
