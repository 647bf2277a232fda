#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "univoque/beta.hpp"
#include "univoque/oracle.hpp"
#include "univoque/pipeline.hpp"
#include "univoque/sft.hpp"

using namespace univoque;
using testing::code_of;

namespace {

struct Setup {
    Ifs ifs;
    Interval k;
    std::vector<Interval> holes;
};

Setup beta_setup(double beta) {
    const BetaBase b(beta);
    Ifs ifs = beta_ifs(b);
    const Interval k = attractor(ifs);
    return {ifs, k, region_spans(switch_regions(ifs, k))};
}

std::vector<BigCount> language(const SftSpec& sft, std::span<const double> ratios, std::size_t max_n) {
    const DimensionResult r = solve_sft(sft, ratios);
    std::vector<BigCount> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        out.push_back(count_language_words(r.graph, n));
    }
    return out;
}

}  // namespace

TEST_CASE("endpoint witnesses") {
    const Setup s = beta_setup(oracle::kBetaStar);
    REQUIRE(s.holes.size() == 1);
    CHECK(s.holes[0].left == doctest::Approx(oracle::kSwitchLeftStar).epsilon(1e-13));
    CHECK(s.holes[0].right == doctest::Approx(oracle::kSwitchRightStar).epsilon(1e-13));

    for (double e : {s.holes[0].left, s.holes[0].right}) {
        CAPTURE(e);
        const EndpointWitness w = find_endpoint_witness(s.ifs, s.k, s.holes, e);
        CHECK(!w.word.empty());
        CHECK(w.word.size() <= 10);
        // Replay the word with plain inverse maps.
        double y = e;
        for (Symbol j : w.word) {
            y = oracle::kBetaStar * y - j;
        }
        CHECK(y == doctest::Approx(w.image).epsilon(1e-9));
        CHECK(y > s.holes[0].left + w.margin * 0.5);
        CHECK(y < s.holes[0].right - w.margin * 0.5);
        CHECK(w.expansion == doctest::Approx(std::pow(oracle::kBetaStar, static_cast<double>(w.word.size()))));
    }

    const EndpointWitness inside = find_endpoint_witness(s.ifs, s.k, s.holes, 0.6);
    CHECK(inside.word.empty());
    CHECK(inside.expansion == 1.0);

    SUBCASE("golden ratio endpoints never enter the region") {
        const Setup g = beta_setup(oracle::kGolden);
        CHECK(code_of([&] { find_endpoint_witness(g.ifs, g.k, g.holes, g.holes[0].left); }) == ErrorCode::NotFound);
    }
    SUBCASE("depth bound") {
        const EndpointWitness w = find_endpoint_witness(s.ifs, s.k, s.holes, s.holes[0].left);
        if (!w.word.empty()) {
            CHECK(code_of([&] { find_endpoint_witness(s.ifs, s.k, s.holes, s.holes[0].left, w.word.size() - 1); }) ==
                  ErrorCode::NotFound);
        }
    }
}

TEST_CASE("delta") {
    const Interval k{0.0, 1.0};
    const std::vector<Interval> regions{{0.4, 0.6}};
    std::vector<EndpointWitness> ws{{0.4, {0, 1}, 0.5, 0.1, 4.0}, {0.6, {1}, 0.45, 0.05, 2.0}};
    CHECK(compute_delta(ws, regions, k) == doctest::Approx(0.025));

    // Distances to the attractor ends cap delta.
    const std::vector<Interval> near_end{{0.01, 0.6}};
    CHECK(compute_delta(ws, near_end, k) < 0.01);

    // Half the gap between two regions caps delta.
    const std::vector<Interval> two{{0.2, 0.3}, {0.302, 0.6}};
    CHECK(compute_delta(ws, two, k) == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(compute_delta(ws, two, k) < 0.5 * (two[1].left - two[0].right));

    const std::vector<Interval> touching{{0.2, 0.3}, {0.3, 0.6}};
    CHECK(code_of([&] { compute_delta(ws, touching, k); }) == ErrorCode::NonPositiveDelta);
    std::vector<EndpointWitness> zero{{0.4, {}, 0.4, 0.0, 1.0}};
    CHECK(code_of([&] { compute_delta(zero, regions, k); }) == ErrorCode::NonPositiveDelta);
}

TEST_CASE("level choice") {
    const Ifs halves({{0.5, 0.0}, {0.5, 0.5}});
    const Interval k{0.0, 1.0};
    CHECK(choose_level(0.1, halves, k) == 4);
    CHECK(choose_level(0.0625, halves, k) == 5);
    CHECK(choose_level(0.9, halves, k) == 1);
    CHECK(code_of([&] { choose_level(0.0, halves, k); }) == ErrorCode::NonPositiveDelta);

    // Mixed ratios: the largest one decides.
    const Ifs mixed({{0.6, 0.0}, {0.5, 0.5}});
    const Interval km = attractor(mixed);
    const int level = choose_level(0.01, mixed, km);
    CHECK(km.length() * std::pow(0.6, level) < 0.01);
    CHECK(km.length() * std::pow(0.6, level - 1) >= 0.01);
}

TEST_CASE("geometric SFT has the language of the lexicographic SFT") {
    const auto& run = testing::star_run();
    const Ifs ifs = beta_ifs(run.base);
    const Interval k = attractor(ifs);
    const auto holes = core_holes(run.base);
    const SftSpec geo = forbidden_words(ifs, k, holes, 7);
    CHECK(geo.length() == 7);
    const auto ratios = ifs.ratios();
    CHECK(language(geo, ratios, 30) == language(run.sft, ratios, 30));
}

TEST_CASE("forbidden words: soundness and completeness by sampling") {
    for (double beta : {oracle::kBetaStar, 2.5, 3.2}) {
        CAPTURE(beta);
        const Setup s = beta_setup(beta);
        const SynthOptions opts;
        const Synthesis syn = synthesize_sft(s.ifs, s.k, s.holes, opts);
        const SftSpec& sft = syn.sft;
        std::mt19937_64 rng(static_cast<std::uint64_t>(beta * 1000));
        std::uniform_int_distribution<WordCode> pick(0, sft.word_count() - 1);
        const double tol = s.ifs.tolerance();
        for (int i = 0; i < 3000; ++i) {
            const WordCode c = pick(rng);
            const Word w = decode(c, sft.alphabet(), sft.length());
            const Interval cyl = project(s.ifs, s.k, w);
            bool meets = false;
            bool near = false;
            for (const auto& h : s.holes) {
                meets = meets || cyl.intersects(h);
                near = near || cyl.intersects(h, 2 * tol) != cyl.intersects(h, -2 * tol);
            }
            if (!near) {
                CHECK(sft.allowed(c) == !meets);
            }
        }
    }
}

TEST_CASE("forbidden words: error cases") {
    const Setup s = beta_setup(oracle::kBetaStar);
    const std::vector<Interval> everything{s.k};
    CHECK(code_of([&] { forbidden_words(s.ifs, s.k, everything, 5); }) == ErrorCode::AllForbidden);
    CHECK(code_of([&] { forbidden_words(s.ifs, s.k, s.holes, 30, 1'000'000); }) == ErrorCode::Intractable);
    CHECK(code_of([&] { forbidden_words(s.ifs, s.k, s.holes, 1); }) == ErrorCode::InvalidInput);
}

TEST_CASE("forbidden words do not depend on the thread count") {
    const Ifs ifs({{0.45, 0.0}, {0.3, 0.35}, {0.45, 0.55}});
    const Interval k = attractor(ifs);
    const auto holes = region_spans(switch_regions(ifs, k));
    const SftSpec one = forbidden_words(ifs, k, holes, 9, kDefaultEnumerationBudget, 1);
    for (unsigned t : {2u, 3u, 8u}) {
        CHECK(forbidden_words(ifs, k, holes, 9, kDefaultEnumerationBudget, t) == one);
    }
}

TEST_CASE("refining the level") {
    const Setup s = beta_setup(oracle::kBetaStar);
    const auto ratios = s.ifs.ratios();
    const int chosen = synthesize_sft(s.ifs, s.k, s.holes).diagnostics.level;
    std::vector<BigCount> previous;
    for (int level = 4; level <= chosen + 3; ++level) {
        CAPTURE(level);
        const SftSpec sft = forbidden_words(s.ifs, s.k, s.holes, level);
        const auto counts = language(sft, ratios, 24);
        // Coarse cylinders meet the holes more often, so the language can only
        // grow with the level, and stops changing once the size bound holds.
        if (!previous.empty()) {
            for (std::size_t i = 0; i < counts.size(); ++i) {
                CHECK(counts[i] >= previous[i]);
            }
            if (level > chosen) {
                CHECK(counts == previous);
            }
        }
        previous = counts;
    }
}

TEST_CASE("language is stable once the level exceeds the chosen one") {
    for (double beta : {oracle::kBetaStar, 3.2}) {
        CAPTURE(beta);
        const Setup s = beta_setup(beta);
        const Synthesis syn = synthesize_sft(s.ifs, s.k, s.holes);
        const auto ratios = s.ifs.ratios();
        const auto base = language(syn.sft, ratios, 24);
        const double dim = solve_sft(syn.sft, ratios).dimension();
        for (int extra = 1; extra <= 2; ++extra) {
            const SftSpec finer = forbidden_words(s.ifs, s.k, s.holes, syn.diagnostics.level + extra);
            CHECK(language(finer, ratios, 24) == base);
            CHECK(solve_sft(finer, ratios).dimension() == doctest::Approx(dim).epsilon(1e-9));
        }
        // Halving delta only raises the level; the spectral radius stays put.
        const int smaller = choose_level(syn.diagnostics.delta / 2.0, s.ifs, s.k);
        CHECK(smaller >= syn.diagnostics.level);
        const auto coarse = solve_sft(syn.sft, ratios).report;
        const auto fine = solve_sft(forbidden_words(s.ifs, s.k, s.holes, smaller), ratios).report;
        REQUIRE(coarse.dominant);
        REQUIRE(fine.dominant);
        CHECK(std::abs(coarse.component_roots[*coarse.dominant].phi_at_zero -
                       fine.component_roots[*fine.dominant].phi_at_zero) < 1e-9);
        CHECK(fine.dimension == doctest::Approx(dim).epsilon(1e-9));
    }
}

TEST_CASE("interval merging") {
    CHECK(merge_intervals({}).empty());
    const auto m = merge_intervals({{0.5, 0.7}, {0.0, 0.1}, {0.6, 0.9}, {0.1, 0.2}, {1.0, 0.5}});
    REQUIRE(m.size() == 2);
    CHECK(m[0] == Interval{0.0, 0.2});
    CHECK(m[1] == Interval{0.5, 0.9});
}

TEST_CASE("worker count") {
    CHECK(worker_count(3) == 3);
    ::setenv("DIM_THREADS", "1", 1);
    CHECK(worker_count(0) == 1);
    ::setenv("DIM_THREADS", "junk", 1);
    CHECK(worker_count(0) >= 1);
    ::unsetenv("DIM_THREADS");
}
