#include "univoque/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "univoque/error.hpp"

namespace univoque {

UniquenessVerdict is_univoque_point(const Ifs& ifs, const Interval& k, std::span<const SwitchRegion> regions, double x,
                                    std::size_t depth) {
    const double tol = ifs.tolerance();
    if (!std::isfinite(x) || !k.contains(x, tol)) {
        throw Error(ErrorCode::OutsideAttractor, std::to_string(x) + " lies outside the attractor");
    }
    UniquenessVerdict out;
    double y = std::clamp(x, k.left, k.right);
    for (std::size_t step = 0; step < depth; ++step) {
        out.depth_reached = step;
        for (const auto& r : regions) {
            if (std::abs(y - r.span.left) <= tol || std::abs(y - r.span.right) <= tol) {
                out.verdict = Verdict::Indeterminate;
                return out;
            }
            if (y > r.span.left && y < r.span.right) {
                const auto branches = admissible_branches(ifs, k, y);
                out.verdict = Verdict::NotUnique;
                out.witness = BranchWitness{out.coding, branches.at(0), branches.at(1)};
                return out;
            }
        }
        const auto branches = admissible_branches(ifs, k, y);
        if (branches.size() != 1) {
            out.verdict = Verdict::Indeterminate;
            return out;
        }
        out.coding.push_back(branches.front());
        y = std::clamp(ifs.map(branches.front()).inverse(y), k.left, k.right);
    }
    out.depth_reached = depth;
    out.verdict = Verdict::Unique;
    return out;
}

BigCount count_allowed_words(const SftSpec& sft, std::size_t n) {
    const int m = sft.alphabet();
    const std::size_t states_len = static_cast<std::size_t>(sft.length() - 1);
    if (n <= states_len) {
        return boost::multiprecision::pow(BigCount(m), static_cast<unsigned>(n));
    }
    const WordCode states = checked_power(m, static_cast<int>(states_len));
    const auto codes = sft.allowed_codes();
    std::vector<BigCount> count(states, 1);
    std::vector<BigCount> next(states);
    for (std::size_t len = states_len; len < n; ++len) {
        std::fill(next.begin(), next.end(), 0);
        for (WordCode c : codes) {
            next[c % states] += count[c / static_cast<WordCode>(m)];
        }
        count.swap(next);
    }
    BigCount total = 0;
    for (const auto& c : count) {
        total += c;
    }
    return total;
}

BigCount count_language_words(const std::optional<UnivoqueGraph>& g, std::size_t n) {
    if (!g || g->vertex_count() == 0) {
        return 0;
    }
    const auto len = static_cast<std::size_t>(g->word_length);
    if (n <= len) {
        // Distinct n-prefixes; vertex codes are sorted, so equal prefixes are adjacent.
        const WordCode drop = checked_power(g->alphabet, static_cast<int>(len - n));
        BigCount distinct = 0;
        std::optional<WordCode> last;
        for (WordCode c : g->vertex_codes) {
            if (!last || *last != c / drop) {
                ++distinct;
                last = c / drop;
            }
        }
        return distinct;
    }
    const auto& d = g->digraph;
    std::vector<BigCount> walks(d.vertex_count(), 1);
    std::vector<BigCount> next(d.vertex_count());
    for (std::size_t step = len; step < n; ++step) {
        for (std::size_t u = 0; u < d.vertex_count(); ++u) {
            next[u] = 0;
            for (const auto& e : d.out_edges(u)) {
                next[u] += walks[e.to];
            }
        }
        walks.swap(next);
    }
    BigCount total = 0;
    for (const auto& w : walks) {
        total += w;
    }
    return total;
}

AgreementReport pipelines_agree(const BetaBase& b, const GreedyExpansion& ge, const AgreementOptions& options) {
    AgreementReport report;
    report.beta = b.beta();
    report.max_n = options.max_n;

    std::optional<BetaRun> lex;
    try {
        lex = run_beta_pipeline(b, ge, options.beta);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::FiniteGreedyExpansion) {
            throw;
        }
        report.beta_path_available = false;
        report.note = "beta path unavailable: " + std::string(e.what());
        return report;
    }
    report.lex_level = lex->sft.length();
    report.lex_dimension = lex->result.dimension();

    const Ifs ifs = beta_ifs(b);
    const auto extra = core_holes(b);
    const IfsRun core = run_ifs_pipeline(ifs, options.synth, extra, options.beta.bisection_tolerance);
    const IfsRun plain = run_ifs_pipeline(ifs, options.synth, {}, options.beta.bisection_tolerance);
    report.core_level = core.synthesis ? core.synthesis->diagnostics.level : 0;
    report.plain_level = plain.synthesis ? plain.synthesis->diagnostics.level : 0;
    report.core_dimension = core.result.dimension();
    report.plain_dimension = plain.result.dimension();

    for (std::size_t n = 1; n <= options.max_n; ++n) {
        report.lex_counts.push_back(count_language_words(lex->result.graph, n));
        report.core_counts.push_back(count_language_words(core.result.graph, n));
        if (!report.first_mismatch && report.lex_counts.back() != report.core_counts.back()) {
            report.first_mismatch = n;
        }
    }
    report.counts_agree = !report.first_mismatch;
    report.dimensions_agree = std::abs(report.lex_dimension - report.core_dimension) <= options.dimension_tolerance &&
                              std::abs(report.lex_dimension - report.plain_dimension) <= options.dimension_tolerance;
    if (!report.counts_agree) {
        report.note = "word counts differ first at n = " + std::to_string(*report.first_mismatch);
    } else if (!report.dimensions_agree) {
        report.note = "dimensions differ by more than the tolerance";
    }
    return report;
}

AgreementReport pipelines_agree(const BetaBase& b, const AgreementOptions& options) {
    return pipelines_agree(b, greedy_expansion_of_one(b, options.beta.search_bound), options);
}

ScanReport dimension_locally_constant_scan(const BetaBase& b, double radius, std::size_t steps,
                                           const BetaOptions& options) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw Error(ErrorCode::InvalidInput, "scan radius must be a non-negative number");
    }
    ScanReport report;
    report.center = b.beta();
    report.radius = radius;
    report.steps = radius == 0.0 ? 0 : steps;
    const auto n = static_cast<long long>(report.steps);

    std::vector<std::optional<SftSpec>> sfts;
    for (long long k = -n; k <= n; ++k) {
        ScanPoint pt;
        pt.beta = n == 0 ? b.beta() : b.beta() + static_cast<double>(k) * radius / static_cast<double>(n);
        std::optional<SftSpec> sft;
        try {
            const BetaRun run = run_beta_pipeline(BetaBase(pt.beta, b.tolerance()), options);
            pt.ok = true;
            pt.p = run.window.p;
            for (const auto& cr : run.result.report.component_roots) {
                pt.lambda = std::max(pt.lambda, cr.phi_at_zero);
                pt.dimension = std::max(pt.dimension, cr.bisection_root);
            }
            pt.formula = pt.lambda > 0.0 ? std::log(pt.lambda) / std::log(pt.beta) : 0.0;
            sft = run.sft;
        } catch (const Error& e) {
            pt.error = e.what();
        }
        sfts.push_back(std::move(sft));
        report.points.push_back(std::move(pt));
    }

    const std::size_t centre = report.steps;
    if (!sfts[centre]) {
        return report;
    }
    for (std::size_t i = 0; i < sfts.size(); ++i) {
        report.points[i].same_forbidden = sfts[i] && *sfts[i] == *sfts[centre];
    }
    std::size_t first = centre;
    std::size_t last = centre;
    while (first > 0 && report.points[first - 1].same_forbidden) {
        --first;
    }
    while (last + 1 < report.points.size() && report.points[last + 1].same_forbidden) {
        ++last;
    }
    report.stable_first = first;
    report.stable_last = last;
    report.strictly_decreasing = true;
    for (std::size_t i = first; i <= last; ++i) {
        const auto& pt = report.points[i];
        report.max_formula_error = std::max(report.max_formula_error, std::abs(pt.dimension - pt.formula));
        if (i > first && !(pt.dimension < report.points[i - 1].dimension)) {
            report.strictly_decreasing = false;
        }
    }
    return report;
}

Word random_walk(const UnivoqueGraph& g, std::size_t length, std::mt19937_64& rng) {
    if (g.vertex_count() == 0) {
        throw Error(ErrorCode::EmptyGraph, "cannot walk an empty graph");
    }
    const auto m = static_cast<WordCode>(g.alphabet);
    std::size_t v = std::uniform_int_distribution<std::size_t>(0, g.vertex_count() - 1)(rng);
    Word w = g.vertex_word(v);
    while (w.size() < length) {
        const auto out = g.digraph.out_edges(v);
        v = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)].to;
        w.push_back(static_cast<Symbol>(g.vertex_codes[v] % m));
    }
    w.resize(length);
    return w;
}

void VerdictTally::add(Verdict v) {
    ++total;
    switch (v) {
        case Verdict::Unique:
            ++unique;
            break;
        case Verdict::NotUnique:
            ++not_unique;
            break;
        case Verdict::Indeterminate:
            ++indeterminate;
            break;
    }
}

SamplingReport sample_oracle_agreement(const BetaRun& run, std::size_t samples, std::size_t length, std::size_t depth,
                                       std::uint64_t seed) {
    if (!run.result.graph) {
        throw Error(ErrorCode::EmptyGraph, "no allowed sequences to sample");
    }
    SamplingReport report;
    report.seed = seed;
    report.samples = samples;
    report.length = length;
    report.depth = depth;

    const UnivoqueGraph& g = *run.result.graph;
    const Ifs ifs = beta_ifs(run.base);
    const Interval k = attractor(ifs);
    const auto regions = switch_regions(ifs, k);
    const Interval core = restrict_to_core(run.base);
    const double tol = run.base.tolerance();
    std::mt19937_64 rng(seed);

    for (std::size_t i = 0; i < samples; ++i) {
        const Word w = random_walk(g, length, rng);
        const double x = project(ifs, k, w).midpoint();
        report.allowed.add(is_univoque_point(ifs, k, regions, x, depth).verdict);
    }

    const auto forbidden = run.sft.forbidden_codes();
    const int p = run.sft.length();
    const std::size_t max_prefix = std::min<std::size_t>(20, length - static_cast<std::size_t>(p));
    const std::size_t max_attempts = 1000 * samples + 1000;
    for (std::size_t attempt = 0; report.forbidden.total < samples && attempt < max_attempts; ++attempt) {
        const std::size_t prefix = std::uniform_int_distribution<std::size_t>(0, max_prefix)(rng);
        Word w = prefix == 0 ? Word{} : random_walk(g, std::max<std::size_t>(prefix, g.word_length), rng);
        w.resize(prefix);
        const WordCode c = forbidden[std::uniform_int_distribution<std::size_t>(0, forbidden.size() - 1)(rng)];
        const Word bad = decode(c, run.sft.alphabet(), p);
        w.insert(w.end(), bad.begin(), bad.end());
        const std::size_t rest = length - w.size();
        if (rest > 0) {
            const Word tail = random_walk(g, std::max<std::size_t>(rest, g.word_length), rng);
            w.insert(w.end(), tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(rest));
        }
        const double x = project(ifs, k, w).midpoint();
        if (!(x > core.left + tol && x < core.right - tol)) {
            ++report.forbidden.rejected;
            continue;
        }
        report.forbidden.add(is_univoque_point(ifs, k, regions, x, depth).verdict);
    }
    return report;
}

}  // namespace univoque
