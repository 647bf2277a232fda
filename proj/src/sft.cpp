#include "univoque/sft.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <set>
#include <string>
#include <thread>

#include "univoque/error.hpp"

namespace univoque {

SftSpec::SftSpec(int alphabet, int length, std::vector<bool> allowed)
    : alphabet_(alphabet), length_(length), allowed_(std::move(allowed)) {
    if (alphabet_ < 2 || length_ < 1) {
        throw Error(ErrorCode::InvalidInput, "SFT needs alphabet >= 2 and length >= 1");
    }
    const WordCode total = checked_power(alphabet_, length_);
    if (total == 0 || allowed_.size() != total) {
        throw Error(ErrorCode::InvalidInput, "allowed mask must have m^L entries");
    }
    allowed_count_ = static_cast<std::size_t>(std::count(allowed_.begin(), allowed_.end(), true));
}

bool SftSpec::allowed(std::span<const Symbol> w) const {
    if (static_cast<int>(w.size()) != length_) {
        throw Error(ErrorCode::InvalidInput, "word length does not match the SFT");
    }
    for (Symbol s : w) {
        if (s < 0 || s >= alphabet_) {
            throw Error(ErrorCode::InvalidInput, "symbol outside the alphabet");
        }
    }
    return allowed_[encode(w, alphabet_)];
}

std::vector<WordCode> SftSpec::allowed_codes() const {
    std::vector<WordCode> out;
    out.reserve(allowed_count_);
    for (WordCode c = 0; c < allowed_.size(); ++c) {
        if (allowed_[c]) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<WordCode> SftSpec::forbidden_codes() const {
    std::vector<WordCode> out;
    out.reserve(forbidden_count());
    for (WordCode c = 0; c < allowed_.size(); ++c) {
        if (!allowed_[c]) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.left < b.left; });
    std::vector<Interval> out;
    for (const auto& iv : intervals) {
        if (iv.empty()) {
            continue;
        }
        if (!out.empty() && iv.left <= out.back().right) {
            out.back().right = std::max(out.back().right, iv.right);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

unsigned worker_count(unsigned requested) {
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("DIM_THREADS")) {
            char* end = nullptr;
            const long cap = std::strtol(env, &end, 10);
            if (end != env && cap > 0) {
                n = std::min(n, static_cast<unsigned>(cap));
            }
        }
    }
    return std::max(1u, n);
}

namespace {

// Margin of x inside the open interval, or a non-positive number.
double interior_margin(const Interval& region, double x) {
    return std::min(x - region.left, region.right - x);
}

struct Probe {
    double point;
    Word word;
    double expansion;
};

}  // namespace

EndpointWitness find_endpoint_witness(const Ifs& ifs, const Interval& k, std::span<const Interval> regions, double x,
                                      std::size_t depth_max) {
    const double tol = ifs.tolerance();
    std::deque<Probe> queue;
    queue.push_back({x, {}, 1.0});

    // Points already expanded; a new point within tol of one of these adds nothing.
    std::set<double> visited{x};
    auto seen = [&](double y) {
        auto it = visited.lower_bound(y - tol);
        return it != visited.end() && *it <= y + tol;
    };

    while (!queue.empty()) {
        Probe probe = std::move(queue.front());
        queue.pop_front();

        for (const auto& region : regions) {
            const double margin = interior_margin(region, probe.point);
            if (margin > tol) {
                return {x, std::move(probe.word), probe.point, margin, probe.expansion};
            }
        }
        if (probe.word.size() >= depth_max) {
            continue;
        }
        for (Symbol j : admissible_branches(ifs, k, probe.point)) {
            const auto& f = ifs.map(j);
            double next = f.inverse(probe.point);
            const double slack = tol / f.ratio + tol;
            if (!k.contains(next, slack)) {
                throw Error(ErrorCode::Stuck, "orbit of " + std::to_string(x) + " left the attractor");
            }
            next = std::clamp(next, k.left, k.right);
            if (seen(next)) {
                continue;
            }
            visited.insert(next);
            Word word = probe.word;
            word.push_back(j);
            queue.push_back({next, std::move(word), probe.expansion / f.ratio});
        }
    }
    throw Error(ErrorCode::NotFound, "no witness for endpoint " + std::to_string(x) + " within depth " +
                                         std::to_string(depth_max));
}

std::vector<double> interior_endpoints(std::span<const Interval> regions, const Interval& k, double tolerance) {
    std::vector<double> out;
    for (const auto& r : regions) {
        for (double e : {r.left, r.right}) {
            if (e > k.left + tolerance && e < k.right - tolerance) {
                out.push_back(e);
            }
        }
    }
    return out;
}

double compute_delta(std::span<const EndpointWitness> witnesses, std::span<const Interval> regions, const Interval& k,
                     double tolerance) {
    double delta = std::numeric_limits<double>::infinity();
    for (const auto& w : witnesses) {
        delta = std::min(delta, w.margin / w.expansion);
    }

    std::vector<Interval> sorted(regions.begin(), regions.end());
    std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.left < b.left; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const double gap = sorted[i + 1].left - sorted[i].right;
        delta = std::min(delta, std::nextafter(0.5 * gap, 0.0));
    }
    for (const auto& r : sorted) {
        if (r.left > k.left + tolerance) {
            delta = std::min(delta, std::nextafter(r.left - k.left, 0.0));
        }
        if (r.right < k.right - tolerance) {
            delta = std::min(delta, std::nextafter(k.right - r.right, 0.0));
        }
    }
    if (!(delta > 0.0)) {
        throw Error(ErrorCode::NonPositiveDelta, "regions leave no room for an enlargement");
    }
    return delta;
}

int choose_level(double delta, const Ifs& ifs, const Interval& k) {
    if (!(delta > 0.0)) {
        throw Error(ErrorCode::NonPositiveDelta, "delta must be positive");
    }
    const double r = ifs.max_ratio();
    double size = k.length() * r;
    int level = 1;
    while (!(size < delta)) {
        size *= r;
        ++level;
    }
    return level;
}

namespace {

struct AllowedRange {
    WordCode first;
    WordCode count;
};

struct BlockResult {
    std::vector<AllowedRange> ranges;
    std::size_t near = 0;
};

class CylinderClassifier {
public:
    CylinderClassifier(std::vector<Interval> holes, double tol) : holes_(std::move(holes)), tol_(tol) {}

    enum class Verdict { Clear, Hit };

    // Closed, tolerance-conservative test; `near` is set when the call was
    // decided within the tolerance.
    Verdict classify(double lo, double hi, bool& near) const {
        near = false;
        auto it = std::lower_bound(holes_.begin(), holes_.end(), lo,
                                   [&](const Interval& h, double v) { return h.right < v - tol_; });
        if (it == holes_.end() || it->left > hi + tol_) {
            // Distance to the nearest candidates on either side.
            double gap = std::numeric_limits<double>::infinity();
            if (it != holes_.end()) {
                gap = std::min(gap, it->left - hi);
            }
            if (it != holes_.begin()) {
                gap = std::min(gap, lo - std::prev(it)->right);
            }
            near = gap <= 2.0 * tol_;
            return Verdict::Clear;
        }
        near = it->left > hi || it->right < lo;
        return Verdict::Hit;
    }

    // True when [lo, hi] is farther than 2*tol from every hole, so any
    // sub-cylinder is clear as well.
    bool far_from_holes(double lo, double hi) const {
        auto it = std::lower_bound(holes_.begin(), holes_.end(), lo,
                                   [&](const Interval& h, double v) { return h.right < v - 2.0 * tol_; });
        return it == holes_.end() || it->left > hi + 2.0 * tol_;
    }

private:
    std::vector<Interval> holes_;
    double tol_;
};

void enumerate_block(const Ifs& ifs, const Interval& k, const CylinderClassifier& classifier, int level,
                     int prefix_len, WordCode prefix, BlockResult& out) {
    const int m = ifs.size();
    // Affine map x -> scale*x + shift for the current prefix.
    struct Frame {
        double scale;
        double shift;
        WordCode code;
        int depth;
    };
    double scale = 1.0;
    double shift = 0.0;
    for (Symbol s : decode(prefix, m, prefix_len)) {
        shift += scale * ifs.map(s).translation;
        scale *= ifs.map(s).ratio;
    }

    auto add_range = [&](WordCode first, WordCode count) {
        if (!out.ranges.empty() && out.ranges.back().first + out.ranges.back().count == first) {
            out.ranges.back().count += count;
        } else {
            out.ranges.push_back({first, count});
        }
    };

    std::vector<Frame> stack{{scale, shift, prefix, prefix_len}};
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        const double lo = fr.scale * k.left + fr.shift;
        const double hi = fr.scale * k.right + fr.shift;
        const int rest = level - fr.depth;
        if (rest == 0) {
            bool near = false;
            if (classifier.classify(lo, hi, near) == CylinderClassifier::Verdict::Clear) {
                add_range(fr.code, 1);
            }
            out.near += near ? 1 : 0;
            continue;
        }
        if (classifier.far_from_holes(lo, hi)) {
            const WordCode width = checked_power(m, rest);
            add_range(fr.code * width, width);
            continue;
        }
        // Push in reverse so symbols are visited in increasing order.
        for (int j = m - 1; j >= 0; --j) {
            const auto& f = ifs.map(j);
            stack.push_back({fr.scale * f.ratio, fr.shift + fr.scale * f.translation,
                             fr.code * static_cast<WordCode>(m) + static_cast<WordCode>(j), fr.depth + 1});
        }
    }
}

}  // namespace

SftSpec forbidden_words(const Ifs& ifs, const Interval& k, std::span<const Interval> regions, int level,
                        std::uint64_t budget, unsigned threads, std::size_t* near_boundary) {
    if (level < 2) {
        throw Error(ErrorCode::InvalidInput, "cylinder level must be at least 2");
    }
    const int m = ifs.size();
    const WordCode total = checked_power(m, level);
    if (total == 0 || total > budget) {
        throw Error(ErrorCode::Intractable, std::to_string(m) + "^" + std::to_string(level) +
                                                " words exceed the enumeration budget; lower L or use the beta path");
    }

    const CylinderClassifier classifier(merge_intervals({regions.begin(), regions.end()}), ifs.tolerance());
    const unsigned workers = worker_count(threads);

    int prefix_len = 0;
    while (prefix_len < level && checked_power(m, prefix_len) < 8ull * workers) {
        ++prefix_len;
    }
    const WordCode blocks = checked_power(m, prefix_len);
    std::vector<BlockResult> results(blocks);
    std::atomic<WordCode> next{0};
    auto work = [&] {
        for (WordCode b = next++; b < blocks; b = next++) {
            enumerate_block(ifs, k, classifier, level, prefix_len, b, results[b]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
    }

    std::vector<bool> allowed(total, false);
    std::size_t near = 0;
    for (const auto& r : results) {
        near += r.near;
        for (const auto& range : r.ranges) {
            std::fill_n(allowed.begin() + static_cast<std::ptrdiff_t>(range.first), range.count, true);
        }
    }
    if (near_boundary != nullptr) {
        *near_boundary = near;
    }
    SftSpec sft(m, level, std::move(allowed));
    if (sft.allowed_count() == 0) {
        throw Error(ErrorCode::AllForbidden, "every length-" + std::to_string(level) + " word is forbidden");
    }
    return sft;
}

Synthesis synthesize_sft(const Ifs& ifs, const Interval& k, std::span<const Interval> regions,
                         const SynthOptions& options) {
    const double tol = ifs.tolerance();
    const auto holes = merge_intervals({regions.begin(), regions.end()});

    SynthDiagnostics diag;
    for (double e : interior_endpoints(holes, k, tol)) {
        diag.witnesses.push_back(find_endpoint_witness(ifs, k, holes, e, options.depth_max));
    }
    diag.delta = compute_delta(diag.witnesses, holes, k, tol);
    diag.level = std::max(2, choose_level(diag.delta, ifs, k));
    for (const auto& h : holes) {
        diag.enlarged_regions.push_back({std::max(k.left, h.left - diag.delta), std::min(k.right, h.right + diag.delta)});
    }
    SftSpec sft = forbidden_words(ifs, k, holes, diag.level, options.enumeration_budget, options.threads,
                                  &diag.near_boundary_words);
    return {std::move(sft), std::move(diag)};
}

}  // namespace univoque
