#include "univoque/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <string>

#include "univoque/error.hpp"

namespace univoque {

WeightedDigraph::WeightedDigraph(std::size_t vertex_count, std::vector<Edge> edges) : edges_(std::move(edges)) {
    for (const auto& e : edges_) {
        if (e.from >= vertex_count || e.to >= vertex_count) {
            throw Error(ErrorCode::InvalidInput, "edge endpoint out of range");
        }
        if (!(e.ratio > 0.0 && e.ratio < 1.0)) {
            throw Error(ErrorCode::InvalidInput, "edge ratio must lie in (0,1)");
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].from == edges_[i - 1].from && edges_[i].to == edges_[i - 1].to) {
            throw Error(ErrorCode::InvalidInput, "duplicate edge");
        }
    }
    offsets_.assign(vertex_count + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.from + 1];
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        offsets_[v + 1] += offsets_[v];
    }
}

bool WeightedDigraph::has_edge(std::size_t from, std::size_t to) const {
    const auto out = out_edges(from);
    return std::binary_search(out.begin(), out.end(), Edge{from, to, 0.5},
                              [](const Edge& a, const Edge& b) { return a.to < b.to; });
}

UnivoqueGraph build_graph(const SftSpec& sft, std::span<const double> ratios) {
    const int m = sft.alphabet();
    const int len = sft.length();
    if (len < 2) {
        throw Error(ErrorCode::InvalidInput, "graph construction needs L >= 2");
    }
    if (static_cast<int>(ratios.size()) != m) {
        throw Error(ErrorCode::InvalidInput, "one contraction ratio per symbol required");
    }
    const WordCode states = checked_power(m, len - 1);
    const WordCode lead = checked_power(m, len - 2);

    std::vector<char> alive(states, 0);
    const auto codes = sft.allowed_codes();
    for (WordCode c : codes) {
        alive[c / static_cast<WordCode>(m)] = 1;
    }

    std::vector<std::size_t> out_degree(states, 0);
    std::vector<std::vector<WordCode>> preds(states);
    for (WordCode c : codes) {
        const WordCode u = c / static_cast<WordCode>(m);
        const WordCode v = c % states;
        if (alive[v]) {
            ++out_degree[u];
            preds[v].push_back(u);
        }
    }

    // Remove vertices without successors until none remain.
    std::deque<WordCode> dead;
    for (WordCode u = 0; u < states; ++u) {
        if (alive[u] && out_degree[u] == 0) {
            dead.push_back(u);
        }
    }
    while (!dead.empty()) {
        const WordCode v = dead.front();
        dead.pop_front();
        if (!alive[v]) {
            continue;
        }
        alive[v] = 0;
        for (WordCode u : preds[v]) {
            if (alive[u] && --out_degree[u] == 0) {
                dead.push_back(u);
            }
        }
    }

    UnivoqueGraph g;
    g.alphabet = m;
    g.word_length = len - 1;
    std::vector<std::size_t> index(states, std::numeric_limits<std::size_t>::max());
    for (WordCode u = 0; u < states; ++u) {
        if (alive[u]) {
            index[u] = g.vertex_codes.size();
            g.vertex_codes.push_back(u);
        }
    }
    if (g.vertex_codes.empty()) {
        throw Error(ErrorCode::EmptyGraph, "pruning removed every vertex");
    }

    std::vector<Edge> edges;
    for (WordCode c : codes) {
        const WordCode u = c / static_cast<WordCode>(m);
        const WordCode v = c % states;
        if (alive[u] && alive[v]) {
            edges.push_back({index[u], index[v], ratios[u / lead]});
        }
    }
    g.digraph = WeightedDigraph(g.vertex_codes.size(), std::move(edges));
    return g;
}

std::vector<Component> scc_decompose(const WeightedDigraph& g) {
    const std::size_t n = g.vertex_count();
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> order(n, unvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<Component> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next_edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (order[root] != unvisited) {
            continue;
        }
        std::vector<Frame> call{{root, 0}};
        order[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& fr = call.back();
            const auto out = g.out_edges(fr.v);
            if (fr.next_edge < out.size()) {
                const std::size_t w = out[fr.next_edge++].to;
                if (order[w] == unvisited) {
                    order[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], order[w]);
                }
                continue;
            }
            const std::size_t v = fr.v;
            call.pop_back();
            if (!call.empty()) {
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
            if (low[v] == order[v]) {
                Component c;
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    c.vertices.push_back(w);
                } while (w != v);
                std::sort(c.vertices.begin(), c.vertices.end());
                c.trivial = c.vertices.size() == 1 && !g.has_edge(v, v);
                components.push_back(std::move(c));
            }
        }
    }
    std::sort(components.begin(), components.end(),
              [](const Component& a, const Component& b) { return a.vertices.front() < b.vertices.front(); });
    return components;
}

namespace {

// Sparse matrix of one component in local indices, entries stored as log r so
// that r^t is exp(t * log r).
class ComponentMatrix {
public:
    ComponentMatrix(const WeightedDigraph& g, const Component& c) {
        const std::size_t n = c.vertices.size();
        std::vector<std::size_t> local(g.vertex_count(), std::numeric_limits<std::size_t>::max());
        for (std::size_t i = 0; i < n; ++i) {
            local[c.vertices[i]] = i;
        }
        offsets_.push_back(0);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& e : g.out_edges(c.vertices[i])) {
                if (local[e.to] != std::numeric_limits<std::size_t>::max()) {
                    cols_.push_back(local[e.to]);
                    log_ratio_.push_back(std::log(e.ratio));
                    ratio_.push_back(e.ratio);
                }
            }
            offsets_.push_back(cols_.size());
        }
    }

    std::size_t size() const { return offsets_.size() - 1; }

    // Common ratio when every entry is equal.
    std::optional<double> common_ratio() const {
        if (ratio_.empty()) {
            return std::nullopt;
        }
        for (double r : ratio_) {
            if (r != ratio_.front()) {
                return std::nullopt;
            }
        }
        return ratio_.front();
    }

    // Power iteration on A + I (primitive for irreducible A), bracketing the
    // Perron root of A by Collatz-Wielandt bounds on the current iterate.
    PerronEstimate perron(double t, double rel_tol, std::vector<double>& y) const {
        const std::size_t n = size();
        std::vector<double> weight(ratio_.size());
        for (std::size_t k = 0; k < weight.size(); ++k) {
            weight[k] = t == 0.0 ? 1.0 : std::exp(t * log_ratio_[k]);
        }
        if (y.size() != n) {
            y.assign(n, 1.0);
        }
        std::vector<double> z(n);
        constexpr std::size_t max_iterations = 2'000'000;
        PerronEstimate est;
        for (std::size_t it = 1; it <= max_iterations; ++it) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double s = 0.0;
                for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
                    s += weight[k] * y[cols_[k]];
                }
                z[i] = s;
                const double q = s / y[i];
                lo = std::min(lo, q);
                hi = std::max(hi, q);
            }
            est = {0.5 * (lo + hi), lo, hi, it};
            if (hi - lo <= rel_tol * hi) {
                return est;
            }
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] += z[i];
                norm = std::max(norm, y[i]);
            }
            for (double& v : y) {
                v /= norm;
            }
        }
        throw Error(ErrorCode::ConvergenceFailure, "power iteration did not converge");
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> cols_;
    std::vector<double> log_ratio_;
    std::vector<double> ratio_;
};

}  // namespace

PerronEstimate phi(const WeightedDigraph& g, const Component& component, double t, double relative_tolerance) {
    if (component.trivial) {
        throw Error(ErrorCode::InvalidInput, "Phi is undefined on a trivial component");
    }
    if (t < 0.0) {
        throw Error(ErrorCode::InvalidInput, "Phi needs t >= 0");
    }
    const ComponentMatrix a(g, component);
    std::vector<double> y;
    return a.perron(t, relative_tolerance, y);
}

std::string_view to_string(SolveMethod method) {
    return method == SolveMethod::HomogeneousShortcut ? "homogeneous-shortcut" : "bisection";
}

SccReport solve_dimension(const WeightedDigraph& g, double bisection_tolerance) {
    SccReport report;
    report.components = scc_decompose(g);
    bool all_homogeneous = true;

    for (std::size_t ci = 0; ci < report.components.size(); ++ci) {
        const Component& c = report.components[ci];
        if (c.trivial) {
            continue;
        }
        const ComponentMatrix a(g, c);
        std::vector<double> y;
        ComponentRoot cr;
        cr.component = ci;
        const PerronEstimate at_zero = a.perron(0.0, kPerronTolerance, y);
        cr.phi_at_zero = at_zero.value;
        if (at_zero.upper < 1.0 - 1e-9) {
            throw Error(ErrorCode::ConvergenceFailure, "Phi(0) < 1 on a component containing a cycle");
        }

        double lo = 0.0;
        double hi = 1.0;
        if (at_zero.value > 1.0) {
            for (int grow = 0; a.perron(hi, kPerronTolerance, y).value > 1.0; ++grow) {
                if (grow == 64) {
                    throw Error(ErrorCode::ConvergenceFailure, "no upper bracket for Phi(t) = 1");
                }
                lo = hi;
                hi *= 2.0;
            }
            while (hi - lo >= bisection_tolerance) {
                const double mid = 0.5 * (lo + hi);
                if (a.perron(mid, kPerronTolerance, y).value > 1.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
                ++cr.bisection_steps;
            }
            cr.bisection_root = 0.5 * (lo + hi);
        } else {
            cr.bisection_root = 0.0;
        }
        cr.phi_at_root = a.perron(cr.bisection_root, kPerronTolerance, y);
        cr.root = cr.bisection_root;

        if (const auto r = a.common_ratio()) {
            const double shortcut = std::max(0.0, std::log(at_zero.value) / std::log(1.0 / *r));
            // The bisection root is only as good as its bracket.
            if (std::abs(shortcut - cr.bisection_root) > std::max(1e-9, bisection_tolerance)) {
                throw Error(ErrorCode::ConvergenceFailure, "bisection root " + std::to_string(cr.bisection_root) +
                                                               " disagrees with log Phi(0)/log(1/r) = " +
                                                               std::to_string(shortcut));
            }
            cr.shortcut_root = shortcut;
            cr.root = shortcut;
        } else {
            all_homogeneous = false;
        }
        report.component_roots.push_back(cr);
    }

    for (std::size_t i = 0; i < report.component_roots.size(); ++i) {
        if (!report.dominant || report.component_roots[i].root > report.component_roots[*report.dominant].root) {
            report.dominant = i;
        }
    }
    if (report.dominant) {
        report.dimension = report.component_roots[*report.dominant].root;
    }
    report.method = (all_homogeneous && !report.component_roots.empty()) ? SolveMethod::HomogeneousShortcut
                                                                         : SolveMethod::Bisection;
    return report;
}

std::string export_dot(const UnivoqueGraph& g) {
    std::string out = "digraph univoque {\n";
    char buf[64];
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        out += "  v" + std::to_string(v) + " [label=\"" + format_word(g.vertex_word(v), g.alphabet) + "\"];\n";
    }
    for (const auto& e : g.digraph.edges()) {
        std::snprintf(buf, sizeof buf, "%.12g", e.ratio);
        out += "  v" + std::to_string(e.from) + " -> v" + std::to_string(e.to) + " [label=\"" + buf + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace univoque
