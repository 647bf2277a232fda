#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "univoque/sft.hpp"
#include "univoque/word.hpp"

namespace univoque {

inline constexpr double kBisectionTolerance = 1e-10;
inline constexpr double kPerronTolerance = 1e-12;

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    double ratio = 0.5;
};

// Directed graph with a contraction ratio on every edge. Vertices are
// 0..vertex_count()-1; at most one edge per ordered pair.
class WeightedDigraph {
public:
    WeightedDigraph() = default;
    WeightedDigraph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    const std::vector<Edge>& edges() const { return edges_; }
    // Out-edges of v, sorted by target.
    std::span<const Edge> out_edges(std::size_t v) const {
        return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
    }
    bool has_edge(std::size_t from, std::size_t to) const;

private:
    std::vector<Edge> edges_;  // sorted by (from, to)
    std::vector<std::size_t> offsets_;
};

// Vertices are the (L-1)-words of an SFT surviving out-degree pruning, in
// lexicographic order; edge u->v carries r_{u_1}.
struct UnivoqueGraph {
    int alphabet = 0;
    int word_length = 0;  // L-1
    std::vector<WordCode> vertex_codes;
    WeightedDigraph digraph;

    std::size_t vertex_count() const { return vertex_codes.size(); }
    Word vertex_word(std::size_t v) const { return decode(vertex_codes[v], alphabet, word_length); }
};

UnivoqueGraph build_graph(const SftSpec& sft, std::span<const double> ratios);

struct Component {
    std::vector<std::size_t> vertices;  // ascending
    bool trivial = false;               // single vertex without a self-loop
};

// Tarjan's algorithm; components ordered by their smallest vertex.
std::vector<Component> scc_decompose(const WeightedDigraph& g);

// Perron root of the component's matrix (r_uv^t) with its Collatz-Wielandt
// enclosure lower <= value <= upper.
struct PerronEstimate {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::size_t iterations = 0;
};

PerronEstimate phi(const WeightedDigraph& g, const Component& component, double t,
                   double relative_tolerance = kPerronTolerance);

enum class SolveMethod { HomogeneousShortcut, Bisection };
std::string_view to_string(SolveMethod method);

struct ComponentRoot {
    std::size_t component = 0;  // index into SccReport::components
    double root = 0.0;
    double bisection_root = 0.0;
    std::optional<double> shortcut_root;  // log Phi(0) / log(1/r) when homogeneous
    double phi_at_zero = 0.0;
    PerronEstimate phi_at_root;
    std::size_t bisection_steps = 0;
};

struct SccReport {
    std::vector<Component> components;
    std::vector<ComponentRoot> component_roots;
    double dimension = 0.0;
    SolveMethod method = SolveMethod::Bisection;
    std::optional<std::size_t> dominant;  // index into component_roots
};

// Root of Phi(t) = 1 for every nontrivial component; the dimension is the
// maximum. An empty graph yields dimension 0 and no components.
SccReport solve_dimension(const WeightedDigraph& g, double bisection_tolerance = kBisectionTolerance);

std::string export_dot(const UnivoqueGraph& g);

}  // namespace univoque
