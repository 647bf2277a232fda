#pragma once

#include <span>
#include <vector>

#include "univoque/word.hpp"

namespace univoque {

inline constexpr double kDefaultTolerance = 1e-9;

// f(x) = ratio * x + translation, with 0 < ratio < 1.
struct Similitude {
    double ratio = 0.5;
    double translation = 0.0;

    double operator()(double x) const { return ratio * x + translation; }
    double inverse(double x) const { return (x - translation) / ratio; }
    double fixed_point() const { return translation / (1.0 - ratio); }
};

// Closed interval [left, right]. Used for the attractor, first-level
// intervals, cylinder images and avoided regions alike.
struct Interval {
    double left = 0.0;
    double right = 0.0;

    double length() const { return right - left; }
    bool empty() const { return right < left; }
    double midpoint() const { return 0.5 * (left + right); }
    bool contains(double x, double tol = 0.0) const { return x >= left - tol && x <= right + tol; }
    bool contains(const Interval& other, double tol = 0.0) const {
        return other.left >= left - tol && other.right <= right + tol;
    }
    // Closed intersection test; a gap of at most tol still counts as touching.
    bool intersects(const Interval& other, double tol = 0.0) const {
        return other.right >= left - tol && other.left <= right + tol;
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Maximal closed interval on which two or more inverse branches are admissible.
// `branches` lists every symbol whose first-level interval overlaps the region
// with positive length, in increasing order.
struct SwitchRegion {
    Interval span;
    std::vector<Symbol> branches;
};

// An iterated function system of similitudes on the line, stored in canonical
// order: sorted by fixed point, ties broken by ratio. Immutable once built.
class Ifs {
public:
    explicit Ifs(std::vector<Similitude> maps, double tolerance = kDefaultTolerance);

    int size() const { return static_cast<int>(maps_.size()); }
    const Similitude& map(Symbol j) const { return maps_.at(static_cast<std::size_t>(j)); }
    const std::vector<Similitude>& maps() const { return maps_; }
    double tolerance() const { return tolerance_; }

    double max_ratio() const;
    std::vector<double> ratios() const;
    bool homogeneous() const;

private:
    std::vector<Similitude> maps_;
    double tolerance_;
};

// [min fixed point, max fixed point], after checking that the first-level
// intervals cover it without gaps wider than the tolerance.
Interval attractor(const Ifs& ifs);

std::vector<Interval> first_level_intervals(const Ifs& ifs, const Interval& attractor);

std::vector<SwitchRegion> switch_regions(const Ifs& ifs, const Interval& attractor);
std::vector<Interval> region_spans(std::span<const SwitchRegion> regions);

double inverse_branch(const Ifs& ifs, Symbol j, double x);

// Symbols j with x in f_j(K); boundary points within the tolerance count as
// inside.
std::vector<Symbol> admissible_branches(const Ifs& ifs, const Interval& attractor, double x);

// Cylinder f_{w_1} o ... o f_{w_n}(K).
Interval project(const Ifs& ifs, const Interval& attractor, std::span<const Symbol> w);

// True iff every partial orbit T_{w_1...w_k}(x) stays in K.
bool is_coding_prefix(const Ifs& ifs, const Interval& attractor, double x, std::span<const Symbol> w);

}  // namespace univoque
