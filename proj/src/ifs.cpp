#include "univoque/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "univoque/error.hpp"

namespace univoque {

Ifs::Ifs(std::vector<Similitude> maps, double tolerance) : maps_(std::move(maps)), tolerance_(tolerance) {
    if (maps_.size() < 2) {
        throw Error(ErrorCode::InvalidInput, "an IFS needs at least two maps");
    }
    if (!(tolerance_ > 0.0) || !std::isfinite(tolerance_)) {
        throw Error(ErrorCode::InvalidInput, "tolerance must be a positive finite number");
    }
    for (const auto& f : maps_) {
        if (!(f.ratio > 0.0 && f.ratio < 1.0)) {
            throw Error(ErrorCode::InvalidInput, "similitude ratio must lie in (0,1), got " + std::to_string(f.ratio));
        }
        if (!std::isfinite(f.translation)) {
            throw Error(ErrorCode::InvalidInput, "similitude translation must be finite");
        }
    }
    std::stable_sort(maps_.begin(), maps_.end(), [](const Similitude& a, const Similitude& b) {
        const double fa = a.fixed_point();
        const double fb = b.fixed_point();
        if (fa != fb) {
            return fa < fb;
        }
        return a.ratio < b.ratio;
    });
}

double Ifs::max_ratio() const {
    double r = 0.0;
    for (const auto& f : maps_) {
        r = std::max(r, f.ratio);
    }
    return r;
}

std::vector<double> Ifs::ratios() const {
    std::vector<double> out;
    out.reserve(maps_.size());
    for (const auto& f : maps_) {
        out.push_back(f.ratio);
    }
    return out;
}

bool Ifs::homogeneous() const {
    return std::all_of(maps_.begin(), maps_.end(), [&](const Similitude& f) { return f.ratio == maps_.front().ratio; });
}

Interval attractor(const Ifs& ifs) {
    const double tol = ifs.tolerance();
    Interval k{ifs.maps().front().fixed_point(), ifs.maps().back().fixed_point()};
    for (const auto& f : ifs.maps()) {
        k.left = std::min(k.left, f.fixed_point());
        k.right = std::max(k.right, f.fixed_point());
    }
    if (k.length() <= tol) {
        throw Error(ErrorCode::DegenerateAttractor, "all fixed points coincide");
    }

    auto pieces = first_level_intervals(ifs, k);
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.left < b.left; });
    double reach = k.left;
    for (const auto& piece : pieces) {
        if (piece.left > reach + tol) {
            throw Error(ErrorCode::NotAnInterval,
                        "gap between " + std::to_string(reach) + " and " + std::to_string(piece.left));
        }
        reach = std::max(reach, piece.right);
    }
    if (reach < k.right - tol) {
        throw Error(ErrorCode::NotAnInterval, "first-level intervals stop at " + std::to_string(reach));
    }
    return k;
}

std::vector<Interval> first_level_intervals(const Ifs& ifs, const Interval& k) {
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(ifs.size()));
    for (const auto& f : ifs.maps()) {
        out.push_back({f(k.left), f(k.right)});
    }
    return out;
}

std::vector<SwitchRegion> switch_regions(const Ifs& ifs, const Interval& k) {
    const double tol = ifs.tolerance();
    const auto pieces = first_level_intervals(ifs, k);
    const int m = ifs.size();

    std::vector<Interval> overlaps;
    std::vector<double> touches;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double lo = std::max(pieces[i].left, pieces[j].left);
            const double hi = std::min(pieces[i].right, pieces[j].right);
            if (hi - lo > tol) {
                overlaps.push_back({lo, hi});
            } else if (hi - lo >= -tol) {
                touches.push_back(0.5 * (lo + hi));
            }
        }
    }

    std::sort(overlaps.begin(), overlaps.end(), [](const Interval& a, const Interval& b) { return a.left < b.left; });
    std::vector<Interval> merged;
    for (const auto& o : overlaps) {
        if (!merged.empty() && o.left <= merged.back().right + tol) {
            merged.back().right = std::max(merged.back().right, o.right);
        } else {
            merged.push_back(o);
        }
    }

    for (double t : touches) {
        const bool covered = std::any_of(merged.begin(), merged.end(), [&](const Interval& r) { return r.contains(t, tol); });
        if (!covered) {
            throw Error(ErrorCode::DegenerateSwitchRegion,
                        "first-level intervals meet in the single point " + std::to_string(t));
        }
    }
    if (merged.empty()) {
        throw Error(ErrorCode::NoOverlap, "first-level intervals do not overlap");
    }

    std::vector<SwitchRegion> regions;
    regions.reserve(merged.size());
    for (const auto& span : merged) {
        if (span.left <= k.left + tol || span.right >= k.right - tol) {
            throw Error(ErrorCode::BoundaryTouch, "switch region [" + std::to_string(span.left) + ", " +
                                                      std::to_string(span.right) + "] reaches the attractor boundary");
        }
        SwitchRegion region{span, {}};
        for (int j = 0; j < m; ++j) {
            const double lo = std::max(span.left, pieces[j].left);
            const double hi = std::min(span.right, pieces[j].right);
            if (hi - lo > tol) {
                region.branches.push_back(j);
            }
        }
        regions.push_back(std::move(region));
    }
    return regions;
}

std::vector<Interval> region_spans(std::span<const SwitchRegion> regions) {
    std::vector<Interval> out;
    out.reserve(regions.size());
    for (const auto& r : regions) {
        out.push_back(r.span);
    }
    return out;
}

double inverse_branch(const Ifs& ifs, Symbol j, double x) {
    return ifs.map(j).inverse(x);
}

std::vector<Symbol> admissible_branches(const Ifs& ifs, const Interval& k, double x) {
    const double tol = ifs.tolerance();
    if (!k.contains(x, tol)) {
        throw Error(ErrorCode::OutsideAttractor, std::to_string(x) + " lies outside the attractor");
    }
    std::vector<Symbol> out;
    for (int j = 0; j < ifs.size(); ++j) {
        const auto& f = ifs.map(j);
        if (x >= f(k.left) - tol && x <= f(k.right) + tol) {
            out.push_back(j);
        }
    }
    return out;
}

Interval project(const Ifs& ifs, const Interval& k, std::span<const Symbol> w) {
    // Compose outermost-last: f_{w_1}(f_{w_2}(... f_{w_n}(K))).
    double scale = 1.0;
    double shift = 0.0;
    for (Symbol s : w) {
        const auto& f = ifs.map(s);
        shift += scale * f.translation;
        scale *= f.ratio;
    }
    return {scale * k.left + shift, scale * k.right + shift};
}

bool is_coding_prefix(const Ifs& ifs, const Interval& k, double x, std::span<const Symbol> w) {
    const double tol = ifs.tolerance();
    for (Symbol s : w) {
        x = ifs.map(s).inverse(x);
        if (!k.contains(x, tol)) {
            return false;
        }
    }
    return true;
}

}  // namespace univoque
