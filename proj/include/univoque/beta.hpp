#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "univoque/ifs.hpp"
#include "univoque/sft.hpp"
#include "univoque/verdict.hpp"
#include "univoque/word.hpp"

namespace univoque {

inline constexpr std::size_t kDefaultSearchBound = 10'000;

// A non-integer base beta > 1 with digits 0..ceil(beta)-1.
class BetaBase {
public:
    explicit BetaBase(double beta, double tolerance = kDefaultTolerance);

    double beta() const { return beta_; }
    int digit_count() const { return digits_; }
    int max_digit() const { return digits_ - 1; }
    double tolerance() const { return tolerance_; }
    // Right end of the attractor, (ceil(beta)-1)/(beta-1).
    double right_end() const { return max_digit() / (beta_ - 1.0); }
    Interval attractor() const { return {0.0, right_end()}; }
    // Switch regions S_l = [l/beta, (ceil(beta)-1)/(beta(beta-1)) + (l-1)/beta].
    std::vector<Interval> switch_regions() const;

private:
    double beta_;
    int digits_;
    double tolerance_;
};

// Eventually periodic digit sequence, preperiod followed by period repeated
// forever (zeros forever when the period is empty).
struct PeriodicExpansion {
    Word preperiod;
    Word period;

    Symbol digit(std::size_t n) const;  // n >= 1
    Word digits(std::size_t n) const;   // first n digits
    int max_digit() const;

    friend bool operator==(const PeriodicExpansion&, const PeriodicExpansion&) = default;
};

// "111(00001)"; multi-digit symbols go in brackets, "[10,2]([11])".
PeriodicExpansion parse_expansion(std::string_view text);
std::string format_expansion(const PeriodicExpansion& e);

// Greedy expansion of 1 together with its reflection eps_n = ceil(beta)-1-alpha_n.
struct GreedyExpansion {
    int max_digit = 1;
    Word alpha;
    Word epsilon;
    std::optional<PeriodicExpansion> periodic_form;
    bool finite = false;  // alpha is zero from some index on
    std::size_t finite_length = 0;
};

// Iterates the greedy map on 1 in 50-digit arithmetic; stops at the length
// requested or where rounding could have reached the digit boundaries.
GreedyExpansion greedy_expansion_of_one(const BetaBase& b, std::size_t length = kDefaultSearchBound);
GreedyExpansion greedy_expansion_from(const PeriodicExpansion& e, int max_digit,
                                      std::size_t length = kDefaultSearchBound);

struct LexWindow {
    std::size_t M = 0;
    std::size_t p = 0;
};

// Smallest M with (eps_{M+1..p}) > (alpha_{1..p-M}) decided within the search
// bound, and the smallest such p.
LexWindow find_lex_window(const GreedyExpansion& ge, std::size_t search_bound = kDefaultSearchBound);

// Length-p SFT whose allowed words lie strictly between eps_{1..p} and
// alpha_{1..p}. p is raised to 2 if smaller.
SftSpec sft_from_lex(const GreedyExpansion& ge, const LexWindow& win,
                     std::uint64_t budget = kDefaultEnumerationBudget);

Ifs beta_ifs(const BetaBase& b);

Word greedy_digits(const BetaBase& b, double x, std::size_t n);
Word lazy_digits(const BetaBase& b, double x, std::size_t n);

struct GreedyLazyResult {
    Verdict verdict = Verdict::Unique;
    std::size_t depth_reached = 0;
};

GreedyLazyResult is_univoque_by_greedy_lazy(const BetaBase& b, double x, std::size_t depth);

// Base whose greedy expansion of 1 is the given sequence.
double beta_from_periodic_expansion(const PeriodicExpansion& e, double tolerance = kDefaultTolerance);

// [(ceil(beta)-beta)/(beta-1), 1] clipped to the attractor; empty (right <
// left) or a single point when beta <= 3/2.
Interval restrict_to_core(const BetaBase& b);

// Holes for the geometric synthesis restricted to the core: the switch regions
// plus the two parts of the attractor outside the core.
std::vector<Interval> core_holes(const BetaBase& b);

}  // namespace univoque
