#include "univoque/beta.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "univoque/error.hpp"

namespace univoque {

namespace {

using big_float = boost::multiprecision::cpp_bin_float_50;

// Orbit error after n steps is about beta^n * 1e-50; stop well before it can
// reach the tolerance scale.
std::size_t reliable_steps(double beta) {
    return static_cast<std::size_t>(36.0 * std::log(10.0) / std::log(beta));
}

}  // namespace

BetaBase::BetaBase(double beta, double tolerance) : beta_(beta), digits_(0), tolerance_(tolerance) {
    if (!std::isfinite(beta) || !(beta > 1.0)) {
        throw Error(ErrorCode::InvalidInput, "beta must be a finite number greater than 1");
    }
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw Error(ErrorCode::InvalidInput, "tolerance must be a positive finite number");
    }
    if (std::abs(beta - std::round(beta)) <= tolerance) {
        throw Error(ErrorCode::InvalidInput, "beta must not be an integer");
    }
    if (beta > 1e6) {
        throw Error(ErrorCode::InvalidInput, "beta too large");
    }
    digits_ = static_cast<int>(std::ceil(beta));
}

std::vector<Interval> BetaBase::switch_regions() const {
    std::vector<Interval> out;
    const double top = max_digit() / (beta_ * (beta_ - 1.0));
    for (int l = 1; l <= max_digit(); ++l) {
        out.push_back({l / beta_, top + (l - 1) / beta_});
    }
    return out;
}

Symbol PeriodicExpansion::digit(std::size_t n) const {
    if (n <= preperiod.size()) {
        return preperiod[n - 1];
    }
    if (period.empty()) {
        return 0;
    }
    return period[(n - preperiod.size() - 1) % period.size()];
}

Word PeriodicExpansion::digits(std::size_t n) const {
    Word out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = digit(i + 1);
    }
    return out;
}

int PeriodicExpansion::max_digit() const {
    int d = 0;
    for (Symbol s : preperiod) {
        d = std::max(d, s);
    }
    for (Symbol s : period) {
        d = std::max(d, s);
    }
    return d;
}

PeriodicExpansion parse_expansion(std::string_view text) {
    PeriodicExpansion e;
    Word* part = &e.preperiod;
    bool in_period = false;
    bool closed = false;
    auto fail = [&](const std::string& why) {
        return Error(ErrorCode::InvalidInput, "expansion \"" + std::string(text) + "\": " + why);
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (closed) {
            throw fail("text after the closing parenthesis");
        }
        if (c >= '0' && c <= '9') {
            part->push_back(c - '0');
        } else if (c == '[') {
            const std::size_t end = text.find(']', i);
            if (end == std::string_view::npos) {
                throw fail("unterminated '['");
            }
            const std::string_view group = text.substr(i + 1, end - i - 1);
            if (group.empty() || group.find_first_not_of("0123456789,") != std::string_view::npos) {
                throw fail("bad digit group");
            }
            std::size_t pos = 0;
            while (pos <= group.size()) {
                const std::size_t next = std::min(group.find(',', pos), group.size());
                const std::string_view token = group.substr(pos, next - pos);
                int value = 0;
                auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
                if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
                    throw fail("bad digit group");
                }
                part->push_back(value);
                pos = next + 1;
            }
            i = end;
        } else if (c == '(') {
            if (in_period) {
                throw fail("nested '('");
            }
            in_period = true;
            part = &e.period;
        } else if (c == ')') {
            if (!in_period) {
                throw fail("unmatched ')'");
            }
            closed = true;
        } else {
            throw fail("unexpected character '" + std::string(1, c) + "'");
        }
    }
    if (in_period && !closed) {
        throw fail("unterminated '('");
    }
    if (e.preperiod.empty() && e.period.empty()) {
        throw fail("no digits");
    }
    return e;
}

std::string format_expansion(const PeriodicExpansion& e) {
    auto part = [](const Word& w) {
        const bool plain = std::all_of(w.begin(), w.end(), [](Symbol s) { return s <= 9; });
        if (plain) {
            return format_word(w, 10);
        }
        return "[" + format_word(w, 11) + "]";
    };
    std::string out = part(e.preperiod);
    if (!e.period.empty()) {
        out += "(" + part(e.period) + ")";
    }
    return out;
}

GreedyExpansion greedy_expansion_of_one(const BetaBase& b, std::size_t length) {
    GreedyExpansion ge;
    ge.max_digit = b.max_digit();
    const big_float beta = b.beta();
    const big_float tau = b.tolerance();
    const big_float slack = beta * tau;
    const std::size_t n = std::min(length, reliable_steps(b.beta()));

    big_float r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const big_float y = beta * r;
        int d = static_cast<int>(floor(y + slack));
        d = std::clamp(d, 0, b.max_digit());
        ge.alpha.push_back(d);
        r = y - d;
        if (r <= tau) {
            ge.finite = true;
            ge.finite_length = i + 1;
            ge.alpha.resize(length, 0);
            break;
        }
    }
    for (Symbol a : ge.alpha) {
        ge.epsilon.push_back(ge.max_digit - a);
    }
    return ge;
}

GreedyExpansion greedy_expansion_from(const PeriodicExpansion& e, int max_digit, std::size_t length) {
    if (e.max_digit() > max_digit) {
        throw Error(ErrorCode::InvalidInput, "expansion digit exceeds " + std::to_string(max_digit));
    }
    GreedyExpansion ge;
    ge.max_digit = max_digit;
    ge.periodic_form = e;
    ge.alpha = e.digits(length);
    const bool zero_tail = std::all_of(e.period.begin(), e.period.end(), [](Symbol s) { return s == 0; });
    if (zero_tail) {
        ge.finite = true;
        for (std::size_t i = 0; i < e.preperiod.size(); ++i) {
            if (e.preperiod[i] != 0) {
                ge.finite_length = i + 1;
            }
        }
    }
    for (Symbol a : ge.alpha) {
        ge.epsilon.push_back(max_digit - a);
    }
    return ge;
}

LexWindow find_lex_window(const GreedyExpansion& ge, std::size_t search_bound) {
    if (ge.finite) {
        throw Error(ErrorCode::FiniteGreedyExpansion,
                    "greedy expansion of 1 terminates after " + std::to_string(ge.finite_length) + " digits");
    }
    const std::size_t n = std::min(search_bound, ge.alpha.size());
    // alpha_j and eps_j are 1-based in the comparison below.
    for (std::size_t M = 0; M < n; ++M) {
        for (std::size_t j = 1; M + j <= n; ++j) {
            const Symbol e = ge.epsilon[M + j - 1];
            const Symbol a = ge.alpha[j - 1];
            if (e > a) {
                return {M, M + j};
            }
            if (e < a) {
                break;
            }
        }
    }
    throw Error(ErrorCode::NotFound, "no lexicographic window within " + std::to_string(n) + " digits");
}

SftSpec sft_from_lex(const GreedyExpansion& ge, const LexWindow& win, std::uint64_t budget) {
    const int m = ge.max_digit + 1;
    const std::size_t p = std::max<std::size_t>(win.p, 2);
    if (ge.alpha.size() < p || ge.epsilon.size() < p) {
        throw Error(ErrorCode::InvalidInput, "expansion shorter than the window");
    }
    const WordCode total = checked_power(m, static_cast<int>(p));
    if (total == 0 || total > budget) {
        throw Error(ErrorCode::Intractable, std::to_string(m) + "^" + std::to_string(p) +
                                                " words exceed the enumeration budget");
    }
    const WordCode lower = encode(std::span(ge.epsilon).first(p), m);
    const WordCode upper = encode(std::span(ge.alpha).first(p), m);
    std::vector<bool> allowed(total, false);
    for (WordCode c = lower + 1; c < upper; ++c) {
        allowed[c] = true;
    }
    return SftSpec(m, static_cast<int>(p), std::move(allowed));
}

Ifs beta_ifs(const BetaBase& b) {
    std::vector<Similitude> maps;
    for (int j = 0; j < b.digit_count(); ++j) {
        maps.push_back({1.0 / b.beta(), j / b.beta()});
    }
    return Ifs(std::move(maps), b.tolerance());
}

namespace {

double checked_start(const BetaBase& b, double x) {
    const double tol = b.tolerance();
    if (!std::isfinite(x) || x < -tol || x > b.right_end() + tol) {
        throw Error(ErrorCode::OutOfDomain, std::to_string(x) + " lies outside [0, " + std::to_string(b.right_end()) + "]");
    }
    return std::clamp(x, 0.0, b.right_end());
}

}  // namespace

Word greedy_digits(const BetaBase& b, double x, std::size_t n) {
    const double beta = b.beta();
    const double tol = b.tolerance();
    double y = checked_start(b, x);
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int d = std::clamp(static_cast<int>(std::floor(beta * (y + tol))), 0, b.max_digit());
        out.push_back(d);
        y = std::clamp(beta * y - d, 0.0, b.right_end());
    }
    return out;
}

Word lazy_digits(const BetaBase& b, double x, std::size_t n) {
    const double beta = b.beta();
    const double tol = b.tolerance();
    double y = checked_start(b, x);
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int d = std::clamp(static_cast<int>(std::ceil(beta * (y - tol) - b.right_end())), 0, b.max_digit());
        out.push_back(d);
        y = std::clamp(beta * y - d, 0.0, b.right_end());
    }
    return out;
}

GreedyLazyResult is_univoque_by_greedy_lazy(const BetaBase& b, double x, std::size_t depth) {
    const double beta = b.beta();
    const double tol = b.tolerance();
    const auto regions = b.switch_regions();
    double y = checked_start(b, x);
    bool near = false;
    for (std::size_t step = 0; step < depth; ++step) {
        const bool close = std::any_of(regions.begin(), regions.end(), [&](const Interval& s) {
            return std::abs(y - s.left) <= tol || std::abs(y - s.right) <= tol;
        });
        const int greedy = std::min(static_cast<int>(std::floor(beta * y)), b.max_digit());
        const int lazy = std::max(0, static_cast<int>(std::ceil(beta * y - b.right_end())));
        if (greedy != lazy) {
            return {close ? Verdict::Indeterminate : Verdict::NotUnique, step};
        }
        near = near || close;
        y = std::clamp(beta * y - greedy, 0.0, b.right_end());
    }
    return {near ? Verdict::Indeterminate : Verdict::Unique, depth};
}

double beta_from_periodic_expansion(const PeriodicExpansion& e, double tolerance) {
    for (const Word* w : {&e.preperiod, &e.period}) {
        for (Symbol s : *w) {
            if (s < 0) {
                throw Error(ErrorCode::InvalidInput, "negative digit");
            }
        }
    }
    const int dmax = e.max_digit();
    if (dmax == 0) {
        throw Error(ErrorCode::NoRoot, "an all-zero sequence never sums to 1");
    }
    const bool period_positive = std::any_of(e.period.begin(), e.period.end(), [](Symbol s) { return s > 0; });

    // V(beta) = sum d_n beta^-n, summing the periodic tail in closed form.
    auto value = [&](long double beta) {
        long double v = 0.0L;
        long double scale = 1.0L;
        for (Symbol d : e.preperiod) {
            scale /= beta;
            v += d * scale;
        }
        if (period_positive) {
            long double tail = 0.0L;
            long double s = 1.0L;
            for (Symbol d : e.period) {
                s /= beta;
                tail += d * s;
            }
            v += scale * tail / (1.0L - s);
        }
        return v;
    };

    long double lo = 1.0L;
    long double hi = dmax + 1.0L;
    const bool lo_above = period_positive || value(lo) >= 1.0L;
    if (!lo_above || value(hi) > 1.0L) {
        throw Error(ErrorCode::NoRoot, "V(beta) - 1 does not change sign on (1, " + std::to_string(dmax + 1) + "]");
    }
    for (int i = 0; i < 200 && hi - lo > 0.0L; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        if (value(mid) >= 1.0L) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double beta = static_cast<double>(0.5L * (lo + hi));
    if (beta - 1.0 <= 1e-6 || std::abs(beta - std::round(beta)) <= tolerance) {
        throw Error(ErrorCode::RoundTripFailed, "root beta = " + std::to_string(beta) +
                                                    " is an integer; not a greedy expansion of 1");
    }
    if (std::abs(static_cast<double>(value(beta)) - 1.0) >= 1e-12) {
        throw Error(ErrorCode::NoRoot, "bisection did not reach |V(beta) - 1| < 1e-12");
    }

    const std::size_t check = e.preperiod.size() + (e.period.empty() ? 3 : 3 * e.period.size());
    const GreedyExpansion ge = greedy_expansion_of_one(BetaBase(beta, tolerance), check);
    const Word expected = e.digits(check);
    const std::size_t n = std::min(check, ge.alpha.size());
    if (!std::equal(expected.begin(), expected.begin() + static_cast<std::ptrdiff_t>(n), ge.alpha.begin())) {
        throw Error(ErrorCode::RoundTripFailed, "greedy expansion of 1 in base " + std::to_string(beta) + " is " +
                                                    format_word(std::span(ge.alpha).first(n), ge.max_digit + 1) +
                                                    ", not " + format_expansion(e));
    }
    return beta;
}

Interval restrict_to_core(const BetaBase& b) {
    const double left = (b.digit_count() - b.beta()) / (b.beta() - 1.0);
    return {std::max(left, 0.0), std::min(1.0, b.right_end())};
}

std::vector<Interval> core_holes(const BetaBase& b) {
    const Interval core = restrict_to_core(b);
    const Interval k = b.attractor();
    if (core.length() <= b.tolerance()) {
        return {k};
    }
    auto holes = b.switch_regions();
    if (core.left > k.left) {
        holes.push_back({k.left, core.left});
    }
    if (core.right < k.right) {
        holes.push_back({core.right, k.right});
    }
    return merge_intervals(std::move(holes));
}

}  // namespace univoque
