#include "univoque/word.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "univoque/error.hpp"

namespace univoque {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::NotAnInterval: return "NotAnInterval";
        case ErrorCode::DegenerateAttractor: return "DegenerateAttractor";
        case ErrorCode::DegenerateSwitchRegion: return "DegenerateSwitchRegion";
        case ErrorCode::NoOverlap: return "NoOverlap";
        case ErrorCode::BoundaryTouch: return "BoundaryTouch";
        case ErrorCode::OutsideAttractor: return "OutsideAttractor";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::RoundTripFailed: return "RoundTripFailed";
        case ErrorCode::FiniteGreedyExpansion: return "FiniteGreedyExpansion";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::Stuck: return "Stuck";
        case ErrorCode::NonPositiveDelta: return "NonPositiveDelta";
        case ErrorCode::AllForbidden: return "AllForbidden";
        case ErrorCode::Intractable: return "Intractable";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::Mismatch: return "Mismatch";
    }
    return "Unknown";
}

WordCode checked_power(int m, int n) {
    WordCode result = 1;
    for (int i = 0; i < n; ++i) {
        if (result > std::numeric_limits<WordCode>::max() / static_cast<WordCode>(m)) {
            return 0;
        }
        result *= static_cast<WordCode>(m);
    }
    return result;
}

WordCode encode(std::span<const Symbol> w, int m) {
    WordCode code = 0;
    for (Symbol s : w) {
        code = code * static_cast<WordCode>(m) + static_cast<WordCode>(s);
    }
    return code;
}

Word decode(WordCode code, int m, int length) {
    Word w(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        w[static_cast<std::size_t>(i)] = static_cast<Symbol>(code % static_cast<WordCode>(m));
        code /= static_cast<WordCode>(m);
    }
    return w;
}

std::string format_word(std::span<const Symbol> w, int m) {
    std::string out;
    const bool compact = m <= 10;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0) {
            out += ',';
        }
        out += std::to_string(w[i]);
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word w;
    if (text.find(',') == std::string_view::npos) {
        for (char c : text) {
            if (c < '0' || c > '9') {
                throw Error(ErrorCode::InvalidInput, "bad digit '" + std::string(1, c) + "' in word");
            }
            w.push_back(c - '0');
        }
        return w;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string_view::npos) {
            next = text.size();
        }
        std::string_view token = text.substr(pos, next - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
            throw Error(ErrorCode::InvalidInput, "bad symbol '" + std::string(token) + "' in word");
        }
        w.push_back(value);
        pos = next + 1;
    }
    return w;
}

int lex_compare(std::span<const Symbol> a, std::span<const Symbol> b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) {
            return a[i] < b[i] ? -1 : 1;
        }
    }
    return 0;
}

}  // namespace univoque
