#pragma once

#include <string_view>

namespace univoque {

// Outcome of a finite-depth uniqueness test. Indeterminate means the orbit came
// within the tolerance of a switch-region boundary before anything was decided.
enum class Verdict { Unique, NotUnique, Indeterminate };

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Unique:
            return "UNIQUE";
        case Verdict::NotUnique:
            return "NOT_UNIQUE";
        case Verdict::Indeterminate:
            return "INDETERMINATE";
    }
    return "?";
}

}  // namespace univoque
