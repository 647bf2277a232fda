#pragma once

#include <doctest.h>

#include "univoque/beta.hpp"
#include "univoque/error.hpp"
#include "univoque/pipeline.hpp"

namespace testing {

// Code of the univoque::Error thrown by f.
template <class F>
univoque::ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const univoque::Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return univoque::ErrorCode::InvalidInput;
}

inline univoque::PeriodicExpansion star_expansion() {
    return univoque::parse_expansion("111(00001)");
}

inline const univoque::BetaRun& star_run() {
    static const univoque::BetaRun run = univoque::run_beta_pipeline(star_expansion());
    return run;
}

}  // namespace testing
