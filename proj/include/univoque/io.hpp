#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "univoque/beta.hpp"
#include "univoque/graph.hpp"
#include "univoque/ifs.hpp"
#include "univoque/oracle.hpp"
#include "univoque/pipeline.hpp"
#include "univoque/sft.hpp"

namespace univoque {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

// { "maps": [ {"ratio": r, "translation": a}, ... ], "tolerance": tau }
Ifs parse_ifs(std::string_view text);
json to_json(const Ifs& ifs);

// { "m": m, "L": L, "forbidden": ["0110", ...] }
json to_json(const SftSpec& sft);
SftSpec parse_sft(std::string_view text);

json to_json(const Interval& i);
json to_json(const SccReport& report);
json to_json(const DimensionResult& result);
json to_json(const GreedyExpansion& ge, std::size_t prefix);
json to_json(const BetaRun& run);
json to_json(const IfsRun& run);
json to_json(const UniquenessVerdict& v);
json to_json(const AgreementReport& report);
json to_json(const ScanReport& report);
json to_json(const SamplingReport& report);

}  // namespace univoque
