#include "univoque/io.hpp"

#include <cmath>

#include "univoque/error.hpp"

namespace univoque {

namespace {

json parse_document(std::string_view text, std::string_view what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + " is not valid JSON: " + e.what());
    }
}

double number_field(const json& obj, const char* key, std::string_view where) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw Error(ErrorCode::InvalidInput, std::string(where) + ": \"" + key + "\" must be a number");
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidInput, std::string(where) + ": \"" + key + "\" must be finite");
    }
    return v;
}

json perron_json(const PerronEstimate& p) {
    return {{"value", p.value}, {"lower", p.lower}, {"upper", p.upper}, {"iterations", p.iterations}};
}

std::string count_string(const BigCount& c) {
    return c.str();
}

}  // namespace

Ifs parse_ifs(std::string_view text) {
    const json doc = parse_document(text, "IFS spec");
    if (!doc.is_object()) {
        throw Error(ErrorCode::InvalidInput, "IFS spec must be a JSON object");
    }
    const auto maps = doc.find("maps");
    if (maps == doc.end() || !maps->is_array()) {
        throw Error(ErrorCode::InvalidInput, "IFS spec needs a \"maps\" array");
    }
    std::vector<Similitude> out;
    for (std::size_t i = 0; i < maps->size(); ++i) {
        const json& m = (*maps)[i];
        const std::string where = "maps[" + std::to_string(i) + "]";
        if (!m.is_object()) {
            throw Error(ErrorCode::InvalidInput, where + " must be an object");
        }
        out.push_back({number_field(m, "ratio", where), number_field(m, "translation", where)});
    }
    double tol = kDefaultTolerance;
    if (doc.contains("tolerance")) {
        tol = number_field(doc, "tolerance", "IFS spec");
    }
    return Ifs(std::move(out), tol);
}

json to_json(const Ifs& ifs) {
    json maps = json::array();
    for (const auto& f : ifs.maps()) {
        maps.push_back({{"ratio", f.ratio}, {"translation", f.translation}});
    }
    return {{"maps", maps}, {"tolerance", ifs.tolerance()}};
}

json to_json(const SftSpec& sft) {
    json forbidden = json::array();
    for (WordCode c : sft.forbidden_codes()) {
        forbidden.push_back(format_word(decode(c, sft.alphabet(), sft.length()), sft.alphabet()));
    }
    return {{"m", sft.alphabet()}, {"L", sft.length()}, {"forbidden", forbidden}};
}

SftSpec parse_sft(std::string_view text) {
    const json doc = parse_document(text, "SFT spec");
    if (!doc.is_object() || !doc.contains("m") || !doc["m"].is_number_integer() || !doc.contains("L") ||
        !doc["L"].is_number_integer() || !doc.contains("forbidden") || !doc["forbidden"].is_array()) {
        throw Error(ErrorCode::InvalidInput, "SFT spec needs integer \"m\", integer \"L\" and a \"forbidden\" array");
    }
    const auto m = doc["m"].get<long long>();
    const auto len = doc["L"].get<long long>();
    if (m < 2 || m > 64 || len < 2 || len > 64) {
        throw Error(ErrorCode::InvalidInput, "SFT spec: m or L out of range");
    }
    const WordCode total = checked_power(static_cast<int>(m), static_cast<int>(len));
    if (total == 0 || total > kDefaultEnumerationBudget) {
        throw Error(ErrorCode::Intractable, "SFT spec: m^L exceeds the enumeration budget");
    }
    std::vector<bool> allowed(total, true);
    for (const auto& entry : doc["forbidden"]) {
        if (!entry.is_string()) {
            throw Error(ErrorCode::InvalidInput, "SFT spec: forbidden words must be strings");
        }
        const Word w = parse_word(entry.get<std::string>());
        if (static_cast<long long>(w.size()) != len) {
            throw Error(ErrorCode::InvalidInput, "SFT spec: word \"" + entry.get<std::string>() + "\" has wrong length");
        }
        for (Symbol s : w) {
            if (s >= m) {
                throw Error(ErrorCode::InvalidInput, "SFT spec: symbol out of range in \"" + entry.get<std::string>() + "\"");
            }
        }
        allowed[encode(w, static_cast<int>(m))] = false;
    }
    return SftSpec(static_cast<int>(m), static_cast<int>(len), std::move(allowed));
}

json to_json(const Interval& i) {
    return json::array({i.left, i.right});
}

json to_json(const SccReport& report) {
    json sizes = json::array();
    std::size_t nontrivial = 0;
    for (const auto& c : report.components) {
        sizes.push_back(c.vertices.size());
        nontrivial += c.trivial ? 0 : 1;
    }
    json roots = json::array();
    for (const auto& cr : report.component_roots) {
        roots.push_back({
            {"component", cr.component},
            {"size", report.components[cr.component].vertices.size()},
            {"root", cr.root},
            {"bisection_root", cr.bisection_root},
            {"shortcut_root", cr.shortcut_root ? json(*cr.shortcut_root) : json(nullptr)},
            {"phi_at_zero", cr.phi_at_zero},
            {"phi_at_root", perron_json(cr.phi_at_root)},
            {"residual", std::abs(cr.phi_at_root.value - 1.0)},
            {"bisection_steps", cr.bisection_steps},
        });
    }
    return {
        {"component_sizes", sizes},
        {"nontrivial_components", nontrivial},
        {"component_roots", roots},
        {"dimension", report.dimension},
        {"method", std::string(to_string(report.method))},
        {"dominant", report.dominant ? json(*report.dominant) : json(nullptr)},
    };
}

json to_json(const DimensionResult& result) {
    json out;
    if (result.graph) {
        out["vertices"] = result.graph->vertex_count();
        out["edges"] = result.graph->digraph.edges().size();
        out["scc"] = to_json(result.report);
    } else {
        out["vertices"] = 0;
        out["edges"] = 0;
        out["scc"] = nullptr;
    }
    out["dimension"] = result.dimension();
    if (!result.note.empty()) {
        out["note"] = result.note;
    }
    return out;
}

json to_json(const GreedyExpansion& ge, std::size_t prefix) {
    const std::size_t n = std::min(prefix, ge.alpha.size());
    const int m = ge.max_digit + 1;
    return {
        {"alpha", format_word(std::span(ge.alpha).first(n), m)},
        {"epsilon", format_word(std::span(ge.epsilon).first(n), m)},
        {"periodic", ge.periodic_form ? json(format_expansion(*ge.periodic_form)) : json(nullptr)},
        {"finite", ge.finite},
        {"digits_available", ge.alpha.size()},
    };
}

json to_json(const BetaRun& run) {
    return {
        {"mode", "beta"},
        {"beta", run.base.beta()},
        {"digits", run.base.digit_count()},
        {"tolerance", run.base.tolerance()},
        {"expansion", to_json(run.expansion, std::max<std::size_t>(run.window.p, 20))},
        {"window", {{"M", run.window.M}, {"p", run.window.p}}},
        {"sft", {{"m", run.sft.alphabet()}, {"L", run.sft.length()}, {"allowed_words", run.sft.allowed_count()},
                 {"forbidden_words", run.sft.forbidden_count()}}},
        {"graph", to_json(run.result)},
        {"dimension", run.result.dimension()},
    };
}

json to_json(const IfsRun& run) {
    json regions = json::array();
    for (const auto& r : run.regions) {
        regions.push_back({{"left", r.span.left}, {"right", r.span.right}, {"branches", r.branches}});
    }
    json holes = json::array();
    for (const auto& h : run.holes) {
        holes.push_back(to_json(h));
    }
    json out = {
        {"mode", "ifs"},
        {"attractor", to_json(run.attractor)},
        {"switch_regions", regions},
        {"holes", holes},
    };
    if (run.synthesis) {
        const auto& d = run.synthesis->diagnostics;
        const int m = run.synthesis->sft.alphabet();
        json witnesses = json::array();
        for (const auto& w : d.witnesses) {
            witnesses.push_back({{"endpoint", w.endpoint},
                                 {"word", format_word(w.word, m)},
                                 {"image", w.image},
                                 {"margin", w.margin},
                                 {"expansion", w.expansion}});
        }
        json enlarged = json::array();
        for (const auto& h : d.enlarged_regions) {
            enlarged.push_back(to_json(h));
        }
        out["witnesses"] = witnesses;
        out["delta"] = d.delta;
        out["level"] = d.level;
        out["enlarged_regions"] = enlarged;
        out["near_boundary_words"] = d.near_boundary_words;
        out["sft"] = {{"m", m},
                      {"L", run.synthesis->sft.length()},
                      {"allowed_words", run.synthesis->sft.allowed_count()},
                      {"forbidden_words", run.synthesis->sft.forbidden_count()}};
    }
    out["graph"] = to_json(run.result);
    out["dimension"] = run.result.dimension();
    return out;
}

json to_json(const UniquenessVerdict& v) {
    json out = {{"verdict", std::string(to_string(v.verdict))}, {"depth_reached", v.depth_reached}};
    if (v.witness) {
        out["witness"] = {{"prefix", v.witness->prefix},
                          {"branches", json::array({v.witness->first, v.witness->second})}};
    }
    return out;
}

json to_json(const AgreementReport& r) {
    json counts = json::array();
    for (std::size_t i = 0; i < r.lex_counts.size(); ++i) {
        counts.push_back({{"n", i + 1}, {"lex", count_string(r.lex_counts[i])}, {"geometric", count_string(r.core_counts[i])}});
    }
    json out = {
        {"beta", r.beta},
        {"beta_path_available", r.beta_path_available},
        {"agree", r.agree()},
    };
    if (!r.note.empty()) {
        out["note"] = r.note;
    }
    if (!r.beta_path_available) {
        return out;
    }
    out["max_n"] = r.max_n;
    out["counts_agree"] = r.counts_agree;
    out["first_mismatch"] = r.first_mismatch ? json(*r.first_mismatch) : json(nullptr);
    out["dimensions_agree"] = r.dimensions_agree;
    out["levels"] = {{"lex", r.lex_level}, {"core_geometric", r.core_level}, {"geometric", r.plain_level}};
    out["dimensions"] = {{"lex", r.lex_dimension}, {"core_geometric", r.core_dimension}, {"geometric", r.plain_dimension}};
    out["counts"] = counts;
    return out;
}

json to_json(const ScanReport& r) {
    json points = json::array();
    for (const auto& p : r.points) {
        json pt = {{"beta", p.beta}, {"ok", p.ok}};
        if (p.ok) {
            pt["p"] = p.p;
            pt["same_forbidden"] = p.same_forbidden;
            pt["lambda"] = p.lambda;
            pt["dimension"] = p.dimension;
            pt["formula"] = p.formula;
        } else {
            pt["error"] = p.error;
        }
        points.push_back(pt);
    }
    json out = {{"center", r.center}, {"radius", r.radius}, {"steps", r.steps}};
    if (r.stable_nonempty()) {
        out["stable_interval"] = json::array({r.points[*r.stable_first].beta, r.points[*r.stable_last].beta});
        out["stable_points"] = *r.stable_last - *r.stable_first + 1;
    } else {
        out["stable_interval"] = nullptr;
        out["stable_points"] = 0;
    }
    out["strictly_decreasing"] = r.strictly_decreasing;
    out["max_formula_error"] = r.max_formula_error;
    out["points"] = points;
    return out;
}

json to_json(const SamplingReport& r) {
    auto tally = [](const VerdictTally& t) {
        return json{{"total", t.total},
                    {"unique", t.unique},
                    {"not_unique", t.not_unique},
                    {"indeterminate", t.indeterminate},
                    {"rejected", t.rejected}};
    };
    return {{"seed", r.seed},
            {"samples", r.samples},
            {"length", r.length},
            {"depth", r.depth},
            {"allowed", tally(r.allowed)},
            {"forbidden", tally(r.forbidden)}};
}

}  // namespace univoque
