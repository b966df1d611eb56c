#include "qent/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qent {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_pair(const cx& a) { return ordered_json::array({a.real(), a.imag()}); }

ordered_json state_object(const PureState& state) {
    ordered_json j;
    j["dims"] = state.dims;
    ordered_json amps = ordered_json::array();
    for (const cx& a : state.amps) amps.push_back(complex_pair(a));
    j["amps"] = std::move(amps);
    return j;
}

ordered_json analysis_object(const AnalysisReport& report) {
    ordered_json j;
    j["dims"] = report.dims;
    ordered_json levels = ordered_json::array();
    for (const LevelReport& level : report.levels) {
        ordered_json jl;
        jl["level"] = level.level;
        jl["count"] = level.count;
        ordered_json minors = ordered_json::array();
        for (const MinorRecord& rec : level.minors) {
            ordered_json jm;
            jm["branch"] = rec.branch;
            jm["row_pair"] = ordered_json::array({rec.row_pair.first, rec.row_pair.second});
            jm["col_pair"] = ordered_json::array({rec.col_pair.first, rec.col_pair.second});
            jm["re"] = rec.value.real();
            jm["im"] = rec.value.imag();
            jm["magnitude"] = rec.magnitude;
            jm["binary"] = rec.binary;
            minors.push_back(std::move(jm));
        }
        jl["minors"] = std::move(minors);
        jl["coarse_binary"] = level.coarse_binary;
        jl["coarse_raw"] = level.coarse_raw;
        jl["branch_probabilities"] = level.branch_probabilities;
        levels.push_back(std::move(jl));
    }
    j["levels"] = std::move(levels);
    j["coarse_binary"] = report.coarse_binary;
    j["coarse_raw"] = report.coarse_raw;
    if (report.concurrence) j["concurrence"] = *report.concurrence;
    if (report.cayley) {
        j["cayley"] = ordered_json{{"re", report.cayley->real()}, {"im", report.cayley->imag()}};
    }
    if (report.tangle) j["tangle"] = *report.tangle;
    return j;
}

ordered_json separability_object(const SeparabilityReport& report) {
    ordered_json j;
    j["completely_separable"] = report.completely_separable;
    j["per_site_separable"] = report.per_site_separable;
    j["marginal"] = report.per_site_marginal;
    ordered_json factors = ordered_json::array();
    for (const std::vector<cx>& factor : report.factorization.factors) {
        ordered_json jf = ordered_json::array();
        for (const cx& a : factor) jf.push_back(complex_pair(a));
        factors.push_back(std::move(jf));
    }
    j["factors"] = std::move(factors);
    j["core"] = report.factorization.core ? state_object(*report.factorization.core) : ordered_json(nullptr);
    j["core_sites"] = report.factorization.core_sites;
    return j;
}

} // namespace

PureState parse_state_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("state file is not valid JSON: ") + e.what(), 0);
    }
    if (!j.is_object() || !j.contains("dims") || !j.contains("amps")) {
        throw validation_error("state file must be an object with \"dims\" and \"amps\"");
    }
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer()) throw validation_error("state file: dims must be integers");
        dims.push_back(d.get<int>());
    }
    std::vector<cx> amps;
    for (const auto& a : j["amps"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw validation_error("state file: each amplitude must be a [re, im] pair");
        }
        amps.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    return make_state(std::move(dims), std::move(amps));
}

PureState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open state file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("error reading state file: " + path);
    return parse_state_json(buf.str());
}

std::string state_json(const PureState& state) { return state_object(state).dump(); }

void save_state_file(const PureState& state, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open file for writing: " + path);
    out << state_object(state).dump(2) << "\n";
    out.flush();
    if (!out) throw io_error("error writing state file: " + path);
}

std::string analysis_json(const AnalysisReport& report) { return analysis_object(report).dump(); }

std::string separability_json(const SeparabilityReport& report) {
    return separability_object(report).dump();
}

std::string report_document_json(const PureState& state, const AnalysisReport& analysis,
                                 const SeparabilityReport& separability) {
    ordered_json j = analysis_object(analysis);
    j["state"] = state_object(state);
    j["separability"] = separability_object(separability);
    return j.dump(2);
}

} // namespace qent
