#pragma once

#include <string>

#include "qent/indicators.hpp"
#include "qent/separability.hpp"
#include "qent/state.hpp"

namespace qent {

/// State file format: { "dims": [d1,...,dn], "amps": [[re,im], ...] } in the
/// library's row-major convention. Length mismatches are rejected.
PureState parse_state_json(const std::string& text);
PureState load_state_file(const std::string& path);
std::string state_json(const PureState& state);
void save_state_file(const PureState& state, const std::string& path);

/// Machine-readable analysis document. Field names are part of the CLI
/// contract: dims, levels[].{level,count,coarse_binary,coarse_raw,
/// branch_probabilities,minors[].{branch,row_pair,col_pair,re,im,magnitude,
/// binary}}, coarse_binary, coarse_raw, and concurrence / cayley / tangle
/// when present. Serialization order is the canonical minor order.
std::string analysis_json(const AnalysisReport& report);

/// Separability document: completely_separable, per_site_separable,
/// marginal, factors, core (or null), core_sites.
std::string separability_json(const SeparabilityReport& report);

/// Combined document produced by `analyze`: the analysis fields plus a
/// "state" echo and a "separability" object.
std::string report_document_json(const PureState& state, const AnalysisReport& analysis,
                                 const SeparabilityReport& separability);

} // namespace qent
