#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qent/indicators.hpp"
#include "qent/state.hpp"

namespace qent {

/// First minor of a flattening whose magnitude exceeds the threshold,
/// in canonical (column-pair, then row-pair) order.
struct MinorWitness {
    std::pair<int, int> row_pair;
    std::pair<int, int> col_pair;
    double magnitude = 0.0;
};

/// Outcome of the exhaustive 2x2-minor rank-1 test on a flattening.
struct RankDecision {
    bool rank_one = false;
    bool degenerate = false; // zero matrix
    bool marginal = false;   // max_minor within a factor 10 of the threshold
    std::optional<MinorWitness> witness;
    double max_minor = 0.0;
};

/// Result of testing whether one site splits off.
struct PartialSplit {
    bool separable = false;
    bool marginal = false;
    std::optional<std::vector<cx>> factor;  // unit vector, phase-fixed
    std::optional<PureState> remainder;     // unit-norm, on the other sites
};

/// Factors peeled from the last site inward (factors[0] is site n's), plus
/// the residual entangled core on the leading sites when the recursion
/// stops early. A completely separable state has n factors and no core.
struct Factorization {
    std::vector<std::vector<cx>> factors;
    std::optional<PureState> core;
    int core_sites = 0;
};

struct SeparabilityReport {
    bool completely_separable = false;
    std::vector<bool> per_site_separable;
    std::vector<bool> per_site_marginal;
    Factorization factorization;
};

/// rank_one iff every 2x2 minor has magnitude <= eps. A zero matrix is
/// reported rank_one with the degenerate flag set.
RankDecision matrix_rank_one(const Flattening& flat, double eps = eps_zero);

/// True iff flatten(state, site) is rank-1; on success also returns the
/// site factor (a unit vector spanning the image, with its largest-magnitude
/// component made real positive) and the unit-norm remainder on the other
/// sites. Reinserting the factor at `site` reproduces the input up to one
/// global scalar.
PartialSplit partially_separable(const PureState& state, int site, double eps = eps_zero);

/// Recursive last-site factorization: peel site n while its flattening is
/// rank-1, stop at the first entangled level and return the rest as core.
Factorization factorize(const PureState& state, double eps = eps_zero);

/// True iff the state is partially separable with respect to every site.
bool completely_separable(const PureState& state, double eps = eps_zero);

/// Per-site verdicts, the overall verdict, and the factorization.
SeparabilityReport classify(const PureState& state, double eps = eps_zero);

/// Re-tensors core (or the innermost factor) with the split factors;
/// matches the factorized input up to one global complex scalar.
PureState reconstruct(const Factorization& f);

} // namespace qent
