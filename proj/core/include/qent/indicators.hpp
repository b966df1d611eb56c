#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qent/state.hpp"

namespace qent {

/// Magnitudes at or below this threshold count as zero for binarization and
/// rank decisions (absolute, on unit-norm input).
inline constexpr double eps_zero = 1e-10;

/// One 2x2 minor of one measurement-branch matrix.
///
/// `branch` lists the fixed outcomes (b_n, b_{n-1}, ..., b_{m+1}), most
/// significant first; empty at the top level m = n.
struct MinorRecord {
    int level = 0;
    std::vector<int> branch;
    std::pair<int, int> row_pair;
    std::pair<int, int> col_pair;
    cx value{};
    double magnitude = 0.0;
    int binary = 0;
};

/// All 2x2 minors at one measurement level, in canonical order:
/// branches lexicographic in (b_n, ..., b_{m+1}), then column pairs
/// (c1 < c2) lexicographic, then row pairs (r1 < r2) lexicographic.
struct LevelReport {
    int level = 0;
    std::vector<MinorRecord> minors;
    long long count = 0; // = minor_count(dims, level)
    double coarse_binary = 0.0;
    double coarse_raw = 0.0;
    std::vector<double> branch_probabilities; // squared raw slice norms
};

enum class CoarseMode { binary, raw };

/// Full determinantal profile of a state: level reports for m = N down to 2,
/// coarse vectors in both modes, plus concurrence for two qubits and the
/// hyperdeterminant/tangle for three qubits.
struct AnalysisReport {
    std::vector<int> dims;
    std::vector<LevelReport> levels;    // m = N .. 2
    std::vector<double> coarse_binary;  // [C_N, ..., C_2]
    std::vector<double> coarse_raw;
    std::optional<double> concurrence;
    std::optional<cx> cayley;
    std::optional<double> tangle;
};

/// Enumerates every 2x2 minor at level m of a unit-norm state: for each
/// outcome tuple of sites m+1..n, the raw coefficient slice is reshaped to
/// d_m rows by prod_{i<m} d_i columns (site 1 most significant) and all its
/// minors are emitted in canonical order. For a tripartite qubit state this
/// yields the six level-3 determinants and the two level-2 determinants in
/// their conventional numbering.
LevelReport level_minors(const PureState& state, int m, double eps = eps_zero);

/// (prod_{j>m} d_j) * C(d_m, 2) * C(prod_{i<m} d_i, 2); the number of minors
/// level_minors emits. For all-qubit dims this is 2^(N-m) * C(2^(m-1), 2).
long long minor_count(const std::vector<int>& dims, int m);

/// Sum over m = 2..N of C(2^(m-1), 2), the number of distinct minors across
/// all levels for N qubits; equals (2^N - 1)(2^(N-1) - 1)/3.
long long total_distinct_minors(int n_qubits);

/// Mean over all minors of the binarized value or of the raw magnitude.
double coarse_indicator(const LevelReport& report, CoarseMode mode);

AnalysisReport full_profile(const PureState& state, double eps = eps_zero);

/// 2|x00*x11 - x01*x10| for a unit-norm two-qubit state; 0 = separable,
/// 1 = maximally entangled.
double concurrence(const PureState& state);

/// Cayley hyperdeterminant Det A of a three-qubit coefficient tensor,
/// evaluated on the raw amplitudes.
cx cayley_hyperdet(const PureState& state);

/// 4|Det A|, the 3-tangle.
double tangle(const PureState& state);

/// Det A as a function of the six level-3 minors (in conventional order):
/// d3^2 + d4^2 - 2*d2*d5 - 2*d1*d6.
cx hyperdet_from_minors(const std::array<cx, 6>& d);

} // namespace qent
