#include "qent/indicators.hpp"

#include <cmath>
#include <string>

namespace qent {

namespace {

void require_unit_norm(const PureState& state, const char* what) {
    if (std::abs(squared_norm(state) - 1.0) > 1e-6) {
        throw validation_error(std::string(what) + ": state must be unit-norm (normalize it first)");
    }
}

void check_level(const PureState& state, int m, const char* what) {
    if (m < 2 || m > state.sites()) {
        throw dimension_error(std::string(what) + ": level " + std::to_string(m) + " out of range [2, " +
                              std::to_string(state.sites()) + "]");
    }
}

long long choose2(long long k) { return k * (k - 1) / 2; }

} // namespace

long long minor_count(const std::vector<int>& dims, int m) {
    if (m < 2 || m > static_cast<int>(dims.size())) {
        throw dimension_error("minor_count: level " + std::to_string(m) + " out of range [2, " +
                              std::to_string(dims.size()) + "]");
    }
    long long branches = 1;
    for (std::size_t j = static_cast<std::size_t>(m); j < dims.size(); ++j) branches *= dims[j];
    long long cols = 1;
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(m); ++i) cols *= dims[i];
    return branches * choose2(dims[static_cast<std::size_t>(m - 1)]) * choose2(cols);
}

long long total_distinct_minors(int n_qubits) {
    if (n_qubits < 2) throw dimension_error("total_distinct_minors: need at least 2 qubits");
    long long total = 0;
    for (int m = 2; m <= n_qubits; ++m) total += choose2(1LL << (m - 1));
    // closed form cross-check
    const long long closed = ((1LL << n_qubits) - 1) * ((1LL << (n_qubits - 1)) - 1) / 3;
    if (total != closed) throw error("total_distinct_minors: sum disagrees with closed form");
    return total;
}

LevelReport level_minors(const PureState& state, int m, double eps) {
    check_level(state, m, "level_minors");
    require_unit_norm(state, "level_minors");

    const auto& dims = state.dims;
    const int n = state.sites();
    const int d_m = dims[static_cast<std::size_t>(m - 1)];

    long long cols = 1;
    for (int i = 0; i + 1 < m; ++i) cols *= dims[static_cast<std::size_t>(i)];
    std::size_t tail_size = 1; // prod of dims after site m
    for (int j = m; j < n; ++j) tail_size *= static_cast<std::size_t>(dims[static_cast<std::size_t>(j)]);

    LevelReport report;
    report.level = m;
    report.count = minor_count(dims, m);
    report.minors.reserve(static_cast<std::size_t>(report.count));

    // Branch tuples (b_n, ..., b_{m+1}) in lexicographic order: b_n slowest.
    const int n_branch_sites = n - m;
    std::vector<int> branch(static_cast<std::size_t>(n_branch_sites), 0);
    std::vector<cx> slice(static_cast<std::size_t>(d_m) * static_cast<std::size_t>(cols));

    long long ones = 0;
    double raw_sum = 0.0;
    for (;;) {
        // offset contribution of the fixed tail: branch[k] holds b_{n-k}
        std::size_t tail_off = 0;
        {
            std::size_t stride = 1;
            for (int k = 0; k < n_branch_sites; ++k) {
                // site n-k has stride prod_{j>n-k} d_j
                tail_off += static_cast<std::size_t>(branch[static_cast<std::size_t>(k)]) * stride;
                stride *= static_cast<std::size_t>(dims[static_cast<std::size_t>(n - 1 - k)]);
            }
        }

        // gather the branch matrix: M(r, c) = amps[(c*d_m + r)*tail_size + tail_off]
        double prob = 0.0;
        for (long long c = 0; c < cols; ++c) {
            for (int r = 0; r < d_m; ++r) {
                const std::size_t src =
                    (static_cast<std::size_t>(c) * static_cast<std::size_t>(d_m) + static_cast<std::size_t>(r)) *
                        tail_size +
                    tail_off;
                const cx a = state.amps[src];
                slice[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)] = a;
                prob += std::norm(a);
            }
        }
        report.branch_probabilities.push_back(prob);

        for (long long c1 = 0; c1 < cols; ++c1) {
            for (long long c2 = c1 + 1; c2 < cols; ++c2) {
                for (int r1 = 0; r1 < d_m; ++r1) {
                    for (int r2 = r1 + 1; r2 < d_m; ++r2) {
                        const cx v = slice[static_cast<std::size_t>(r1) * cols + c1] *
                                         slice[static_cast<std::size_t>(r2) * cols + c2] -
                                     slice[static_cast<std::size_t>(r2) * cols + c1] *
                                         slice[static_cast<std::size_t>(r1) * cols + c2];
                        MinorRecord rec;
                        rec.level = m;
                        rec.branch = branch;
                        rec.row_pair = {r1, r2};
                        rec.col_pair = {static_cast<int>(c1), static_cast<int>(c2)};
                        rec.value = v;
                        rec.magnitude = std::abs(v);
                        rec.binary = rec.magnitude > eps ? 1 : 0;
                        ones += rec.binary;
                        raw_sum += rec.magnitude;
                        report.minors.push_back(std::move(rec));
                    }
                }
            }
        }

        // next branch tuple: last component (b_{m+1}) fastest
        int k = n_branch_sites - 1;
        for (; k >= 0; --k) {
            // branch[k] holds b_{n-k}, so its radix is d_{n-k}
            if (++branch[static_cast<std::size_t>(k)] < dims[static_cast<std::size_t>(n - 1 - k)]) break;
            branch[static_cast<std::size_t>(k)] = 0;
        }
        if (k < 0) break;
    }

    const auto total = static_cast<double>(report.minors.size());
    report.coarse_binary = static_cast<double>(ones) / total;
    report.coarse_raw = raw_sum / total;
    return report;
}

double coarse_indicator(const LevelReport& report, CoarseMode mode) {
    double sum = 0.0;
    for (const MinorRecord& rec : report.minors) {
        sum += (mode == CoarseMode::binary) ? static_cast<double>(rec.binary) : rec.magnitude;
    }
    return sum / static_cast<double>(report.minors.size());
}

AnalysisReport full_profile(const PureState& state, double eps) {
    if (state.sites() < 2) throw dimension_error("full_profile: need at least 2 sites");
    require_unit_norm(state, "full_profile");

    AnalysisReport report;
    report.dims = state.dims;
    for (int m = state.sites(); m >= 2; --m) {
        LevelReport level = level_minors(state, m, eps);
        report.coarse_binary.push_back(level.coarse_binary);
        report.coarse_raw.push_back(level.coarse_raw);
        report.levels.push_back(std::move(level));
    }
    if (state.dims == std::vector<int>{2, 2}) {
        report.concurrence = concurrence(state);
    }
    if (state.dims == std::vector<int>{2, 2, 2}) {
        report.cayley = cayley_hyperdet(state);
        report.tangle = 4.0 * std::abs(*report.cayley);
    }
    return report;
}

double concurrence(const PureState& state) {
    if (state.dims != std::vector<int>{2, 2}) {
        throw dimension_error("concurrence: defined for dims [2,2] only");
    }
    require_unit_norm(state, "concurrence");
    const auto& x = state.amps;
    return 2.0 * std::abs(x[0] * x[3] - x[1] * x[2]);
}

cx cayley_hyperdet(const PureState& state) {
    if (state.dims != std::vector<int>{2, 2, 2}) {
        throw dimension_error("cayley_hyperdet: defined for dims [2,2,2] only");
    }
    // offsets: x_{ijk} at 4i + 2j + k
    const cx x000 = state.amps[0], x001 = state.amps[1], x010 = state.amps[2], x011 = state.amps[3];
    const cx x100 = state.amps[4], x101 = state.amps[5], x110 = state.amps[6], x111 = state.amps[7];

    const cx squares = x000 * x000 * x111 * x111 + x001 * x001 * x110 * x110 +
                       x010 * x010 * x101 * x101 + x100 * x100 * x011 * x011;
    // the six pairwise products of the diagonal monomials 000*111, 001*110,
    // 010*101, 011*100
    const cx pairs = x000 * x111 * x001 * x110 + x000 * x111 * x010 * x101 + x000 * x111 * x011 * x100 +
                     x001 * x110 * x010 * x101 + x001 * x110 * x011 * x100 + x010 * x101 * x011 * x100;
    const cx quads = x000 * x011 * x101 * x110 + x001 * x010 * x100 * x111;
    return squares - 2.0 * pairs + 4.0 * quads;
}

double tangle(const PureState& state) { return 4.0 * std::abs(cayley_hyperdet(state)); }

cx hyperdet_from_minors(const std::array<cx, 6>& d) {
    return d[2] * d[2] + d[3] * d[3] - 2.0 * d[1] * d[4] - 2.0 * d[0] * d[5];
}

} // namespace qent
