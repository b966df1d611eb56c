#include "qent/separability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qent {

namespace {

void require_unit_norm(const PureState& state, const char* what) {
    if (std::abs(squared_norm(state) - 1.0) > 1e-6) {
        throw validation_error(std::string(what) + ": state must be unit-norm (normalize it first)");
    }
}

// Unit vector with the largest-magnitude component made real positive.
std::vector<cx> fix_phase(std::vector<cx> v) {
    double n2 = 0.0;
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        n2 += std::norm(v[i]);
        const double mag = std::abs(v[i]);
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    const double n = std::sqrt(n2);
    const cx phase = v[best] / std::abs(v[best]);
    for (cx& c : v) c /= n * phase;
    return v;
}

} // namespace

RankDecision matrix_rank_one(const Flattening& flat, double eps) {
    RankDecision decision;

    double max_entry = 0.0;
    for (const cx& e : flat.entries) max_entry = std::max(max_entry, std::abs(e));
    decision.degenerate = max_entry <= eps;

    for (long long c1 = 0; c1 < flat.cols; ++c1) {
        for (long long c2 = c1 + 1; c2 < flat.cols; ++c2) {
            for (int r1 = 0; r1 < flat.rows; ++r1) {
                for (int r2 = r1 + 1; r2 < flat.rows; ++r2) {
                    const double mag =
                        std::abs(flat.at(r1, c1) * flat.at(r2, c2) - flat.at(r2, c1) * flat.at(r1, c2));
                    if (mag > decision.max_minor) decision.max_minor = mag;
                    if (mag > eps && !decision.witness) {
                        decision.witness = MinorWitness{{r1, r2}, {static_cast<int>(c1), static_cast<int>(c2)}, mag};
                    }
                }
            }
        }
    }
    decision.rank_one = decision.max_minor <= eps;
    decision.marginal = decision.max_minor > eps / 10.0 && decision.max_minor <= eps * 10.0;
    return decision;
}

PartialSplit partially_separable(const PureState& state, int site, double eps) {
    require_unit_norm(state, "partially_separable");
    if (state.sites() < 2) throw dimension_error("partially_separable: need at least 2 sites");
    const Flattening flat = flatten(state, site);
    const RankDecision decision = matrix_rank_one(flat, eps);

    PartialSplit split;
    split.marginal = decision.marginal;
    if (!decision.rank_one) return split;
    split.separable = true;

    // factor = the largest column of the flattening (a vector in the image),
    // normalized and phase-fixed
    long long best_col = 0;
    double best_norm = -1.0;
    for (long long c = 0; c < flat.cols; ++c) {
        double n2 = 0.0;
        for (int r = 0; r < flat.rows; ++r) n2 += std::norm(flat.at(r, c));
        if (n2 > best_norm) {
            best_norm = n2;
            best_col = c;
        }
    }
    std::vector<cx> z(static_cast<std::size_t>(flat.rows));
    for (int r = 0; r < flat.rows; ++r) z[static_cast<std::size_t>(r)] = flat.at(r, best_col);
    z = fix_phase(std::move(z));

    // remainder coefficients: w_c = <z, column c>
    std::vector<cx> w(static_cast<std::size_t>(flat.cols));
    for (long long c = 0; c < flat.cols; ++c) {
        cx acc = 0.0;
        for (int r = 0; r < flat.rows; ++r) acc += std::conj(z[static_cast<std::size_t>(r)]) * flat.at(r, c);
        w[static_cast<std::size_t>(c)] = acc;
    }
    std::vector<int> rest_dims = state.dims;
    rest_dims.erase(rest_dims.begin() + (site - 1));

    split.factor = std::move(z);
    split.remainder = normalize(PureState{std::move(rest_dims), std::move(w)});
    return split;
}

Factorization factorize(const PureState& state, double eps) {
    if (norm(state) < 1e-150) throw degenerate_state_error("factorize: zero state");
    require_unit_norm(state, "factorize");

    Factorization result;
    PureState core = state;
    while (core.sites() > 1) {
        PartialSplit split = partially_separable(core, core.sites(), eps);
        if (!split.separable) break;
        result.factors.push_back(std::move(*split.factor));
        core = std::move(*split.remainder);
    }
    if (core.sites() == 1) {
        result.factors.push_back(fix_phase(core.amps));
        result.core_sites = 0;
    } else {
        result.core_sites = core.sites();
        result.core = std::move(core);
    }
    return result;
}

bool completely_separable(const PureState& state, double eps) {
    require_unit_norm(state, "completely_separable");
    for (int site = 1; site <= state.sites(); ++site) {
        if (!matrix_rank_one(flatten(state, site), eps).rank_one) return false;
    }
    return true;
}

SeparabilityReport classify(const PureState& state, double eps) {
    require_unit_norm(state, "classify");
    SeparabilityReport report;
    report.completely_separable = true;
    for (int site = 1; site <= state.sites(); ++site) {
        const RankDecision decision = matrix_rank_one(flatten(state, site), eps);
        report.per_site_separable.push_back(decision.rank_one);
        report.per_site_marginal.push_back(decision.marginal);
        if (!decision.rank_one) report.completely_separable = false;
    }
    report.factorization = factorize(state, eps);
    return report;
}

PureState reconstruct(const Factorization& f) {
    auto as_state = [](const std::vector<cx>& factor) {
        return PureState{{static_cast<int>(factor.size())}, factor};
    };
    if (f.factors.empty()) {
        if (!f.core) throw validation_error("reconstruct: empty factorization");
        return *f.core;
    }
    // factors run from site n inward; the innermost (core or last factor)
    // carries the leading sites
    std::size_t i = f.factors.size();
    PureState out = f.core ? *f.core : as_state(f.factors[--i]);
    while (i > 0) out = tensor_product(out, as_state(f.factors[--i]));
    return out;
}

} // namespace qent
