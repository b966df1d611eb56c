#include "qent/state.hpp"

#include <cmath>
#include <random>
#include <string>

namespace qent {

namespace {

void check_site(const PureState& state, int site, const char* what) {
    if (site < 1 || site > state.sites()) {
        throw dimension_error(std::string(what) + ": site " + std::to_string(site) +
                              " out of range [1, " + std::to_string(state.sites()) + "]");
    }
}

// Product of dims strictly after `site` (1-based); the stride of that site.
std::size_t stride_after(const std::vector<int>& dims, int site) {
    std::size_t s = 1;
    for (std::size_t j = static_cast<std::size_t>(site); j < dims.size(); ++j) {
        s *= static_cast<std::size_t>(dims[j]);
    }
    return s;
}

} // namespace

std::size_t dim_product(const std::vector<int>& dims) {
    std::size_t p = 1;
    for (int d : dims) p *= static_cast<std::size_t>(d);
    return p;
}

std::size_t offset_of(const std::vector<int>& dims, const std::vector<int>& index) {
    if (index.size() != dims.size()) throw dimension_error("offset_of: index length mismatch");
    std::size_t off = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (index[i] < 0 || index[i] >= dims[i]) throw dimension_error("offset_of: index out of range");
        off = off * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(index[i]);
    }
    return off;
}

PureState make_state(std::vector<int> dims, std::vector<cx> amps) {
    if (dims.empty()) throw dimension_error("make_state: dims must be nonempty");
    for (int d : dims) {
        if (d < 2) throw dimension_error("make_state: every local dimension must be >= 2, got " + std::to_string(d));
    }
    if (amps.size() != dim_product(dims)) {
        throw dimension_error("make_state: expected " + std::to_string(dim_product(dims)) +
                              " amplitudes, got " + std::to_string(amps.size()));
    }
    for (const cx& a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw validation_error("make_state: non-finite amplitude component");
        }
    }
    return PureState{std::move(dims), std::move(amps)};
}

double squared_norm(const PureState& state) {
    double s = 0.0;
    for (const cx& a : state.amps) s += std::norm(a);
    return s;
}

double norm(const PureState& state) { return std::sqrt(squared_norm(state)); }

bool unrealizable(const PureState& state, double tol) { return squared_norm(state) < tol; }

PureState normalize(const PureState& state) {
    const double n = norm(state);
    if (n < 1e-150) throw degenerate_state_error("normalize: zero vector has no direction");
    PureState out = state;
    for (cx& a : out.amps) a /= n;
    return out;
}

Flattening flatten(const PureState& state, int site) {
    check_site(state, site, "flatten");
    const int d = state.dims[static_cast<std::size_t>(site - 1)];
    const std::size_t total = state.size();
    const std::size_t st = stride_after(state.dims, site);
    const std::size_t heads = total / (static_cast<std::size_t>(d) * st);

    Flattening flat;
    flat.rows = d;
    flat.cols = static_cast<long long>(total / static_cast<std::size_t>(d));
    flat.site = site;
    flat.entries.resize(total);

    // source offset = (head*d + r)*st + lo; column index = head*st + lo, i.e.
    // row-major over the remaining sites with their order preserved.
    for (std::size_t head = 0; head < heads; ++head) {
        for (int r = 0; r < d; ++r) {
            const std::size_t src = (head * static_cast<std::size_t>(d) + static_cast<std::size_t>(r)) * st;
            const std::size_t dst = static_cast<std::size_t>(r) * static_cast<std::size_t>(flat.cols) + head * st;
            for (std::size_t lo = 0; lo < st; ++lo) {
                flat.entries[dst + lo] = state.amps[src + lo];
            }
        }
    }
    return flat;
}

PureState unflatten(const Flattening& flat, const std::vector<int>& dims) {
    const std::size_t total = dim_product(dims);
    if (flat.entries.size() != total ||
        static_cast<std::size_t>(flat.rows) * static_cast<std::size_t>(flat.cols) != total) {
        throw dimension_error("unflatten: entry count does not match dims");
    }
    const int site = flat.site;
    if (site < 1 || site > static_cast<int>(dims.size()) || dims[static_cast<std::size_t>(site - 1)] != flat.rows) {
        throw dimension_error("unflatten: site/rows inconsistent with dims");
    }
    const int d = flat.rows;
    const std::size_t st = stride_after(dims, site);
    const std::size_t heads = total / (static_cast<std::size_t>(d) * st);

    std::vector<cx> amps(total);
    for (std::size_t head = 0; head < heads; ++head) {
        for (int r = 0; r < d; ++r) {
            const std::size_t dst = (head * static_cast<std::size_t>(d) + static_cast<std::size_t>(r)) * st;
            const std::size_t src = static_cast<std::size_t>(r) * static_cast<std::size_t>(flat.cols) + head * st;
            for (std::size_t lo = 0; lo < st; ++lo) {
                amps[dst + lo] = flat.entries[src + lo];
            }
        }
    }
    return PureState{dims, std::move(amps)};
}

PureState collapse(const PureState& state, int site, int outcome) {
    check_site(state, site, "collapse");
    if (state.sites() < 2) throw dimension_error("collapse: cannot remove the only site");
    const int d = state.dims[static_cast<std::size_t>(site - 1)];
    if (outcome < 0 || outcome >= d) {
        throw dimension_error("collapse: outcome " + std::to_string(outcome) + " out of range [0, " +
                              std::to_string(d) + ")");
    }
    const std::size_t st = stride_after(state.dims, site);
    const std::size_t heads = state.size() / (static_cast<std::size_t>(d) * st);

    std::vector<int> dims = state.dims;
    dims.erase(dims.begin() + (site - 1));
    std::vector<cx> amps(state.size() / static_cast<std::size_t>(d));
    for (std::size_t head = 0; head < heads; ++head) {
        const std::size_t src = (head * static_cast<std::size_t>(d) + static_cast<std::size_t>(outcome)) * st;
        const std::size_t dst = head * st;
        for (std::size_t lo = 0; lo < st; ++lo) {
            amps[dst + lo] = state.amps[src + lo];
        }
    }
    return PureState{std::move(dims), std::move(amps)};
}

PureState project_site(const PureState& state, int site, const std::vector<cx>& direction) {
    check_site(state, site, "project_site");
    if (state.sites() < 2) throw dimension_error("project_site: cannot remove the only site");
    const int d = state.dims[static_cast<std::size_t>(site - 1)];
    if (static_cast<int>(direction.size()) != d) {
        throw dimension_error("project_site: direction length " + std::to_string(direction.size()) +
                              " does not match local dimension " + std::to_string(d));
    }
    double n2 = 0.0;
    for (const cx& c : direction) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw validation_error("project_site: non-finite direction component");
        }
        n2 += std::norm(c);
    }
    if (std::abs(n2 - 1.0) > 2e-9) {
        throw validation_error("project_site: direction must have unit norm (got squared norm " +
                               std::to_string(n2) + ")");
    }

    const std::size_t st = stride_after(state.dims, site);
    const std::size_t heads = state.size() / (static_cast<std::size_t>(d) * st);

    std::vector<int> dims = state.dims;
    dims.erase(dims.begin() + (site - 1));
    std::vector<cx> amps(state.size() / static_cast<std::size_t>(d));
    for (std::size_t head = 0; head < heads; ++head) {
        for (std::size_t lo = 0; lo < st; ++lo) {
            cx acc = 0.0;
            for (int b = 0; b < d; ++b) {
                acc += std::conj(direction[static_cast<std::size_t>(b)]) *
                       state.amps[(head * static_cast<std::size_t>(d) + static_cast<std::size_t>(b)) * st + lo];
            }
            amps[head * st + lo] = acc;
        }
    }
    return PureState{std::move(dims), std::move(amps)};
}

PureState apply_local_unitary(const PureState& state, int site, const std::vector<cx>& u) {
    check_site(state, site, "apply_local_unitary");
    const int d = state.dims[static_cast<std::size_t>(site - 1)];
    if (u.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
        throw dimension_error("apply_local_unitary: matrix must be " + std::to_string(d) + "x" +
                              std::to_string(d));
    }
    for (const cx& e : u) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw validation_error("apply_local_unitary: non-finite matrix entry");
        }
    }
    // u * u^dagger = I within 1e-9
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            cx acc = 0.0;
            for (int k = 0; k < d; ++k) {
                acc += u[static_cast<std::size_t>(i * d + k)] * std::conj(u[static_cast<std::size_t>(j * d + k)]);
            }
            const cx expect = (i == j) ? cx(1.0, 0.0) : cx(0.0, 0.0);
            if (std::abs(acc - expect) > 1e-9) {
                throw validation_error("apply_local_unitary: matrix is not unitary");
            }
        }
    }

    const std::size_t st = stride_after(state.dims, site);
    const std::size_t heads = state.size() / (static_cast<std::size_t>(d) * st);

    PureState out = state;
    std::vector<cx> column(static_cast<std::size_t>(d));
    for (std::size_t head = 0; head < heads; ++head) {
        for (std::size_t lo = 0; lo < st; ++lo) {
            const std::size_t base = head * static_cast<std::size_t>(d) * st + lo;
            for (int b = 0; b < d; ++b) column[static_cast<std::size_t>(b)] = state.amps[base + static_cast<std::size_t>(b) * st];
            for (int a = 0; a < d; ++a) {
                cx acc = 0.0;
                for (int b = 0; b < d; ++b) {
                    acc += u[static_cast<std::size_t>(a * d + b)] * column[static_cast<std::size_t>(b)];
                }
                out.amps[base + static_cast<std::size_t>(a) * st] = acc;
            }
        }
    }
    return out;
}

PureState tensor_product(const PureState& a, const PureState& b) {
    std::vector<int> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    std::vector<cx> amps(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            amps[i * b.size() + j] = a.amps[i] * b.amps[j];
        }
    }
    return PureState{std::move(dims), std::move(amps)};
}

PureState random_state(const std::vector<int>& dims, std::uint64_t seed) {
    if (dims.empty()) throw dimension_error("random_state: dims must be nonempty");
    for (int d : dims) {
        if (d < 2) throw dimension_error("random_state: every local dimension must be >= 2");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cx> amps(dim_product(dims));
    for (cx& a : amps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = cx(re, im);
    }
    return normalize(PureState{dims, std::move(amps)});
}

} // namespace qent
