#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qent/errors.hpp"

namespace qent {

using cx = std::complex<double>;

/// Dense coefficient tensor of an n-partite pure state.
///
/// `dims` holds the local dimensions d_1..d_n (each >= 2). `amps` is the
/// flattened tensor in row-major order with site 1 most significant: the
/// amplitude of |b1 b2 ... bn> lives at offset sum_i b_i * prod_{j>i} d_j.
/// Sites are numbered from 1 throughout the public API.
struct PureState {
    std::vector<int> dims;
    std::vector<cx> amps;

    int sites() const { return static_cast<int>(dims.size()); }
    std::size_t size() const { return amps.size(); }
};

/// Matrix of the linear map that sends the dual of all-but-one sites to the
/// distinguished site. `rows` = d_site; columns run row-major over the
/// remaining sites in their original order (site 1 most significant).
struct Flattening {
    int rows = 0;
    long long cols = 0;
    std::vector<cx> entries; // row-major
    int site = 0;            // 1-based distinguished site

    const cx& at(int r, long long c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }
    cx& at(int r, long long c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
};

/// Product of all local dimensions.
std::size_t dim_product(const std::vector<int>& dims);

/// Row-major offset of a multi-index (site 1 most significant).
std::size_t offset_of(const std::vector<int>& dims, const std::vector<int>& index);

/// Validates dims (nonempty, each >= 2), length(amps) = prod dims, and that
/// every component is finite. No implicit normalization.
PureState make_state(std::vector<int> dims, std::vector<cx> amps);

double squared_norm(const PureState& state);
double norm(const PureState& state);

/// True when the state carries (essentially) no weight: a zero-probability
/// measurement branch. Threshold is on the squared norm.
bool unrealizable(const PureState& state, double tol = 1e-12);

/// Returns the unit-norm state with the same direction.
/// Throws degenerate_state_error on the zero vector.
PureState normalize(const PureState& state);

/// Matrix of the map u1 with `site` as codomain: d_site rows, one column per
/// joint index of the remaining sites (kept in their original relative order,
/// site 1 most significant).
Flattening flatten(const PureState& state, int site);

/// Inverse of flatten: reassembles the source state bit-exactly.
PureState unflatten(const Flattening& flat, const std::vector<int>& dims);

/// The (n-1)-partite slice with `site` fixed at `outcome`. Raw coefficients,
/// not renormalized; an all-zero slice is returned as-is (see unrealizable).
PureState collapse(const PureState& state, int site, int outcome);

/// Contracts <direction| onto `site` (conjugated inner product), leaving the
/// raw (n-1)-partite remainder. `direction` must have length d_site and unit
/// norm within 1e-9. With a computational-basis direction this equals
/// collapse exactly.
PureState project_site(const PureState& state, int site, const std::vector<cx>& direction);

/// Applies a d_site x d_site unitary (row-major, unitary within 1e-9) to one
/// site. Norm is preserved.
PureState apply_local_unitary(const PureState& state, int site, const std::vector<cx>& u);

/// Kronecker product; dims = concat(a.dims, b.dims).
PureState tensor_product(const PureState& a, const PureState& b);

/// Unit-norm state with a Haar-distributed direction: independent standard
/// complex Gaussian amplitudes, then normalized. Identical (dims, seed)
/// yields bit-identical output.
PureState random_state(const std::vector<int>& dims, std::uint64_t seed);

} // namespace qent
