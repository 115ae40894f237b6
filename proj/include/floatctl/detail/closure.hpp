#pragma once

namespace floatctl::detail {

/// Boundary closure of the collocated nodal scheme on one grid component.
///
/// Interior rows of the discrete d/dx pairing are central differences with
/// unit norm weights. Near each component end the rows, the quadrature
/// weights, and the trace functional are replaced by a co-designed block so
/// that, simultaneously and to machine precision,
///   - the weighted pairing matrix is exactly antisymmetric (the generator
///     is skew w.r.t. the diagonal grid inner product),
///   - every row remains a second-order approximation of the derivative,
///   - the boundary trace functional is a second-order approximation of the
///     endpoint value with total weight one and vanishing first moment,
///   - all norm weights stay positive.
/// The block was obtained by solving that linear design problem exactly; the
/// unit tests re-verify each property numerically.
inline constexpr int kZoneRows = 6; // nonstandard zeta rows per end
inline constexpr int kZoneCols = 6; // q columns with nonunit weights per end
inline constexpr int kStencil = 6;  // q-points per closure row

/// zeta quadrature weights for the first kZoneRows nodes from a component end
/// (index 0 = the end node); 1 beyond.
extern const double kZetaWeights[kZoneRows];

/// q quadrature weights for nodes 1..kZoneCols from a component end; 1 beyond.
extern const double kQWeights[kZoneCols];

/// Trace functional weights over the first kZoneRows zeta nodes from the end:
/// Tr(zeta) = sum_j kTrace[j] zeta_j ~ zeta(end) + O(h^2).
extern const double kTrace[kZoneRows];

/// Weighted derivative rows of the pairing block:
///   a_j h q'_j = kTrace[j] * T + sum_i kRows[j][i] * q_{i+1},
/// node indices counted from the end, T the end trace of q. The trace
/// column coincides with the trace functional (that identity is what makes
/// the scalar-row couplings close skew-symmetrically).
extern const double kRows[kZoneRows][kStencil];

/// Minimum cells per component so the two end zones do not overlap.
inline constexpr int kMinCells = 16;

/// Quadrature weight of zeta node j on a component with n cells (nodes 0..n).
double zeta_node_weight(int j, int n);
/// Quadrature weight of the interior q node i (1 <= i <= n-1).
double q_node_weight(int i, int n);

} // namespace floatctl::detail
