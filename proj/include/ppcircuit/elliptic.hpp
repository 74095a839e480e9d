#pragma once

namespace ppc {

/// Arithmetic-geometric mean of two non-negative numbers.
double arithmetic_geometric_mean(double a, double b);

/// Complete elliptic integral of the first kind K(k) for modulus 0 <= k < 1,
/// evaluated through K(k) = pi / (2 AGM(1, sqrt(1 - k^2))).
/// Throws DomainError for k outside [0, 1).
double elliptic_k(double modulus);

/// K(k) / K(k') with k' = sqrt(1 - k^2). Both integrals are computed from
/// the complementary pair directly, so k close to 0 or 1 keeps precision.
double elliptic_k_ratio(double modulus);

}  // namespace ppc
