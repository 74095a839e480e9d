#include "ppcircuit/elliptic.hpp"

#include <cmath>

#include "ppcircuit/constants.hpp"
#include "ppcircuit/errors.hpp"

namespace ppc {

double arithmetic_geometric_mean(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw DomainError("arithmetic_geometric_mean: arguments must be non-negative");
  }
  // Quadratic convergence; 64 rounds is far beyond what any double needs.
  for (int i = 0; i < 64; ++i) {
    if (std::abs(a - b) <= 1e-16 * a) break;
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return 0.5 * (a + b);
}

namespace {

double k_from_complement(double complement) {
  return constants::pi / (2.0 * arithmetic_geometric_mean(1.0, complement));
}

}  // namespace

double elliptic_k(double modulus) {
  if (!(modulus >= 0.0) || !(modulus < 1.0)) {
    throw DomainError("elliptic_k: modulus must lie in [0, 1)");
  }
  return k_from_complement(std::sqrt((1.0 - modulus) * (1.0 + modulus)));
}

double elliptic_k_ratio(double modulus) {
  if (!(modulus > 0.0) || !(modulus < 1.0)) {
    throw DomainError("elliptic_k_ratio: modulus must lie in (0, 1)");
  }
  const double complement = std::sqrt((1.0 - modulus) * (1.0 + modulus));
  return k_from_complement(complement) / k_from_complement(modulus);
}

}  // namespace ppc
