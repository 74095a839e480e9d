#pragma once

#include "ppcircuit/constants.hpp"

namespace ppc {

/// Magnetic flux. Stored in units of the flux quantum, which is how bias
/// points are quoted everywhere outside this type.
class Flux {
 public:
  constexpr Flux() = default;

  static constexpr Flux quanta(double phi0_units) { return Flux(phi0_units); }
  static constexpr Flux weber(double wb) {
    return Flux(wb / constants::flux_quantum);
  }

  constexpr double in_quanta() const { return quanta_; }
  constexpr double in_weber() const { return quanta_ * constants::flux_quantum; }

  constexpr Flux operator-() const { return Flux(-quanta_); }
  friend constexpr Flux operator+(Flux a, Flux b) { return Flux(a.quanta_ + b.quanta_); }
  friend constexpr Flux operator-(Flux a, Flux b) { return Flux(a.quanta_ - b.quanta_); }
  friend constexpr Flux operator*(double s, Flux f) { return Flux(s * f.quanta_); }
  friend constexpr bool operator==(Flux, Flux) = default;

 private:
  explicit constexpr Flux(double q) : quanta_(q) {}
  double quanta_ = 0.0;
};

}  // namespace ppc
