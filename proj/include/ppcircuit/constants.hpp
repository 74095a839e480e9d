#pragma once

#include <numbers>

namespace ppc {

// CODATA 2018 exact / recommended values, SI units.
namespace constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double boltzmann = 1.380649e-23;         // J / K
inline constexpr double flux_quantum = 2.067833848e-15;   // Wb
inline constexpr double vacuum_permeability = 1.25663706212e-6;  // H / m
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F / m

}  // namespace constants

/// Angular frequency (rad/s) from an ordinary frequency in Hz.
constexpr double angular(double hz) { return constants::two_pi * hz; }

/// Ordinary frequency (Hz) from an angular frequency in rad/s.
constexpr double hertz(double rad_per_s) { return rad_per_s / constants::two_pi; }

}  // namespace ppc
