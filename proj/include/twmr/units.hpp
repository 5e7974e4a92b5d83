#pragma once

#include <cmath>

namespace twmr {

// Every frequency, detuning, damping rate and coupling strength in the
// public API is a cyclic value nu = omega/2pi in MHz. Solvers work in
// angular units (rad/us); the conversion happens exactly once, inside
// the matrix/Liouvillian builders, through these helpers.
inline constexpr double kTwoPi = 6.28318530717958647692528676656;

inline constexpr double angular(double nu_mhz) { return kTwoPi * nu_mhz; }

inline constexpr double cyclic(double omega_rad_per_us) { return omega_rad_per_us / kTwoPi; }

// Coherent drive term sqrt(kappa_ext) * epsilon, expressed as a cyclic
// Hamiltonian coefficient (the Liouvillian builder scales H by 2*pi, so
// the 2*pi is divided back out here). epsilon is taken as given: epsilon^2
// is a photon flux, already an angular rate.
inline double drive_coefficient_nu(double kappa_ext_nu, double epsilon) {
    return std::sqrt(angular(kappa_ext_nu)) * epsilon / kTwoPi;
}

} // namespace twmr
