#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "twmr/linear_model.hpp"

namespace twmr::ptsym {

using Complex = std::complex<double>;

// Deformed-resonator Brillouin model: backscattering J couples the CW and
// CCW acoustic modes b_l, b_ml; the optical drive on one direction cools
// b_l (loss gamma_l) and on the other amplifies b_ml (gain gamma_ml).
// All rates in MHz.
struct Params {
    double omega_ml = 42.3;
    double gamma_m = 0.004;
    double G_l = 0.14;
    double G_ml = 0.14;
    double J = 0.016;
    double kappa1 = 3.5;
    double kappa2 = 3.5;
    double kappa_in = 1.75; // probe coupling; kappa1/2 unless overridden

    void validate() const;
};

// Probe-frame detunings of the four components (a_k, a_mj^dag, b_l, b_ml).
// A probe swept by delta relative to the pumped cavity enters as
// (delta, -delta, delta, delta).
struct Detunings {
    double delta_k = 0.0;
    double delta_mj = 0.0;
    double delta_l = 0.0;
    double delta_ml = 0.0;

    static Detunings probe(double delta_nu) { return {delta_nu, -delta_nu, delta_nu, delta_nu}; }
};

// Exact 4x4 drift on the mixed basis (a_k, a_mj^dag, b_l, b_ml); the
// conjugated second row is the gain channel.
gaussian::DriftMatrix build_pt_drift(const Params& p, const Detunings& detunings);

struct EffectiveRates {
    double gamma_l = 0.0;  // optically induced phonon loss 4 G_l^2 / kappa2, MHz
    double gamma_ml = 0.0; // optically induced phonon gain -4 G_ml^2 / kappa1, MHz (<= 0)
    double omega0 = 0.0;   // common acoustic detuning, MHz
    bool weak_separation = false; // kappa / gamma_m < 100: elimination questionable
};

// Adiabatic elimination of the optical modes at the resonant driving
// choice; valid for kappa_{1,2} >> gamma_m.
EffectiveRates adiabatic_effective_rates(const Params& p, double omega0_nu = 0.0);

enum class Regime { unbroken, exceptional, broken };

struct SupermodePair {
    Complex omega_plus;
    Complex omega_minus;
    Regime regime = Regime::unbroken;
};

// Supermode eigenfrequencies
//   omega_pm = omega0 - (i/4)(2 gamma_m + gamma_ml + gamma_l)
//              +- (1/4) sqrt(16 J^2 - (gamma_ml - gamma_l)^2),
// classified by the sign of the discriminant.
SupermodePair supermode_eigenfrequencies(const EffectiveRates& rates, double gamma_m, double J_nu);

struct Threshold {
    double J_PT = 0.0;           // |gamma_ml - gamma_l| / 4
    std::optional<double> ideal; // (gamma_l + gamma_m)/2, present when gain and loss balance
};

Threshold pt_threshold(const EffectiveRates& rates, double gamma_m, double balance_tol = 1e-9);

struct SteadyFields {
    Complex a_k;      // scattered CW optical field
    Complex a_mj_dag; // probed CCW optical field (conjugate component)
    Complex b_l;      // CW acoustic field
    Complex b_ml;     // CCW acoustic field
};

// Closed-form steady state of the probed network at detuning delta,
// cross-checked against the direct 4x4 linear solve (the two routes are
// algebraically identical and must agree to 1e-10 relative). Throws
// InstabilityError, naming the growing eigenvalue, when no steady state
// exists.
SteadyFields pt_steady_fields(const Params& p, double delta_nu, double eps_p);

struct SpectrumPoint {
    double delta_nu = 0.0;
    double a_mj_sq = 0.0;
    double a_k_sq = 0.0;
    double b_l_sq = 0.0;
    double b_ml_sq = 0.0;
};

struct Spectrum {
    std::vector<SpectrumPoint> points;
    int peaks_a_mj = 0;
    int peaks_a_k = 0;
    int peaks_b_l = 0;
    int peaks_b_ml = 0;
    bool grid_extended = false;
    SupermodePair supermodes;
};

// Probe spectra over the detuning grid with peak counting (5% prominence).
// The grid is extended automatically when it does not span the supermode
// splitting. Refuses parameter sets whose supermodes grow in time.
Spectrum pt_spectrum(const Params& p, std::vector<double> delta_grid_nu, double eps_p);

// Same sweep evaluated in the adiabatically eliminated two-mode acoustic
// model with constant induced rates; used to validate the elimination.
Spectrum pt_spectrum_adiabatic(const Params& p, std::vector<double> delta_grid_nu, double eps_p);

// Local maxima whose prominence reaches `prominence_frac` of the global
// maximum.
int count_peaks(const std::vector<double>& values, double prominence_frac = 0.05);

// Uniform grid helper.
std::vector<double> linspace(double lo, double hi, int points);

} // namespace twmr::ptsym
