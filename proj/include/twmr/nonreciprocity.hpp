#pragma once

#include <Eigen/Dense>

#include "twmr/linear_model.hpp"

namespace twmr::nonrecip {

// Two optical / two mechanical conversion network. The couplings are given
// as cooperativities C = 4|G|^2/(kappa gamma); only G_k2 carries the
// control phase theta. Port order everywhere: (a_k, a_mk, b_1, b_2).
struct Params {
    double kappa = 15.0;
    double gamma_m1 = 0.022;
    double gamma_m2 = 0.0022;
    double C_k1 = 1.0;
    double C_mk1 = 1.0;
    double C_k2 = 2.5;
    double C_mk2 = 2.5;
    double theta = 0.0; // phase of G_k2, radians

    void validate() const;

    // |G| in MHz recovered from a cooperativity and its mechanical linewidth.
    double coupling_from_cooperativity(double C, double gamma) const;
};

inline constexpr int kPortCw = 0;
inline constexpr int kPortCcw = 1;
inline constexpr int kPortMech1 = 2;
inline constexpr int kPortMech2 = 3;

// The 4x4 drift of the conversion network: diagonal (kappa/2, kappa/2,
// gamma_m1/2, gamma_m2/2), off-diagonal +iG on optical rows and +iG* on
// mechanical rows, with G_k2 = |G_k2| e^{i theta}.
gaussian::DriftMatrix build_conversion_drift(const Params& p);

struct ScatteringMatrix {
    double omega_nu = 0.0; // probe frequency relative to the cavity, MHz
    Eigen::Matrix4cd R;
};

// Input-output scattering R = kappa (U - i omega I)^{-1} - I with the
// single scalar kappa of the conversion model. Meaningful on the
// optical-optical block, where the inputs live. Throws SingularMatrixError
// if (U - i omega I) cannot be inverted.
ScatteringMatrix scattering_matrix(const gaussian::DriftMatrix& drift, double kappa_nu,
                                   double omega_nu);

// Per-port generalization sqrt(K) (U - i omega I)^{-1} sqrt(K) - I with
// K = diag of external couplings (MHz).
Eigen::MatrixXcd scattering_matrix_general(const gaussian::DriftMatrix& drift,
                                           const Eigen::VectorXd& port_couplings_nu,
                                           double omega_nu);

struct Efficiencies {
    double forward = 0.0;  // |R_{k,-k}|^2: CCW input converted to CW output
    double backward = 0.0; // |R_{-k,k}|^2: CW input converted to CCW output
};

Efficiencies conversion_efficiencies(const Params& p, double omega_nu);

struct Ratio {
    double value = 0.0; // eta = forward / backward
    bool backward_vanishing = false;
};

// eta = |R_{k,-k}|^2 / |R_{-k,k}|^2; a vanishing backward efficiency is
// reported through the flag (value = +infinity), never as a crash.
Ratio nonreciprocity_ratio(const Params& p, double omega_nu);

} // namespace twmr::nonrecip
