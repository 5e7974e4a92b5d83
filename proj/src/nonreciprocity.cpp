#include "twmr/nonreciprocity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "twmr/errors.hpp"
#include "twmr/units.hpp"

namespace twmr::nonrecip {

using gaussian::Complex;

namespace {
constexpr Complex kI{0.0, 1.0};
}

void Params::validate() const {
    if (!(kappa > 0.0) || !(gamma_m1 > 0.0) || !(gamma_m2 > 0.0)) {
        throw ValidationError("nonrecip: kappa and mechanical linewidths must be positive");
    }
    if (C_k1 < 0.0 || C_mk1 < 0.0 || C_k2 < 0.0 || C_mk2 < 0.0) {
        throw ValidationError("nonrecip: cooperativities must be non-negative");
    }
    if (!std::isfinite(theta)) {
        throw ValidationError("nonrecip: theta must be finite");
    }
}

double Params::coupling_from_cooperativity(double C, double gamma) const {
    return std::sqrt(C * kappa * gamma / 4.0);
}

gaussian::DriftMatrix build_conversion_drift(const Params& p) {
    p.validate();
    const Complex g_k1(p.coupling_from_cooperativity(p.C_k1, p.gamma_m1), 0.0);
    const Complex g_mk1(p.coupling_from_cooperativity(p.C_mk1, p.gamma_m1), 0.0);
    const Complex g_k2 = p.coupling_from_cooperativity(p.C_k2, p.gamma_m2) *
                         std::exp(kI * Complex(p.theta, 0.0));
    const Complex g_mk2(p.coupling_from_cooperativity(p.C_mk2, p.gamma_m2), 0.0);

    gaussian::LinearModel model;
    model.modes = {
        {"a_k", 0.0, p.kappa, p.kappa, 0.0},
        {"a_mk", 0.0, p.kappa, p.kappa, 0.0},
        {"b_1", 0.0, p.gamma_m1, 0.0, 0.0},
        {"b_2", 0.0, p.gamma_m2, 0.0, 0.0},
    };
    model.couplings = {
        {kPortCw, kPortMech1, gaussian::CouplingKind::beamsplitter, g_k1},
        {kPortCw, kPortMech2, gaussian::CouplingKind::beamsplitter, g_k2},
        {kPortCcw, kPortMech1, gaussian::CouplingKind::beamsplitter, g_mk1},
        {kPortCcw, kPortMech2, gaussian::CouplingKind::beamsplitter, g_mk2},
    };
    return gaussian::build_drift(model);
}

ScatteringMatrix scattering_matrix(const gaussian::DriftMatrix& drift, double kappa_nu,
                                   double omega_nu) {
    if (drift.size() != 4 || drift.basis_doubled) {
        throw ValidationError("scattering_matrix: expected the undoubled 4-port conversion drift");
    }
    const double kappa = angular(kappa_nu);
    const double omega = angular(omega_nu);
    const Eigen::Matrix4cd shifted =
        drift.A - kI * omega * Eigen::Matrix4cd::Identity();
    Eigen::FullPivLU<Eigen::Matrix4cd> lu(shifted);
    if (!lu.isInvertible()) {
        throw SingularMatrixError("scattering_matrix: U - i omega I is singular at omega = " +
                                  std::to_string(omega_nu) + " MHz");
    }
    ScatteringMatrix out;
    out.omega_nu = omega_nu;
    out.R = kappa * lu.inverse() - Eigen::Matrix4cd::Identity();
    return out;
}

Eigen::MatrixXcd scattering_matrix_general(const gaussian::DriftMatrix& drift,
                                           const Eigen::VectorXd& port_couplings_nu,
                                           double omega_nu) {
    const int n = drift.size();
    if (port_couplings_nu.size() != n) {
        throw ValidationError("scattering_matrix_general: one external coupling per port required");
    }
    const double omega = angular(omega_nu);
    Eigen::MatrixXcd shifted = drift.A - kI * omega * Eigen::MatrixXcd::Identity(n, n);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(shifted);
    if (!lu.isInvertible()) {
        throw SingularMatrixError("scattering_matrix_general: U - i omega I is singular");
    }
    Eigen::VectorXd roots(n);
    for (int i = 0; i < n; ++i) {
        if (port_couplings_nu(i) < 0.0) {
            throw ValidationError("scattering_matrix_general: negative external coupling");
        }
        roots(i) = std::sqrt(angular(port_couplings_nu(i)));
    }
    return roots.asDiagonal() * lu.inverse() * roots.asDiagonal() -
           Eigen::MatrixXcd::Identity(n, n);
}

Efficiencies conversion_efficiencies(const Params& p, double omega_nu) {
    const auto scattering = scattering_matrix(build_conversion_drift(p), p.kappa, omega_nu);
    Efficiencies out;
    out.forward = std::norm(scattering.R(kPortCw, kPortCcw));
    out.backward = std::norm(scattering.R(kPortCcw, kPortCw));
    return out;
}

Ratio nonreciprocity_ratio(const Params& p, double omega_nu) {
    const Efficiencies eff = conversion_efficiencies(p, omega_nu);
    Ratio out;
    if (eff.backward <= 1e-300) {
        out.value = std::numeric_limits<double>::infinity();
        out.backward_vanishing = true;
        return out;
    }
    out.value = eff.forward / eff.backward;
    return out;
}

} // namespace twmr::nonrecip
