#include "twmr/linear_model.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "twmr/errors.hpp"
#include "twmr/units.hpp"

namespace twmr::gaussian {

namespace {
constexpr Complex kI{0.0, 1.0};
}

void LinearModel::validate() const {
    const int n = static_cast<int>(modes.size());
    if (n == 0) throw ValidationError("LinearModel: no modes");
    for (const auto& mode : modes) {
        if (!(mode.damping_nu > 0.0)) {
            throw ValidationError("LinearModel: mode '" + mode.label + "' needs a positive linewidth");
        }
        if (mode.external_nu < 0.0 || mode.external_nu > mode.damping_nu) {
            throw ValidationError("LinearModel: external coupling of '" + mode.label +
                                  "' must lie in [0, damping]");
        }
        if (mode.n_th < 0.0) {
            throw ValidationError("LinearModel: negative thermal occupancy on '" + mode.label + "'");
        }
    }
    for (const auto& c : couplings) {
        if (c.mode_a < 0 || c.mode_a >= n || c.mode_b < 0 || c.mode_b >= n) {
            throw ValidationError("LinearModel: coupling references a mode out of range");
        }
        if (c.mode_a == c.mode_b) {
            throw ValidationError("LinearModel: self-coupling is not allowed");
        }
    }
    for (const auto& d : drives) {
        if (d.mode < 0 || d.mode >= n) {
            throw ValidationError("LinearModel: drive references a mode out of range");
        }
    }
}

bool LinearModel::has_squeezing() const {
    for (const auto& c : couplings) {
        if (c.kind == CouplingKind::two_mode_squeeze) return true;
    }
    return false;
}

DriftMatrix build_drift(const LinearModel& model) {
    model.validate();
    const int n = static_cast<int>(model.modes.size());
    const bool doubled = model.has_squeezing();
    const int dim = doubled ? 2 * n : n;

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        A(i, i) = kI * angular(model.modes[i].detuning_nu) + angular(model.modes[i].damping_nu) / 2.0;
    }
    for (const auto& c : model.couplings) {
        const Complex g = kTwoPi * c.strength_nu;
        if (c.kind == CouplingKind::beamsplitter) {
            A(c.mode_a, c.mode_b) += kI * g;
            A(c.mode_b, c.mode_a) += kI * std::conj(g);
        } else {
            A(c.mode_a, c.mode_b + n) += kI * g;
            A(c.mode_b, c.mode_a + n) += kI * g;
        }
    }
    if (doubled) {
        // creation-operator rows are the elementwise conjugates
        A.block(n, n, n, n) = A.block(0, 0, n, n).conjugate();
        A.block(n, 0, n, n) = A.block(0, n, n, n).conjugate();
    }
    return DriftMatrix{std::move(A), doubled, n};
}

Eigen::VectorXcd drive_vector(const LinearModel& model, const DriftMatrix& drift) {
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(drift.size());
    const int n = drift.mode_count;
    for (const auto& drive : model.drives) {
        // drive amplitudes enter as sqrt(kappa_ext) * epsilon with epsilon
        // taken as given: epsilon^2 is a photon flux, already angular
        const Complex amp =
            std::sqrt(angular(model.modes[drive.mode].external_nu)) * drive.amplitude_nu;
        d(drive.mode) += amp;
        if (drift.basis_doubled) d(drive.mode + n) += std::conj(amp);
    }
    return d;
}

bool stability_check(const DriftMatrix& drift) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(drift.A, /*computeEigenvectors=*/false);
    for (int i = 0; i < drift.size(); ++i) {
        if (-solver.eigenvalues()(i).real() >= -1e-12) return false;
    }
    return true;
}

bool routh_hurwitz_pairgen(double G_k, double G_mk, double kappa, double gamma) {
    if (!(kappa > 0.0) || !(gamma > 0.0)) {
        throw ValidationError("routh_hurwitz_pairgen: kappa and gamma must be positive");
    }
    return G_k * G_k - G_mk * G_mk > -kappa * gamma / 4.0;
}

Eigen::VectorXcd first_moments_steady(const DriftMatrix& drift, const Eigen::VectorXcd& drive) {
    if (drive.size() != drift.size()) {
        throw ValidationError("first_moments_steady: drive length does not match drift basis");
    }
    if (!stability_check(drift)) {
        throw InstabilityError("first_moments_steady: drift matrix has a non-decaying eigenvalue");
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(drift.A);
    if (!lu.isInvertible()) {
        throw SingularMatrixError("first_moments_steady: drift matrix is singular at omega = 0");
    }
    return lu.solve(drive);
}

} // namespace twmr::gaussian
