#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace twmr::gaussian {

using Complex = std::complex<double>;

enum class CouplingKind {
    beamsplitter,     // G (a^dag b + a b^dag): excitation exchange
    two_mode_squeeze, // G (a^dag b^dag + a b): pair creation, gain
};

struct Mode {
    std::string label;
    double detuning_nu = 0.0;    // coefficient of a^dag a in the Hamiltonian, MHz
    double damping_nu = 0.0;     // total linewidth, MHz
    double external_nu = 0.0;    // externally coupled part of the linewidth, MHz
    double n_th = 0.0;           // bath thermal occupancy
};

struct Coupling {
    int mode_a = 0;
    int mode_b = 0;
    CouplingKind kind = CouplingKind::beamsplitter;
    Complex strength_nu{0.0, 0.0}; // G, MHz
};

struct Drive {
    int mode = 0;
    Complex amplitude_nu{0.0, 0.0}; // epsilon, MHz; enters as sqrt(kappa_ext) * epsilon
};

// A linearized bosonic network: the common description behind all three
// devices. Everything is stated in cyclic units (MHz).
struct LinearModel {
    std::vector<Mode> modes;
    std::vector<Coupling> couplings;
    std::vector<Drive> drives;

    void validate() const;
    bool has_squeezing() const;
};

// Drift matrix U of the mean-field equations d<O>/dt = -U <O> + drive,
// in angular units. Without squeezing terms the basis is (a_1 .. a_N);
// with them it is doubled to (a_1 .. a_N, a_1^dag .. a_N^dag).
struct DriftMatrix {
    Eigen::MatrixXcd A;
    bool basis_doubled = false;
    int mode_count = 0;

    int size() const { return static_cast<int>(A.rows()); }
};

DriftMatrix build_drift(const LinearModel& model);

// Drive vector matching the drift basis: sqrt(kappa_ext) * epsilon per
// driven mode (angular units), conjugated on the creation block.
Eigen::VectorXcd drive_vector(const LinearModel& model, const DriftMatrix& drift);

// True iff every eigenvalue of -A has real part < -1e-12, i.e. all
// fluctuations decay.
bool stability_check(const DriftMatrix& drift);

// Closed-form stability condition of the two-drive pair-generation model:
// G_k^2 - G_mk^2 > -kappa gamma / 4. Inputs in MHz.
bool routh_hurwitz_pairgen(double G_k, double G_mk, double kappa, double gamma);

// Steady-state first moments: solves U <O> = drive. Throws
// InstabilityError for an unstable drift and SingularMatrixError when U
// is not invertible.
Eigen::VectorXcd first_moments_steady(const DriftMatrix& drift, const Eigen::VectorXcd& drive);

} // namespace twmr::gaussian
