#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace twmr::fock {

using Complex = std::complex<double>;

// Truncated multimode Fock space. Mode 0 is the leftmost (slowest) tensor
// factor.
struct FockSpace {
    std::vector<int> dims;
    std::vector<std::string> labels;

    int mode_count() const { return static_cast<int>(dims.size()); }
    int total_dim() const;
    void validate() const;
};

// dim x dim ladder operator with entries sqrt(n) at (n-1, n).
Eigen::MatrixXcd annihilation_op(int dim);

Eigen::MatrixXcd number_op(int dim);

// Tensor-product embedding: identity on every factor except `mode_index`.
Eigen::MatrixXcd embed_operator(const FockSpace& space, int mode_index,
                                const Eigen::MatrixXcd& local_op);

// Embedded annihilation operator of one mode.
Eigen::MatrixXcd mode_annihilation(const FockSpace& space, int mode_index);

struct DensityMatrix {
    FockSpace space;
    Eigen::MatrixXcd data;

    // Hermiticity and unit trace to 1e-10, eigenvalues >= -1e-8.
    void validate(double herm_tol = 1e-10, double pos_tol = 1e-8) const;
};

std::complex<double> expectation(const DensityMatrix& rho, const Eigen::MatrixXcd& op);

// Test-aid: truncated thermal state of a single mode (exact geometric
// weights renormalized on the truncated ladder).
DensityMatrix thermal_state(int dim, double n_th);

} // namespace twmr::fock
