#pragma once

#include <Eigen/Sparse>

#include "twmr/fock.hpp"

namespace twmr::fock {

struct CollapseChannel {
    Eigen::MatrixXcd op; // annihilation or creation operator in the full space
    double rate_nu = 0.0; // MHz; converted to angular units by the builder
};

// Sparse Lindblad generator acting on column-stacked density matrices:
// d vec(rho)/dt = L vec(rho).
struct LiouvillianOperator {
    FockSpace space;
    Eigen::SparseMatrix<Complex> matrix;

    int hilbert_dim() const { return space.total_dim(); }
};

// L[rho] = -i[H, rho] + sum_c rate_c (A rho A^dag - {A^dag A, rho}/2).
// H entries and all rates are cyclic MHz values; this is the one place
// where they are scaled to angular units. H must be Hermitian within
// 1e-10 (relative to its largest entry) and all rates non-negative.
LiouvillianOperator build_liouvillian(const FockSpace& space, const Eigen::MatrixXcd& hamiltonian_nu,
                                      const std::vector<CollapseChannel>& channels);

// Applies L to a matrix (for trace/Hermiticity property checks).
Eigen::MatrixXcd apply(const LiouvillianOperator& liouvillian, const Eigen::MatrixXcd& rho);

// Unique steady state: sparse LU solve of the trace-augmented kernel
// problem, followed by Hermitization and trace normalization. Throws
// DegenerateSteadyStateError when the kernel is not one-dimensional and
// InstabilityError when the solution is not a physical state (negative
// eigenvalues beyond tolerance).
DensityMatrix steady_state_density(const LiouvillianOperator& liouvillian);

} // namespace twmr::fock
