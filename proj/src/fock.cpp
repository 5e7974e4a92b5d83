#include "twmr/fock.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "twmr/errors.hpp"

namespace twmr::fock {

int FockSpace::total_dim() const {
    int total = 1;
    for (int d : dims) total *= d;
    return total;
}

void FockSpace::validate() const {
    if (dims.empty()) throw ValidationError("FockSpace: no modes");
    for (int d : dims) {
        if (d < 2) throw ValidationError("FockSpace: every truncation dimension must be >= 2");
    }
    if (!labels.empty() && labels.size() != dims.size()) {
        throw ValidationError("FockSpace: label count does not match mode count");
    }
}

Eigen::MatrixXcd annihilation_op(int dim) {
    if (dim < 2) throw ValidationError("annihilation_op: dimension must be >= 2");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Eigen::MatrixXcd number_op(int dim) {
    if (dim < 2) throw ValidationError("number_op: dimension must be >= 2");
    Eigen::MatrixXcd n_op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) n_op(n, n) = static_cast<double>(n);
    return n_op;
}

Eigen::MatrixXcd embed_operator(const FockSpace& space, int mode_index,
                                const Eigen::MatrixXcd& local_op) {
    space.validate();
    if (mode_index < 0 || mode_index >= space.mode_count()) {
        throw ValidationError("embed_operator: mode index out of range");
    }
    if (local_op.rows() != space.dims[mode_index] || local_op.cols() != space.dims[mode_index]) {
        throw ValidationError("embed_operator: local operator does not match the mode dimension");
    }

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int m = 0; m < space.mode_count(); ++m) {
        const Eigen::MatrixXcd& factor =
            (m == mode_index) ? local_op
                              : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(space.dims[m], space.dims[m]));
        Eigen::MatrixXcd next(out.rows() * factor.rows(), out.cols() * factor.cols());
        for (int i = 0; i < out.rows(); ++i) {
            for (int j = 0; j < out.cols(); ++j) {
                next.block(i * factor.rows(), j * factor.cols(), factor.rows(), factor.cols()) =
                    out(i, j) * factor;
            }
        }
        out = std::move(next);
    }
    return out;
}

Eigen::MatrixXcd mode_annihilation(const FockSpace& space, int mode_index) {
    return embed_operator(space, mode_index, annihilation_op(space.dims[mode_index]));
}

void DensityMatrix::validate(double herm_tol, double pos_tol) const {
    const int n = space.total_dim();
    if (data.rows() != n || data.cols() != n) {
        throw ValidationError("DensityMatrix: matrix size does not match the Fock space");
    }
    if ((data - data.adjoint()).cwiseAbs().maxCoeff() > herm_tol) {
        throw ValidationError("DensityMatrix: not Hermitian within tolerance");
    }
    if (std::abs(data.trace() - Complex(1.0, 0.0)) > herm_tol) {
        throw ValidationError("DensityMatrix: trace differs from one");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig((data + data.adjoint()) / 2.0);
    if (eig.eigenvalues().minCoeff() < -pos_tol) {
        throw ValidationError("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

std::complex<double> expectation(const DensityMatrix& rho, const Eigen::MatrixXcd& op) {
    if (op.rows() != rho.data.rows() || op.cols() != rho.data.cols()) {
        throw ValidationError("expectation: operator and state dimensions differ");
    }
    return (op * rho.data).trace();
}

DensityMatrix thermal_state(int dim, double n_th) {
    if (dim < 2) throw ValidationError("thermal_state: dimension must be >= 2");
    if (n_th < 0.0) throw ValidationError("thermal_state: negative occupancy");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    const double q = n_th / (n_th + 1.0);
    double weight = 1.0, total = 0.0;
    for (int n = 0; n < dim; ++n) {
        rho(n, n) = weight;
        total += weight;
        weight *= q;
    }
    rho /= total;
    return DensityMatrix{FockSpace{{dim}, {}}, std::move(rho)};
}

} // namespace twmr::fock
