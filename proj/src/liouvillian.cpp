#include "twmr/liouvillian.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include "twmr/errors.hpp"
#include "twmr/units.hpp"

namespace twmr::fock {

namespace {

using Sparse = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

constexpr Complex kI{0.0, 1.0};

Sparse sparsify(const Eigen::MatrixXcd& dense, double prune = 1e-14) {
    std::vector<Triplet> triplets;
    for (int j = 0; j < dense.cols(); ++j) {
        for (int i = 0; i < dense.rows(); ++i) {
            if (std::abs(dense(i, j)) > prune) {
                triplets.emplace_back(i, j, dense(i, j));
            }
        }
    }
    Sparse out(dense.rows(), dense.cols());
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

// Kronecker product for the column-stacking identity vec(A X B) = (B^T (x) A) vec(X).
Sparse kron(const Sparse& p, const Sparse& q) {
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(p.nonZeros()) * q.nonZeros());
    for (int pk = 0; pk < p.outerSize(); ++pk) {
        for (Sparse::InnerIterator pit(p, pk); pit; ++pit) {
            for (int qk = 0; qk < q.outerSize(); ++qk) {
                for (Sparse::InnerIterator qit(q, qk); qit; ++qit) {
                    triplets.emplace_back(pit.row() * q.rows() + qit.row(),
                                          pit.col() * q.cols() + qit.col(),
                                          pit.value() * qit.value());
                }
            }
        }
    }
    Sparse out(p.rows() * q.rows(), p.cols() * q.cols());
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

Sparse identity(int n) {
    Sparse id(n, n);
    id.setIdentity();
    return id;
}

} // namespace

LiouvillianOperator build_liouvillian(const FockSpace& space, const Eigen::MatrixXcd& hamiltonian_nu,
                                      const std::vector<CollapseChannel>& channels) {
    space.validate();
    const int n = space.total_dim();
    if (hamiltonian_nu.rows() != n || hamiltonian_nu.cols() != n) {
        throw ValidationError("build_liouvillian: Hamiltonian does not match the Fock space");
    }
    const double h_scale = std::max(1.0, hamiltonian_nu.cwiseAbs().maxCoeff());
    if ((hamiltonian_nu - hamiltonian_nu.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * h_scale) {
        throw ValidationError("build_liouvillian: Hamiltonian is not Hermitian within tolerance");
    }

    const Sparse id = identity(n);
    const Sparse h = sparsify(kTwoPi * hamiltonian_nu);
    Sparse l = Sparse(-kI * (kron(id, h) - kron(Sparse(h.transpose()), id)));

    for (const auto& channel : channels) {
        if (channel.rate_nu < 0.0) {
            throw ValidationError("build_liouvillian: collapse rate must be non-negative");
        }
        if (channel.rate_nu == 0.0) continue;
        if (channel.op.rows() != n || channel.op.cols() != n) {
            throw ValidationError("build_liouvillian: collapse operator does not match the Fock space");
        }
        const double rate = angular(channel.rate_nu);
        const Sparse a = sparsify(channel.op);
        const Sparse a_conj = sparsify(channel.op.conjugate());
        const Sparse ada = sparsify(Eigen::MatrixXcd(channel.op.adjoint() * channel.op));
        l += Sparse(rate * kron(a_conj, a));
        l -= Sparse(0.5 * rate * kron(id, ada));
        l -= Sparse(0.5 * rate * kron(Sparse(ada.transpose()), id));
    }
    l.makeCompressed();
    return LiouvillianOperator{space, std::move(l)};
}

Eigen::MatrixXcd apply(const LiouvillianOperator& liouvillian, const Eigen::MatrixXcd& rho) {
    const int n = liouvillian.hilbert_dim();
    if (rho.rows() != n || rho.cols() != n) {
        throw ValidationError("apply: state does not match the Fock space");
    }
    Eigen::Map<const Eigen::VectorXcd> rho_vec(rho.data(), n * n);
    Eigen::VectorXcd out = liouvillian.matrix * rho_vec;
    return Eigen::Map<const Eigen::MatrixXcd>(out.data(), n, n);
}

DensityMatrix steady_state_density(const LiouvillianOperator& liouvillian) {
    const int n = liouvillian.hilbert_dim();
    const int nsq = n * n;
    const Sparse& l = liouvillian.matrix;

    // Augment the first row with the trace functional: a kernel vector of
    // unit trace becomes the unique solution of M x = w e_0.
    double diag_scale = 0.0;
    for (int i = 0; i < nsq; ++i) diag_scale += std::abs(l.coeff(i, i));
    const double w = std::max(diag_scale / nsq, 1.0);

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(l.nonZeros()) + n);
    for (int k = 0; k < l.outerSize(); ++k) {
        for (Sparse::InnerIterator it(l, k); it; ++it) {
            triplets.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (int j = 0; j < n; ++j) {
        triplets.emplace_back(0, j * (n + 1), Complex(w, 0.0));
    }
    Sparse m(nsq, nsq);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nsq);
    rhs(0) = w;

    // Krylov solve first (the drive term ruins direct-LU fill-in); the exact
    // sparse LU stays as the fallback for ill-conditioned cases.
    Eigen::VectorXcd x;
    bool solved = false;
    {
        Eigen::BiCGSTAB<Sparse, Eigen::IncompleteLUT<Complex>> krylov;
        krylov.preconditioner().setDroptol(1e-5);
        krylov.preconditioner().setFillfactor(20);
        krylov.setTolerance(1e-13);
        krylov.setMaxIterations(2000);
        krylov.compute(m);
        if (krylov.info() == Eigen::Success) {
            x = krylov.solve(rhs);
            // refine to the machine floor: the fourth moments extracted from
            // rho can sit many orders below the state norm
            for (int pass = 0; pass < 3; ++pass) {
                const Eigen::VectorXcd residual = rhs - m * x;
                if (residual.norm() <= 1e-15 * rhs.norm()) break;
                x += krylov.solve(residual);
            }
            solved = (m * x - rhs).norm() <= 1e-9 * rhs.norm();
        }
        if (solved) {
            // A consistent singular system still converges, so probe
            // uniqueness with an incompatible right-hand side; a singular
            // augmented matrix cannot solve it and we defer to the LU.
            std::mt19937 gen(12345);
            std::normal_distribution<double> dist;
            Eigen::VectorXcd probe(nsq);
            for (int i = 0; i < nsq; ++i) probe(i) = Complex(dist(gen), dist(gen));
            probe *= w / probe.norm();
            const Eigen::VectorXcd y = krylov.solve(probe);
            const double probe_residual = (m * y - probe).norm();
            if (!(probe_residual <= 1e-6 * probe.norm())) solved = false;
        }
    }
    if (!solved) {
        Eigen::SparseLU<Sparse> direct;
        direct.analyzePattern(m);
        direct.factorize(m);
        if (direct.info() != Eigen::Success) {
            throw DegenerateSteadyStateError(
                "steady_state_density: trace-augmented Liouvillian is singular (kernel is empty or "
                "multi-dimensional)");
        }
        x = direct.solve(rhs);
    }

    Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), n, n);
    rho = (rho + rho.adjoint()) / 2.0;
    const Complex trace = rho.trace();
    if (std::abs(trace) < 1e-300) {
        throw DegenerateSteadyStateError("steady_state_density: kernel vector has zero trace");
    }
    rho /= trace;

    Eigen::Map<const Eigen::VectorXcd> rho_vec(rho.data(), nsq);
    const double residual = (l * rho_vec).norm();
    if (residual > 1e-8 * l.norm()) {
        throw DegenerateSteadyStateError("steady_state_density: kernel residual " +
                                         std::to_string(residual) + " exceeds tolerance");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
    if (eig.eigenvalues().minCoeff() < -1e-8) {
        throw InstabilityError(
            "steady_state_density: kernel state has a negative eigenvalue; the Liouvillian spectrum "
            "is not decaying");
    }

    return DensityMatrix{liouvillian.space, std::move(rho)};
}

} // namespace twmr::fock
