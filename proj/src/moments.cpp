#include "twmr/moments.hpp"

#include <array>

#include <Eigen/Eigenvalues>

#include "twmr/errors.hpp"
#include "twmr/units.hpp"

namespace twmr::gaussian {

Eigen::MatrixXcd MomentSet::centered_normal() const {
    return normal - first.conjugate() * first.transpose();
}

Eigen::MatrixXcd MomentSet::centered_anom() const {
    return anom - first * first.transpose();
}

void MomentSet::validate(double tol) const {
    const int n = mode_count();
    if (normal.rows() != n || normal.cols() != n || anom.rows() != n || anom.cols() != n) {
        throw ValidationError("MomentSet: inconsistent matrix sizes");
    }
    for (int i = 0; i < n; ++i) {
        if (std::abs(normal(i, i).imag()) > tol || normal(i, i).real() < -tol) {
            throw ValidationError("MomentSet: occupation <o^dag o> must be real and non-negative");
        }
    }
    const Eigen::MatrixXcd c = centered_normal();
    const Eigen::MatrixXcd herm = (c + c.adjoint()) / 2.0;
    if ((c - herm).cwiseAbs().maxCoeff() > tol * std::max(1.0, herm.cwiseAbs().maxCoeff())) {
        throw ValidationError("MomentSet: centered <o_i^dag o_j> is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
    if (eig.eigenvalues().minCoeff() < -tol * std::max(1.0, herm.cwiseAbs().maxCoeff())) {
        throw ValidationError("MomentSet: centered second moments are not positive semidefinite");
    }
}

Eigen::MatrixXcd doubled_drift(const DriftMatrix& drift) {
    if (drift.basis_doubled) return drift.A;
    const int n = drift.mode_count;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    u.topLeftCorner(n, n) = drift.A;
    u.bottomRightCorner(n, n) = drift.A.conjugate();
    return u;
}

Eigen::MatrixXcd diffusion_matrix(std::span<const NoiseInput> noise) {
    const int n = static_cast<int>(noise.size());
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        const double rate = angular(noise[i].damping_nu);
        d(i, i + n) = rate * (noise[i].n_th + 1.0);
        d(i + n, i) = rate * noise[i].n_th;
    }
    return d;
}

Eigen::MatrixXcd lyapunov_steady(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& D) {
    const int n = static_cast<int>(U.rows());
    // vec(U M + M U^T) = (I (x) U + U (x) I) vec(M), column-major stacking
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (int col = 0; col < n; ++col) {
        K.block(col * n, col * n, n, n) += U;
    }
    for (int bc = 0; bc < n; ++bc) {
        for (int br = 0; br < n; ++br) {
            for (int i = 0; i < n; ++i) {
                K(br * n + i, bc * n + i) += U(br, bc);
            }
        }
    }
    Eigen::Map<const Eigen::VectorXcd> d_vec(D.data(), n * n);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(K);
    if (!lu.isInvertible()) {
        throw SingularMatrixError("lyapunov_steady: singular Lyapunov operator");
    }
    Eigen::VectorXcd m_vec = lu.solve(d_vec);
    return Eigen::Map<const Eigen::MatrixXcd>(m_vec.data(), n, n);
}

MomentSet second_moments_steady(const DriftMatrix& drift, std::span<const NoiseInput> noise,
                                const Eigen::VectorXcd& drive) {
    const int n = drift.mode_count;
    if (static_cast<int>(noise.size()) != n) {
        throw ValidationError("second_moments_steady: one NoiseInput per mode required");
    }
    if (!stability_check(drift)) {
        throw InstabilityError("second_moments_steady: drift matrix has a non-decaying eigenvalue");
    }

    const Eigen::MatrixXcd u = doubled_drift(drift);
    const Eigen::MatrixXcd m = lyapunov_steady(u, diffusion_matrix(noise));

    Eigen::VectorXcd first = Eigen::VectorXcd::Zero(n);
    if (drive.size() != 0) {
        first = first_moments_steady(drift, drive).head(n);
    }

    MomentSet out;
    out.first = first;
    out.normal = m.block(n, 0, n, n) + first.conjugate() * first.transpose();
    out.anom = m.block(0, 0, n, n) + first * first.transpose();
    return out;
}

MomentSet steady_moments(const LinearModel& model) {
    const DriftMatrix drift = build_drift(model);
    std::vector<NoiseInput> noise;
    noise.reserve(model.modes.size());
    for (const auto& mode : model.modes) {
        noise.push_back({mode.damping_nu, mode.n_th});
    }
    return second_moments_steady(drift, noise, drive_vector(model, drift));
}

namespace {

// Centered pair moment <delta o_p delta o_q> with p preceding q.
Complex centered_pair(const Eigen::MatrixXcd& cnormal, const Eigen::MatrixXcd& canom,
                      LadderOp p, LadderOp q) {
    if (!p.dagger && !q.dagger) return canom(p.mode, q.mode);
    if (p.dagger && !q.dagger) return cnormal(p.mode, q.mode);
    if (!p.dagger && q.dagger) {
        Complex value = cnormal(q.mode, p.mode);
        if (p.mode == q.mode) value += 1.0; // commutator [a, a^dag]
        return value;
    }
    return std::conj(canom(p.mode, q.mode));
}

Complex mean_of(const MomentSet& m, LadderOp op) {
    return op.dagger ? std::conj(m.first(op.mode)) : m.first(op.mode);
}

Complex wick(const MomentSet& m, const Eigen::MatrixXcd& cnormal, const Eigen::MatrixXcd& canom,
             std::span<const LadderOp> ops) {
    if (ops.empty()) return 1.0;
    std::vector<LadderOp> rest(ops.begin() + 1, ops.end());
    Complex total = mean_of(m, ops[0]) * wick(m, cnormal, canom, rest);
    for (std::size_t j = 1; j < ops.size(); ++j) {
        std::vector<LadderOp> reduced;
        reduced.reserve(ops.size() - 2);
        for (std::size_t i = 1; i < ops.size(); ++i) {
            if (i != j) reduced.push_back(ops[i]);
        }
        total += centered_pair(cnormal, canom, ops[0], ops[j]) * wick(m, cnormal, canom, reduced);
    }
    return total;
}

} // namespace

Complex gaussian_moment(const MomentSet& m, std::span<const LadderOp> ops) {
    for (const auto& op : ops) {
        if (op.mode < 0 || op.mode >= m.mode_count()) {
            throw ValidationError("gaussian_moment: operator references a mode out of range");
        }
    }
    const Eigen::MatrixXcd cnormal = m.centered_normal();
    const Eigen::MatrixXcd canom = m.centered_anom();
    return wick(m, cnormal, canom, ops);
}

Complex gaussian_fourth_moment(const MomentSet& m, const std::array<LadderOp, 4>& ops) {
    return gaussian_moment(m, std::span<const LadderOp>(ops.data(), ops.size()));
}

} // namespace twmr::gaussian
