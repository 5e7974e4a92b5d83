#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "twmr/linear_model.hpp"

namespace twmr::gaussian {

// Uncentered first and second moments of an N-mode Gaussian state in the
// mode basis (not doubled): first(i) = <o_i>, normal(i,j) = <o_i^dag o_j>,
// anom(i,j) = <o_i o_j>.
struct MomentSet {
    Eigen::VectorXcd first;
    Eigen::MatrixXcd normal;
    Eigen::MatrixXcd anom;

    int mode_count() const { return static_cast<int>(first.size()); }
    Eigen::MatrixXcd centered_normal() const;
    Eigen::MatrixXcd centered_anom() const;
    void validate(double tol = 1e-8) const;
};

struct NoiseInput {
    double damping_nu = 0.0; // total damping feeding the diffusion, MHz
    double n_th = 0.0;       // bath occupancy of that channel
};

// 2N x 2N drift on (a_1..a_N, a_1^dag..a_N^dag); pads an undoubled drift
// with its conjugate block.
Eigen::MatrixXcd doubled_drift(const DriftMatrix& drift);

// Diffusion matrix of the Langevin noise in the doubled basis: each mode
// contributes damping*(n_th+1) to the <da da^dag> slot and damping*n_th to
// the <da^dag da> slot (angular units).
Eigen::MatrixXcd diffusion_matrix(std::span<const NoiseInput> noise);

// Solves U M + M U^T = D for the steady second-moment matrix
// M(p,q) = <delta o_p delta o_q> in the doubled basis.
Eigen::MatrixXcd lyapunov_steady(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& D);

// Steady-state moments of a stable drift: Lyapunov covariances combined
// with the first moments driven by `drive` (pass an empty vector for an
// undriven network). Throws InstabilityError when the drift does not decay.
MomentSet second_moments_steady(const DriftMatrix& drift, std::span<const NoiseInput> noise,
                                const Eigen::VectorXcd& drive = {});

// Convenience: drift, drive and noise taken straight from the model.
MomentSet steady_moments(const LinearModel& model);

struct LadderOp {
    int mode = 0;
    bool dagger = false;
};

// Expectation value of an ordered product of ladder operators in a
// Gaussian state, by moment factorization (all cumulants beyond second
// order vanish). Operator order is preserved, so normal and antinormal
// products come out correctly.
Complex gaussian_moment(const MomentSet& m, std::span<const LadderOp> ops);

Complex gaussian_fourth_moment(const MomentSet& m, const std::array<LadderOp, 4>& ops);

} // namespace twmr::gaussian
