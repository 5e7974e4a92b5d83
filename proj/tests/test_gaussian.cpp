#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "twmr/errors.hpp"
#include "twmr/fock.hpp"
#include "twmr/liouvillian.hpp"
#include "twmr/moments.hpp"
#include "twmr/pairgen.hpp"
#include "twmr/units.hpp"

using namespace twmr;
using gaussian::Complex;
using gaussian::LadderOp;

namespace {

gaussian::MomentSet coherent_state(Complex alpha) {
    gaussian::MomentSet m;
    m.first = Eigen::VectorXcd::Constant(1, alpha);
    m.normal = Eigen::MatrixXcd::Constant(1, 1, std::conj(alpha) * alpha);
    m.anom = Eigen::MatrixXcd::Constant(1, 1, alpha * alpha);
    return m;
}

gaussian::MomentSet displaced_thermal(Complex alpha, double n) {
    gaussian::MomentSet m = coherent_state(alpha);
    m.normal(0, 0) += n;
    return m;
}

Complex moment(const gaussian::MomentSet& m, std::initializer_list<LadderOp> ops) {
    std::vector<LadderOp> list(ops);
    return gaussian::gaussian_moment(m, list);
}

} // namespace

TEST_CASE("drift of an uncoupled network is diagonal") {
    gaussian::LinearModel model;
    model.modes = {{"a", 1.5, 15.0, 7.5, 0.0}, {"b", -0.3, 0.022, 0.0, 0.2}};
    const auto drift = gaussian::build_drift(model);
    CHECK_FALSE(drift.basis_doubled);
    CHECK_EQ(drift.size(), 2);
    CHECK_EQ(drift.A(0, 0), Complex(angular(15.0) / 2.0, angular(1.5)));
    CHECK_EQ(drift.A(1, 1), Complex(angular(0.022) / 2.0, angular(-0.3)));
    CHECK_EQ(drift.A(0, 1), Complex(0.0, 0.0));
}

TEST_CASE("beamsplitter and squeeze couplings populate the expected entries") {
    gaussian::LinearModel model;
    model.modes = {{"a", 0.0, 15.0, 7.5, 0.0}, {"b", 0.0, 0.022, 0.0, 0.0}};
    model.couplings = {{0, 1, gaussian::CouplingKind::beamsplitter, Complex(0.3, 0.1)}};
    auto drift = gaussian::build_drift(model);
    CHECK_EQ(drift.A(0, 1), Complex(0.0, 1.0) * angular(1.0) * Complex(0.3, 0.1));
    CHECK_EQ(drift.A(1, 0), Complex(0.0, 1.0) * angular(1.0) * Complex(0.3, -0.1));

    model.couplings = {{0, 1, gaussian::CouplingKind::two_mode_squeeze, Complex(0.1, 0.0)}};
    drift = gaussian::build_drift(model);
    CHECK(drift.basis_doubled);
    CHECK_EQ(drift.size(), 4);
    CHECK_EQ(drift.A(0, 3), Complex(0.0, angular(0.1)));
    CHECK_EQ(drift.A(1, 2), Complex(0.0, angular(0.1)));
    // Bogoliubov structure: swapping blocks conjugates the matrix
    const int n = 2;
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j) {
            CHECK_EQ(drift.A(i, j), std::conj(drift.A((i + n) % (2 * n), (j + n) % (2 * n))));
        }
}

TEST_CASE("model validation") {
    gaussian::LinearModel model;
    model.modes = {{"a", 0.0, 15.0, 16.0, 0.0}}; // external > damping
    CHECK_THROWS_AS(model.validate(), ValidationError);
    model.modes = {{"a", 0.0, 15.0, 7.5, 0.0}};
    model.couplings = {{0, 0, gaussian::CouplingKind::beamsplitter, Complex(0.1, 0.0)}};
    CHECK_THROWS_AS(model.validate(), ValidationError); // self-coupling
}

TEST_CASE("stability: closed form matches the eigenvalue test") {
    CHECK(gaussian::routh_hurwitz_pairgen(0.3, 0.1, 15.0, 0.022)); // 0.08 > -0.0825
    CHECK(gaussian::routh_hurwitz_pairgen(0.0, 0.0, 15.0, 0.022));
    CHECK_FALSE(gaussian::routh_hurwitz_pairgen(0.0, 0.5, 15.0, 0.022));
    CHECK_THROWS_AS(gaussian::routh_hurwitz_pairgen(0.3, 0.1, -1.0, 0.022), ValidationError);

    // sign agreement with the drift-matrix spectrum across random draws
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int unstable_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const double kappa = 0.5 + 29.5 * u(gen);
        const double gamma = 0.001 + 0.099 * u(gen);
        const double g_k = u(gen), g_mk = u(gen);
        const double margin = g_k * g_k - g_mk * g_mk + kappa * gamma / 4.0;
        if (std::abs(margin) <= 1e-9) continue;

        gaussian::LinearModel model;
        model.modes = {{"a_k", 0.0, kappa, kappa / 2.0, 0.0},
                       {"b", 0.0, gamma, 0.0, 0.0},
                       {"a_mk", 0.0, kappa, kappa / 2.0, 0.0}};
        model.couplings = {{0, 1, gaussian::CouplingKind::beamsplitter, Complex(g_k, 0.0)},
                           {2, 1, gaussian::CouplingKind::two_mode_squeeze, Complex(g_mk, 0.0)}};
        const bool numeric = gaussian::stability_check(gaussian::build_drift(model));
        const bool closed = gaussian::routh_hurwitz_pairgen(g_k, g_mk, kappa, gamma);
        REQUIRE_EQ(numeric, closed);
        if (!numeric) ++unstable_seen;
    }
    CHECK_GT(unstable_seen, 10); // both regimes sampled
}

TEST_CASE("pairgen drift at figure-2 parameters is stable") {
    const auto drift = gaussian::build_drift(pairgen::build_model(pairgen::Params{}));
    CHECK(drift.basis_doubled);
    CHECK_EQ(drift.size(), 6);
    CHECK(gaussian::stability_check(drift));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(drift.A, false);
    for (int i = 0; i < 6; ++i) CHECK_GT(eig.eigenvalues()(i).real(), 0.0);
}

TEST_CASE("first moments of the driven cavity") {
    gaussian::LinearModel model;
    model.modes = {{"a", 0.0, 15.0, 7.5, 0.0}};
    model.drives = {{0, Complex(0.1, 0.0)}};
    const auto drift = gaussian::build_drift(model);
    const auto drive = gaussian::drive_vector(model, drift);
    const auto mean = gaussian::first_moments_steady(drift, drive);
    const double expected = std::sqrt(angular(7.5)) * 0.1 / (angular(15.0) / 2.0);
    CHECK_EQ(mean(0).real(), doctest::Approx(expected).epsilon(1e-12));
    CHECK_LE(std::abs(mean(0).imag()), 1e-15);

    // zero drive gives the zero vector
    const auto zero = gaussian::first_moments_steady(drift, Eigen::VectorXcd::Zero(1));
    CHECK_LE(zero.cwiseAbs().maxCoeff(), 1e-15);
}

TEST_CASE("first moments refuse an unstable drift") {
    gaussian::LinearModel model;
    model.modes = {{"a", 0.0, 15.0, 7.5, 0.0},
                   {"b", 0.0, 0.022, 0.0, 0.0},
                   {"a_mk", 0.0, 15.0, 7.5, 0.0}};
    model.couplings = {{2, 1, gaussian::CouplingKind::two_mode_squeeze, Complex(0.6, 0.0)}};
    const auto drift = gaussian::build_drift(model);
    CHECK_FALSE(gaussian::stability_check(drift));
    CHECK_THROWS_AS(gaussian::first_moments_steady(drift, Eigen::VectorXcd::Zero(drift.size())),
                    InstabilityError);
}

TEST_CASE("second moments: thermal fixed point and vacuum") {
    gaussian::LinearModel model;
    model.modes = {{"b", 0.0, 0.022, 0.0, 0.0}};
    auto drift = gaussian::build_drift(model);
    std::vector<gaussian::NoiseInput> noise = {{0.022, 0.0}};
    auto m = gaussian::second_moments_steady(drift, noise);
    CHECK_LE(std::abs(m.normal(0, 0)), 1e-14);
    CHECK_LE(std::abs(m.anom(0, 0)), 1e-14);

    noise[0].n_th = 0.2;
    m = gaussian::second_moments_steady(drift, noise);
    CHECK_EQ(m.normal(0, 0).real(), doctest::Approx(0.2).epsilon(1e-12));
    m.validate();
}

TEST_CASE("lyapunov residual stays at solver precision on random stable models") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int tested = 0;
    while (tested < 20) {
        gaussian::LinearModel model;
        model.modes = {{"a", u(gen) - 0.5, 1.0 + 20.0 * u(gen), 0.0, 0.1 * u(gen)},
                       {"b", u(gen) - 0.5, 0.01 + 0.1 * u(gen), 0.0, u(gen)},
                       {"c", u(gen) - 0.5, 1.0 + 20.0 * u(gen), 0.0, 0.0}};
        model.couplings = {
            {0, 1, gaussian::CouplingKind::beamsplitter, Complex(u(gen), u(gen) - 0.5)},
            {2, 1, gaussian::CouplingKind::two_mode_squeeze, Complex(0.3 * u(gen), 0.0)}};
        const auto drift = gaussian::build_drift(model);
        if (!gaussian::stability_check(drift)) continue;
        ++tested;
        std::vector<gaussian::NoiseInput> noise;
        for (const auto& mode : model.modes) noise.push_back({mode.damping_nu, mode.n_th});
        const auto u_doubled = gaussian::doubled_drift(drift);
        const auto d = gaussian::diffusion_matrix(noise);
        const auto v = gaussian::lyapunov_steady(u_doubled, d);
        const double residual =
            (u_doubled * v + v * u_doubled.transpose() - d).cwiseAbs().maxCoeff();
        REQUIRE_LE(residual, 1e-10 * std::max(1.0, d.cwiseAbs().maxCoeff()));
        // the moments assembled from this solve satisfy the PSD invariants
        gaussian::second_moments_steady(drift, noise).validate();
    }
}

TEST_CASE("pairgen squeeze populates the CCW mode") {
    const auto m = gaussian::steady_moments(pairgen::build_model(pairgen::Params{}));
    CHECK_GT(m.normal(pairgen::kModeCcw, pairgen::kModeCcw).real(), 0.0);
}

TEST_CASE("wick factorization: analytic states") {
    SUBCASE("coherent state is Poissonian") {
        const auto m = coherent_state(Complex(2.0, 0.0));
        CHECK_EQ(moment(m, {{0, true}, {0, true}, {0, false}, {0, false}}).real(),
                 doctest::Approx(16.0).epsilon(1e-14));
        // antinormal order picks up the commutator
        CHECK_EQ(moment(m, {{0, false}, {0, true}}).real(), doctest::Approx(5.0).epsilon(1e-14));
    }
    SUBCASE("thermal state gives 2 n^2") {
        gaussian::MomentSet m;
        m.first = Eigen::VectorXcd::Zero(1);
        m.normal = Eigen::MatrixXcd::Constant(1, 1, 0.2);
        m.anom = Eigen::MatrixXcd::Zero(1, 1);
        CHECK_EQ(moment(m, {{0, true}, {0, true}, {0, false}, {0, false}}).real(),
                 doctest::Approx(2.0 * 0.2 * 0.2).epsilon(1e-14));
    }
    SUBCASE("displaced thermal closed form") {
        const Complex alpha(0.3, 0.1);
        const double n = 0.15;
        const auto m = displaced_thermal(alpha, n);
        const double expected = std::pow(std::abs(alpha), 4) + 4.0 * n * std::norm(alpha) + 2.0 * n * n;
        CHECK_EQ(moment(m, {{0, true}, {0, true}, {0, false}, {0, false}}).real(),
                 doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("wick factorization against the truncated-Fock engine") {
    // driven, thermally loaded cavity: Gaussian state with displacement and noise
    const double kappa = 15.0, kappa_in = 7.5, eps = 0.4, n_th = 0.3, detuning = 2.0;

    gaussian::LinearModel model;
    model.modes = {{"a", detuning, kappa, kappa_in, n_th}};
    model.drives = {{0, Complex(eps, 0.0)}};
    const auto m = gaussian::steady_moments(model);

    fock::FockSpace space{{18}, {}};
    const auto a = fock::mode_annihilation(space, 0);
    const Complex drive = Complex(0.0, 1.0) * drive_coefficient_nu(kappa_in, eps);
    Eigen::MatrixXcd h = detuning * (a.adjoint() * a);
    h += drive * a.adjoint() + std::conj(drive) * a;
    const auto rho = fock::steady_state_density(fock::build_liouvillian(
        space, h,
        {{a, (n_th + 1.0) * kappa}, {Eigen::MatrixXcd(a.adjoint()), n_th * kappa}}));

    const Complex mean_fock = fock::expectation(rho, a);
    CHECK_LE(std::abs(mean_fock - m.first(0)), 1e-9);

    const Complex n_fock = fock::expectation(rho, Eigen::MatrixXcd(a.adjoint() * a));
    CHECK_EQ(n_fock.real(), doctest::Approx(m.normal(0, 0).real()).epsilon(1e-7));

    const Complex quad_fock =
        fock::expectation(rho, Eigen::MatrixXcd(a.adjoint() * a.adjoint() * a * a));
    const Complex quad_wick = moment(m, {{0, true}, {0, true}, {0, false}, {0, false}});
    CHECK_EQ(quad_fock.real(), doctest::Approx(quad_wick.real()).epsilon(1e-6));
}
