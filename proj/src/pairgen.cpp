#include "twmr/pairgen.hpp"

#include <cmath>

#include "twmr/errors.hpp"
#include "twmr/liouvillian.hpp"
#include "twmr/units.hpp"

namespace twmr::pairgen {

using gaussian::Complex;

void Params::validate() const {
    if (!(kappa > 0.0) || !(gamma_m > 0.0)) {
        throw ValidationError("pairgen: kappa and gamma_m must be positive");
    }
    if (!(kappa_in > 0.0) || kappa_in > kappa) {
        throw ValidationError("pairgen: kappa_in must lie in (0, kappa]");
    }
    if (n_th < 0.0) throw ValidationError("pairgen: n_th must be non-negative");
    if (G_k < 0.0 || G_mk < 0.0 || eps_s < 0.0) {
        throw ValidationError("pairgen: couplings and drive amplitude must be non-negative");
    }
    if (!(G_mk * G_mk < kappa * gamma_m / 4.0)) {
        throw ValidationError(
            "pairgen: G_mk^2 must stay below kappa*gamma_m/4, otherwise the blue drive alone "
            "destabilizes the system");
    }
}

gaussian::LinearModel build_model(const Params& p) {
    p.validate();
    gaussian::LinearModel model;
    model.modes = {
        {"a_k", -p.delta_k, p.kappa, p.kappa_in, 0.0},
        {"b_0", -p.delta_k, p.gamma_m, 0.0, p.n_th},
        {"a_mk", +p.delta_k, p.kappa, p.kappa_in, 0.0},
    };
    model.couplings = {
        {kModeCw, kModePhonon, gaussian::CouplingKind::beamsplitter, Complex(p.G_k, 0.0)},
        {kModeCcw, kModePhonon, gaussian::CouplingKind::two_mode_squeeze, Complex(p.G_mk, 0.0)},
    };
    model.drives = {{kModeCw, Complex(p.eps_s, 0.0)}};
    return model;
}

namespace {

double real_moment(Complex value, const char* what) {
    if (std::abs(value.imag()) > 1e-9 * std::max(1.0, std::abs(value.real()))) {
        throw ValidationError(std::string("nonclassicality: moment ") + what +
                              " has a non-negligible imaginary part");
    }
    // clamp the numerical noise floor of genuinely non-negative moments
    return std::max(value.real(), 0.0);
}

double witness_from_moments(double quad_cw, double quad_ccw, double cross) {
    if (!(cross > 1e-12)) {
        throw UndefinedWitnessError(
            "nonclassicality: <n_k n_mk> vanishes, the witness is undefined (CCW mode in vacuum?)");
    }
    const double witness = std::sqrt(quad_cw * quad_ccw) / cross - 1.0;
    if (!(witness >= -1.0)) {
        throw Error("nonclassicality: witness fell below its -1 bound, moments are inconsistent");
    }
    return witness;
}

} // namespace

double nonclassicality(const gaussian::MomentSet& m, int cw, int ccw) {
    using gaussian::LadderOp;
    const auto moment = [&](std::initializer_list<LadderOp> ops, const char* what) {
        std::vector<LadderOp> list(ops);
        return real_moment(gaussian::gaussian_moment(m, list), what);
    };
    const double quad_cw = moment({{cw, true}, {cw, true}, {cw, false}, {cw, false}}, "<ak+2 ak2>");
    const double quad_ccw =
        moment({{ccw, true}, {ccw, true}, {ccw, false}, {ccw, false}}, "<amk+2 amk2>");
    const double cross =
        moment({{cw, true}, {cw, false}, {ccw, true}, {ccw, false}}, "<nk nmk>");
    return witness_from_moments(quad_cw, quad_ccw, cross);
}

double nonclassicality(const fock::DensityMatrix& rho, int cw, int ccw) {
    const Eigen::MatrixXcd a_cw = fock::mode_annihilation(rho.space, cw);
    const Eigen::MatrixXcd a_ccw = fock::mode_annihilation(rho.space, ccw);
    const Eigen::MatrixXcd ad_cw = a_cw.adjoint();
    const Eigen::MatrixXcd ad_ccw = a_ccw.adjoint();
    const double quad_cw = real_moment(fock::expectation(rho, ad_cw * ad_cw * a_cw * a_cw), "<ak+2 ak2>");
    const double quad_ccw =
        real_moment(fock::expectation(rho, ad_ccw * ad_ccw * a_ccw * a_ccw), "<amk+2 amk2>");
    const double cross =
        real_moment(fock::expectation(rho, ad_cw * a_cw * ad_ccw * a_ccw), "<nk nmk>");
    return witness_from_moments(quad_cw, quad_ccw, cross);
}

double witness_gaussian(const Params& p) {
    return nonclassicality(gaussian::steady_moments(build_model(p)));
}

namespace {

FockMoments solve_fock_once(const Params& p, const std::vector<int>& dims) {
    fock::FockSpace space{dims, {"a_k", "b_0", "a_mk"}};
    const Eigen::MatrixXcd a_k = fock::mode_annihilation(space, kModeCw);
    const Eigen::MatrixXcd b = fock::mode_annihilation(space, kModePhonon);
    const Eigen::MatrixXcd a_mk = fock::mode_annihilation(space, kModeCcw);

    // Hamiltonian in cyclic units; the Liouvillian builder applies the 2*pi.
    Eigen::MatrixXcd h = -p.delta_k * (a_k.adjoint() * a_k).eval() -
                         p.delta_k * (b.adjoint() * b).eval() +
                         p.delta_k * (a_mk.adjoint() * a_mk).eval();
    h += p.G_k * (a_k.adjoint() * b + b.adjoint() * a_k);
    h += p.G_mk * (a_mk.adjoint() * b.adjoint() + b * a_mk);
    const Complex drive = Complex(0.0, 1.0) * drive_coefficient_nu(p.kappa_in, p.eps_s);
    h += drive * a_k.adjoint() + std::conj(drive) * a_k;

    std::vector<fock::CollapseChannel> channels = {
        {a_k, p.kappa},
        {a_mk, p.kappa},
        {b, (p.n_th + 1.0) * p.gamma_m},
        {Eigen::MatrixXcd(b.adjoint()), p.n_th * p.gamma_m},
    };
    const auto liouvillian = fock::build_liouvillian(space, h, channels);
    const fock::DensityMatrix rho = fock::steady_state_density(liouvillian);

    FockMoments out;
    out.mean_cw = fock::expectation(rho, a_k);
    out.mean_phonon = fock::expectation(rho, b);
    out.mean_ccw = fock::expectation(rho, a_mk);
    out.n_cw = std::real(fock::expectation(rho, a_k.adjoint() * a_k));
    out.n_phonon = std::real(fock::expectation(rho, b.adjoint() * b));
    out.n_ccw = std::real(fock::expectation(rho, a_mk.adjoint() * a_mk));
    out.anom_cw_ccw = fock::expectation(rho, a_k * a_mk);
    out.anom_phonon_ccw = fock::expectation(rho, b * a_mk);
    out.quad_cw = std::real(fock::expectation(rho, a_k.adjoint() * a_k.adjoint() * a_k * a_k));
    out.quad_ccw = std::real(fock::expectation(rho, a_mk.adjoint() * a_mk.adjoint() * a_mk * a_mk));
    out.cross = std::real(fock::expectation(rho, a_k.adjoint() * a_k * a_mk.adjoint() * a_mk));
    out.witness = witness_from_moments(std::max(out.quad_cw, 0.0), std::max(out.quad_ccw, 0.0),
                                       out.cross);
    out.dims_used = dims;
    return out;
}

double rel_change(double next, double prev) {
    const double scale = std::max({std::abs(next), std::abs(prev), 1e-30});
    return std::abs(next - prev) / scale;
}

double max_rel_change(const FockMoments& next, const FockMoments& prev) {
    double worst = 0.0;
    worst = std::max(worst, rel_change(next.n_cw, prev.n_cw));
    worst = std::max(worst, rel_change(next.n_ccw, prev.n_ccw));
    worst = std::max(worst, rel_change(next.quad_cw, prev.quad_cw));
    worst = std::max(worst, rel_change(next.quad_ccw, prev.quad_ccw));
    worst = std::max(worst, rel_change(next.cross, prev.cross));
    return worst;
}

} // namespace

FockMoments fock_moments(const Params& p, const std::vector<int>& dims) {
    p.validate();
    if (dims.size() != 3) {
        throw ValidationError("fock_moments: three truncation dimensions required");
    }
    return solve_fock_once(p, dims);
}

FockMoments witness_fock(const Params& p, const FockOptions& options) {
    p.validate();
    if (options.dims.size() != 3) {
        throw ValidationError("witness_fock: three truncation dimensions required");
    }
    std::vector<int> dims = options.dims;
    FockMoments current = solve_fock_once(p, dims);
    for (int attempt = 0; attempt <= options.max_escalations; ++attempt) {
        std::vector<int> bigger = dims;
        for (int& d : bigger) ++d;
        FockMoments refined = solve_fock_once(p, bigger);
        const double change = max_rel_change(refined, current);
        if (change <= options.convergence_tol) {
            refined.max_rel_change = change;
            return refined;
        }
        dims = bigger;
        current = refined;
    }
    throw NonConvergenceError("witness_fock: moments kept moving by more than the tolerance after " +
                              std::to_string(options.max_escalations) + " escalations");
}

std::vector<SweepPoint> sweep_nonclassicality(const Params& base, SweepAxis axis,
                                              std::span<const double> grid,
                                              const SweepOptions& options) {
    std::vector<SweepPoint> points;
    points.reserve(grid.size());
    for (double value : grid) {
        Params p = base;
        if (axis == SweepAxis::delta_k) {
            p.delta_k = value;
        } else {
            p.G_k = value;
        }
        SweepPoint point;
        point.axis_value = value;
        try {
            p.validate();
            if (!gaussian::routh_hurwitz_pairgen(p.G_k, p.G_mk, p.kappa, p.gamma_m)) {
                throw InstabilityError("pairgen: Routh-Hurwitz stability condition violated");
            }
            point.witness = options.engine == Engine::fock ? witness_fock(p, options.fock).witness
                                                           : witness_gaussian(p);
        } catch (const Error& err) {
            point.error = err.what();
        }
        points.push_back(point);
    }

    if (options.fock_spot_checks > 0 && options.engine == Engine::gaussian) {
        std::vector<std::size_t> good;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].witness) good.push_back(i);
        }
        const int checks = std::min<int>(options.fock_spot_checks, static_cast<int>(good.size()));
        for (int c = 0; c < checks; ++c) {
            const std::size_t pick = good[(good.size() - 1) * c / std::max(checks - 1, 1)];
            Params p = base;
            if (axis == SweepAxis::delta_k) {
                p.delta_k = points[pick].axis_value;
            } else {
                p.G_k = points[pick].axis_value;
            }
            points[pick].fock_witness = witness_fock(p, options.fock).witness;
        }
    }
    return points;
}

} // namespace twmr::pairgen
