#include "twmr/phonon_pt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "twmr/errors.hpp"
#include "twmr/units.hpp"

namespace twmr::ptsym {

namespace {
constexpr Complex kI{0.0, 1.0};
}

void Params::validate() const {
    if (!(omega_ml > 0.0) || !(gamma_m > 0.0) || !(kappa1 > 0.0) || !(kappa2 > 0.0)) {
        throw ValidationError("ptsym: frequencies and linewidths must be positive");
    }
    if (!(kappa_in > 0.0) || kappa_in > kappa1) {
        throw ValidationError("ptsym: kappa_in must lie in (0, kappa1]");
    }
    if (G_l < 0.0 || G_ml < 0.0 || J < 0.0) {
        throw ValidationError("ptsym: couplings must be non-negative");
    }
}

gaussian::DriftMatrix build_pt_drift(const Params& p, const Detunings& detunings) {
    p.validate();
    const double g_l = angular(p.G_l);
    const double g_ml = angular(p.G_ml);
    const double j = angular(p.J);

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
    u(0, 0) = kI * angular(detunings.delta_k) + angular(p.kappa2) / 2.0;
    u(1, 1) = -kI * angular(detunings.delta_mj) + angular(p.kappa1) / 2.0;
    u(2, 2) = kI * angular(detunings.delta_l) + angular(p.gamma_m) / 2.0;
    u(3, 3) = kI * angular(detunings.delta_ml) + angular(p.gamma_m) / 2.0;
    u(0, 2) = kI * g_l;
    u(2, 0) = kI * g_l;
    u(1, 3) = -kI * g_ml;
    u(3, 1) = kI * g_ml;
    u(2, 3) = kI * j;
    u(3, 2) = kI * j;
    return gaussian::DriftMatrix{std::move(u), false, 4};
}

EffectiveRates adiabatic_effective_rates(const Params& p, double omega0_nu) {
    p.validate();
    EffectiveRates rates;
    rates.gamma_l = 4.0 * p.G_l * p.G_l / p.kappa2;
    rates.gamma_ml = -4.0 * p.G_ml * p.G_ml / p.kappa1;
    rates.omega0 = omega0_nu;
    rates.weak_separation = std::min(p.kappa1, p.kappa2) / p.gamma_m < 100.0;
    return rates;
}

SupermodePair supermode_eigenfrequencies(const EffectiveRates& rates, double gamma_m, double J_nu) {
    const double diff = rates.gamma_ml - rates.gamma_l;
    const double disc = 16.0 * J_nu * J_nu - diff * diff;
    const Complex root = std::sqrt(Complex(disc, 0.0));
    const Complex common =
        rates.omega0 - kI / 4.0 * (2.0 * gamma_m + rates.gamma_ml + rates.gamma_l);

    SupermodePair pair;
    pair.omega_plus = common + root / 4.0;
    pair.omega_minus = common - root / 4.0;
    const double tol = 1e-12 * std::max({16.0 * J_nu * J_nu, diff * diff, 1e-30});
    if (disc > tol) {
        pair.regime = Regime::unbroken;
    } else if (disc < -tol) {
        pair.regime = Regime::broken;
    } else {
        pair.regime = Regime::exceptional;
    }
    return pair;
}

Threshold pt_threshold(const EffectiveRates& rates, double gamma_m, double balance_tol) {
    Threshold out;
    out.J_PT = std::abs(rates.gamma_ml - rates.gamma_l) / 4.0;
    const double imbalance = (rates.gamma_ml + gamma_m) + (rates.gamma_l + gamma_m);
    if (std::abs(imbalance) <= balance_tol) {
        out.ideal = (rates.gamma_l + gamma_m) / 2.0;
    }
    return out;
}

namespace {

// The probe only shifts the whole drift by i*delta, so stability is
// delta-independent; check it once at delta = 0.
void require_decaying(const Params& p) {
    const gaussian::DriftMatrix drift = build_pt_drift(p, Detunings::probe(0.0));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(drift.A, false);
    for (int i = 0; i < 4; ++i) {
        const Complex lambda = -solver.eigenvalues()(i); // growth rate of mode i
        if (lambda.real() > 1e-12) {
            throw InstabilityError("ptsym: growing eigenvalue " + std::to_string(lambda.real()) +
                                   " + " + std::to_string(lambda.imag()) +
                                   "i rad/us; no steady state");
        }
    }
}

SteadyFields closed_form_fields(const Params& p, double delta_nu, double eps_p) {
    const double delta = angular(delta_nu);
    const double kappa1 = angular(p.kappa1);
    const double kappa2 = angular(p.kappa2);
    const double gamma = angular(p.gamma_m);
    const double g_l = angular(p.G_l);
    const double g_ml = angular(p.G_ml);
    const double j = angular(p.J);
    const Complex probe = std::sqrt(angular(p.kappa_in)) * eps_p;

    const Complex d1 = kI * delta + kappa1 / 2.0;
    const Complex d2 = kI * delta + kappa2 / 2.0;
    const Complex f1 = -kI * delta - gamma / 2.0 + g_ml * g_ml / d1;
    const Complex f2 = -kI * delta - gamma / 2.0 - g_l * g_l / d2;
    const Complex shifted = f1 + j * j / f2;
    if (std::abs(f2) < 1e-300 || std::abs(shifted) < 1e-300) {
        throw SingularMatrixError("ptsym: acoustic response diverges at delta = " +
                                  std::to_string(delta_nu) + " MHz");
    }

    SteadyFields fields;
    fields.b_ml = (kI * g_ml * probe / d1) / shifted;
    fields.b_l = kI * j * fields.b_ml / f2;
    fields.a_k = -kI * g_l * fields.b_l / d2;
    fields.a_mj_dag = (kI * g_ml * fields.b_ml + probe) / d1;
    return fields;
}

SteadyFields direct_solve_fields(const Params& p, double delta_nu, double eps_p) {
    const gaussian::DriftMatrix drift = build_pt_drift(p, Detunings::probe(delta_nu));
    Eigen::Vector4cd input = Eigen::Vector4cd::Zero();
    input(1) = std::sqrt(angular(p.kappa_in)) * eps_p;
    const Eigen::Vector4cd fields = drift.A.fullPivLu().solve(input);
    return SteadyFields{fields(0), fields(1), fields(2), fields(3)};
}

} // namespace

SteadyFields pt_steady_fields(const Params& p, double delta_nu, double eps_p) {
    p.validate();
    if (eps_p < 0.0) throw ValidationError("ptsym: probe amplitude must be non-negative");
    require_decaying(p);

    const SteadyFields closed = closed_form_fields(p, delta_nu, eps_p);
    const SteadyFields direct = direct_solve_fields(p, delta_nu, eps_p);
    const double scale = std::max({std::abs(closed.a_k), std::abs(closed.a_mj_dag),
                                   std::abs(closed.b_l), std::abs(closed.b_ml), 1e-30});
    const double mismatch = std::max({std::abs(closed.a_k - direct.a_k),
                                      std::abs(closed.a_mj_dag - direct.a_mj_dag),
                                      std::abs(closed.b_l - direct.b_l),
                                      std::abs(closed.b_ml - direct.b_ml)});
    if (mismatch > 1e-10 * scale) {
        throw Error("ptsym: closed-form and direct steady states disagree (relative " +
                    std::to_string(mismatch / scale) + ")");
    }
    return closed;
}

int count_peaks(const std::vector<double>& values, double prominence_frac) {
    const int n = static_cast<int>(values.size());
    if (n < 3) return 0;
    const double global_max = *std::max_element(values.begin(), values.end());
    if (!(global_max > 0.0)) return 0;
    const double required = prominence_frac * global_max;

    int count = 0;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1] && values[i] > values[i + 1])) continue;
        const double h = values[i];
        double left_min = h;
        for (int j = i - 1; j >= 0; --j) {
            left_min = std::min(left_min, values[j]);
            if (values[j] > h) break;
        }
        double right_min = h;
        for (int j = i + 1; j < n; ++j) {
            right_min = std::min(right_min, values[j]);
            if (values[j] > h) break;
        }
        const double prominence = h - std::max(left_min, right_min);
        if (prominence >= required) ++count;
    }
    return count;
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> grid;
    if (points <= 0) return grid;
    if (points == 1) {
        grid.push_back(lo);
        return grid;
    }
    grid.reserve(points);
    for (int i = 0; i < points; ++i) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
    }
    return grid;
}

namespace {

std::vector<double> ensure_span(std::vector<double> grid, const SupermodePair& modes,
                                double omega0, bool* extended) {
    const double offset = std::max(std::abs(modes.omega_plus.real() - omega0),
                                   std::abs(modes.omega_minus.real() - omega0));
    const double width = std::max(std::abs(modes.omega_plus.imag()),
                                  std::abs(modes.omega_minus.imag()));
    const double needed = offset + 5.0 * std::max(width, 1e-6);
    if (grid.empty()) {
        *extended = true;
        return linspace(omega0 - needed, omega0 + needed, 1201);
    }
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    if (*lo <= omega0 - needed && *hi >= omega0 + needed) return grid;
    *extended = true;
    const int points = std::max<int>(static_cast<int>(grid.size()), 801);
    return linspace(omega0 - needed, omega0 + needed, points);
}

void guard_supermode_stability(const SupermodePair& modes) {
    // omega0 is real, so Im(omega) is already Im(omega - omega0)
    const double growth = std::max(modes.omega_plus.imag(), modes.omega_minus.imag());
    if (growth > 1e-15) {
        throw InstabilityError("ptsym: supermode Im(omega - omega0) = " + std::to_string(growth) +
                               " MHz > 0; the acoustic sector is amplifying");
    }
}

Spectrum finish_spectrum(Spectrum spectrum) {
    std::vector<double> a_mj, a_k, b_l, b_ml;
    for (const auto& point : spectrum.points) {
        a_mj.push_back(point.a_mj_sq);
        a_k.push_back(point.a_k_sq);
        b_l.push_back(point.b_l_sq);
        b_ml.push_back(point.b_ml_sq);
    }
    spectrum.peaks_a_mj = count_peaks(a_mj);
    spectrum.peaks_a_k = count_peaks(a_k);
    spectrum.peaks_b_l = count_peaks(b_l);
    spectrum.peaks_b_ml = count_peaks(b_ml);
    return spectrum;
}

} // namespace

Spectrum pt_spectrum(const Params& p, std::vector<double> delta_grid_nu, double eps_p) {
    p.validate();
    require_decaying(p);
    const EffectiveRates rates = adiabatic_effective_rates(p);
    Spectrum spectrum;
    spectrum.supermodes = supermode_eigenfrequencies(rates, p.gamma_m, p.J);
    guard_supermode_stability(spectrum.supermodes);

    delta_grid_nu = ensure_span(std::move(delta_grid_nu), spectrum.supermodes, rates.omega0,
                                &spectrum.grid_extended);
    spectrum.points.reserve(delta_grid_nu.size());
    for (double delta : delta_grid_nu) {
        const SteadyFields fields = closed_form_fields(p, delta, eps_p);
        spectrum.points.push_back({delta, std::norm(fields.a_mj_dag), std::norm(fields.a_k),
                                   std::norm(fields.b_l), std::norm(fields.b_ml)});
    }
    return finish_spectrum(std::move(spectrum));
}

Spectrum pt_spectrum_adiabatic(const Params& p, std::vector<double> delta_grid_nu, double eps_p) {
    p.validate();
    const EffectiveRates rates = adiabatic_effective_rates(p);
    Spectrum spectrum;
    spectrum.supermodes = supermode_eigenfrequencies(rates, p.gamma_m, p.J);
    guard_supermode_stability(spectrum.supermodes);

    delta_grid_nu = ensure_span(std::move(delta_grid_nu), spectrum.supermodes, rates.omega0,
                                &spectrum.grid_extended);

    const double kappa1 = angular(p.kappa1);
    const double kappa2 = angular(p.kappa2);
    const double g_l = angular(p.G_l);
    const double g_ml = angular(p.G_ml);
    const double j = angular(p.J);
    const double rate_l = angular(p.gamma_m + rates.gamma_l);
    const double rate_ml = angular(p.gamma_m + rates.gamma_ml);
    const Complex probe = std::sqrt(angular(p.kappa_in)) * eps_p;

    spectrum.points.reserve(delta_grid_nu.size());
    for (double delta_nu : delta_grid_nu) {
        const double delta = angular(delta_nu);
        Eigen::Matrix2cd m;
        m << kI * delta + rate_l / 2.0, kI * j, kI * j, kI * delta + rate_ml / 2.0;
        Eigen::Vector2cd drive(0.0, -kI * g_ml * probe / (kappa1 / 2.0));
        const Eigen::Vector2cd b = m.fullPivLu().solve(drive);
        const Complex d1 = kI * delta + kappa1 / 2.0;
        const Complex d2 = kI * delta + kappa2 / 2.0;
        const Complex a_k = -kI * g_l * b(0) / d2;
        const Complex a_mj_dag = (kI * g_ml * b(1) + probe) / d1;
        spectrum.points.push_back(
            {delta_nu, std::norm(a_mj_dag), std::norm(a_k), std::norm(b(0)), std::norm(b(1))});
    }
    return finish_spectrum(std::move(spectrum));
}

} // namespace twmr::ptsym
