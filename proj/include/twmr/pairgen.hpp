#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twmr/fock.hpp"
#include "twmr/moments.hpp"

namespace twmr::pairgen {

// Two-drive, three-mode photon-pair source: CW signal mode a_k cooled via
// the red-detuned drive (beamsplitter G_k to the breathing phonon b_0),
// CCW mode a_mk amplified via the blue-detuned drive (two-mode squeeze
// G_mk), weak coherent signal on a_k. All rates in MHz.
struct Params {
    double kappa = 15.0;
    double kappa_in = 7.5;
    double gamma_m = 0.022;
    double n_th = 0.0;
    double G_k = 0.3;
    double G_mk = 0.1;
    double eps_s = 0.1;
    double delta_k = 0.0; // signal-cavity detuning omega_s - omega_ck, MHz

    void validate() const;
};

// Mode order of the returned model and of every moment index below:
// 0 = a_k, 1 = b_0, 2 = a_mk.
inline constexpr int kModeCw = 0;
inline constexpr int kModePhonon = 1;
inline constexpr int kModeCcw = 2;

// Time-independent three-mode model in the frame co-rotating with the
// signal: detunings (-delta_k, -delta_k, +delta_k) on (a_k, b_0, a_mk),
// beamsplitter G_k on (a_k, b_0), two-mode squeeze G_mk on (a_mk, b_0),
// coherent drive eps_s on a_k.
gaussian::LinearModel build_model(const Params& p);

// Nonclassicality witness
//   I = sqrt(<a_k^dag2 a_k^2><a_mk^dag2 a_mk^2>) / <n_k n_mk> - 1.
// Zero for coherent product states, negative for nonclassical CW/CCW
// correlations, bounded below by -1. Throws UndefinedWitnessError when the
// denominator vanishes.
double nonclassicality(const gaussian::MomentSet& m, int cw = kModeCw, int ccw = kModeCcw);
double nonclassicality(const fock::DensityMatrix& rho, int cw = kModeCw, int ccw = kModeCcw);

// Gaussian path: exact moments of the linearized model.
double witness_gaussian(const Params& p);

struct FockOptions {
    // truncation (a_k, b_0, a_mk): the drive-displaced phonon needs most of
    // the headroom, the optical occupations stay below 1e-3
    std::vector<int> dims{4, 8, 4};
    int max_escalations = 2;
    double convergence_tol = 1e-3; // relative change allowed under dims+1
};

struct FockMoments {
    std::complex<double> mean_cw;     // <a_k>
    std::complex<double> mean_phonon; // <b_0>
    std::complex<double> mean_ccw;    // <a_mk>
    double n_cw = 0.0;                // <a_k^dag a_k>
    double n_phonon = 0.0;            // <b_0^dag b_0>
    double n_ccw = 0.0;               // <a_mk^dag a_mk>
    std::complex<double> anom_cw_ccw;     // <a_k a_mk>, the pair correlation
    std::complex<double> anom_phonon_ccw; // <b_0 a_mk>
    double quad_cw = 0.0;             // <a_k^dag2 a_k^2>
    double quad_ccw = 0.0;            // <a_mk^dag2 a_mk^2>
    double cross = 0.0;               // <n_k n_mk>
    double witness = 0.0;
    std::vector<int> dims_used;
    double max_rel_change = 0.0; // across the final dims -> dims+1 step
};

// One steady-state solve at fixed truncation, no escalation.
FockMoments fock_moments(const Params& p, const std::vector<int>& dims);

// Truncated-Fock path with automatic convergence escalation: results are
// accepted once raising every dimension by one moves no reported moment by
// more than convergence_tol relative. Throws NonConvergenceError otherwise.
FockMoments witness_fock(const Params& p, const FockOptions& options = {});

enum class SweepAxis { delta_k, coupling_G_k };
enum class Engine { gaussian, fock };

struct SweepPoint {
    double axis_value = 0.0;
    std::optional<double> witness;
    std::optional<double> fock_witness; // filled at spot-check points
    std::string error;                  // non-empty when the point failed
};

struct SweepOptions {
    Engine engine = Engine::gaussian;
    int fock_spot_checks = 0;
    FockOptions fock{};
};

// Evaluates the witness across the grid. Unstable or invalid points are
// reported in-place and do not abort the sweep.
std::vector<SweepPoint> sweep_nonclassicality(const Params& base, SweepAxis axis,
                                              std::span<const double> grid,
                                              const SweepOptions& options = {});

} // namespace twmr::pairgen
