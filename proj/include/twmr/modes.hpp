#pragma once

#include <optional>
#include <vector>

namespace twmr::modes {

enum class ModeKind { optical, mechanical };

// One traveling-wave resonator mode. The azimuthal number m is signed:
// positive for clockwise, negative for counter-clockwise propagation.
struct AzimuthalMode {
    ModeKind kind = ModeKind::optical;
    int m = 0;
    double nu = 0.0;         // mode frequency, MHz
    double damping_nu = 0.0; // linewidth (kappa or gamma_m), MHz
    double n_th = 0.0;       // thermal occupancy, mechanical modes only

    void validate() const;
};

// Checks that every mode with azimuthal number m has its -m partner at the
// same frequency and linewidth, as rotational symmetry demands.
void validate_degenerate_partners(const std::vector<AzimuthalMode>& list, double tol = 1e-9);

// A single ladder operator a_m or a_m^dag acting on the mode with
// azimuthal number m.
struct LadderRef {
    int m = 0;
    bool dagger = false;
};

enum class InteractionCategory { dispersive, triple_resonant, forbidden };

// One cubic interaction term: two optical ladder operators and one
// mechanical ladder operator.
struct InteractionTerm {
    LadderRef optical_a;
    LadderRef optical_b;
    LadderRef mech;
    InteractionCategory category = InteractionCategory::forbidden;
    double g = 0.0; // coupling strength, MHz

    void validate() const;
};

// Angular-momentum selection rule for the azimuthal integral: the signed
// sum of azimuthal numbers must vanish. An annihilation operator on mode m
// contributes +m, a creation operator contributes -m.
bool is_term_allowed(LadderRef optical_a, LadderRef optical_b, LadderRef mech);

int signed_azimuthal_sum(LadderRef optical_a, LadderRef optical_b, LadderRef mech);

// Sorts an interaction term into the dispersive a_k^dag a_k (b_0 + b_0^dag)
// family, the triple-resonant a_j^dag a_k b_{j-k} family (or its Hermitian
// conjugate), or forbidden. Counter-rotating terms that pass the selection
// rule but match neither rotating-wave form are reported as forbidden.
InteractionCategory classify_interaction(const InteractionTerm& term);

// All triples (j, k, j-k) over the given optical and mechanical mode lists
// that satisfy both momentum matching (a mechanical mode with l = j-k
// exists) and energy matching |(nu_cj - nu_ck) - nu_ml| <= freq_tol.
// When freq_tol is not supplied, each candidate is matched against the
// linewidth of its own phonon mode.
std::vector<InteractionTerm> enumerate_brillouin_triples(
    const std::vector<AzimuthalMode>& optical,
    const std::vector<AzimuthalMode>& mechanical,
    std::optional<double> freq_tol = std::nullopt);

} // namespace twmr::modes
