#include "twmr/modes.hpp"

#include <cmath>
#include <map>
#include <string>

#include "twmr/errors.hpp"

namespace twmr::modes {

void AzimuthalMode::validate() const {
    if (!(nu > 0.0)) {
        throw ValidationError("AzimuthalMode: frequency must be positive, got " + std::to_string(nu));
    }
    if (!(damping_nu > 0.0)) {
        throw ValidationError("AzimuthalMode: linewidth must be positive, got " + std::to_string(damping_nu));
    }
    if (n_th < 0.0) {
        throw ValidationError("AzimuthalMode: thermal occupancy must be non-negative");
    }
    if (kind == ModeKind::optical && n_th != 0.0) {
        throw ValidationError("AzimuthalMode: optical modes carry no thermal occupancy");
    }
}

void validate_degenerate_partners(const std::vector<AzimuthalMode>& list, double tol) {
    std::map<std::pair<int, int>, const AzimuthalMode*> seen;
    for (const auto& mode : list) {
        mode.validate();
        seen[{static_cast<int>(mode.kind), mode.m}] = &mode;
    }
    for (const auto& mode : list) {
        auto partner = seen.find({static_cast<int>(mode.kind), -mode.m});
        if (partner == seen.end()) continue;
        const AzimuthalMode& other = *partner->second;
        if (std::abs(mode.nu - other.nu) > tol || std::abs(mode.damping_nu - other.damping_nu) > tol) {
            throw ValidationError("degenerate partner rule violated for azimuthal number " +
                                  std::to_string(mode.m));
        }
    }
}

int signed_azimuthal_sum(LadderRef optical_a, LadderRef optical_b, LadderRef mech) {
    auto weight = [](LadderRef op) { return op.dagger ? -op.m : op.m; };
    return weight(optical_a) + weight(optical_b) + weight(mech);
}

bool is_term_allowed(LadderRef optical_a, LadderRef optical_b, LadderRef mech) {
    return signed_azimuthal_sum(optical_a, optical_b, mech) == 0;
}

InteractionCategory classify_interaction(const InteractionTerm& term) {
    if (!is_term_allowed(term.optical_a, term.optical_b, term.mech)) {
        return InteractionCategory::forbidden;
    }
    const bool opposite_daggers = term.optical_a.dagger != term.optical_b.dagger;
    if (opposite_daggers && term.optical_a.m == term.optical_b.m && term.mech.m == 0) {
        return InteractionCategory::dispersive;
    }
    if (opposite_daggers && term.optical_a.m != term.optical_b.m) {
        return InteractionCategory::triple_resonant;
    }
    // Allowed by the azimuthal integral but counter-rotating; dropped in the
    // rotating-wave forms, so it belongs to neither interaction family.
    return InteractionCategory::forbidden;
}

void InteractionTerm::validate() const {
    const bool allowed = is_term_allowed(optical_a, optical_b, mech);
    if (!allowed && category != InteractionCategory::forbidden) {
        throw ValidationError("InteractionTerm: nonzero signed azimuthal sum must be forbidden");
    }
    if (category == InteractionCategory::dispersive && mech.m != 0) {
        throw ValidationError("InteractionTerm: dispersive coupling requires the l = 0 mechanical mode");
    }
}

std::vector<InteractionTerm> enumerate_brillouin_triples(
    const std::vector<AzimuthalMode>& optical,
    const std::vector<AzimuthalMode>& mechanical,
    std::optional<double> freq_tol) {
    if (freq_tol && !(*freq_tol > 0.0)) {
        throw ValidationError("enumerate_brillouin_triples: freq_tol must be positive");
    }
    std::map<int, const AzimuthalMode*> phonons;
    for (const auto& mode : mechanical) {
        mode.validate();
        phonons[mode.m] = &mode;
    }

    std::vector<InteractionTerm> result;
    for (const auto& hi : optical) {
        hi.validate();
        for (const auto& lo : optical) {
            if (hi.m == lo.m) continue; // a (j, j, 0) triple is dispersive, not Brillouin
            auto phonon = phonons.find(hi.m - lo.m);
            if (phonon == phonons.end()) continue;
            const AzimuthalMode& mech = *phonon->second;
            const double mismatch = (hi.nu - lo.nu) - mech.nu;
            const double tol = freq_tol ? *freq_tol : mech.damping_nu;
            if (std::abs(mismatch) > tol) continue;
            InteractionTerm term;
            term.optical_a = {hi.m, true};
            term.optical_b = {lo.m, false};
            term.mech = {mech.m, false};
            term.category = InteractionCategory::triple_resonant;
            term.g = 0.0; // field-overlap integrals are outside this library
            result.push_back(term);
        }
    }
    return result;
}

} // namespace twmr::modes
