#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twmr/errors.hpp"
#include "twmr/modes.hpp"

using namespace twmr;
using namespace twmr::modes;

namespace {

InteractionTerm make_term(LadderRef a, LadderRef b, LadderRef m) {
    InteractionTerm t;
    t.optical_a = a;
    t.optical_b = b;
    t.mech = m;
    return t;
}

AzimuthalMode optical_mode(int m, double nu, double kappa = 15.0) {
    return {ModeKind::optical, m, nu, kappa, 0.0};
}

AzimuthalMode mech_mode(int m, double nu, double gamma = 0.022, double n_th = 0.0) {
    return {ModeKind::mechanical, m, nu, gamma, n_th};
}

} // namespace

TEST_CASE("selection rule on example terms") {
    // a_12^dag a_7 b_5: a pump photon splits into a signal photon and a phonon
    CHECK(is_term_allowed({12, true}, {7, false}, {5, false}));
    // a_k^dag a_k b_0 for any k
    for (int k : {-9, -1, 0, 3, 21}) {
        CHECK(is_term_allowed({k, true}, {k, false}, {0, false}));
    }
    // signed sum -5 + 3 + 1 = -1
    CHECK_FALSE(is_term_allowed({5, true}, {3, false}, {1, false}));
}

TEST_CASE("selection rule symmetry properties over |m| <= 20") {
    const int range = 20;
    for (int j = -range; j <= range; ++j)
        for (int k = -range; k <= range; ++k)
            for (int l = -range; l <= range; ++l)
                for (int mask = 0; mask < 8; ++mask) {
                    LadderRef a{j, bool(mask & 1)}, b{k, bool(mask & 2)}, m{l, bool(mask & 4)};
                    const bool allowed = is_term_allowed(a, b, m);
                    // CW <-> CCW mirror: flip all azimuthal numbers
                    CHECK_EQ(allowed, is_term_allowed({-j, a.dagger}, {-k, b.dagger}, {-l, m.dagger}));
                    // Hermitian conjugate: flip all dagger flags
                    CHECK_EQ(allowed, is_term_allowed({j, !a.dagger}, {k, !b.dagger}, {l, !m.dagger}));
                }
}

TEST_CASE("classification of the two rotating-wave families") {
    // a_k^dag a_k b_0 -> dispersive
    CHECK_EQ(classify_interaction(make_term({4, true}, {4, false}, {0, false})),
             InteractionCategory::dispersive);
    CHECK_EQ(classify_interaction(make_term({4, true}, {4, false}, {0, true})),
             InteractionCategory::dispersive);
    // a_j^dag a_k b_{j-k}, j != k -> triple resonant
    CHECK_EQ(classify_interaction(make_term({12, true}, {7, false}, {5, false})),
             InteractionCategory::triple_resonant);
    // Hermitian conjugate form
    CHECK_EQ(classify_interaction(make_term({12, false}, {7, true}, {5, true})),
             InteractionCategory::triple_resonant);
    // a_j^dag a_k b_{j+k} violates the selection rule for k != 0
    CHECK_EQ(classify_interaction(make_term({5, true}, {3, false}, {8, false})),
             InteractionCategory::forbidden);
    // allowed but counter-rotating: a_0^dag a_0^dag b_0
    CHECK_EQ(classify_interaction(make_term({0, true}, {0, true}, {0, false})),
             InteractionCategory::forbidden);
}

TEST_CASE("classification properties over |m| <= 20") {
    const int range = 20;
    int dispersive_count = 0, triple_count = 0;
    for (int j = -range; j <= range; ++j)
        for (int k = -range; k <= range; ++k)
            for (int l = -range; l <= range; ++l)
                for (int mask = 0; mask < 8; ++mask) {
                    InteractionTerm t = make_term({j, bool(mask & 1)}, {k, bool(mask & 2)}, {l, bool(mask & 4)});
                    const auto cat = classify_interaction(t);
                    if (cat == InteractionCategory::dispersive) {
                        ++dispersive_count;
                        REQUIRE_EQ(l, 0);
                        REQUIRE_EQ(j, k);
                    }
                    if (cat == InteractionCategory::triple_resonant) {
                        ++triple_count;
                        // phonon azimuthal number matches the optical transfer
                        const int creation_m = t.optical_a.dagger ? j : k;
                        const int annihilation_m = t.optical_a.dagger ? k : j;
                        const int phonon_m = t.mech.dagger ? -l : l;
                        REQUIRE_EQ(phonon_m, creation_m - annihilation_m);
                        REQUIRE_NE(j, k);
                    }
                    if (cat != InteractionCategory::forbidden) {
                        REQUIRE(is_term_allowed(t.optical_a, t.optical_b, t.mech));
                    }
                    // mirror symmetry of the full classification
                    InteractionTerm mirrored = make_term({-j, t.optical_a.dagger},
                                                         {-k, t.optical_b.dagger},
                                                         {-l, t.mech.dagger});
                    REQUIRE_EQ(classify_interaction(mirrored), cat);
                    // Hermitian conjugation preserves the category
                    InteractionTerm conj = make_term({j, !t.optical_a.dagger},
                                                     {k, !t.optical_b.dagger},
                                                     {l, !t.mech.dagger});
                    REQUIRE_EQ(classify_interaction(conj), cat);
                }
    CHECK_GT(dispersive_count, 0);
    CHECK_GT(triple_count, 0);
}

TEST_CASE("brillouin triple enumeration") {
    SUBCASE("matched pair and phonon give one triple per direction") {
        std::vector<AzimuthalMode> optical = {optical_mode(12, 193000.0 + 42.3), optical_mode(7, 193000.0)};
        std::vector<AzimuthalMode> mechanical = {mech_mode(5, 42.3)};
        auto triples = enumerate_brillouin_triples(optical, mechanical, 0.1);
        REQUIRE_EQ(triples.size(), 1);
        CHECK_EQ(triples[0].optical_a.m, 12);
        CHECK_EQ(triples[0].optical_b.m, 7);
        CHECK_EQ(triples[0].mech.m, 5);
        CHECK_EQ(triples[0].category, InteractionCategory::triple_resonant);
        triples[0].validate();
    }
    SUBCASE("single optical mode yields nothing") {
        auto triples = enumerate_brillouin_triples({optical_mode(12, 193000.0)}, {mech_mode(5, 42.3)}, 0.1);
        CHECK(triples.empty());
    }
    SUBCASE("energy mismatch beyond tolerance yields nothing") {
        std::vector<AzimuthalMode> optical = {optical_mode(12, 193000.0 + 47.3), optical_mode(7, 193000.0)};
        auto triples = enumerate_brillouin_triples(optical, {mech_mode(5, 42.3)}, 1.0);
        CHECK(triples.empty());
    }
    SUBCASE("empty inputs are fine") {
        CHECK(enumerate_brillouin_triples({}, {}, 0.1).empty());
    }
    SUBCASE("default tolerance is the phonon linewidth") {
        std::vector<AzimuthalMode> optical = {optical_mode(12, 193000.0 + 42.31), optical_mode(7, 193000.0)};
        // mismatch 0.01 MHz: inside a 0.022 MHz linewidth, outside a 0.001 MHz one
        CHECK_EQ(enumerate_brillouin_triples(optical, {mech_mode(5, 42.3, 0.022)}).size(), 1);
        CHECK(enumerate_brillouin_triples(optical, {mech_mode(5, 42.3, 0.001)}).empty());
    }
}

TEST_CASE("mode validation") {
    CHECK_THROWS_AS(optical_mode(1, -5.0).validate(), ValidationError);
    CHECK_THROWS_AS(mech_mode(0, 42.3, -1.0).validate(), ValidationError);
    CHECK_THROWS_AS(mech_mode(0, 42.3, 0.022, -0.5).validate(), ValidationError);
    CHECK_NOTHROW(mech_mode(0, 42.3, 0.022, 0.2).validate());

    SUBCASE("degenerate partner rule") {
        std::vector<AzimuthalMode> good = {optical_mode(12, 193000.0), optical_mode(-12, 193000.0)};
        CHECK_NOTHROW(validate_degenerate_partners(good));
        std::vector<AzimuthalMode> bad = {optical_mode(12, 193000.0), optical_mode(-12, 193001.0)};
        CHECK_THROWS_AS(validate_degenerate_partners(bad), ValidationError);
    }
}
