#include "twmr/figures.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "twmr/errors.hpp"
#include "twmr/nonreciprocity.hpp"
#include "twmr/pairgen.hpp"
#include "twmr/phonon_pt.hpp"
#include "twmr/units.hpp"

namespace twmr::figures {

namespace {

constexpr const char* kEngineVersion = "twmr 0.1.0";
constexpr const char* kUnitsNote = "all rates are nu = omega/2pi in MHz";

void stamp(io::ResultTable& table, const char* figure) {
    table.add_meta("engine", kEngineVersion);
    table.add_meta("units", kUnitsNote);
    table.add_meta("preset", figure);
}

void stamp_param(io::ResultTable& table, const char* figure, const std::string& key, double value) {
    table.add_meta("param." + key, value);
    table.add_meta("source." + key, std::string(figure) + " preset");
}

pairgen::Params fig2_base() {
    pairgen::Params p;
    p.kappa = 15.0;
    p.kappa_in = 7.5;
    p.gamma_m = 0.022;
    p.G_k = 0.3;
    p.G_mk = 0.1;
    p.eps_s = 0.1;
    return p;
}

void stamp_pairgen(io::ResultTable& table, const char* figure, const pairgen::Params& p) {
    stamp(table, figure);
    stamp_param(table, figure, "kappa", p.kappa);
    stamp_param(table, figure, "kappa_in", p.kappa_in);
    stamp_param(table, figure, "gamma_m", p.gamma_m);
    stamp_param(table, figure, "G_mk", p.G_mk);
    stamp_param(table, figure, "eps_s", p.eps_s);
}

std::vector<double> witness_series(const pairgen::Params& base, pairgen::SweepAxis axis,
                                   const std::vector<double>& grid) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (const auto& point : pairgen::sweep_nonclassicality(base, axis, grid)) {
        if (!point.witness) {
            throw InstabilityError("figure preset hit an invalid sweep point: " + point.error);
        }
        values.push_back(*point.witness);
    }
    return values;
}

io::ResultTable make_fig2b() {
    const auto grid = ptsym::linspace(-0.15, 0.15, 151);
    io::ResultTable table;
    table.columns.push_back(io::Column::real("delta_k", grid));
    pairgen::Params p = fig2_base();
    for (double n_th : {0.0, 0.1, 0.2}) {
        p.n_th = n_th;
        table.columns.push_back(io::Column::real("I_nth" + io::format_double(n_th),
                                                 witness_series(p, pairgen::SweepAxis::delta_k, grid)));
    }
    stamp_pairgen(table, "fig2b", p);
    stamp_param(table, "fig2b", "G_k", p.G_k);
    table.add_meta("param.n_th_list", "0,0.1,0.2");
    return table;
}

io::ResultTable make_fig2c() {
    const auto grid = ptsym::linspace(-0.15, 0.15, 151);
    io::ResultTable table;
    table.columns.push_back(io::Column::real("delta_k", grid));
    pairgen::Params p = fig2_base();
    p.n_th = 0.2;
    for (double g_k : {0.3, 0.4, 0.5}) {
        p.G_k = g_k;
        table.columns.push_back(io::Column::real("I_Gk" + io::format_double(g_k),
                                                 witness_series(p, pairgen::SweepAxis::delta_k, grid)));
    }
    stamp_pairgen(table, "fig2c", p);
    stamp_param(table, "fig2c", "n_th", p.n_th);
    table.add_meta("param.G_k_list", "0.3,0.4,0.5");
    return table;
}

io::ResultTable make_fig2d() {
    const auto grid = ptsym::linspace(0.1, 2.0, 191);
    pairgen::Params p = fig2_base();
    p.n_th = 0.2;
    p.delta_k = 0.0;
    io::ResultTable table;
    table.columns.push_back(io::Column::real("G_k", grid));
    table.columns.push_back(
        io::Column::real("I", witness_series(p, pairgen::SweepAxis::coupling_G_k, grid)));
    stamp_pairgen(table, "fig2d", p);
    stamp_param(table, "fig2d", "n_th", p.n_th);
    stamp_param(table, "fig2d", "delta_k", p.delta_k);
    return table;
}

nonrecip::Params fig3_base() {
    nonrecip::Params p;
    p.kappa = 15.0;
    p.gamma_m1 = 0.022;
    p.gamma_m2 = 0.0022;
    p.C_k1 = 1.0;
    p.C_mk1 = 1.0;
    p.C_k2 = 2.5;
    p.C_mk2 = 2.5;
    return p;
}

void stamp_convert(io::ResultTable& table, const char* figure, const nonrecip::Params& p) {
    stamp(table, figure);
    stamp_param(table, figure, "kappa", p.kappa);
    stamp_param(table, figure, "gamma_m1", p.gamma_m1);
    stamp_param(table, figure, "gamma_m2", p.gamma_m2);
    stamp_param(table, figure, "C_k1", p.C_k1);
    stamp_param(table, figure, "C_mk1", p.C_mk1);
    stamp_param(table, figure, "C_k2", p.C_k2);
    stamp_param(table, figure, "C_mk2", p.C_mk2);
}

io::ResultTable make_fig3b() {
    nonrecip::Params p = fig3_base();
    const auto grid = ptsym::linspace(-6.0 * p.gamma_m2, 6.0 * p.gamma_m2, 1201);
    std::vector<double> reciprocal, forward, backward;
    for (double omega : grid) {
        p.theta = 0.0;
        reciprocal.push_back(nonrecip::conversion_efficiencies(p, omega).forward);
        p.theta = 3.0 * M_PI / 4.0;
        const auto eff = nonrecip::conversion_efficiencies(p, omega);
        forward.push_back(eff.forward);
        backward.push_back(eff.backward);
    }
    io::ResultTable table;
    table.columns.push_back(io::Column::real("omega", grid));
    table.columns.push_back(io::Column::real("eff_theta0", std::move(reciprocal)));
    table.columns.push_back(io::Column::real("fwd_theta3pi4", std::move(forward)));
    table.columns.push_back(io::Column::real("bwd_theta3pi4", std::move(backward)));
    stamp_convert(table, "fig3b", p);
    table.add_meta("param.theta_list", "0,3pi/4");
    return table;
}

io::ResultTable make_fig3cd(bool with_ratio) {
    nonrecip::Params p = fig3_base();
    const double omega = -p.gamma_m2;
    const auto grid = ptsym::linspace(0.0, kTwoPi, 721);
    std::vector<double> forward, backward, ratio;
    for (double theta : grid) {
        p.theta = theta;
        const auto eff = nonrecip::conversion_efficiencies(p, omega);
        forward.push_back(eff.forward);
        backward.push_back(eff.backward);
        ratio.push_back(nonrecip::nonreciprocity_ratio(p, omega).value);
    }
    io::ResultTable table;
    table.columns.push_back(io::Column::real("theta", grid));
    if (with_ratio) {
        table.columns.push_back(io::Column::real("eta", std::move(ratio)));
    } else {
        table.columns.push_back(io::Column::real("forward", std::move(forward)));
        table.columns.push_back(io::Column::real("backward", std::move(backward)));
    }
    const char* figure = with_ratio ? "fig3d" : "fig3c";
    stamp_convert(table, figure, p);
    stamp_param(table, figure, "omega", omega);
    return table;
}

ptsym::Params fig45_base() {
    ptsym::Params p;
    p.omega_ml = 42.3;
    p.gamma_m = 0.004;
    p.G_l = 0.14;
    p.G_ml = 0.14;
    p.J = 0.016;
    p.kappa1 = 3.5;
    p.kappa2 = 3.5;
    p.kappa_in = 1.75;
    return p;
}

void stamp_ptsym(io::ResultTable& table, const char* figure, const ptsym::Params& p) {
    stamp(table, figure);
    stamp_param(table, figure, "omega_ml", p.omega_ml);
    stamp_param(table, figure, "gamma_m", p.gamma_m);
    stamp_param(table, figure, "G_ml", p.G_ml);
    stamp_param(table, figure, "J", p.J);
    stamp_param(table, figure, "kappa1", p.kappa1);
    stamp_param(table, figure, "kappa2", p.kappa2);
    table.add_meta("param.kappa_in", p.kappa_in);
    table.add_meta("source.kappa_in", "kappa1/2 convention");
}

io::ResultTable make_fig4bcd() {
    ptsym::Params p = fig45_base();
    const auto grid = ptsym::linspace(0.0, 0.3, 301);
    std::vector<double> j_pt, re_plus, re_minus, im_plus, im_minus;
    for (double g_l : grid) {
        p.G_l = g_l;
        const auto rates = ptsym::adiabatic_effective_rates(p);
        j_pt.push_back(ptsym::pt_threshold(rates, p.gamma_m).J_PT);
        const auto modes = ptsym::supermode_eigenfrequencies(rates, p.gamma_m, p.J);
        re_plus.push_back(modes.omega_plus.real());
        re_minus.push_back(modes.omega_minus.real());
        im_plus.push_back(modes.omega_plus.imag());
        im_minus.push_back(modes.omega_minus.imag());
    }
    io::ResultTable table;
    table.columns.push_back(io::Column::real("G_l", grid));
    table.columns.push_back(io::Column::real("J_PT", std::move(j_pt)));
    table.columns.push_back(io::Column::real("re_omega_plus", std::move(re_plus)));
    table.columns.push_back(io::Column::real("re_omega_minus", std::move(re_minus)));
    table.columns.push_back(io::Column::real("im_omega_plus", std::move(im_plus)));
    table.columns.push_back(io::Column::real("im_omega_minus", std::move(im_minus)));
    stamp_ptsym(table, "fig4bcd", p);
    // balanced gain/loss marker: gamma_l = -gamma_ml - 2 gamma_m, solved for G_l
    const double gamma_ml = -4.0 * p.G_ml * p.G_ml / p.kappa1;
    const double balanced_gamma_l = -gamma_ml - 2.0 * p.gamma_m;
    if (balanced_gamma_l > 0.0) {
        table.add_meta("derived.balanced_G_l",
                       std::sqrt(balanced_gamma_l * p.kappa2 / 4.0));
    }
    return table;
}

io::ResultTable make_fig5() {
    ptsym::Params p = fig45_base();
    const double eps_p = 1.0;
    const auto grid = ptsym::linspace(-0.05, 0.05, 2001);

    io::ResultTable table;
    table.columns.push_back(io::Column::real("delta", grid));
    for (double g_l : {0.14, 0.2}) {
        p.G_l = g_l;
        const auto spectrum = ptsym::pt_spectrum(p, grid, eps_p);
        const std::string suffix = "_Gl" + io::format_double(g_l);
        std::vector<double> a_mj, a_k, b_l, b_ml;
        for (const auto& point : spectrum.points) {
            a_mj.push_back(point.a_mj_sq);
            a_k.push_back(point.a_k_sq);
            b_l.push_back(point.b_l_sq);
            b_ml.push_back(point.b_ml_sq);
        }
        table.columns.push_back(io::Column::real("a_mj_sq" + suffix, std::move(a_mj)));
        table.columns.push_back(io::Column::real("a_k_sq" + suffix, std::move(a_k)));
        table.columns.push_back(io::Column::real("b_l_sq" + suffix, std::move(b_l)));
        table.columns.push_back(io::Column::real("b_ml_sq" + suffix, std::move(b_ml)));
        table.add_meta("peaks.a_mj" + suffix, static_cast<double>(spectrum.peaks_a_mj));
        table.add_meta("peaks.a_k" + suffix, static_cast<double>(spectrum.peaks_a_k));
    }
    stamp_ptsym(table, "fig5", p);
    table.add_meta("param.G_l_list", "0.14,0.2");
    table.add_meta("param.eps_p", eps_p);
    return table;
}

} // namespace

std::optional<FigureId> parse_figure_id(std::string_view name) {
    if (name == "fig2b") return FigureId::fig2b;
    if (name == "fig2c") return FigureId::fig2c;
    if (name == "fig2d") return FigureId::fig2d;
    if (name == "fig3b") return FigureId::fig3b;
    if (name == "fig3c") return FigureId::fig3c;
    if (name == "fig3d") return FigureId::fig3d;
    if (name == "fig4bcd") return FigureId::fig4bcd;
    if (name == "fig5") return FigureId::fig5;
    return std::nullopt;
}

const char* figure_name(FigureId id) {
    switch (id) {
        case FigureId::fig2b: return "fig2b";
        case FigureId::fig2c: return "fig2c";
        case FigureId::fig2d: return "fig2d";
        case FigureId::fig3b: return "fig3b";
        case FigureId::fig3c: return "fig3c";
        case FigureId::fig3d: return "fig3d";
        case FigureId::fig4bcd: return "fig4bcd";
        case FigureId::fig5: return "fig5";
    }
    return "unknown";
}

io::ResultTable replicate(FigureId id) {
    switch (id) {
        case FigureId::fig2b: return make_fig2b();
        case FigureId::fig2c: return make_fig2c();
        case FigureId::fig2d: return make_fig2d();
        case FigureId::fig3b: return make_fig3b();
        case FigureId::fig3c: return make_fig3cd(false);
        case FigureId::fig3d: return make_fig3cd(true);
        case FigureId::fig4bcd: return make_fig4bcd();
        case FigureId::fig5: return make_fig5();
    }
    throw ValidationError("replicate: unknown figure id");
}

} // namespace twmr::figures
