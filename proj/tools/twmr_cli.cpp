// twmr: traveling-wave microresonator optomechanics toolkit, command line front end.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twmr/config.hpp"
#include "twmr/errors.hpp"
#include "twmr/figures.hpp"
#include "twmr/modes.hpp"
#include "twmr/nonreciprocity.hpp"
#include "twmr/pairgen.hpp"
#include "twmr/phonon_pt.hpp"
#include "twmr/result_table.hpp"
#include "twmr/units.hpp"

namespace {

using twmr::io::Config;
using twmr::io::ResultTable;

constexpr const char* kEngineVersion = "twmr 0.1.0";
constexpr const char* kUnitsNote = "all rates are nu = omega/2pi in MHz";

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output = "-";
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key = value run configuration file");
    cmd->add_option("--set", args.overrides, "override a config key (repeatable)")
        ->type_name("KEY=VALUE");
    cmd->add_option("--output", args.output, "output path, '-' for stdout");
    cmd->add_option("--format", args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

Config resolve_config(const CommonArgs& args, const std::string& device) {
    Config config;
    if (!args.config_path.empty()) config = twmr::io::load_config(args.config_path);
    twmr::io::apply_overrides(config, args.overrides);
    const auto declared = config.get("device");
    if (declared && *declared != device) {
        throw twmr::ValidationError("config is for device '" + *declared +
                                    "' but the '" + device + "' subcommand was invoked");
    }
    return config;
}

void stamp_common(ResultTable& table) {
    table.add_meta("engine", kEngineVersion);
    table.add_meta("units", kUnitsNote);
}

void emit_table(const ResultTable& table, const CommonArgs& args) {
    const auto format = args.format == "json" ? twmr::io::Format::json : twmr::io::Format::csv;
    twmr::io::emit(table, format, args.output);
}

std::vector<double> sweep_grid(const Config& config, double fallback_lo, double fallback_hi,
                               int fallback_points) {
    if (const auto listed = config.get("sweep.grid")) {
        std::vector<double> grid;
        std::istringstream stream(*listed);
        std::string item;
        while (std::getline(stream, item, ',')) {
            if (item.empty()) continue;
            try {
                std::size_t used = 0;
                grid.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw twmr::ValidationError("sweep.grid entry '" + item + "' is not a number");
            }
        }
        return grid;
    }
    const double lo = config.get_double("sweep.start", fallback_lo);
    const double hi = config.get_double("sweep.stop", fallback_hi);
    const int points = config.get_int("sweep.points", fallback_points);
    if (points < 0) throw twmr::ValidationError("sweep.points must be non-negative");
    return twmr::ptsym::linspace(lo, hi, points);
}

// ---------------------------------------------------------------- pairgen

twmr::pairgen::Params pairgen_params(const Config& config) {
    twmr::pairgen::Params p;
    p.kappa = config.get_double("kappa", p.kappa);
    p.kappa_in = config.get_double("kappa_in", p.kappa / 2.0);
    p.gamma_m = config.get_double("gamma_m", p.gamma_m);
    p.n_th = config.get_double("n_th", p.n_th);
    p.G_k = config.get_double("G_k", p.G_k);
    p.G_mk = config.get_double("G_mk", p.G_mk);
    p.eps_s = config.get_double("eps_s", p.eps_s);
    p.delta_k = config.get_double("delta_k", p.delta_k);
    p.validate();
    return p;
}

int run_pairgen(const CommonArgs& args, const std::string& engine_flag) {
    const Config config = resolve_config(args, "pairgen");
    const twmr::pairgen::Params p = pairgen_params(config);

    twmr::pairgen::SweepOptions options;
    const std::string engine =
        engine_flag.empty() ? config.get_string("engine", "gaussian") : engine_flag;
    if (engine == "fock") {
        options.engine = twmr::pairgen::Engine::fock;
    } else if (engine != "gaussian") {
        throw twmr::ValidationError("engine must be 'gaussian' or 'fock'");
    }
    options.fock_spot_checks = config.get_int("fock.spot_checks", 0);

    const std::string axis_name = config.get_string("sweep.axis", "delta_k");
    twmr::pairgen::SweepAxis axis;
    std::vector<double> grid;
    if (axis_name == "delta_k") {
        axis = twmr::pairgen::SweepAxis::delta_k;
        grid = sweep_grid(config, -0.15, 0.15, 151);
    } else if (axis_name == "G_k") {
        axis = twmr::pairgen::SweepAxis::coupling_G_k;
        grid = sweep_grid(config, 0.1, 2.0, 191);
    } else {
        throw twmr::ValidationError("pairgen sweep.axis must be 'delta_k' or 'G_k'");
    }

    const auto points = twmr::pairgen::sweep_nonclassicality(p, axis, grid, options);
    int failures = 0;
    std::vector<double> axis_values, witness;
    std::vector<double> spot_axis, spot_witness;
    for (const auto& point : points) {
        if (!point.witness) {
            ++failures;
            std::cerr << "twmr: point " << axis_name << " = " << point.axis_value
                      << " failed: " << point.error << "\n";
            continue;
        }
        axis_values.push_back(point.axis_value);
        witness.push_back(*point.witness);
        if (point.fock_witness) {
            spot_axis.push_back(point.axis_value);
            spot_witness.push_back(*point.fock_witness);
        }
    }

    ResultTable table;
    table.columns.push_back(twmr::io::Column::real(axis_name, std::move(axis_values)));
    table.columns.push_back(twmr::io::Column::real("I", std::move(witness)));
    stamp_common(table);
    table.add_meta("device", "pairgen");
    table.add_meta("engine.moments", engine);
    table.add_meta("param.kappa", p.kappa);
    table.add_meta("param.kappa_in", p.kappa_in);
    table.add_meta("param.gamma_m", p.gamma_m);
    table.add_meta("param.n_th", p.n_th);
    table.add_meta("param.G_k", p.G_k);
    table.add_meta("param.G_mk", p.G_mk);
    table.add_meta("param.eps_s", p.eps_s);
    table.add_meta("param.delta_k", p.delta_k);
    table.add_meta("sweep.axis", axis_name);
    if (!spot_axis.empty()) {
        std::string list;
        for (std::size_t i = 0; i < spot_axis.size(); ++i) {
            if (i) list += ",";
            list += twmr::io::format_double(spot_axis[i]) + ":" +
                    twmr::io::format_double(spot_witness[i]);
        }
        table.add_meta("fock_spot_checks", list);
    }
    emit_table(table, args);
    if (failures == static_cast<int>(points.size()) && !points.empty()) {
        throw twmr::InstabilityError("every sweep point failed");
    }
    return 0;
}

// ---------------------------------------------------------------- convert

twmr::nonrecip::Params convert_params(const Config& config) {
    twmr::nonrecip::Params p;
    p.kappa = config.get_double("kappa", p.kappa);
    p.gamma_m1 = config.get_double("gamma_m1", p.gamma_m1);
    p.gamma_m2 = config.get_double("gamma_m2", p.gamma_m2);
    p.C_k1 = config.get_double("C_k1", p.C_k1);
    p.C_mk1 = config.get_double("C_mk1", p.C_mk1);
    p.C_k2 = config.get_double("C_k2", p.C_k2);
    p.C_mk2 = config.get_double("C_mk2", p.C_mk2);
    p.theta = config.get_double("theta", p.theta);
    p.validate();
    return p;
}

int run_convert(const CommonArgs& args) {
    const Config config = resolve_config(args, "convert");
    twmr::nonrecip::Params p = convert_params(config);

    const std::string axis_name = config.get_string("sweep.axis", "omega");
    std::vector<double> grid;
    if (axis_name == "omega") {
        grid = sweep_grid(config, -6.0 * p.gamma_m2, 6.0 * p.gamma_m2, 1201);
    } else if (axis_name == "theta") {
        grid = sweep_grid(config, 0.0, twmr::kTwoPi, 721);
    } else {
        throw twmr::ValidationError("convert sweep.axis must be 'omega' or 'theta'");
    }
    const double fixed_omega = config.get_double("omega", -p.gamma_m2);

    std::vector<double> forward, backward, eta;
    for (double value : grid) {
        double omega = fixed_omega;
        if (axis_name == "omega") {
            omega = value;
        } else {
            p.theta = value;
        }
        const auto eff = twmr::nonrecip::conversion_efficiencies(p, omega);
        forward.push_back(eff.forward);
        backward.push_back(eff.backward);
        const auto ratio = twmr::nonrecip::nonreciprocity_ratio(p, omega);
        eta.push_back(ratio.value);
    }

    ResultTable table;
    table.columns.push_back(twmr::io::Column::real(axis_name, grid));
    table.columns.push_back(twmr::io::Column::real("fwd_eff", std::move(forward)));
    table.columns.push_back(twmr::io::Column::real("bwd_eff", std::move(backward)));
    table.columns.push_back(twmr::io::Column::real("eta", std::move(eta)));
    stamp_common(table);
    table.add_meta("device", "convert");
    table.add_meta("param.kappa", p.kappa);
    table.add_meta("param.gamma_m1", p.gamma_m1);
    table.add_meta("param.gamma_m2", p.gamma_m2);
    table.add_meta("param.C_k1", p.C_k1);
    table.add_meta("param.C_mk1", p.C_mk1);
    table.add_meta("param.C_k2", p.C_k2);
    table.add_meta("param.C_mk2", p.C_mk2);
    table.add_meta("param.theta", p.theta);
    if (axis_name == "theta") table.add_meta("param.omega", fixed_omega);
    table.add_meta("sweep.axis", axis_name);
    emit_table(table, args);
    return 0;
}

// ---------------------------------------------------------------- ptsym

twmr::ptsym::Params ptsym_params(const Config& config) {
    twmr::ptsym::Params p;
    p.omega_ml = config.get_double("omega_ml", p.omega_ml);
    p.gamma_m = config.get_double("gamma_m", p.gamma_m);
    p.G_l = config.get_double("G_l", p.G_l);
    p.G_ml = config.get_double("G_ml", p.G_ml);
    p.J = config.get_double("J", p.J);
    p.kappa1 = config.get_double("kappa1", p.kappa1);
    p.kappa2 = config.get_double("kappa2", p.kappa2);
    p.kappa_in = config.get_double("kappa_in", p.kappa1 / 2.0);
    p.validate();
    return p;
}

int run_ptsym(const CommonArgs& args) {
    const Config config = resolve_config(args, "ptsym");
    const twmr::ptsym::Params p = ptsym_params(config);
    const double eps_p = config.get_double("eps_p", 1.0);
    const auto grid = sweep_grid(config, -0.05, 0.05, 2001);
    const bool adiabatic = config.get_int("adiabatic", 0) != 0;

    const auto spectrum = adiabatic ? twmr::ptsym::pt_spectrum_adiabatic(p, grid, eps_p)
                                    : twmr::ptsym::pt_spectrum(p, grid, eps_p);

    std::vector<double> delta, a_mj, a_k, b_l, b_ml;
    for (const auto& point : spectrum.points) {
        delta.push_back(point.delta_nu);
        a_mj.push_back(point.a_mj_sq);
        a_k.push_back(point.a_k_sq);
        b_l.push_back(point.b_l_sq);
        b_ml.push_back(point.b_ml_sq);
    }
    ResultTable table;
    table.columns.push_back(twmr::io::Column::real("delta", std::move(delta)));
    table.columns.push_back(twmr::io::Column::real("a_mj_sq", std::move(a_mj)));
    table.columns.push_back(twmr::io::Column::real("a_k_sq", std::move(a_k)));
    table.columns.push_back(twmr::io::Column::real("b_l_sq", std::move(b_l)));
    table.columns.push_back(twmr::io::Column::real("b_ml_sq", std::move(b_ml)));
    stamp_common(table);
    table.add_meta("device", "ptsym");
    table.add_meta("model", adiabatic ? "adiabatic-2mode" : "full-4mode");
    table.add_meta("param.omega_ml", p.omega_ml);
    table.add_meta("param.gamma_m", p.gamma_m);
    table.add_meta("param.G_l", p.G_l);
    table.add_meta("param.G_ml", p.G_ml);
    table.add_meta("param.J", p.J);
    table.add_meta("param.kappa1", p.kappa1);
    table.add_meta("param.kappa2", p.kappa2);
    table.add_meta("param.kappa_in", p.kappa_in);
    table.add_meta("param.eps_p", eps_p);

    const auto rates = twmr::ptsym::adiabatic_effective_rates(p);
    const auto threshold = twmr::ptsym::pt_threshold(rates, p.gamma_m);
    table.add_meta("derived.gamma_l", rates.gamma_l);
    table.add_meta("derived.gamma_ml", rates.gamma_ml);
    table.add_meta("derived.J_PT", threshold.J_PT);
    const char* regime = "exceptional";
    if (spectrum.supermodes.regime == twmr::ptsym::Regime::unbroken) regime = "unbroken";
    if (spectrum.supermodes.regime == twmr::ptsym::Regime::broken) regime = "broken";
    table.add_meta("derived.regime", regime);
    table.add_meta("peaks.a_mj", static_cast<double>(spectrum.peaks_a_mj));
    table.add_meta("peaks.a_k", static_cast<double>(spectrum.peaks_a_k));
    table.add_meta("grid_extended", spectrum.grid_extended ? "yes" : "no");
    emit_table(table, args);
    return 0;
}

// ---------------------------------------------------------------- modes

twmr::modes::AzimuthalMode parse_mode(const std::string& text, twmr::modes::ModeKind kind) {
    std::istringstream stream(text);
    twmr::modes::AzimuthalMode mode;
    mode.kind = kind;
    if (!(stream >> mode.m >> mode.nu >> mode.damping_nu)) {
        throw twmr::ValidationError("mode entry must be 'm nu damping [n_th]', got '" + text + "'");
    }
    stream >> mode.n_th;
    mode.validate();
    return mode;
}

int run_modes(const CommonArgs& args) {
    const Config config = resolve_config(args, "modes");
    std::vector<twmr::modes::AzimuthalMode> optical, mechanical;
    for (const auto& entry : config.get_all("optical")) {
        optical.push_back(parse_mode(entry, twmr::modes::ModeKind::optical));
    }
    for (const auto& entry : config.get_all("mechanical")) {
        mechanical.push_back(parse_mode(entry, twmr::modes::ModeKind::mechanical));
    }
    twmr::modes::validate_degenerate_partners(optical);
    twmr::modes::validate_degenerate_partners(mechanical);

    std::optional<double> tol;
    if (config.has("freq_tol")) tol = config.require_double("freq_tol");
    const auto triples = twmr::modes::enumerate_brillouin_triples(optical, mechanical, tol);

    std::vector<double> j_col, k_col, l_col, mismatch;
    for (const auto& triple : triples) {
        j_col.push_back(triple.optical_a.m);
        k_col.push_back(triple.optical_b.m);
        l_col.push_back(triple.mech.m);
        double nu_j = 0.0, nu_k = 0.0, nu_l = 0.0;
        for (const auto& m : optical) {
            if (m.m == triple.optical_a.m) nu_j = m.nu;
            if (m.m == triple.optical_b.m) nu_k = m.nu;
        }
        for (const auto& m : mechanical) {
            if (m.m == triple.mech.m) nu_l = m.nu;
        }
        mismatch.push_back((nu_j - nu_k) - nu_l);
    }
    ResultTable table;
    table.columns.push_back(twmr::io::Column::real("j", std::move(j_col)));
    table.columns.push_back(twmr::io::Column::real("k", std::move(k_col)));
    table.columns.push_back(twmr::io::Column::real("l", std::move(l_col)));
    table.columns.push_back(twmr::io::Column::real("mismatch", std::move(mismatch)));
    stamp_common(table);
    table.add_meta("device", "modes");
    table.add_meta("category", "triple_resonant");
    table.add_meta("optical_modes", static_cast<double>(optical.size()));
    table.add_meta("mechanical_modes", static_cast<double>(mechanical.size()));
    if (tol) table.add_meta("param.freq_tol", *tol);
    emit_table(table, args);
    return 0;
}

// ---------------------------------------------------------------- replicate

int run_replicate(const CommonArgs& args, const std::string& figure) {
    const auto id = twmr::figures::parse_figure_id(figure);
    if (!id) {
        throw twmr::ValidationError(
            "unknown figure id '" + figure +
            "' (expected fig2b, fig2c, fig2d, fig3b, fig3c, fig3d, fig4bcd or fig5)");
    }
    emit_table(twmr::figures::replicate(*id), args);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twmr: linearized optomechanics of traveling-wave microresonators"};
    app.require_subcommand(1);

    CommonArgs pairgen_args, convert_args, ptsym_args, modes_args, replicate_args;
    std::string engine_flag;
    std::string figure;

    auto* pairgen_cmd =
        app.add_subcommand("pairgen", "CW/CCW photon-pair nonclassicality sweeps");
    add_common(pairgen_cmd, pairgen_args);
    pairgen_cmd->add_option("--engine", engine_flag, "gaussian (exact) or fock (truncated)")
        ->check(CLI::IsMember({"gaussian", "fock"}));

    auto* convert_cmd =
        app.add_subcommand("convert", "phase-controlled non-reciprocal mode conversion");
    add_common(convert_cmd, convert_args);

    auto* ptsym_cmd = app.add_subcommand("ptsym", "acoustic PT-symmetry probe spectra");
    add_common(ptsym_cmd, ptsym_args);

    auto* modes_cmd = app.add_subcommand("modes", "list allowed Brillouin triples");
    add_common(modes_cmd, modes_args);

    auto* replicate_cmd = app.add_subcommand("replicate", "run a bundled figure preset");
    add_common(replicate_cmd, replicate_args);
    replicate_cmd->add_option("figure", figure, "fig2b|fig2c|fig2d|fig3b|fig3c|fig3d|fig4bcd|fig5")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err); // --help
        app.exit(err);
        return 2;
    }

    std::cerr << "twmr: frequency convention: " << kUnitsNote << "\n";

    try {
        if (pairgen_cmd->parsed()) return run_pairgen(pairgen_args, engine_flag);
        if (convert_cmd->parsed()) return run_convert(convert_args);
        if (ptsym_cmd->parsed()) return run_ptsym(ptsym_args);
        if (modes_cmd->parsed()) return run_modes(modes_args);
        if (replicate_cmd->parsed()) return run_replicate(replicate_args, figure);
    } catch (const twmr::ValidationError& err) {
        std::cerr << "twmr: invalid input: " << err.what() << "\n";
        return 2;
    } catch (const twmr::UndefinedWitnessError& err) {
        std::cerr << "twmr: invalid input: " << err.what() << "\n";
        return 2;
    } catch (const twmr::IoError& err) {
        std::cerr << "twmr: io error: " << err.what() << "\n";
        return 4;
    } catch (const twmr::Error& err) {
        std::cerr << "twmr: solver error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "twmr: internal error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
