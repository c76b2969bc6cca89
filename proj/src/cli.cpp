#include "rabi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <vector>

#include "rabi/dynamics.hpp"
#include "rabi/error.hpp"
#include "rabi/spectra.hpp"

namespace rabi::cli {

namespace {

std::string flag_for(const std::string& key) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    return flag;
}

BasisSpec basis_of(const RunConfig& cfg) {
    return cfg.n_max == 0 ? default_basis(*cfg.model) : basis_for(*cfg.model, cfg.n_max);
}

std::vector<std::size_t> truncations_of(const BasisSpec& spec) {
    return {spec.n_max, refined_truncation(spec.n_max)};
}

double crossing_tol(const RunConfig& cfg) {
    return cfg.tol.value_or(kCrossingTolerance);
}

bool pair_selected(const RunConfig& cfg, std::size_t lower) {
    return !cfg.pair || *cfg.pair == lower;
}

void check_pair(const RunConfig& cfg) {
    if (cfg.pair && *cfg.pair + 1 >= cfg.levels) {
        throw ValidationError("pair " + std::to_string(*cfg.pair) + " needs at least " +
                              std::to_string(*cfg.pair + 2) + " levels");
    }
}

CrossingScan scan_at(const RunConfig& cfg, const ModelConfig& params) {
    check_pair(cfg);
    const BasisSpec spec = basis_of(cfg);
    const auto truncations = truncations_of(spec);
    return find_crossings(*cfg.model, params, cfg.g_min, cfg.g_max, cfg.g_steps, cfg.levels, spec, truncations,
                          crossing_tol(cfg));
}

PopulationTrace trace_of(const RunConfig& cfg) {
    require_keys(cfg, "dynamics");
    const std::size_t n_max = cfg.n_max == 0 ? kDefaultFockLevels : cfg.n_max;
    return population_trace(*cfg.model, cfg.params, n_max, cfg.t_max_T, cfg.steps);
}

Table trace_table(const PopulationTrace& trace) {
    Table table;
    table.columns = {"t_over_T"};
    for (const auto& label : trace.labels) {
        table.columns.push_back("p_" + std::to_string(label.n) + (label.branch == Branch::plus ? "p" : "m"));
    }
    for (std::size_t r = 0; r < trace.times.size(); ++r) {
        std::vector<double> row{trace.times[r]};
        for (Eigen::Index c = 0; c < trace.populations.cols(); ++c) {
            row.push_back(trace.populations(static_cast<Eigen::Index>(r), c));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void emit(const Table& table, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty()) {
        write_csv(table, out);
    } else {
        write_csv(table, std::filesystem::path(cfg.out));
    }
}

void run_plot(const RunConfig& cfg) {
    if (cfg.in.empty()) {
        throw ValidationError("plot needs --in (a CSV file)");
    }
    if (cfg.out.empty()) {
        throw ValidationError("plot needs --out (an SVG path)");
    }
    const Table table = read_csv(cfg.in);
    const auto series = series_from_table(table, cfg.x_col, cfg.y_cols);
    PlotLabels labels;
    labels.title = std::filesystem::path(cfg.in).filename().string();
    labels.x_label = cfg.x_col.empty() ? table.columns.front() : cfg.x_col;
    render_svg(series, std::filesystem::path(cfg.out), labels);
}

const std::map<std::string, std::string>& flag_help() {
    static const std::map<std::string, std::string> help = {
        {"model", "qrm, aqrm, arsm, arsm-plus, arsm-minus, aniso, two-mode, two-qubit"},
        {"delta", "qubit splitting"},
        {"omega", "oscillator frequency"},
        {"g", "coupling (dynamics; ratio source for two-coupling models)"},
        {"epsilon", "qubit bias"},
        {"stark_u", "Stark coupling U, |U| < omega"},
        {"lambda", "anisotropy ratio g2/g1"},
        {"omega1", "mode 1 frequency (two-mode)"},
        {"omega2", "mode 2 frequency (two-mode)"},
        {"g1", "coupling of mode or qubit 1"},
        {"g2", "coupling of mode or qubit 2"},
        {"delta1", "splitting of qubit 1"},
        {"delta2", "splitting of qubit 2"},
        {"epsilon1", "bias of qubit 1"},
        {"epsilon2", "bias of qubit 2"},
        {"n_max", "Fock levels per mode (0: model default)"},
        {"g_min", "sweep start"},
        {"g_max", "sweep end"},
        {"g_steps", "sweep intervals"},
        {"levels", "number of lowest levels"},
        {"pair", "restrict to the pair (k, k+1)"},
        {"tol", "crossing threshold in energy units"},
        {"t_max_T", "evolution length in units of T"},
        {"steps", "time intervals"},
        {"n", "order of the bias condition"},
        {"eps_min", "bias sweep start"},
        {"eps_max", "bias sweep end"},
        {"eps_steps", "bias sweep intervals"},
        {"out", "output path (stdout when absent)"},
        {"in", "input CSV (plot)"},
        {"x_col", "x column (plot; default first)"},
        {"y_cols", "comma-separated y columns (plot; default all others)"},
    };
    return help;
}

struct Command {
    const char* name;
    const char* description;
};

constexpr std::array<Command, 6> kCommands = {{
    {"spectrum", "lowest levels (rescaled) over a coupling sweep"},
    {"crossings", "locate and classify level crossings over a coupling sweep"},
    {"dynamics", "tunnelling populations from |0+,+> in the displaced basis"},
    {"epsilon-c", "print the n-th bias at which crossings reappear"},
    {"scan", "crossing count, minimum gap and flat levels over a bias sweep"},
    {"plot", "render CSV columns as an SVG line plot"},
}};

}  // namespace

Table spectrum_table(const RunConfig& cfg) {
    require_keys(cfg, "spectrum");
    const SpectrumSweep s = sweep(*cfg.model, cfg.params, cfg.g_min, cfg.g_max, cfg.g_steps, cfg.levels, basis_of(cfg));
    Table table;
    table.columns = {"g"};
    for (std::size_t k = 0; k < cfg.levels; ++k) {
        table.columns.push_back("E" + std::to_string(k));
    }
    for (std::size_t r = 0; r < s.g_grid.size(); ++r) {
        std::vector<double> row{s.g_grid[r]};
        for (Eigen::Index k = 0; k < s.energies.cols(); ++k) {
            row.push_back(s.energies(static_cast<Eigen::Index>(r), k));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table crossings_table(const RunConfig& cfg) {
    require_keys(cfg, "crossings");
    const CrossingScan scan = scan_at(cfg, cfg.params);
    Table table;
    table.columns = {"lower", "upper", "g_star", "e_star", "min_gap", "crossing"};
    for (const auto& r : scan.records) {
        if (!pair_selected(cfg, r.lower_level)) {
            continue;
        }
        table.rows.push_back({static_cast<double>(r.lower_level), static_cast<double>(r.lower_level + 1), r.g_star,
                              r.e_star, r.min_gap, r.verdict == Verdict::crossing ? 1.0 : 0.0});
    }
    return table;
}

Table dynamics_table(const RunConfig& cfg) {
    return trace_table(trace_of(cfg));
}

Table scan_table(const RunConfig& cfg) {
    require_keys(cfg, "scan");
    if (cfg.eps_steps == 0 && cfg.eps_min != cfg.eps_max) {
        throw ValidationError("eps_steps must be at least 1 when eps_min < eps_max");
    }
    Table table;
    table.columns = {"epsilon", "crossings", "min_gap", "flat_levels"};
    const double unit = energy_unit(*cfg.model, cfg.params);
    for (const double eps : linear_grid(cfg.eps_min, cfg.eps_max, cfg.eps_steps)) {
        const CrossingScan scan = scan_at(cfg, with_bias(*cfg.model, cfg.params, eps));
        double gap = std::numeric_limits<double>::infinity();
        std::size_t crossings = 0;
        for (std::size_t p = 0; p < scan.pair_min_gap.size(); ++p) {
            if (pair_selected(cfg, p)) {
                gap = std::min(gap, scan.pair_min_gap[p]);
            }
        }
        for (const auto& r : scan.records) {
            if (pair_selected(cfg, r.lower_level) && r.verdict == Verdict::crossing) {
                ++crossings;
            }
        }
        const auto flat = scan_flat_levels(scan.grid, kFlatTolerance * unit);
        table.rows.push_back({eps, static_cast<double>(crossings), gap, static_cast<double>(flat.size())});
    }
    return table;
}

double epsilon_c_value(const RunConfig& cfg) {
    require_keys(cfg, "epsilon-c");
    return epsilon_condition(*cfg.model, cfg.params, cfg.n);
}

void require_converged(const RunConfig& cfg, double g) {
    const BasisSpec spec = basis_of(cfg);
    const std::size_t k = std::min<std::size_t>(cfg.levels, spec.dimension());
    const auto truncations = truncations_of(spec);
    const ConvergenceReport report = convergence_check(*cfg.model, cfg.params, g, k, truncations);
    if (!report.converged) {
        std::array<char, 64> drift{};
        std::snprintf(drift.data(), drift.size(), "%.3g", report.drift.back());
        throw NumericalQualityError("truncation not converged at g = " + std::to_string(g) + ": lowest " +
                                    std::to_string(k) + " levels move by " + drift.data() + " from n_max " +
                                    std::to_string(truncations[0]) + " to " + std::to_string(truncations[1]) +
                                    "; raise n_max");
    }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra, level crossings and tunnelling dynamics of asymmetric Rabi-type models", "rabi"};
    app.require_subcommand(1);
    app.fallthrough(false);

    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> flags;
    for (const auto& command : kCommands) {
        CLI::App* sub = app.add_subcommand(command.name, command.description);
        sub->add_option("--config", config_path, "config file of `key = value` lines")->option_text("PATH");
        for (const auto& key : known_keys()) {
            CLI::Option* opt = sub->add_option(flag_for(key), values[key], flag_help().at(key))->option_text("VALUE");
            flags[command.name].emplace_back(key, opt);
        }
    }

    if (!args.empty() && !args.front().starts_with("-") &&
        std::none_of(kCommands.begin(), kCommands.end(), [&](const Command& c) { return args.front() == c.name; })) {
        err << "error: unknown subcommand '" << args.front() << "'\n\n" << app.help();
        return kExitValidation;
    }

    std::vector<const char*> argv{"rabi"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitValidation;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const auto& [key, opt] : flags[command]) {
            if (opt->count() > 0) {
                apply_setting(cfg, key, values[key]);
            }
        }
        check_values(cfg);

        if (command == "plot") {
            run_plot(cfg);
        } else if (command == "epsilon-c") {
            std::array<char, 40> buf{};
            std::snprintf(buf.data(), buf.size(), "%.12g", epsilon_c_value(cfg));
            out << buf.data() << '\n';
        } else if (command == "dynamics") {
            const PopulationTrace trace = trace_of(cfg);
            emit(trace_table(trace), cfg, out);
            if (trace.norm_drift > 1e-10 || trace.energy_drift > 1e-9 * trace.spectral_norm) {
                throw NumericalQualityError("evolution lost accuracy: norm drift " + std::to_string(trace.norm_drift) +
                                            ", energy drift " + std::to_string(trace.energy_drift));
            }
        } else if (command == "spectrum") {
            emit(spectrum_table(cfg), cfg, out);
            require_converged(cfg, cfg.g_max);
        } else if (command == "crossings") {
            emit(crossings_table(cfg), cfg, out);
            require_converged(cfg, cfg.g_max);
        } else if (command == "scan") {
            emit(scan_table(cfg), cfg, out);
            require_converged(cfg, cfg.g_max);
        }
    } catch (const NumericalQualityError& e) {
        err << "numerical quality: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

}  // namespace rabi::cli
