#include "dephase/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dephase/config.hpp"
#include "dephase/error.hpp"
#include "dephase/record_io.hpp"
#include "dephase/scenario.hpp"

namespace dephase {

namespace {

enum class Format { Csv, Json };

struct SourceOptions {
    std::string preset;
    std::string config_path;
    std::vector<std::string> overrides;
};

struct OutputOptions {
    std::string format = "csv";
    std::string output_path;
};

void add_source(CLI::App* cmd, SourceOptions& src, bool preset_flag = true) {
    if (preset_flag) {
        cmd->add_option("--preset", src.preset, "Builtin preset used as the base configuration");
    }
    cmd->add_option("--config", src.config_path, "Configuration file (key = value lines)");
    cmd->add_option("--set", src.overrides, "Override one field, key=value (repeatable)");
}

void add_output(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--format", o.format, "csv or json");
    cmd->add_option("--output,-o", o.output_path, "Write data to this file instead of stdout");
}

Format parse_format(const std::string& f) {
    if (f == "csv") {
        return Format::Csv;
    }
    if (f == "json") {
        return Format::Json;
    }
    throw ConfigError("--format must be csv or json, got '" + f + "'");
}

ScenarioConfig resolve_config(const SourceOptions& src, const Preset** preset_out = nullptr) {
    if (src.preset.empty() && src.config_path.empty()) {
        throw ConfigError("give --preset or --config");
    }
    ScenarioConfig cfg;
    if (!src.preset.empty()) {
        const Preset& p = find_preset(src.preset);
        cfg = p.config;
        if (preset_out) {
            *preset_out = &p;
        }
    }
    if (!src.config_path.empty()) {
        cfg = load_config_file(src.config_path, cfg);
    }
    for (const auto& o : src.overrides) {
        apply_override(cfg, o);
    }
    return cfg;
}

std::vector<double> parse_value_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        if (item.find_first_not_of(" \t") != std::string_view::npos) {
            out.push_back(parse_number(item, what));
        }
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return out;
}

// start:stop:count, inclusive of both ends.
std::vector<double> parse_range(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos) {
        throw ConfigError("--range must have the form start:stop:count");
    }
    const double start = parse_number(text.substr(0, a), "--range start");
    const double stop = parse_number(text.substr(a + 1, b - a - 1), "--range stop");
    const double count = parse_number(text.substr(b + 1), "--range count");
    if (count < 1 || count != std::floor(count) || count > 1e6) {
        throw ConfigError("--range count must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = n == 1 ? start : start + (stop - start) * (static_cast<double>(k) / static_cast<double>(n - 1));
    }
    if (n > 1) {
        out.back() = stop;
    }
    return out;
}

void deliver(const std::string& data, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << data;
        out.flush();
        if (!out) {
            throw IoError("failed to write to standard output");
        }
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open output file '" + path + "'");
    }
    f << data;
    f.close();
    if (!f) {
        throw IoError("failed to write output file '" + path + "'");
    }
}

std::string render_record(const RunRecord& rec, Format fmt) {
    std::ostringstream ss;
    if (fmt == Format::Csv) {
        write_csv(ss, rec);
    } else {
        write_json(ss, rec);
    }
    return ss.str();
}

std::string render_sweep(const SweepRecord& rec, Format fmt) {
    std::ostringstream ss;
    if (fmt == Format::Csv) {
        write_sweep_csv(ss, rec);
    } else {
        write_sweep_json(ss, rec);
    }
    return ss.str();
}

std::string render_state(const ScenarioConfig& cfg, double t) {
    ScenarioConfig one = cfg;
    one.outputs.insert(OutputField::StateDump);
    if (!std::isfinite(t) || t < 0.0) {
        throw ConfigError("--at must be finite and >= 0");
    }
    const auto df = factors(one.bath, BathConditions{one.beta}, t, one.quad);
    const GeneralInitialState init = one.is_x_state() ? x_projected_state() : bloch_product_to_general(one.init);
    const TwoSpinState state = evolve(init, df, FieldConfig{one.h}, t);
    RunRecord rec;
    rec.config = one;
    rec.factor_method = df.method;
    RunPoint p;
    p.t = t;
    p.gamma = df.gamma;
    p.delta = df.delta;
    p.gamma_divergent = df.gamma_divergent;
    p.negativity = negativity(state).value;
    p.negativity_ideal = negativity(evolve_ideal(init, df.delta)).value;
    p.purity = purity(state);
    p.state = state.rho;
    rec.points.push_back(p);
    std::ostringstream ss;
    write_json(ss, rec);
    return ss.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-spin entanglement under collective dephasing"};
    app.name("dephase");
    app.require_subcommand(1, 1);

    SourceOptions src;
    OutputOptions oo;

    auto* run_cmd = app.add_subcommand("run", "Run one scenario");
    add_source(run_cmd, src);
    add_output(run_cmd, oo);

    std::string preset_name;
    auto* preset_cmd = app.add_subcommand("preset", "Run a builtin preset (panels emit a sweep)");
    preset_cmd->add_option("name", preset_name, "Preset name")->required();
    add_source(preset_cmd, src, false);
    add_output(preset_cmd, oo);

    std::string sweep_field;
    std::string sweep_values;
    std::string sweep_range;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario for several values of one field");
    add_source(sweep_cmd, src);
    add_output(sweep_cmd, oo);
    sweep_cmd->add_option("--field", sweep_field, "Numeric field to vary, e.g. bath.s")->required();
    auto* values_opt = sweep_cmd->add_option("--values", sweep_values, "Comma-separated values (pi/8 style allowed)");
    auto* range_opt = sweep_cmd->add_option("--range", sweep_range, "start:stop:count");
    values_opt->excludes(range_opt);

    double omega_min = 0.0;
    double omega_max = 0.0;
    std::int64_t spectrum_points = 201;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Tabulate the spectral density J(omega)");
    add_source(spectrum_cmd, src);
    add_output(spectrum_cmd, oo);
    spectrum_cmd->add_option("--omega-min", omega_min, "Smallest frequency (> 0)")->required();
    spectrum_cmd->add_option("--omega-max", omega_max, "Largest frequency")->required();
    spectrum_cmd->add_option("--points", spectrum_points, "Number of frequencies");

    double at = 0.0;
    auto* state_cmd = app.add_subcommand("state-dump", "Density matrix at one time, as JSON");
    add_source(state_cmd, src);
    state_cmd->add_option("--output,-o", oo.output_path, "Write data to this file instead of stdout");
    state_cmd->add_option("--at", at, "Time")->required();

    app.add_subcommand("list-presets", "List builtin presets");

    std::vector<std::string> argv_store{"dephase"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (run_cmd->parsed()) {
            const Format fmt = parse_format(oo.format);
            const auto rec = run(resolve_config(src));
            deliver(render_record(rec, fmt), oo.output_path, out);
        } else if (preset_cmd->parsed()) {
            const Format fmt = parse_format(oo.format);
            src.preset = preset_name;
            const Preset* p = nullptr;
            const ScenarioConfig cfg = resolve_config(src, &p);
            if (p->sweep) {
                deliver(render_sweep(sweep(cfg, *p->sweep), fmt), oo.output_path, out);
            } else {
                deliver(render_record(run(cfg), fmt), oo.output_path, out);
            }
        } else if (sweep_cmd->parsed()) {
            const Format fmt = parse_format(oo.format);
            SweepSpec spec;
            spec.field = sweep_field;
            if (!sweep_range.empty()) {
                spec.values = parse_range(sweep_range);
            } else {
                spec.values = parse_value_list(sweep_values, "--values");
            }
            deliver(render_sweep(sweep(resolve_config(src), spec), fmt), oo.output_path, out);
        } else if (spectrum_cmd->parsed()) {
            const Format fmt = parse_format(oo.format);
            const ScenarioConfig cfg = resolve_config(src);
            if (cfg.bath.family() == SpectralFamily::SingleMode) {
                throw NotPointwiseError("spectrum: the single-mode bath has no pointwise spectral density");
            }
            if (!(omega_min > 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max)) {
                throw ConfigError("spectrum: need 0 < --omega-min < --omega-max");
            }
            if (spectrum_points < 2 || spectrum_points > kMaxGridPoints) {
                throw ConfigError("spectrum: --points must be between 2 and " + std::to_string(kMaxGridPoints));
            }
            const TimeGrid grid{omega_min, omega_max, spectrum_points};
            std::vector<std::pair<double, double>> rows;
            for (double w : grid.points()) {
                rows.emplace_back(w, evaluate(cfg.bath, w));
            }
            std::ostringstream ss;
            if (fmt == Format::Csv) {
                write_spectrum_csv(ss, rows);
            } else {
                ss << "{\n  \"columns\": [\"omega\", \"J\"],\n  \"rows\": [";
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    ss << (i ? ",\n    " : "\n    ") << '[' << format_double(rows[i].first) << ", "
                       << format_double(rows[i].second) << ']';
                }
                ss << "\n  ]\n}\n";
            }
            deliver(ss.str(), oo.output_path, out);
        } else if (state_cmd->parsed()) {
            deliver(render_state(resolve_config(src), at), oo.output_path, out);
        } else {
            std::ostringstream ss;
            for (const auto& p : builtin_presets()) {
                ss << p.name << '\t' << p.description << '\n';
            }
            deliver(ss.str(), "", out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const QuadratureFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    } catch (const ComputeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    } catch (const InvalidStateError& e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnexpected;
    }
    return kExitOk;
}

}  // namespace dephase
