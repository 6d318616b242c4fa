#include "twinbeam_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "twinbeam/twinbeam.hpp"

namespace twinbeam::cli {
namespace {

using Json = nlohmann::ordered_json;

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::string, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool record = false;  ///< one row, emitted as a JSON object rather than an array
};

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            if (const auto* s = std::get_if<std::string>(&row[c])) os << *s;
            else os << format_number(std::get<double>(row[c]));
        }
        os << '\n';
    }
}

void write_json(const Table& t, std::ostream& os) {
    auto object = [&](const std::vector<Cell>& row) {
        Json j = Json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit([&](const auto& v) { j[t.columns[c]] = v; }, row[c]);
        }
        return j;
    };
    Json doc;
    if (t.record && t.rows.size() == 1) {
        doc = object(t.rows.front());
    } else {
        doc = Json::array();
        for (const auto& row : t.rows) doc.push_back(object(row));
    }
    os << doc.dump(2) << '\n';
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

struct OutputOptions {
    std::string format;
    std::string path;
    std::string config;

    void add(CLI::App* sub, const std::string& default_format) {
        format = default_format;
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--output", path, "Write to this file instead of standard output");
        sub->add_option("--config", config, "JSON file of flag values; flags given on the command line win");
    }
};

// Light selection shared by every command that needs a field.
class LightOptions {
public:
    void add(CLI::App* sub) {
        sub->add_option("--kind", kind_, "squashed, squeezed, classical, vacuum or custom")->required();
        opts_["lambda"] = sub->add_option("--lambda", lambda_, "Feedback parameter (squashed)");
        opts_["sign"] = sub->add_option("--sign", sign_, "Sign of M: plus or minus")
                            ->check(CLI::IsMember({"plus", "minus"}));
        opts_["n"] = sub->add_option("--n", n_, "Photon number N (squeezed, classical)");
        opts_["m"] = sub->add_option("--m", m_, "Correlation M (squeezed, classical)");
        opts_["intensity"] = sub->add_option("--intensity", intensity_, "Intensity; sets the kind's parameters");
        opts_["n-up"] = sub->add_option("--n-up", n_up_, "N_U (custom)");
        opts_["n-down"] = sub->add_option("--n-down", n_down_, "N_D (custom)");
        opts_["m-up"] = sub->add_option("--m-up", m_up_, "M_U (custom)");
        opts_["m-down"] = sub->add_option("--m-down", m_down_, "M_D (custom)");
    }

    LightParams build() const {
        const LightKind kind = light_kind_from_string(kind_);
        switch (kind) {
            case LightKind::Squashed: {
                allow({"lambda", "intensity", "sign"});
                exactly_one("lambda", "intensity");
                const double lambda = given("lambda") ? lambda_ : lambda_for_intensity(intensity_);
                return make_squashed(lambda, sign_or(QuadratureSign::Plus));
            }
            case LightKind::Squeezed: {
                allow({"n", "m", "intensity", "sign"});
                exactly_one("n", "intensity");
                if (given("m") && given("sign")) throw ValidationError("--m and --sign are mutually exclusive");
                const double n = given("n") ? n_ : intensity_;
                if (given("m")) return make_squeezed(n, m_);
                return make_squeezed_max(n, sign_or(QuadratureSign::Minus) == QuadratureSign::Plus ? 1 : -1);
            }
            case LightKind::Classical: {
                allow({"n", "m", "intensity", "sign"});
                exactly_one("n", "intensity");
                if (given("m") && given("sign")) throw ValidationError("--m and --sign are mutually exclusive");
                const double n = given("n") ? n_ : intensity_;
                if (given("m")) return make_classical(n, m_);
                return make_classical(n, sign_or(QuadratureSign::Minus) == QuadratureSign::Plus ? n : -n);
            }
            case LightKind::Vacuum:
                allow({});
                return LightParams::vacuum();
            case LightKind::Custom:
                allow({"n-up", "n-down", "m-up", "m-down"});
                return LightParams::custom(n_up_, n_down_, m_up_, m_down_);
        }
        throw ValidationError("unhandled light kind");
    }

    /// "kind=squashed lambda=-0.5" for diagnostics.
    std::string describe() const {
        std::string text = "kind=" + kind_;
        for (const auto& [name, opt] : opts_) {
            if (opt->count() > 0) text += " " + name + "=" + opt->as<std::string>();
        }
        return text;
    }

private:
    bool given(const std::string& name) const { return opts_.at(name)->count() > 0; }

    void allow(std::set<std::string> names) const {
        for (const auto& [name, opt] : opts_) {
            if (opt->count() > 0 && !names.contains(name)) {
                throw ValidationError("--" + name + " does not apply to " + kind_ + " light");
            }
        }
    }

    void exactly_one(const std::string& a, const std::string& b) const {
        if (given(a) == given(b)) throw ValidationError(kind_ + " light needs exactly one of --" + a + " and --" + b);
    }

    QuadratureSign sign_or(QuadratureSign fallback) const {
        if (!given("sign")) return fallback;
        return sign_ == "plus" ? QuadratureSign::Plus : QuadratureSign::Minus;
    }

    std::string kind_;
    double lambda_ = 0.0;
    std::string sign_;
    double n_ = 0.0;
    double m_ = 0.0;
    double intensity_ = 0.0;
    double n_up_ = 0.0;
    double n_down_ = 0.0;
    double m_up_ = 0.0;
    double m_down_ = 0.0;
    std::map<std::string, CLI::Option*> opts_;
};

int atom_dim(const std::string& atom) { return atom == "2la" ? 2 : 3; }

Generator unified_generator(const LightParams& p, int dim) {
    return dim == 2 ? gen_2la_unified(p) : gen_3la_unified(p);
}

Table light_table(const LightParams& p) {
    const SpectraSet s = twin_beam_spectra(p);
    return {{"kind", "n_up", "n_down", "m_up", "m_down", "intensity", "s_x", "s_y", "s_x_plus", "s_y_plus",
             "s_x_minus", "s_y_minus"},
            {{std::string(to_string(p.kind())), p.n_up(), p.n_down(), p.m_up(), p.m_down(), intensity(p), s.s_x, s.s_y,
              s.s_x_plus, s.s_y_plus, s.s_x_minus, s.s_y_minus}},
            true};
}

Table steady_table(const LightParams& p, int dim) {
    const DensityMatrix rho = steady_state(unified_generator(p, dim));
    const std::string kind(to_string(p.kind()));
    if (dim == 2) {
        return {{"kind", "atom", "intensity", "rho11", "rho22", "re_rho12", "im_rho12"},
                {{kind, std::string("2la"), intensity(p), rho.element(1, 1).real(), rho.element(2, 2).real(),
                  rho.element(1, 2).real(), rho.element(1, 2).imag()}},
                true};
    }
    return {{"kind", "atom", "intensity", "rho11", "rho22", "rho33", "re_rho13", "im_rho13"},
            {{kind, std::string("3la"), intensity(p), rho.element(1, 1).real(), rho.element(2, 2).real(),
              rho.element(3, 3).real(), rho.element(1, 3).real(), rho.element(1, 3).imag()}},
            true};
}

Table scan_table(const std::vector<LightKind>& kinds, const std::vector<double>& grid) {
    Table t{{"kind", "intensity", "rho33_numeric", "rho33_closed", "abs_err"}, {}, false};
    for (const ScanRow& row : population_scan(kinds, grid)) {
        t.rows.push_back({std::string(to_string(row.kind)), row.intensity, row.rho33_numeric, row.rho33_closed_form,
                          row.abs_error});
    }
    return t;
}

DensityMatrix initial_state(const std::string& from, int dim) {
    if (from == "upper") return DensityMatrix::level(dim, dim);
    if (from == "lower") return DensityMatrix::level(dim, 1);
    return DensityMatrix::maximally_mixed(dim);
}

Table transient_table(const LightParams& p, int dim, const std::string& from, double t_max, int steps,
                      const std::string& propagator) {
    if (!(t_max > 0.0)) throw ValidationError("--t-max must be > 0");
    if (steps < 1) throw ValidationError("--steps must be >= 1");
    std::vector<double> times;
    for (int k = 0; k <= steps; ++k) times.push_back(t_max * k / steps);
    const TransientTrace trace =
        trajectory(unified_generator(p, dim), initial_state(from, dim), times,
                   propagator == "rk4" ? Propagator::RungeKutta : Propagator::MatrixExponential);
    const std::vector<std::string> names = observable_names(dim);
    Table t{{"t"}, {}, false};
    t.columns.insert(t.columns.end(), names.begin(), names.end());
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<Cell> row{times[i]};
        for (const auto& name : names) row.emplace_back(trace.observables.at(name)[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table rates_table(const LightParams& p) {
    const BlochRates r = decay_rates_2la(gen_2la_unified(p));
    return {{"kind", "gamma_x", "gamma_y", "gamma_z", "c"},
            {{std::string(to_string(p.kind())), r.gamma_x, r.gamma_y, r.gamma_z, r.c}},
            true};
}

Table spectrum_table(const SpectrumCurve& curve) {
    Table t{{"omega", "s_x", "s_y", "product"}, {}, false};
    for (std::size_t i = 0; i < curve.omegas.size(); ++i) {
        t.rows.push_back({curve.omegas[i], curve.s_x[i], curve.s_y[i], curve.product[i]});
    }
    return t;
}

Table contour_table(const LightParams& p, int points) {
    Table t{{"theta", "s_q"}, {}, false};
    for (const PhasePoint& pt : phase_contour(p, points)) t.rows.push_back({pt.theta, pt.s_q});
    return t;
}

std::string json_scalar_to_arg(const std::string& key, const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
        return buf;
    }
    if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
            if (!joined.empty()) joined += ',';
            joined += json_scalar_to_arg(key, item);
        }
        return joined;
    }
    throw ValidationError("config key '" + key + "' must be a string, number or array");
}

// Splices the values of a --config file in front of the command-line flags so
// that explicit flags take precedence.
std::vector<std::string> expand_config(const CLI::App& app, std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ValidationError("--config needs a file");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path);
    Json config;
    try {
        config = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!config.is_object()) throw ValidationError("config file " + path + " must hold a JSON object");

    auto command_pos = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return app.get_subcommand_no_throw(a) != nullptr;
    });
    std::string command;
    if (command_pos != args.end()) {
        command = *command_pos;
        if (config.contains("command") && config["command"] != command) {
            throw ValidationError("config command '" + config["command"].get<std::string>() +
                                  "' does not match '" + command + "'");
        }
    } else {
        if (!config.contains("command") || !config["command"].is_string()) {
            throw ValidationError("no command given on the command line or in " + path);
        }
        command = config["command"].get<std::string>();
        if (app.get_subcommand_no_throw(command) == nullptr) throw ValidationError("unknown command '" + command + "'");
        args.insert(args.begin(), command);
        command_pos = args.begin();
    }

    const CLI::App* sub = app.get_subcommand_no_throw(command);
    std::vector<std::string> injected;
    for (const auto& [key, value] : config.items()) {
        if (key == "command") continue;
        if (key == "config" || sub->get_option_no_throw("--" + key) == nullptr) {
            throw ValidationError("unknown config key '" + key + "' for command " + command);
        }
        injected.push_back("--" + key);
        injected.push_back(json_scalar_to_arg(key, value));
    }
    args.insert(command_pos + 1, injected.begin(), injected.end());
    return args;
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-level and cascade atoms in squeezed, squashed and classical light", "twinbeam"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    std::map<const CLI::App*, OutputOptions> outputs;
    std::map<const CLI::App*, LightOptions> lights;
    std::string atom = "3la";
    std::string kinds = "squashed,squeezed,classical";
    double n_min = 1e-4;
    double n_max = 0.2;
    int points = 25;
    std::string from = "upper";
    double t_max = 10.0;
    int steps = 100;
    std::string propagator = "expm";
    double gain = 0.0;
    std::string response = "ideal";
    double bandwidth = 1.0;
    double tau = 0.0;
    double omega_min = 0.0;
    double omega_max = 0.0;
    int omega_points = 201;
    int contour_points = 72;

    // Plain option values are shared between subcommands since only one is
    // parsed per run; light and output groups keep per-subcommand state.
    auto with_output = [&](CLI::App* sub, const std::string& default_format) {
        outputs[sub].add(sub, default_format);
        return sub;
    };
    auto with_light = [&](CLI::App* sub, const std::string& default_format) {
        lights[sub].add(sub);
        return with_output(sub, default_format);
    };

    CLI::App* cmd_light = with_light(app.add_subcommand("light", "Effective parameters and spectra of a light field"), "json");

    CLI::App* cmd_steady = with_light(app.add_subcommand("steady", "Steady state of the atom"), "json");
    cmd_steady->add_option("--atom", atom, "2la or 3la")->check(CLI::IsMember({"2la", "3la"}))->capture_default_str();

    CLI::App* cmd_scan = with_output(app.add_subcommand("scan", "Top-level population against intensity"), "csv");
    cmd_scan->add_option("--atom", atom, "Only 3la is supported")->check(CLI::IsMember({"3la"}))->capture_default_str();
    cmd_scan->add_option("--kinds", kinds, "Comma-separated light kinds")->capture_default_str();
    cmd_scan->add_option("--n-min", n_min, "Lowest intensity")->capture_default_str();
    cmd_scan->add_option("--n-max", n_max, "Highest intensity")->capture_default_str();
    cmd_scan->add_option("--points", points, "Log-spaced grid points")->capture_default_str();

    CLI::App* cmd_transient = with_light(app.add_subcommand("transient", "Populations and two-photon coherence in time"), "csv");
    cmd_transient->add_option("--atom", atom, "2la or 3la")->check(CLI::IsMember({"2la", "3la"}))->capture_default_str();
    cmd_transient->add_option("--from", from, "Initial state")
        ->check(CLI::IsMember({"upper", "lower", "mixed"}))
        ->capture_default_str();
    cmd_transient->add_option("--t-max", t_max, "Final time")->capture_default_str();
    cmd_transient->add_option("--steps", steps, "Number of time steps")->capture_default_str();
    cmd_transient->add_option("--propagator", propagator, "expm or rk4")
        ->check(CLI::IsMember({"expm", "rk4"}))
        ->capture_default_str();

    CLI::App* cmd_rates = with_light(app.add_subcommand("rates", "Two-level Bloch decay rates"), "json");

    CLI::App* cmd_feedback = with_output(app.add_subcommand("feedback-spectrum", "In-loop quadrature spectra"), "csv");
    cmd_feedback->add_option("--g", gain, "Round-loop gain")->required();
    cmd_feedback->add_option("--response", response, "ideal or onepole")
        ->check(CLI::IsMember({"ideal", "onepole"}))
        ->capture_default_str();
    CLI::Option* bandwidth_opt = cmd_feedback->add_option("--bandwidth", bandwidth, "One-pole bandwidth");
    cmd_feedback->add_option("--tau", tau, "Loop delay")->capture_default_str();
    CLI::Option* omega_min_opt = cmd_feedback->add_option("--omega-min", omega_min, "Lowest frequency");
    CLI::Option* omega_max_opt = cmd_feedback->add_option("--omega-max", omega_max, "Highest frequency");
    CLI::Option* omega_points_opt = cmd_feedback->add_option("--points", omega_points, "Log-spaced frequency points");

    CLI::App* cmd_contour = with_light(app.add_subcommand("phase-contour", "Quadrature spectrum against phase angle"), "csv");
    cmd_contour->add_option("--points", contour_points, "Angles over one turn")->capture_default_str();

    std::string context;
    try {
        std::vector<std::string> args = expand_config(app, raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);

        const CLI::App* chosen = app.get_subcommands().front();
        const OutputOptions& output = outputs.at(chosen);
        auto light = [&]() -> const LightOptions& { return lights.at(chosen); };
        Table table;
        if (cmd_light->parsed()) {
            context = light().describe();
            table = light_table(light().build());
        } else if (cmd_steady->parsed()) {
            context = light().describe() + " atom=" + atom;
            table = steady_table(light().build(), atom_dim(atom));
        } else if (cmd_scan->parsed()) {
            context = "kinds=" + kinds;
            std::vector<LightKind> kind_list;
            for (const auto& name : split_list(kinds)) kind_list.push_back(light_kind_from_string(name));
            if (kind_list.empty()) throw ValidationError("--kinds is empty");
            table = scan_table(kind_list, log_grid(n_min, n_max, points));
        } else if (cmd_transient->parsed()) {
            context = light().describe() + " atom=" + atom;
            table = transient_table(light().build(), atom_dim(atom), from, t_max, steps, propagator);
        } else if (cmd_rates->parsed()) {
            context = light().describe();
            table = rates_table(light().build());
        } else if (cmd_feedback->parsed()) {
            context = "g=" + format_number(gain) + " tau=" + format_number(tau);
            if (response == "onepole" && bandwidth_opt->count() == 0) {
                throw ValidationError("--response onepole needs --bandwidth");
            }
            if (response == "ideal" && bandwidth_opt->count() > 0) {
                throw ValidationError("--bandwidth applies only to --response onepole");
            }
            const FeedbackLoop loop{.gain = gain,
                                    .delay = tau,
                                    .response = response == "ideal" ? ResponseSpec::ideal()
                                                                    : ResponseSpec::one_pole(bandwidth)};
            std::vector<double> grid;
            const bool custom_grid = omega_min_opt->count() + omega_max_opt->count() + omega_points_opt->count() > 0;
            if (custom_grid) {
                if (omega_min_opt->count() == 0 || omega_max_opt->count() == 0) {
                    throw ValidationError("a custom frequency grid needs both --omega-min and --omega-max");
                }
                grid = log_grid(omega_min, omega_max, omega_points);
            } else {
                grid = default_frequency_grid(loop.response);
            }
            table = spectrum_table(inloop_spectrum(loop, grid));
        } else if (cmd_contour->parsed()) {
            context = light().describe();
            table = contour_table(light().build(), contour_points);
        }

        std::ostringstream rendered;
        if (output.format == "json") write_json(table, rendered);
        else write_csv(table, rendered);

        if (output.path.empty()) {
            out << rendered.str();
        } else {
            std::ofstream file(output.path);
            if (!file) throw ValidationError("cannot write " + output.path);
            file << rendered.str();
        }
        return kSuccess;
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "twinbeam: error: " << one_line(e.what()) << '\n';
        return kValidationFailure;
    } catch (const NumericalError& e) {
        err << "twinbeam: numerical failure: " << one_line(e.what()) << " [" << context << "]\n";
        return kNumericalFailure;
    } catch (const ValidationError& e) {
        err << "twinbeam: error: " << one_line(e.what()) << '\n';
        return kValidationFailure;
    } catch (const RangeError& e) {
        err << "twinbeam: error: " << one_line(e.what()) << '\n';
        return kValidationFailure;
    } catch (const DomainError& e) {
        err << "twinbeam: error: " << one_line(e.what()) << '\n';
        return kValidationFailure;
    } catch (const DimensionError& e) {
        err << "twinbeam: error: " << one_line(e.what()) << '\n';
        return kValidationFailure;
    } catch (const std::exception& e) {
        err << "twinbeam: failure: " << one_line(e.what()) << " [" << context << "]\n";
        return kNumericalFailure;
    }
}

}  // namespace twinbeam::cli
