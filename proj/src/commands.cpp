// commands.cpp — Subcommand pipelines: compute, tabulate, write
#include "liouspec/commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "liouspec/output.hpp"
#include "liouspec/qpt.hpp"
#include "liouspec/quasispin.hpp"
#include "liouspec/spectra.hpp"
#include "liouspec/version.hpp"

namespace liouspec::cli {

using nlohmann::json;

namespace {

const json* tfind(const json& task, const char* key) {
    if (!task.is_object()) return nullptr;
    const auto it = task.find(key);
    return it == task.end() ? nullptr : &*it;
}

double task_number(const json& task, const char* key, double fallback) {
    const json* v = tfind(task, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(std::string("task.") + key + ": expected a number");
    return v->get<double>();
}

int task_int(const json& task, const char* key, int fallback) {
    const json* v = tfind(task, key);
    if (!v) return fallback;
    if (!v->is_number_integer())
        throw ConfigError(std::string("task.") + key + ": expected an integer");
    return v->get<int>();
}

bool task_bool(const json& task, const char* key, bool fallback) {
    const json* v = tfind(task, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(std::string("task.") + key + ": expected a boolean");
    return v->get<bool>();
}

std::vector<double> parse_number_list(const json& value, const std::string& path) {
    if (!value.is_array()) throw ConfigError(path + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& entry : value) {
        if (!entry.is_number()) throw ConfigError(path + ": expected an array of numbers");
        out.push_back(entry.get<double>());
    }
    if (out.empty()) throw ConfigError(path + ": must be nonempty");
    return out;
}

// A grid is either an explicit array or {"start", "stop", "step"}.
std::vector<double> parse_grid(const json& value, const std::string& path) {
    if (value.is_array()) return parse_number_list(value, path);
    if (!value.is_object()) throw ConfigError(path + ": expected an array or {start, stop, step}");
    for (const auto& [key, _] : value.items())
        if (key != "start" && key != "stop" && key != "step")
            throw ConfigError(path + "." + key + ": unknown field");
    const json* start = tfind(value, "start");
    const json* stop = tfind(value, "stop");
    const json* step = tfind(value, "step");
    if (!start || !stop || !step) throw ConfigError(path + ": needs start, stop, and step");
    const double a = start->get<double>();
    const double b = stop->get<double>();
    const double h = step->get<double>();
    if (!(h > 0.0)) throw ConfigError(path + ".step: must be > 0");
    if (b < a) throw ConfigError(path + ".stop: must be >= start");
    const int count = int(std::floor((b - a) / h + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(std::size_t(count));
    for (int i = 0; i < count; ++i) out.push_back(a + h * double(i));
    return out;
}

std::vector<double> task_grid(const json& task, const char* key,
                              std::optional<std::vector<double>> fallback) {
    const json* v = tfind(task, key);
    if (!v) {
        if (fallback) return *fallback;
        throw ConfigError(std::string("task.") + key + ": required");
    }
    return parse_grid(*v, std::string("task.") + key);
}

std::vector<int> task_int_list(const json& task, const char* key, std::vector<int> fallback) {
    const json* v = tfind(task, key);
    if (!v) return fallback;
    if (!v->is_array()) throw ConfigError(std::string("task.") + key + ": expected an array");
    std::vector<int> out;
    for (const auto& entry : *v) {
        if (!entry.is_number_integer())
            throw ConfigError(std::string("task.") + key + ": expected integers");
        out.push_back(entry.get<int>());
    }
    if (out.empty()) throw ConfigError(std::string("task.") + key + ": must be nonempty");
    return out;
}

qpt::Axis parse_axis(const std::string& name) {
    if (name == "xi") return qpt::Axis::xi;
    if (name == "chi") return qpt::Axis::chi;
    if (name == "eta") return qpt::Axis::eta;
    if (name == "n_th") return qpt::Axis::n_th;
    throw ConfigError("task.axis: expected one of xi, chi, eta, n_th");
}

qpt::Observable parse_observable(const std::string& name) {
    if (name == "nu") return qpt::Observable::nu;
    if (name == "gap") return qpt::Observable::gap;
    if (name == "hamiltonian_gap") return qpt::Observable::hamiltonian_gap;
    if (name == "gap2") return qpt::Observable::gap2;
    if (name == "t_x") return qpt::Observable::t_x;
    throw ConfigError("task.observables: expected nu, gap, hamiltonian_gap, gap2, or t_x");
}

std::string observable_name(qpt::Observable obs) {
    switch (obs) {
        case qpt::Observable::nu: return "nu";
        case qpt::Observable::gap: return "gap";
        case qpt::Observable::hamiltonian_gap: return "hamiltonian_gap";
        case qpt::Observable::gap2: return "gap2";
        case qpt::Observable::t_x: return "t_x";
    }
    return "";
}

std::optional<double> row_value(const qpt::SweepRow& row, qpt::Observable obs) {
    switch (obs) {
        case qpt::Observable::nu: return row.nu;
        case qpt::Observable::gap: return row.gap;
        case qpt::Observable::hamiltonian_gap: return row.hamiltonian_gap;
        case qpt::Observable::gap2: return row.gap2;
        case qpt::Observable::t_x: return row.t_x;
    }
    return std::nullopt;
}

fock::FockSpace resolve_space(const RunConfig& config) {
    if (!config.space.automatic) return fock::FockSpace{config.space.n_fock - 1};
    const int n_conv = qpt::convergence_N(config.model, config.channels, config.space.auto_k,
                                          config.space.auto_tol);
    return fock::FockSpace{n_conv};
}

json base_meta(const RunConfig& config) {
    json meta;
    meta["version"] = kVersion;
    meta["config"] = config.resolved;
    return meta;
}

void require_some_success(const qpt::SweepResult& result, const char* what) {
    for (const auto& row : result.rows)
        if (row.error.empty()) return;
    std::string detail = result.rows.empty() ? "" : result.rows.front().error;
    throw std::runtime_error(std::string(what) + ": every row failed (" + detail + ")");
}

// Closed-form spectrum to compare against, when one exists for this model.
enum class OracleKind { none, harmonic, kerr, quadratic };

OracleKind pick_oracle(const models::HamiltonianParams& params,
                       const std::vector<models::DissipationChannel>& channels) {
    if (params.scaled || params.has_squeeze() || channels.size() != 1) return OracleKind::none;
    const auto& channel = channels[0];
    if (channel.order == 1 && params.kerr == 0.0) return OracleKind::harmonic;  // any n_th
    if (params.kerr != 1.0) return OracleKind::none;  // closed forms below fix K = 1
    if (channel.n_th != 0.0) return OracleKind::none;
    if (channel.order == 1) return OracleKind::kerr;
    if (channel.order == 2) return OracleKind::quadratic;
    return OracleKind::none;
}

std::vector<std::complex<double>> oracle_values(OracleKind kind,
                                                const models::HamiltonianParams& params,
                                                const models::DissipationChannel& channel,
                                                int n_fock) {
    switch (kind) {
        case OracleKind::harmonic:
            return quasispin::oracle_harmonic(params.omega, channel.kappa, n_fock);
        case OracleKind::kerr:
            return quasispin::oracle_kerr(params.eta_prime(), channel.kappa, n_fock);
        case OracleKind::quadratic:
            return quasispin::oracle_quadratic_dissipation(params.eta_prime(), channel.kappa,
                                                           n_fock);
        case OracleKind::none: break;
    }
    return {};
}

// Ladder labels apply to the unscaled Kerr line at nonnegative integer eta'.
std::optional<quasispin::HalfInt> ladder_spin(const models::HamiltonianParams& params,
                                              const std::vector<models::DissipationChannel>& channels) {
    if (params.kerr == 0.0 || params.scaled || params.has_squeeze()) return std::nullopt;
    if (channels.size() != 1 || channels[0].order != 1 || channels[0].n_th != 0.0)
        return std::nullopt;
    const double eta_prime = params.eta_prime();
    const double rounded = std::round(eta_prime);
    if (std::abs(eta_prime - rounded) > 1e-9 || rounded < 0.0) return std::nullopt;
    return quasispin::HalfInt(int(rounded));  // 2j = eta'
}

}  // namespace

void cmd_spectrum(const RunConfig& config) {
    const auto space = resolve_space(config);
    const bool do_cluster = task_bool(config.task, "cluster", false);

    auto points = spectra::liouvillian_spectrum(config.model, config.channels, space);
    if (do_cluster) points = spectra::cluster(points);

    const OracleKind kind = pick_oracle(config.model, config.channels);
    const bool with_oracle = kind != OracleKind::none && !do_cluster;
    const auto spin = ladder_spin(config.model, config.channels);

    Table table;
    table.name = "spectrum";
    table.columns = {"re", "im", "multiplicity"};
    if (with_oracle) {
        table.columns.insert(table.columns.end(), {"n", "m", "oracle_re", "oracle_im"});
        if (spin)
            table.columns.insert(table.columns.end(),
                                 {"phase", "branch", "J", "M", "accumulation"});
    }

    std::vector<std::complex<double>> oracle;
    if (with_oracle)
        oracle = oracle_values(kind, config.model, config.channels[0], space.dim());
    // Each row reports the closest analytic value rather than a global perfect
    // matching: truncation distorts the top of the numeric spectrum, and rank
    // migration there would corrupt the pairing of perfectly converged rows.
    auto nearest = [&oracle](std::complex<double> z) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < oracle.size(); ++k) {
            const double d = std::norm(z - oracle[k]);
            if (d < best_d) {
                best_d = d;
                best = int(k);
            }
        }
        return best;
    };

    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<std::string> row{format_sig17(points[i].lambda.real()),
                                     format_sig17(points[i].lambda.imag()),
                                     std::to_string(points[i].multiplicity)};
        if (with_oracle) {
            const int partner = nearest(points[i].lambda);
            const int n = partner / space.dim();
            const int m = partner % space.dim();
            row.push_back(std::to_string(n));
            row.push_back(std::to_string(m));
            row.push_back(format_sig17(oracle[std::size_t(partner)].real()));
            row.push_back(format_sig17(oracle[std::size_t(partner)].imag()));
            if (spin) {
                if (n <= spin->twice && m <= spin->twice) {
                    const auto label = quasispin::classify_jm(n, m, *spin);
                    row.push_back("II");
                    row.push_back(label.left_branch ? "left" : "right");
                    row.push_back(label.big_j.str());
                    row.push_back(label.big_m.str());
                    row.push_back(quasispin::is_accumulation(n, m, *spin) ? "true" : "false");
                } else {
                    row.insert(row.end(), {"I", "", "", "", "false"});
                }
            }
        }
        table.rows.push_back(std::move(row));
    }

    json meta = base_meta(config);
    meta["space"] = {{"n_fock", space.dim()}};
    meta["oracle"] = with_oracle;
    write_tables(config.out_dir, {table}, meta, config.format);
}

void cmd_classify(const RunConfig& config) {
    quasispin::HalfInt j;
    if (const json* jv = tfind(config.task, "j")) {
        if (!jv->is_number()) throw ConfigError("task.j: expected a number");
        const double twice = 2.0 * jv->get<double>();
        if (std::abs(twice - std::round(twice)) > 1e-9 || twice < 0.0)
            throw ConfigError("task.j: expected a nonnegative integer or half-integer");
        j = quasispin::HalfInt(int(std::round(twice)));
    } else if (const auto spin = ladder_spin(config.model, config.channels)) {
        j = *spin;
    } else {
        throw ConfigError("task.j: required unless the model is an integer-eta Kerr line");
    }

    double kappa = task_number(config.task, "kappa", -1.0);
    if (kappa < 0.0) {
        kappa = 0.0;
        for (const auto& channel : config.channels)
            if (channel.order == 1) {
                kappa = channel.kappa;
                break;
            }
    }

    Table table;
    table.name = "classify";
    table.columns = {"n",      "m", "m_j", "m_j_prime", "branch",
                     "J",      "M", "re",  "im",        "accumulation"};
    for (const auto& point : quasispin::enumerate_jm(j, kappa)) {
        table.rows.push_back({std::to_string(point.n), std::to_string(point.m),
                              quasispin::HalfInt(j.twice - 2 * point.n).str(),
                              quasispin::HalfInt(j.twice - 2 * point.m).str(),
                              point.label.left_branch ? "left" : "right",
                              point.label.big_j.str(), point.label.big_m.str(),
                              format_sig17(point.lambda.real()),
                              format_sig17(point.lambda.imag()),
                              quasispin::is_accumulation(point.n, point.m, j) ? "true" : "false"});
    }

    json meta = base_meta(config);
    meta["j"] = j.str();
    meta["kappa"] = kappa;
    write_tables(config.out_dir, {table}, meta, config.format);
}

namespace {

std::string axis_name(qpt::Axis axis) {
    switch (axis) {
        case qpt::Axis::xi: return "xi";
        case qpt::Axis::chi: return "chi";
        case qpt::Axis::eta: return "eta";
        case qpt::Axis::n_th: return "n_th";
    }
    return "";
}

// One file per observable: axis, N, value, error.
std::vector<Table> sweep_tables(const std::string& prefix, const qpt::SweepResult& result,
                                qpt::Axis axis, const std::vector<qpt::Observable>& observables) {
    std::vector<Table> tables;
    for (const auto obs : observables) {
        Table table;
        table.name = prefix + "_" + observable_name(obs);
        table.columns = {axis_name(axis), "N", observable_name(obs), "error"};
        for (const auto& row : result.rows) {
            const auto value = row_value(row, obs);
            table.rows.push_back({format_sig17(row.axis_value), std::to_string(row.big_n),
                                  value ? format_sig17(*value) : "", row.error});
        }
        tables.push_back(std::move(table));
    }
    return tables;
}

}  // namespace

void cmd_sweep(const RunConfig& config) {
    const json* axis_field = tfind(config.task, "axis");
    if (!axis_field || !axis_field->is_string()) throw ConfigError("task.axis: required string");

    qpt::SweepConfig sweep_config;
    sweep_config.model = config.model;
    sweep_config.channels = config.channels;
    sweep_config.axis = parse_axis(axis_field->get<std::string>());
    sweep_config.grid = task_grid(config.task, "grid", std::nullopt);
    sweep_config.n_list = task_int_list(config.task, "N_list", {resolve_space(config).n_max});
    sweep_config.workers = config.workers;

    const json* obs_field = tfind(config.task, "observables");
    if (!obs_field || !obs_field->is_array() || obs_field->empty())
        throw ConfigError("task.observables: required nonempty array");
    for (const auto& entry : *obs_field) {
        if (!entry.is_string()) throw ConfigError("task.observables: expected strings");
        sweep_config.observables.push_back(parse_observable(entry.get<std::string>()));
    }

    try {
        qpt::validate(sweep_config);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("task: ") + e.what());
    }

    const auto result = qpt::sweep(sweep_config);
    require_some_success(result, "sweep");

    const auto tables =
        sweep_tables("sweep", result, sweep_config.axis, sweep_config.observables);
    write_tables(config.out_dir, tables, base_meta(config), config.format);
}

void cmd_qpt(const RunConfig& config) {
    if (!config.model.scaled)
        throw ConfigError("model.scaled: the qpt command needs the scaled model");
    const int order = task_int(config.task, "order", 2);
    if (order != 1 && order != 2) throw ConfigError("task.order: expected 1 or 2");

    const std::vector<int> n_list = task_int_list(config.task, "N_list", {10, 20, 40});
    const double window_max = task_number(config.task, "window_max", 0.8);
    const double jump_threshold = task_number(config.task, "jump_threshold", 5.0);

    std::vector<double> default_grid;
    {
        const double start = order == 2 ? 0.3 : 0.1;
        const double stop = order == 2 ? 0.8 : 0.5;
        const double step = order == 2 ? 0.025 : 0.01;
        const int count = int(std::floor((stop - start) / step + 1e-9)) + 1;
        for (int i = 0; i < count; ++i) default_grid.push_back(start + step * double(i));
    }

    qpt::SweepConfig sweep_config;
    sweep_config.model = config.model;
    sweep_config.channels = config.channels;
    sweep_config.axis = qpt::Axis::chi;
    sweep_config.grid = task_grid(config.task, "grid", default_grid);
    sweep_config.n_list = n_list;
    sweep_config.observables = order == 2 ? std::vector<qpt::Observable>{qpt::Observable::gap}
                                          : std::vector<qpt::Observable>{qpt::Observable::nu,
                                                                         qpt::Observable::gap,
                                                                         qpt::Observable::gap2};
    sweep_config.workers = config.workers;
    try {
        qpt::validate(sweep_config);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("task: ") + e.what());
    }

    const auto result = qpt::sweep(sweep_config);
    require_some_success(result, "qpt");

    std::vector<Table> tables =
        sweep_tables("qpt", result, qpt::Axis::chi, sweep_config.observables);
    json meta = base_meta(config);
    meta["order"] = order;

    if (order == 2) {
        // chi_c: explicit task value, else the closed-form -eta/2 when it
        // exists, else the large-N gap maximum found by the detector.
        std::optional<double> chi_c_theory;
        if (tfind(config.task, "chi_c")) {
            chi_c_theory = task_number(config.task, "chi_c", 0.0);
        } else {
            try {
                chi_c_theory = models::kissing_point(config.model.eta()) / 4.0;
            } catch (const std::domain_error&) {
            }
        }

        const auto critical = qpt::detect_critical_point_2nd(result, chi_c_theory, window_max);
        meta["chi_c"] = critical.chi_c;
        meta["chi_c_from_theory"] = critical.chi_c_from_theory;
        meta["window_max"] = window_max;

        Table crit;
        crit.name = "qpt_critical";
        crit.columns = {"N", "chi_max", "delta_chi1"};
        std::vector<std::pair<double, double>> delta_points;
        for (const auto& branch : critical.branches) {
            crit.rows.push_back({std::to_string(branch.big_n), format_sig17(branch.chi_max),
                                 format_sig17(branch.delta_chi1)});
            if (branch.delta_chi1 > 0.0)
                delta_points.emplace_back(double(branch.big_n), branch.delta_chi1);
        }
        tables.push_back(std::move(crit));

        Table nu_table;
        nu_table.name = "qpt_nu_at_chi_c";
        nu_table.columns = {"N", "chi_c", "nu", "error"};
        std::vector<std::pair<double, double>> nu_points;
        for (const int big_n : n_list) {
            std::string error;
            std::string value;
            try {
                const auto params = models::HamiltonianParams::scaled_model(
                    config.model.eta(), critical.chi_c, big_n);
                const double nu =
                    qpt::order_parameter(params, config.channels, fock::FockSpace{big_n});
                value = format_sig17(nu);
                nu_points.emplace_back(double(big_n), nu);
            } catch (const std::exception& e) {
                error = e.what();
            }
            nu_table.rows.push_back(
                {std::to_string(big_n), format_sig17(critical.chi_c), value, error});
        }
        tables.push_back(std::move(nu_table));

        Table fits;
        fits.name = "qpt_fits";
        fits.columns = {"quantity", "amplitude", "exponent", "residual", "error"};
        const auto add_fit = [&fits](const std::string& name,
                                     const std::vector<std::pair<double, double>>& pts) {
            try {
                const auto fit = qpt::fit_power_law(pts);
                fits.rows.push_back({name, format_sig17(fit.amplitude),
                                     format_sig17(fit.exponent), format_sig17(fit.residual), ""});
            } catch (const std::exception& e) {
                fits.rows.push_back({name, "", "", "", e.what()});
            }
        };
        add_fit("nu_at_chi_c", nu_points);
        add_fit("delta_chi1", delta_points);
        tables.push_back(std::move(fits));
    } else {
        meta["jump_threshold"] = jump_threshold;
        Table jumps;
        jumps.name = "qpt_jumps";
        jumps.columns = {"N", "chi_c", "jump", "error"};
        for (const int big_n : n_list) {
            try {
                const auto curve = qpt::extract_curve(result, big_n, qpt::Observable::nu);
                const auto jump = qpt::detect_first_order_jump(curve, jump_threshold);
                jumps.rows.push_back({std::to_string(big_n), format_sig17(jump.chi_c),
                                      format_sig17(jump.jump), ""});
            } catch (const std::exception& e) {
                jumps.rows.push_back({std::to_string(big_n), "", "", e.what()});
            }
        }
        tables.push_back(std::move(jumps));

        Table slope;
        slope.name = "qpt_dnu";
        slope.columns = {"chi", "N", "dnu_dchi", "error"};
        for (const int big_n : n_list) {
            try {
                const auto curve = qpt::extract_curve(result, big_n, qpt::Observable::nu);
                for (const auto& [x, d] : qpt::finite_diff_derivative(curve))
                    slope.rows.push_back(
                        {format_sig17(x), std::to_string(big_n), format_sig17(d), ""});
            } catch (const std::exception& e) {
                slope.rows.push_back({"", std::to_string(big_n), "", e.what()});
            }
        }
        tables.push_back(std::move(slope));
    }

    write_tables(config.out_dir, tables, meta, config.format);
}

void cmd_relaxation(const RunConfig& config) {
    const json* eta_field = tfind(config.task, "eta_grid");
    const json* xi_field = tfind(config.task, "xi_grid");
    if (!eta_field) throw ConfigError("task.eta_grid: required");
    if (!xi_field) throw ConfigError("task.xi_grid: required");
    const auto eta_grid = parse_grid(*eta_field, "task.eta_grid");
    const auto xi_grid = parse_grid(*xi_field, "task.xi_grid");

    const models::DissipationChannel* linear = nullptr;
    for (const auto& channel : config.channels)
        if (channel.order == 1) {
            linear = &channel;
            break;
        }
    if (!linear) throw ConfigError("channels: the relaxation command needs a linear channel");
    const double n_th = task_number(config.task, "n_th", linear->n_th);

    const auto space = resolve_space(config);
    const auto result =
        qpt::relaxation_surface(eta_grid, xi_grid, linear->kappa, n_th, space, config.workers);
    require_some_success(result, "relaxation");

    Table table;
    table.name = "relaxation";
    table.columns = {"eta", "xi", "t_x", "error"};
    for (const auto& row : result.rows)
        table.rows.push_back({format_sig17(row.axis2.value_or(0.0)), format_sig17(row.axis_value),
                              row.t_x ? format_sig17(*row.t_x) : "", row.error});

    json meta = base_meta(config);
    meta["space"] = {{"n_fock", space.dim()}};
    meta["kappa"] = linear->kappa;
    meta["n_th"] = n_th;
    write_tables(config.out_dir, {table}, meta, config.format);
}

void cmd_converge(const RunConfig& config) {
    const int k = task_int(config.task, "k", 10);
    const double tol = task_number(config.task, "tol", 1e-6);
    const int start_n = task_int(config.task, "start", 10);
    // Default budget stops before truncations whose dense blocks outgrow
    // desk-scale memory; raise it explicitly for bigger machines.
    const int max_n = task_int(config.task, "max", 80);

    const int n_conv = qpt::convergence_N(config.model, config.channels, k, tol, start_n, max_n);

    Table table;
    table.name = "converge";
    table.columns = {"n_conv", "n_eff", "k", "tol"};
    table.rows.push_back({std::to_string(n_conv), format_sig17(double(n_conv) / 2.0),
                          std::to_string(k), format_sig17(tol)});

    write_tables(config.out_dir, {table}, base_meta(config), config.format);
}

void run_command(const std::string& name, const RunConfig& config) {
    if (name == "spectrum") return cmd_spectrum(config);
    if (name == "sweep") return cmd_sweep(config);
    if (name == "qpt") return cmd_qpt(config);
    if (name == "relaxation") return cmd_relaxation(config);
    if (name == "classify") return cmd_classify(config);
    if (name == "converge") return cmd_converge(config);
    throw ConfigError("unknown command: " + name);
}

}  // namespace liouspec::cli
