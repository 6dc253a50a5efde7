// qpt.cpp — Sweep engine and transition detectors
#include "liouspec/qpt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "liouspec/parallel.hpp"
#include "liouspec/spectra.hpp"

namespace liouspec::qpt {

namespace {

// Vertex of the parabola through three points, clamped to [x0, x2].
// Collinear inputs fall back to the middle abscissa.
double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    const double scale = std::abs(y1 - y0) + std::abs(y1 - y2);
    if (std::abs(den) <= 1e-14 * scale * (std::abs(x1 - x0) + std::abs(x2 - x1))) return x1;
    const double vertex = x1 - 0.5 * num / den;
    return std::clamp(vertex, std::min(x0, x2), std::max(x0, x2));
}

void set_order2_drive(models::HamiltonianParams& params, double amplitude) {
    for (auto& term : params.squeeze)
        if (term.order == 2) {
            term.amplitude = amplitude;
            return;
        }
    params.squeeze.push_back({2, amplitude});
}

void apply_axis(models::HamiltonianParams& params,
                std::vector<models::DissipationChannel>& channels, Axis axis, double value) {
    switch (axis) {
        case Axis::xi:
        case Axis::chi: {
            const double unit = params.kerr != 0.0 ? params.kerr : 1.0;
            double amplitude = value * unit;
            if (axis == Axis::chi) {
                if (!params.scaled)
                    throw std::invalid_argument("sweep: chi axis requires a scaled model");
            } else if (params.scaled) {
                // Scaled models store the intensive drive chi = xi / N.
                amplitude /= double(params.scale_N);
            }
            set_order2_drive(params, amplitude);
            break;
        }
        case Axis::eta:
            if (params.kerr == 0.0)
                throw std::invalid_argument("sweep: eta axis requires kerr != 0");
            params.omega = value * params.kerr;
            break;
        case Axis::n_th: {
            bool touched = false;
            for (auto& channel : channels)
                if (channel.order == 1) {
                    channel.n_th = value;
                    touched = true;
                }
            if (!touched)
                throw std::invalid_argument("sweep: n_th axis requires a linear channel");
            break;
        }
    }
}

bool wants(const SweepConfig& config, Observable obs) {
    return std::find(config.observables.begin(), config.observables.end(), obs) !=
           config.observables.end();
}

SweepRow compute_row(const SweepConfig& config, double value, int big_n) {
    SweepRow row;
    row.axis_value = value;
    row.big_n = big_n;
    try {
        models::HamiltonianParams params = config.model;
        if (params.scaled) params.scale_N = big_n;
        auto channels = config.channels;
        apply_axis(params, channels, config.axis, value);
        models::validate(params);
        for (const auto& channel : channels) models::validate(channel);
        const fock::FockSpace space{big_n};

        const bool needs_spectrum = wants(config, Observable::gap) ||
                                    wants(config, Observable::hamiltonian_gap) ||
                                    wants(config, Observable::gap2) ||
                                    wants(config, Observable::t_x);
        if (needs_spectrum) {
            const auto points = spectra::liouvillian_spectrum(params, channels, space);
            const auto g = spectra::gaps(points);
            if (wants(config, Observable::gap)) row.gap = g.gap;
            if (wants(config, Observable::hamiltonian_gap)) row.hamiltonian_gap = g.hamiltonian_gap;
            if (wants(config, Observable::gap2)) row.gap2 = spectra::second_gap(points);
            if (wants(config, Observable::t_x)) row.t_x = spectra::relaxation_time(points);
        }
        if (wants(config, Observable::nu)) row.nu = order_parameter(params, channels, space);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

void validate(const SweepConfig& config) {
    if (config.grid.empty()) throw std::invalid_argument("sweep: grid must be nonempty");
    for (std::size_t i = 1; i < config.grid.size(); ++i)
        if (!(config.grid[i] > config.grid[i - 1]))
            throw std::invalid_argument("sweep: grid must be strictly increasing");
    if (config.n_list.empty()) throw std::invalid_argument("sweep: n_list must be nonempty");
    for (int n : config.n_list)
        if (n < 1) throw std::invalid_argument("sweep: n_list entries must be >= 1");
    if (config.observables.empty())
        throw std::invalid_argument("sweep: no observables requested");

    models::HamiltonianParams probe = config.model;
    if (probe.scaled) probe.scale_N = config.n_list.front();
    models::validate(probe);
    for (const auto& channel : config.channels) models::validate(channel);

    if (config.axis == Axis::chi && !config.model.scaled)
        throw std::invalid_argument("sweep: chi axis requires a scaled model");
    if (config.axis == Axis::eta && config.model.kerr == 0.0)
        throw std::invalid_argument("sweep: eta axis requires kerr != 0");
    if (config.axis == Axis::n_th) {
        bool linear = false;
        for (const auto& channel : config.channels) linear = linear || channel.order == 1;
        if (!linear) throw std::invalid_argument("sweep: n_th axis requires a linear channel");
    }
}

double order_parameter(const models::HamiltonianParams& params,
                       const std::vector<models::DissipationChannel>& channels,
                       fock::FockSpace space) {
    const double big_n = params.scaled ? double(params.scale_N) : double(space.n_max);
    if (big_n < 1.0) throw std::domain_error("order_parameter: N must be >= 1");
    const auto rho = spectra::steady_state(params, channels, space);
    return spectra::occupation(rho) / big_n;
}

SweepResult sweep(const SweepConfig& config) {
    validate(config);
    const std::size_t per_value = config.n_list.size();
    const std::size_t n_rows = config.grid.size() * per_value;
    SweepResult result;
    result.rows.resize(n_rows);
    parallel_for(
        n_rows,
        [&](std::size_t i) {
            const double value = config.grid[i / per_value];
            const int big_n = config.n_list[i % per_value];
            result.rows[i] = compute_row(config, value, big_n);
        },
        config.workers);
    return result;
}

ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::domain_error("fit_power_law: every point needs x > 0 and y > 0");
        const double lx = std::log(x);
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = double(points.size());
    const double den = n * sxx - sx * sx;
    if (!(den > 0.0)) throw std::domain_error("fit_power_law: abscissae must not coincide");

    ScalingFit fit;
    fit.exponent = (n * sxy - sx * sy) / den;
    const double log_amplitude = (sy - fit.exponent * sx) / n;
    fit.amplitude = std::exp(log_amplitude);
    for (const auto& [x, y] : points) {
        const double deviation = std::abs(std::log(y) - (log_amplitude + fit.exponent * std::log(x)));
        fit.residual = std::max(fit.residual, deviation);
    }
    return fit;
}

double detect_kissing_point(const models::HamiltonianParams& model,
                            const std::vector<double>& xi_grid, fock::FockSpace space) {
    if (xi_grid.size() < 2)
        throw std::invalid_argument("detect_kissing_point: need a grid of at least 2 points");
    for (std::size_t i = 1; i < xi_grid.size(); ++i)
        if (!(xi_grid[i] > xi_grid[i - 1]))
            throw std::invalid_argument("detect_kissing_point: grid must be strictly increasing");

    std::vector<double> gap(xi_grid.size());
    std::vector<models::DissipationChannel> no_channels;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        models::HamiltonianParams params = model;
        apply_axis(params, no_channels, Axis::xi, xi_grid[i]);
        const auto levels = models::closed_spectrum(params, space);
        if (levels.size() < 2)
            throw std::invalid_argument("detect_kissing_point: space has fewer than 2 levels");
        gap[i] = levels[1].energy - levels[0].energy;
    }

    const std::size_t k =
        std::size_t(std::min_element(gap.begin(), gap.end()) - gap.begin());
    if (k == xi_grid.size() - 1)
        throw std::runtime_error(
            "detect_kissing_point: minimum sits on the upper grid edge, extend the grid");
    if (k == 0) return xi_grid.front();  // boundary minimum, reported as-is
    return parabolic_vertex(xi_grid[k - 1], gap[k - 1], xi_grid[k], gap[k], xi_grid[k + 1],
                            gap[k + 1]);
}

CriticalPoint2nd detect_critical_point_2nd(const SweepResult& result,
                                           std::optional<double> chi_c_theory,
                                           double window_max) {
    std::map<int, std::vector<std::pair<double, double>>> curves;
    for (const auto& row : result.rows) {
        if (!row.error.empty() || !row.gap) continue;
        if (row.axis_value > window_max + 1e-12) continue;
        curves[row.big_n].emplace_back(row.axis_value, *row.gap);
    }
    if (curves.empty())
        throw std::invalid_argument("detect_critical_point_2nd: no usable gap rows");

    CriticalPoint2nd out;
    for (auto& [big_n, pts] : curves) {
        std::sort(pts.begin(), pts.end());
        if (pts.size() < 3)
            throw std::invalid_argument(
                "detect_critical_point_2nd: need at least 3 grid points inside the window");
        std::size_t k = 0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i].second > pts[k].second) k = i;
        if (k == 0 || k == pts.size() - 1)
            throw std::runtime_error(
                "detect_critical_point_2nd: gap maximum at the window edge for N=" +
                std::to_string(big_n));
        const double chi_max =
            parabolic_vertex(pts[k - 1].first, pts[k - 1].second, pts[k].first, pts[k].second,
                             pts[k + 1].first, pts[k + 1].second);
        out.branches.push_back({big_n, chi_max, 0.0});
    }

    out.chi_c_from_theory = chi_c_theory.has_value();
    out.chi_c = chi_c_theory ? *chi_c_theory : out.branches.back().chi_max;
    for (auto& branch : out.branches) branch.delta_chi1 = branch.chi_max - out.chi_c;
    return out;
}

FirstOrderJump detect_first_order_jump(const std::vector<std::pair<double, double>>& nu_vs_chi,
                                       double threshold) {
    if (nu_vs_chi.size() < 3)
        throw std::invalid_argument("detect_first_order_jump: need at least 3 points");

    std::vector<double> sizes;
    sizes.reserve(nu_vs_chi.size() - 1);
    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < nu_vs_chi.size(); ++i) {
        if (!(nu_vs_chi[i].first > nu_vs_chi[i - 1].first))
            throw std::invalid_argument("detect_first_order_jump: grid must be strictly increasing");
        const double step = nu_vs_chi[i].second - nu_vs_chi[i - 1].second;
        sizes.push_back(std::abs(step));
        if (step > best) {
            best = step;
            best_i = i;
        }
    }

    std::sort(sizes.begin(), sizes.end());
    const std::size_t h = sizes.size() / 2;
    const double median =
        sizes.size() % 2 == 1 ? sizes[h] : 0.5 * (sizes[h - 1] + sizes[h]);
    if (!(best > 0.0) || best <= threshold * median)
        throw std::runtime_error("detect_first_order_jump: no step exceeds the threshold");

    FirstOrderJump jump;
    jump.chi_c = 0.5 * (nu_vs_chi[best_i - 1].first + nu_vs_chi[best_i].first);
    jump.jump = best;
    return jump;
}

std::vector<std::pair<double, double>> finite_diff_derivative(
    const std::vector<std::pair<double, double>>& rows) {
    const std::size_t n = rows.size();
    if (n < 3) throw std::invalid_argument("finite_diff_derivative: need at least 3 points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(rows[i].first > rows[i - 1].first))
            throw std::invalid_argument("finite_diff_derivative: grid must be strictly increasing");

    std::vector<std::pair<double, double>> out(n);
    out[0] = {rows[0].first, (rows[1].second - rows[0].second) / (rows[1].first - rows[0].first)};
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = {rows[i].first,
                  (rows[i + 1].second - rows[i - 1].second) / (rows[i + 1].first - rows[i - 1].first)};
    out[n - 1] = {rows[n - 1].first,
                  (rows[n - 1].second - rows[n - 2].second) / (rows[n - 1].first - rows[n - 2].first)};
    return out;
}

std::vector<std::pair<double, double>> extract_curve(const SweepResult& result, int big_n,
                                                     Observable obs) {
    std::vector<std::pair<double, double>> out;
    for (const auto& row : result.rows) {
        if (row.big_n != big_n || !row.error.empty()) continue;
        std::optional<double> value;
        switch (obs) {
            case Observable::nu: value = row.nu; break;
            case Observable::gap: value = row.gap; break;
            case Observable::hamiltonian_gap: value = row.hamiltonian_gap; break;
            case Observable::gap2: value = row.gap2; break;
            case Observable::t_x: value = row.t_x; break;
        }
        if (value) out.emplace_back(row.axis_value, *value);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int convergence_N(const models::HamiltonianParams& params,
                  const std::vector<models::DissipationChannel>& channels, int k, double tol,
                  int start_n, int max_n) {
    if (k < 1) throw std::invalid_argument("convergence_N: k must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("convergence_N: tol must be > 0");
    if (start_n < 1 || max_n < 2 * start_n)
        throw std::invalid_argument("convergence_N: budget allows no doubling step");

    auto lowest = [&](int n_max) {
        const auto points =
            spectra::liouvillian_spectrum(params, channels, fock::FockSpace{n_max});
        auto values = spectra::values_of(points);
        if (int(values.size()) < k)
            throw std::invalid_argument("convergence_N: k exceeds the smallest spectrum");
        values.resize(std::size_t(k));  // points arrive sorted by |Re|
        return values;
    };

    auto current = lowest(start_n);
    for (int n = start_n; 2 * n <= max_n; n *= 2) {
        auto doubled = lowest(2 * n);
        if (spectra::match_spectra(current, doubled) < tol) return n;
        current = std::move(doubled);
    }
    throw std::runtime_error("convergence_N: not converged within the n_max budget");
}

SweepResult relaxation_surface(const std::vector<double>& eta_grid,
                               const std::vector<double>& xi_grid, double kappa, double n_th,
                               fock::FockSpace space, int workers) {
    if (eta_grid.empty() || xi_grid.empty())
        throw std::invalid_argument("relaxation_surface: grids must be nonempty");

    SweepResult result;
    result.rows.resize(eta_grid.size() * xi_grid.size());
    parallel_for(
        result.rows.size(),
        [&](std::size_t i) {
            const double eta = eta_grid[i / xi_grid.size()];
            const double xi = xi_grid[i % xi_grid.size()];
            SweepRow row;
            row.axis_value = xi;
            row.axis2 = eta;
            row.big_n = space.n_max;
            try {
                const auto params = models::HamiltonianParams::dimensionless(eta, xi);
                const std::vector<models::DissipationChannel> channels{{1, kappa, n_th}};
                const auto points = spectra::liouvillian_spectrum(params, channels, space);
                row.t_x = spectra::relaxation_time(points);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            result.rows[i] = row;
        },
        workers);
    return result;
}

}  // namespace liouspec::qpt
