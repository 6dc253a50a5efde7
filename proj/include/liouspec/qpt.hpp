// qpt.hpp — Parameter sweeps, transition detectors, and finite-size scaling fits
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liouspec/fock.hpp"
#include "liouspec/models.hpp"

namespace liouspec::qpt {

// Swept parameter. xi sets the order-2 drive (eps2 = xi * kerr, or plain
// eps2 when kerr == 0); chi is the intensive drive and needs a scaled model;
// eta moves omega at fixed kerr; n_th retunes every linear channel.
enum class Axis { xi, chi, eta, n_th };

enum class Observable { nu, gap, hamiltonian_gap, gap2, t_x };

struct SweepConfig {
    models::HamiltonianParams model;
    std::vector<models::DissipationChannel> channels;
    Axis axis = Axis::xi;
    std::vector<double> grid;  // strictly increasing axis values
    std::vector<int> n_list;   // n_max per row (doubles as scale_N when scaled)
    std::vector<Observable> observables;
    int workers = 0;  // 0: one per core
};

void validate(const SweepConfig& config);

struct SweepRow {
    double axis_value = 0.0;
    std::optional<double> axis2;  // second coordinate for surface scans
    int big_n = 0;
    std::optional<double> nu;
    std::optional<double> gap;              // -Re(lambda_1)
    std::optional<double> hamiltonian_gap;  // |Im(lambda_1)|
    std::optional<double> gap2;             // -Re(lambda_2)
    std::optional<double> t_x;              // 1 / gap, in us when kappa is 1/us
    std::string error;                      // nonempty when this row failed
};

struct SweepResult {
    std::vector<SweepRow> rows;  // grid-major, n_list-minor, always complete
};

// Steady-state occupation fraction Tr[rho_ss n] / N where N is scale_N for
// scaled models and n_max otherwise.
double order_parameter(const models::HamiltonianParams& params,
                       const std::vector<models::DissipationChannel>& channels,
                       fock::FockSpace space);

// Evaluates the requested observables over grid x n_list. Rows are
// independent and run concurrently; failures are recorded in the row's error
// field and do not stop the sweep. Row order is deterministic and identical
// for every worker count.
SweepResult sweep(const SweepConfig& config);

// Least-squares fit of y = amplitude * x^exponent in log-log space.
struct ScalingFit {
    double amplitude = 0.0;
    double exponent = 0.0;
    double residual = 0.0;  // max |log y - log fit| over the inputs
};

// Requires at least 3 points, all with x > 0 and y > 0.
ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points);

// Location of the minimum of E1 - E0 for the closed Hamiltonian over the
// drive grid, refined by parabolic interpolation around interior minima.
// A minimum on the left edge is reported as-is (eta = 0 touches at xi = 0);
// a minimum on the right edge means the grid failed to bracket and raises.
double detect_kissing_point(const models::HamiltonianParams& model,
                            const std::vector<double>& xi_grid, fock::FockSpace space);

struct CriticalBranch {
    int big_n = 0;
    double chi_max = 0.0;     // location of the gap maximum for this N
    double delta_chi1 = 0.0;  // chi_max - chi_c
};

struct CriticalPoint2nd {
    double chi_c = 0.0;
    bool chi_c_from_theory = false;
    std::vector<CriticalBranch> branches;  // ascending in big_n
};

// Second-order transition marker from gap rows of a chi (or xi) sweep.
// chi_max is the interior maximum of the gap per N inside
// [grid start, window_max]; the window keeps the detector away from the
// ultrastrong regime where the gap turns over a second time. chi_c is the
// supplied theoretical value when given, otherwise the chi_max of the
// largest N.
CriticalPoint2nd detect_critical_point_2nd(const SweepResult& result,
                                           std::optional<double> chi_c_theory = std::nullopt,
                                           double window_max = 0.8);

struct FirstOrderJump {
    double chi_c = 0.0;  // midpoint of the jump interval
    double jump = 0.0;   // step height
};

// Largest single-step increase of nu(chi), accepted when it exceeds
// `threshold` times the median absolute step.
FirstOrderJump detect_first_order_jump(const std::vector<std::pair<double, double>>& nu_vs_chi,
                                       double threshold = 5.0);

// dy/dx by central differences at interior points, one-sided at the ends.
std::vector<std::pair<double, double>> finite_diff_derivative(
    const std::vector<std::pair<double, double>>& rows);

// One (axis value, observable) curve at fixed N out of a sweep, sorted by
// axis value; failed rows are skipped.
std::vector<std::pair<double, double>> extract_curve(const SweepResult& result, int big_n,
                                                     Observable obs);

// Smallest n_max on a doubling schedule from start_n whose k lowest-|Re|
// eigenvalues move less than tol when n_max doubles. Throws when max_n is
// exhausted before that happens.
int convergence_N(const models::HamiltonianParams& params,
                  const std::vector<models::DissipationChannel>& channels, int k, double tol,
                  int start_n = 10, int max_n = 80);

// Relaxation time over an (eta, xi) grid at fixed linear dissipation,
// kerr = 1. Rows carry axis_value = xi and axis2 = eta, eta-major order.
SweepResult relaxation_surface(const std::vector<double>& eta_grid,
                               const std::vector<double>& xi_grid, double kappa, double n_th,
                               fock::FockSpace space, int workers = 0);

}  // namespace liouspec::qpt
