// commands.hpp — Subcommand implementations behind the command-line tool
#pragma once

#include <string>

#include "liouspec/run_config.hpp"

namespace liouspec::cli {

// Each command reads config.task for its own keys, runs the computation, and
// writes its tables plus manifest.json under config.out_dir. Configuration
// problems raise ConfigError; numerical failures raise std::runtime_error.

// Full eigenvalue table; oracle columns and ladder labels when applicable.
// task: { "cluster": false }
void cmd_spectrum(const RunConfig& config);

// Observables over an axis grid. task: { "axis": "xi", "grid": [...] or
// {"start","stop","step"}, "N_list": [n_max...], "observables": [...] }
void cmd_sweep(const RunConfig& config);

// Scaled-model transition pipeline. task: { "order": 2 or 1, "grid": ...,
// "N_list": [...], "chi_c": number (order 2, optional) }
void cmd_qpt(const RunConfig& config);

// Relaxation time over an (eta, xi) grid. task: { "eta_grid": [...],
// "xi_grid": [...], "n_th": optional override }
void cmd_relaxation(const RunConfig& config);

// Ladder classification table. task: { "j": 2 or 2.5, "kappa": optional }
void cmd_classify(const RunConfig& config);

// Truncation search. task: { "k": 10, "tol": 1e-6, "start": 10, "max": 320 }
void cmd_converge(const RunConfig& config);

// Dispatches to the command named by the subcommand.
void run_command(const std::string& name, const RunConfig& config);

}  // namespace liouspec::cli
