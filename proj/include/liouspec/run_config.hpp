// run_config.hpp — JSON run configuration for the command-line tool
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "liouspec/models.hpp"

namespace liouspec::cli {

// Raised for malformed or inconsistent configuration; the message names the
// offending field. The tool maps it to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncation choice: an explicit dimension, or an automatic search that
// doubles n_max until the auto_k lowest eigenvalues settle within auto_tol.
struct SpaceConfig {
    bool automatic = false;
    int n_fock = 0;
    int auto_k = 10;
    double auto_tol = 1e-6;
};

// A full run description, parsed from a JSON document of the shape
//
//   {
//     "model":    { "omega": -1.0, "kerr": 0.0, "epsilon2": 0.0 }   (form A)
//                 or { "eta": -1.0, "xi": 2.0 }                     (form B, kerr = 1)
//                 plus optional "scaled": true, "N": 40,
//                 and form A may list extra drives "squeeze": [{"order","amplitude"}],
//     "channels": [ { "order": 1, "kappa": 0.1, "n_th": 0.0 } ],
//     "space":    { "n_fock": 40 }  or  { "auto": { "k": 10, "tol": 1e-6 } },
//     "task":     { ... subcommand-specific ... },
//     "output":   { "path": "out", "format": "dsv" },
//     "workers":  0
//   }
//
// Exactly one model form must be used. n_fock must be >= 2 when explicit.
struct RunConfig {
    models::HamiltonianParams model;
    std::vector<models::DissipationChannel> channels;
    SpaceConfig space;
    nlohmann::json task;  // echoed through untouched; commands read their keys
    std::string out_dir = "out";
    std::string format = "dsv";
    int workers = 0;
    nlohmann::json resolved;  // normalized config embedded in every output
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

}  // namespace liouspec::cli
