// run_config.cpp — JSON parsing and validation for run configurations
#include "liouspec/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace liouspec::cli {

using nlohmann::json;

namespace {

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void require_object(const json& value, const std::string& path) {
    if (!value.is_object()) throw ConfigError(path + ": expected an object");
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key)) throw ConfigError(path + "." + key + ": unknown field");
}

double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) throw ConfigError(path + ": expected a number");
    return value.get<double>();
}

int as_int(const json& value, const std::string& path) {
    if (!value.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return value.get<int>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& path) {
    const json* v = find(obj, key);
    return v ? as_number(*v, path + "." + key) : fallback;
}

// The model section accepts two disjoint spellings: explicit couplings
// (omega, kerr, epsilon2, squeeze) or the dimensionless Kerr form (eta with
// xi or chi, kerr fixed at 1).
models::HamiltonianParams parse_model(const json& obj) {
    require_object(obj, "model");
    reject_unknown(obj, "model",
                   {"omega", "kerr", "epsilon2", "squeeze", "eta", "xi", "chi", "scaled", "N"});

    const bool form_a = find(obj, "omega") || find(obj, "kerr") || find(obj, "epsilon2") ||
                        find(obj, "squeeze");
    const bool form_b = find(obj, "eta") || find(obj, "xi") || find(obj, "chi");
    if (form_a && form_b)
        throw ConfigError("model: mixes {omega, kerr, epsilon2} with {eta, xi}; use one form");
    if (!form_a && !form_b)
        throw ConfigError("model: give either {omega, kerr, epsilon2} or {eta, xi}");

    models::HamiltonianParams params;

    if (find(obj, "scaled")) {
        const json& s = *find(obj, "scaled");
        if (!s.is_boolean()) throw ConfigError("model.scaled: expected a boolean");
        params.scaled = s.get<bool>();
    }
    if (find(obj, "N")) {
        params.scale_N = as_int(*find(obj, "N"), "model.N");
        if (params.scale_N < 1) throw ConfigError("model.N: must be >= 1");
    }
    if (params.scaled && !find(obj, "N")) throw ConfigError("model.N: required when scaled");

    if (form_a) {
        params.omega = number_or(obj, "omega", 0.0, "model");
        params.kerr = number_or(obj, "kerr", 0.0, "model");
        const double eps2 = number_or(obj, "epsilon2", 0.0, "model");
        if (eps2 != 0.0) params.squeeze.push_back({2, eps2});
        if (const json* sq = find(obj, "squeeze")) {
            if (!sq->is_array()) throw ConfigError("model.squeeze: expected an array");
            int i = 0;
            for (const auto& term : *sq) {
                const std::string path = "model.squeeze[" + std::to_string(i++) + "]";
                require_object(term, path);
                reject_unknown(term, path, {"order", "amplitude"});
                models::SqueezeTerm parsed;
                if (find(term, "order")) parsed.order = as_int(*find(term, "order"), path + ".order");
                if (parsed.order < 1) throw ConfigError(path + ".order: must be >= 1");
                if (!find(term, "amplitude")) throw ConfigError(path + ".amplitude: required");
                parsed.amplitude = as_number(*find(term, "amplitude"), path + ".amplitude");
                params.squeeze.push_back(parsed);
            }
        }
    } else {
        if (!find(obj, "eta")) throw ConfigError("model.eta: required in the dimensionless form");
        const double eta = as_number(*find(obj, "eta"), "model.eta");
        if (find(obj, "xi") && find(obj, "chi"))
            throw ConfigError("model: give xi or chi, not both");
        params.omega = eta;
        params.kerr = 1.0;
        if (find(obj, "chi")) {
            if (!params.scaled) throw ConfigError("model.chi: requires \"scaled\": true");
            const double chi = as_number(*find(obj, "chi"), "model.chi");
            if (chi != 0.0) params.squeeze.push_back({2, chi});
        } else if (find(obj, "xi")) {
            double amp = as_number(*find(obj, "xi"), "model.xi");
            if (params.scaled) amp /= double(params.scale_N);  // stored drive is intensive
            if (amp != 0.0) params.squeeze.push_back({2, amp});
        }
    }

    try {
        models::validate(params);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return params;
}

std::vector<models::DissipationChannel> parse_channels(const json* arr) {
    std::vector<models::DissipationChannel> channels;
    if (!arr) return channels;
    if (!arr->is_array()) throw ConfigError("channels: expected an array");
    int i = 0;
    for (const auto& entry : *arr) {
        const std::string path = "channels[" + std::to_string(i++) + "]";
        require_object(entry, path);
        reject_unknown(entry, path, {"order", "kappa", "n_th"});
        models::DissipationChannel channel;
        if (find(entry, "order")) channel.order = as_int(*find(entry, "order"), path + ".order");
        if (!find(entry, "kappa")) throw ConfigError(path + ".kappa: required");
        channel.kappa = as_number(*find(entry, "kappa"), path + ".kappa");
        channel.n_th = number_or(entry, "n_th", 0.0, path);
        try {
            models::validate(channel);
        } catch (const std::exception& e) {
            throw ConfigError(path + ": " + e.what());
        }
        channels.push_back(channel);
    }
    return channels;
}

SpaceConfig parse_space(const json* obj, const models::HamiltonianParams& model) {
    SpaceConfig space;
    if (!obj) {
        // A scaled model pins the natural truncation at N + 1 levels.
        if (model.scaled) {
            space.n_fock = model.scale_N + 1;
            return space;
        }
        throw ConfigError("space: required; give n_fock or auto");
    }
    require_object(*obj, "space");
    reject_unknown(*obj, "space", {"n_fock", "auto"});
    const json* explicit_dim = find(*obj, "n_fock");
    const json* automatic = find(*obj, "auto");
    if (explicit_dim && automatic) throw ConfigError("space: give n_fock or auto, not both");
    if (explicit_dim) {
        space.n_fock = as_int(*explicit_dim, "space.n_fock");
        if (space.n_fock < 2) throw ConfigError("space.n_fock: must be >= 2");
        return space;
    }
    if (!automatic) throw ConfigError("space: give n_fock or auto");
    require_object(*automatic, "space.auto");
    reject_unknown(*automatic, "space.auto", {"k", "tol"});
    space.automatic = true;
    if (find(*automatic, "k")) space.auto_k = as_int(*find(*automatic, "k"), "space.auto.k");
    if (space.auto_k < 1) throw ConfigError("space.auto.k: must be >= 1");
    space.auto_tol = number_or(*automatic, "tol", space.auto_tol, "space.auto");
    if (!(space.auto_tol > 0.0)) throw ConfigError("space.auto.tol: must be > 0");
    return space;
}

json normalized(const RunConfig& config) {
    json model;
    model["omega"] = config.model.omega;
    model["kerr"] = config.model.kerr;
    json squeeze = json::array();
    for (const auto& term : config.model.squeeze)
        squeeze.push_back({{"order", term.order}, {"amplitude", term.amplitude}});
    model["squeeze"] = squeeze;
    model["scaled"] = config.model.scaled;
    if (config.model.scaled) model["N"] = config.model.scale_N;

    json channels = json::array();
    for (const auto& channel : config.channels)
        channels.push_back(
            {{"order", channel.order}, {"kappa", channel.kappa}, {"n_th", channel.n_th}});

    json space;
    if (config.space.automatic)
        space["auto"] = {{"k", config.space.auto_k}, {"tol", config.space.auto_tol}};
    else
        space["n_fock"] = config.space.n_fock;

    return json{{"model", model},
                {"channels", channels},
                {"space", space},
                {"task", config.task},
                {"output", {{"path", config.out_dir}, {"format", config.format}}},
                {"workers", config.workers}};
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    require_object(root, "config");
    reject_unknown(root, "config", {"model", "channels", "space", "task", "output", "workers"});

    RunConfig config;
    const json* model = find(root, "model");
    if (!model) throw ConfigError("model: required");
    config.model = parse_model(*model);
    config.channels = parse_channels(find(root, "channels"));
    config.space = parse_space(find(root, "space"), config.model);

    if (const json* task = find(root, "task")) {
        require_object(*task, "task");
        config.task = *task;
    } else {
        config.task = json::object();
    }

    if (const json* output = find(root, "output")) {
        require_object(*output, "output");
        reject_unknown(*output, "output", {"path", "format"});
        if (find(*output, "path")) {
            if (!find(*output, "path")->is_string())
                throw ConfigError("output.path: expected a string");
            config.out_dir = find(*output, "path")->get<std::string>();
        }
        if (find(*output, "format")) {
            if (!find(*output, "format")->is_string())
                throw ConfigError("output.format: expected a string");
            config.format = find(*output, "format")->get<std::string>();
        }
    }
    if (config.format != "dsv" && config.format != "structured")
        throw ConfigError("output.format: expected \"dsv\" or \"structured\"");

    if (const json* workers = find(root, "workers")) {
        config.workers = as_int(*workers, "workers");
        if (config.workers < 0) throw ConfigError("workers: must be >= 0");
    }

    config.resolved = normalized(config);
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

}  // namespace liouspec::cli
