// output.hpp — Deterministic tabular output and run manifests
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace liouspec::cli {

// Doubles are rendered once, with 17 significant digits, so identical runs
// produce byte-identical files.
std::string format_sig17(double value);

struct Table {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // cells pre-rendered
};

// Writes one file per table plus manifest.json under dir, creating it if
// needed. format "dsv" gives tab-separated files with '#' front matter;
// "structured" gives one JSON document per table. Both embed `meta` (the
// resolved configuration, version, and any run constants), so every file is
// self-describing. Returns the names of the files written.
std::vector<std::string> write_tables(const std::filesystem::path& dir,
                                      const std::vector<Table>& tables,
                                      const nlohmann::json& meta, const std::string& format);

}  // namespace liouspec::cli
