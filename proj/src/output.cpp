// output.cpp — Tab-separated and structured table writers
#include "liouspec/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace liouspec::cli {

using nlohmann::json;

std::string format_sig17(double value) {
    if (value == 0.0) return "0";  // fold the two signed zeros together
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);  // binary keeps line endings fixed
    if (!out) throw std::runtime_error("output: cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("output: write failed for " + path.string());
}

std::string render_dsv(const Table& table, const json& meta) {
    std::string text = "# meta: " + meta.dump() + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) text += '\t';
        text += table.columns[c];
    }
    text += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::logic_error("output: row width mismatch in table " + table.name);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) text += '\t';
            text += row[c];
        }
        text += '\n';
    }
    return text;
}

std::string render_structured(const Table& table, const json& meta) {
    json doc;
    doc["meta"] = meta;
    doc["name"] = table.name;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    return doc.dump(2) + "\n";
}

}  // namespace

std::vector<std::string> write_tables(const std::filesystem::path& dir,
                                      const std::vector<Table>& tables, const json& meta,
                                      const std::string& format) {
    if (format != "dsv" && format != "structured")
        throw std::invalid_argument("output: unknown format " + format);
    std::filesystem::create_directories(dir);

    std::vector<std::string> written;
    json manifest_files = json::array();
    for (const auto& table : tables) {
        const std::string file = table.name + (format == "dsv" ? ".tsv" : ".json");
        const std::string text =
            format == "dsv" ? render_dsv(table, meta) : render_structured(table, meta);
        write_text(dir / file, text);
        written.push_back(file);
        manifest_files.push_back(
            {{"file", file}, {"table", table.name}, {"columns", table.columns},
             {"rows", table.rows.size()}});
    }

    json manifest;
    manifest["meta"] = meta;
    manifest["files"] = manifest_files;
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    written.push_back("manifest.json");
    return written;
}

}  // namespace liouspec::cli
