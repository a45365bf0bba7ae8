#pragma once
// Output plumbing shared by the CLI: 9-significant-digit real formatting,
// table rendering to aligned text / CSV / JSON, run manifests, and the
// key=value config file.  Everything renders through fixed C-locale
// formatting so repeated runs are byte-identical.

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "shortlist/version.hpp"

namespace shortlist {

using json = nlohmann::ordered_json;

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// One output table: header plus rows of JSON scalars (number/string/bool),
// so the same structure renders to all three formats.
struct OutputTable {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;

    void add_row(std::vector<json> row) { rows.push_back(std::move(row)); }
};

namespace detail {

inline std::string render_cell(const json& c) {
    if (c.is_number_float()) return format_real(c.get<double>());
    if (c.is_number_integer()) return std::to_string(c.get<long long>());
    if (c.is_number_unsigned()) return std::to_string(c.get<unsigned long long>());
    if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
    if (c.is_string()) return c.get<std::string>();
    return c.dump();
}

}  // namespace detail

inline std::string to_csv(const OutputTable& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.header.size(); ++i)
        os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << detail::render_cell(row[i]);
        os << '\n';
    }
    return os.str();
}

inline std::string to_json_text(const OutputTable& t) {
    json arr = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i)
            obj[t.header[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

inline std::string to_aligned_text(const OutputTable& t) {
    std::vector<std::size_t> width(t.header.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
    cells.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        std::vector<std::string> r;
        r.reserve(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
            r.push_back(detail::render_cell(row[i]));
            if (i < width.size() && r.back().size() > width[i]) width[i] = r.back().size();
        }
        cells.push_back(std::move(r));
    }
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << "  ";
            os << r[i];
            for (std::size_t pad = r[i].size(); pad < width[i] && i + 1 < r.size(); ++pad)
                os << ' ';
        }
        os << '\n';
    };
    emit(t.header);
    for (const auto& r : cells) emit(r);
    return os.str();
}

inline std::string render_table(const OutputTable& t, const std::string& format) {
    if (format == "csv") return to_csv(t);
    if (format == "json") return to_json_text(t);
    if (format == "table") return to_aligned_text(t);
    throw std::invalid_argument("unknown format: " + format);
}

// Manifest written next to every file output: what command produced which
// files from which parameters, under which tool version.
inline void write_manifest(const std::string& out_path, const std::string& command,
                           const json& parameters, const std::vector<std::string>& outputs) {
    json m = json::object();
    m["command"] = command;
    m["parameters"] = parameters;
    m["tool_version"] = SHORTLIST_VERSION;
    m["outputs"] = outputs;
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write manifest: " + out_path);
    f << m.dump(2) << '\n';
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file: " + path);
    f << text;
}

// key=value config file; '#' starts a comment, blank lines ignored.
// Returned as a string map; the CLI layers it between built-in defaults and
// explicit flags.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

}  // namespace shortlist
