#include "qednp/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qednp/errors.hpp"

namespace qednp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) out.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

CsvTable parse_csv(const std::string& text, const std::string& source) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s.front() == '#') {
            t.comments.push_back(trim(s.substr(1)));
            continue;
        }
        auto fields = split(s);
        if (!have_header) {
            t.header = fields;
            t.columns.assign(fields.size(), {});
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size())
            throw DomainError(source + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(t.header.size()) + " fields");
        for (std::size_t i = 0; i < fields.size(); ++i) {
            double v = 0.0;
            const auto& f = fields[i];
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || p != f.data() + f.size())
                throw DomainError(source + ":" + std::to_string(lineno) + ": not a number: '" + f + "'");
            t.columns[i].push_back(v);
        }
    }
    if (!have_header) throw DomainError(source + ": missing header row");
    return t;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_csv(ss.str(), path);
}

std::string format_number(double v) {
    if (v == 0.0) return "0";  // folds -0
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string to_csv_text(const CsvTable& t) {
    std::string out;
    for (const auto& c : t.comments) out += "# " + c + "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (i) out += ',';
            out += format_number(t.columns[i][r]);
        }
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw DomainError("cannot write " + tmp.string());
        f << text;
        if (!f) throw DomainError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace qednp
