#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "errors.hpp"
#include "point_cloud.hpp"

namespace ripsmap {

// Shortest decimal representation that round-trips exactly; infinities come
// out as "inf"/"-inf". Locale-independent.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw InvalidArgument("not a number: '" + std::string(text) + "'");
    return value;
}

inline std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delim)) fields.push_back(field);
    if (!line.empty() && line.back() == delim) fields.emplace_back();
    return fields;
}

// Write-temp-then-rename so partially written files never appear under the
// final name.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Headerless numeric CSV, one point per row, full precision.
inline std::string points_to_csv(const PointCloud& cloud) {
    std::string out;
    for (Eigen::Index i = 0; i < cloud.size(); ++i) {
        for (Eigen::Index j = 0; j < cloud.dim(); ++j) {
            if (j) out += ',';
            out += format_double(cloud.points(i, j));
        }
        out += '\n';
    }
    return out;
}

inline PointCloud points_from_csv(const std::string& text) {
    PointCloud cloud;
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& f : split_line(line, ','))
            row.push_back(parse_double(f));
        if (!rows.empty() && row.size() != rows.front().size())
            throw InvalidArgument("row " + std::to_string(lineno) +
                                  ": inconsistent column count");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        cloud.points.resize(0, 0);
        return cloud;
    }
    cloud.points.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            cloud.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
    return cloud;
}

inline std::string labels_to_csv(const std::vector<std::string>& labels) {
    std::string out;
    for (const auto& l : labels) {
        out += l;
        out += '\n';
    }
    return out;
}

inline std::vector<std::string> labels_from_csv(const std::string& text) {
    std::vector<std::string> labels;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        labels.push_back(line);
    }
    return labels;
}

}  // namespace ripsmap
