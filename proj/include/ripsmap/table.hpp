#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "io.hpp"
#include "point_cloud.hpp"

namespace ripsmap {

enum class Encoding { numeric, ordinal, one_hot, binary, label };

struct ColumnSpec {
    std::string name;
    Encoding encoding = Encoding::numeric;
    std::vector<std::string> levels;  // ordinal / one-hot
    std::string positive;             // binary
};

// Declarative description of how to turn a delimited text table into a point
// cloud. Rows with a null value ("" or "NA") in any encoded column are
// dropped. See the README for the JSON schema.
struct EncodingSpec {
    char delimiter = ',';
    std::vector<ColumnSpec> columns;

    void validate() const {
        bool has_feature = false;
        for (const auto& col : columns) {
            if (col.encoding == Encoding::ordinal || col.encoding == Encoding::one_hot) {
                if (col.levels.empty())
                    throw InvalidArgument("column " + col.name + ": levels required");
                std::set<std::string> uniq(col.levels.begin(), col.levels.end());
                if (uniq.size() != col.levels.size())
                    throw InvalidArgument("column " + col.name + ": duplicate levels");
            }
            if (col.encoding == Encoding::binary && col.positive.empty())
                throw InvalidArgument("column " + col.name + ": positive level required");
            if (col.encoding != Encoding::label) has_feature = true;
        }
        if (!has_feature)
            throw InvalidArgument("encoding spec declares no feature columns");
    }

    static EncodingSpec from_json(const nlohmann::json& j) {
        EncodingSpec spec;
        if (j.contains("delimiter")) {
            const std::string d = j.at("delimiter").get<std::string>();
            if (d.size() != 1)
                throw InvalidArgument("delimiter must be a single character");
            spec.delimiter = d[0];
        }
        for (const auto& jc : j.at("columns")) {
            ColumnSpec col;
            col.name = jc.at("name").get<std::string>();
            const std::string enc = jc.at("encoding").get<std::string>();
            if (enc == "numeric") col.encoding = Encoding::numeric;
            else if (enc == "ordinal") col.encoding = Encoding::ordinal;
            else if (enc == "one-hot") col.encoding = Encoding::one_hot;
            else if (enc == "binary") col.encoding = Encoding::binary;
            else if (enc == "label") col.encoding = Encoding::label;
            else throw InvalidArgument("column " + col.name + ": unknown encoding '" + enc + "'");
            if (jc.contains("levels"))
                col.levels = jc.at("levels").get<std::vector<std::string>>();
            if (jc.contains("positive"))
                col.positive = jc.at("positive").get<std::string>();
            spec.columns.push_back(std::move(col));
        }
        spec.validate();
        return spec;
    }

    static EncodingSpec from_json_file(const std::filesystem::path& path) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_file(path));
        } catch (const nlohmann::json::exception& e) {
            throw IoError(path.string() + ": " + e.what());
        }
        return from_json(j);
    }
};

namespace detail {

inline bool is_null_field(const std::string& value) {
    return value.empty() || value == "NA";
}

}  // namespace detail

// Parse a delimited text file (header row required) into a PointCloud per
// the encoding spec. Row order of the surviving rows is preserved; error
// messages carry 1-based file line numbers.
inline PointCloud load_table(const std::filesystem::path& path,
                             const EncodingSpec& spec) {
    spec.validate();
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw InvalidArgument(path.string() + ": empty file, header row required");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_line(line, spec.delimiter);
    std::map<std::string, std::size_t> col_index;
    for (std::size_t i = 0; i < header.size(); ++i) col_index[header[i]] = i;

    std::vector<std::size_t> src;  // file column of each spec column
    Eigen::Index width = 0;
    for (const auto& col : spec.columns) {
        auto it = col_index.find(col.name);
        if (it == col_index.end())
            throw InvalidArgument("missing-column: '" + col.name + "' not in header");
        src.push_back(it->second);
        switch (col.encoding) {
            case Encoding::numeric:
            case Encoding::ordinal:
            case Encoding::binary: width += 1; break;
            case Encoding::one_hot: width += static_cast<Eigen::Index>(col.levels.size()); break;
            case Encoding::label: break;
        }
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    bool has_label_col = std::any_of(spec.columns.begin(), spec.columns.end(),
                                     [](const ColumnSpec& c) { return c.encoding == Encoding::label; });
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_line(line, spec.delimiter);
        if (fields.size() != header.size())
            throw InvalidArgument("parse-failure at row " + std::to_string(lineno) +
                                  ": expected " + std::to_string(header.size()) +
                                  " fields, got " + std::to_string(fields.size()));

        bool drop = false;
        for (std::size_t c = 0; c < spec.columns.size(); ++c) {
            if (detail::is_null_field(fields[src[c]])) {
                drop = true;
                break;
            }
        }
        if (drop) continue;

        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(width));
        std::string label;
        for (std::size_t c = 0; c < spec.columns.size(); ++c) {
            const ColumnSpec& col = spec.columns[c];
            const std::string& value = fields[src[c]];
            switch (col.encoding) {
                case Encoding::numeric: {
                    try {
                        row.push_back(parse_double(value));
                    } catch (const InvalidArgument&) {
                        throw InvalidArgument("parse-failure at row " + std::to_string(lineno) +
                                              ", column '" + col.name + "': '" + value + "'");
                    }
                    break;
                }
                case Encoding::ordinal: {
                    auto it = std::find(col.levels.begin(), col.levels.end(), value);
                    if (it == col.levels.end())
                        throw InvalidArgument("unknown-level at row " + std::to_string(lineno) +
                                              ", column '" + col.name + "': '" + value + "'");
                    row.push_back(static_cast<double>(it - col.levels.begin()));
                    break;
                }
                case Encoding::one_hot: {
                    auto it = std::find(col.levels.begin(), col.levels.end(), value);
                    if (it == col.levels.end())
                        throw InvalidArgument("unknown-level at row " + std::to_string(lineno) +
                                              ", column '" + col.name + "': '" + value + "'");
                    for (std::size_t l = 0; l < col.levels.size(); ++l)
                        row.push_back(col.levels[l] == value ? 1.0 : 0.0);
                    break;
                }
                case Encoding::binary:
                    row.push_back(value == col.positive ? 1.0 : 0.0);
                    break;
                case Encoding::label:
                    label = value;
                    break;
            }
        }
        rows.push_back(std::move(row));
        if (has_label_col) labels.push_back(label);
    }

    PointCloud cloud;
    cloud.points.resize(static_cast<Eigen::Index>(rows.size()), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (Eigen::Index j = 0; j < width; ++j)
            cloud.points(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    cloud.labels = std::move(labels);
    cloud.validate();
    return cloud;
}

}  // namespace ripsmap
