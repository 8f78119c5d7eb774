#pragma once

// Ingestion of stratified 2x2 count tables from delimited text.
//
// Format: UTF-8, comma-delimited, LF or CRLF line endings, no quoting
// (labels must not contain commas), required header
//   stratum,cases_exposed,controls_exposed,cases_unexposed,controls_unexposed
// and one stratum per subsequent line. Blank lines are ignored.

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "attrisk/errors.hpp"
#include "attrisk/types.hpp"

namespace attrisk {

inline constexpr const char* kDatasetHeader =
    "stratum,cases_exposed,controls_exposed,cases_unexposed,controls_unexposed";

struct Stratum {
    std::string label;
    TwoByTwoTable table;
};

struct StratifiedDataset {
    std::vector<Stratum> strata;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline count_t parse_count(const std::string& field, const char* column, int line_no) {
    count_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw ValidationError("line " + std::to_string(line_no) + ": cannot parse " +
                              column + " count from '" + field + "'");
    }
    if (value < 0) {
        throw ValidationError("line " + std::to_string(line_no) + ": " + column +
                              " count must be non-negative, got " + field);
    }
    return value;
}

}  // namespace detail

inline StratifiedDataset parse_dataset(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    StratifiedDataset dataset;
    std::set<std::string> seen_labels;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (!saw_header) {
            if (line != kDatasetHeader) {
                throw ValidationError("line " + std::to_string(line_no) +
                                      ": expected header '" + kDatasetHeader + "'");
            }
            saw_header = true;
            continue;
        }

        const auto fields = detail::split_fields(line);
        if (fields.size() != 5) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                                  std::to_string(fields.size()));
        }
        const std::string& label = fields[0];
        if (label.empty()) {
            throw ValidationError("line " + std::to_string(line_no) + ": empty stratum label");
        }
        if (!seen_labels.insert(label).second) {
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate stratum label '" +
                                  label + "'");
        }
        const count_t a = detail::parse_count(fields[1], "cases_exposed", line_no);
        const count_t b = detail::parse_count(fields[2], "controls_exposed", line_no);
        const count_t c = detail::parse_count(fields[3], "cases_unexposed", line_no);
        const count_t d = detail::parse_count(fields[4], "controls_unexposed", line_no);
        try {
            dataset.strata.push_back({label, TwoByTwoTable(a, b, c, d)});
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }

    if (!saw_header) throw ValidationError("empty input: missing header line");
    if (dataset.strata.empty()) throw ValidationError("no strata: need at least one data row");
    return dataset;
}

inline StratifiedDataset parse_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file: " + path);
    return parse_dataset(in);
}

}  // namespace attrisk
