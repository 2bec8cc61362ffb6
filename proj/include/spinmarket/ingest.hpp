#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "text.hpp"

namespace spinmarket {

struct IngestResult {
    std::vector<double> closes;
    std::vector<std::int64_t> rejected_lines; // 1-based, header is line 1
    std::int64_t rows_total = 0;              // data rows seen
    int close_column = -1;
    char delimiter = ',';
};

// Reads a delimited daily-close table. The header row names the columns;
// the delimiter is whichever of comma, semicolon or tab the header uses
// most. Rows whose close is missing, unparseable or nonpositive are
// rejected individually and reported by line number.
inline IngestResult ingest_prices(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open price file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw DataError("empty price file: " + path);
    if (!header.empty() && header.back() == '\r') header.pop_back();

    IngestResult result;
    std::size_t best = 0;
    for (const char cand : {',', ';', '\t'}) {
        std::size_t count = 0;
        for (const char c : header) count += c == cand ? 1u : 0u;
        if (count > best) {
            best = count;
            result.delimiter = cand;
        }
    }
    if (best == 0) throw DataError("no delimiter found in header: " + path);

    const auto columns = split(header, result.delimiter);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (iequal(strip_quotes(trim(columns[i])), "close")) {
            result.close_column = static_cast<int>(i);
            break;
        }
    }
    if (result.close_column < 0) throw DataError("no close column in header: " + path);

    std::string line;
    std::int64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        ++result.rows_total;
        const auto fields = split(line, result.delimiter);
        double close = 0.0;
        if (static_cast<int>(fields.size()) <= result.close_column ||
            !parse_double(strip_quotes(trim(fields[static_cast<std::size_t>(result.close_column)])), close) ||
            !(close > 0.0)) {
            result.rejected_lines.push_back(line_no);
            continue;
        }
        result.closes.push_back(close);
    }
    if (result.closes.size() < 2)
        throw DataError("fewer than 2 valid close rows in: " + path);
    return result;
}

} // namespace spinmarket
