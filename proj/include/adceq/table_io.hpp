#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "adceq/common.hpp"

namespace adceq {

/// Column kinds pin the text formatting so identical data always serializes
/// to identical bytes: dB values as fixed 4 decimals, other reals as
/// 10-significant-digit scientific, integers and text verbatim.
enum class ColKind { text, integer, real, decibel };

struct Column {
    std::string name;
    ColKind kind = ColKind::text;
};

/// A cell is empty (monostate), text, integer, or floating point.
using Cell = std::variant<std::monostate, std::string, long long, double>;

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;  // ordered key/value
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline std::string format_double(double v, ColKind kind) {
    char buf[48];
    if (kind == ColKind::decibel)
        std::snprintf(buf, sizeof buf, "%.4f", v);
    else
        std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

inline std::string format_cell(const Cell& cell, ColKind kind) {
    if (std::holds_alternative<std::monostate>(cell)) return "";
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    return format_double(std::get<double>(cell), kind);
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

/// CSV with '#'-prefixed metadata lines, one header row, LF line endings.
inline void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.meta) os << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c].name;
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) os << ",";
            if (c < row.size())
                os << detail::format_cell(row[c], t.columns[c].kind);
        }
        os << "\n";
    }
}

/// JSON mirror of the CSV: {"meta": {...}, "rows": [{col: value, ...}]}.
/// Numbers use the same fixed formats as the CSV cells.
inline void write_json(std::ostream& os, const Table& t) {
    os << "{\n  \"meta\": {";
    for (std::size_t i = 0; i < t.meta.size(); ++i) {
        os << (i ? ", " : "") << "\"" << detail::json_escape(t.meta[i].first)
           << "\": \"" << detail::json_escape(t.meta[i].second) << "\"";
    }
    os << "},\n  \"rows\": [\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << "    {";
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            os << (c ? ", " : "") << "\"" << detail::json_escape(t.columns[c].name)
               << "\": ";
            const Cell& cell = c < t.rows[r].size() ? t.rows[r][c] : Cell{};
            if (std::holds_alternative<std::monostate>(cell)) {
                os << "null";
            } else if (const auto* s = std::get_if<std::string>(&cell)) {
                os << "\"" << detail::json_escape(*s) << "\"";
            } else {
                os << detail::format_cell(cell, t.columns[c].kind);
            }
        }
        os << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

enum class TableFormat { csv, json };

/// Write a table to a file; throws with the path on failure.
inline void write_table_file(const std::string& path, TableFormat fmt, const Table& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    if (fmt == TableFormat::csv)
        write_csv(os, t);
    else
        write_json(os, t);
    os.flush();
    if (!os) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace adceq
