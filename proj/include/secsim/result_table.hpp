#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace secsim {

/// Shortest decimal representation that re-parses to the identical double.
inline std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf, res.ptr);
}

/// Plot-ready table of named numeric columns. Flags are carried as 0/1.
class ResultTable {
public:
    explicit ResultTable(std::vector<std::string> columns)
        : columns_(std::move(columns)) {
        if (columns_.empty()) {
            throw std::invalid_argument("ResultTable needs at least one column");
        }
    }

    void add_row(std::span<const double> values) {
        if (values.size() != columns_.size()) {
            throw std::invalid_argument("ResultTable row width mismatch: expected " +
                                        std::to_string(columns_.size()) + ", got " +
                                        std::to_string(values.size()));
        }
        rows_.emplace_back(values.begin(), values.end());
    }

    void add_row(std::initializer_list<double> values) {
        add_row(std::span<const double>(values.begin(), values.size()));
    }

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::size_t row_count() const noexcept { return rows_.size(); }

    double at(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }

    double at(std::size_t row, const std::string& column) const {
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (columns_[c] == column) {
                return rows_.at(row).at(c);
            }
        }
        throw std::out_of_range("ResultTable has no column \"" + column + "\"");
    }

    void write_csv(std::ostream& out) const {
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            out << (c ? "," : "") << columns_[c];
        }
        out << '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << format_number(row[c]);
            }
            out << '\n';
        }
    }

    std::string to_csv() const {
        std::string s;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            s += (c ? "," : "");
            s += columns_[c];
        }
        s += '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) s += ',';
                s += format_number(row[c]);
            }
            s += '\n';
        }
        return s;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

/// Writes the table to a file; throws std::runtime_error on I/O failure.
inline void emit_results(const ResultTable& table, const std::string& destination) {
    std::ofstream out(destination);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + destination);
    }
    table.write_csv(out);
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed for output file: " + destination);
    }
}

} // namespace secsim
