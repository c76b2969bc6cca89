// table.hpp — numeric CSV tables and a minimal SVG line plot

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rabi::cli {

/// Column names plus rows of doubles; every row has one entry per column.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Index of column `name`. Throws ValidationError if absent.
    std::size_t column_index(std::string_view name) const;
    std::vector<double> column(std::size_t index) const;
};

/// Header line, then one line per row; values as %.12g, LF endings.
void write_csv(const Table& table, std::ostream& out);
void write_csv(const Table& table, const std::filesystem::path& path);

Table parse_csv(std::string_view text, std::string_view source = "<csv>");
Table read_csv(const std::filesystem::path& path);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// One polyline per series, linear axes with tick labels and a legend.
/// Identical input gives identical bytes.
std::string render_svg(std::span<const Series> series, const PlotLabels& labels = {});
void render_svg(std::span<const Series> series, const std::filesystem::path& path, const PlotLabels& labels = {});

/// Series for `y_cols` against `x_col`; empty `y_cols` means every other column.
std::vector<Series> series_from_table(const Table& table, std::string_view x_col,
                                      std::span<const std::string> y_cols);

}  // namespace rabi::cli
