#include "rabi/table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rabi/error.hpp"

namespace rabi::cli {

namespace {

std::string format_value(double v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", v);
    return buf.data();
}

std::string format_coord(double v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", v);
    return buf.data();
}

std::string format_tick(double v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf.data();
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    void widen() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            const double pad = std::max(0.5, 0.05 * std::abs(hi));
            lo -= pad;
            hi += pad;
        }
    }
};

std::vector<double> ticks_for(Range& r) {
    const double raw = (r.hi - r.lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (const double f : {1.0, 2.0, 5.0, 10.0}) {
        step = f * mag;
        if (step >= raw) {
            break;
        }
    }
    r.lo = std::floor(r.lo / step) * step;
    r.hi = std::ceil(r.hi / step) * step;
    std::vector<double> ticks;
    const auto count = static_cast<long>(std::llround((r.hi - r.lo) / step));
    for (long i = 0; i <= count; ++i) {
        ticks.push_back(r.lo + static_cast<double>(i) * step);
    }
    return ticks;
}

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::size_t Table::column_index(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw ValidationError("no column named '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::column(std::size_t index) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row.at(index));
    }
    return out;
}

void write_csv(const Table& table, std::ostream& out) {
    if (table.columns.empty()) {
        throw ValidationError("table has no columns");
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw ValidationError("row width does not match the header");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_value(row[c]);
        }
        out << '\n';
    }
}

void write_csv(const Table& table, const std::filesystem::path& path) {
    std::ostringstream buffer;
    write_csv(table, buffer);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ValidationError("cannot write '" + path.string() + "'");
    }
    out << buffer.str();
    if (!out.flush()) {
        throw ValidationError("failed writing '" + path.string() + "'");
    }
}

Table parse_csv(std::string_view text, std::string_view source) {
    Table table;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (table.columns.empty()) {
            table.columns.assign(fields.begin(), fields.end());
            continue;
        }
        if (fields.size() != table.columns.size()) {
            throw ValidationError(std::string(source) + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.columns.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto field : fields) {
            double v = 0.0;
            const auto* last = field.data() + field.size();
            const auto [ptr, ec] = std::from_chars(field.data(), last, v);
            if (ec != std::errc{} || ptr != last) {
                throw ValidationError(std::string(source) + ":" + std::to_string(line_no) + ": not a number: '" +
                                      std::string(field) + "'");
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty()) {
        throw ValidationError(std::string(source) + ": empty CSV");
    }
    return table;
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), path.string());
}

std::string render_svg(std::span<const Series> series, const PlotLabels& labels) {
    if (series.empty()) {
        throw ValidationError("nothing to plot");
    }
    constexpr double width = 800.0;
    constexpr double height = 500.0;
    constexpr double left = 80.0;
    constexpr double right = 160.0;
    constexpr double top = 40.0;
    constexpr double bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    Range xr;
    Range yr;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) {
            throw ValidationError("series '" + s.name + "' has mismatched x and y lengths");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                xr.add(s.x[i]);
                yr.add(s.y[i]);
            }
        }
    }
    xr.widen();
    yr.widen();
    const std::vector<double> xticks = ticks_for(xr);
    const std::vector<double> yticks = ticks_for(yr);
    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) { return top + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << format_coord(plot_w) << "\" height=\""
        << format_coord(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (const double t : xticks) {
        const std::string x = format_coord(px(t));
        svg << "<line x1=\"" << x << "\" y1=\"" << format_coord(top + plot_h) << "\" x2=\"" << x << "\" y2=\""
            << format_coord(top + plot_h + 5.0) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << format_coord(top + plot_h + 20.0) << "\" text-anchor=\"middle\">"
            << format_tick(t) << "</text>\n";
    }
    for (const double t : yticks) {
        const std::string y = format_coord(py(t));
        svg << "<line x1=\"" << format_coord(left - 5.0) << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << format_coord(left - 8.0) << "\" y=\"" << format_coord(py(t) + 4.0)
            << "\" text-anchor=\"end\">" << format_tick(t) << "</text>\n";
    }
    if (!labels.title.empty()) {
        svg << "<text x=\"" << format_coord(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
            << escape_xml(labels.title) << "</text>\n";
    }
    if (!labels.x_label.empty()) {
        svg << "<text x=\"" << format_coord(left + plot_w / 2) << "\" y=\"" << format_coord(height - 15.0)
            << "\" text-anchor=\"middle\">" << escape_xml(labels.x_label) << "</text>\n";
    }
    if (!labels.y_label.empty()) {
        svg << "<text x=\"20\" y=\"" << format_coord(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
            << format_coord(top + plot_h / 2) << ")\">" << escape_xml(labels.y_label) << "</text>\n";
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % kPalette.size()];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                continue;
            }
            svg << (first ? "" : " ") << format_coord(px(s.x[i])) << ',' << format_coord(py(s.y[i]));
            first = false;
        }
        svg << "\"/>\n";
        const double ly = top + 10.0 + 18.0 * static_cast<double>(k);
        svg << "<line x1=\"" << format_coord(left + plot_w + 15.0) << "\" y1=\"" << format_coord(ly) << "\" x2=\""
            << format_coord(left + plot_w + 40.0) << "\" y2=\"" << format_coord(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << format_coord(left + plot_w + 45.0) << "\" y=\"" << format_coord(ly + 4.0) << "\">"
            << escape_xml(s.name) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void render_svg(std::span<const Series> series, const std::filesystem::path& path, const PlotLabels& labels) {
    const std::string text = render_svg(series, labels);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ValidationError("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out.flush()) {
        throw ValidationError("failed writing '" + path.string() + "'");
    }
}

std::vector<Series> series_from_table(const Table& table, std::string_view x_col,
                                      std::span<const std::string> y_cols) {
    if (table.rows.empty()) {
        throw ValidationError("table has no rows to plot");
    }
    const std::size_t xi = x_col.empty() ? 0 : table.column_index(x_col);
    std::vector<std::size_t> yi;
    if (y_cols.empty()) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c != xi) {
                yi.push_back(c);
            }
        }
    } else {
        for (const auto& name : y_cols) {
            yi.push_back(table.column_index(name));
        }
    }
    if (yi.empty()) {
        throw ValidationError("no y columns to plot");
    }
    const std::vector<double> x = table.column(xi);
    std::vector<Series> out;
    for (const std::size_t c : yi) {
        out.push_back(Series{table.columns[c], x, table.column(c)});
    }
    return out;
}

}  // namespace rabi::cli
