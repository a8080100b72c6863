#include "concordia/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace concordia {

namespace fs = std::filesystem;

std::string format_number(double value) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string format_exact(double value) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

SweepRecord to_sweep_record(const RunResult& result, int n_sites) {
    SweepRecord record;
    record.sweep.reserve(result.per_filling.size());
    for (const FillingResult& fr : result.per_filling)
        record.sweep.push_back(SweepRow{static_cast<double>(fr.filling_k) / n_sites, fr.filling_k,
                                        fr.best_fitness});
    std::sort(record.sweep.begin(), record.sweep.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.k < b.k; });
    record.generations.reserve(result.log.size());
    for (const GenerationStats& gs : result.log)
        record.generations.push_back(
            GenerationRow{gs.filling_k, gs.generation, gs.avg_fitness, gs.best_fitness});
    return record;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "filling_fraction,K,best_fitness\n";
    for (const SweepRow& row : rows) {
        out += format_number(row.filling_fraction);
        out += ',';
        out += std::to_string(row.k);
        out += ',';
        out += format_number(row.best_fitness);
        out += '\n';
    }
    return out;
}

std::string generations_csv(std::vector<GenerationRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const GenerationRow& a, const GenerationRow& b) {
        return std::pair{a.k, a.generation} < std::pair{b.k, b.generation};
    });
    std::string out = "K,generation,avg_fitness,best_fitness\n";
    for (const GenerationRow& row : rows) {
        out += std::to_string(row.k);
        out += ',';
        out += std::to_string(row.generation);
        out += ',';
        out += format_number(row.avg_fitness);
        out += ',';
        out += format_number(row.best_fitness);
        out += '\n';
    }
    return out;
}

std::string baseline_csv(const std::vector<SweepRow>& rows) {
    std::string out = "filling_fraction,K,ordered_fitness\n";
    for (const SweepRow& row : rows) {
        out += format_number(row.filling_fraction);
        out += ',';
        out += std::to_string(row.k);
        out += ',';
        out += format_number(row.best_fitness);
        out += '\n';
    }
    return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "K,ordered,optimized,delta\n";
    for (const ComparisonRow& row : rows) {
        out += std::to_string(row.k);
        out += ',';
        out += format_number(row.ordered);
        out += ',';
        out += format_number(row.optimized);
        out += ',';
        out += format_number(row.optimized - row.ordered);
        out += '\n';
    }
    return out;
}

std::string best_chromosomes_tsv(const std::vector<FillingResult>& per_filling) {
    std::string out;
    for (const FillingResult& fr : per_filling) {
        out += std::to_string(fr.filling_k);
        for (double gene : fr.best_chromosome.genes) {
            out += '\t';
            out += format_exact(gene);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        fields.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return fields;
}

double parse_double(const std::string& s) {
    double value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad number '" + s + "'");
    return value;
}

int parse_int(const std::string& s) {
    int value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad integer '" + s + "'");
    return value;
}

std::vector<std::vector<std::string>> parse_csv_body(const std::string& text,
                                                     const std::string& expected_header,
                                                     std::size_t n_fields) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != expected_header)
        throw std::invalid_argument("csv: expected header '" + expected_header + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != n_fields)
            throw std::invalid_argument("csv: expected " + std::to_string(n_fields) +
                                        " fields, got '" + line + "'");
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
    std::vector<SweepRow> rows;
    for (const auto& fields : parse_csv_body(text, "filling_fraction,K,best_fitness", 3))
        rows.push_back(SweepRow{parse_double(fields[0]), parse_int(fields[1]), parse_double(fields[2])});
    return rows;
}

std::vector<GenerationRow> parse_generations_csv(const std::string& text) {
    std::vector<GenerationRow> rows;
    for (const auto& fields : parse_csv_body(text, "K,generation,avg_fitness,best_fitness", 4))
        rows.push_back(GenerationRow{parse_int(fields[0]), parse_int(fields[1]),
                                     parse_double(fields[2]), parse_double(fields[3])});
    return rows;
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Axes {
    double x_min, x_max, y_min, y_max;

    double px(double x) const {
        const double span = x_max > x_min ? x_max - x_min : 1.0;
        return kMarginLeft + (x - x_min) / span * (kWidth - kMarginLeft - kMarginRight);
    }
    double py(double y) const {
        const double span = y_max > y_min ? y_max - y_min : 1.0;
        return kHeight - kMarginBottom - (y - y_min) / span * (kHeight - kMarginTop - kMarginBottom);
    }
};

void append_axes(std::string& svg, const Axes& ax, const std::string& x_label,
                 const std::string& y_label) {
    const double x0 = ax.px(ax.x_min);
    const double x1 = ax.px(ax.x_max);
    const double y0 = ax.py(ax.y_min);
    const double y1 = ax.py(ax.y_max);
    svg += "<line x1='" + coord(x0) + "' y1='" + coord(y0) + "' x2='" + coord(x1) + "' y2='" +
           coord(y0) + "' stroke='black'/>\n";
    svg += "<line x1='" + coord(x0) + "' y1='" + coord(y0) + "' x2='" + coord(x0) + "' y2='" +
           coord(y1) + "' stroke='black'/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double fx = ax.x_min + (ax.x_max - ax.x_min) * tick / 4.0;
        const double fy = ax.y_min + (ax.y_max - ax.y_min) * tick / 4.0;
        svg += "<line x1='" + coord(ax.px(fx)) + "' y1='" + coord(y0) + "' x2='" + coord(ax.px(fx)) +
               "' y2='" + coord(y0 + 5) + "' stroke='black'/>\n";
        svg += "<text x='" + coord(ax.px(fx)) + "' y='" + coord(y0 + 20) +
               "' font-size='11' text-anchor='middle'>" + format_number(fx) + "</text>\n";
        svg += "<line x1='" + coord(x0 - 5) + "' y1='" + coord(ax.py(fy)) + "' x2='" + coord(x0) +
               "' y2='" + coord(ax.py(fy)) + "' stroke='black'/>\n";
        svg += "<text x='" + coord(x0 - 8) + "' y='" + coord(ax.py(fy) + 4) +
               "' font-size='11' text-anchor='end'>" + format_number(fy) + "</text>\n";
    }
    svg += "<text x='" + coord((x0 + x1) / 2) + "' y='" + coord(kHeight - 12) +
           "' font-size='13' text-anchor='middle'>" + x_label + "</text>\n";
    svg += "<text x='16' y='" + coord((y0 + y1) / 2) + "' font-size='13' text-anchor='middle' " +
           "transform='rotate(-90 16 " + coord((y0 + y1) / 2) + ")'>" + y_label + "</text>\n";
}

void append_polyline(std::string& svg, const Axes& ax, const std::vector<std::pair<double, double>>& pts,
                     const std::string& color, bool dashed) {
    svg += "<polyline fill='none' stroke='";
    svg += color;
    svg += "' stroke-width='1.5'";
    if (dashed) svg += " stroke-dasharray='5 3'";
    svg += " points='";
    for (std::size_t p = 0; p < pts.size(); ++p) {
        if (p > 0) svg += ' ';
        svg += coord(ax.px(pts[p].first));
        svg += ',';
        svg += coord(ax.py(pts[p].second));
    }
    svg += "'/>\n";
}

std::string svg_document(const std::string& body) {
    return "<svg xmlns='http://www.w3.org/2000/svg' width='" + coord(kWidth) + "' height='" +
           coord(kHeight) + "' viewBox='0 0 " + coord(kWidth) + " " + coord(kHeight) + "'>\n" +
           "<rect width='100%' height='100%' fill='white'/>\n" + body + "</svg>\n";
}

}  // namespace

std::string render_svg(const SweepRecord& record, PlotKind kind) {
    std::string body;
    if (kind == PlotKind::Sweep) {
        if (record.sweep.empty()) throw std::invalid_argument("render_svg: no sweep rows");
        double y_max = 0.0;
        for (const SweepRow& row : record.sweep) y_max = std::max(y_max, row.best_fitness);
        if (y_max <= 0.0) y_max = 1.0;
        Axes ax{0.0, 1.0, 0.0, y_max * 1.05};
        append_axes(body, ax, "band filling K/N", "best fitness");
        std::vector<std::pair<double, double>> pts;
        pts.reserve(record.sweep.size());
        for (const SweepRow& row : record.sweep) pts.emplace_back(row.filling_fraction, row.best_fitness);
        append_polyline(body, ax, pts, kPalette[0], false);
        return svg_document(body);
    }

    if (record.generations.empty()) throw std::invalid_argument("render_svg: no generation rows");
    std::map<int, std::vector<GenerationRow>> by_filling;
    double y_max = 0.0;
    int gen_max = 1;
    for (const GenerationRow& row : record.generations) {
        by_filling[row.k].push_back(row);
        y_max = std::max({y_max, row.best_fitness, row.avg_fitness});
        gen_max = std::max(gen_max, row.generation);
    }
    if (y_max <= 0.0) y_max = 1.0;
    Axes ax{0.0, static_cast<double>(gen_max), 0.0, y_max * 1.05};
    append_axes(body, ax, "generation", "fitness");
    std::size_t series = 0;
    for (auto& [k, rows] : by_filling) {
        std::sort(rows.begin(), rows.end(),
                  [](const GenerationRow& a, const GenerationRow& b) { return a.generation < b.generation; });
        const std::string color = kPalette[series % std::size(kPalette)];
        std::vector<std::pair<double, double>> best_pts;
        std::vector<std::pair<double, double>> avg_pts;
        for (const GenerationRow& row : rows) {
            best_pts.emplace_back(row.generation, row.best_fitness);
            avg_pts.emplace_back(row.generation, row.avg_fitness);
        }
        append_polyline(body, ax, best_pts, color, false);
        append_polyline(body, ax, avg_pts, color, true);
        const double ly = kMarginTop + 16.0 * static_cast<double>(series);
        body += "<text x='" + coord(kWidth - kMarginRight + 10) + "' y='" + coord(ly) +
                "' font-size='11' fill='" + color + "'>K=" + std::to_string(k) +
                " (solid best, dashed avg)</text>\n";
        ++series;
    }
    return svg_document(body);
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    try {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    } catch (...) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw;
    }
    fs::rename(tmp, path);
}

}  // namespace concordia
