// Run artifacts: CSV/TSV serialization, self-contained SVG plots, and atomic
// file writes. Formats are stable so downstream golden-file comparisons work:
// headers are fixed strings and numbers carry 12 significant digits.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "concordia/ga.hpp"

namespace concordia {

struct SweepRow {
    double filling_fraction = 0.0;
    int k = 0;
    double best_fitness = 0.0;
};

struct GenerationRow {
    int k = 0;
    int generation = 0;
    double avg_fitness = 0.0;
    double best_fitness = 0.0;
};

struct SweepRecord {
    std::vector<SweepRow> sweep;
    std::vector<GenerationRow> generations;
};

struct ComparisonRow {
    int k = 0;
    double ordered = 0.0;
    double optimized = 0.0;
};

enum class PlotKind { Sweep, Generations };

// 12 significant digits, locale independent.
std::string format_number(double value);
// Shortest representation that parses back to the same double.
std::string format_exact(double value);

SweepRecord to_sweep_record(const RunResult& result, int n_sites);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string generations_csv(std::vector<GenerationRow> rows);  // sorted by (k, generation)
std::string baseline_csv(const std::vector<SweepRow>& rows);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string best_chromosomes_tsv(const std::vector<FillingResult>& per_filling);

std::vector<SweepRow> parse_sweep_csv(const std::string& text);
std::vector<GenerationRow> parse_generations_csv(const std::string& text);

// Line plot as a standalone SVG document: filling curve (one series) or
// per-generation traces (best and average per filling). Throws
// std::invalid_argument when the requested records are empty.
std::string render_svg(const SweepRecord& record, PlotKind kind);

// Writes via a temporary file in the same directory followed by a rename, so
// readers never observe partial content.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace concordia
