#include "concordia/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "concordia/concurrence.hpp"
#include "concordia/ga.hpp"
#include "concordia/report.hpp"
#include "concordia/verify.hpp"

namespace concordia {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string lattice = "chain";
    int size = 16;
    int rows = 0;
    int cols = 0;
    std::string boundary = "periodic";
    std::string shells = "nn";
    std::string fillings;  // empty = 0..N
    std::string selection = "roulette";
    std::string out_dir = "out";
    bool emit_svg = false;
    double baseline_t = 1.0;
    std::string config_file;
    GaConfig ga;
};

int parse_int_strict(const std::string& s, const std::string& what) {
    int value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument(what + ": '" + s + "' is not an integer");
    return value;
}

LatticeSpec to_lattice_spec(const RunConfig& cfg) {
    LatticeSpec spec;
    if (cfg.lattice == "chain")
        spec.kind = LatticeKind::Chain;
    else if (cfg.lattice == "square")
        spec.kind = LatticeKind::Square;
    else if (cfg.lattice == "triangular")
        spec.kind = LatticeKind::Triangular;
    else
        throw std::invalid_argument("--lattice must be chain, square or triangular");

    if (spec.kind == LatticeKind::Chain) {
        spec.length = cfg.size;
    } else {
        if (cfg.rows < 2 || cfg.cols < 2)
            throw std::invalid_argument("2D lattices need --rows and --cols (each >= 2)");
        spec.rows = cfg.rows;
        spec.cols = cfg.cols;
    }

    if (cfg.boundary == "open")
        spec.boundary = Boundary::Open;
    else if (cfg.boundary == "periodic")
        spec.boundary = Boundary::Periodic;
    else
        throw std::invalid_argument("--boundary must be open or periodic");

    if (cfg.shells == "nn")
        spec.shells = Shells::NN;
    else if (cfg.shells == "nnn")
        spec.shells = Shells::NNPlusNNN;
    else
        throw std::invalid_argument("--shells must be nn or nnn");
    return spec;
}

std::vector<int> parse_fillings(const std::string& text, int n_sites) {
    std::vector<int> fillings;
    auto push_checked = [&](int k) {
        if (k < 0 || k > n_sites)
            throw std::invalid_argument("--fillings: " + std::to_string(k) + " outside [0, " +
                                        std::to_string(n_sites) + "]");
        if (std::find(fillings.begin(), fillings.end(), k) == fillings.end()) fillings.push_back(k);
    };

    if (text.empty()) {
        for (int k = 0; k <= n_sites; ++k) fillings.push_back(k);
        return fillings;
    }
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = parse_int_strict(text.substr(0, dots), "--fillings");
        const int hi = parse_int_strict(text.substr(dots + 2), "--fillings");
        if (lo > hi) throw std::invalid_argument("--fillings: range start exceeds end");
        for (int k = lo; k <= hi; ++k) push_checked(k);
        return fillings;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) push_checked(parse_int_strict(item, "--fillings"));
    if (fillings.empty()) throw std::invalid_argument("--fillings: empty list");
    return fillings;
}

void apply_selection(const std::string& text, GaConfig& ga) {
    if (text == "roulette") {
        ga.selection = SelectionKind::RouletteWheel;
        return;
    }
    if (text.rfind("tournament", 0) == 0) {
        ga.selection = SelectionKind::Tournament;
        if (const auto colon = text.find(':'); colon != std::string::npos)
            ga.tournament_k = parse_int_strict(text.substr(colon + 1), "--selection tournament size");
        if (ga.tournament_k < 1) throw std::invalid_argument("--selection: tournament size must be >= 1");
        return;
    }
    throw std::invalid_argument("--selection must be roulette or tournament:k");
}

int threads_from_env() {
    const char* env = std::getenv("CONCORDIA_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    return parse_int_strict(env, "CONCORDIA_THREADS");
}

double parse_double_strict(const std::string& s, const std::string& what) {
    double value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument(what + ": '" + s + "' is not a number");
    return value;
}

bool parse_bool_strict(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::invalid_argument(what + ": '" + s + "' is not a boolean");
}

// key=value config file with '#' comments. Values apply only to options the
// command line left untouched, so flags always win.
void apply_config_file(const CLI::App* cmd, RunConfig& cfg) {
    std::ifstream in(cfg.config_file);
    if (!in) throw std::invalid_argument("config file '" + cfg.config_file + "' not readable");

    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value, got '" + line + "'");
        entries[line.substr(0, eq)] = line.substr(eq + 1);
    }

    auto take = [&](const std::string& key) -> const std::string* {
        const auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        return cmd->count("--" + key) > 0 ? nullptr : &it->second;
    };
    if (const auto* v = take("lattice")) cfg.lattice = *v;
    if (const auto* v = take("size")) cfg.size = parse_int_strict(*v, "config size");
    if (const auto* v = take("rows")) cfg.rows = parse_int_strict(*v, "config rows");
    if (const auto* v = take("cols")) cfg.cols = parse_int_strict(*v, "config cols");
    if (const auto* v = take("boundary")) cfg.boundary = *v;
    if (const auto* v = take("shells")) cfg.shells = *v;
    if (const auto* v = take("pop")) cfg.ga.population_size = parse_int_strict(*v, "config pop");
    if (const auto* v = take("gens")) cfg.ga.generations = parse_int_strict(*v, "config gens");
    if (const auto* v = take("pc")) cfg.ga.p_c = parse_double_strict(*v, "config pc");
    if (const auto* v = take("pm")) cfg.ga.p_m = parse_double_strict(*v, "config pm");
    if (const auto* v = take("gene-min")) cfg.ga.gene_min = parse_double_strict(*v, "config gene-min");
    if (const auto* v = take("gene-max")) cfg.ga.gene_max = parse_double_strict(*v, "config gene-max");
    if (const auto* v = take("seed")) {
        std::uint64_t seed{};
        const auto res = std::from_chars(v->data(), v->data() + v->size(), seed);
        if (res.ec != std::errc{} || res.ptr != v->data() + v->size())
            throw std::invalid_argument("config seed: '" + *v + "' is not an integer");
        cfg.ga.seed = seed;
    }
    if (const auto* v = take("fillings")) cfg.fillings = *v;
    if (const auto* v = take("selection")) cfg.selection = *v;
    if (const auto* v = take("out")) cfg.out_dir = *v;
    if (const auto* v = take("svg")) cfg.emit_svg = parse_bool_strict(*v, "config svg");
    if (const auto* v = take("baseline-t"))
        cfg.baseline_t = parse_double_strict(*v, "config baseline-t");

    static const std::set<std::string> known = {
        "lattice", "size",     "rows",      "cols", "boundary", "shells",     "pop",
        "gens",    "pc",       "pm",        "gene-min", "gene-max", "seed",   "fillings",
        "selection", "out",    "svg",       "baseline-t"};
    for (const auto& [key, value] : entries)
        if (!known.contains(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--config", cfg.config_file,
                    "key=value file; command-line flags take precedence");
    cmd->add_option("--lattice", cfg.lattice, "lattice kind: chain|square|triangular")
        ->capture_default_str();
    cmd->add_option("--size", cfg.size, "chain length (chain only)")->capture_default_str();
    cmd->add_option("--rows", cfg.rows, "grid rows (2D lattices)");
    cmd->add_option("--cols", cfg.cols, "grid columns (2D lattices)");
    cmd->add_option("--boundary", cfg.boundary, "open|periodic")->capture_default_str();
    cmd->add_option("--shells", cfg.shells, "hopping shells: nn|nnn (nnn = NN plus NNN)")
        ->capture_default_str();
    cmd->add_option("--pop", cfg.ga.population_size, "population size")->capture_default_str();
    cmd->add_option("--gens", cfg.ga.generations, "generations per filling")->capture_default_str();
    cmd->add_option("--pc", cfg.ga.p_c, "crossover probability")->capture_default_str();
    cmd->add_option("--pm", cfg.ga.p_m, "per-gene mutation probability")->capture_default_str();
    cmd->add_option("--gene-min", cfg.ga.gene_min, "lower gene bound (open)")->capture_default_str();
    cmd->add_option("--gene-max", cfg.ga.gene_max, "upper gene bound (open)")->capture_default_str();
    cmd->add_option("--seed", cfg.ga.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--fillings", cfg.fillings, "fermion counts: range A..B or list a,b,c (default 0..N)");
    cmd->add_option("--selection", cfg.selection, "roulette|tournament:k")->capture_default_str();
    cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    cmd->add_flag("--svg", cfg.emit_svg, "also render SVG plots");
    cmd->add_option("--baseline-t", cfg.baseline_t, "hopping value of the ordered baseline")
        ->capture_default_str();
}

std::string manifest_text(const RunConfig& cfg, int n_sites) {
    std::string text =
        "# optimization run manifest; reproduce with:\n"
        "#   concordia optimize --config run_manifest.txt --out NEWDIR\n";
    text += "lattice=" + cfg.lattice + "\n";
    if (cfg.lattice == "chain") {
        text += "size=" + std::to_string(cfg.size) + "\n";
    } else {
        text += "rows=" + std::to_string(cfg.rows) + "\n";
        text += "cols=" + std::to_string(cfg.cols) + "\n";
    }
    text += "boundary=" + cfg.boundary + "\n";
    text += "shells=" + cfg.shells + "\n";
    text += "pop=" + std::to_string(cfg.ga.population_size) + "\n";
    text += "gens=" + std::to_string(cfg.ga.generations) + "\n";
    text += "pc=" + format_exact(cfg.ga.p_c) + "\n";
    text += "pm=" + format_exact(cfg.ga.p_m) + "\n";
    text += "gene-min=" + format_exact(cfg.ga.gene_min) + "\n";
    text += "gene-max=" + format_exact(cfg.ga.gene_max) + "\n";
    text += "seed=" + std::to_string(cfg.ga.seed) + "\n";
    text += "fillings=" + (cfg.fillings.empty() ? "0.." + std::to_string(n_sites) : cfg.fillings) + "\n";
    text += "selection=" + cfg.selection + "\n";
    text += "baseline-t=" + format_exact(cfg.baseline_t) + "\n";
    text += std::string("svg=") + (cfg.emit_svg ? "true" : "false") + "\n";
    return text;
}

int cmd_optimize(const CLI::App* cmd, RunConfig& cfg, std::ostream& out) {
    if (!cfg.config_file.empty()) apply_config_file(cmd, cfg);
    const BondTable table = build_bond_table(to_lattice_spec(cfg));
    apply_selection(cfg.selection, cfg.ga);
    cfg.ga.threads = threads_from_env();
    validate_config(cfg.ga);
    const std::vector<int> fillings = parse_fillings(cfg.fillings, table.n_sites);
    std::filesystem::create_directories(cfg.out_dir);  // fail before computing, not after

    const RunResult result = run_filling_sweep(table, cfg.ga, fillings);
    const SweepRecord record = to_sweep_record(result, table.n_sites);

    // every file lands atomically; the manifest goes last, so its presence
    // marks a complete run
    const fs::path dir(cfg.out_dir);
    write_text_atomic(dir / "sweep.csv", sweep_csv(record.sweep));
    write_text_atomic(dir / "generations.csv", generations_csv(record.generations));
    write_text_atomic(dir / "best_chromosomes.tsv", best_chromosomes_tsv(result.per_filling));
    if (cfg.emit_svg) {
        write_text_atomic(dir / "sweep.svg", render_svg(record, PlotKind::Sweep));
        write_text_atomic(dir / "generations.svg", render_svg(record, PlotKind::Generations));
    }
    write_text_atomic(dir / "run_manifest.txt", manifest_text(cfg, table.n_sites));
    out << "optimize: " << record.sweep.size() << " fillings, " << record.generations.size()
        << " generation rows -> " << dir.string() << "\n";
    return kExitOk;
}

int cmd_baseline(const CLI::App* cmd, RunConfig& cfg, std::ostream& out) {
    if (!cfg.config_file.empty()) apply_config_file(cmd, cfg);
    const BondTable table = build_bond_table(to_lattice_spec(cfg));
    if (cfg.baseline_t <= 0.0)
        throw std::invalid_argument("--baseline-t must be positive");
    const std::vector<int> fillings = parse_fillings(cfg.fillings, table.n_sites);

    Chromosome uniform;
    uniform.genes.assign(table.bonds.size(), cfg.baseline_t);
    std::vector<SweepRow> rows;
    rows.reserve(fillings.size());
    for (int k : fillings)
        rows.push_back(SweepRow{static_cast<double>(k) / table.n_sites, k, fitness(table, uniform, k)});
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.k < b.k; });

    const fs::path dir(cfg.out_dir);
    write_text_atomic(dir / "baseline.csv", baseline_csv(rows));
    out << "baseline: " << rows.size() << " fillings -> " << (dir / "baseline.csv").string() << "\n";

    const fs::path sweep_path = dir / "sweep.csv";
    if (fs::exists(sweep_path)) {
        std::ifstream in(sweep_path, std::ios::binary);
        std::stringstream buffer;
        buffer << in.rdbuf();
        const std::vector<SweepRow> sweep = parse_sweep_csv(buffer.str());
        std::map<int, double> optimized;
        for (const SweepRow& row : sweep) optimized[row.k] = row.best_fitness;
        std::vector<ComparisonRow> comparison;
        for (const SweepRow& row : rows)
            if (const auto it = optimized.find(row.k); it != optimized.end())
                comparison.push_back(ComparisonRow{row.k, row.best_fitness, it->second});
        write_text_atomic(dir / "comparison.csv", comparison_csv(comparison));
        out << "baseline: matched sweep -> " << (dir / "comparison.csv").string() << "\n";
    }
    return kExitOk;
}

int cmd_plot(const std::string& out_dir, std::ostream& out) {
    const fs::path dir(out_dir);
    SweepRecord record;
    bool any = false;
    if (fs::exists(dir / "sweep.csv")) {
        std::ifstream in(dir / "sweep.csv", std::ios::binary);
        std::stringstream buffer;
        buffer << in.rdbuf();
        record.sweep = parse_sweep_csv(buffer.str());
        if (!record.sweep.empty()) {
            write_text_atomic(dir / "sweep.svg", render_svg(record, PlotKind::Sweep));
            out << "plot: wrote " << (dir / "sweep.svg").string() << "\n";
            any = true;
        }
    }
    if (fs::exists(dir / "generations.csv")) {
        std::ifstream in(dir / "generations.csv", std::ios::binary);
        std::stringstream buffer;
        buffer << in.rdbuf();
        record.generations = parse_generations_csv(buffer.str());
        if (!record.generations.empty()) {
            write_text_atomic(dir / "generations.svg", render_svg(record, PlotKind::Generations));
            out << "plot: wrote " << (dir / "generations.svg").string() << "\n";
            any = true;
        }
    }
    if (!any)
        throw std::invalid_argument("plot: no non-empty sweep.csv or generations.csv in " + out_dir);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "concordia - maximizes nearest-neighbor ground-state concurrence of spinless fermions\n"
        "on tight-binding lattices by evolving the hopping pattern with a genetic algorithm.\n"
        "Option precedence: command-line flags > --config file > built-in defaults.\n"
        "CONCORDIA_THREADS caps fitness-evaluation parallelism (0 or unset = all cores);\n"
        "results are byte-identical for any thread count.\n"
        "Exit codes: 0 ok, 1 usage error, 2 numerical failure, 3 verification failure."};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* optimize = app.add_subcommand("optimize", "evolve hopping patterns with the GA");
    add_common_options(optimize, cfg);
    CLI::App* baseline = app.add_subcommand("baseline", "evaluate the uniform (ordered) pattern");
    add_common_options(baseline, cfg);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the brute-force cross-check suite");
    std::string scale = "quick";
    verify_cmd->add_option("--scale", scale, "quick|full")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();

    CLI::App* plot = app.add_subcommand("plot", "render SVG plots from existing CSV files");
    std::string plot_dir = "out";
    plot->add_option("--out", plot_dir, "directory holding sweep.csv / generations.csv")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (optimize->parsed()) return cmd_optimize(optimize, cfg, out);
        if (baseline->parsed()) return cmd_baseline(baseline, cfg, out);
        if (verify_cmd->parsed()) {
            const int failures =
                run_verify(scale == "full" ? VerifyScale::Full : VerifyScale::Quick, out);
            return failures == 0 ? kExitOk : kExitVerifyFailed;
        }
        if (plot->parsed()) return cmd_plot(plot_dir, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace concordia
