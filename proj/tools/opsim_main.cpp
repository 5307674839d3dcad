// Command-line front door: scan listings, then emit distance matrices,
// verdicts, mutation corpora, evaluation summaries and histogram dumps as
// static files. Exit codes: 0 success, 1 usage error, 2 input error.

#include <cctype>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opsim/compare.hpp"
#include "opsim/histogram.hpp"
#include "opsim/listing.hpp"
#include "opsim/mutate.hpp"
#include "opsim/report.hpp"

namespace fs = std::filesystem;

namespace {

// Bad flag combinations CLI11 cannot see on its own; exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> files;
    std::string metric = "manhattan";
    bool apply_root = false;
    double threshold = 0.0;
    std::string out = ".";
    std::string format = "csv";
    std::string eval_format = "json";
    bool plot = false;
    bool full_precision = false;
    double intensity = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::string> techniques;
    std::string manifest_path;
    std::string verdicts_path;
};

std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw opsim::Error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    if (is.bad()) throw opsim::Error("read failed on '" + path.string() + "'");
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            throw opsim::Error("cannot create '" + path.parent_path().string() +
                               "': " + ec.message());
    }
    std::ofstream os(path, std::ios::binary);
    os << text;
    if (!os) throw opsim::Error("cannot write '" + path.string() + "'");
}

// Parses every listing concurrently. All failures are reported in one go,
// path and line included, and nothing is returned on any failure.
std::vector<opsim::Program> parse_all(const std::vector<std::string>& paths) {
    std::vector<std::future<opsim::Program>> futures;
    futures.reserve(paths.size());
    for (const auto& path : paths)
        futures.push_back(std::async(std::launch::async, [path] {
            return opsim::parse_listing(read_file(path), fs::path(path).stem().string());
        }));

    std::vector<opsim::Program> programs;
    programs.reserve(paths.size());
    std::string errors;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
            programs.push_back(futures[i].get());
        } catch (const std::exception& e) {
            if (!errors.empty()) errors += '\n';
            errors += paths[i] + ": " + e.what();
        }
    }
    if (!errors.empty()) throw opsim::Error(errors);
    return programs;
}

bool parse_full_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    try {
        std::size_t pos = 0;
        v = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_full_u64(const std::string& s, std::uint64_t& v) {
    if (s.empty() || (std::isdigit(static_cast<unsigned char>(s[0])) == 0)) return false;
    try {
        std::size_t pos = 0;
        unsigned long long raw = std::stoull(s, &pos);
        if (pos != s.size()) return false;
        v = raw;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

// One --technique entry: name[:intensity[:seed]]. Omitted fields fall back
// to the standalone --intensity / --seed flags.
opsim::MutationSpec parse_technique_entry(const std::string& entry, double def_intensity,
                                          std::uint64_t def_seed) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t colon = entry.find(':', start);
        parts.push_back(entry.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() > 3)
        throw UsageError("bad --technique entry '" + entry + "': want name[:intensity[:seed]]");

    opsim::MutationSpec spec;
    try {
        spec.technique = opsim::technique_from_name(parts[0]);
    } catch (const opsim::Error& e) {
        throw UsageError(e.what());
    }
    spec.intensity = def_intensity;
    spec.seed = def_seed;
    if (parts.size() > 1 && !parts[1].empty()) {
        double v = 0.0;
        if (!parse_full_double(parts[1], v) || v < 0.0 || v > 1.0)
            throw UsageError("bad intensity in --technique entry '" + entry + "'");
        spec.intensity = v;
    }
    if (parts.size() > 2 && !parts[2].empty()) {
        std::uint64_t v = 0;
        if (!parse_full_u64(parts[2], v))
            throw UsageError("bad seed in --technique entry '" + entry + "'");
        spec.seed = v;
    }
    return spec;
}

std::string charts_for(const std::vector<opsim::Program>& programs) {
    std::string charts;
    bool first = true;
    for (const auto& p : programs) {
        if (!first) charts += '\n';
        first = false;
        charts += opsim::histogram_chart(p);
    }
    return charts;
}

int run_compare(const Options& o, bool threshold_set) {
    opsim::MetricConfig metric = opsim::metric_from_name(o.metric, o.apply_root);
    double threshold = o.threshold;
    if (!threshold_set) {
        // Table defaults exist for Manhattan and the squared Euclidean form
        // only; anything else needs an explicit cut.
        if (metric.order == 1)
            threshold = opsim::kDefaultManhattanThreshold;
        else if (metric.order == 2 && !metric.apply_root)
            threshold = opsim::kDefaultEuclideanThreshold;
        else
            throw UsageError("no default threshold for metric '" + metric.name() +
                             (metric.apply_root ? "' with --root" : "'") + "; pass --threshold");
    }

    std::vector<opsim::Program> programs = parse_all(o.files);
    std::vector<opsim::ProgramProfile> profiles;
    profiles.reserve(programs.size());
    for (const auto& p : programs) profiles.push_back(opsim::profile(p));

    opsim::DistanceMatrix matrix = opsim::distance_matrix(profiles, metric);
    opsim::ClassifierConfig classifier{threshold, metric};
    std::vector<opsim::PairVerdict> verdicts = opsim::classify_corpus(matrix, classifier);

    std::string csv = opsim::matrix_to_csv(matrix, o.full_precision);
    std::string verdict_json = opsim::verdicts_to_json(verdicts, classifier);
    std::string charts = o.plot ? charts_for(programs) : std::string();

    const fs::path out(o.out);
    write_file(out / "distance_matrix.csv", csv);
    write_file(out / "verdicts.json", verdict_json);
    if (o.plot) write_file(out / "histograms.txt", charts);

    std::cout << (o.format == "json" ? verdict_json : csv);
    return 0;
}

int run_mutate(const Options& o) {
    std::vector<opsim::MutationSpec> specs;
    specs.reserve(o.techniques.size());
    for (const auto& entry : o.techniques)
        specs.push_back(parse_technique_entry(entry, o.intensity, o.seed));

    std::vector<opsim::Program> seeds = parse_all(o.files);
    std::vector<opsim::VariantRecord> records =
        opsim::generate_corpus(seeds, specs, fs::path(o.out));
    std::cout << "wrote " << records.size() << " variants and manifest.json to " << o.out
              << '\n';
    return 0;
}

int run_eval(const Options& o) {
    std::vector<opsim::VariantRecord> manifest =
        opsim::manifest_from_json(read_file(o.manifest_path));
    auto [verdicts, classifier] = opsim::verdicts_from_json(read_file(o.verdicts_path));
    opsim::EvalSummary summary = opsim::evaluate(manifest, verdicts, classifier);

    std::string summary_json = opsim::eval_to_json(summary);
    std::string sweep_csv = opsim::sweep_to_csv(summary);

    const fs::path out(o.out);
    write_file(out / "eval.json", summary_json);
    write_file(out / "sweep.csv", sweep_csv);

    std::cout << (o.eval_format == "csv" ? sweep_csv : summary_json);
    return 0;
}

int run_dump(const Options& o) {
    std::vector<opsim::Program> programs = parse_all(o.files);
    std::string csv = opsim::histograms_to_csv(programs);

    const fs::path out(o.out);
    write_file(out / "histograms.csv", csv);
    if (o.plot) write_file(out / "histograms.txt", charts_for(programs));

    std::cout << csv;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"opcode-frequency similarity toolkit"};
    app.set_config("--config")
        ->envname("OPSIM_CONFIG")
        ->description("key=value config file; command-line flags win");
    app.require_subcommand(1);

    const CLI::Validator metric_validator(
        [](std::string& s) -> std::string {
            try {
                opsim::metric_from_name(s);
                return {};
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        },
        "METRIC");
    const CLI::Validator technique_validator(
        [](std::string& s) -> std::string {
            try {
                parse_technique_entry(s, 1.0, 0);
                return {};
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        },
        "TECHNIQUE");

    auto* cmp = app.add_subcommand("compare", "distance matrix and verdicts for a corpus");
    cmp->add_option("files", o.files, "listing files; the file stem is the program id")
        ->required()
        ->expected(-2);
    CLI::Option* cmp_threshold = cmp->add_option("--threshold", o.threshold,
                                                 "variant-pair cut (strictly below)")
                                     ->check(CLI::PositiveNumber);
    cmp->add_option("--metric", o.metric, "manhattan | euclidean | minkowski:<r>")
        ->check(metric_validator);
    cmp->add_flag("--root,!--no-root", o.apply_root, "apply the 1/r-th root to the sum");
    cmp->add_option("--out", o.out, "output directory");
    cmp->add_option("--format", o.format, "stdout artifact: csv (matrix) or json (verdicts)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmp->add_flag("--plot", o.plot, "also write plaintext opcode bar charts");
    cmp->add_flag("--full-precision", o.full_precision, "17-digit matrix cells");

    auto* mut = app.add_subcommand("mutate", "generate an obfuscated corpus plus manifest");
    mut->add_option("files", o.files, "seed listing files")->required();
    mut->add_option("--technique", o.techniques,
                    "name[:intensity[:seed]], repeatable; names: garbage_insertion, "
                    "register_exchange, instruction_replacement, instruction_permutation, "
                    "code_transposition")
        ->check(technique_validator);
    mut->add_option("--intensity", o.intensity, "default intensity for --technique entries")
        ->check(CLI::Range(0.0, 1.0));
    mut->add_option("--seed", o.seed, "default seed for --technique entries");
    mut->add_option("--out", o.out, "output directory");

    auto* evl = app.add_subcommand("eval", "score verdicts against manifest family labels");
    evl->add_option("--manifest", o.manifest_path, "manifest.json written by mutate")
        ->required();
    evl->add_option("--verdicts", o.verdicts_path, "verdicts.json written by compare")
        ->required();
    evl->add_option("--out", o.out, "output directory");
    evl->add_option("--format", o.eval_format,
                    "stdout artifact: json (summary) or csv (sweep table)")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* dmp = app.add_subcommand("dump-histograms",
                                   "per-subroutine opcode counts and proportions");
    dmp->add_option("files", o.files, "listing files")->required();
    dmp->add_option("--out", o.out, "output directory");
    dmp->add_flag("--plot", o.plot, "also write plaintext opcode bar charts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(cmp)) return run_compare(o, cmp_threshold->count() > 0);
        if (app.got_subcommand(mut)) return run_mutate(o);
        if (app.got_subcommand(evl)) return run_eval(o);
        return run_dump(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
