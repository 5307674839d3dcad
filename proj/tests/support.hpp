#pragma once

// Shared fixtures, independent oracles and process helpers for the suites.
// Oracles here deliberately re-derive results with the dumbest possible
// code: plain loops, no compensation, no shared helpers with the library.

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "opsim/compare.hpp"
#include "opsim/histogram.hpp"
#include "opsim/listing.hpp"

namespace testsupport {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

// Two subroutines exercising comments, labels, mixed case, prefixes and
// multi-token operands.
inline const char* kBasicListing =
    "; scratch routines for the parser tests\n"
    "main proc\n"
    "    push ebp\n"
    "    mov ebp, esp\n"
    "    MOV eax, 0 ; zero the accumulator\n"
    "    add eax, 4\n"
    "\n"
    "    cmp eax, ebx\n"
    "    jnz done\n"
    "done:\n"
    "    pop ebp\n"
    "    ret\n"
    "main endp\n"
    "\n"
    "copy_loop proc\n"
    "    mov esi, dword ptr [esp+4]\n"
    "    mov edi, dword ptr [esp+8]\n"
    "    rep movsb\n"
    "    xor eax, eax\n"
    "    ret\n"
    "copy_loop endp\n";

// Seven small procedures; used for the proc-count and profile-shape checks.
inline std::string seven_proc_listing() {
    std::string text;
    for (int i = 1; i <= 7; ++i) {
        std::string name = "sub" + std::to_string(i);
        text += name + " proc\n";
        for (int k = 0; k < i; ++k) text += "    mov eax, " + std::to_string(k) + "\n";
        text += "    ret\n";
        text += name + " endp\n\n";
    }
    return text;
}

// One 40-instruction subroutine with a known opcode mix.
inline std::string forty_instruction_listing() {
    std::string text = "bulk proc\n";
    const char* cycle[5] = {"mov eax, 1", "add ebx, 2", "push ecx", "pop ecx", "xor edx, edx"};
    for (int i = 0; i < 39; ++i) text += std::string("    ") + cycle[i % 5] + "\n";
    text += "    ret\nbulk endp\n";
    return text;
}

// ---------------------------------------------------------------------------
// Independent text scanner (the "grep-style" oracle for parser results)
// ---------------------------------------------------------------------------

// Counts mnemonics straight off the listing text without the parser: strip
// the comment, skip blanks/labels/directives, lowercase the first token,
// join a prefix token to its successor with a dot.
inline std::map<std::string, int> scan_mnemonic_counts(const std::string& text) {
    std::map<std::string, int> counts;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto semi = line.find(';');
        if (semi != std::string::npos) line.erase(semi);
        std::istringstream ls(line);
        std::string first, second;
        ls >> first >> second;
        if (first.empty()) continue;
        if (!first.empty() && first.back() == ':') continue;
        if (second == "proc" || second == "endp") continue;
        for (auto& c : first) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (first == "rep" || first == "repe" || first == "repz" || first == "repne" ||
            first == "repnz" || first == "lock") {
            for (auto& c : second)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            first += "." + second;
        }
        ++counts[first];
    }
    return counts;
}

inline int scan_proc_count(const std::string& text) {
    std::istringstream ss(text);
    std::string line;
    int procs = 0;
    while (std::getline(ss, line)) {
        std::istringstream ls(line);
        std::string first, second;
        ls >> first >> second;
        if (second == "proc") ++procs;
    }
    return procs;
}

// ---------------------------------------------------------------------------
// Metric and matching oracles
// ---------------------------------------------------------------------------

inline double naive_minkowski(const std::map<std::string, double>& x,
                              const std::map<std::string, double>& y, int r, bool root) {
    std::map<std::string, double> joined;
    for (const auto& [k, v] : x) joined[k] += 0.0;
    for (const auto& [k, v] : y) joined[k] += 0.0;
    double sum = 0.0;
    for (const auto& [k, unused] : joined) {
        double xv = x.count(k) ? x.at(k) : 0.0;
        double yv = y.count(k) ? y.at(k) : 0.0;
        sum += std::pow(std::fabs(xv - yv), r);
    }
    return root ? std::pow(sum, 1.0 / r) : sum;
}

// All-pairs min, then plain mean: the reference for directed_distance.
inline double oracle_directed(const opsim::ProgramProfile& a, const opsim::ProgramProfile& b,
                              int r, bool root) {
    double total = 0.0;
    for (const auto& ha : a.histograms) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& hb : b.histograms)
            best = std::min(best, naive_minkowski(ha.bins, hb.bins, r, root));
        total += best;
    }
    return total / static_cast<double>(a.histograms.size());
}

inline double oracle_symmetric(const opsim::ProgramProfile& a, const opsim::ProgramProfile& b,
                               int r, bool root) {
    return (oracle_directed(a, b, r, root) + oracle_directed(b, a, r, root)) / 2.0;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& mnemonic_pool() {
    static const std::vector<std::string> pool = {"mov",  "add", "sub", "xor",  "and", "push",
                                                  "pop",  "cmp", "jnz", "call", "ret", "lea",
                                                  "test", "inc", "dec", "shl"};
    return pool;
}

// Normalized histogram with 1..max_bins random bins. mt19937_64 is fully
// specified by the standard, so the stream is identical everywhere.
inline opsim::OpcodeHistogram random_histogram(std::mt19937_64& gen, int max_bins = 8) {
    const auto& pool = mnemonic_pool();
    std::uniform_int_distribution<int> nbins(1, max_bins);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, 20);
    opsim::OpcodeHistogram h;
    h.kind = opsim::HistKind::raw;
    int n = nbins(gen);
    for (int i = 0; i < n; ++i) h.bins[pool[pick(gen)]] += count(gen);
    return opsim::normalize(h);
}

inline opsim::ProgramProfile random_profile(std::mt19937_64& gen, const std::string& id,
                                            int max_subs = 6) {
    std::uniform_int_distribution<int> nsubs(1, max_subs);
    opsim::ProgramProfile p;
    p.program_id = id;
    int n = nsubs(gen);
    for (int i = 0; i < n; ++i) p.histograms.push_back(random_histogram(gen));
    return p;
}

// ---------------------------------------------------------------------------
// Filesystem and process helpers
// ---------------------------------------------------------------------------

class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        path_ = fs::temp_directory_path() /
                ("opsim_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    fs::path path_;
};

inline void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    os << text;
}

inline std::string read_text(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

#ifdef OPSIM_BIN

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

// Runs the real binary through the shell; stderr folded into stdout.
inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(OPSIM_BIN) + " " + args + " 2>&1";
    CliResult res;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
    int status = ::pclose(pipe);
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    return res;
}

#endif  // OPSIM_BIN

}  // namespace testsupport
