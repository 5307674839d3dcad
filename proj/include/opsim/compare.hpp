#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "opsim/distance.hpp"
#include "opsim/histogram.hpp"

namespace opsim {

struct SubroutineMatch {
    std::string source;      // subroutine of `from`
    std::string best_match;  // closest subroutine of `to`
    double distance = 0.0;
};

// One direction of the program comparison: every subroutine of `from`
// matched against its closest subroutine in `to`, then averaged.
struct DirectedComparison {
    std::string from;
    std::string to;
    std::vector<SubroutineMatch> per_subroutine_minima;
    double distance = 0.0;
};

struct DistanceMatrix {
    std::vector<std::string> program_ids;
    std::vector<std::vector<double>> cells;  // symmetric, zero diagonal
    MetricConfig metric;
    std::chrono::system_clock::time_point generated_at;
};

struct ClassifierConfig {
    double threshold = 0.0;
    MetricConfig metric;
};

// Table defaults: 0.832 for Manhattan, 0.186 for squared Euclidean. Suitable
// cuts depend heavily on the mutation engine in play; treat these as starting
// points, not universal constants.
inline constexpr double kDefaultManhattanThreshold = 0.832;
inline constexpr double kDefaultEuclideanThreshold = 0.186;

enum class Verdict { variant_pair, distinct };

const char* verdict_name(Verdict v);

struct PairVerdict {
    std::string a;
    std::string b;
    double distance = 0.0;
    Verdict verdict = Verdict::distinct;
};

// For each histogram of p1, the minimum distance into p2 (ties broken by
// p2's source order) and the mean of those minima. Not symmetric in its
// arguments. Throws EmptyProfile.
DirectedComparison directed_distance(const ProgramProfile& p1, const ProgramProfile& p2,
                                     const MetricConfig& cfg);

// (d(P1,P2) + d(P2,P1)) / 2.
double symmetric_distance(const ProgramProfile& p1, const ProgramProfile& p2,
                          const MetricConfig& cfg);

// Pairwise symmetric distances. Distinct pairs are computed concurrently and
// mirrored; results are bit-identical regardless of thread count. Throws
// DuplicateProgramId and EmptyProfile.
DistanceMatrix distance_matrix(const std::vector<ProgramProfile>& profiles,
                               const MetricConfig& cfg);

// variant-pair iff d < threshold, strictly; a tie classifies distinct.
Verdict classify_pair(double d, const ClassifierConfig& cfg);

// One verdict per unordered pair, ordered lexicographically by program id.
// Throws MetricMismatch when the matrix was built with a different metric.
std::vector<PairVerdict> classify_corpus(const DistanceMatrix& m, const ClassifierConfig& cfg);

// CSV with a header row and column of program ids. Cells at 3 decimals by
// default, full precision on request.
std::string matrix_to_csv(const DistanceMatrix& m, bool full_precision = false);

// JSON list of {pair, distance, threshold, metric, root, verdict}.
std::string verdicts_to_json(const std::vector<PairVerdict>& verdicts,
                             const ClassifierConfig& cfg);

// Inverse of verdicts_to_json: the verdict list plus the classifier it was
// produced under. Throws Error on malformed input or on entries that
// disagree about the classifier.
std::pair<std::vector<PairVerdict>, ClassifierConfig> verdicts_from_json(
    const std::string& text);

}  // namespace opsim
