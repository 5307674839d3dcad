#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opsim/compare.hpp"
#include "opsim/listing.hpp"
#include "opsim/mutate.hpp"

namespace opsim {

// One row of the threshold-sweep table: the error counts that rule
// `variant-pair iff d < threshold` would produce at this cut.
struct SweepRow {
    double threshold = 0.0;
    int false_positives = 0;
    int false_negatives = 0;
};

struct EvalSummary {
    ClassifierConfig classifier;
    int pairs = 0;
    int true_positives = 0;
    int true_negatives = 0;
    int false_positives = 0;
    int false_negatives = 0;
    std::optional<double> precision;  // empty when no pair was predicted positive
    std::optional<double> recall;     // empty when no true pair exists
    std::vector<SweepRow> sweep;      // thresholds ascending; FP grows, FN shrinks
};

// Score verdicts against the manifest's ground-truth family labels. Two
// programs are a true pair when they share a family root: a variant belongs
// to its (transitively resolved) parent, any other id to itself. Throws
// IdMismatch when the manifest names a program absent from the verdicts.
EvalSummary evaluate(const std::vector<VariantRecord>& manifest,
                     const std::vector<PairVerdict>& verdicts,
                     const ClassifierConfig& classifier);

// JSON object with alphabetically sorted keys, byte-stable across runs.
std::string eval_to_json(const EvalSummary& summary);

// CSV of the threshold-sweep table: threshold,false_positives,false_negatives.
std::string sweep_to_csv(const EvalSummary& summary);

// CSV with columns (program_id, subroutine, mnemonic, count, proportion),
// rows sorted by program_id, subroutine, mnemonic.
std::string histograms_to_csv(const std::vector<Program>& programs);

// Plaintext opcode bar chart, one block per subroutine.
std::string histogram_chart(const Program& program);

}  // namespace opsim
