#include "opsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "opsim/histogram.hpp"

namespace opsim {

namespace {

// A variant's family root is its parent, followed transitively when the
// parent is itself a variant of something else.
class FamilyIndex {
public:
    explicit FamilyIndex(const std::vector<VariantRecord>& manifest) {
        for (const auto& rec : manifest) {
            auto [it, inserted] = parent_of_.emplace(rec.variant_id, rec.parent_id);
            if (!inserted && it->second != rec.parent_id)
                throw Error("manifest lists '" + rec.variant_id + "' with two parents");
        }
    }

    std::string root(std::string id) const {
        std::size_t hops = 0;
        for (auto it = parent_of_.find(id); it != parent_of_.end(); it = parent_of_.find(id)) {
            id = it->second;
            if (++hops > parent_of_.size())
                throw Error("cycle in manifest parentage at '" + id + "'");
        }
        return id;
    }

private:
    std::unordered_map<std::string, std::string> parent_of_;
};

}  // namespace

EvalSummary evaluate(const std::vector<VariantRecord>& manifest,
                     const std::vector<PairVerdict>& verdicts,
                     const ClassifierConfig& classifier) {
    std::set<std::string> universe;
    for (const auto& v : verdicts) {
        universe.insert(v.a);
        universe.insert(v.b);
    }
    for (const auto& rec : manifest) {
        if (!universe.count(rec.variant_id))
            throw IdMismatch("manifest id '" + rec.variant_id + "' missing from verdicts");
        if (!universe.count(rec.parent_id))
            throw IdMismatch("manifest id '" + rec.parent_id + "' missing from verdicts");
    }

    FamilyIndex families(manifest);

    EvalSummary summary;
    summary.classifier = classifier;
    summary.pairs = static_cast<int>(verdicts.size());

    struct Scored {
        double distance;
        bool same_family;
    };
    std::vector<Scored> scored;
    scored.reserve(verdicts.size());
    for (const auto& v : verdicts) {
        bool same_family = families.root(v.a) == families.root(v.b);
        bool predicted = v.verdict == Verdict::variant_pair;
        if (predicted && same_family) ++summary.true_positives;
        if (predicted && !same_family) ++summary.false_positives;
        if (!predicted && same_family) ++summary.false_negatives;
        if (!predicted && !same_family) ++summary.true_negatives;
        scored.push_back({v.distance, same_family});
    }

    if (summary.true_positives + summary.false_positives > 0)
        summary.precision = static_cast<double>(summary.true_positives) /
                            (summary.true_positives + summary.false_positives);
    if (summary.true_positives + summary.false_negatives > 0)
        summary.recall = static_cast<double>(summary.true_positives) /
                         (summary.true_positives + summary.false_negatives);

    // Sweep every cut that changes the decision boundary: below the smallest
    // distance nothing is a pair, above the largest everything is.
    std::vector<double> cuts;
    cuts.push_back(0.0);
    double max_distance = 0.0;
    for (const auto& s : scored) {
        cuts.push_back(s.distance);
        max_distance = std::max(max_distance, s.distance);
    }
    cuts.push_back(max_distance + 1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (double cut : cuts) {
        SweepRow row;
        row.threshold = cut;
        for (const auto& s : scored) {
            bool predicted = s.distance < cut;
            if (predicted && !s.same_family) ++row.false_positives;
            if (!predicted && s.same_family) ++row.false_negatives;
        }
        summary.sweep.push_back(row);
    }

    return summary;
}

std::string eval_to_json(const EvalSummary& summary) {
    nlohmann::json sweep = nlohmann::json::array();
    for (const auto& row : summary.sweep)
        sweep.push_back({
            {"false_negatives", row.false_negatives},
            {"false_positives", row.false_positives},
            {"threshold", row.threshold},
        });
    nlohmann::json j = {
        {"false_negatives", summary.false_negatives},
        {"false_positives", summary.false_positives},
        {"metric", summary.classifier.metric.name()},
        {"pairs", summary.pairs},
        {"precision", summary.precision ? nlohmann::json(*summary.precision)
                                        : nlohmann::json(nullptr)},
        {"recall", summary.recall ? nlohmann::json(*summary.recall) : nlohmann::json(nullptr)},
        {"root", summary.classifier.metric.apply_root},
        {"sweep", std::move(sweep)},
        {"threshold", summary.classifier.threshold},
        {"true_negatives", summary.true_negatives},
        {"true_positives", summary.true_positives},
    };
    return j.dump(2) + "\n";
}

std::string sweep_to_csv(const EvalSummary& summary) {
    std::string csv = "threshold,false_positives,false_negatives\n";
    for (const auto& row : summary.sweep) {
        // Shortest round-trip float form, so re-reading the cut is lossless.
        csv += nlohmann::json(row.threshold).dump();
        csv += ',' + std::to_string(row.false_positives) + ',' +
               std::to_string(row.false_negatives) + '\n';
    }
    return csv;
}

std::string histograms_to_csv(const std::vector<Program>& programs) {
    struct Row {
        std::string program_id;
        std::string subroutine;
        std::string mnemonic;
        long long count;
        double proportion;
    };
    std::vector<Row> rows;
    for (const auto& prog : programs) {
        for (const auto& sub : prog.subroutines) {
            OpcodeHistogram raw = build_histogram(sub, prog.id);
            OpcodeHistogram norm = normalize(raw);
            for (const auto& [mnemonic, count] : raw.bins)
                rows.push_back({prog.id, sub.name, mnemonic,
                                static_cast<long long>(std::llround(count)),
                                norm.bins.at(mnemonic)});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.program_id, a.subroutine, a.mnemonic) <
               std::tie(b.program_id, b.subroutine, b.mnemonic);
    });

    std::string csv = "program_id,subroutine,mnemonic,count,proportion\n";
    char buf[64];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%lld,%.6f", row.count, row.proportion);
        csv += row.program_id + ',' + row.subroutine + ',' + row.mnemonic + ',' + buf + '\n';
    }
    return csv;
}

std::string histogram_chart(const Program& program) {
    constexpr int kBarWidth = 40;
    std::string out;
    bool first = true;
    for (const auto& sub : program.subroutines) {
        if (!first) out += '\n';
        first = false;
        OpcodeHistogram raw = build_histogram(sub, program.id);
        double max_count = 0.0;
        std::size_t name_width = 0;
        for (const auto& [mnemonic, count] : raw.bins) {
            max_count = std::max(max_count, count);
            name_width = std::max(name_width, mnemonic.size());
        }
        out += program.id + " :: " + sub.name + '\n';
        for (const auto& [mnemonic, count] : raw.bins) {
            auto bars = static_cast<std::size_t>(
                std::max<long long>(1, std::llround(count / max_count * kBarWidth)));
            char buf[64];
            std::snprintf(buf, sizeof(buf), "  %-*s %5lld  ", static_cast<int>(name_width),
                          mnemonic.c_str(), static_cast<long long>(std::llround(count)));
            out += buf;
            out.append(bars, '#');
            out += '\n';
        }
    }
    return out;
}

}  // namespace opsim
