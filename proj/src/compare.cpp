#include "opsim/compare.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace opsim {

namespace {

void require_nonempty(const ProgramProfile& p) {
    if (p.histograms.empty())
        throw EmptyProfile("profile '" + p.program_id + "' is empty");
    for (const auto& h : p.histograms)
        if (h.kind != HistKind::normalized)
            throw NonNormalizedInput("profile '" + p.program_id + "' holds a raw histogram");
}

}  // namespace

const char* verdict_name(Verdict v) {
    return v == Verdict::variant_pair ? "variant-pair" : "distinct";
}

DirectedComparison directed_distance(const ProgramProfile& p1, const ProgramProfile& p2,
                                     const MetricConfig& cfg) {
    require_nonempty(p1);
    require_nonempty(p2);

    DirectedComparison cmp;
    cmp.from = p1.program_id;
    cmp.to = p2.program_id;
    cmp.per_subroutine_minima.reserve(p1.histograms.size());

    detail::KahanSum mean_acc;
    for (const auto& hi : p1.histograms) {
        double best = 0.0;
        const OpcodeHistogram* match = nullptr;
        for (const auto& hj : p2.histograms) {
            double d = minkowski_distance(hi, hj, cfg);
            if (match == nullptr || d < best) {  // strict <: first of a tie wins
                best = d;
                match = &hj;
            }
        }
        cmp.per_subroutine_minima.push_back({hi.subroutine, match->subroutine, best});
        mean_acc.add(best);
    }
    cmp.distance = mean_acc.value() / static_cast<double>(p1.histograms.size());
    return cmp;
}

double symmetric_distance(const ProgramProfile& p1, const ProgramProfile& p2,
                          const MetricConfig& cfg) {
    return (directed_distance(p1, p2, cfg).distance +
            directed_distance(p2, p1, cfg).distance) / 2.0;
}

DistanceMatrix distance_matrix(const std::vector<ProgramProfile>& profiles,
                               const MetricConfig& cfg) {
    if (profiles.size() < 2)
        throw Error("distance_matrix requires at least 2 profiles");

    std::set<std::string> ids;
    for (const auto& p : profiles) {
        require_nonempty(p);
        if (!ids.insert(p.program_id).second)
            throw DuplicateProgramId("duplicate program id '" + p.program_id + "'");
    }

    const std::size_t n = profiles.size();
    DistanceMatrix m;
    m.metric = cfg;
    m.program_ids.reserve(n);
    for (const auto& p : profiles) m.program_ids.push_back(p.program_id);
    m.cells.assign(n, std::vector<double>(n, 0.0));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);

    auto fill_cell = [&](std::size_t k) {
        auto [i, j] = pairs[k];
        m.cells[i][j] = symmetric_distance(profiles[i], profiles[j], cfg);
    };

    std::size_t workers = std::min<std::size_t>(std::thread::hardware_concurrency(), pairs.size());
    if (workers <= 1 || pairs.size() < 8) {
        for (std::size_t k = 0; k < pairs.size(); ++k) fill_cell(k);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t k = cursor.fetch_add(1); k < pairs.size();
                     k = cursor.fetch_add(1))
                    fill_cell(k);
            });
        for (auto& t : pool) t.join();
    }

    for (auto [i, j] : pairs) m.cells[j][i] = m.cells[i][j];
    m.generated_at = std::chrono::system_clock::now();
    return m;
}

Verdict classify_pair(double d, const ClassifierConfig& cfg) {
    return d < cfg.threshold ? Verdict::variant_pair : Verdict::distinct;
}

std::vector<PairVerdict> classify_corpus(const DistanceMatrix& m, const ClassifierConfig& cfg) {
    if (!(m.metric == cfg.metric))
        throw MetricMismatch("matrix metric " + m.metric.name() +
                             " does not match classifier metric " + cfg.metric.name());

    std::vector<PairVerdict> out;
    out.reserve(m.program_ids.size() * (m.program_ids.size() - 1) / 2);
    for (std::size_t i = 0; i < m.program_ids.size(); ++i) {
        for (std::size_t j = i + 1; j < m.program_ids.size(); ++j) {
            PairVerdict v;
            v.a = m.program_ids[i];
            v.b = m.program_ids[j];
            if (v.b < v.a) std::swap(v.a, v.b);
            v.distance = m.cells[i][j];
            v.verdict = classify_pair(v.distance, cfg);
            out.push_back(std::move(v));
        }
    }
    std::sort(out.begin(), out.end(), [](const PairVerdict& x, const PairVerdict& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return out;
}

std::string matrix_to_csv(const DistanceMatrix& m, bool full_precision) {
    std::string out;
    for (const auto& id : m.program_ids) {
        out += ',';
        out += id;
    }
    out += '\n';
    char buf[64];
    for (std::size_t i = 0; i < m.program_ids.size(); ++i) {
        out += m.program_ids[i];
        for (std::size_t j = 0; j < m.program_ids.size(); ++j) {
            std::snprintf(buf, sizeof(buf), full_precision ? "%.17g" : "%.3f", m.cells[i][j]);
            out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string verdicts_to_json(const std::vector<PairVerdict>& verdicts,
                             const ClassifierConfig& cfg) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : verdicts) {
        arr.push_back({
            {"pair", {v.a, v.b}},
            {"distance", v.distance},
            {"threshold", cfg.threshold},
            {"metric", cfg.metric.name()},
            {"root", cfg.metric.apply_root},
            {"verdict", verdict_name(v.verdict)},
        });
    }
    return arr.dump(2) + "\n";
}

std::pair<std::vector<PairVerdict>, ClassifierConfig> verdicts_from_json(
    const std::string& text) {
    std::vector<PairVerdict> verdicts;
    ClassifierConfig cfg;
    try {
        nlohmann::json arr = nlohmann::json::parse(text);
        bool first = true;
        for (const auto& item : arr) {
            PairVerdict v;
            v.a = item.at("pair").at(0).get<std::string>();
            v.b = item.at("pair").at(1).get<std::string>();
            v.distance = item.at("distance").get<double>();
            std::string name = item.at("verdict").get<std::string>();
            if (name == verdict_name(Verdict::variant_pair))
                v.verdict = Verdict::variant_pair;
            else if (name == verdict_name(Verdict::distinct))
                v.verdict = Verdict::distinct;
            else
                throw Error("unknown verdict '" + name + "'");

            ClassifierConfig row;
            row.threshold = item.at("threshold").get<double>();
            row.metric = metric_from_name(item.at("metric").get<std::string>());
            row.metric.apply_root = item.at("root").get<bool>();
            if (first) {
                cfg = row;
                first = false;
            } else if (row.threshold != cfg.threshold || !(row.metric == cfg.metric)) {
                throw Error("verdict entries disagree on classifier settings");
            }
            verdicts.push_back(std::move(v));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(std::string("bad verdicts: ") + ex.what());
    }
    return {std::move(verdicts), cfg};
}

}  // namespace opsim
