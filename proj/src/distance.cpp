#include "opsim/distance.hpp"

#include <cmath>
#include <cstdlib>

namespace opsim {

namespace {

double power_term(double diff, int r) {
    switch (r) {
        case 1: return diff;
        case 2: return diff * diff;
        default: return std::pow(diff, r);
    }
}

double apply_root(double sum, int r) {
    switch (r) {
        case 1: return sum;
        case 2: return std::sqrt(sum);
        default: return std::pow(sum, 1.0 / r);
    }
}

}  // namespace

std::string MetricConfig::name() const {
    if (order == 1) return "manhattan";
    if (order == 2) return "euclidean";
    return "minkowski:" + std::to_string(order);
}

MetricConfig metric_from_name(const std::string& name, bool root) {
    if (name == "manhattan") return {1, root};
    if (name == "euclidean") return {2, root};
    if (name.rfind("minkowski:", 0) == 0) {
        const std::string arg = name.substr(10);
        char* end = nullptr;
        long r = std::strtol(arg.c_str(), &end, 10);
        if (end == arg.c_str() || *end != '\0' || r < 1)
            throw Error("bad minkowski order '" + arg + "'");
        return {static_cast<int>(r), root};
    }
    throw Error("unknown metric '" + name + "'");
}

double minkowski_distance(const OpcodeHistogram& x, const OpcodeHistogram& y,
                          const MetricConfig& cfg) {
    if (x.kind != HistKind::normalized || y.kind != HistKind::normalized)
        throw NonNormalizedInput("minkowski_distance requires normalized histograms");
    if (cfg.order < 1)
        throw Error("metric order must be >= 1");

    detail::KahanSum acc;
    auto xi = x.bins.begin();
    auto yi = y.bins.begin();
    while (xi != x.bins.end() || yi != y.bins.end()) {
        double diff;
        if (yi == y.bins.end() || (xi != x.bins.end() && xi->first < yi->first)) {
            diff = xi->second;
            ++xi;
        } else if (xi == x.bins.end() || yi->first < xi->first) {
            diff = yi->second;
            ++yi;
        } else {
            diff = xi->second - yi->second;
            ++xi;
            ++yi;
        }
        acc.add(power_term(std::fabs(diff), cfg.order));
    }

    double sum = acc.value();
    return cfg.apply_root ? apply_root(sum, cfg.order) : sum;
}

double manhattan(const OpcodeHistogram& x, const OpcodeHistogram& y) {
    return minkowski_distance(x, y, MetricConfig::manhattan());
}

double euclidean(const OpcodeHistogram& x, const OpcodeHistogram& y, bool apply_root) {
    return minkowski_distance(x, y, MetricConfig::euclidean(apply_root));
}

}  // namespace opsim
