#include "opsim/histogram.hpp"

namespace opsim {

double OpcodeHistogram::total() const {
    double sum = 0.0;
    for (const auto& [mnemonic, value] : bins) sum += value;
    return sum;
}

double OpcodeHistogram::at(const std::string& mnemonic) const {
    auto it = bins.find(mnemonic);
    return it == bins.end() ? 0.0 : it->second;
}

OpcodeHistogram build_histogram(const Subroutine& s, const std::string& program_id) {
    if (s.instructions.empty())
        throw EmptySubroutine(0, s.name);

    OpcodeHistogram h;
    h.kind = HistKind::raw;
    h.program_id = program_id;
    h.subroutine = s.name;
    for (const auto& ins : s.instructions)
        h.bins[ins.mnemonic] += 1.0;
    return h;
}

OpcodeHistogram normalize(const OpcodeHistogram& h) {
    double sum = h.total();
    if (sum <= 0.0)
        throw ZeroTotal("cannot normalize histogram with zero total (" + h.subroutine + ")");

    OpcodeHistogram out = h;
    out.kind = HistKind::normalized;
    for (auto& [mnemonic, value] : out.bins) value /= sum;
    return out;
}

ProgramProfile profile(const Program& p) {
    if (p.subroutines.empty())
        throw EmptyProfile("program '" + p.id + "' has no subroutines");

    ProgramProfile prof;
    prof.program_id = p.id;
    prof.histograms.reserve(p.subroutines.size());
    for (const auto& sub : p.subroutines)
        prof.histograms.push_back(normalize(build_histogram(sub, p.id)));
    return prof;
}

}  // namespace opsim
