#pragma once

#include <map>
#include <string>
#include <vector>

#include "opsim/errors.hpp"
#include "opsim/listing.hpp"

namespace opsim {

enum class HistKind { raw, normalized };

// Opcode frequency histogram of one subroutine. Raw histograms hold counts,
// normalized ones hold proportions summing to 1. Bins are sparse: an absent
// mnemonic reads as zero.
struct OpcodeHistogram {
    std::map<std::string, double> bins;
    HistKind kind = HistKind::raw;
    std::string program_id;
    std::string subroutine;

    double total() const;
    double at(const std::string& mnemonic) const;

    bool operator==(const OpcodeHistogram&) const = default;
};

// One normalized histogram per subroutine, in source order.
struct ProgramProfile {
    std::string program_id;
    std::vector<OpcodeHistogram> histograms;
};

// Counts mnemonics of a subroutine. Throws EmptySubroutine on an empty body.
OpcodeHistogram build_histogram(const Subroutine& s, const std::string& program_id = "");

// Divides every bin by the bin total. Throws ZeroTotal if the total is zero
// and NonNormalizedInput never; normalizing an already normalized histogram
// is the identity.
OpcodeHistogram normalize(const OpcodeHistogram& h);

// Normalized histograms for every subroutine of a program.
ProgramProfile profile(const Program& p);

}  // namespace opsim
