#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opsim/errors.hpp"

namespace opsim {

// One decoded assembly line. The mnemonic is the lowercased first token of
// the line; an instruction prefix (rep, lock, ...) is folded into it with a
// dot ("rep.movsb") so the pair counts as a single opcode bin.
struct Instruction {
    std::string mnemonic;
    std::vector<std::string> operands;
    int line_no = 0;

    // Equality is content equality; line_no is a source coordinate, not content.
    bool operator==(const Instruction& o) const {
        return mnemonic == o.mnemonic && operands == o.operands;
    }
};

struct Subroutine {
    std::string name;
    std::vector<Instruction> instructions;

    bool operator==(const Subroutine&) const = default;
};

struct Program {
    std::string id;
    std::vector<Subroutine> subroutines;

    std::size_t total_instructions() const;

    bool operator==(const Program&) const = default;
};

// Listing format, one item per line:
//   <name> proc        opens a subroutine
//   <name> endp        closes it (name must match)
//   instruction lines: optional leading whitespace, mnemonic, optional
//                      comma-separated operands
//   `; ...` comments, blank lines and `<label>:` lines are ignored
//   instruction lines outside proc/endp are an error
//
// Throws MalformedListing or EmptySubroutine. Parsing is deterministic and
// pure; the returned Program is immutable by convention and safe to share
// across threads.
Program parse_listing(std::string_view text, std::string id);

// The program's subroutines in source order.
const std::vector<Subroutine>& split_subroutines(const Program& p);

// Renders a Program back to the listing format. Re-parsing the result yields
// an identical Program. Prefix-joined mnemonics ("rep.movsb") are written
// back as two tokens.
std::string serialize_program(const Program& p);

std::string serialize_instruction(const Instruction& ins);

// True for jmp and the conditional-jump family plus call/ret.
bool is_control_transfer(const std::string& mnemonic);

bool is_conditional_jump(const std::string& mnemonic);

}  // namespace opsim
