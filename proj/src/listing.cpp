#include "opsim/listing.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace opsim {

namespace {

constexpr std::array<std::string_view, 6> kPrefixes = {
    "rep", "repe", "repz", "repne", "repnz", "lock",
};

const std::unordered_set<std::string> kConditionalJumps = {
    "ja", "jae", "jb", "jbe", "jc", "jcxz", "jecxz", "je", "jg", "jge",
    "jl", "jle", "jna", "jnae", "jnb", "jnbe", "jnc", "jne", "jng", "jnge",
    "jnl", "jnle", "jno", "jnp", "jns", "jnz", "jo", "jp", "jpe", "jpo",
    "js", "jz",
};

bool is_prefix_token(std::string_view tok) {
    return std::find(kPrefixes.begin(), kPrefixes.end(), tok) != kPrefixes.end();
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Pops the next whitespace-delimited token off the front of `rest`.
std::string_view take_token(std::string_view& rest) {
    rest = trim(rest);
    std::size_t end = 0;
    while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
    std::string_view tok = rest.substr(0, end);
    rest.remove_prefix(end);
    rest = trim(rest);
    return tok;
}

std::vector<std::string> split_operands(std::string_view rest) {
    std::vector<std::string> ops;
    if (rest.empty()) return ops;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
        if (i == rest.size() || rest[i] == ',') {
            ops.emplace_back(trim(rest.substr(start, i - start)));
            start = i + 1;
        }
    }
    return ops;
}

}  // namespace

std::size_t Program::total_instructions() const {
    std::size_t n = 0;
    for (const auto& sub : subroutines) n += sub.instructions.size();
    return n;
}

Program parse_listing(std::string_view text, std::string id) {
    Program program;
    program.id = std::move(id);

    std::unordered_set<std::string> seen_names;
    bool in_proc = false;
    std::string open_name;
    int open_line = 0;
    Subroutine current;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = (eol == std::string_view::npos)
                                   ? text.substr(pos)
                                   : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (std::size_t semi = raw.find(';'); semi != std::string_view::npos)
            raw = raw.substr(0, semi);

        std::string_view rest = trim(raw);
        if (rest.empty()) continue;

        // Drop leading `<label>:` tokens; a line that was only labels is skipped.
        while (!rest.empty()) {
            std::string_view probe = rest;
            std::string_view first = take_token(probe);
            if (first.empty() || first.back() != ':') break;
            rest = probe;
        }
        if (rest.empty()) continue;

        std::string_view remainder = rest;
        std::string_view first = take_token(remainder);

        // `<name> proc` / `<name> endp` directives.
        std::string_view directive_probe = remainder;
        std::string_view second = take_token(directive_probe);
        std::string second_lower = to_lower(second);
        if (second_lower == "proc" && directive_probe.empty()) {
            if (in_proc)
                throw MalformedListing(line_no, "proc '" + std::string(first) +
                                                    "' opened inside proc '" + open_name + "'");
            open_name = std::string(first);
            if (!seen_names.insert(open_name).second)
                throw MalformedListing(line_no, "duplicate proc name '" + open_name + "'");
            in_proc = true;
            open_line = line_no;
            current = Subroutine{open_name, {}};
            continue;
        }
        if (second_lower == "endp" && directive_probe.empty()) {
            if (!in_proc)
                throw MalformedListing(line_no, "endp without proc");
            if (std::string(first) != open_name)
                throw MalformedListing(line_no, "endp name '" + std::string(first) +
                                                    "' does not match proc '" + open_name + "'");
            if (current.instructions.empty())
                throw EmptySubroutine(line_no, open_name);
            program.subroutines.push_back(std::move(current));
            in_proc = false;
            continue;
        }

        // Instruction line.
        if (!in_proc)
            throw MalformedListing(line_no, "instruction outside any proc");

        Instruction ins;
        ins.line_no = line_no;
        ins.mnemonic = to_lower(first);
        if (is_prefix_token(ins.mnemonic) && !remainder.empty()) {
            std::string_view opcode = take_token(remainder);
            ins.mnemonic += '.';
            ins.mnemonic += to_lower(opcode);
        }
        ins.operands = split_operands(remainder);
        current.instructions.push_back(std::move(ins));
    }

    if (in_proc)
        throw MalformedListing(open_line, "unterminated proc '" + open_name + "'");

    return program;
}

const std::vector<Subroutine>& split_subroutines(const Program& p) {
    return p.subroutines;
}

std::string serialize_instruction(const Instruction& ins) {
    std::string line = ins.mnemonic;
    // A prefix-joined mnemonic goes back out as two tokens.
    if (std::size_t dot = line.find('.'); dot != std::string::npos && is_prefix_token(line.substr(0, dot)))
        line[dot] = ' ';
    for (std::size_t i = 0; i < ins.operands.size(); ++i)
        line += (i == 0 ? " " : ", ") + ins.operands[i];
    return line;
}

std::string serialize_program(const Program& p) {
    std::string out;
    bool first = true;
    for (const auto& sub : p.subroutines) {
        if (!first) out += '\n';
        first = false;
        out += sub.name + " proc\n";
        for (const auto& ins : sub.instructions)
            out += "    " + serialize_instruction(ins) + '\n';
        out += sub.name + " endp\n";
    }
    return out;
}

bool is_conditional_jump(const std::string& mnemonic) {
    return kConditionalJumps.count(mnemonic) > 0;
}

bool is_control_transfer(const std::string& mnemonic) {
    return mnemonic == "jmp" || mnemonic == "call" || mnemonic == "ret" ||
           mnemonic == "retn" || is_conditional_jump(mnemonic);
}

}  // namespace opsim
