#include "opsim/mutate.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

#include "opsim/rng.hpp"

namespace opsim {

namespace {

const std::array<std::string, 6> kInterchangeable = {"eax", "ebx", "ecx", "edx", "esi", "edi"};

const std::unordered_set<std::string> kRegisters = {
    "eax", "ebx", "ecx", "edx", "esi", "edi", "ebp", "esp",
    "ax",  "bx",  "cx",  "dx",  "si",  "di",  "bp",  "sp",
    "al",  "ah",  "bl",  "bh",  "cl",  "ch",  "dl",  "dh",
};

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_register(const std::string& tok) {
    return kRegisters.count(to_lower(tok)) > 0;
}

// Variant document: instructions plus the labels rendered before them.
struct DocLine {
    std::vector<std::string> labels;
    Instruction ins;
};

struct DocSub {
    std::string name;
    std::vector<DocLine> lines;
};

using Document = std::vector<DocSub>;

Document doc_from(const Program& p) {
    Document doc;
    doc.reserve(p.subroutines.size());
    for (const auto& sub : p.subroutines) {
        DocSub d{sub.name, {}};
        d.lines.reserve(sub.instructions.size());
        for (const auto& ins : sub.instructions) d.lines.push_back({{}, ins});
        doc.push_back(std::move(d));
    }
    return doc;
}

std::string render(const Document& doc) {
    std::string out;
    bool first = true;
    for (const auto& sub : doc) {
        if (!first) out += '\n';
        first = false;
        out += sub.name + " proc\n";
        for (const auto& line : sub.lines) {
            for (const auto& label : line.labels) out += label + ":\n";
            out += "    " + serialize_instruction(line.ins) + '\n';
        }
        out += sub.name + " endp\n";
    }
    return out;
}

std::size_t select_count(std::size_t n, double intensity) {
    auto k = static_cast<std::size_t>(std::llround(intensity * static_cast<double>(n)));
    return std::min(k, n);
}

void check_spec(const MutationSpec& spec, Technique expected) {
    if (spec.technique != expected)
        throw Error(std::string("spec technique is ") + technique_name(spec.technique) +
                    ", expected " + technique_name(expected));
    if (!(spec.intensity >= 0.0 && spec.intensity <= 1.0))
        throw Error("intensity must lie in [0,1]");
}

MutationResult finish(const Program& parent, const MutationSpec& spec, const Document& doc,
                      std::vector<Edit> edits) {
    MutationResult res;
    res.record.parent_id = parent.id;
    res.record.variant_id = variant_id_for(parent.id, spec);
    res.record.spec = spec;
    std::stable_sort(edits.begin(), edits.end(),
                     [](const Edit& a, const Edit& b) { return a.line < b.line; });
    res.record.edits = std::move(edits);
    res.listing = render(doc);
    res.variant = parse_listing(res.listing, res.record.variant_id);
    return res;
}

Instruction make_ins(std::string mnemonic, std::vector<std::string> operands) {
    Instruction ins;
    ins.mnemonic = std::move(mnemonic);
    ins.operands = std::move(operands);
    return ins;
}

// ---------------------------------------------------------------------------
// instruction_replacement equivalence table
// ---------------------------------------------------------------------------

// Zeroing family forms, paper order: mov R,0 / xor R,R / and R,0 / sub R,R.
int zeroing_form(const Instruction& ins) {
    if (ins.operands.size() != 2 || !is_register(ins.operands[0])) return -1;
    const std::string& a = ins.operands[0];
    const std::string& b = ins.operands[1];
    if (ins.mnemonic == "mov" && b == "0") return 0;
    if (ins.mnemonic == "xor" && b == a) return 1;
    if (ins.mnemonic == "and" && b == "0") return 2;
    if (ins.mnemonic == "sub" && b == a) return 3;
    return -1;
}

Instruction zeroing_ins(int form, const std::string& reg) {
    switch (form) {
        case 0: return make_ins("mov", {reg, "0"});
        case 1: return make_ins("xor", {reg, reg});
        case 2: return make_ins("and", {reg, "0"});
        default: return make_ins("sub", {reg, reg});
    }
}

bool parse_immediate(const std::string& tok, long long& value) {
    if (tok.empty()) return false;
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || errno == ERANGE || v == LLONG_MIN) return false;
    value = v;
    return true;
}

bool is_add_sub_site(const Instruction& ins, long long& imm) {
    return (ins.mnemonic == "add" || ins.mnemonic == "sub") && ins.operands.size() == 2 &&
           is_register(ins.operands[0]) && parse_immediate(ins.operands[1], imm);
}

bool is_push_pop_pair(const Instruction& a, const Instruction& b) {
    return a.mnemonic == "push" && a.operands.size() == 1 && is_register(a.operands[0]) &&
           b.mnemonic == "pop" && b.operands.size() == 1 && is_register(b.operands[0]);
}

bool is_mov_reg_reg(const Instruction& ins) {
    return ins.mnemonic == "mov" && ins.operands.size() == 2 &&
           is_register(ins.operands[0]) && is_register(ins.operands[1]);
}

}  // namespace

const char* technique_name(Technique t) {
    switch (t) {
        case Technique::garbage_insertion: return "garbage_insertion";
        case Technique::register_exchange: return "register_exchange";
        case Technique::instruction_replacement: return "instruction_replacement";
        case Technique::instruction_permutation: return "instruction_permutation";
        case Technique::code_transposition: return "code_transposition";
    }
    return "unknown";
}

Technique technique_from_name(const std::string& name) {
    for (Technique t : {Technique::garbage_insertion, Technique::register_exchange,
                        Technique::instruction_replacement, Technique::instruction_permutation,
                        Technique::code_transposition})
        if (name == technique_name(t)) return t;
    throw Error("unknown technique '" + name + "'");
}

std::string variant_id_for(const std::string& parent_id, const MutationSpec& spec) {
    char suffix[48];
    std::snprintf(suffix, sizeof(suffix), "_s%llu_i%03d",
                  static_cast<unsigned long long>(spec.seed),
                  static_cast<int>(std::llround(spec.intensity * 100.0)));
    return parent_id + "__" + technique_name(spec.technique) + suffix;
}

MutationResult mutate_garbage(const Program& parent, const MutationSpec& spec) {
    check_spec(spec, Technique::garbage_insertion);
    Document doc = doc_from(parent);
    SplitMix64 rng(spec.seed);
    std::vector<Edit> edits;

    // Eligible insertion points, program wide. A boundary sits before the
    // instruction at `pos`; pos == size() appends at the end of the body.
    struct Boundary {
        std::size_t sub;
        std::size_t pos;
    };
    std::vector<Boundary> sites;
    for (std::size_t s = 0; s < doc.size(); ++s) {
        const auto& lines = doc[s].lines;
        for (std::size_t b = 0; b <= lines.size(); ++b) {
            bool cmp_jcc_window = b > 0 && b < lines.size() &&
                                  lines[b - 1].ins.mnemonic == "cmp" &&
                                  is_conditional_jump(lines[b].ins.mnemonic);
            if (!cmp_jcc_window) sites.push_back({s, b});
        }
    }

    std::vector<std::size_t> chosen = rng.pick(sites.size(), select_count(sites.size(), spec.intensity));
    std::vector<Boundary> picked;
    picked.reserve(chosen.size());
    for (std::size_t c : chosen) picked.push_back(sites[c]);
    std::sort(picked.begin(), picked.end(), [](const Boundary& a, const Boundary& b) {
        return std::tie(a.sub, a.pos) > std::tie(b.sub, b.pos);
    });

    for (const Boundary& site : picked) {
        auto& lines = doc[site.sub].lines;
        int anchor = site.pos < lines.size() ? lines[site.pos].ins.line_no
                                             : lines.back().ins.line_no;
        std::vector<Instruction> inserted;
        switch (rng.bounded(3)) {
            case 0:
                inserted.push_back(make_ins("nop", {}));
                break;
            case 1: {
                const std::string& reg = kInterchangeable[rng.bounded(kInterchangeable.size())];
                inserted.push_back(make_ins("push", {reg}));
                inserted.push_back(make_ins("pop", {reg}));
                break;
            }
            default: {
                const std::string& reg = kInterchangeable[rng.bounded(kInterchangeable.size())];
                inserted.push_back(make_ins("mov", {reg, reg}));
                break;
            }
        }
        std::string detail = "insert";
        for (const auto& ins : inserted) detail += " '" + serialize_instruction(ins) + "'";
        for (std::size_t i = inserted.size(); i-- > 0;)
            lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(site.pos),
                         DocLine{{}, inserted[i]});
        edits.push_back({anchor, "insert", detail});
    }

    return finish(parent, spec, doc, std::move(edits));
}

MutationResult mutate_register_exchange(const Program& parent, const MutationSpec& spec) {
    check_spec(spec, Technique::register_exchange);
    Document doc = doc_from(parent);
    SplitMix64 rng(spec.seed);
    std::vector<Edit> edits;

    std::vector<std::size_t> chosen = rng.pick(doc.size(), select_count(doc.size(), spec.intensity));
    std::sort(chosen.begin(), chosen.end());

    for (std::size_t s : chosen) {
        std::vector<std::size_t> perm = rng.permutation(kInterchangeable.size());
        for (auto& line : doc[s].lines) {
            Instruction before = line.ins;
            for (auto& operand : line.ins.operands) {
                std::string rewritten;
                std::size_t i = 0;
                while (i < operand.size()) {
                    auto word_char = [](unsigned char c) {
                        return std::isalnum(c) != 0 || c == '_';
                    };
                    if (!word_char(static_cast<unsigned char>(operand[i]))) {
                        rewritten += operand[i++];
                        continue;
                    }
                    std::size_t j = i;
                    while (j < operand.size() && word_char(static_cast<unsigned char>(operand[j]))) ++j;
                    std::string word = to_lower(operand.substr(i, j - i));
                    auto it = std::find(kInterchangeable.begin(), kInterchangeable.end(), word);
                    if (it != kInterchangeable.end()) {
                        std::size_t idx = static_cast<std::size_t>(it - kInterchangeable.begin());
                        rewritten += kInterchangeable[perm[idx]];
                    } else {
                        rewritten += operand.substr(i, j - i);
                    }
                    i = j;
                }
                operand = std::move(rewritten);
            }
            if (!(line.ins == before))
                edits.push_back({before.line_no, "register_exchange",
                                 "'" + serialize_instruction(before) + "' -> '" +
                                     serialize_instruction(line.ins) + "'"});
        }
    }

    return finish(parent, spec, doc, std::move(edits));
}

MutationResult mutate_replacement(const Program& parent, const MutationSpec& spec) {
    check_spec(spec, Technique::instruction_replacement);
    Document doc = doc_from(parent);
    SplitMix64 rng(spec.seed);
    std::vector<Edit> edits;

    enum Family { kZeroing, kAddSub, kPushPop, kMovRegReg };
    struct Site {
        std::size_t sub;
        std::size_t idx;
        Family family;
    };
    std::vector<Site> sites;
    for (std::size_t s = 0; s < doc.size(); ++s) {
        const auto& lines = doc[s].lines;
        std::size_t i = 0;
        while (i < lines.size()) {
            long long imm = 0;
            if (i + 1 < lines.size() && is_push_pop_pair(lines[i].ins, lines[i + 1].ins)) {
                sites.push_back({s, i, kPushPop});
                i += 2;
            } else if (zeroing_form(lines[i].ins) >= 0) {
                sites.push_back({s, i, kZeroing});
                ++i;
            } else if (is_add_sub_site(lines[i].ins, imm)) {
                sites.push_back({s, i, kAddSub});
                ++i;
            } else if (is_mov_reg_reg(lines[i].ins)) {
                sites.push_back({s, i, kMovRegReg});
                ++i;
            } else {
                ++i;
            }
        }
    }

    std::vector<std::size_t> chosen = rng.pick(sites.size(), select_count(sites.size(), spec.intensity));
    std::vector<Site> picked;
    picked.reserve(chosen.size());
    for (std::size_t c : chosen) picked.push_back(sites[c]);
    std::sort(picked.begin(), picked.end(), [](const Site& a, const Site& b) {
        return std::tie(a.sub, a.idx) > std::tie(b.sub, b.idx);
    });

    for (const Site& site : picked) {
        auto& lines = doc[site.sub].lines;
        const Instruction old = lines[site.idx].ins;
        int anchor = old.line_no;
        switch (site.family) {
            case kZeroing: {
                int cur = zeroing_form(old);
                std::array<int, 3> alts{};
                int na = 0;
                for (int f = 0; f < 4; ++f)
                    if (f != cur) alts[static_cast<std::size_t>(na++)] = f;
                Instruction repl = zeroing_ins(alts[rng.bounded(3)], old.operands[0]);
                edits.push_back({anchor, "replace",
                                 "'" + serialize_instruction(old) + "' -> '" +
                                     serialize_instruction(repl) + "'"});
                lines[site.idx].ins = std::move(repl);
                break;
            }
            case kAddSub: {
                long long imm = 0;
                parse_immediate(old.operands[1], imm);
                Instruction repl = make_ins(old.mnemonic == "add" ? "sub" : "add",
                                            {old.operands[0], std::to_string(-imm)});
                edits.push_back({anchor, "replace",
                                 "'" + serialize_instruction(old) + "' -> '" +
                                     serialize_instruction(repl) + "'"});
                lines[site.idx].ins = std::move(repl);
                break;
            }
            case kPushPop: {
                const Instruction old2 = lines[site.idx + 1].ins;
                Instruction repl = make_ins("mov", {old2.operands[0], old.operands[0]});
                edits.push_back({anchor, "replace",
                                 "'" + serialize_instruction(old) + "; " +
                                     serialize_instruction(old2) + "' -> '" +
                                     serialize_instruction(repl) + "'"});
                lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(site.idx),
                            lines.begin() + static_cast<std::ptrdiff_t>(site.idx) + 2);
                lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(site.idx),
                             DocLine{{}, std::move(repl)});
                break;
            }
            case kMovRegReg: {
                Instruction push_ins = make_ins("push", {old.operands[1]});
                Instruction pop_ins = make_ins("pop", {old.operands[0]});
                edits.push_back({anchor, "replace",
                                 "'" + serialize_instruction(old) + "' -> '" +
                                     serialize_instruction(push_ins) + "; " +
                                     serialize_instruction(pop_ins) + "'"});
                lines[site.idx].ins = std::move(push_ins);
                lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(site.idx) + 1,
                             DocLine{{}, std::move(pop_ins)});
                break;
            }
        }
    }

    return finish(parent, spec, doc, std::move(edits));
}

MutationResult mutate_permutation(const Program& parent, const MutationSpec& spec) {
    check_spec(spec, Technique::instruction_permutation);
    Document doc = doc_from(parent);
    SplitMix64 rng(spec.seed);
    std::vector<Edit> edits;

    auto two_registers = [](const Instruction& ins) {
        return ins.operands.size() == 2 && is_register(ins.operands[0]) &&
               is_register(ins.operands[1]) && !is_control_transfer(ins.mnemonic);
    };
    // Dependency freedom: dest1 != dest2, dest1 != src2, src1 != dest2.
    auto legal_swap = [&](const Instruction& a, const Instruction& b) {
        if (!two_registers(a) || !two_registers(b)) return false;
        std::string r1 = to_lower(a.operands[0]), r2 = to_lower(a.operands[1]);
        std::string r3 = to_lower(b.operands[0]), r4 = to_lower(b.operands[1]);
        return r1 != r3 && r1 != r4 && r2 != r3;
    };

    struct Site {
        std::size_t sub;
        std::size_t idx;
    };
    std::vector<Site> sites;
    for (std::size_t s = 0; s < doc.size(); ++s)
        for (std::size_t i = 0; i + 1 < doc[s].lines.size(); ++i)
            if (legal_swap(doc[s].lines[i].ins, doc[s].lines[i + 1].ins))
                sites.push_back({s, i});

    std::vector<std::size_t> chosen = rng.pick(sites.size(), select_count(sites.size(), spec.intensity));
    std::vector<bool> selected(sites.size(), false);
    for (std::size_t c : chosen) selected[c] = true;

    // Sites sharing an instruction cannot both fire; the leftmost selected
    // site of an overlapping run wins.
    std::vector<bool> accepted(sites.size(), false);
    for (std::size_t k = 0; k < sites.size(); ++k) {
        if (!selected[k]) continue;
        if (k > 0 && accepted[k - 1] && sites[k - 1].sub == sites[k].sub &&
            sites[k - 1].idx + 1 == sites[k].idx)
            continue;
        accepted[k] = true;
    }

    for (std::size_t k = 0; k < sites.size(); ++k) {
        if (!accepted[k]) continue;
        auto& lines = doc[sites[k].sub].lines;
        std::size_t i = sites[k].idx;
        edits.push_back({lines[i].ins.line_no, "permute",
                         "swapped '" + serialize_instruction(lines[i].ins) + "' and '" +
                             serialize_instruction(lines[i + 1].ins) + "'"});
        std::swap(lines[i], lines[i + 1]);
    }

    return finish(parent, spec, doc, std::move(edits));
}

MutationResult mutate_transposition(const Program& parent, const MutationSpec& spec) {
    check_spec(spec, Technique::code_transposition);
    Document doc = doc_from(parent);
    SplitMix64 rng(spec.seed);
    std::vector<Edit> edits;
    std::vector<Edit> skips;

    auto terminated = [](const DocSub& sub) {
        const std::string& m = sub.lines.back().ins.mnemonic;
        return m == "ret" || m == "retn" || m == "jmp";
    };

    std::vector<std::size_t> eligible;
    for (std::size_t s = 0; s < doc.size(); ++s) {
        if (doc[s].lines.size() < 4)
            skips.push_back({doc[s].lines.front().ins.line_no, "skipped",
                             doc[s].name + ": block too small (< 4 instructions)"});
        else if (!terminated(doc[s]))
            skips.push_back({doc[s].lines.front().ins.line_no, "skipped",
                             doc[s].name + ": body does not end in ret/jmp"});
        else
            eligible.push_back(s);
    }

    std::vector<std::size_t> chosen =
        rng.pick(eligible.size(), select_count(eligible.size(), spec.intensity));
    std::sort(chosen.begin(), chosen.end());

    std::size_t label_counter = 0;
    for (std::size_t e : chosen) {
        DocSub& sub = doc[eligible[e]];
        const std::size_t n = sub.lines.size();

        std::size_t max_cuts = std::min<std::size_t>(3, n - 1);
        std::size_t cuts = 1 + rng.bounded(max_cuts);
        std::vector<std::size_t> cut_positions = rng.pick(n - 1, cuts);
        for (auto& c : cut_positions) ++c;  // cut between lines c-1 and c
        std::sort(cut_positions.begin(), cut_positions.end());

        std::vector<std::size_t> bounds;
        bounds.push_back(0);
        bounds.insert(bounds.end(), cut_positions.begin(), cut_positions.end());
        bounds.push_back(n);
        const std::size_t nblocks = bounds.size() - 1;

        std::vector<std::size_t> physical = rng.permutation(nblocks);
        bool identity = true;
        for (std::size_t i = 0; i < nblocks; ++i) identity = identity && physical[i] == i;
        if (identity) std::rotate(physical.begin(), physical.begin() + 1, physical.end());

        std::vector<std::size_t> pos_of(nblocks);
        for (std::size_t p = 0; p < nblocks; ++p) pos_of[physical[p]] = p;

        auto needs_label = [&](std::size_t b) {
            return b == 0 ? physical[0] != 0 : pos_of[b] != pos_of[b - 1] + 1;
        };
        std::vector<std::string> label(nblocks);
        for (std::size_t b = 0; b < nblocks; ++b)
            if (needs_label(b)) label[b] = "loc_" + std::to_string(label_counter++);

        std::string order_str;
        for (std::size_t p = 0; p < nblocks; ++p)
            order_str += (p ? " " : "") + std::to_string(physical[p]);
        edits.push_back({sub.lines.front().ins.line_no, "transpose",
                         sub.name + ": " + std::to_string(nblocks) +
                             " blocks in physical order [" + order_str + "]"});

        std::vector<DocLine> out;
        out.reserve(n + nblocks + 1);
        if (physical[0] != 0) {
            out.push_back({{}, make_ins("jmp", {label[0]})});
            edits.push_back({sub.lines[bounds[0]].ins.line_no, "stitch",
                             sub.name + ": entry jmp " + label[0]});
        }
        for (std::size_t p = 0; p < nblocks; ++p) {
            std::size_t b = physical[p];
            std::size_t begin = bounds[b], end = bounds[b + 1];
            std::size_t first = out.size();
            for (std::size_t i = begin; i < end; ++i) out.push_back(sub.lines[i]);
            if (needs_label(b)) out[first].labels.insert(out[first].labels.begin(), label[b]);
            if (b + 1 < nblocks && pos_of[b + 1] != p + 1) {
                out.push_back({{}, make_ins("jmp", {label[b + 1]})});
                edits.push_back({sub.lines[bounds[b + 1]].ins.line_no, "stitch",
                                 sub.name + ": jmp " + label[b + 1] + " resumes block " +
                                     std::to_string(b + 1)});
            }
        }
        sub.lines = std::move(out);
    }

    // Skip notes are only provenance when the variant actually changed.
    if (!edits.empty())
        edits.insert(edits.end(), skips.begin(), skips.end());

    return finish(parent, spec, doc, std::move(edits));
}

MutationResult mutate(const Program& parent, const MutationSpec& spec) {
    switch (spec.technique) {
        case Technique::garbage_insertion: return mutate_garbage(parent, spec);
        case Technique::register_exchange: return mutate_register_exchange(parent, spec);
        case Technique::instruction_replacement: return mutate_replacement(parent, spec);
        case Technique::instruction_permutation: return mutate_permutation(parent, spec);
        case Technique::code_transposition: return mutate_transposition(parent, spec);
    }
    throw Error("unknown technique");
}

std::vector<VariantRecord> generate_corpus(const std::vector<Program>& seeds,
                                           const std::vector<MutationSpec>& specs,
                                           const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw Error("cannot create output directory '" + out_dir.string() + "': " + ec.message());

    std::vector<VariantRecord> records;
    records.reserve(seeds.size() * specs.size());
    for (const auto& seed : seeds) {
        for (const auto& spec : specs) {
            MutationResult res = mutate(seed, spec);
            std::filesystem::path file = out_dir / (res.record.variant_id + ".lst");
            std::ofstream os(file, std::ios::binary);
            os << res.listing;
            if (!os)
                throw Error("cannot write variant file '" + file.string() + "'");
            records.push_back(std::move(res.record));
        }
    }

    std::filesystem::path manifest = out_dir / "manifest.json";
    std::ofstream os(manifest, std::ios::binary);
    os << manifest_to_json(records);
    if (!os)
        throw Error("cannot write manifest '" + manifest.string() + "'");
    return records;
}

std::string manifest_to_json(const std::vector<VariantRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rec : records) {
        nlohmann::json edits = nlohmann::json::array();
        for (const auto& e : rec.edits)
            edits.push_back({{"line", e.line}, {"kind", e.kind}, {"detail", e.detail}});
        arr.push_back({
            {"parent_id", rec.parent_id},
            {"variant_id", rec.variant_id},
            {"technique", technique_name(rec.spec.technique)},
            {"intensity", rec.spec.intensity},
            {"seed", rec.spec.seed},
            {"edits", std::move(edits)},
        });
    }
    return arr.dump(2) + "\n";
}

std::vector<VariantRecord> manifest_from_json(const std::string& text) {
    std::vector<VariantRecord> records;
    try {
        nlohmann::json arr = nlohmann::json::parse(text);
        for (const auto& item : arr) {
            VariantRecord rec;
            rec.parent_id = item.at("parent_id").get<std::string>();
            rec.variant_id = item.at("variant_id").get<std::string>();
            rec.spec.technique = technique_from_name(item.at("technique").get<std::string>());
            rec.spec.intensity = item.at("intensity").get<double>();
            rec.spec.seed = item.at("seed").get<std::uint64_t>();
            for (const auto& e : item.at("edits"))
                rec.edits.push_back({e.at("line").get<int>(), e.at("kind").get<std::string>(),
                                     e.at("detail").get<std::string>()});
            records.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(std::string("bad manifest: ") + ex.what());
    }
    return records;
}

}  // namespace opsim
