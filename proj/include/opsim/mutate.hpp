#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "opsim/listing.hpp"

namespace opsim {

enum class Technique {
    garbage_insertion,
    register_exchange,
    instruction_replacement,
    instruction_permutation,
    code_transposition,
};

const char* technique_name(Technique t);
Technique technique_from_name(const std::string& name);

// intensity is the fraction of eligible sites transformed; what a "site" is
// depends on the technique (instruction boundaries for garbage insertion,
// whole subroutines for register exchange and transposition, matching
// instructions for replacement, legal adjacent pairs for permutation).
// A fixed (parent, spec) pair always produces a byte-identical variant.
struct MutationSpec {
    Technique technique = Technique::garbage_insertion;
    double intensity = 1.0;
    std::uint64_t seed = 0;
};

struct Edit {
    int line = 0;  // line number in the parent listing the edit anchors to
    std::string kind;
    std::string detail;
};

struct VariantRecord {
    std::string parent_id;
    std::string variant_id;
    MutationSpec spec;
    std::vector<Edit> edits;  // nonempty iff the variant differs from the parent
};

// `listing` is the emitted listing-format text; `variant` is its parse.
// Transposition variants carry stitch labels that exist only in the text,
// since the parser skips label lines.
struct MutationResult {
    Program variant;
    VariantRecord record;
    std::string listing;
};

// Deterministic variant id derived from parent id, technique, seed and
// intensity. Doubles as the variant's file stem in generated corpora.
std::string variant_id_for(const std::string& parent_id, const MutationSpec& spec);

// Inserts dead code (nop, push/pop of one register, mov of a register to
// itself) at a fraction of the instruction boundaries. The window between a
// cmp and a following conditional jump is never used.
MutationResult mutate_garbage(const Program& parent, const MutationSpec& spec);

// Applies a seeded permutation of {eax,ebx,ecx,edx,esi,edi} consistently to
// every operand occurrence within each selected subroutine. Histogram
// preserving by construction.
MutationResult mutate_register_exchange(const Program& parent, const MutationSpec& spec);

// Rewrites matching instructions through a fixed equivalence table:
// zeroing {mov R,0 | xor R,R | and R,0 | sub R,R}, add R,k <-> sub R,-k,
// and push R; pop S <-> mov S,R.
MutationResult mutate_replacement(const Program& parent, const MutationSpec& spec);

// Swaps adjacent register-pair instructions where no operand dependency
// exists (dest1 != dest2, dest1 != src2, src1 != dest2). Control-transfer
// instructions never participate. Histogram preserving by construction.
MutationResult mutate_permutation(const Program& parent, const MutationSpec& spec);

// Cuts a subroutine body into contiguous blocks, physically reorders them,
// and stitches the original execution order back with fresh labels and jmp
// instructions; only the jmp bin grows. Subroutines with fewer than 4
// instructions, or whose last instruction is not ret/jmp, are skipped.
MutationResult mutate_transposition(const Program& parent, const MutationSpec& spec);

// Dispatch on spec.technique. Throws Error for intensity outside [0,1].
MutationResult mutate(const Program& parent, const MutationSpec& spec);

// Runs every (seed, spec) combination, writes each variant as
// <out_dir>/<variant_id>.lst plus a manifest.json of the records, and
// returns the records in generation order. IO failures carry the path.
std::vector<VariantRecord> generate_corpus(const std::vector<Program>& seeds,
                                           const std::vector<MutationSpec>& specs,
                                           const std::filesystem::path& out_dir);

std::string manifest_to_json(const std::vector<VariantRecord>& records);
std::vector<VariantRecord> manifest_from_json(const std::string& text);

}  // namespace opsim
