#pragma once

#include <string>

namespace colstate::runstats {

enum class AlphabetMode { two_symbol, three_symbol };

// Coarse-grained edit history: C for a cooperative (non-revert) edit,
// R for a revert, and in three-symbol mode N marking a change of user
// between two adjacent edits.
struct SymbolSequence {
    std::string symbols;
    std::string source;  // page identifier or provenance tag
    AlphabetMode mode = AlphabetMode::two_symbol;

    // Checks the declared alphabet and, in three-symbol mode, that N
    // never starts the sequence or repeats consecutively.
    void validate() const;
};

// Plain-text file: one symbol per character, newline-terminated.
SymbolSequence load_sequence(const std::string& path);
void save_sequence(const SymbolSequence& seq, const std::string& path);

}  // namespace colstate::runstats
