#include "colstate/runstats/sequence.hpp"

#include <fstream>
#include <sstream>

#include "colstate/errors.hpp"

namespace colstate::runstats {

void SymbolSequence::validate() const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const char c = symbols[i];
        const bool ok = c == 'C' || c == 'R' ||
                        (mode == AlphabetMode::three_symbol && c == 'N');
        if (!ok) {
            std::ostringstream os;
            os << "symbol '" << c << "' at position " << i
               << " not in declared alphabet";
            throw InputError(os.str());
        }
        if (c == 'N') {
            // A user change sits between two edits by different users.
            if (i == 0) throw InputError("sequence cannot start with N");
            if (symbols[i - 1] == 'N')
                throw InputError("consecutive N symbols at position " +
                                 std::to_string(i));
        }
    }
}

SymbolSequence load_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open sequence file: " + path);
    std::string line;
    std::getline(in, line);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
        line.pop_back();
    SymbolSequence seq;
    seq.symbols = std::move(line);
    seq.source = path;
    seq.mode = seq.symbols.find('N') != std::string::npos
                   ? AlphabetMode::three_symbol
                   : AlphabetMode::two_symbol;
    seq.validate();
    return seq;
}

void save_sequence(const SymbolSequence& seq, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write sequence file: " + path);
    out << seq.symbols << "\n";
}

}  // namespace colstate::runstats
