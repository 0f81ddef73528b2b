#include "colstate/runstats/augment.hpp"

#include "colstate/errors.hpp"

namespace colstate::runstats {

SymbolSequence augment_user_changes(const ingest::PageHistory& history,
                                    const ingest::CoarseGrainPolicy& policy) {
    const auto cg = ingest::coarse_grain_detailed(history, policy);
    for (std::size_t i = 0; i < cg.retained.size(); ++i) {
        if (history.records[cg.retained[i]].user.empty())
            throw InputError("record " + std::to_string(cg.retained[i]) +
                             " has no user identity");
    }

    SymbolSequence out;
    out.source = history.title;
    out.mode = AlphabetMode::three_symbol;
    for (std::size_t i = 0; i < cg.retained.size(); ++i) {
        if (i > 0) {
            const auto& prev_user = history.records[cg.retained[i - 1]].user;
            const auto& this_user = history.records[cg.retained[i]].user;
            if (prev_user != this_user) out.symbols.push_back('N');
        }
        out.symbols.push_back(cg.sequence.symbols[i]);
    }
    out.validate();
    return out;
}

}  // namespace colstate::runstats
