#include "colstate/ingest/coarse_grain.hpp"

#include <regex>
#include <unordered_set>

#include "colstate/errors.hpp"

namespace colstate::ingest {

CoarseGrainResult coarse_grain_detailed(const PageHistory& history,
                                        const CoarseGrainPolicy& policy) {
    if (history.records.size() < 2)
        throw InputError("coarse-graining needs at least two revisions");

    CoarseGrainResult out;
    out.sequence.source = history.title;
    out.sequence.mode = runstats::AlphabetMode::two_symbol;

    std::unordered_set<std::string> seen;
    const RevisionRecord* prev = nullptr;
    for (std::size_t idx = 0; idx < history.records.size(); ++idx) {
        const RevisionRecord& rec = history.records[idx];
        if (rec.hash_absent()) {
            if (policy.hash_absent == HashAbsentPolicy::fail)
                throw InputError("revision " + std::to_string(idx) +
                                 " has no content hash");
            ++out.skipped_hash_absent;
            continue;
        }

        char symbol = 'C';
        if (prev != nullptr) {
            const bool matches_earlier = seen.count(rec.sha1) > 0;
            const bool no_op = rec.sha1 == prev->sha1;
            const bool self_revert = rec.user == prev->user;
            if (matches_earlier && !no_op && !self_revert) symbol = 'R';
        }
        out.sequence.symbols.push_back(symbol);
        out.retained.push_back(idx);
        seen.insert(rec.sha1);
        prev = &rec;
    }
    return out;
}

runstats::SymbolSequence coarse_grain(const PageHistory& history,
                                      const CoarseGrainPolicy& policy) {
    return coarse_grain_detailed(history, policy).sequence;
}

bool detect_revert_comment(const std::string& comment) {
    static const std::regex pattern("([Rr][v]+[ \\n]|[Uu]ndid|[Rr]evert)");
    return std::regex_search(comment, pattern);
}

AgreementReport agreement_report(const PageHistory& history,
                                 const CoarseGrainPolicy& policy) {
    const CoarseGrainResult cg = coarse_grain_detailed(history, policy);
    AgreementReport report;
    for (std::size_t i = 0; i < cg.retained.size(); ++i) {
        const RevisionRecord& rec = history.records[cg.retained[i]];
        const bool by_sha1 = cg.sequence.symbols[i] == 'R';
        const bool by_comment = detect_revert_comment(rec.comment);
        if (by_sha1 && by_comment) ++report.both;
        else if (by_sha1) ++report.sha1_only;
        else if (by_comment) ++report.comment_only;
        else ++report.neither;
    }
    return report;
}

}  // namespace colstate::ingest
