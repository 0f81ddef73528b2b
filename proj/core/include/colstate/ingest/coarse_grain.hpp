#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colstate/ingest/revision.hpp"
#include "colstate/runstats/sequence.hpp"

namespace colstate::ingest {

enum class HashAbsentPolicy { skip_record, fail };

struct CoarseGrainPolicy {
    HashAbsentPolicy hash_absent = HashAbsentPolicy::skip_record;
};

struct CoarseGrainResult {
    runstats::SymbolSequence sequence;
    // Index into the original record list for each emitted symbol.
    std::vector<std::size_t> retained;
    std::size_t skipped_hash_absent = 0;
};

// Two-symbol coarse-graining. A record is R iff its sha1 equals the
// sha1 of some strictly earlier retained record, except that
//   (a) self-reverts are C: the reverting author equals the author of
//       the edit being undone (the immediately preceding record), and
//   (b) no-op edits are C: sha1 equal to the immediately preceding
//       record means nothing was rolled back.
// The first record is C by convention. Lookback is unbounded: matching
// any earlier version counts, not just the second-to-last.
CoarseGrainResult coarse_grain_detailed(const PageHistory& history,
                                        const CoarseGrainPolicy& policy = {});

runstats::SymbolSequence coarse_grain(const PageHistory& history,
                                      const CoarseGrainPolicy& policy = {});

// Keyword channel for revert detection; cross-check only, the sha1
// channel above is the primary classifier.
bool detect_revert_comment(const std::string& comment);

// Contingency of the two revert detectors over retained records.
struct AgreementReport {
    std::int64_t both = 0;
    std::int64_t sha1_only = 0;
    std::int64_t comment_only = 0;
    std::int64_t neither = 0;
};

AgreementReport agreement_report(const PageHistory& history,
                                 const CoarseGrainPolicy& policy = {});

}  // namespace colstate::ingest
