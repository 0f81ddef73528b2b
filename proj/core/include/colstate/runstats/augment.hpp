#pragma once

#include "colstate/ingest/coarse_grain.hpp"
#include "colstate/ingest/revision.hpp"
#include "colstate/runstats/sequence.hpp"

namespace colstate::runstats {

// Three-symbol variant of the coarse-graining: inserts N between
// consecutive retained edits made by different users; the C/R
// assignment of the edits themselves is unchanged. Records without a
// user identity are rejected with their index.
SymbolSequence augment_user_changes(const ingest::PageHistory& history,
                                    const ingest::CoarseGrainPolicy& policy = {});

}  // namespace colstate::runstats
