#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "iflat/spec.hpp"

namespace iflat {

/// Shipped example documents keyed by name: the bus system, its decomposition
/// and implementation, the confidentiality/integrity lattices and their
/// product, a loop example, and `random_seed_<n>` documents built from the
/// generators.
const std::map<std::string, SpecDocument>& corpus();

/// The text each corpus document was parsed from.
const std::map<std::string, std::string>& corpus_sources();

/// Seeds used for the generated corpus entries.
inline constexpr std::uint64_t kCorpusSeeds[] = {1, 2, 3, 42};

}  // namespace iflat
