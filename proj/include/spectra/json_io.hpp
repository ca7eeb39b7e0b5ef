#pragma once

#include "spectra/family.hpp"
#include "spectra/ints.hpp"
#include "spectra/partition.hpp"
#include "spectra/repr.hpp"
#include "spectra/search.hpp"
#include "spectra/spectral.hpp"

#include "json.hpp"

#include <memory>
#include <string>
#include <vector>

namespace spectra {

// Key-order-preserving JSON so reports are byte-stable under a fixed config.
// Exact numbers travel as the strings from ints.hpp (decimal integers, "p/q"
// rationals); plain machine integers (counts, seeds, n) stay native numbers.
using Json = nlohmann::ordered_json;

Json partition_to_json(const Partition& p);     // array of parts, e.g. [3,1]
Partition partition_from_json(const Json& j);

// A family is a sorted array of one-line permutations in 1-based notation,
// e.g. [[1,2,3],[2,1,3]].  Loading rejects duplicates and non-permutations.
Json family_to_json(const PermFamily& A);
PermFamily family_from_json(const Json& j, int n);

// {n, degree, entries: [{alpha, lambda, multiplicity}]}
Json spectrum_to_json(const SpectrumTable& t);

Json search_result_to_json(const SearchResult& r);

// Character-table cache payload: an array of {n, rows} objects where each row
// is {alpha, values: {"<beta>": "<integer>"}}.  A bare single object is also
// accepted on load.  Every loaded table is re-checked for exact column
// orthogonality before it is returned; a failure throws std::runtime_error
// whose message names the character-cache-validation check.
Json character_cache_to_json(const std::vector<int>& ns);
std::vector<std::shared_ptr<const CharacterTable>> character_cache_from_json(const Json& j);

} // namespace spectra
