#pragma once

#include "spectra/family.hpp"
#include "spectra/ints.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace spectra {

enum class SearchStatus { complete, incomplete };

struct SearchOptions {
    bool non_centred = false;       // restrict to families not inside a 1-coset
    double budget_seconds = 10.0;   // wall-clock budget across both passes
    bool all_optima = true;         // false: report one (lexicographically least) witness
    size_t witness_cap = 4096;      // retained witnesses; excess sets the capped flag
};

// Results are deterministic for complete runs: pass one proves the optimum
// under a monotone shared bound, pass two re-enumerates every optimum, so the
// witness set does not depend on thread interleaving. An exhausted budget is
// reported as incomplete (optimum is then only a lower bound), never as a
// silently wrong answer.
struct SearchResult {
    Int optimum = 0;
    std::vector<PermFamily> witnesses;                            // independent-set search
    std::vector<std::pair<PermFamily, PermFamily>> witness_pairs; // cross-product search
    uint64_t optima_count = 0;      // distinct optima found (witness_cap does not limit this)
    bool capped = false;
    uint64_t nodes_explored = 0;
    std::map<std::string, uint64_t> prune_counts;
    SearchStatus status = SearchStatus::complete;
};

// Maximum intersecting family (= independent set in the derangement graph),
// optionally restricted to non-centred families. Branch and bound over a
// greedy clique cover, pruned by the Hoffman bound, the n-cycle coset cell
// partition, and the pairwise slice product bound; the non-centred constraint
// branches on a forbidden (i,j) witness instead of filtering leaves.
// Exhaustive for n <= 5, best-effort within budget at n = 6, 7; n >= 8 throws.
SearchResult max_intersecting_search(int n, const SearchOptions& opt = {});

// Maximum |A|*|B| over cross-intersecting pairs, scanning every A mask with B
// forced to the common non-neighborhood; n <= 4.
SearchResult max_cross_product_search(int n, const SearchOptions& opt = {});

} // namespace spectra
