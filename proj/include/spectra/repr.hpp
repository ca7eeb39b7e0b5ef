#pragma once

#include "spectra/ints.hpp"
#include "spectra/partition.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace spectra {

Partition transpose(const Partition& alpha);

// hook_lengths(alpha)[r][c] = arm + leg + 1 for the cell (r, c)
std::vector<std::vector<int>> hook_lengths(const Partition& alpha);

// dimension of the irreducible indexed by alpha: n! / product of hooks
Int dimension(const Partition& alpha);

// Character table of S_n, rows indexed by shapes, columns by cycle types,
// computed by the Murnaghan-Nakayama rule. Instances are immutable; get()
// caches one table per n and is safe to call concurrently.
class CharacterTable {
public:
    static std::shared_ptr<const CharacterTable> get(int n);

    int n() const { return n_; }
    const std::vector<Partition>& shapes() const { return parts_; }
    int index_of(const Partition& p) const;
    const Int& value(const Partition& alpha, const Partition& beta) const;
    const Int& value_by_index(int a, int b) const { return chi_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }

    // exact column orthogonality: sum_alpha chi(b) chi(c) == z_b * [b == c]
    bool column_orthogonality_ok() const;

    // Serialization used by the on-disk cache. from_rows throws on malformed
    // input; orthogonality is checked separately by the loader.
    struct Row {
        Partition alpha;
        std::map<std::string, std::string> values;  // beta string -> integer string
    };
    std::vector<Row> to_rows() const;
    static std::shared_ptr<const CharacterTable> from_rows(int n, const std::vector<Row>& rows);

    // Replace the cached table for n (used after loading a validated cache).
    static void install(std::shared_ptr<const CharacterTable> table);

private:
    CharacterTable() = default;
    static std::shared_ptr<CharacterTable> build(int n);

    int n_ = 0;
    std::vector<Partition> parts_;
    std::map<std::string, int> index_;
    std::vector<std::vector<Int>> chi_;
};

// chi_alpha evaluated on the class of cycle type beta
Int character(const Partition& alpha, const Partition& beta);

// restriction to S_{n-1}: the shapes obtained by removing one corner cell,
// in reverse lexicographic order (branching is multiplicity free)
std::vector<Partition> branching_restriction(const Partition& alpha);

// number of semistandard tableaux of shape alpha and content beta
Int kostka(const Partition& alpha, const Partition& beta);

// decomposition of the Young permutation module M^beta: pairs (alpha, K) with
// K = kostka(alpha, beta) >= 1, in reverse lexicographic order of alpha
std::vector<std::pair<Partition, Int>> youngs_rule(const Partition& beta);

// permutation character of M^beta on the class gamma, computed as the number
// of beta-tabloids fixed by a permutation of cycle type gamma
Int permutation_character(const Partition& beta, const Partition& gamma);
// same value through the Kostka expansion (independent route, for checks)
Int permutation_character_via_kostka(const Partition& beta, const Partition& gamma);

// shapes alpha of n with dimension strictly below the threshold
std::vector<Partition> low_dim_classification(int n, const Int& threshold);
Int default_low_dim_threshold(int n);   // C(n-1, 2) - 1

} // namespace spectra
