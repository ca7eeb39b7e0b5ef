#pragma once

#include "spectra/ints.hpp"
#include "spectra/partition.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spectra {

// Permutation of {0,...,n-1} stored as its one-line image array.
// External notation (parsing, JSON, cycle strings) is 1-based; everything in
// memory is 0-based.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);   // 0-based images, validated
    static Permutation identity(int n);
    // images given 1-based, as in one-line notation [2,1,3]
    static Permutation from_one_line(const std::vector<int>& images1);
    // product of cycles over {1..n}, e.g. "(1 2 3)(4 5)" in S_n
    static Permutation from_cycles(int n, const std::string& cycles);
    static Permutation transposition(int n, int a, int b);  // 0-based a != b

    int n() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }
    std::vector<int> one_line() const;               // 1-based copy

    Permutation inverse() const;
    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

    int fixed_points() const;
    bool is_derangement() const { return fixed_points() == 0; }

private:
    std::vector<int> img_;
};

// (p*q)(i) = p(q(i)): apply q first, then p.
Permutation compose(const Permutation& p, const Permutation& q);

Partition cycle_type(const Permutation& p);
int cycle_count(const Permutation& p);
int permutation_sign(const Permutation& p);          // +1 or -1

// Lexicographic rank of the image array among all of S_n; identity has rank 0.
uint64_t lex_rank(const Permutation& p);
Permutation from_lex_rank(int n, uint64_t rank);

Int derangement_count(int n);                        // inclusion-exclusion
Int conjugacy_class_size(const Partition& beta);     // n!/z_beta

struct DerangementStats {
    int n;
    Int d;           // number of derangements
    Int e_minus_o;   // even derangements minus odd derangements
};
DerangementStats derangement_stats(int n);
Int signed_derangement_difference(int n);            // e_n - o_n, n >= 1

// p with the preimage of i redirected so that i becomes a fixed point:
// p * t where t swaps i and p^{-1}(i). i is 0-based.
Permutation i_fix(const Permutation& p, int i);
// left-to-right iterated i_fix
Permutation i_fix_sequence(const Permutation& p, std::span<const int> points);

} // namespace spectra
