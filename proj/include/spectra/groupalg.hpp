#pragma once

#include "spectra/family.hpp"
#include "spectra/ints.hpp"
#include "spectra/partition.hpp"
#include "spectra/perm.hpp"

#include <utility>
#include <vector>

namespace spectra {

// Exact rational vector over the group algebra of S_n, coordinates indexed by
// lexicographic rank. The inner product carries the 1/n! normalization, so a
// characteristic vector has squared norm |A|/n!.
struct GroupAlgebraVector {
    int n = 0;
    std::vector<Rat> coords;

    bool operator==(const GroupAlgebraVector&) const = default;
};

GroupAlgebraVector zero_vector(int n);
GroupAlgebraVector all_ones(int n);
GroupAlgebraVector characteristic_vector(const PermFamily& A);

// coordinates are real, so no conjugation enters the inner product
Rat inner_product(const GroupAlgebraVector& x, const GroupAlgebraVector& y);
Rat norm_sq(const GroupAlgebraVector& x);

// Projection onto the isotypic component U_alpha, computed class-wise: the
// sigma coordinate is (f_alpha/n!) * sum over classes beta of chi_alpha(beta)
// * S_beta(sigma), where S_beta(sigma) sums v over {h : h sigma^{-1} of type
// beta}. The quotient types never invoke chi on an inverse, so no realness
// assumption about the characters enters.
GroupAlgebraVector project_isotypic(const GroupAlgebraVector& v, const Partition& alpha);

// every shape at once, sharing one pass over the quotient types
std::vector<GroupAlgebraVector> isotypic_components(const GroupAlgebraVector& v);

// The same projection as a direct convolution against the idempotent: serial
// doubly nested loop over (sigma, h) with per-pair cycle types and no shared
// tables. Kept as the oracle for the class-wise path and as the benchmark
// baseline; intended for n <= 4 scale.
GroupAlgebraVector project_isotypic_reference(const GroupAlgebraVector& v, const Partition& alpha);

// sigma coordinate of the projection of v_A onto U_(n) + U_(n-1,1), from
// slice counts alone: ((n-1)/n!) sum_i |A_{i -> sigma(i)}| - ((n-2)/n!) |A|
Rat projection_coordinate_closed_form(const PermFamily& A, const Permutation& sigma);

struct ProjectionReport {
    std::vector<std::pair<Partition, Rat>> norm_sq_by_shape;
    Rat total_norm_sq;
    std::vector<Partition> designated;
    Rat residual_sq;   // total minus the designated shapes' squared norms
};
ProjectionReport projection_report(const GroupAlgebraVector& v, std::vector<Partition> designated);

// squared distance from v to the direct sum of the U_alpha over alpha in S
Rat distance_to_U(const GroupAlgebraVector& v, const std::vector<Partition>& S);

// adjacency operator of the derangement graph, applied by neighbor summation
GroupAlgebraVector apply_derangement_adjacency(const GroupAlgebraVector& v);

// Integer fast paths. For integer-valued v the vector (n!/f_alpha) P_alpha(v)
// has integer coordinates; both directions avoid rational arithmetic.
std::vector<Int> project_isotypic_scaled(const std::vector<Int>& v, int n, const Partition& alpha);
std::vector<Int> apply_derangement_adjacency(const std::vector<Int>& v, int n);

// rank of the n^2 one-coset characteristic vectors, by exact elimination
int coset_span_rank(int n);

struct CosetUnionWitness {
    bool ok = false;
    std::vector<std::pair<int, int>> pairs;   // (i, j) per coset, sorted
};
// true iff A is a disjoint union of 1-cosets (with backtracking over the
// possible cosets through the first member)
CosetUnionWitness is_disjoint_union_of_1_cosets(const PermFamily& A);

} // namespace spectra
