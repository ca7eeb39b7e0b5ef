#pragma once

#include "spectra/ints.hpp"
#include "spectra/perm.hpp"
#include "spectra/rng.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace spectra {

// Subset of S_n as a bitset indexed by lexicographic rank of the image array.
class PermFamily {
public:
    explicit PermFamily(int n);
    static PermFamily full(int n);

    int n() const { return n_; }
    uint64_t universe() const { return N_; }
    uint64_t size() const;
    bool empty() const { return size() == 0; }

    bool contains(uint64_t rank) const;
    bool contains(const Permutation& p) const { return contains(lex_rank(p)); }
    void insert(uint64_t rank);
    void insert(const Permutation& p) { insert(lex_rank(p)); }
    void erase(uint64_t rank);

    std::vector<uint64_t> members() const;            // ascending ranks
    std::vector<Permutation> member_perms() const;
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t w = 0; w < bits_.size(); ++w) {
            uint64_t word = bits_[w];
            while (word) {
                int b = __builtin_ctzll(word);
                fn(static_cast<uint64_t>(w) * 64 + static_cast<uint64_t>(b));
                word &= word - 1;
            }
        }
    }

    PermFamily& operator&=(const PermFamily& o);
    PermFamily& operator|=(const PermFamily& o);
    PermFamily& subtract(const PermFamily& o);
    PermFamily complement() const;
    bool is_subset_of(const PermFamily& o) const;
    bool intersects(const PermFamily& o) const;

    bool operator==(const PermFamily&) const = default;
    // deterministic order for witness lists: lexicographic on sorted members
    bool lex_less(const PermFamily& o) const;

    const std::vector<uint64_t>& words() const { return bits_; }
    std::vector<uint64_t>& words() { return bits_; }

private:
    int n_ = 0;
    uint64_t N_ = 0;
    std::vector<uint64_t> bits_;
};

// Derangement graph on S_n: sigma ~ tau iff they disagree everywhere.
// Rows are bit masks over ranks; cached per n, built eagerly for n <= 6 and
// on demand for larger n.
class DerangementGraph {
public:
    static std::shared_ptr<DerangementGraph> get(int n);

    int n() const { return n_; }
    uint64_t vertices() const { return N_; }
    const std::vector<uint64_t>& neighbors(uint64_t rank);
    bool adjacent(const Permutation& a, const Permutation& b) const;

private:
    explicit DerangementGraph(int n);
    void build_row(uint64_t rank);

    int n_;
    uint64_t N_;
    size_t words_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<char> built_;
    std::unique_ptr<std::mutex> row_mutex_;
};

bool is_intersecting(const PermFamily& A);
bool is_cross_intersecting(const PermFamily& A, const PermFamily& B);
bool is_t_intersecting(const PermFamily& A, int t);
// vacuously true when A is not t-intersecting; otherwise |A| <= n!/t!
bool t_intersecting_bound_check(const PermFamily& A, int t);

struct CentredCheck {
    bool centred;
    int i = -1, j = -1;   // a common position/value pair when centred (0-based)
};
CentredCheck is_centred(const PermFamily& A);

PermFamily slice(const PermFamily& A, int i, int j);       // members with sigma(i) = j
PermFamily one_coset(int n, int i, int j);
// |A| minus the largest slice
Int min_removals_to_centred(const PermFamily& A);

// {pi o sigma o tau : sigma in A}
PermFamily double_translate(const PermFamily& A, const Permutation& pi, const Permutation& tau);
struct TranslateWitness {
    bool found = false;
    Permutation pi, tau;
};
TranslateWitness is_double_translate_of(const PermFamily& A, const PermFamily& F);

// permutations fixing at least two points of {0,1,2}
PermFamily construct_B(int n);
// permutations fixing 0 that agree somewhere with the transposition (0 1),
// together with that transposition
PermFamily construct_C(int n);

// #{sigma : exists i != j with sigma(i) = rho(i) and sigma(j) = tau(j)}
Int count_agreeing_at_two_separate_points(const Permutation& rho, const Permutation& tau);
// #{sigma : sigma(i) = j and sigma agrees with tau somewhere}; requires tau(i) != j
Int intersecting_with_fixed_tau_count(int i, int j, const Permutation& tau);

// |A_{i->j}| * |A_{i->k}| <= ((n-2)!)^2, checked directly and through the
// translate/restrict reduction to cross-intersecting families in S_{n-1};
// the two routes must agree.
struct SliceCheckDetail {
    bool direct_ok;
    bool reduction_ok;
    bool reduced_cross_intersecting;
    Int product;
};
SliceCheckDetail slice_product_check_detail(const PermFamily& A, int i, int j, int k);
bool slice_product_check(const PermFamily& A, int i, int j, int k);

// restriction used by the reduction route: members of A fixing 0, with the
// point 0 deleted (a family in S_{n-1} on the remaining points)
PermFamily restrict_fixing_zero(const PermFamily& A);

// Greedy completion over a shuffled vertex order; the result is intersecting
// and no permutation outside it can be added (maximal, not maximum).
PermFamily random_maximal_intersecting(int n, Rng& rng);

int transposition_distance(const Permutation& a, const Permutation& b);
// all sigma within transposition distance h of some member of X
PermFamily transposition_neighborhood(const PermFamily& X, int h);

struct MaureyCheck {
    bool hypothesis_ok;    // |X| >= a * n!
    bool ok;               // |N_h(X)| >= (1 - a) * n! with h = floor(2 h0)
    int h;
    uint64_t neighborhood_size;
    Rat rhs;
};
MaureyCheck maurey_neighborhood_check(const PermFamily& X, const Rat& a);

// rho must be an n-cycle; verifies that the right cosets of <rho> partition
// S_n into n!/n cliques of the derangement graph
bool deza_frankl_partition_check(int n, const Permutation& rho);
// the cells of that partition, as rank lists plus a rank -> cell id map
struct CosetCells {
    std::vector<std::vector<uint32_t>> cells;
    std::vector<uint32_t> cell_of;
};
CosetCells coset_cells(int n, const Permutation& rho);

} // namespace spectra
