#include "spectra/groupalg.hpp"

#include "spectra/repr.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace spectra {

namespace {

uint64_t factorial_u64(int n) {
    uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<uint64_t>(i);
    return r;
}

void check_vector(const GroupAlgebraVector& v) {
    if (v.n < 1 || v.n > 12)
        throw std::invalid_argument("group algebra vector: n out of range");
    if (v.coords.size() != factorial_u64(v.n))
        throw std::invalid_argument("group algebra vector: wrong coordinate count");
}

void check_shape(int n, const Partition& alpha) {
    if (alpha.n() != n)
        throw std::invalid_argument("projection shape is not a partition of n");
}

// Quotient types for one symmetric group: idx[sigma*N + h] is the class index
// (into partitions_of(n)) of h sigma^{-1}. Cached; only built for n <= 6,
// larger n falls back to on-the-fly types.
struct PairTypeTable {
    int n = 0;
    uint64_t N = 0;
    std::vector<Partition> classes;
    std::vector<uint8_t> idx;
};

const PairTypeTable& pair_table(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<PairTypeTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    if (n > 6) throw std::logic_error("pair_table is capped at n = 6");

    auto t = std::make_unique<PairTypeTable>();
    t->n = n;
    t->N = factorial_u64(n);
    t->classes = partitions_of(n);
    std::map<Partition, uint8_t> index_of;
    for (size_t i = 0; i < t->classes.size(); ++i)
        index_of[t->classes[i]] = static_cast<uint8_t>(i);

    std::vector<Permutation> perms(t->N);
    for (uint64_t r = 0; r < t->N; ++r) perms[r] = from_lex_rank(n, r);

    t->idx.assign(t->N * t->N, 0);
    const int64_t N = static_cast<int64_t>(t->N);
#pragma omp parallel for schedule(static)
    for (int64_t sigma = 0; sigma < N; ++sigma) {
        Permutation sinv = perms[static_cast<size_t>(sigma)].inverse();
        uint8_t* row = t->idx.data() + static_cast<uint64_t>(sigma) * t->N;
        for (uint64_t h = 0; h < t->N; ++h)
            row[h] = index_of.at(cycle_type(compose(perms[h], sinv)));
    }

    auto [pos, inserted] = cache.emplace(n, std::move(t));
    (void)inserted;
    return *pos->second;
}

// S[beta][sigma] = sum of v over {h : h sigma^{-1} of type beta}
std::vector<std::vector<Rat>> class_sums(const GroupAlgebraVector& v) {
    const int n = v.n;
    const uint64_t N = factorial_u64(n);
    const auto classes = partitions_of(n);
    std::vector<std::vector<Rat>> S(classes.size(), std::vector<Rat>(N, Rat(0)));

    if (n <= 6) {
        const PairTypeTable& t = pair_table(n);
        const int64_t iN = static_cast<int64_t>(N);
#pragma omp parallel for schedule(static)
        for (int64_t sigma = 0; sigma < iN; ++sigma) {
            const uint8_t* row = t.idx.data() + static_cast<uint64_t>(sigma) * N;
            for (uint64_t h = 0; h < N; ++h)
                if (v.coords[h] != 0)
                    S[row[h]][static_cast<uint64_t>(sigma)] += v.coords[h];
        }
        return S;
    }

    std::map<Partition, size_t> index_of;
    for (size_t i = 0; i < classes.size(); ++i) index_of[classes[i]] = i;
    std::vector<Permutation> perms(N);
    for (uint64_t r = 0; r < N; ++r) perms[r] = from_lex_rank(n, r);
    const int64_t iN = static_cast<int64_t>(N);
#pragma omp parallel for schedule(dynamic, 8)
    for (int64_t sigma = 0; sigma < iN; ++sigma) {
        Permutation sinv = perms[static_cast<size_t>(sigma)].inverse();
        for (uint64_t h = 0; h < N; ++h)
            if (v.coords[h] != 0)
                S[index_of.at(cycle_type(compose(perms[h], sinv)))][static_cast<uint64_t>(sigma)] +=
                    v.coords[h];
    }
    return S;
}

GroupAlgebraVector combine_shape(int n, const std::vector<std::vector<Rat>>& S,
                                 const std::vector<Partition>& classes, const Partition& alpha) {
    const uint64_t N = factorial_u64(n);
    auto table = CharacterTable::get(n);
    const Rat scale = make_rat(dimension(alpha), factorial(n));
    GroupAlgebraVector out = zero_vector(n);
    const int64_t iN = static_cast<int64_t>(N);
#pragma omp parallel for schedule(static)
    for (int64_t sigma = 0; sigma < iN; ++sigma) {
        Rat acc(0);
        for (size_t b = 0; b < classes.size(); ++b) {
            const Rat& s = S[b][static_cast<uint64_t>(sigma)];
            if (s != 0) acc += Rat(table->value(alpha, classes[b])) * s;
        }
        out.coords[static_cast<uint64_t>(sigma)] = acc * scale;
    }
    return out;
}

} // namespace

GroupAlgebraVector zero_vector(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("zero_vector: n out of range");
    GroupAlgebraVector v;
    v.n = n;
    v.coords.assign(factorial_u64(n), Rat(0));
    return v;
}

GroupAlgebraVector all_ones(int n) {
    GroupAlgebraVector v = zero_vector(n);
    for (auto& c : v.coords) c = 1;
    return v;
}

GroupAlgebraVector characteristic_vector(const PermFamily& A) {
    GroupAlgebraVector v = zero_vector(A.n());
    A.for_each([&](uint64_t r) { v.coords[r] = 1; });
    return v;
}

Rat inner_product(const GroupAlgebraVector& x, const GroupAlgebraVector& y) {
    check_vector(x);
    check_vector(y);
    if (x.n != y.n) throw std::invalid_argument("inner_product: mixed n");
    Rat acc(0);
    for (size_t i = 0; i < x.coords.size(); ++i)
        if (x.coords[i] != 0 && y.coords[i] != 0) acc += x.coords[i] * y.coords[i];
    return acc / Rat(factorial(x.n));
}

Rat norm_sq(const GroupAlgebraVector& x) {
    return inner_product(x, x);
}

GroupAlgebraVector project_isotypic(const GroupAlgebraVector& v, const Partition& alpha) {
    check_vector(v);
    check_shape(v.n, alpha);
    const auto classes = partitions_of(v.n);
    return combine_shape(v.n, class_sums(v), classes, alpha);
}

std::vector<GroupAlgebraVector> isotypic_components(const GroupAlgebraVector& v) {
    check_vector(v);
    const auto classes = partitions_of(v.n);
    const auto S = class_sums(v);
    std::vector<GroupAlgebraVector> out;
    out.reserve(classes.size());
    for (const auto& alpha : classes) out.push_back(combine_shape(v.n, S, classes, alpha));
    return out;
}

GroupAlgebraVector project_isotypic_reference(const GroupAlgebraVector& v, const Partition& alpha) {
    check_vector(v);
    check_shape(v.n, alpha);
    const int n = v.n;
    const uint64_t N = factorial_u64(n);
    const Rat scale = make_rat(dimension(alpha), factorial(n));
    GroupAlgebraVector out = zero_vector(n);
    for (uint64_t sigma = 0; sigma < N; ++sigma) {
        Permutation sinv = from_lex_rank(n, sigma).inverse();
        Rat acc(0);
        for (uint64_t h = 0; h < N; ++h) {
            if (v.coords[h] == 0) continue;
            acc += Rat(character(alpha, cycle_type(compose(from_lex_rank(n, h), sinv)))) *
                   v.coords[h];
        }
        out.coords[sigma] = acc * scale;
    }
    return out;
}

Rat projection_coordinate_closed_form(const PermFamily& A, const Permutation& sigma) {
    const int n = A.n();
    if (sigma.n() != n)
        throw std::invalid_argument("projection coordinate: permutation size mismatch");
    Int slice_total = 0;
    for (int i = 0; i < n; ++i) slice_total += slice(A, i, sigma(i)).size();
    const Int N = factorial(n);
    return make_rat(Int(n - 1) * slice_total - Int(n - 2) * Int(A.size()), N);
}

ProjectionReport projection_report(const GroupAlgebraVector& v, std::vector<Partition> designated) {
    check_vector(v);
    for (const auto& p : designated) check_shape(v.n, p);
    std::sort(designated.begin(), designated.end());
    if (std::adjacent_find(designated.begin(), designated.end()) != designated.end())
        throw std::invalid_argument("projection_report: duplicate shape");

    const auto classes = partitions_of(v.n);
    const auto comps = isotypic_components(v);
    ProjectionReport rep;
    rep.total_norm_sq = norm_sq(v);
    rep.designated = designated;
    Rat kept(0);
    for (size_t i = 0; i < classes.size(); ++i) {
        Rat ns = norm_sq(comps[i]);
        if (std::binary_search(designated.begin(), designated.end(), classes[i])) kept += ns;
        rep.norm_sq_by_shape.emplace_back(classes[i], std::move(ns));
    }
    rep.residual_sq = rep.total_norm_sq - kept;
    return rep;
}

Rat distance_to_U(const GroupAlgebraVector& v, const std::vector<Partition>& S) {
    check_vector(v);
    std::vector<Partition> shapes = S;
    for (const auto& p : shapes) check_shape(v.n, p);
    std::sort(shapes.begin(), shapes.end());
    if (std::adjacent_find(shapes.begin(), shapes.end()) != shapes.end())
        throw std::invalid_argument("distance_to_U: duplicate shape");

    const auto classes = partitions_of(v.n);
    const auto sums = class_sums(v);
    Rat dist = norm_sq(v);
    for (const auto& alpha : shapes)
        dist -= norm_sq(combine_shape(v.n, sums, classes, alpha));
    return dist;
}

GroupAlgebraVector apply_derangement_adjacency(const GroupAlgebraVector& v) {
    check_vector(v);
    auto graph = DerangementGraph::get(v.n);
    GroupAlgebraVector out = zero_vector(v.n);
    const uint64_t N = v.coords.size();
    for (uint64_t sigma = 0; sigma < N; ++sigma) {
        Rat acc(0);
        const auto& row = graph->neighbors(sigma);   // neighbor bitmask words
        for (size_t w = 0; w < row.size(); ++w)
            for (uint64_t bits = row[w]; bits; bits &= bits - 1)
                acc += v.coords[w * 64 + static_cast<size_t>(std::countr_zero(bits))];
        out.coords[sigma] = acc;
    }
    return out;
}

std::vector<Int> project_isotypic_scaled(const std::vector<Int>& v, int n, const Partition& alpha) {
    if (n < 1 || n > 7) throw std::invalid_argument("project_isotypic_scaled: n out of range");
    const uint64_t N = factorial_u64(n);
    if (v.size() != N) throw std::invalid_argument("project_isotypic_scaled: wrong length");
    check_shape(n, alpha);
    const auto classes = partitions_of(n);
    auto table = CharacterTable::get(n);

    // integer class sums, then one chi-weighted recombination per coordinate
    std::vector<std::vector<Int>> S(classes.size(), std::vector<Int>(N, Int(0)));
    if (n <= 6) {
        const PairTypeTable& t = pair_table(n);
        const int64_t iN = static_cast<int64_t>(N);
#pragma omp parallel for schedule(static)
        for (int64_t sigma = 0; sigma < iN; ++sigma) {
            const uint8_t* row = t.idx.data() + static_cast<uint64_t>(sigma) * N;
            for (uint64_t h = 0; h < N; ++h)
                if (v[h] != 0) S[row[h]][static_cast<uint64_t>(sigma)] += v[h];
        }
    } else {
        std::map<Partition, size_t> index_of;
        for (size_t i = 0; i < classes.size(); ++i) index_of[classes[i]] = i;
        std::vector<Permutation> perms(N);
        for (uint64_t r = 0; r < N; ++r) perms[r] = from_lex_rank(n, r);
        const int64_t iN = static_cast<int64_t>(N);
#pragma omp parallel for schedule(dynamic, 8)
        for (int64_t sigma = 0; sigma < iN; ++sigma) {
            Permutation sinv = perms[static_cast<size_t>(sigma)].inverse();
            for (uint64_t h = 0; h < N; ++h)
                if (v[h] != 0)
                    S[index_of.at(cycle_type(compose(perms[h], sinv)))]
                     [static_cast<uint64_t>(sigma)] += v[h];
        }
    }

    std::vector<Int> out(N, Int(0));
    const int64_t iN = static_cast<int64_t>(N);
#pragma omp parallel for schedule(static)
    for (int64_t sigma = 0; sigma < iN; ++sigma) {
        Int acc = 0;
        for (size_t b = 0; b < classes.size(); ++b) {
            const Int& s = S[b][static_cast<uint64_t>(sigma)];
            if (s != 0) acc += table->value(alpha, classes[b]) * s;
        }
        out[static_cast<uint64_t>(sigma)] = acc;
    }
    return out;
}

std::vector<Int> apply_derangement_adjacency(const std::vector<Int>& v, int n) {
    const uint64_t N = factorial_u64(n);
    if (v.size() != N) throw std::invalid_argument("adjacency: wrong length");
    auto graph = DerangementGraph::get(n);
    std::vector<Int> out(N, Int(0));
    for (uint64_t sigma = 0; sigma < N; ++sigma) {
        Int acc = 0;
        const auto& row = graph->neighbors(sigma);   // neighbor bitmask words
        for (size_t w = 0; w < row.size(); ++w)
            for (uint64_t bits = row[w]; bits; bits &= bits - 1)
                acc += v[w * 64 + static_cast<size_t>(std::countr_zero(bits))];
        out[sigma] = acc;
    }
    return out;
}

int coset_span_rank(int n) {
    if (n < 2 || n > 6) throw std::invalid_argument("coset_span_rank supports 2 <= n <= 6");
    const uint64_t N = factorial_u64(n);
    std::vector<std::vector<Rat>> rows;
    rows.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> row(N, Rat(0));
            one_coset(n, i, j).for_each([&](uint64_t r) { row[r] = 1; });
            rows.push_back(std::move(row));
        }

    size_t rank = 0;
    for (uint64_t col = 0; col < N && rank < rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            Rat factor = rows[r][col] / rows[rank][col];
            for (uint64_t c = col; c < N; ++c)
                if (rows[rank][c] != 0) rows[r][c] -= factor * rows[rank][c];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

CosetUnionWitness is_disjoint_union_of_1_cosets(const PermFamily& A) {
    const int n = A.n();
    CosetUnionWitness w;
    PermFamily rest = A;
    std::vector<std::pair<int, int>> acc;

    std::function<bool()> solve = [&]() -> bool {
        if (rest.empty()) return true;
        const Permutation first = from_lex_rank(n, rest.members().front());
        for (int i = 0; i < n; ++i) {
            const PermFamily coset = one_coset(n, i, first(i));
            if (!coset.is_subset_of(rest)) continue;
            rest.subtract(coset);
            acc.emplace_back(i, first(i));
            if (solve()) return true;
            acc.pop_back();
            rest |= coset;
        }
        return false;
    };

    w.ok = solve();
    if (w.ok) {
        std::sort(acc.begin(), acc.end());
        w.pairs = std::move(acc);
    }
    return w;
}

} // namespace spectra
