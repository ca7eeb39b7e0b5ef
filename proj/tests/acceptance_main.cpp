// Acceptance gate: one line per criterion, every check exact (integer or
// rational arithmetic, zero tolerance), with pinned runtime budgets where the
// criterion states one.  Exits nonzero if any line fails.

#include "spectra/exactmath.hpp"
#include "spectra/family.hpp"
#include "spectra/groupalg.hpp"
#include "spectra/partition.hpp"
#include "spectra/perm.hpp"
#include "spectra/repr.hpp"
#include "spectra/rng.hpp"
#include "spectra/search.hpp"
#include "spectra/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace spectra;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

Partition row_shape(int n) { return Partition(std::vector<int>{n}); }
Partition col_shape(int n) { return Partition(std::vector<int>(static_cast<size_t>(n), 1)); }
Partition std_shape(int n) { return Partition(std::vector<int>{n - 1, 1}); }
Partition hook_shape(int n) {
    std::vector<int> parts{2};
    parts.insert(parts.end(), static_cast<size_t>(n - 2), 1);
    return Partition(parts);
}

std::vector<PermFamily> one_cosets_sorted(int n) {
    std::vector<PermFamily> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PermFamily c = one_coset(n, i, j);
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        }
    std::sort(out.begin(), out.end(),
              [](const PermFamily& a, const PermFamily& b) { return a.lex_less(b); });
    return out;
}

std::vector<Partition> fpf_classes(int n) {
    std::vector<Partition> out;
    for (const auto& p : partitions_of(n)) {
        bool ok = true;
        for (int part : p.parts())
            if (part == 1) { ok = false; break; }
        if (ok) out.push_back(p);
    }
    return out;
}

PermFamily cross_partner(const PermFamily& X) {
    auto g = DerangementGraph::get(X.n());
    std::vector<uint64_t> blocked((g->vertices() + 63) / 64, 0);
    for (uint64_t m : X.members()) {
        const auto& row = g->neighbors(m);
        for (size_t w = 0; w < row.size(); ++w) blocked[w] |= row[w];
    }
    PermFamily Y(X.n());
    for (uint64_t r = 0; r < g->vertices(); ++r)
        if (!((blocked[r / 64] >> (r % 64)) & 1)) Y.insert(r);
    return Y;
}

// 1. closed-form eigenvalue rows for n = 4..9, under 5 s
Outcome criterion_eigenvalue_table() {
    for (int n = 4; n <= 9; ++n) {
        SpectrumTable t = derangement_spectrum(n);
        Int d = derangement_count(n);
        bool ok = t.degree == d && t.eigenvalue(row_shape(n)) == d &&
                  t.eigenvalue(col_shape(n)) == (n % 2 == 0 ? Int(-(n - 1)) : Int(n - 1)) &&
                  t.eigenvalue(std_shape(n)) == -exact_div(d, Int(n - 1)) &&
                  t.eigenvalue(hook_shape(n)) == Int(n % 2 == 0 ? 1 : -1);
        if (!ok) return {false, "row values break at n = " + std::to_string(n)};
    }
    return {true, "four closed-form rows exact for n = 4..9"};
}

// 2. sum of (dim * eigenvalue)^2 equals n! * degree, derangements and 20
//    seeded fixed-point-free class unions per n, n = 3..9, zero tolerance
Outcome criterion_trace_identity() {
    Rng rng(20250815);
    int unions = 0;
    for (int n = 3; n <= 9; ++n) {
        if (!trace_identity_check(derangement_spectrum(n)).ok)
            return {false, "derangement trace residual nonzero at n = " + std::to_string(n)};
        auto classes = fpf_classes(n);
        for (int k = 0; k < 20; ++k) {
            std::vector<Partition> pick;
            for (const auto& c : classes)
                if (rng.coin()) pick.push_back(c);
            if (pick.empty()) pick.push_back(classes[rng.below(classes.size())]);
            if (!trace_identity_check(normal_cayley_spectrum(n, pick)).ok)
                return {false, "class-union trace residual nonzero at n = " + std::to_string(n)};
            ++unions;
        }
    }
    return {true, "exact for n = 3..9 plus " + std::to_string(unions) + " seeded class unions"};
}

// 3. nu = d/(n-1) for n = 4..9; strict dominance of all other shapes for
//    n = 5..9; the n = 4 modulus tie is detected
Outcome criterion_nu_claim() {
    for (int n = 4; n <= 9; ++n) {
        SpectrumTable t = derangement_spectrum(n);
        Int d = t.degree;
        Int nu = exact_div(d, Int(n - 1));
        if (t.eigenvalue(std_shape(n)) != -nu)
            return {false, "standard-shape eigenvalue is not -d/(n-1) at n = " + std::to_string(n)};
        for (const auto& e : t.entries) {
            if (e.alpha == row_shape(n) || e.alpha == std_shape(n)) continue;
            Int mod = e.lambda >= 0 ? e.lambda : Int(-e.lambda);
            if (n >= 5 && !(mod < nu))
                return {false, "dominance fails at n = " + std::to_string(n) + " shape " + e.alpha.to_string()};
            if (n == 4 && mod > nu)
                return {false, "a modulus exceeds nu at n = 4"};
        }
        NuCheck nc = nu_formula_check(n);
        if (!nc.ok || nc.tie != (n == 4))
            return {false, "library nu check disagrees at n = " + std::to_string(n)};
    }
    SpectrumTable t4 = derangement_spectrum(4);
    if (t4.eigenvalue(col_shape(4)) != -3 || t4.eigenvalue(std_shape(4)) != -3)
        return {false, "the n = 4 tie |lambda_(1^4)| = |lambda_(3,1)| = 3 is absent"};
    return {true, "nu = d/(n-1) for n = 4..9, strict dominance for n = 5..9, n = 4 tie detected"};
}

// 4. hoffman bound equals (n-1)! for n = 4..9; search attains it with the n^2
//    one-cosets as the exact optimum set at n = 4 and n = 5
Outcome criterion_deza_frankl_tightness() {
    for (int n = 4; n <= 9; ++n) {
        SpectrumSummary s = summarize(derangement_spectrum(n));
        if (hoffman_independent_bound(s.d, s.lambda_min, factorial(n)) != make_rat(factorial(n - 1), 1))
            return {false, "bound is not (n-1)! at n = " + std::to_string(n)};
    }
    for (int n : {4, 5}) {
        SearchOptions so;
        so.budget_seconds = 600.0;
        SearchResult r = max_intersecting_search(n, so);
        if (r.status != SearchStatus::complete)
            return {false, "search exhausted its budget at n = " + std::to_string(n)};
        if (r.optimum != factorial(n - 1))
            return {false, "search optimum is not (n-1)! at n = " + std::to_string(n)};
        if (r.witnesses != one_cosets_sorted(n) ||
            r.witnesses.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
            return {false, "optima are not exactly the n^2 one-cosets at n = " + std::to_string(n)};
    }
    return {true, "bound = (n-1)! for n = 4..9; optima are exactly the n^2 one-cosets at n = 4, 5"};
}

// 5. cross-product scan: optimum 36 at n = 4 with only equal one-coset pairs;
//    optimum strictly above 4 at n = 3
Outcome criterion_cross_product() {
    SearchOptions so;
    so.budget_seconds = 300.0;
    SearchResult r4 = max_cross_product_search(4, so);
    if (r4.status != SearchStatus::complete) return {false, "the n = 4 scan exhausted its budget"};
    if (r4.optimum != 36) return {false, "n = 4 cross optimum is not 36"};
    auto cosets = one_cosets_sorted(4);
    std::vector<PermFamily> firsts;
    for (const auto& [A, B] : r4.witness_pairs) {
        if (!(A == B)) return {false, "an optimal n = 4 pair has A != B"};
        firsts.push_back(A);
    }
    std::sort(firsts.begin(), firsts.end(),
              [](const PermFamily& a, const PermFamily& b) { return a.lex_less(b); });
    if (firsts != cosets) return {false, "optimal n = 4 pairs are not exactly the 16 cosets"};

    SearchResult r3 = max_cross_product_search(3, so);
    if (r3.status != SearchStatus::complete) return {false, "the n = 3 scan exhausted its budget"};
    if (!(r3.optimum > 4)) return {false, "n = 3 optimum does not exceed the coset product 4"};
    if (r3.optimum != 9) return {false, "n = 3 optimum is not 9"};
    return {true, "optimum 36 at n = 4 from equal one-coset pairs only; optimum 9 > 4 at n = 3"};
}

// 6. exactly four shapes with dimension below C(n-1,2) for n = 9..13
Outcome criterion_low_dim() {
    for (int n = 9; n <= 13; ++n) {
        auto shapes = low_dim_classification(n, default_low_dim_threshold(n));
        std::set<std::string> got, want;
        for (const auto& p : shapes) got.insert(p.to_string());
        for (const auto& p : {row_shape(n), col_shape(n), std_shape(n), hook_shape(n)})
            want.insert(p.to_string());
        if (got != want) return {false, "shape set differs at n = " + std::to_string(n)};
    }
    return {true, "exactly the four expected shapes for n = 9..13"};
}

// 7. span of the one-coset characteristic vectors has rank 1 + (n-1)^2
Outcome criterion_coset_rank() {
    for (int n = 3; n <= 6; ++n)
        if (static_cast<int64_t>(coset_span_rank(n)) != 1 + int64_t(n - 1) * (n - 1))
            return {false, "rank differs at n = " + std::to_string(n)};
    return {true, "rank 1 + (n-1)^2 by exact elimination for n = 3..6"};
}

// 8. the closed-form projection coordinate equals the idempotent route on B,
//    C, every one-coset, and 20 seeded families, at n = 4 and n = 5
Outcome criterion_projection_two_route() {
    Rng rng(44520250);
    for (int n : {4, 5}) {
        std::vector<PermFamily> fams{construct_B(n), construct_C(n)};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) fams.push_back(one_coset(n, i, j));
        uint64_t N = factorial(n).get_ui();
        for (int k = 0; k < 20; ++k) {
            PermFamily A(n);
            for (uint64_t r = 0; r < N; ++r)
                if (rng.coin()) A.insert(r);
            fams.push_back(A);
        }
        for (const auto& A : fams) {
            GroupAlgebraVector v = characteristic_vector(A);
            GroupAlgebraVector p = project_isotypic(v, row_shape(n));
            GroupAlgebraVector q = project_isotypic(v, std_shape(n));
            for (uint64_t rank = 0; rank < N; ++rank)
                if (projection_coordinate_closed_form(A, from_lex_rank(n, rank)) !=
                    p.coords[rank] + q.coords[rank])
                    return {false, "routes disagree at n = " + std::to_string(n)};
        }
    }
    return {true, "closed form equals the idempotent route everywhere tested, n = 4, 5"};
}

// 9. construction sizes, their comparison flip at n = 6, and removal counts
Outcome criterion_constructions() {
    for (int n = 4; n <= 8; ++n) {
        PermFamily B = construct_B(n);
        PermFamily C = construct_C(n);
        Int bsize = 3 * factorial(n - 2) - 2 * factorial(n - 3);
        Int csize = factorial(n - 1) - derangement_count(n - 1) - derangement_count(n - 2) + 1;
        if (Int(B.size()) != bsize) return {false, "|B| formula fails at n = " + std::to_string(n)};
        if (Int(C.size()) != csize) return {false, "|C| formula fails at n = " + std::to_string(n)};
        if (n <= 5 && bsize != csize) return {false, "|B| != |C| at n = " + std::to_string(n)};
        if (n >= 6 && !(csize > bsize)) return {false, "|C| <= |B| at n = " + std::to_string(n)};
        if (min_removals_to_centred(B) != factorial(n - 2) - factorial(n - 3))
            return {false, "B removal count fails at n = " + std::to_string(n)};
        if (min_removals_to_centred(C) != 1)
            return {false, "C removal count fails at n = " + std::to_string(n)};
    }
    return {true, "sizes and removal counts exact for n = 4..8; |C| overtakes |B| at n = 6"};
}

// 10. exact squared-distance bound for every maximum and every seeded maximal
//     independent set at n = 5, and the cross-pair inequality on 100 pairs
Outcome criterion_stability() {
    SpectrumSummary s = summarize(derangement_spectrum(5));
    std::vector<Partition> top{row_shape(5), std_shape(5)};
    Int N = factorial(5);
    auto distance_ok = [&](const PermFamily& A) {
        Rat alpha = make_rat(Int(A.size()), N);
        Rat d_sq = distance_to_U(characteristic_vector(A), top);
        return d_sq <= distance_bound_independent(alpha, s.d, s.lambda_min, *s.lambda_M);
    };

    SearchOptions so;
    so.budget_seconds = 600.0;
    SearchResult maxima = max_intersecting_search(5, so);
    if (maxima.status != SearchStatus::complete) return {false, "maximum search exhausted its budget"};
    for (const auto& A : maxima.witnesses)
        if (!distance_ok(A)) return {false, "distance bound fails on a maximum set"};

    Rng rng(1006);
    for (int k = 0; k < 25; ++k)
        if (!distance_ok(random_maximal_intersecting(5, rng)))
            return {false, "distance bound fails on a seeded maximal set"};

    for (int k = 0; k < 100; ++k) {
        PermFamily X = random_maximal_intersecting(5, rng);
        PermFamily Y = cross_partner(X);
        Rat d_sq = distance_to_U(characteristic_vector(X), top);
        Rat e_sq = distance_to_U(characteristic_vector(Y), top);
        if (!cross_distance_inequality_check(X, Y, s, d_sq, e_sq))
            return {false, "cross-pair inequality fails on a seeded pair"};
    }
    return {true, "bound holds on all 25 maxima, 25 seeded maximal sets, and 100 cross pairs at n = 5"};
}

// 11. slice product bound via the direct route and the restriction route,
//     with identical verdicts, on B, C, every one-coset, and 100 seeded
//     maximal families at n = 5
Outcome criterion_slice_bound() {
    auto all_triples = [](const PermFamily& A) {
        int n = A.n();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    SliceCheckDetail d = slice_product_check_detail(A, i, j, k);
                    if (!d.direct_ok || !d.reduction_ok) return false;
                }
        return true;
    };
    std::vector<PermFamily> fams{construct_B(5), construct_C(5)};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) fams.push_back(one_coset(5, i, j));
    Rng rng(1106);
    for (int k = 0; k < 100; ++k) fams.push_back(random_maximal_intersecting(5, rng));
    for (size_t k = 0; k < fams.size(); ++k)
        if (!all_triples(fams[k]))
            return {false, "slice bound or route agreement fails on family " + std::to_string(k)};
    return {true, "both routes agree and the bound holds on all 127 families at n = 5"};
}

// 12. Maurey neighborhood growth with a = 1/n^4 and h = floor(2 h0), using
//     certified rational bounds on exp, 50 seeded sets at n = 5 and n = 6
Outcome criterion_maurey() {
    Rng rng(1206);
    for (int n : {5, 6}) {
        Int n4 = Int(n) * n * n * n;
        Rat a = make_rat(1, n4);
        uint64_t N = factorial(n).get_ui();
        for (int k = 0; k < 50; ++k) {
            PermFamily X(n);
            uint64_t size = 1 + rng.below(N);
            for (uint64_t t = 0; t < size; ++t) X.insert(rng.below(N));
            MaureyCheck mc = maurey_neighborhood_check(X, a);
            if (!mc.hypothesis_ok || !mc.ok)
                return {false, "neighborhood inequality fails at n = " + std::to_string(n)};
        }
    }
    return {true, "certified growth on 50 seeded sets each at n = 5 and n = 6"};
}

// 13. column orthogonality and the transpose-sign identity for n <= 9;
//     permutation characters by two routes for n <= 6
Outcome criterion_character_engine() {
    for (int n = 1; n <= 9; ++n) {
        auto t = CharacterTable::get(n);
        if (!t->column_orthogonality_ok())
            return {false, "column orthogonality fails at n = " + std::to_string(n)};
        for (const auto& alpha : t->shapes())
            for (const auto& beta : t->shapes()) {
                int sign = ((n - static_cast<int>(beta.parts().size())) % 2 == 0) ? 1 : -1;
                if (t->value(transpose(alpha), beta) != sign * t->value(alpha, beta))
                    return {false, "transpose-sign identity fails at n = " + std::to_string(n)};
            }
    }
    for (int n = 1; n <= 6; ++n)
        for (const auto& beta : partitions_of(n))
            for (const auto& gamma : partitions_of(n))
                if (permutation_character(beta, gamma) != permutation_character_via_kostka(beta, gamma))
                    return {false, "permutation character routes disagree at n = " + std::to_string(n)};
    return {true, "orthogonality and transpose-sign for n <= 9; two-route characters for n <= 6"};
}

struct Criterion {
    const char* name;
    Outcome (*fn)();
    double limit_seconds;   // 0 = no pinned runtime
};

constexpr Criterion kCriteria[] = {
    {"eigenvalue table", criterion_eigenvalue_table, 5.0},
    {"trace identity", criterion_trace_identity, 0.0},
    {"nu claim", criterion_nu_claim, 0.0},
    {"independence bound tightness", criterion_deza_frankl_tightness, 600.0},
    {"cross-product optimum", criterion_cross_product, 300.0},
    {"low-dimension classification", criterion_low_dim, 10.0},
    {"coset span rank", criterion_coset_rank, 0.0},
    {"projection two-route", criterion_projection_two_route, 0.0},
    {"construction sizes", criterion_constructions, 0.0},
    {"stability inequalities", criterion_stability, 0.0},
    {"slice bound two-route", criterion_slice_bound, 0.0},
    {"Maurey neighborhood growth", criterion_maurey, 0.0},
    {"character engine", criterion_character_engine, 0.0},
};

}  // namespace

int main() {
    int passed = 0;
    const int total = static_cast<int>(std::size(kCriteria));
    for (int k = 0; k < total; ++k) {
        const Criterion& c = kCriteria[k];
        auto start = std::chrono::steady_clock::now();
        Outcome o = c.fn();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = c.limit_seconds == 0.0 || secs < c.limit_seconds;
        bool ok = o.ok && in_budget;
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << " [" << (k + 1) << "/" << total << "] " << c.name << ": "
             << o.detail;
        if (!in_budget) line << " (exceeded " << c.limit_seconds << " s budget)";
        std::printf("%s (%.2fs)\n", line.str().c_str(), secs);
        passed += ok;
    }
    std::printf("acceptance: %d/%d criteria passed\n", passed, total);
    return passed == total ? 0 : 1;
}
