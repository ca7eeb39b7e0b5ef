#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/family.hpp"
#include "spectra/rng.hpp"
#include "oracles.hpp"

using namespace spectra;

namespace {

PermFamily random_family(int n, Rng& rng, uint64_t count) {
    PermFamily f(n);
    for (uint64_t i = 0; i < count; ++i) f.insert(rng.below(oracle::fact_u64(n)));
    return f;
}

PermFamily oracle_maximal_intersecting(int n, Rng& rng) {
    uint64_t N = oracle::fact_u64(n);
    std::vector<uint64_t> order(N);
    for (uint64_t i = 0; i < N; ++i) order[i] = i;
    rng.shuffle(order);
    PermFamily f(n);
    std::vector<std::vector<int>> chosen;
    for (uint64_t r : order) {
        auto img = from_lex_rank(n, r).images();
        bool ok = true;
        for (const auto& c : chosen)
            if (oracle::agreements(c, img) == 0) { ok = false; break; }
        if (ok) {
            f.insert(r);
            chosen.push_back(img);
        }
    }
    return f;
}

} // namespace

TEST_CASE("PermFamily basics") {
    PermFamily f(4);
    CHECK(f.universe() == 24);
    CHECK(f.empty());
    f.insert(uint64_t{0});
    f.insert(uint64_t{23});
    f.insert(Permutation::from_cycles(4, "(1 2)"));
    CHECK(f.size() == 3);
    CHECK(f.contains(uint64_t{23}));
    f.erase(23);
    CHECK_FALSE(f.contains(uint64_t{23}));
    CHECK(PermFamily::full(4).size() == 24);
    CHECK(PermFamily::full(4).complement().empty());
    auto m = PermFamily::full(3).members();
    CHECK(m.size() == 6);
    CHECK(std::is_sorted(m.begin(), m.end()));
    CHECK(f.is_subset_of(PermFamily::full(4)));
    CHECK_THROWS(f.insert(uint64_t{24}));
}

TEST_CASE("intersecting predicates match the definition and the graph") {
    Rng rng(101);
    for (int n = 3; n <= 5; ++n) {
        auto g = DerangementGraph::get(n);
        for (int trial = 0; trial < 30; ++trial) {
            auto f = random_family(n, rng, 1 + rng.below(20));
            bool direct = is_intersecting(f);
            // graph route: no member may have a neighbor inside the family
            bool independent = true;
            f.for_each([&](uint64_t r) {
                const auto& row = g->neighbors(r);
                for (size_t w = 0; w < row.size(); ++w)
                    if (row[w] & f.words()[w]) independent = false;
            });
            CHECK(direct == independent);
        }
    }

    PermFamily a(4), b(4);
    a.insert(Permutation::identity(4));
    b.insert(Permutation::from_cycles(4, "(1 2)(3 4)"));
    CHECK_FALSE(is_cross_intersecting(a, b));
    b.erase(lex_rank(Permutation::from_cycles(4, "(1 2)(3 4)")));
    b.insert(Permutation::from_cycles(4, "(1 2)"));
    CHECK(is_cross_intersecting(a, b));
}

TEST_CASE("centred detection and slices") {
    auto coset = one_coset(5, 2, 3);
    CHECK(coset.size() == 24);
    auto cc = is_centred(coset);
    CHECK(cc.centred);
    CHECK(cc.i == 2);
    CHECK(cc.j == 3);

    auto B = construct_B(5);
    CHECK_FALSE(is_centred(B).centred);

    // slices at a fixed position partition the family
    Rng rng(7);
    auto f = random_family(5, rng, 40);
    for (int i = 0; i < 5; ++i) {
        uint64_t total = 0;
        for (int j = 0; j < 5; ++j) total += slice(f, i, j).size();
        CHECK(total == f.size());
    }
    CHECK(slice(coset, 2, 3) == coset);
}

TEST_CASE("construction sizes match the closed forms") {
    for (int n = 3; n <= 8; ++n) {
        Int b_expected = 3 * factorial(n - 2) - 2 * factorial(n - 3);
        Int c_expected = factorial(n - 1) - derangement_count(n - 1) - derangement_count(n - 2) + 1;
        auto B = construct_B(n);
        auto C = construct_C(n);
        CHECK(Int(static_cast<unsigned long>(B.size())) == b_expected);
        CHECK(Int(static_cast<unsigned long>(C.size())) == c_expected);
        CHECK(is_intersecting(B));
        CHECK(is_intersecting(C));
        if (n >= 4) {
            CHECK_FALSE(is_centred(B).centred);
            CHECK_FALSE(is_centred(C).centred);
        }
        if (n == 4 || n == 5) CHECK(B.size() == C.size());
        if (n >= 6) CHECK(C.size() > B.size());
    }
}

TEST_CASE("min removals to centred") {
    CHECK(min_removals_to_centred(one_coset(5, 0, 0)) == 0);
    auto f = one_coset(5, 0, 0);
    f.insert(Permutation::transposition(5, 0, 1));
    CHECK(min_removals_to_centred(f) == 1);
    PermFamily e(4);
    CHECK(min_removals_to_centred(e) == 0);
    // B at n=5: largest slice has 10 members, |B| = 14
    CHECK(min_removals_to_centred(construct_B(5)) == 4);
}

TEST_CASE("double translation") {
    Rng rng(55);
    auto B = construct_B(5);
    auto pi = from_lex_rank(5, rng.below(120));
    auto tau = from_lex_rank(5, rng.below(120));
    auto T = double_translate(B, pi, tau);
    CHECK(T.size() == B.size());
    CHECK(is_intersecting(T));

    auto w = is_double_translate_of(T, B);
    CHECK(w.found);
    CHECK(double_translate(B, w.pi, w.tau) == T);

    // C is not a double translate of B at n = 5 (their slice profiles differ)
    auto nc = is_double_translate_of(construct_C(5), B);
    CHECK_FALSE(nc.found);

    // size mismatch short-circuits
    CHECK_FALSE(is_double_translate_of(one_coset(5, 0, 0), B).found);
}

TEST_CASE("t-intersecting bound") {
    // a 2-coset is 2-intersecting and meets the n!/t! bound with equality
    PermFamily f(5);
    one_coset(5, 0, 0).for_each([&](uint64_t r) {
        if (from_lex_rank(5, r)(1) == 1) f.insert(r);
    });
    CHECK(f.size() == 6);
    CHECK(is_t_intersecting(f, 2));
    CHECK(t_intersecting_bound_check(f, 2));

    // non-t-intersecting families pass vacuously; id and (1 2 3) agree only at 3
    PermFamily g(4);
    g.insert(Permutation::identity(4));
    g.insert(Permutation::from_cycles(4, "(1 2 3)"));
    CHECK_FALSE(is_t_intersecting(g, 2));
    CHECK(t_intersecting_bound_check(g, 2));

    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto h = oracle_maximal_intersecting(5, rng);
        CHECK(t_intersecting_bound_check(h, 1));
    }
}

TEST_CASE("counting agreements at two separate points") {
    auto id4 = Permutation::identity(4);
    CHECK(count_agreeing_at_two_separate_points(id4, id4) == 7);

    // against a direct double-loop oracle
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + static_cast<int>(rng.below(3));
        auto rho = from_lex_rank(n, rng.below(oracle::fact_u64(n)));
        auto tau = from_lex_rank(n, rng.below(oracle::fact_u64(n)));
        long expected = 0;
        oracle::for_each_perm(n, [&](const std::vector<int>& img) {
            bool found = false;
            for (int i = 0; i < n && !found; ++i)
                for (int j = 0; j < n && !found; ++j)
                    if (i != j && img[static_cast<size_t>(i)] == rho(i) &&
                        img[static_cast<size_t>(j)] == tau(j))
                        found = true;
            expected += found;
        });
        CHECK(count_agreeing_at_two_separate_points(rho, tau) == Int(expected));
    }
}

TEST_CASE("intersecting count with a fixed coset constraint") {
    Rng rng(19);
    for (int n = 4; n <= 7; ++n) {
        Int expected = factorial(n - 1) - derangement_count(n - 1) - derangement_count(n - 2);
        for (int trial = 0; trial < 5; ++trial) {
            auto tau = from_lex_rank(n, rng.below(oracle::fact_u64(n)));
            int i = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            int j = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            if (tau(i) == j) { --trial; continue; }
            CHECK(intersecting_with_fixed_tau_count(i, j, tau) == expected);
        }
        auto t01 = Permutation::transposition(n, 0, 1);
        CHECK_THROWS(intersecting_with_fixed_tau_count(0, 1, t01));
    }
}

TEST_CASE("slice product bound: both routes agree and hold") {
    auto check_all_triples = [](const PermFamily& A) {
        int n = A.n();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (j == k) continue;
                    auto d = slice_product_check_detail(A, i, j, k);
                    CHECK(d.direct_ok == d.reduction_ok);
                    CHECK(d.direct_ok);
                    CHECK(d.reduced_cross_intersecting);
                    CHECK(slice_product_check(A, i, j, k));
                }
    };
    check_all_triples(one_coset(4, 1, 2));
    check_all_triples(construct_B(5));
    check_all_triples(construct_C(5));
    Rng rng(303);
    for (int trial = 0; trial < 5; ++trial) check_all_triples(oracle_maximal_intersecting(4, rng));

    CHECK_THROWS(slice_product_check(PermFamily::full(4), 0, 0, 1));  // not intersecting
}

TEST_CASE("restriction to the stabilizer of 0") {
    auto E = one_coset(5, 0, 0);
    auto Er = restrict_fixing_zero(E);
    CHECK(Er.n() == 4);
    CHECK(Er.size() == 24);
    CHECK(Er == PermFamily::full(4));
    PermFamily bad(4);
    bad.insert(Permutation::from_cycles(4, "(1 2)"));
    CHECK_THROWS(restrict_fixing_zero(bad));
}

TEST_CASE("transposition distance and neighborhoods") {
    auto id = Permutation::identity(5);
    CHECK(transposition_distance(id, id) == 0);
    CHECK(transposition_distance(id, Permutation::transposition(5, 1, 3)) == 1);
    CHECK(transposition_distance(id, Permutation::from_cycles(5, "(1 2 3)")) == 2);
    CHECK(transposition_distance(id, Permutation::from_cycles(5, "(1 2 3 4 5)")) == 4);

    // BFS neighborhood equals the direct distance filter
    Rng rng(404);
    for (int n = 4; n <= 5; ++n) {
        PermFamily X(n);
        for (int i = 0; i < 3; ++i) X.insert(rng.below(oracle::fact_u64(n)));
        for (int h = 0; h <= n - 1; ++h) {
            auto nb = transposition_neighborhood(X, h);
            PermFamily direct(n);
            auto xs = X.member_perms();
            PermFamily::full(n).for_each([&](uint64_t r) {
                auto p = from_lex_rank(n, r);
                for (const auto& x : xs)
                    if (transposition_distance(x, p) <= h) { direct.insert(r); break; }
            });
            CHECK(nb == direct);
        }
        // diameter of the transposition Cayley graph is n-1
        PermFamily single(n);
        single.insert(uint64_t{0});
        CHECK(transposition_neighborhood(single, n - 1) == PermFamily::full(n));
    }
}

TEST_CASE("maurey neighborhood check") {
    Rng rng(505);
    for (int n : {5, 6}) {
        Rat a(1, static_cast<unsigned long>(n) * n * n * n);
        uint64_t min_size = static_cast<uint64_t>(
            mpz_get_ui(rat_floor(a * Rat(factorial(n))).get_mpz_t())) + 1;
        for (int trial = 0; trial < 5; ++trial) {
            auto X = random_family(n, rng, min_size + rng.below(10));
            auto mc = maurey_neighborhood_check(X, a);
            CHECK(mc.hypothesis_ok);
            CHECK(mc.ok);
            CHECK(mc.h == (n == 5 ? 7 : 8));
            CHECK(mc.rhs == (1 - a) * Rat(factorial(n)));
        }
        PermFamily empty(n);
        CHECK_FALSE(maurey_neighborhood_check(empty, a).hypothesis_ok);
    }
}

TEST_CASE("coset partition into derangement cliques") {
    for (int n = 3; n <= 6; ++n) {
        std::string cyc = "(";
        for (int i = 1; i <= n; ++i) cyc += std::to_string(i) + (i < n ? " " : ")");
        auto rho = Permutation::from_cycles(n, cyc);
        CHECK(deza_frankl_partition_check(n, rho));
        auto cells = coset_cells(n, rho);
        CHECK(cells.cells.size() == oracle::fact_u64(n) / static_cast<uint64_t>(n));

        // an intersecting family meets each cell at most once
        for (const PermFamily& A : {construct_B(std::max(n, 3)), one_coset(n, 0, 0)}) {
            if (A.n() != n) continue;
            for (const auto& cell : cells.cells) {
                int hits = 0;
                for (uint32_t r : cell) hits += A.contains(static_cast<uint64_t>(r));
                CHECK(hits <= 1);
            }
        }
    }
    CHECK_THROWS(deza_frankl_partition_check(4, Permutation::transposition(4, 0, 1)));
}

TEST_CASE("random maximal intersecting families are intersecting and maximal") {
    for (int n : {3, 4, 5}) {
        CAPTURE(n);
        auto g = DerangementGraph::get(n);
        uint64_t N = g->vertices();
        for (uint64_t seed = 1; seed <= 8; ++seed) {
            Rng rng(seed * 1000 + static_cast<uint64_t>(n));
            PermFamily A = random_maximal_intersecting(n, rng);
            CHECK(is_intersecting(A));
            CHECK(!A.empty());
            // maximality: every outsider disagrees everywhere with some member
            auto members = A.members();
            for (uint64_t r = 0; r < N; ++r) {
                if (A.contains(r)) continue;
                bool conflicted = false;
                const auto& row = g->neighbors(r);
                for (uint64_t m : members)
                    if ((row[m / 64] >> (m % 64)) & 1) { conflicted = true; break; }
                CHECK(conflicted);
            }
            // same greedy rule through plain image comparison instead of the
            // adjacency masks must reproduce the family exactly
            Rng again(seed * 1000 + static_cast<uint64_t>(n));
            CHECK(oracle_maximal_intersecting(n, again) == A);
        }
    }
    CHECK_THROWS_AS([] { Rng r(1); return random_maximal_intersecting(9, r); }(),
                    std::invalid_argument);
}
