#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/perm.hpp"
#include "spectra/repr.hpp"
#include "spectra/rng.hpp"
#include "oracles.hpp"

#include <map>

using namespace spectra;

namespace {

Permutation representative(int n, const Partition& type) {
    std::vector<int> img(static_cast<size_t>(n));
    int start = 0;
    for (int len : type.parts()) {
        for (int k = 0; k < len; ++k)
            img[static_cast<size_t>(start + k)] = start + (k + 1) % len;
        start += len;
    }
    return Permutation(std::move(img));
}

// Independent character table: permutation characters counted on actual
// tabloids, Kostka numbers by brute-force tableau listing, then the
// unitriangular system xi_beta = sum_alpha K_{alpha,beta} chi_alpha solved
// top-down in reverse lexicographic order.
std::map<std::string, std::map<std::string, long>> oracle_character_table(int n) {
    auto shapes = partitions_of(n);
    std::map<std::string, std::map<std::string, long>> chi;
    for (const auto& beta : shapes) {  // descending lex, (n) first
        std::map<std::string, long> row;
        for (const auto& gamma : shapes) {
            long xi = oracle::fixed_tabloids(beta.parts(), representative(n, gamma).images());
            for (const auto& alpha : shapes) {
                if (!(alpha > beta)) continue;
                long k = oracle::kostka_brute(alpha.parts(), beta.parts());
                if (k) xi -= k * chi.at(alpha.to_string()).at(gamma.to_string());
            }
            row[gamma.to_string()] = xi;
        }
        chi[beta.to_string()] = std::move(row);
    }
    return chi;
}

} // namespace

TEST_CASE("transpose: worked example and involution") {
    CHECK(transpose(Partition({3, 2, 2})) == Partition({3, 3, 1}));
    CHECK(transpose(Partition({5})) == Partition({1, 1, 1, 1, 1}));
    for (int n = 0; n <= 9; ++n)
        for (const auto& p : partitions_of(n)) CHECK(transpose(transpose(p)) == p);
}

TEST_CASE("hook lengths and dimension") {
    auto h = hook_lengths(Partition({3, 2, 2}));
    REQUIRE(h.size() == 3);
    CHECK(h[0] == std::vector<int>{5, 4, 1});
    CHECK(h[1] == std::vector<int>{3, 2});
    CHECK(h[2] == std::vector<int>{2, 1});
    CHECK(dimension(Partition({3, 2, 2})) == 21);

    for (int n = 2; n <= 13; ++n)
        CHECK(dimension(Partition({n - 1, 1})) == n - 1);

    // Burnside: sum of squared dimensions is n!
    for (int n = 1; n <= 10; ++n) {
        Int s = 0;
        for (const auto& a : partitions_of(n)) s += dimension(a) * dimension(a);
        CHECK(s == factorial(n));
    }

    // dimension = number of standard tableaux (independent enumeration)
    for (int n = 1; n <= 6; ++n) {
        std::vector<int> ones(static_cast<size_t>(n), 1);
        for (const auto& a : partitions_of(n))
            CHECK(dimension(a) == Int(oracle::kostka_brute(a.parts(), ones)));
    }

    // transposition preserves dimension
    for (const auto& a : partitions_of(8)) CHECK(dimension(a) == dimension(transpose(a)));
}

TEST_CASE("character table matches the tabloid/Kostka oracle up to n=5") {
    for (int n = 1; n <= 5; ++n) {
        auto oracle_chi = oracle_character_table(n);
        auto table = CharacterTable::get(n);
        for (const auto& alpha : table->shapes())
            for (const auto& beta : table->shapes())
                CHECK(table->value(alpha, beta) ==
                      Int(oracle_chi.at(alpha.to_string()).at(beta.to_string())));
    }
}

TEST_CASE("frozen character values") {
    CHECK(character(Partition({3, 2}), Partition({5})) == 0);
    CHECK(character(Partition({3, 2}), Partition({3, 2})) == 1);
    CHECK(character(Partition({2, 2}), Partition({2, 2})) == 2);
    CHECK(character(Partition({3, 1}), Partition({4})) == -1);
    CHECK(character(Partition({2, 1, 1}), Partition({4})) == 1);
}

TEST_CASE("character on the identity class equals the dimension") {
    for (int n = 1; n <= 8; ++n) {
        auto table = CharacterTable::get(n);
        Partition id(std::vector<int>(static_cast<size_t>(n), 1));
        for (const auto& a : table->shapes()) CHECK(table->value(a, id) == dimension(a));
    }
}

TEST_CASE("orthogonality") {
    for (int n = 1; n <= 9; ++n) CHECK(CharacterTable::get(n)->column_orthogonality_ok());
    // row orthogonality, weighted by class sizes
    for (int n = 1; n <= 7; ++n) {
        auto t = CharacterTable::get(n);
        auto shapes = t->shapes();
        for (const auto& a : shapes)
            for (const auto& b : shapes) {
                Int s = 0;
                for (const auto& c : shapes)
                    s += conjugacy_class_size(c) * t->value(a, c) * t->value(b, c);
                CHECK(s == (a == b ? factorial(n) : Int(0)));
            }
    }
}

TEST_CASE("transpose-sign identity") {
    for (int n = 2; n <= 9; ++n) {
        auto t = CharacterTable::get(n);
        for (const auto& a : t->shapes())
            for (const auto& b : t->shapes()) {
                int sign = ((n - b.rows()) % 2 == 0) ? 1 : -1;
                CHECK(t->value(transpose(a), b) == sign * t->value(a, b));
            }
    }
}

TEST_CASE("classes are closed under inversion (characters are real)") {
    Rng rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.below(6));
        auto p = from_lex_rank(n, rng.below(oracle::fact_u64(n)));
        CHECK(cycle_type(p) == cycle_type(p.inverse()));
    }
}

TEST_CASE("branching restriction") {
    auto br = branching_restriction(Partition({3, 2, 2}));
    REQUIRE(br.size() == 2);
    CHECK(br[0] == Partition({3, 2, 1}));
    CHECK(br[1] == Partition({2, 2, 2}));
    CHECK(branching_restriction(Partition({4, 1})) ==
          std::vector<Partition>{Partition({4}), Partition({3, 1})});
    CHECK(branching_restriction(Partition({1, 1, 1})) ==
          std::vector<Partition>{Partition({1, 1})});

    // dimensions add up across the restriction
    for (int n = 2; n <= 9; ++n)
        for (const auto& a : partitions_of(n)) {
            Int s = 0;
            for (const auto& g : branching_restriction(a)) s += dimension(g);
            CHECK(s == dimension(a));
        }
}

TEST_CASE("kostka numbers") {
    for (int n = 1; n <= 5; ++n)
        for (const auto& a : partitions_of(n))
            for (const auto& b : partitions_of(n))
                CHECK(kostka(a, b) == Int(oracle::kostka_brute(a.parts(), b.parts())));

    for (const auto& a : partitions_of(7)) {
        CHECK(kostka(a, a) == 1);
        CHECK(kostka(Partition({7}), a) == 1);
    }
    CHECK(kostka(Partition({3, 2}), Partition({2, 2, 1})) == 2);
    // K vanishes unless the shape dominates the content; spot check a violation
    CHECK(kostka(Partition({2, 2, 1}), Partition({3, 2})) == 0);
}

TEST_CASE("youngs rule") {
    auto d = youngs_rule(Partition({4, 1}));
    REQUIRE(d.size() == 2);
    CHECK(d[0].first == Partition({5}));
    CHECK(d[0].second == 1);
    CHECK(d[1].first == Partition({4, 1}));
    CHECK(d[1].second == 1);

    // M^(1^n) decomposes with multiplicity f^alpha; dimensions sum to n!
    for (int n = 1; n <= 6; ++n) {
        Partition ones(std::vector<int>(static_cast<size_t>(n), 1));
        Int s = 0;
        for (const auto& [alpha, k] : youngs_rule(ones)) {
            CHECK(k == dimension(alpha));
            s += k * dimension(alpha);
        }
        CHECK(s == factorial(n));
    }
}

TEST_CASE("permutation character: two routes, oracle, fixed-point identity") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& b : partitions_of(n))
            for (const auto& g : partitions_of(n))
                CHECK(permutation_character(b, g) == permutation_character_via_kostka(b, g));

    for (int n = 1; n <= 5; ++n)
        for (const auto& b : partitions_of(n))
            for (const auto& g : partitions_of(n))
                CHECK(permutation_character(b, g) ==
                      Int(oracle::fixed_tabloids(b.parts(), representative(n, g).images())));

    for (int n = 2; n <= 8; ++n) {
        Partition beta({n - 1, 1});
        for (const auto& g : partitions_of(n)) {
            CHECK(permutation_character(beta, g) == g.multiplicity(1));
            // the natural permutation character is 1 + chi_(n-1,1)
            CHECK(permutation_character(beta, g) == 1 + character(beta, g));
        }
    }

    Partition ones(std::vector<int>(5, 1));
    CHECK(permutation_character(ones, ones) == 120);
}

TEST_CASE("low-dimension classification") {
    for (int n = 9; n <= 13; ++n) {
        auto low = low_dim_classification(n, default_low_dim_threshold(n));
        REQUIRE(low.size() == 4);
        CHECK(low[0] == Partition({n}));
        CHECK(low[1] == Partition({n - 1, 1}));
        std::vector<int> hook2{2};
        hook2.insert(hook2.end(), static_cast<size_t>(n - 2), 1);
        CHECK(low[2] == Partition(hook2));
        CHECK(low[3] == Partition(std::vector<int>(static_cast<size_t>(n), 1)));
        // boundary shapes from the dimension table
        CHECK(dimension(Partition({n - 2, 2})) == default_low_dim_threshold(n));
        CHECK(dimension(Partition({n - 2, 1, 1})) == binomial(n - 1, 2));
        std::vector<int> tail2{2, 2};
        tail2.insert(tail2.end(), static_cast<size_t>(n - 4), 1);
        CHECK(dimension(Partition(tail2)) == default_low_dim_threshold(n));
        std::vector<int> hook3{3};
        hook3.insert(hook3.end(), static_cast<size_t>(n - 3), 1);
        CHECK(dimension(Partition(hook3)) == binomial(n - 1, 2));
    }
}

TEST_CASE("cache rows: round trip, tamper detection") {
    auto t = CharacterTable::get(6);
    auto rows = t->to_rows();
    auto t2 = CharacterTable::from_rows(6, rows);
    for (const auto& a : t->shapes())
        for (const auto& b : t->shapes()) CHECK(t2->value(a, b) == t->value(a, b));
    CHECK(t2->column_orthogonality_ok());

    rows[2].values[Partition({4, 2}).to_string()] = "999";
    auto bad = CharacterTable::from_rows(6, rows);
    CHECK_FALSE(bad->column_orthogonality_ok());

    rows.pop_back();
    CHECK_THROWS(CharacterTable::from_rows(6, rows));
}
