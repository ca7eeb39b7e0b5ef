// Compares the serial pairwise reference projection against the table-driven
// class-sum kernel (OpenMP) on the same inputs and insists the outputs match.
// --quick restricts to n = 4 so the ctest smoke run stays fast.

#include "spectra/family.hpp"
#include "spectra/groupalg.hpp"
#include "spectra/partition.hpp"
#include "spectra/rng.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

using namespace spectra;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

GroupAlgebraVector random_vector(int n, Rng& rng) {
    GroupAlgebraVector v = zero_vector(n);
    for (auto& c : v.coords) c = make_rat(Int(rng.below(21)) - 10, Int(1 + rng.below(3)));
    return v;
}

bool bench_n(int n, int reps) {
    std::vector<GroupAlgebraVector> inputs;
    inputs.push_back(characteristic_vector(construct_B(std::max(n, 4))));
    Rng rng(77);
    inputs.push_back(random_vector(n, rng));
    auto shapes = partitions_of(n);

    double t_ref = 0.0, t_fast = 0.0;
    bool identical = true;
    for (int rep = 0; rep < reps; ++rep) {
        for (const auto& v : inputs) {
            for (const auto& alpha : shapes) {
                auto s0 = std::chrono::steady_clock::now();
                GroupAlgebraVector a = project_isotypic_reference(v, alpha);
                t_ref += seconds_since(s0);
                auto s1 = std::chrono::steady_clock::now();
                GroupAlgebraVector b = project_isotypic(v, alpha);
                t_fast += seconds_since(s1);
                identical = identical && a == b;
            }
        }
    }
    std::printf("n = %d  (%zu shapes, %d reps, 2 vectors)\n", n, shapes.size(), reps);
    std::printf("  pairwise reference (serial) %8.3f s\n", t_ref);
    std::printf("  class-sum kernel   (OpenMP) %8.3f s", t_fast);
    if (t_fast > 0.0) std::printf("   speedup %.1fx", t_ref / t_fast);
    std::printf("\n  outputs %s\n", identical ? "identical" : "DIFFER");
    return identical;
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;

    bool ok = true;
    if (quick) {
        ok = bench_n(4, 1);
    } else {
        ok = bench_n(4, 5) && ok;
        ok = bench_n(5, 2) && ok;
        ok = bench_n(6, 1) && ok;
    }
    if (!ok) {
        std::printf("benchmark FAILED: kernel and reference disagree\n");
        return 1;
    }
    return 0;
}
