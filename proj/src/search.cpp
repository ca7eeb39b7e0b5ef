#include "spectra/search.hpp"

#include "spectra/spectral.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <set>
#include <stdexcept>

namespace spectra {

namespace {

using Mask = std::vector<uint64_t>;
using Clock = std::chrono::steady_clock;

uint64_t factorial_u64(int n) {
    uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<uint64_t>(i);
    return r;
}

void mask_set(Mask& m, uint64_t i) { m[i >> 6] |= uint64_t{1} << (i & 63); }
void mask_clear(Mask& m, uint64_t i) { m[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

uint64_t mask_pop(const Mask& m) {
    uint64_t s = 0;
    for (uint64_t w : m) s += static_cast<uint64_t>(std::popcount(w));
    return s;
}

bool masks_hit(const Mask& a, const Mask& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i]) return true;
    return false;
}

uint64_t mask_pop_and(const Mask& a, const Mask& b) {
    uint64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += static_cast<uint64_t>(std::popcount(a[i] & b[i]));
    return s;
}

Mask mask_and(const Mask& a, const Mask& b) {
    Mask out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
    return out;
}

Mask mask_andnot(const Mask& a, const Mask& b) {
    Mask out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] & ~b[i];
    return out;
}

template <typename F>
void mask_for_each(const Mask& m, F&& f) {
    for (size_t w = 0; w < m.size(); ++w)
        for (uint64_t bits = m[w]; bits; bits &= bits - 1)
            f(static_cast<uint64_t>(w) * 64 + static_cast<uint64_t>(std::countr_zero(bits)));
}

void atomic_max(std::atomic<uint32_t>& a, uint32_t v) {
    uint32_t cur = a.load(std::memory_order_relaxed);
    while (cur < v && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {}
}

void atomic_max64(std::atomic<uint64_t>& a, uint64_t v) {
    uint64_t cur = a.load(std::memory_order_relaxed);
    while (cur < v && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {}
}

PermFamily family_from_mask(int n, const Mask& m) {
    PermFamily f(n);
    mask_for_each(m, [&](uint64_t r) { f.insert(r); });
    return f;
}

// ---- maximum intersecting family ------------------------------------------------

struct Ctx {
    int n = 0;
    uint64_t N = 0;
    size_t words = 0;
    bool non_centred = false;
    std::vector<Mask> compat;     // per vertex: non-neighbors, self cleared
    std::vector<Mask> classes;    // greedy clique cover, branching order
    std::vector<Mask> cells;      // n-cycle coset cells (independent partition)
    std::vector<Mask> cosets;     // i*n + j -> {sigma : sigma(i) = j}
    std::vector<uint64_t> pairs;  // per vertex: bitset of (i, sigma(i)) over n^2
    uint32_t hoffman_cap = 0;
    uint64_t pair_cap = 0;        // valid cap on products of two distinct slices
    Mask universe;
};

struct Shared {
    std::atomic<uint32_t> best{0};
    std::atomic<uint64_t> nodes{0};
    std::atomic<uint64_t> p_hoffman{0}, p_class{0}, p_cell{0}, p_slice{0}, p_forbidden{0};
    std::atomic<bool> stop{false};
    Clock::time_point deadline;
    bool collecting = false;
    uint32_t target = 0;
    std::mutex mu;
    std::set<Mask> found;
    uint64_t optima_count = 0;
    bool capped = false;
    size_t cap = 0;
    Mask best_example;   // pass-one improvement snapshot (budget-exhaustion fallback)
};

void note_example(Shared& sh, uint32_t size, const Mask& cmask) {
    std::lock_guard<std::mutex> lock(sh.mu);
    if (size > mask_pop(sh.best_example)) sh.best_example = cmask;
}

void collect(Shared& sh, const Mask& cmask) {
    std::lock_guard<std::mutex> lock(sh.mu);
    auto [it, fresh] = sh.found.insert(cmask);
    (void)it;
    if (!fresh) return;
    ++sh.optima_count;
    if (sh.found.size() > sh.cap) {
        sh.found.erase(std::prev(sh.found.end()));
        sh.capped = true;
    }
}

Ctx build_ctx(int n, bool non_centred) {
    Ctx ctx;
    ctx.n = n;
    ctx.N = factorial_u64(n);
    ctx.words = (ctx.N + 63) / 64;
    ctx.non_centred = non_centred;

    ctx.universe.assign(ctx.words, 0);
    for (uint64_t r = 0; r < ctx.N; ++r) mask_set(ctx.universe, r);

    auto graph = DerangementGraph::get(n);
    ctx.compat.reserve(ctx.N);
    for (uint64_t v = 0; v < ctx.N; ++v) {
        Mask row = mask_andnot(ctx.universe, graph->neighbors(v));
        mask_clear(row, v);
        ctx.compat.push_back(std::move(row));
    }

    // greedy clique cover in rank order: vertex joins the first class it is
    // adjacent to in full (classes therefore stay cliques)
    for (uint64_t v = 0; v < ctx.N; ++v) {
        const Mask& adj = graph->neighbors(v);
        bool placed = false;
        for (auto& cls : ctx.classes) {
            bool clique = true;
            for (size_t w = 0; w < ctx.words; ++w)
                if (cls[w] & ~adj[w]) { clique = false; break; }
            if (clique) {
                mask_set(cls, v);
                placed = true;
                break;
            }
        }
        if (!placed) {
            Mask cls(ctx.words, 0);
            mask_set(cls, v);
            ctx.classes.push_back(std::move(cls));
        }
    }

    if (n >= 2) {
        std::vector<int> rho_img(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) rho_img[static_cast<size_t>(i)] = (i + 1) % n;
        auto dcells = coset_cells(n, Permutation(std::move(rho_img)));
        for (const auto& cell : dcells.cells) {
            Mask m(ctx.words, 0);
            for (uint32_t r : cell) mask_set(m, r);
            ctx.cells.push_back(std::move(m));
        }
    } else {
        ctx.cells.push_back(ctx.universe);
    }

    ctx.cosets.resize(static_cast<size_t>(n) * n, Mask(ctx.words, 0));
    ctx.pairs.resize(ctx.N, 0);
    for (uint64_t v = 0; v < ctx.N; ++v) {
        auto img = from_lex_rank(n, v).images();
        uint64_t bits = 0;
        for (int i = 0; i < n; ++i) {
            int j = img[static_cast<size_t>(i)];
            mask_set(ctx.cosets[static_cast<size_t>(i * n + j)], v);
            bits |= uint64_t{1} << (i * n + j);
        }
        ctx.pairs[v] = bits;
    }

    if (n == 1) {
        ctx.hoffman_cap = 1;
    } else {
        auto table = derangement_spectrum(n);
        auto s = summarize(table);
        Rat cap = hoffman_independent_bound(s.d, s.lambda_min, Int(static_cast<unsigned long>(ctx.N)));
        ctx.hoffman_cap = static_cast<uint32_t>(rat_floor(cap).get_ui());
    }

    // cap on |A_{i->j}| * |A_{i->k}| for any intersecting A: the reduced pair
    // is cross-intersecting in S_{n-1}, where the spectral cross bound gives
    // ((n-2)!)^2 for n-1 >= 4 and 9 for n-1 = 3
    if (n >= 4) ctx.pair_cap = n == 4 ? 9 : factorial_u64(n - 2) * factorial_u64(n - 2);

    return ctx;
}

// valid upper bound on the final family size through position i's slices:
// committed counts c give lower bounds, so any slice j is capped by
// pair_cap / max(committed of the others)
bool slice_prune(const Ctx& ctx, const std::array<int16_t, 64>& cslice, const Mask& P,
                 uint32_t required) {
    const int n = ctx.n;
    for (int i = 0; i < n; ++i) {
        int16_t max1 = 0, max2 = 0;
        for (int j = 0; j < n; ++j) {
            int16_t c = cslice[static_cast<size_t>(i * n + j)];
            if (c >= max1) {
                max2 = max1;
                max1 = c;
            } else if (c > max2) {
                max2 = c;
            }
        }
        if (max1 <= 1) continue;   // cap cannot bind
        uint64_t bound = 0;
        for (int j = 0; j < n; ++j) {
            int16_t c = cslice[static_cast<size_t>(i * n + j)];
            uint64_t u = static_cast<uint64_t>(c) +
                         mask_pop_and(P, ctx.cosets[static_cast<size_t>(i * n + j)]);
            int16_t other = (c == max1) ? max2 : max1;
            if (other > 0) u = std::min(u, ctx.pair_cap / static_cast<uint64_t>(other));
            bound += u;
        }
        if (bound < required) return true;
    }
    return false;
}

void dfs(const Ctx& ctx, Shared& sh, Mask& cmask, uint32_t csize, const Mask& P, uint64_t W,
         std::array<int16_t, 64>& cslice, int depth) {
    uint64_t n_seen = sh.nodes.fetch_add(1, std::memory_order_relaxed);
    if ((n_seen & 1023) == 0 && Clock::now() > sh.deadline) sh.stop.store(true);
    if (sh.stop.load(std::memory_order_relaxed)) return;

    const bool valid = !ctx.non_centred || W == 0;
    if (valid) {
        if (!sh.collecting) {
            if (csize > sh.best.load(std::memory_order_relaxed)) {
                atomic_max(sh.best, csize);
                note_example(sh, csize, cmask);
            }
        } else if (csize == sh.target) {
            collect(sh, cmask);
            return;
        }
    }
    if (sh.collecting && csize >= sh.target) return;

    const uint32_t required =
        sh.collecting ? sh.target : sh.best.load(std::memory_order_relaxed) + 1;
    if (required > ctx.hoffman_cap) {
        sh.p_hoffman.fetch_add(1, std::memory_order_relaxed);
        return;
    }

    uint32_t live_classes = 0;
    size_t branch_class = ctx.classes.size();
    for (size_t c = 0; c < ctx.classes.size(); ++c)
        if (masks_hit(P, ctx.classes[c])) {
            ++live_classes;
            if (branch_class == ctx.classes.size()) branch_class = c;
        }
    if (csize + live_classes < required) {
        sh.p_class.fetch_add(1, std::memory_order_relaxed);
        return;
    }

    uint32_t live_cells = 0;
    for (const auto& cell : ctx.cells)
        if (masks_hit(P, cell)) ++live_cells;
    if (csize + live_cells < required) {
        sh.p_cell.fetch_add(1, std::memory_order_relaxed);
        return;
    }

    if (ctx.pair_cap > 0 && csize >= 2 && slice_prune(ctx, cslice, P, required)) {
        sh.p_slice.fetch_add(1, std::memory_order_relaxed);
        return;
    }

    if (branch_class == ctx.classes.size()) return;   // P empty

    // Decide the branch vertex list. With surviving common pairs in
    // non-centred mode, some future member must break each of them: branch on
    // the scarcest pair, splitting by the first breaker taken (P shrinks as
    // earlier breakers are excluded). Otherwise branch over the first live
    // clique class, with a final branch that skips the class.
    std::vector<uint64_t> branch_vs;
    bool breaker_mode = ctx.non_centred && W != 0;
    if (breaker_mode) {
        const uint64_t Ppop = mask_pop(P);
        int best_bit = -1;
        uint64_t best_breakers = ~uint64_t{0};
        for (uint64_t bits = W; bits; bits &= bits - 1) {
            int pbit = std::countr_zero(bits);
            uint64_t breakers = Ppop - mask_pop_and(P, ctx.cosets[static_cast<size_t>(pbit)]);
            if (breakers < best_breakers) {
                best_breakers = breakers;
                best_bit = pbit;
            }
        }
        if (best_breakers == 0) {
            sh.p_forbidden.fetch_add(1, std::memory_order_relaxed);
            return;
        }
        const uint64_t pairbit = uint64_t{1} << best_bit;
        mask_for_each(P, [&](uint64_t v) {
            if (!(ctx.pairs[v] & pairbit)) branch_vs.push_back(v);
        });
    } else {
        mask_for_each(mask_and(P, ctx.classes[branch_class]),
                      [&](uint64_t v) { branch_vs.push_back(v); });
    }

    Mask P_work = P;   // only mutated in breaker mode
    for (uint64_t v : branch_vs) {
        if (sh.stop.load(std::memory_order_relaxed)) return;
        Mask newP = mask_and(P_work, ctx.compat[v]);
        uint64_t newW = W & ctx.pairs[v];
        auto img = from_lex_rank(ctx.n, v).images();
        if (depth == 0) {
            Mask cm = cmask;
            mask_set(cm, v);
            std::array<int16_t, 64> cs = cslice;
            for (int i = 0; i < ctx.n; ++i)
                ++cs[static_cast<size_t>(i * ctx.n + img[static_cast<size_t>(i)])];
#pragma omp task firstprivate(cm, cs, newP, newW, csize) shared(ctx, sh)
            dfs(ctx, sh, cm, csize + 1, newP, newW, cs, 1);
        } else {
            mask_set(cmask, v);
            for (int i = 0; i < ctx.n; ++i)
                ++cslice[static_cast<size_t>(i * ctx.n + img[static_cast<size_t>(i)])];
            dfs(ctx, sh, cmask, csize + 1, newP, newW, cslice, depth + 1);
            for (int i = 0; i < ctx.n; ++i)
                --cslice[static_cast<size_t>(i * ctx.n + img[static_cast<size_t>(i)])];
            mask_clear(cmask, v);
        }
        if (breaker_mode) mask_clear(P_work, v);
    }
    if (!breaker_mode) {
        // no member from this class
        dfs(ctx, sh, cmask, csize, mask_andnot(P, ctx.classes[branch_class]), W, cslice,
            depth == 0 ? 1 : depth + 1);
    }
}

void run_pass(const Ctx& ctx, Shared& sh) {
    Mask cmask(ctx.words, 0);
    std::array<int16_t, 64> cslice{};
    uint64_t W0 = 0;
    for (int i = 0; i < ctx.n; ++i)
        for (int j = 0; j < ctx.n; ++j) W0 |= uint64_t{1} << (i * ctx.n + j);
#pragma omp parallel
#pragma omp single
    dfs(ctx, sh, cmask, 0, ctx.universe, W0, cslice, 0);
}

} // namespace

SearchResult max_intersecting_search(int n, const SearchOptions& opt) {
    if (n < 1 || n > 7)
        throw std::invalid_argument("max_intersecting_search supports 1 <= n <= 7");

    Shared sh;
    sh.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(opt.budget_seconds));
    Ctx ctx = build_ctx(n, opt.non_centred);
    sh.cap = opt.all_optima ? opt.witness_cap : 1;
    sh.best_example.assign(ctx.words, 0);

    // constructive seeds: verified families, so pass one starts from a true
    // lower bound (the enumeration itself still proves optimality)
    std::vector<PermFamily> seeds;
    if (!opt.non_centred) {
        seeds.push_back(one_coset(n, 0, 0));
    } else if (n >= 4) {
        seeds.push_back(construct_B(n));
        seeds.push_back(construct_C(n));
    }
    for (const auto& s : seeds) {
        if (!is_intersecting(s)) throw std::logic_error("search seed is not intersecting");
        if (opt.non_centred && is_centred(s).centred)
            throw std::logic_error("search seed is centred");
        if (s.size() > sh.best.load()) {
            sh.best.store(static_cast<uint32_t>(s.size()));
            Mask m(ctx.words, 0);
            s.for_each([&](uint64_t r) { mask_set(m, r); });
            sh.best_example = m;
        }
    }

    run_pass(ctx, sh);
    const bool pass1_done = !sh.stop.load();
    const uint32_t optimum = sh.best.load();

    if (pass1_done && optimum > 0) {
        sh.collecting = true;
        sh.target = optimum;
        run_pass(ctx, sh);
    }

    SearchResult res;
    res.optimum = Int(optimum);
    res.nodes_explored = sh.nodes.load();
    res.prune_counts["hoffman"] = sh.p_hoffman.load();
    res.prune_counts["greedy-cover"] = sh.p_class.load();
    res.prune_counts["coset-cells"] = sh.p_cell.load();
    res.prune_counts["slice"] = sh.p_slice.load();
    res.prune_counts["forbidden-pair"] = sh.p_forbidden.load();
    res.optima_count = sh.optima_count;
    res.capped = sh.capped;
    res.status = sh.stop.load() ? SearchStatus::incomplete : SearchStatus::complete;

    if (res.status == SearchStatus::incomplete && sh.found.empty() && optimum > 0) {
        // report the best example found so far as the single (unverified-count) witness
        sh.found.insert(sh.best_example);
    }
    for (const auto& m : sh.found) res.witnesses.push_back(family_from_mask(n, m));
    std::sort(res.witnesses.begin(), res.witnesses.end(),
              [](const PermFamily& a, const PermFamily& b) { return a.lex_less(b); });

    for (const auto& w : res.witnesses) {
        if (!is_intersecting(w) || Int(static_cast<unsigned long>(w.size())) != res.optimum)
            throw std::logic_error("witness failed post-hoc verification");
        if (opt.non_centred && is_centred(w).centred)
            throw std::logic_error("witness failed the non-centred check");
    }
    return res;
}

// ---- maximum cross-intersecting product ------------------------------------------

namespace {

struct CrossCtx {
    int n = 0;
    uint32_t N = 0;
    std::vector<uint64_t> non_nbr;   // includes the vertex itself
};

struct CrossShared {
    std::atomic<uint64_t> best{0};
    std::atomic<uint64_t> nodes{0};
    std::atomic<uint64_t> pruned{0};
    std::atomic<bool> stop{false};
    Clock::time_point deadline;
    bool collecting = false;
    uint64_t target = 0;
    std::mutex mu;
    std::set<std::pair<uint64_t, uint64_t>> found;
    uint64_t optima_count = 0;
    bool capped = false;
    size_t cap = 0;
};

void cross_dfs(const CrossCtx& ctx, CrossShared& sh, uint32_t v, uint64_t A, uint32_t asize,
               uint64_t B) {
    uint64_t n_seen = sh.nodes.fetch_add(1, std::memory_order_relaxed);
    if ((n_seen & 8191) == 0 && Clock::now() > sh.deadline) sh.stop.store(true);
    if (sh.stop.load(std::memory_order_relaxed)) return;

    const uint64_t bsize = static_cast<uint64_t>(std::popcount(B));
    if (v == ctx.N) {
        const uint64_t product = asize * bsize;
        if (!sh.collecting) {
            atomic_max64(sh.best, product);
        } else if (asize >= 1 && product == sh.target) {
            auto key = std::minmax(A, B);
            std::lock_guard<std::mutex> lock(sh.mu);
            auto [it, fresh] = sh.found.insert({key.first, key.second});
            (void)it;
            if (fresh) {
                ++sh.optima_count;
                if (sh.found.size() > sh.cap) {
                    sh.found.erase(std::prev(sh.found.end()));
                    sh.capped = true;
                }
            }
        }
        return;
    }

    const uint64_t required =
        sh.collecting ? sh.target : sh.best.load(std::memory_order_relaxed) + 1;
    if ((asize + (ctx.N - v)) * bsize < required) {
        sh.pruned.fetch_add(1, std::memory_order_relaxed);
        return;
    }

    cross_dfs(ctx, sh, v + 1, A | (uint64_t{1} << v), asize + 1, B & ctx.non_nbr[v]);
    cross_dfs(ctx, sh, v + 1, A, asize, B);
}

} // namespace

SearchResult max_cross_product_search(int n, const SearchOptions& opt) {
    if (n < 1 || n > 4)
        throw std::invalid_argument("max_cross_product_search supports 1 <= n <= 4");

    CrossCtx ctx;
    ctx.n = n;
    ctx.N = static_cast<uint32_t>(factorial_u64(n));
    const uint64_t universe = ctx.N == 64 ? ~uint64_t{0} : (uint64_t{1} << ctx.N) - 1;
    auto graph = DerangementGraph::get(n);
    for (uint32_t v = 0; v < ctx.N; ++v)
        ctx.non_nbr.push_back(~graph->neighbors(v)[0] & universe);

    CrossShared sh;
    sh.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(opt.budget_seconds));
    sh.cap = opt.all_optima ? opt.witness_cap : 1;

    // seed with the diagonal 1-coset pair, a verified cross-intersecting pair
    {
        PermFamily c = one_coset(n, 0, 0);
        uint64_t b = universe;
        c.for_each([&](uint64_t r) { b &= ctx.non_nbr[r]; });
        if (!is_cross_intersecting(c, family_from_mask(n, Mask{b})))
            throw std::logic_error("cross seed failed verification");
        sh.best.store(static_cast<uint64_t>(c.size()) * static_cast<uint64_t>(std::popcount(b)));
    }

    cross_dfs(ctx, sh, 0, 0, 0, universe);
    const bool pass1_done = !sh.stop.load();
    const uint64_t optimum = sh.best.load();

    if (pass1_done && optimum > 0) {
        sh.collecting = true;
        sh.target = optimum;
        cross_dfs(ctx, sh, 0, 0, 0, universe);
    }

    SearchResult res;
    res.optimum = Int(static_cast<unsigned long>(optimum));
    res.nodes_explored = sh.nodes.load();
    res.prune_counts["product-bound"] = sh.pruned.load();
    res.optima_count = sh.optima_count;
    res.capped = sh.capped;
    res.status = sh.stop.load() ? SearchStatus::incomplete : SearchStatus::complete;

    for (const auto& [a, b] : sh.found)
        res.witness_pairs.emplace_back(family_from_mask(n, Mask{a}), family_from_mask(n, Mask{b}));

    for (const auto& [A, B] : res.witness_pairs) {
        if (!is_cross_intersecting(A, B))
            throw std::logic_error("cross witness failed post-hoc verification");
        if (Int(static_cast<unsigned long>(A.size())) * Int(static_cast<unsigned long>(B.size())) !=
            res.optimum)
            throw std::logic_error("cross witness product mismatch");
    }
    return res;
}

} // namespace spectra
