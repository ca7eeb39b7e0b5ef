#include "spectra/family.hpp"

#include "spectra/exactmath.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spectra {

namespace {

uint64_t factorial_u64(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
    return f;
}

int common_agreement(const std::vector<int>& a, const std::vector<int>& b) {
    int c = 0;
    for (size_t i = 0; i < a.size(); ++i) c += (a[i] == b[i]);
    return c;
}

std::vector<std::vector<int>> rank_images(int n) {
    uint64_t N = factorial_u64(n);
    std::vector<std::vector<int>> imgs;
    imgs.reserve(N);
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
    do {
        imgs.push_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return imgs;
}

} // namespace

// ---- PermFamily -------------------------------------------------------------

PermFamily::PermFamily(int n) : n_(n) {
    if (n < 1 || n > 12) throw std::invalid_argument("PermFamily supports 1 <= n <= 12");
    N_ = factorial_u64(n);
    bits_.assign(static_cast<size_t>((N_ + 63) / 64), 0);
}

PermFamily PermFamily::full(int n) {
    PermFamily f(n);
    for (size_t w = 0; w < f.bits_.size(); ++w) f.bits_[w] = ~uint64_t{0};
    uint64_t extra = f.bits_.size() * 64 - f.N_;
    if (extra) f.bits_.back() >>= extra;
    return f;
}

uint64_t PermFamily::size() const {
    uint64_t c = 0;
    for (uint64_t w : bits_) c += static_cast<uint64_t>(__builtin_popcountll(w));
    return c;
}

bool PermFamily::contains(uint64_t rank) const {
    return (bits_[rank / 64] >> (rank % 64)) & 1;
}

void PermFamily::insert(uint64_t rank) {
    if (rank >= N_) throw std::out_of_range("rank out of range");
    bits_[rank / 64] |= uint64_t{1} << (rank % 64);
}

void PermFamily::erase(uint64_t rank) {
    if (rank >= N_) throw std::out_of_range("rank out of range");
    bits_[rank / 64] &= ~(uint64_t{1} << (rank % 64));
}

std::vector<uint64_t> PermFamily::members() const {
    std::vector<uint64_t> out;
    out.reserve(size());
    for_each([&](uint64_t r) { out.push_back(r); });
    return out;
}

std::vector<Permutation> PermFamily::member_perms() const {
    std::vector<Permutation> out;
    out.reserve(size());
    for_each([&](uint64_t r) { out.push_back(from_lex_rank(n_, r)); });
    return out;
}

PermFamily& PermFamily::operator&=(const PermFamily& o) {
    if (o.n_ != n_) throw std::invalid_argument("family size mismatch");
    for (size_t w = 0; w < bits_.size(); ++w) bits_[w] &= o.bits_[w];
    return *this;
}

PermFamily& PermFamily::operator|=(const PermFamily& o) {
    if (o.n_ != n_) throw std::invalid_argument("family size mismatch");
    for (size_t w = 0; w < bits_.size(); ++w) bits_[w] |= o.bits_[w];
    return *this;
}

PermFamily& PermFamily::subtract(const PermFamily& o) {
    if (o.n_ != n_) throw std::invalid_argument("family size mismatch");
    for (size_t w = 0; w < bits_.size(); ++w) bits_[w] &= ~o.bits_[w];
    return *this;
}

PermFamily PermFamily::complement() const {
    PermFamily out = full(n_);
    out.subtract(*this);
    return out;
}

bool PermFamily::is_subset_of(const PermFamily& o) const {
    if (o.n_ != n_) throw std::invalid_argument("family size mismatch");
    for (size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~o.bits_[w]) return false;
    return true;
}

bool PermFamily::intersects(const PermFamily& o) const {
    if (o.n_ != n_) throw std::invalid_argument("family size mismatch");
    for (size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & o.bits_[w]) return true;
    return false;
}

bool PermFamily::lex_less(const PermFamily& o) const {
    auto a = members(), b = o.members();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---- DerangementGraph ---------------------------------------------------------

DerangementGraph::DerangementGraph(int n)
    : n_(n), N_(factorial_u64(n)), words_((N_ + 63) / 64),
      row_mutex_(std::make_unique<std::mutex>()) {
    rows_.resize(N_);
    built_.assign(N_, 0);
    if (n_ <= 6) {
        auto imgs = rank_images(n_);
        for (uint64_t a = 0; a < N_; ++a) rows_[a].assign(words_, 0);
        for (uint64_t a = 0; a < N_; ++a) {
            for (uint64_t b = a + 1; b < N_; ++b) {
                if (common_agreement(imgs[a], imgs[b]) == 0) {
                    rows_[a][b / 64] |= uint64_t{1} << (b % 64);
                    rows_[b][a / 64] |= uint64_t{1} << (a % 64);
                }
            }
            built_[a] = 1;
        }
    }
}

std::shared_ptr<DerangementGraph> DerangementGraph::get(int n) {
    static std::mutex m;
    static std::map<int, std::shared_ptr<DerangementGraph>> registry;
    std::lock_guard<std::mutex> lock(m);
    auto it = registry.find(n);
    if (it != registry.end()) return it->second;
    auto g = std::shared_ptr<DerangementGraph>(new DerangementGraph(n));
    registry[n] = g;
    return g;
}

void DerangementGraph::build_row(uint64_t rank) {
    std::vector<uint64_t> row(words_, 0);
    auto base = from_lex_rank(n_, rank).images();
    std::vector<int> img(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) img[static_cast<size_t>(i)] = i;
    uint64_t b = 0;
    do {
        if (b != rank && common_agreement(base, img) == 0)
            row[b / 64] |= uint64_t{1} << (b % 64);
        ++b;
    } while (std::next_permutation(img.begin(), img.end()));
    rows_[rank] = std::move(row);
    built_[rank] = 1;
}

const std::vector<uint64_t>& DerangementGraph::neighbors(uint64_t rank) {
    if (rank >= N_) throw std::out_of_range("rank out of range");
    if (!built_[rank]) {
        std::lock_guard<std::mutex> lock(*row_mutex_);
        if (!built_[rank]) build_row(rank);
    }
    return rows_[rank];
}

bool DerangementGraph::adjacent(const Permutation& a, const Permutation& b) const {
    return common_agreement(a.images(), b.images()) == 0;
}

// ---- predicates ---------------------------------------------------------------

bool is_intersecting(const PermFamily& A) {
    auto perms = A.member_perms();
    for (size_t i = 0; i < perms.size(); ++i)
        for (size_t j = i + 1; j < perms.size(); ++j)
            if (common_agreement(perms[i].images(), perms[j].images()) == 0) return false;
    return true;
}

bool is_cross_intersecting(const PermFamily& A, const PermFamily& B) {
    if (A.n() != B.n()) throw std::invalid_argument("family size mismatch");
    auto pa = A.member_perms(), pb = B.member_perms();
    for (const auto& a : pa)
        for (const auto& b : pb)
            if (common_agreement(a.images(), b.images()) == 0) return false;
    return true;
}

bool is_t_intersecting(const PermFamily& A, int t) {
    if (t < 1) throw std::invalid_argument("t >= 1");
    auto perms = A.member_perms();
    for (size_t i = 0; i < perms.size(); ++i)
        for (size_t j = i + 1; j < perms.size(); ++j)
            if (common_agreement(perms[i].images(), perms[j].images()) < t) return false;
    return true;
}

bool t_intersecting_bound_check(const PermFamily& A, int t) {
    if (!is_t_intersecting(A, t)) return true;
    return Int(static_cast<unsigned long>(A.size())) <= exact_div(factorial(A.n()), factorial(t));
}

CentredCheck is_centred(const PermFamily& A) {
    int n = A.n();
    std::vector<std::vector<uint64_t>> count(static_cast<size_t>(n),
                                             std::vector<uint64_t>(static_cast<size_t>(n), 0));
    uint64_t sz = 0;
    A.for_each([&](uint64_t r) {
        auto img = from_lex_rank(n, r).images();
        for (int i = 0; i < n; ++i) ++count[static_cast<size_t>(i)][static_cast<size_t>(img[static_cast<size_t>(i)])];
        ++sz;
    });
    if (sz == 0) return CentredCheck{true, -1, -1};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (count[static_cast<size_t>(i)][static_cast<size_t>(j)] == sz)
                return CentredCheck{true, i, j};
    return CentredCheck{false, -1, -1};
}

PermFamily slice(const PermFamily& A, int i, int j) {
    int n = A.n();
    if (i < 0 || i >= n || j < 0 || j >= n) throw std::invalid_argument("slice: point out of range");
    PermFamily out(n);
    A.for_each([&](uint64_t r) {
        if (from_lex_rank(n, r)(i) == j) out.insert(r);
    });
    return out;
}

PermFamily one_coset(int n, int i, int j) {
    return slice(PermFamily::full(n), i, j);
}

Int min_removals_to_centred(const PermFamily& A) {
    int n = A.n();
    std::vector<std::vector<uint64_t>> count(static_cast<size_t>(n),
                                             std::vector<uint64_t>(static_cast<size_t>(n), 0));
    A.for_each([&](uint64_t r) {
        auto img = from_lex_rank(n, r).images();
        for (int i = 0; i < n; ++i) ++count[static_cast<size_t>(i)][static_cast<size_t>(img[static_cast<size_t>(i)])];
    });
    uint64_t best = 0;
    for (const auto& row : count)
        for (uint64_t c : row) best = std::max(best, c);
    return Int(static_cast<unsigned long>(A.size() - best));
}

PermFamily double_translate(const PermFamily& A, const Permutation& pi, const Permutation& tau) {
    if (pi.n() != A.n() || tau.n() != A.n()) throw std::invalid_argument("translate: size mismatch");
    PermFamily out(A.n());
    A.for_each([&](uint64_t r) {
        out.insert(compose(compose(pi, from_lex_rank(A.n(), r)), tau));
    });
    return out;
}

TranslateWitness is_double_translate_of(const PermFamily& A, const PermFamily& F) {
    if (A.n() != F.n()) throw std::invalid_argument("translate: size mismatch");
    TranslateWitness w;
    if (A.size() != F.size()) return w;
    int n = A.n();
    if (A.empty()) {
        w.found = true;
        w.pi = w.tau = Permutation::identity(n);
        return w;
    }
    auto a0 = from_lex_rank(n, A.members().front());
    auto fs = F.member_perms();
    uint64_t N = factorial_u64(n);
    for (uint64_t pr = 0; pr < N; ++pr) {
        auto pi = from_lex_rank(n, pr);
        auto pi_inv_a0 = compose(pi.inverse(), a0);
        for (const auto& f : fs) {
            auto tau = compose(f.inverse(), pi_inv_a0);
            if (double_translate(F, pi, tau) == A) {
                w.found = true;
                w.pi = pi;
                w.tau = tau;
                return w;
            }
        }
    }
    return w;
}

PermFamily construct_B(int n) {
    if (n < 3) throw std::invalid_argument("construct_B needs n >= 3");
    PermFamily out(n);
    PermFamily full = PermFamily::full(n);
    full.for_each([&](uint64_t r) {
        auto img = from_lex_rank(n, r).images();
        int fixed = (img[0] == 0) + (img[1] == 1) + (img[2] == 2);
        if (fixed >= 2) out.insert(r);
    });
    return out;
}

PermFamily construct_C(int n) {
    if (n < 2) throw std::invalid_argument("construct_C needs n >= 2");
    auto t01 = Permutation::transposition(n, 0, 1);
    PermFamily out(n);
    PermFamily full = PermFamily::full(n);
    full.for_each([&](uint64_t r) {
        auto p = from_lex_rank(n, r);
        if (p(0) == 0 && common_agreement(p.images(), t01.images()) > 0) out.insert(r);
    });
    out.insert(t01);
    return out;
}

Int count_agreeing_at_two_separate_points(const Permutation& rho, const Permutation& tau) {
    if (rho.n() != tau.n()) throw std::invalid_argument("size mismatch");
    int n = rho.n();
    Int count = 0;
    PermFamily::full(n).for_each([&](uint64_t r) {
        auto img = from_lex_rank(n, r).images();
        int rho_only = -1, tau_only = -1;
        int rho_hits = 0, tau_hits = 0;
        for (int i = 0; i < n; ++i) {
            if (img[static_cast<size_t>(i)] == rho(i)) { ++rho_hits; rho_only = i; }
            if (img[static_cast<size_t>(i)] == tau(i)) { ++tau_hits; tau_only = i; }
        }
        if (rho_hits == 0 || tau_hits == 0) return;
        if (rho_hits == 1 && tau_hits == 1 && rho_only == tau_only) return;
        count += 1;
    });
    return count;
}

Int intersecting_with_fixed_tau_count(int i, int j, const Permutation& tau) {
    int n = tau.n();
    if (i < 0 || i >= n || j < 0 || j >= n) throw std::invalid_argument("point out of range");
    if (tau(i) == j) throw std::invalid_argument("requires tau(i) != j");
    Int count = 0;
    PermFamily::full(n).for_each([&](uint64_t r) {
        auto img = from_lex_rank(n, r).images();
        if (img[static_cast<size_t>(i)] != j) return;
        if (common_agreement(img, tau.images()) > 0) count += 1;
    });
    return count;
}

PermFamily restrict_fixing_zero(const PermFamily& A) {
    int n = A.n();
    if (n < 2) throw std::invalid_argument("restriction needs n >= 2");
    PermFamily out(n - 1);
    A.for_each([&](uint64_t r) {
        auto img = from_lex_rank(n, r).images();
        if (img[0] != 0) throw std::invalid_argument("restriction: member does not fix 0");
        std::vector<int> sub(static_cast<size_t>(n - 1));
        for (int m = 1; m < n; ++m) sub[static_cast<size_t>(m - 1)] = img[static_cast<size_t>(m)] - 1;
        out.insert(Permutation(std::move(sub)));
    });
    return out;
}

SliceCheckDetail slice_product_check_detail(const PermFamily& A, int i, int j, int k) {
    int n = A.n();
    if (j == k) throw std::invalid_argument("slice positions must use distinct values");
    if (n < 3) throw std::invalid_argument("needs n >= 3");
    if (!is_intersecting(A)) throw std::invalid_argument("slice product check requires an intersecting family");

    Int bound = factorial(n - 2) * factorial(n - 2);

    PermFamily Aj = slice(A, i, j), Ak = slice(A, i, k);
    Int product = Int(static_cast<unsigned long>(Aj.size())) * Int(static_cast<unsigned long>(Ak.size()));
    bool direct_ok = product <= bound;

    // translate so that the two slices become the 0->0 and 0->1 slices
    std::vector<int> u_img(static_cast<size_t>(n), -1);
    u_img[static_cast<size_t>(j)] = 0;
    u_img[static_cast<size_t>(k)] = 1;
    int next = 2;
    for (int v = 0; v < n; ++v)
        if (v != j && v != k) u_img[static_cast<size_t>(v)] = next++;
    Permutation u(std::move(u_img));
    Permutation w = (i == 0) ? Permutation::identity(n) : Permutation::transposition(n, 0, i);
    PermFamily T = double_translate(A, u, w);

    auto t01 = Permutation::transposition(n, 0, 1);
    PermFamily E = slice(T, 0, 0);
    PermFamily F = double_translate(slice(T, 0, 1), t01, Permutation::identity(n));
    PermFamily Er = restrict_fixing_zero(E);
    PermFamily Fr = restrict_fixing_zero(F);
    bool cross = is_cross_intersecting(Er, Fr);
    Int product2 = Int(static_cast<unsigned long>(Er.size())) * Int(static_cast<unsigned long>(Fr.size()));
    bool reduction_ok = cross && product2 <= bound;

    if (product != product2)
        throw std::logic_error("slice product mismatch between routes");
    return SliceCheckDetail{direct_ok, reduction_ok, cross, product};
}

bool slice_product_check(const PermFamily& A, int i, int j, int k) {
    auto d = slice_product_check_detail(A, i, j, k);
    if (d.direct_ok != d.reduction_ok)
        throw std::logic_error("slice product routes disagree");
    return d.direct_ok;
}

// ---- transposition neighborhoods ---------------------------------------------

PermFamily random_maximal_intersecting(int n, Rng& rng) {
    if (n < 1 || n > 7) throw std::invalid_argument("random_maximal_intersecting supports 1 <= n <= 7");
    uint64_t N = factorial_u64(n);
    std::vector<uint64_t> order(N);
    for (uint64_t r = 0; r < N; ++r) order[r] = r;
    rng.shuffle(order);
    auto g = DerangementGraph::get(n);
    std::vector<uint64_t> blocked((N + 63) / 64, 0);
    PermFamily A(n);
    for (uint64_t r : order) {
        if ((blocked[r / 64] >> (r % 64)) & 1) continue;
        A.insert(r);
        const auto& row = g->neighbors(r);
        for (size_t w = 0; w < row.size(); ++w) blocked[w] |= row[w];
    }
    // every skipped vertex conflicts with a member chosen no later than it,
    // and members only accumulate, so the result is maximal
    return A;
}

int transposition_distance(const Permutation& a, const Permutation& b) {
    if (a.n() != b.n()) throw std::invalid_argument("size mismatch");
    return a.n() - cycle_count(compose(a.inverse(), b));
}

PermFamily transposition_neighborhood(const PermFamily& X, int h) {
    if (h < 0) throw std::invalid_argument("radius must be >= 0");
    int n = X.n();
    PermFamily visited = X;
    std::vector<uint64_t> frontier = X.members();
    for (int level = 0; level < h && !frontier.empty(); ++level) {
        std::vector<uint64_t> next;
        for (uint64_t r : frontier) {
            auto img = from_lex_rank(n, r).images();
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    std::swap(img[static_cast<size_t>(a)], img[static_cast<size_t>(b)]);
                    uint64_t nr = lex_rank(Permutation(img));
                    if (!visited.contains(nr)) {
                        visited.insert(nr);
                        next.push_back(nr);
                    }
                    std::swap(img[static_cast<size_t>(a)], img[static_cast<size_t>(b)]);
                }
        }
        frontier = std::move(next);
    }
    return visited;
}

MaureyCheck maurey_neighborhood_check(const PermFamily& X, const Rat& a) {
    int n = X.n();
    if (a <= 0 || a >= 1) throw std::invalid_argument("density must be in (0,1)");
    MaureyCheck out{};
    Rat nf(factorial(n));
    out.hypothesis_ok = Rat(static_cast<unsigned long>(X.size())) >= a * nf;
    out.h = floor_two_h0(n, a);
    PermFamily nb = transposition_neighborhood(X, out.h);
    out.neighborhood_size = nb.size();
    out.rhs = (1 - a) * nf;
    out.ok = Rat(static_cast<unsigned long>(out.neighborhood_size)) >= out.rhs;
    return out;
}

// ---- Deza-Frankl clique partition ----------------------------------------------

CosetCells coset_cells(int n, const Permutation& rho) {
    if (rho.n() != n) throw std::invalid_argument("size mismatch");
    if (cycle_type(rho) != Partition({n})) throw std::invalid_argument("rho must be an n-cycle");
    uint64_t N = factorial_u64(n);
    CosetCells out;
    out.cell_of.assign(N, UINT32_MAX);
    for (uint64_t r = 0; r < N; ++r) {
        if (out.cell_of[r] != UINT32_MAX) continue;
        uint32_t id = static_cast<uint32_t>(out.cells.size());
        std::vector<uint32_t> cell;
        Permutation cur = from_lex_rank(n, r);
        for (int m = 0; m < n; ++m) {
            uint64_t cr = lex_rank(cur);
            if (out.cell_of[cr] != UINT32_MAX) throw std::logic_error("coset cells overlap");
            out.cell_of[cr] = id;
            cell.push_back(static_cast<uint32_t>(cr));
            cur = compose(cur, rho);
        }
        std::sort(cell.begin(), cell.end());
        out.cells.push_back(std::move(cell));
    }
    return out;
}

bool deza_frankl_partition_check(int n, const Permutation& rho) {
    CosetCells cells = coset_cells(n, rho);
    uint64_t N = factorial_u64(n);
    if (cells.cells.size() * static_cast<uint64_t>(n) != N) return false;
    for (uint32_t c : cells.cell_of)
        if (c == UINT32_MAX) return false;
    // each cell must be a clique of the derangement graph
    for (const auto& cell : cells.cells) {
        for (size_t x = 0; x < cell.size(); ++x)
            for (size_t y = x + 1; y < cell.size(); ++y) {
                auto a = from_lex_rank(n, cell[x]).images();
                auto b = from_lex_rank(n, cell[y]).images();
                if (common_agreement(a, b) != 0) return false;
            }
    }
    return true;
}

} // namespace spectra
