#include "spectra/repr.hpp"

#include "spectra/perm.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace spectra {

Partition transpose(const Partition& alpha) {
    if (alpha.empty()) return Partition();
    std::vector<int> t(static_cast<size_t>(alpha[0]), 0);
    for (int r = 0; r < alpha.rows(); ++r)
        for (int c = 0; c < alpha[r]; ++c) ++t[static_cast<size_t>(c)];
    return Partition(std::move(t));
}

std::vector<std::vector<int>> hook_lengths(const Partition& alpha) {
    Partition tr = transpose(alpha);
    std::vector<std::vector<int>> h(static_cast<size_t>(alpha.rows()));
    for (int r = 0; r < alpha.rows(); ++r) {
        h[static_cast<size_t>(r)].resize(static_cast<size_t>(alpha[r]));
        for (int c = 0; c < alpha[r]; ++c) {
            int arm = alpha[r] - c - 1;
            int leg = tr[c] - r - 1;
            h[static_cast<size_t>(r)][static_cast<size_t>(c)] = arm + leg + 1;
        }
    }
    return h;
}

Int dimension(const Partition& alpha) {
    Int denom = 1;
    for (const auto& row : hook_lengths(alpha))
        for (int v : row) denom *= v;
    return exact_div(factorial(alpha.n()), denom);
}

// ---- Murnaghan-Nakayama ---------------------------------------------------

namespace {

// first-column hook lengths ("beta set"), strictly decreasing
std::vector<int> beta_set(const Partition& p) {
    int r = p.rows();
    std::vector<int> b(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) b[static_cast<size_t>(i)] = p[i] + (r - 1 - i);
    return b;
}

Partition partition_from_beta_set(std::vector<int> b) {
    std::sort(b.begin(), b.end(), std::greater<int>());
    int r = static_cast<int>(b.size());
    std::vector<int> parts;
    for (int i = 0; i < r; ++i) {
        int part = b[static_cast<size_t>(i)] - (r - 1 - i);
        if (part > 0) parts.push_back(part);
    }
    return Partition(std::move(parts));
}

std::string memo_key(const Partition& alpha, const std::vector<int>& cycles, size_t from) {
    std::string key = alpha.to_string();
    key += '|';
    for (size_t i = from; i < cycles.size(); ++i) {
        key += std::to_string(cycles[i]);
        key += ',';
    }
    return key;
}

Int mn_recurse(const Partition& alpha, const std::vector<int>& cycles, size_t from,
               std::unordered_map<std::string, Int>& memo) {
    if (from == cycles.size()) {
        if (!alpha.empty()) throw std::logic_error("murnaghan-nakayama: size mismatch");
        return 1;
    }
    std::string key = memo_key(alpha, cycles, from);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    int k = cycles[from];
    std::vector<int> b = beta_set(alpha);
    Int total = 0;
    for (size_t i = 0; i < b.size(); ++i) {
        int target = b[i] - k;
        if (target < 0) continue;
        bool occupied = false;
        int height = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            if (j == i) continue;
            if (b[j] == target) { occupied = true; break; }
            if (b[j] > target && b[j] < b[i]) ++height;
        }
        if (occupied) continue;
        std::vector<int> nb = b;
        nb[i] = target;
        Int sub = mn_recurse(partition_from_beta_set(std::move(nb)), cycles, from + 1, memo);
        total += (height % 2 == 0) ? sub : -sub;
    }
    memo.emplace(std::move(key), total);
    return total;
}

} // namespace

// ---- CharacterTable -------------------------------------------------------

std::shared_ptr<CharacterTable> CharacterTable::build(int n) {
    auto t = std::shared_ptr<CharacterTable>(new CharacterTable());
    t->n_ = n;
    t->parts_ = partitions_of(n);
    for (size_t i = 0; i < t->parts_.size(); ++i)
        t->index_[t->parts_[i].to_string()] = static_cast<int>(i);
    size_t m = t->parts_.size();
    t->chi_.assign(m, std::vector<Int>(m));
    std::unordered_map<std::string, Int> memo;
    for (size_t b = 0; b < m; ++b) {
        const auto& cycles = t->parts_[b].parts();
        for (size_t a = 0; a < m; ++a)
            t->chi_[a][b] = mn_recurse(t->parts_[a], cycles, 0, memo);
    }
    return t;
}

namespace {
std::mutex table_mutex;
std::map<int, std::shared_ptr<const CharacterTable>> table_registry;
} // namespace

std::shared_ptr<const CharacterTable> CharacterTable::get(int n) {
    if (n < 0) throw std::invalid_argument("CharacterTable: n >= 0");
    std::lock_guard<std::mutex> lock(table_mutex);
    auto it = table_registry.find(n);
    if (it != table_registry.end()) return it->second;
    auto t = build(n);
    table_registry[n] = t;
    return t;
}

void CharacterTable::install(std::shared_ptr<const CharacterTable> table) {
    std::lock_guard<std::mutex> lock(table_mutex);
    table_registry[table->n()] = std::move(table);
}

int CharacterTable::index_of(const Partition& p) const {
    auto it = index_.find(p.to_string());
    if (it == index_.end()) throw std::invalid_argument("partition not of this n: " + p.to_string());
    return it->second;
}

const Int& CharacterTable::value(const Partition& alpha, const Partition& beta) const {
    return chi_[static_cast<size_t>(index_of(alpha))][static_cast<size_t>(index_of(beta))];
}

bool CharacterTable::column_orthogonality_ok() const {
    size_t m = parts_.size();
    for (size_t b = 0; b < m; ++b) {
        Int zb = exact_div(factorial(n_), conjugacy_class_size(parts_[b]));
        for (size_t c = b; c < m; ++c) {
            Int s = 0;
            for (size_t a = 0; a < m; ++a) s += chi_[a][b] * chi_[a][c];
            if (b == c ? (s != zb) : (s != 0)) return false;
        }
    }
    return true;
}

std::vector<CharacterTable::Row> CharacterTable::to_rows() const {
    std::vector<Row> rows;
    rows.reserve(parts_.size());
    for (size_t a = 0; a < parts_.size(); ++a) {
        Row row;
        row.alpha = parts_[a];
        for (size_t b = 0; b < parts_.size(); ++b)
            row.values[parts_[b].to_string()] = chi_[a][b].get_str();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::shared_ptr<const CharacterTable> CharacterTable::from_rows(int n, const std::vector<Row>& rows) {
    auto t = std::shared_ptr<CharacterTable>(new CharacterTable());
    t->n_ = n;
    t->parts_ = partitions_of(n);
    for (size_t i = 0; i < t->parts_.size(); ++i)
        t->index_[t->parts_[i].to_string()] = static_cast<int>(i);
    size_t m = t->parts_.size();
    if (rows.size() != m) throw std::invalid_argument("character cache: wrong row count");
    t->chi_.assign(m, std::vector<Int>(m));
    std::vector<char> seen(m, 0);
    for (const auto& row : rows) {
        auto it = t->index_.find(row.alpha.to_string());
        if (it == t->index_.end() || row.alpha.n() != n)
            throw std::invalid_argument("character cache: bad shape " + row.alpha.to_string());
        size_t a = static_cast<size_t>(it->second);
        if (seen[a]) throw std::invalid_argument("character cache: duplicate shape");
        seen[a] = 1;
        if (row.values.size() != m) throw std::invalid_argument("character cache: wrong column count");
        for (const auto& [beta_str, val_str] : row.values) {
            auto bit = t->index_.find(Partition::parse(beta_str).to_string());
            if (bit == t->index_.end())
                throw std::invalid_argument("character cache: bad class " + beta_str);
            Int v;
            if (mpz_set_str(v.get_mpz_t(), val_str.c_str(), 10) != 0)
                throw std::invalid_argument("character cache: bad value " + val_str);
            t->chi_[a][static_cast<size_t>(bit->second)] = v;
        }
    }
    return t;
}

Int character(const Partition& alpha, const Partition& beta) {
    if (alpha.n() != beta.n())
        throw std::invalid_argument("character: shape and class must partition the same n");
    return CharacterTable::get(alpha.n())->value(alpha, beta);
}

// ---- branching ------------------------------------------------------------

std::vector<Partition> branching_restriction(const Partition& alpha) {
    if (alpha.n() < 1) throw std::invalid_argument("branching needs n >= 1");
    std::vector<Partition> out;
    for (int i = 0; i < alpha.rows(); ++i) {
        bool removable = (i + 1 == alpha.rows()) || (alpha[i] > alpha[i + 1]);
        if (!removable) continue;
        std::vector<int> parts = alpha.parts();
        if (--parts[static_cast<size_t>(i)] == 0) parts.pop_back();
        out.emplace_back(std::move(parts));
    }
    std::sort(out.begin(), out.end(), std::greater<Partition>());
    return out;
}

// ---- Kostka ---------------------------------------------------------------

namespace {

// all gamma with alpha/gamma a horizontal strip of size `strip`
void horizontal_strip_predecessors(const Partition& alpha, int strip,
                                   std::vector<Partition>& out) {
    int r = alpha.rows();
    std::vector<int> gamma(static_cast<size_t>(r));
    std::function<void(int, int)> rec = [&](int row, int removed) {
        if (row == r) {
            if (removed != strip) return;
            std::vector<int> parts;
            for (int i = 0; i < r; ++i)
                if (gamma[static_cast<size_t>(i)] > 0) parts.push_back(gamma[static_cast<size_t>(i)]);
            out.emplace_back(std::move(parts));
            return;
        }
        int lo = alpha.part(row + 1);
        int hi = alpha[row];
        for (int g = hi; g >= lo; --g) {
            int rem = removed + (hi - g);
            if (rem > strip) break;
            gamma[static_cast<size_t>(row)] = g;
            rec(row + 1, rem);
        }
    };
    rec(0, 0);
}

Int kostka_memo(const Partition& alpha, const std::vector<int>& content, size_t upto,
                std::unordered_map<std::string, Int>& memo) {
    if (upto == 0) return alpha.empty() ? 1 : 0;
    std::string key = alpha.to_string() + '|' + std::to_string(upto);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Int total = 0;
    std::vector<Partition> preds;
    horizontal_strip_predecessors(alpha, content[upto - 1], preds);
    for (const auto& gamma : preds) total += kostka_memo(gamma, content, upto - 1, memo);
    memo.emplace(std::move(key), total);
    return total;
}

} // namespace

Int kostka(const Partition& alpha, const Partition& beta) {
    if (alpha.n() != beta.n()) return 0;
    std::unordered_map<std::string, Int> memo;
    return kostka_memo(alpha, beta.parts(), beta.parts().size(), memo);
}

std::vector<std::pair<Partition, Int>> youngs_rule(const Partition& beta) {
    std::vector<std::pair<Partition, Int>> out;
    for (const auto& alpha : partitions_of(beta.n())) {
        Int k = kostka(alpha, beta);
        if (k >= 1) out.emplace_back(alpha, k);
    }
    return out;
}

// ---- permutation characters ------------------------------------------------

namespace {

std::string caps_key(size_t idx, const std::vector<int>& caps) {
    std::string k = std::to_string(idx);
    for (int c : caps) {
        k += ',';
        k += std::to_string(c);
    }
    return k;
}

// assign the cycles of gamma one at a time to the (ordered) rows of beta;
// a tabloid is fixed exactly when each row is a union of cycles
Int assign_cycles(const std::vector<int>& cycles, size_t idx, std::vector<int>& caps,
                  std::unordered_map<std::string, Int>& memo) {
    if (idx == cycles.size()) return 1;
    std::string key = caps_key(idx, caps);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Int total = 0;
    int len = cycles[idx];
    for (size_t r = 0; r < caps.size(); ++r) {
        if (caps[r] < len) continue;
        caps[r] -= len;
        total += assign_cycles(cycles, idx + 1, caps, memo);
        caps[r] += len;
    }
    memo.emplace(std::move(key), total);
    return total;
}

} // namespace

Int permutation_character(const Partition& beta, const Partition& gamma) {
    if (beta.n() != gamma.n())
        throw std::invalid_argument("permutation_character: mismatched n");
    std::vector<int> caps = beta.parts();
    std::unordered_map<std::string, Int> memo;
    return assign_cycles(gamma.parts(), 0, caps, memo);
}

Int permutation_character_via_kostka(const Partition& beta, const Partition& gamma) {
    if (beta.n() != gamma.n())
        throw std::invalid_argument("permutation_character: mismatched n");
    auto table = CharacterTable::get(beta.n());
    Int total = 0;
    for (const auto& [alpha, k] : youngs_rule(beta))
        total += k * table->value(alpha, gamma);
    return total;
}

// ---- low-dimension scan -----------------------------------------------------

Int default_low_dim_threshold(int n) {
    return binomial(n - 1, 2) - 1;
}

std::vector<Partition> low_dim_classification(int n, const Int& threshold) {
    std::vector<Partition> out;
    for (const auto& alpha : partitions_of(n))
        if (dimension(alpha) < threshold) out.push_back(alpha);
    return out;
}

} // namespace spectra
