#include "spectra/perm.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace spectra {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    int n = static_cast<int>(img_.size());
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : img_) {
        if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("not a permutation");
        seen[static_cast<size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
    return Permutation(std::move(img));
}

Permutation Permutation::from_one_line(const std::vector<int>& images1) {
    std::vector<int> img(images1.size());
    for (size_t i = 0; i < images1.size(); ++i) img[i] = images1[i] - 1;
    return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int n, const std::string& cycles) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
    size_t pos = 0;
    while (pos < cycles.size()) {
        if (cycles[pos] != '(') { ++pos; continue; }
        size_t close = cycles.find(')', pos);
        if (close == std::string::npos) throw std::invalid_argument("unbalanced cycle string");
        std::string body = cycles.substr(pos + 1, close - pos - 1);
        for (char& c : body)
            if (c == ',') c = ' ';
        std::istringstream ss(body);
        std::vector<int> cyc;
        int v;
        while (ss >> v) {
            if (v < 1 || v > n) throw std::invalid_argument("cycle entry out of range");
            cyc.push_back(v - 1);
        }
        for (size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i];
            int to = cyc[(i + 1) % cyc.size()];
            img[static_cast<size_t>(from)] = to;
        }
        pos = close + 1;
    }
    return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int a, int b) {
    if (a == b) throw std::invalid_argument("transposition needs two distinct points");
    Permutation p = identity(n);
    std::swap(p.img_[static_cast<size_t>(a)], p.img_[static_cast<size_t>(b)]);
    return p;
}

std::vector<int> Permutation::one_line() const {
    std::vector<int> out(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) out[i] = img_[i] + 1;
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(img_.size());
    for (size_t i = 0; i < img_.size(); ++i)
        inv[static_cast<size_t>(img_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

int Permutation::fixed_points() const {
    int c = 0;
    for (size_t i = 0; i < img_.size(); ++i) c += (img_[i] == static_cast<int>(i));
    return c;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.n() != q.n()) throw std::invalid_argument("compose: size mismatch");
    std::vector<int> img(static_cast<size_t>(p.n()));
    for (int i = 0; i < p.n(); ++i) img[static_cast<size_t>(i)] = p(q(i));
    return Permutation(std::move(img));
}

Partition cycle_type(const Permutation& p) {
    int n = p.n();
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<int> lens;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        int len = 0, j = i;
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = 1;
            j = p(j);
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end(), std::greater<int>());
    return Partition(std::move(lens));
}

int cycle_count(const Permutation& p) {
    return cycle_type(p).rows();
}

int permutation_sign(const Permutation& p) {
    return ((p.n() - cycle_count(p)) % 2 == 0) ? 1 : -1;
}

uint64_t lex_rank(const Permutation& p) {
    int n = p.n();
    if (n > 20) throw std::invalid_argument("lex_rank supports n <= 20");
    static const auto fact = [] {
        std::array<uint64_t, 21> f{};
        f[0] = 1;
        for (int i = 1; i <= 20; ++i) f[static_cast<size_t>(i)] = f[static_cast<size_t>(i - 1)] * static_cast<uint64_t>(i);
        return f;
    }();
    uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j) smaller += (p(j) < p(i));
        rank += static_cast<uint64_t>(smaller) * fact[static_cast<size_t>(n - 1 - i)];
    }
    return rank;
}

Permutation from_lex_rank(int n, uint64_t rank) {
    if (n > 20) throw std::invalid_argument("from_lex_rank supports n <= 20");
    std::vector<uint64_t> fact(static_cast<size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i) fact[static_cast<size_t>(i)] = fact[static_cast<size_t>(i - 1)] * static_cast<uint64_t>(i);
    if (rank >= fact[static_cast<size_t>(n)]) throw std::invalid_argument("rank out of range");
    std::vector<int> avail(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) avail[static_cast<size_t>(i)] = i;
    std::vector<int> img;
    img.reserve(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        uint64_t f = fact[static_cast<size_t>(i)];
        size_t idx = static_cast<size_t>(rank / f);
        rank %= f;
        img.push_back(avail[idx]);
        avail.erase(avail.begin() + static_cast<long>(idx));
    }
    return Permutation(std::move(img));
}

Int derangement_count(int n) {
    if (n < 0) throw std::invalid_argument("derangement_count: n >= 0");
    Int d = 0;
    for (int i = 0; i <= n; ++i) {
        Int term = binomial(n, i) * factorial(n - i);
        d += (i % 2 == 0) ? term : -term;
    }
    return d;
}

Int conjugacy_class_size(const Partition& beta) {
    Int z = 1;
    int prev = -1, mult = 0;
    auto flush = [&](int v, int m) {
        for (int k = 0; k < m; ++k) z *= v;
        z *= factorial(m);
    };
    for (int p : beta.parts()) {
        if (p == prev) { ++mult; continue; }
        if (prev > 0) flush(prev, mult);
        prev = p;
        mult = 1;
    }
    if (prev > 0) flush(prev, mult);
    return exact_div(factorial(beta.n()), z);
}

Int signed_derangement_difference(int n) {
    if (n < 1) throw std::invalid_argument("signed_derangement_difference: n >= 1");
    // base cases by enumeration: S_1 has no derangements; S_2 has one, odd
    Int e_prev2 = 0, o_prev2 = 0;   // n = 1
    Int e_prev1 = 0, o_prev1 = 1;   // n = 2
    if (n == 1) return e_prev2 - o_prev2;
    if (n == 2) return e_prev1 - o_prev1;
    Int e, o;
    for (int k = 3; k <= n; ++k) {
        e = (k - 1) * (o_prev1 + o_prev2);
        o = (k - 1) * (e_prev1 + e_prev2);
        e_prev2 = e_prev1; o_prev2 = o_prev1;
        e_prev1 = e; o_prev1 = o;
    }
    return e - o;
}

DerangementStats derangement_stats(int n) {
    return DerangementStats{n, derangement_count(n), signed_derangement_difference(n)};
}

Permutation i_fix(const Permutation& p, int i) {
    if (i < 0 || i >= p.n()) throw std::invalid_argument("i_fix: point out of range");
    int j = p.inverse()(i);
    if (j == i) return p;
    return compose(p, Permutation::transposition(p.n(), i, j));
}

Permutation i_fix_sequence(const Permutation& p, std::span<const int> points) {
    Permutation cur = p;
    for (int i : points) cur = i_fix(cur, i);
    return cur;
}

} // namespace spectra
