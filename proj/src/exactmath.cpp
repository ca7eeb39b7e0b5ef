#include "spectra/exactmath.hpp"

#include <stdexcept>

namespace spectra {

Int exact_div(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("exact_div: zero divisor");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("exact_div: division is not exact");
    return q;
}

namespace {

// optional sign followed by at least one digit; no whitespace, no dots
bool plain_decimal(const std::string& s) {
    size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') return false;
    return true;
}

}  // namespace

std::string int_to_string(const Int& v) { return v.get_str(); }

Int int_from_string(const std::string& s) {
    // mpz's own parser skips whitespace silently; reject such strings instead
    if (!plain_decimal(s)) throw std::invalid_argument("not an integer: '" + s + "'");
    return Int(s, 10);
}

std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    size_t slash = s.find('/');
    if (slash == std::string::npos) return make_rat(int_from_string(s), 1);
    Int num = int_from_string(s.substr(0, slash));
    Int den = int_from_string(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return make_rat(num, den);
}

Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Rat exp_lower_bound(const Rat& x, int terms) {
    if (x < 0) throw std::domain_error("exp bounds need x >= 0");
    Rat sum = 1, term = 1;
    for (int k = 1; k <= terms; ++k) {
        term *= x;
        term /= k;
        sum += term;
    }
    return sum;
}

Rat exp_upper_bound(const Rat& x, int terms) {
    if (x < 0) throw std::domain_error("exp bounds need x >= 0");
    if (Rat(terms + 2) <= x)
        throw std::domain_error("exp_upper_bound: too few terms for this x");
    Rat sum = 1, term = 1;
    for (int k = 1; k <= terms; ++k) {
        term *= x;
        term /= k;
        sum += term;
    }
    // tail: term_{K+1} * (1 + q + q^2 + ...) with q = x/(K+2) < 1
    Rat next = term * x / (terms + 1);
    Rat q = x / (terms + 2);
    sum += next / (1 - q);
    return sum;
}

bool le_two_h0_threshold(int m, int n, const Rat& a) {
    if (n < 2) throw std::domain_error("need n >= 2");
    if (a <= 0 || a >= 1) throw std::domain_error("need a in (0,1)");
    if (m <= 0) return true;
    Rat x = Rat(m) * m / (2 * (n - 1));
    Rat inv_a = 1 / a;
    int terms = 32;
    while (true) {
        if (Rat(terms + 2) > x) {
            if (exp_upper_bound(x, terms) <= inv_a) return true;
            if (exp_lower_bound(x, terms) > inv_a) return false;
        }
        terms *= 2;
        if (terms > 1 << 20)
            throw std::runtime_error("exp bounds failed to separate");
    }
}

int floor_two_h0(int n, const Rat& a) {
    int m = 0;
    while (le_two_h0_threshold(m + 1, n, a)) ++m;
    return m;
}

bool le_sqrt_combination(const Rat& L, const Rat& p, const Rat& u, const Rat& q, const Rat& w) {
    if (p < 0 || q < 0 || u < 0 || w < 0)
        throw std::domain_error("le_sqrt_combination needs nonnegative p, u, q, w");
    if (L <= 0) return true;
    // L > 0 from here; compare L - p*sqrt(u) against q*sqrt(w)
    Rat pu = p * p * u;
    if (pu >= L * L) return true;                 // p*sqrt(u) alone covers L
    // both sides of (L - p*sqrt(u))^2 <= q^2 w are nonnegative, expand:
    // L^2 + p^2 u - q^2 w <= 2 L p sqrt(u)
    Rat G = L * L + pu - q * q * w;
    if (G <= 0) return true;
    return G * G <= 4 * L * L * pu;
}

} // namespace spectra
