#include "spectra/spectral.hpp"

#include "spectra/exactmath.hpp"
#include "spectra/perm.hpp"
#include "spectra/repr.hpp"

#include <algorithm>
#include <stdexcept>

namespace spectra {

const SpectrumEntry& SpectrumTable::entry(const Partition& alpha) const {
    for (const auto& e : entries)
        if (e.alpha == alpha) return e;
    throw std::invalid_argument("no spectrum entry for shape " + alpha.to_string());
}

SpectrumTable normal_cayley_spectrum(int n, std::vector<Partition> classes) {
    if (n < 1) throw std::invalid_argument("spectrum needs n >= 1");
    std::sort(classes.begin(), classes.end());
    for (size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].n() != n) throw std::invalid_argument("class is not a partition of n");
        if (classes[i].rows() == n)
            throw std::invalid_argument("the identity class cannot be part of a connection set");
        if (i > 0 && classes[i] == classes[i - 1])
            throw std::invalid_argument("duplicate generating class");
    }

    auto ct = CharacterTable::get(n);
    SpectrumTable t;
    t.n = n;
    t.generating_classes = classes;
    std::vector<Int> sizes;
    sizes.reserve(classes.size());
    t.degree = 0;
    for (const auto& beta : classes) {
        sizes.push_back(conjugacy_class_size(beta));
        t.degree += sizes.back();
    }

    auto shapes = partitions_of(n);
    t.entries.resize(shapes.size());
    bool division_failed = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : division_failed)
    for (long a = 0; a < static_cast<long>(shapes.size()); ++a) {
        const Partition& alpha = shapes[static_cast<size_t>(a)];
        Int sum = 0;
        for (size_t b = 0; b < classes.size(); ++b)
            sum += sizes[b] * ct->value(alpha, classes[b]);
        Int f = dimension(alpha);
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sum.get_mpz_t(), f.get_mpz_t());
        if (r != 0) division_failed = true;
        t.entries[static_cast<size_t>(a)] = {alpha, q, f * f};
    }
    if (division_failed)
        throw std::logic_error("eigenvalue is not an integer: defective character table");
    return t;
}

SpectrumTable derangement_spectrum(int n) {
    if (n < 1) throw std::invalid_argument("derangement spectrum needs n >= 1");
    std::vector<Partition> classes;
    for (const auto& p : partitions_of(n))
        if (p[p.rows() - 1] >= 2) classes.push_back(p);
    return normal_cayley_spectrum(n, std::move(classes));
}

TraceCheck trace_identity_check(const SpectrumTable& t) {
    TraceCheck c;
    c.lhs = 0;
    for (const auto& e : t.entries) c.lhs += e.multiplicity * e.lambda * e.lambda;
    c.rhs = factorial(t.n) * t.degree;
    c.residual = c.lhs - c.rhs;
    c.ok = (c.residual == 0);
    return c;
}

SpectrumSummary summarize(const SpectrumTable& t) {
    if (t.entries.empty()) throw std::invalid_argument("empty spectrum table");
    std::vector<Int> values;
    values.reserve(t.entries.size());
    for (const auto& e : t.entries) values.push_back(e.lambda);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    SpectrumSummary s;
    s.d = t.degree;
    s.lambda_min = values.front();
    if (values.size() == 1) {
        s.degenerate = true;
        return s;
    }
    // the top value is always d (chi_(n) is trivial and |lambda| <= d)
    for (auto it = values.rbegin(); it != values.rend(); ++it)
        if (*it < s.d) { s.lambda2 = *it; break; }
    Int a2 = abs(*s.lambda2), am = abs(s.lambda_min);
    s.nu = std::max(a2, am);
    for (const Int& v : values) {
        if (v == s.d || v == s.lambda_min) continue;
        Int m = abs(v);
        if (!s.mu || m > *s.mu) s.mu = m;
        if (v < 0 && (!s.lambda_M || v < *s.lambda_M)) s.lambda_M = v;
    }
    s.tie_flag = (abs(*s.lambda2) == abs(s.lambda_min));
    return s;
}

Rat hoffman_independent_bound(const Int& d, const Int& lambda_min, const Int& N) {
    if (d <= 0) throw std::domain_error("degree must be positive");
    if (lambda_min >= 0) throw std::domain_error("least eigenvalue must be negative");
    Int a = -lambda_min;
    return make_rat(a * N, d + a);
}

Rat cross_bound(const Int& d, const Int& nu, const Int& N) {
    if (nu < 0) throw std::domain_error("nu must be nonnegative");
    if (d + nu <= 0) throw std::domain_error("d + nu must be positive");
    return make_rat(nu * N, d + nu);
}

NuCheck nu_formula_check(int n) {
    if (n < 4) throw std::invalid_argument("nu check needs n >= 4");
    SpectrumTable t = derangement_spectrum(n);
    SpectrumSummary s = summarize(t);
    const Int& d = t.degree;
    Partition hook({n - 1, 1});

    NuCheck out{};
    out.nu = make_rat(*s.nu, Int(1));
    out.tie = s.tie_flag;
    out.formula_ok = (*s.nu * (n - 1) == d) && (t.eigenvalue(hook) * (n - 1) == -d);
    out.dominance_ok = true;
    for (const auto& e : t.entries) {
        if (e.alpha == Partition({n}) || e.alpha == hook) continue;
        if (abs(e.lambda) * (n - 1) >= d) out.dominance_ok = false;
    }
    out.ok = out.formula_ok && (n >= 5 ? (out.dominance_ok && !out.tie) : out.tie);
    return out;
}

namespace {

bool in_classes(const std::vector<Partition>& classes, const Partition& p) {
    return std::binary_search(classes.begin(), classes.end(), p);
}

bool cayley_adjacent(const std::vector<Partition>& classes, const Permutation& a,
                     const Permutation& b) {
    return in_classes(classes, cycle_type(compose(a.inverse(), b)));
}

// v_X - (|X|/N) f is a lambda'-eigenvector of the adjacency operator iff for
// every sigma: N * #(X-neighbors of sigma) - d |X| == lambda' (N [sigma in X] - |X|)
bool shifted_eigenvector_ok(const PermFamily& X, const SpectrumTable& t, const Int& lp) {
    int n = t.n;
    auto xs = X.member_perms();
    Int N(static_cast<unsigned long>(X.universe()));
    Int sz(static_cast<unsigned long>(X.size()));
    uint64_t Nu = X.universe();
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (long r = 0; r < static_cast<long>(Nu); ++r) {
        Permutation sigma = from_lex_rank(n, static_cast<uint64_t>(r));
        long count = 0;
        for (const auto& x : xs)
            if (cayley_adjacent(t.generating_classes, sigma, x)) ++count;
        Int lhs = N * count - t.degree * sz;
        Int rhs = lp * (N * (X.contains(static_cast<uint64_t>(r)) ? 1 : 0) - sz);
        if (lhs != rhs) ok = false;
    }
    return ok;
}

} // namespace

EqualityCertificate equality_certificate(const PermFamily& X, const PermFamily& Y,
                                         const SpectrumTable& t) {
    if (X.n() != t.n || Y.n() != t.n) throw std::invalid_argument("size mismatch");
    auto xs = X.member_perms();
    auto ys = Y.member_perms();
    for (const auto& a : xs)
        for (const auto& b : ys)
            if (cayley_adjacent(t.generating_classes, a, b))
                throw std::invalid_argument("an edge joins the two families");

    EqualityCertificate cert{};
    SpectrumSummary s = summarize(t);
    if (s.degenerate) {
        cert.status = CertificateStatus::degenerate;
        return cert;
    }
    if (s.tie_flag) {
        cert.status = CertificateStatus::tie_not_applicable;
        return cert;
    }
    Int N(static_cast<unsigned long>(X.universe()));
    Rat bound = cross_bound(t.degree, *s.nu, N);
    Rat product(Int(static_cast<unsigned long>(X.size())) *
                Int(static_cast<unsigned long>(Y.size())));
    if (product != bound * bound) {
        cert.status = CertificateStatus::not_at_equality;
        return cert;
    }
    Int lp = (abs(*s.lambda2) > abs(s.lambda_min)) ? *s.lambda2 : s.lambda_min;
    cert.lambda_prime = lp;
    cert.sizes_equal = (X.size() == Y.size());
    cert.x_eigenvector_ok = shifted_eigenvector_ok(X, t, lp);
    cert.y_eigenvector_ok = shifted_eigenvector_ok(Y, t, lp);
    cert.status = (cert.sizes_equal && cert.x_eigenvector_ok && cert.y_eigenvector_ok)
                      ? CertificateStatus::certified
                      : CertificateStatus::failed;
    return cert;
}

Rat distance_bound_independent(const Rat& alpha_frac, const Int& d,
                               const Int& lambda_min, const Int& lambda_M) {
    if (lambda_min >= 0 || lambda_M >= 0)
        throw std::domain_error("both eigenvalues must be negative");
    Int aN = -lambda_min, aM = -lambda_M;
    if (aN <= aM) throw std::domain_error("requires |lambda_min| > |lambda_M|");
    if (d <= 0) throw std::domain_error("degree must be positive");
    if (alpha_frac < 0) throw std::domain_error("alpha must be nonnegative");
    if (alpha_frac > make_rat(aN, d + aN))
        throw std::domain_error("alpha exceeds the Hoffman bound");
    Rat num = (1 - alpha_frac) * Rat(aN) - Rat(d) * alpha_frac;
    return num * alpha_frac / Rat(aN - aM);
}

bool cross_distance_inequality_check(const PermFamily& X, const PermFamily& Y,
                                     const SpectrumSummary& s,
                                     const Rat& D_sq, const Rat& E_sq) {
    if (X.n() != Y.n()) throw std::invalid_argument("size mismatch");
    if (!is_cross_intersecting(X, Y))
        throw std::invalid_argument("pair is not cross-intersecting");
    if (s.degenerate || !s.mu) throw std::invalid_argument("summary does not determine mu");
    if (s.lambda_min >= 0) throw std::invalid_argument("least eigenvalue must be negative");
    if (D_sq < 0 || E_sq < 0) throw std::domain_error("squared distances must be nonnegative");

    Rat N(factorial(X.n()));
    Rat alpha = Rat(Int(static_cast<unsigned long>(X.size()))) / N;
    Rat beta = Rat(Int(static_cast<unsigned long>(Y.size()))) / N;
    Rat R = alpha - alpha * alpha - D_sq;
    Rat S = beta - beta * beta - E_sq;
    if (R < 0 || S < 0) throw std::domain_error("negative radicand: distances too large");

    Rat L = Rat(s.d) * alpha * beta;
    return le_sqrt_combination(L, Rat(*s.mu), D_sq * E_sq, Rat(-s.lambda_min), R * S);
}

} // namespace spectra
