#pragma once

#include "spectra/family.hpp"
#include "spectra/ints.hpp"
#include "spectra/partition.hpp"

#include <optional>
#include <vector>

namespace spectra {

struct SpectrumEntry {
    Partition alpha;
    Int lambda;
    Int multiplicity;   // squared dimension of the irreducible
};

// Eigenvalues of the normal Cayley graph on S_n whose connection set is a
// union of conjugacy classes, one entry per shape of n.
struct SpectrumTable {
    int n = 0;
    std::vector<Partition> generating_classes;   // sorted, duplicate free
    std::vector<SpectrumEntry> entries;          // in partitions_of(n) order
    Int degree;

    const SpectrumEntry& entry(const Partition& alpha) const;
    const Int& eigenvalue(const Partition& alpha) const { return entry(alpha).lambda; }
};

// lambda_alpha = (sum over classes of class_size * chi_alpha) / dim(alpha).
// The division is exact for every shape; a remainder aborts the computation,
// since it can only come from a defective character table.
SpectrumTable normal_cayley_spectrum(int n, std::vector<Partition> classes);

// connection set = all fixed-point-free classes; degree = number of derangements
SpectrumTable derangement_spectrum(int n);

struct TraceCheck {
    Int lhs;        // sum of multiplicity * lambda^2
    Int rhs;        // n! * degree
    Int residual;   // lhs - rhs, must be zero
    bool ok;
};
TraceCheck trace_identity_check(const SpectrumTable& t);

// Distinguished eigenvalue data. All comparisons happen at the level of
// eigenvalue values, not shapes, so a value reached from several shapes
// counts once.
struct SpectrumSummary {
    Int d;
    Int lambda_min;
    bool degenerate = false;       // single eigenvalue value; optionals below empty
    std::optional<Int> lambda2;    // largest value strictly below d
    std::optional<Int> nu;         // max(|lambda2|, |lambda_min|)
    std::optional<Int> mu;         // max modulus over values distinct from d and lambda_min
    std::optional<Int> lambda_M;   // most negative value distinct from lambda_min
    bool tie_flag = false;         // |lambda2| == |lambda_min|
};
SpectrumSummary summarize(const SpectrumTable& t);

// |lambda_min| * N / (d + |lambda_min|), the independence number bound;
// requires d > 0 > lambda_min
Rat hoffman_independent_bound(const Int& d, const Int& lambda_min, const Int& N);

// nu * N / (d + nu), bounding sqrt(|X||Y|) over pairs X, Y with no edges
// between them
Rat cross_bound(const Int& d, const Int& nu, const Int& N);

struct NuCheck {
    Rat nu;
    bool formula_ok;     // nu == d/(n-1) and the eigenvalue at (n-1,1) is -d/(n-1)
    bool dominance_ok;   // |lambda_alpha| < d/(n-1) for every other shape
    bool tie;            // |lambda2| == |lambda_min| (happens at n = 4)
    bool ok;             // formula plus strict dominance for n >= 5, the tie at n = 4
};
// derangement graph only
NuCheck nu_formula_check(int n);

enum class CertificateStatus {
    degenerate,          // empty connection set: nothing to certify
    tie_not_applicable,  // |lambda2| == |lambda_min|, the hypothesis fails
    not_at_equality,     // |X||Y| below the bound squared: nothing claimed
    certified,
    failed,              // at equality yet a conclusion check failed
};

struct EqualityCertificate {
    CertificateStatus status;
    std::optional<Int> lambda_prime;   // larger in modulus of lambda2, lambda_min
    bool sizes_equal = false;
    bool x_eigenvector_ok = false;     // v_X - (|X|/N) f is a lambda'-eigenvector
    bool y_eigenvector_ok = false;
};

// For X, Y with no edges between them (checked; throws otherwise): when
// |X||Y| meets the cross bound exactly, certify that |X| = |Y| and that both
// shifted characteristic vectors are lambda'-eigenvectors, by summing over
// the neighbors of every vertex.
EqualityCertificate equality_certificate(const PermFamily& X, const PermFamily& Y,
                                         const SpectrumTable& t);

// Exact upper bound on the squared distance from the characteristic vector of
// an independent set of density alpha to Span{f} + E(lambda_min):
//   ((1 - alpha)|lambda_min| - d*alpha) * alpha / (|lambda_min| - |lambda_M|).
// Requires lambda_M < 0, |lambda_min| > |lambda_M|, and alpha within the
// Hoffman range.
Rat distance_bound_independent(const Rat& alpha_frac, const Int& d,
                               const Int& lambda_min, const Int& lambda_M);

// For a cross-intersecting pair X, Y (checked; throws otherwise) with squared
// distances D_sq, E_sq to Span{f} + E(lambda_min), decides
//   d*alpha*beta <= mu*D*E + |lambda_min|*sqrt((alpha-alpha^2-D^2)(beta-beta^2-E^2))
// entirely in rational arithmetic. Negative radicands throw.
bool cross_distance_inequality_check(const PermFamily& X, const PermFamily& Y,
                                     const SpectrumSummary& s,
                                     const Rat& D_sq, const Rat& E_sq);

} // namespace spectra
