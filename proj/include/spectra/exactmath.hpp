#pragma once

#include "spectra/ints.hpp"

namespace spectra {

// Certified rational bounds on exp(x) for rational x >= 0, via the truncated
// Taylor series. The lower bound is the partial sum (all terms positive); the
// upper bound adds a geometric-tail remainder, valid once x < terms + 2.
// Both tighten as `terms` grows.
Rat exp_lower_bound(const Rat& x, int terms);
Rat exp_upper_bound(const Rat& x, int terms);

// Decides m <= sqrt(2*(n-1)*ln(1/a)) for integers m >= 0 and rational a in (0,1),
// i.e. exp(m^2 / (2(n-1))) <= 1/a, using the certified bounds above (the bounds
// are widened until they separate; equality of the two sides cannot occur since
// exp of a positive rational is irrational).
bool le_two_h0_threshold(int m, int n, const Rat& a);

// floor(2*h0) with h0 = sqrt((n-1)/2 * ln(1/a)); fully certified.
int floor_two_h0(int n, const Rat& a);

// Decides L <= p*sqrt(u) + q*sqrt(w) in exact rational arithmetic by sign
// analysis and repeated squaring. Requires p, q, u, w >= 0.
bool le_sqrt_combination(const Rat& L, const Rat& p, const Rat& u, const Rat& q, const Rat& w);

} // namespace spectra
