#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace spectra {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(int n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

// Exact integer quotient; throws if the division leaves a remainder.
Int exact_div(const Int& num, const Int& den);

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Lossless text form for exact numbers: integers in plain decimal, rationals
// in canonical "p/q" with q >= 1, always slash-separated.  Parsers are strict
// (no whitespace, no dots) and throw std::invalid_argument.
std::string int_to_string(const Int& v);
Int int_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);   // accepts "p" as p/1

// Largest integer m with m <= r.
Int rat_floor(const Rat& r);

} // namespace spectra
