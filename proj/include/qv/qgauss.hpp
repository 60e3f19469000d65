#pragma once

#include "qv/qlaurent.hpp"
#include "qv/verify.hpp"

namespace qv {

// Gaussian binomial [n+m choose n]_q = (q)_{n+m} / ((q)_n (q)_m).
// Zero unless n >= 0 and m >= 0. Memoized; thread-safe.
QLaurent qbinom(long long n, long long m);

// Modified binomial [n+m choose n]' = (q^{n+1})_m / (q)_m for m >= 0 and any
// integer n; zero for m < 0. Computed from this defining ratio (the division
// is exact); the three-branch closed form is exercised by the test suite.
// Memoized; thread-safe.
QLaurent qbinom_modified(long long n, long long m);

// Trinomial coefficient T_n(L,A) = sum_{j} q^{j(j+A-n)} (q)_L /
// ((q)_j (q)_{j+A} (q)_{L-2j-A}), the sum over all j with nonnegative
// subscript arguments. Zero for |A| > L or L < 0. Laurent for general n.
// Every term is produced by an exact polynomial division. Memoized.
QLaurent qtrinom(long long L, long long A, long long n);

// T_n(L,A) mod the cutoff, computed with truncated series arithmetic so terms
// whose leading exponent exceeds the cutoff are skipped. Agrees with
// qtrinom(L,A,n) truncated; cheap for large L.
QSeries qtrinom_truncated(long long L, long long A, long long n, Exp cutoff);

// L -> infinity limit of T_n(L,A) as a truncated series:
// n = 0 gives 1/(q)_inf, n = 1 gives (1 + q^A)/(q)_inf. Other n rejected.
QSeries trinom_limit(long long A, int n, Exp cutoff);

// Property catalogue for the trinomials: symmetries, the Pascal-type
// recurrences, the mixed and tautological identities, depth-zero values,
// the q = 1 classical-coefficient oracle, and limit stabilization.
VerifyReport verify_trinomial_properties(long long L_max);

// Recurrences and closed forms for the standard and modified binomials.
VerifyReport verify_binomial_recurrences();

}  // namespace qv
