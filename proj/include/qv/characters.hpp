#pragma once

#include <qv/qlaurent.hpp>
#include <qv/verify.hpp>

namespace qv {

// Truncated character series: the alternating theta-like sum
//   sum_j { q^{p(p+1)j^2 + j((p+1)r - ps)} - q^{(pj+r)((p+1)j+s)} }
// divided by (q)_infinity, kept up to `cutoff` (quarter units; every
// exponent is a nonnegative integer, only the j = 0 term reaches q^0).
// Requires p >= 4, 1 <= r <= p-1, 1 <= s <= p. The constant term is 1 and
// all coefficients are nonnegative; both facts are checked by the suite,
// not assumed.
QSeries chi(int p, int r, int s, Exp cutoff);

// L -> infinity limit of the flavored lattice sum, by L-stabilization:
// fermi_truncated is evaluated at successive L until two consecutive
// values agree on every kept coefficient. Coefficients up to q^N freeze
// once L exceeds N plus the largest contributing binomial depth, so the
// scan starts near cutoff/4 and throws std::runtime_error if the series
// has not stabilized by an internal L cap.
QSeries fermi_limit(int p, int i, int a, int b, Exp cutoff);

// The same limit summed directly over the lattice: for m >= 0 with the
// required m_{p-2} parity,
//   q^{(m.C~.m - 2 A.m)/4} / (q)_{m_0} * prod_{j=1}^{p-2} binom of
//   top (I~.m + u)_j / 2 over m_j,
// the index-0 binomial having become 1/(q)_{m_0} in the limit (its
// integrality constraint is subsumed by the index-1 top since u_0 + u_1
// = 0). Terms with half-integer tops vanish. Enumeration is pruned by
// the positive quadratic form; an enlarged working cutoff absorbs the
// (bounded) negative linear part of the weight. Cross-validates
// fermi_limit through an independent truncation argument.
QSeries fermi_limit_direct(int p, int i, int a, int b, Exp cutoff);

// Chain-form series over m = (m_1, ..., m_{p-2}) with m_{p-2} even, C and
// I the Cartan/incidence pair of the (p-2)-site chain:
//   chain_sum:  sum q^{m.C.m/4} / (q)_{m_1}
//               * prod_{j=2}^{p-2} binom of top (I.m)_j / 2 over m_j,
// which equals chi(p, 1, 1). chain_sum_shifted additionally subtracts
// (m_1 + m_b)/2 from the weight exponent and adds (delta_{a,j} +
// delta_{b,j})/2 to the tops (2 <= a, b <= p-2); for a + b odd it equals
// q^{phit(a,b)} { chi(a, b+2) + q^{a-b} chi(a, b) }.
QSeries chain_sum(int p, Exp cutoff);
QSeries chain_sum_shifted(int p, int a, int b, Exp cutoff);

// Character identity suite at fixed p, all comparisons as truncated series
// with the character side shifted onto the quarter lattice:
//   chi-positive        constant term 1, nonnegative coefficients, all (r,s)
//   char-unit           flavor-0 (1,1) limit equals chi(1,1)
//   char-vacuum         chain_sum equals chi(1,1)
//   char-fer-b1-even    flavor 0, b = 1: q^{a(a-1)/4} chi(a,1) or
//                       q^{(a-1)(a-2)/4} chi(a,2) by parity of a + [a=1]
//   char-fer-b1-odd     flavor 1, b = 1, first index p-a: same prefactors
//                       with the branch chosen by the parity of a
//   char-fer-even       flavor 0, b >= 2, even branch: q^{phi(a,b)} chi(a,b+1)
//   char-fer-odd        flavor 1 analogue (the reflection prefactor cancels
//                       to the same phi(a,b))
//   char-fer-even-tilde flavor 0, odd branch: q^{phit(a,b)} {[b != p-1]
//                       chi(a,b+2) + q^{a-b} chi(a,b)}
//   char-fer-odd-tilde  flavor 1 analogue, prefactor again phit(a,b)
//   char-fer-delegate   the first-index-(p-1) flavor-1 column, which is
//                       defined by delegation to flavor 0 first index 1,
//                       satisfies the flavor-1 identity forms
//   char-chain          chain_sum_shifted equals its two-character
//                       combination (no instances at p = 4: the (a,b)
//                       range is empty)
//   char-limit-paths    fermi_limit == fermi_limit_direct (p <= 5)
//   bose-limit(-stable) the alternating trinomial sum at s = b+1 has
//                       stabilized and equals chi(a, b+1)
//   bose-limit-tilde(-stable)  s = b+2 analogue against the two-character
//                       combination, the b = p-1 closing column dropping
//                       its out-of-range character
// Requires p >= 4, cutoff >= 0.
VerifyReport verify_character_identities(int p, Exp cutoff);

// Polynomial identity family at fixed (a, b, flavor) for L = 0..L_max: the
// lattice sum equals the prefactor-shifted alternating trinomial sum, with
// branch, trinomial depth, and prefactor chosen by parity. a is the first
// index of the lattice sum; flavor 0 requires 1 <= a <= p-2 and flavor 1
// requires 2 <= a <= p-1, where a = p-1 is the delegated column. Labels:
//   even-id-b1      flavor 0, b = 1
//   finitized-char  the (a,b) = (1,1) flavor-0 instance
//   even-id         flavor 0, b >= 2
//   odd-id-b1       flavor 1, b = 1 (branch on the parity of p - a)
//   odd-id-dual     flavor 1, b = 1 equals flavor 0, b = p-1 (the two
//                   parameter sets assemble the same system)
//   odd-id          flavor 1, b >= 2, with the L = 0 Kronecker correction
//                   when p - a == b
//   odd-id-delegate the a = p-1 instances, evaluated through delegation
// Suite name is "even-identities" or "odd-identities" by flavor.
VerifyReport verify_finitized(int p, int a, int b, int i, long long L_max);

}  // namespace qv
