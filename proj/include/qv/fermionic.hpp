#pragma once

#include <qv/nmsystem.hpp>
#include <qv/qlaurent.hpp>
#include <qv/verify.hpp>

namespace qv {

enum class FermiVariant {
    standard,  // classical binomials, all n_j >= 0
    modified,  // two-sided binomial at index 0; admits n_0 + m_0 < 0
};

// Weight exponent of one lattice solution in quarter-power units:
// 4 * (m.C~.m / 4 - A.m / 2) = m.C~.m - 2 A.m.  Always an integer.
Exp fermi_weight_quarters(const SystemData& sys, const NMSolution& sol);

// Contribution of a single solution: q^{weight} times the product of the
// per-site binomials [n_j + m_j over n_j].  Under FermiVariant::modified
// the index-0 factor is the two-sided binomial, which is what makes
// negative-sector solutions contribute.
QLaurent fermi_term(const SystemData& sys, const NMSolution& sol,
                    FermiVariant variant);

// Constrained lattice sum F(L) = sum over admissible (n, m) of
// q^{weight(m)} * prod_j [n_j + m_j over n_j].
//
// standard: finitely many solutions, exact polynomial.
// modified: the negative sector is infinite but cancels group by group;
// the sum is taken over the groups that fit in `window` (default window
// when null).  The result is window-independent once the window contains
// every group with a nonzero sum, which default_window guarantees.
QLaurent fermi(const SystemData& sys,
               FermiVariant variant = FermiVariant::standard,
               const ModifiedWindow* window = nullptr);

// Standard-variant sum with every solution whose weight exceeds `cutoff`
// dropped and the binomial products truncated at the matching depth.
// Agrees with fermi(...) truncated to `cutoff`.
QSeries fermi_truncated(const SystemData& sys, Exp cutoff);

// Alternating binomial sum
//   P(L, C0, B) = sum_{k >= 0} (-1)^k q^{k(k-1)/2 - L k}
//                 [B + C0 - k over B] [B + 1 + L over k]
// and its closed form (-1)^{C0} q^{C0(C0-1)/2 - C0 L} [L over C0].
// The sum does not depend on B, and vanishes for C0 > L.
QLaurent alt_binomial_sum(long long L, long long C0, long long B);
QLaurent alt_binomial_sum_closed(long long L, long long C0);

// Recurrence suites.  Both decrease L by 1 or 2 and step b by +-1, with the
// b = p column identically zero.
//
// Flavor-0 family F(p, a, b, L), 1 <= a <= p-2:
//   even-rec-1/2: b = 1 step, branch on parity of a + theta(a == 1)
//   even-rec-3/4: b = 2 step, same branch
//   even-rec-5/6: 2 < b <= p-1 step, branch on parity of b + a + theta(a == 1)
VerifyReport verify_even_recurrences(int p, int L_max);

// Flavor-1 family Fbar(p, p-a, b, L), 2 <= a <= p-2:
//   odd-rec-1/2: b = 1 step, branch on parity of a
//   odd-rec-3/4: b = 2 step, same branch
//   odd-rec-5/6: 2 < b <= p-1 step, branch on parity of a + b
// Fbar is evaluated through its standard-sum reduction (the L = 0 bump),
// which verify_modified_reduction certifies against the defining window sum.
VerifyReport verify_odd_recurrences(int p, int L_max);

// Evidence that the two-sided index-0 binomial changes the sum only by the
// documented L = 0 bump:
//   mod-reduce-even: flavor 0, modified == standard
//   mod-reduce-odd:  flavor 1, modified == standard + bump
//   mod-window-stable: one extra shell of complete groups beyond the default
//     window cancels (small L; for p >= 6 swept over b, i at first = 1)
//   mod-window-double: a fully doubled window agrees (one instance per p <= 5)
VerifyReport verify_modified_reduction(int p, long long L_max);

// Checks on the alternating binomial sum: closed form, independence of B,
// vanishing beyond the diagonal, plus the weight-one negative-sector
// solution that survives cancellation at L = 0.
VerifyReport verify_alt_binomial_sums(long long L_max, long long C0_max,
                                      long long B_max);

}  // namespace qv
