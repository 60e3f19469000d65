#include "qv/qgauss.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace qv {

namespace {

// Append-only cache of (q)_k polynomials. Deque keeps element addresses
// stable while the table grows, so returned references never dangle.
const QLaurent& poch_cached(long long k) {
    static std::mutex mu;
    static std::deque<QLaurent> table;
    std::lock_guard lock(mu);
    while (static_cast<long long>(table.size()) <= k)
        table.push_back(table.empty()
                            ? QLaurent::one()
                            : table.back() * (QLaurent::one() -
                                              QLaurent::monomial(
                                                  1, 4 * static_cast<Exp>(
                                                             table.size()))));
    return table[k];
}

// Bounded memo table; cleared wholesale when full so memory stays flat.
template <typename Key>
class Memo {
public:
    explicit Memo(std::size_t cap) : cap_(cap) {}

    bool get(const Key& k, QLaurent& out) {
        std::lock_guard lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }

    void put(const Key& k, const QLaurent& v) {
        std::lock_guard lock(mu_);
        if (map_.size() >= cap_) map_.clear();
        map_.emplace(k, v);
    }

private:
    std::mutex mu_;
    std::map<Key, QLaurent> map_;
    std::size_t cap_;
};

Memo<std::pair<long long, long long>>& binom_ratio_memo() {
    static Memo<std::pair<long long, long long>> m(1 << 16);
    return m;
}

Memo<std::tuple<long long, long long, long long>>& trinom_memo() {
    static Memo<std::tuple<long long, long long, long long>> m(1 << 15);
    return m;
}

QLaurent q_int_pow(long long e) { return QLaurent::monomial(1, 4 * e); }

}  // namespace

namespace {

// Shared core of both binomial flavors: the ratio (q^{n+1})_m / (q)_m built
// up one factor at a time,
//   R(n, m) = R(n, m-1) * (1 - q^{n+m}) / (1 - q^m),
// which is valid for every integer n. Each prefix is itself a binomial, so
// every division is exact; a factor 1 - q^0 makes the value identically zero,
// which is the intended vanishing for -m <= n < 0.
QLaurent binom_ratio(long long n, long long m) {
    std::pair key{n, m};
    QLaurent r;
    if (binom_ratio_memo().get(key, r)) return r;
    if (m == 0)
        r = QLaurent::one();
    else
        r = divide_exact(binom_ratio(n, m - 1) *
                             (QLaurent::one() - q_int_pow(n + m)),
                         QLaurent::one() - q_int_pow(m));
    binom_ratio_memo().put(key, r);
    return r;
}

}  // namespace

QLaurent qbinom(long long n, long long m) {
    if (n < 0 || m < 0) return {};
    return binom_ratio(n, m);
}

QLaurent qbinom_modified(long long n, long long m) {
    if (m < 0) return {};
    return binom_ratio(n, m);
}

QLaurent qtrinom(long long L, long long A, long long n) {
    if (L < 0 || A > L || -A > L) return {};
    std::tuple key{L, A, n};
    QLaurent r;
    if (trinom_memo().get(key, r)) return r;
    for (long long j = std::max<long long>(0, -A); 2 * j + A <= L; ++j) {
        QLaurent term = divide_exact(
            poch_cached(L),
            poch_cached(j) * poch_cached(j + A) * poch_cached(L - 2 * j - A));
        r += term.shifted(4 * j * (j + A - n));
    }
    trinom_memo().put(key, r);
    return r;
}

QSeries qtrinom_truncated(long long L, long long A, long long n, Exp cutoff) {
    QSeries r(cutoff);
    if (L < 0 || A > L || -A > L) return r;
    for (long long j = std::max<long long>(0, -A); 2 * j + A <= L; ++j) {
        const Exp lead = 4 * j * (j + A - n);
        if (lead > cutoff) continue;  // term cannot reach kept exponents
        // The multinomial ratio is needed through cutoff - lead (lead may be
        // negative, extending the required depth).
        const Exp need = cutoff - lead;
        QSeries term = pochhammer(L, need) *
                       series_inverse(pochhammer(j, need)) *
                       series_inverse(pochhammer(j + A, need)) *
                       series_inverse(pochhammer(L - 2 * j - A, need));
        r += term.shifted(lead);
    }
    return r;
}

QSeries trinom_limit(long long A, int n, Exp cutoff) {
    if (n != 0 && n != 1)
        throw std::invalid_argument("trinom_limit: n must be 0 or 1");
    const Exp pad = std::max<Exp>(0, -4 * A);
    QSeries inv = series_inverse(pochhammer(kPochInf, cutoff + pad));
    if (n == 0) return inv.truncated(cutoff);
    QSeries r = mul_poly(inv, QLaurent::one() + q_int_pow(A));
    return r.truncated(cutoff);
}

namespace {

using P = std::map<std::string, long long>;

// Classical trinomial coefficients: tri[x] = [x^x-coefficient] of
// (1 + x + x^2)^L, for the q = 1 oracle.
std::vector<Coeff> classical_trinomials(long long L) {
    std::vector<Coeff> row = {1};
    for (long long step = 0; step < L; ++step) {
        std::vector<Coeff> next(row.size() + 2, 0);
        for (std::size_t x = 0; x < row.size(); ++x)
            for (int d = 0; d < 3; ++d) next[x + d] += row[x];
        row = std::move(next);
    }
    return row;
}

void trinomial_identities_at(VerifyReport& rep, long long L, long long A) {
    const QLaurent one = QLaurent::one();
    auto T = [](long long l, long long a, long long n) {
        return qtrinom(l, a, n);
    };
    auto qp = q_int_pow;
    P base{{"L", L}, {"A", A}};

    check_eq(rep, "trinom-symm-0", base, T(L, A, 0), T(L, -A, 0));
    check_eq(rep, "trinom-symm-1", base, T(L, A, 1), T(L, -A, 1).shifted(4 * A));
    check_eq(rep, "trinom-mix-01", base, T(L, A, 1),
             T(L, A, 0) + (T(L - 1, A + 1, 0) * (one - qp(L))).shifted(4 * A));
    check_eq(rep, "trinom-cross", base,
             T(L, A, 0) - T(L, A, 1).shifted(4 * (L - A)),
             T(L, A + 1, 0) - T(L, A + 1, 1).shifted(4 * L));
    check_eq(rep, "trinom-shift-pair", base,
             T(L, A + 1, 1) - T(L, A - 1, 1).shifted(4 * (1 - A)),
             T(L, A + 1, 0).shifted(4 * (A + 1)) -
                 T(L, A - 1, 0).shifted(4 * (1 - A)));
    if (L < 1) return;

    check_eq(rep, "trinom-pascal-a", base, T(L, A, 0),
             T(L - 1, A + 1, 0) + T(L - 1, A, 1).shifted(4 * (L - 1 - A)) +
                 T(L - 1, A - 1, 0).shifted(4 * (L - A)));
    check_eq(rep, "trinom-pascal-b", base, T(L, A, 1),
             T(L - 1, A - 1, 0) + T(L - 1, A, 1).shifted(4 * (L - 1)) +
                 T(L - 1, A + 1, 0).shifted(4 * A));
    for (long long n = -1; n <= 2; ++n) {
        P pn = base;
        pn["n"] = n;
        check_eq(rep, "trinom-pascal-n", pn, T(L, A, n),
                 T(L - 1, A - 1, n).shifted(4 * (L - A)) +
                     T(L - 1, A + 1, n).shifted(4 * (L + A - n)) +
                     T(L - 1, A, n) +
                     (T(L - 2, A, n) * (one - qp(L - 1)))
                         .shifted(4 * (L - 1 - n)));
    }
    check_eq(rep, "trinom-tautology", base, T(L, A, 0),
             T(L, A, 1).shifted(4 * L) + T(L - 1, A - 1, 0) * (one - qp(L)) +
                 (T(L - 1, A, 1) * (one - qp(L))).shifted(4 * (L - 1)));
    check_eq(rep, "trinom-pascal-c", base, T(L, A, 0),
             T(L - 1, A - 1, 0) + T(L - 1, A, 1).shifted(4 * (L - 1)) +
                 T(L - 1, A + 1, 0).shifted(4 * (L + A)));
    check_eq(rep, "trinom-split-d", base, T(L, A, 0),
             T(L - 1, A - 1, 1).shifted(4 * (L - A)) + T(L - 1, A, 0) +
                 T(L - 1, A + 1, 1).shifted(4 * (L - 1)) +
                 (T(L - 2, A, 0) * (qp(L - 1) - one)).shifted(4 * (L - 1)));
    check_eq(rep, "trinom-split-e", base, T(L, A, 1),
             T(L - 1, A - 1, 0) + T(L - 2, A - 1, 0) * (qp(L - 1) - one) +
                 T(L - 1, A, 1) +
                 (T(L - 1, A + 1, 0) + T(L - 2, A + 1, 0) * (qp(L - 1) - one))
                     .shifted(4 * A) +
                 (T(L - 2, A, 1) * (qp(L - 1) - one)).shifted(4 * (L - 2)));
    check_eq(rep, "trinom-taut-lower", base, T(L, A - 1, 0),
             T(L, A - 1, 1).shifted(4 * (L + 1 - A)) +
                 T(L - 1, A - 1, 0) * (one - qp(L)) +
                 (T(L - 1, A, 1) * (one - qp(L))).shifted(4 * (L - 1)));
    check_eq(rep, "trinom-taut-upper", base, T(L, A + 1, 0),
             T(L, A + 1, 1).shifted(4 * L) +
                 T(L - 1, A + 1, 0) * (one - qp(L)) +
                 (T(L - 1, A, 1) * (one - qp(L))).shifted(4 * (L - 1 - A)));
}

}  // namespace

VerifyReport verify_trinomial_properties(long long L_max) {
    VerifyReport rep;
    rep.suite = "trinomial-properties";

    for (long long L = 0; L <= L_max; ++L) {
        auto classical = classical_trinomials(L);
        for (long long A = -L; A <= L; ++A) {
            trinomial_identities_at(rep, L, A);
            for (long long n = -1; n <= 2; ++n) {
                check_true(rep, "trinom-q1-oracle", {{"L", L}, {"A", A}, {"n", n}},
                           qtrinom(L, A, n).eval_at_one() == classical[L + A],
                           "q=1 value differs from classical trinomial");
            }
        }
        // Zero outside the admissible strip.
        check_true(rep, "trinom-range-zero", {{"L", L}},
                   qtrinom(L, L + 1, 0).is_zero() &&
                       qtrinom(L, -L - 1, 1).is_zero(),
                   "nonzero outside |A| <= L");
    }
    for (long long n = -1; n <= 2; ++n)
        for (long long A = -2; A <= 2; ++A)
            check_eq(rep, "trinom-depth-zero", {{"A", A}, {"n", n}},
                     qtrinom(0, A, n),
                     A == 0 ? QLaurent::one() : QLaurent());

    // Truncated evaluation agrees with the exact polynomial.
    for (long long L = 0; L <= std::min<long long>(L_max, 12); ++L)
        for (long long A = -L; A <= L; ++A)
            for (long long n = 0; n <= 1; ++n)
                check_eq(rep, "trinom-truncation", {{"L", L}, {"A", A}, {"n", n}},
                         QSeries::from_laurent(qtrinom(L, A, n), 24),
                         qtrinom_truncated(L, A, n, 24));

    // Limits: truncations stabilize in L and match the closed form.
    const Exp cut = 40;
    for (long long n = 0; n <= 1; ++n) {
        for (long long A = -3; A <= 3; ++A) {
            const long long cap = 2 * (cut / 4) + std::abs(A) + 10;
            // Three equal consecutive truncations guard against accidental
            // low-L coincidences.
            QSeries prev2 = qtrinom_truncated(std::abs(A), A, n, cut);
            QSeries prev = qtrinom_truncated(std::abs(A) + 1, A, n, cut);
            long long stab = -1;
            for (long long L = std::abs(A) + 2; L <= cap; ++L) {
                QSeries cur = qtrinom_truncated(L, A, n, cut);
                if (cur == prev && prev == prev2) {
                    stab = L;
                    break;
                }
                prev2 = prev;
                prev = cur;
            }
            P params{{"A", A}, {"n", n}};
            check_true(rep, "trinom-limit-stabilizes", params, stab >= 0,
                       "no stabilization up to L cap");
            if (stab >= 0)
                check_eq(rep, "trinom-limit-value", params, prev,
                         trinom_limit(A, static_cast<int>(n), cut));
        }
    }

    rep.sort_instances();
    return rep;
}

VerifyReport verify_binomial_recurrences() {
    VerifyReport rep;
    rep.suite = "binomial-recurrences";

    // Pascal table for the q = 1 oracle.
    std::vector<std::vector<Coeff>> pascal(31, std::vector<Coeff>(31, 0));
    pascal[0][0] = 1;
    for (int r = 1; r <= 30; ++r) {
        pascal[r][0] = 1;
        for (int c = 1; c <= 30; ++c)
            pascal[r][c] = pascal[r - 1][c - 1] + pascal[r - 1][c];
    }

    for (long long n = 0; n <= 15; ++n) {
        for (long long m = 0; m <= 15; ++m) {
            P params{{"n", n}, {"m", m}};
            if (n + m > 0) {
                check_eq(rep, "binom-rec-bottom", params, qbinom(n, m),
                         qbinom(n - 1, m) + qbinom(n, m - 1).shifted(4 * n));
                check_eq(rep, "binom-rec-top", params, qbinom(n, m),
                         qbinom(n, m - 1) + qbinom(n - 1, m).shifted(4 * m));
            }
            check_eq(rep, "binom-symm", params, qbinom(n, m), qbinom(m, n));
            check_true(rep, "binom-q1-oracle", params,
                       qbinom(n, m).eval_at_one() == pascal[n + m][n],
                       "q=1 value differs from binomial coefficient");
        }
    }
    // The standard recurrences fail exactly at the origin.
    check_true(rep, "binom-rec-origin", {{"n", 0}, {"m", 0}},
               qbinom(0, 0) != qbinom(-1, 0) + qbinom(0, -1) &&
                   qbinom(0, 0) != qbinom(0, -1) + qbinom(-1, 0),
               "origin recurrence unexpectedly holds");
    check_true(rep, "binom-negative-zero", {},
               qbinom(-1, 5).is_zero() && qbinom(5, -1).is_zero() &&
                   qbinom_modified(3, -1).is_zero(),
               "negative-argument binomial not zero");

    // Modified binomial: recurrences hold everywhere, origin included.
    for (long long n = -8; n <= 8; ++n) {
        for (long long m = 0; m <= 8; ++m) {
            P params{{"n", n}, {"m", m}};
            check_eq(rep, "binom-mod-rec-bottom", params, qbinom_modified(n, m),
                     qbinom_modified(n - 1, m) +
                         qbinom_modified(n, m - 1).shifted(4 * n));
            check_eq(rep, "binom-mod-rec-top", params, qbinom_modified(n, m),
                     qbinom_modified(n, m - 1) +
                         qbinom_modified(n - 1, m).shifted(4 * m));
        }
    }

    // Three-branch closed form for the modified binomial.
    for (long long n = -10; n <= 10; ++n) {
        for (long long m = -10; m <= 10; ++m) {
            QLaurent expect;
            if (m >= 0) {
                if (n >= 0) {
                    expect = qbinom(n, m);
                } else if (n + m < 0) {
                    expect = qbinom(-n - 1 - m, m)
                                 .scaled(m % 2 == 0 ? 1 : -1)
                                 .shifted(2 * m * (m + 1) + 4 * m * n);
                }
            }
            check_eq(rep, "binom-mod-closed-form", {{"n", n}, {"m", m}},
                     qbinom_modified(n, m), expect);
        }
    }

    // [L choose k] stabilizes to 1/(q)_k.
    const Exp cut = 40;
    for (long long k = 0; k <= 6; ++k) {
        QSeries prev = QSeries::from_laurent(qbinom(k, 0), cut);
        long long stab = -1;
        for (long long L = k + 1; L <= k + 2 * (cut / 4) + 6; ++L) {
            QSeries cur = QSeries::from_laurent(qbinom(k, L - k), cut);
            if (cur == prev) {
                stab = L;
                break;
            }
            prev = cur;
        }
        P params{{"k", k}};
        check_true(rep, "binom-limit-stabilizes", params, stab >= 0,
                   "no stabilization up to L cap");
        if (stab >= 0)
            check_eq(rep, "binom-limit-value", params, prev,
                     series_inverse(pochhammer(k, cut)));
    }

    rep.sort_instances();
    return rep;
}

}  // namespace qv
