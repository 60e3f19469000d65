#include <qv/characters.hpp>

#include <qv/bosonic.hpp>
#include <qv/fermionic.hpp>
#include <qv/nmsystem.hpp>
#include <qv/qgauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qv {

namespace {

// Prefactor exponents in quarter units: 4*phi and 4*phit.
long long phi4(long long a, long long b) { return (b - a) * (b - a + 1); }
long long phi4t(long long a, long long b) { return (b - a) * (b - a + 3); }

QLaurent chi_numerator(int p, int r, int s, Exp cutoff) {
    const long long P = p, Q = p + 1;
    QLaurent acc;
    // Both exponent families are increasing in |j| for |j| >= 1, so two
    // consecutive silent j on a side end that side.
    auto add = [&](long long j) {
        const long long lo = P * Q * j * j + j * (Q * r - P * s);
        const long long hi = (P * j + r) * (Q * j + s);
        bool any = false;
        if (4 * lo <= cutoff) acc += QLaurent::monomial(1, 4 * lo), any = true;
        if (4 * hi <= cutoff) acc -= QLaurent::monomial(1, 4 * hi), any = true;
        return any;
    };
    for (long long j = 0, misses = 0; misses < 2; ++j)
        misses = add(j) ? 0 : misses + 1;
    for (long long j = -1, misses = 0; misses < 2; --j)
        misses = add(j) ? 0 : misses + 1;
    return acc;
}

// 1/(q)_k series at a fixed cutoff, cached per k.
class InvPochCache {
public:
    explicit InvPochCache(Exp cutoff) : cutoff_(cutoff) {}

    const QSeries& at(long long k) {
        auto it = cache_.find(k);
        if (it == cache_.end())
            it = cache_.emplace(k, series_inverse(pochhammer(k, cutoff_))).first;
        return it->second;
    }

private:
    Exp cutoff_;
    std::map<long long, QSeries> cache_;
};

// Coordinate cap for a chain DFS: the chain quadratic form Q satisfies
// Q >= m_j^2 / K for every coordinate (telescoping from the nearer end),
// and the linear part removes at most 4*T where T is the largest
// coordinate, so Q - linear <= N forces T^2/K - 4T <= N.
long long chain_cap(long long K, Exp N) {
    const double n = static_cast<double>(std::max<Exp>(N, 0));
    return 2 * K + static_cast<long long>(std::sqrt(4.0 * K * K + K * n)) + 2;
}

}  // namespace

QSeries chi(int p, int r, int s, Exp cutoff) {
    if (p < 4) throw std::invalid_argument("chi: p must be >= 4");
    if (r < 1 || r > p - 1) throw std::invalid_argument("chi: r out of range");
    if (s < 1 || s > p) throw std::invalid_argument("chi: s out of range");
    if (cutoff < 0) return QSeries(cutoff);
    return mul_poly(series_inverse(pochhammer(kPochInf, cutoff)),
                    chi_numerator(p, r, s, cutoff));
}

QSeries fermi_limit(int p, int i, int a, int b, Exp cutoff) {
    // Binomial tops grow linearly with L, so kept coefficients freeze once
    // L passes cutoff/4 plus the largest contributing depth; start just
    // below the expected freeze point and walk forward.
    long long L = std::max<long long>(1, cutoff / 4 + 1);
    const long long cap = cutoff / 4 + 16;
    QSeries prev = fermi_truncated(build_params(p, a, b, i, L), cutoff);
    for (++L; L <= cap; ++L) {
        QSeries cur = fermi_truncated(build_params(p, a, b, i, L), cutoff);
        if (cur == prev) return cur;
        prev = cur;
    }
    throw std::runtime_error("fermi_limit: series not stabilized by L = " +
                             std::to_string(cap));
}

QSeries fermi_limit_direct(int p, int i, int a, int b, Exp cutoff) {
    const SystemData sys = build_params(p, a, b, i, 0);
    const auto& inc = sys.mats.inc_tilde;
    const auto& u = sys.ua.u;
    const auto& A = sys.ua.A;
    const int n = p - 1;  // coordinates 0..p-2; chain part is 1..p-2
    const Exp N = std::max<Exp>(cutoff, 0);
    const long long capc = chain_cap(p - 2, N);
    const long long cap0 =
        static_cast<long long>(std::sqrt(static_cast<double>(N) / 2.0)) + 1;
    // Weights can dip below zero by at most the linear part, so per-term
    // series are built against an enlarged working cutoff.
    const Exp work = N + 4 * capc + 8;
    InvPochCache inv(work);
    QSeries total(cutoff);
    if (cutoff < 0) return total;

    std::vector<long long> m(n, 0);
    // Finish one chain assignment: loop the decoupled m_0 and assemble the
    // term series q^{w} / (q)_{m_0} * prod binom((I~.m + u)_j / 2 - m_j, m_j).
    auto emit = [&](long long w) {
        for (long long m0 = 0; m0 <= cap0; ++m0) {
            const long long w0 = w + 2 * m0 * m0;
            if (w0 > N) break;
            m[0] = m0;
            QSeries term = inv.at(m0).truncated(N - w0);
            bool ok = true;
            for (int j = 1; j < n && ok; ++j) {
                long long top2 = u[j];
                for (int k = 0; k < n; ++k) top2 += inc[j][k] * m[k];
                if (top2 % 2 != 0) { ok = false; break; }
                const long long nj = top2 / 2 - m[j];
                if (nj < 0) { ok = false; break; }
                if (m[j] == 0) continue;
                term = mul_poly(term, qbinom(nj, m[j]));
                if (term.is_zero()) ok = false;
            }
            if (ok) total += term.shifted(w0);
        }
        m[0] = 0;
    };
    // DFS over the chain coordinates; pw carries the quadratic and linear
    // weight of everything fixed so far, relief bounds what the remaining
    // linear terms could still remove.
    auto rec = [&](auto&& self, int k, long long pw) -> void {
        if (k == n) {
            if (m[n - 1] % 2 != sys.mp_parity) return;
            if (pw <= N) emit(pw);
            return;
        }
        long long relief = 0;
        for (int j = k + 1; j < n; ++j) relief += 2 * A[j] * capc;
        // Past this point the per-step weight increment is strictly positive,
        // so an over-budget prefix cannot recover.
        const long long mono = (k == 1 ? 0 : m[k - 1]) + 2 * A[k] + 1;
        for (long long v = 0; v <= capc; ++v) {
            m[k] = v;
            long long npw = pw - 2 * A[k] * v;
            npw += k == 1 ? v * v : (m[k - 1] - v) * (m[k - 1] - v);
            if (k == n - 1) npw += v * v;
            if (npw - relief > N) {
                if (v >= mono) break;
                continue;
            }
            self(self, k + 1, npw);
        }
        m[k] = 0;
    };
    rec(rec, 1, 0);
    return total;
}

namespace {

// Shared body of chain_sum / chain_sum_shifted over m_1..m_{p-2}.
QSeries chain_sum_impl(int p, int a, int b, bool shifted, Exp cutoff) {
    const int n = p - 2;
    const Exp N = std::max<Exp>(cutoff, 0);
    const long long capc = chain_cap(n, N);
    const Exp work = N + 4 * capc + 8;
    InvPochCache inv(work);
    QSeries total(cutoff);
    if (cutoff < 0) return total;

    std::vector<long long> m(n + 1, 0);  // 1-based positions
    auto emit = [&](long long w) {
        QSeries term = inv.at(m[1]).truncated(N - w);
        bool ok = true;
        for (int j = 2; j <= n && ok; ++j) {
            long long top2 = m[j - 1] + (j + 1 <= n ? m[j + 1] : 0);
            if (shifted) top2 += (j == a) + (j == b);
            if (top2 % 2 != 0) { ok = false; break; }
            const long long nj = top2 / 2 - m[j];
            if (nj < 0) { ok = false; break; }
            if (m[j] == 0) continue;
            term = mul_poly(term, qbinom(nj, m[j]));
            if (term.is_zero()) ok = false;
        }
        if (ok) total += term.shifted(w);
    };
    auto rec = [&](auto&& self, int k, long long pw) -> void {
        if (k == n + 1) {
            if (m[n] % 2 != 0) return;
            if (pw <= N) emit(pw);
            return;
        }
        long long relief = 0;
        if (shifted && b > k) relief += 2 * capc;
        const long long lin = shifted ? (k == 1) + (k == b) : 0;
        const long long mono = (k == 1 ? 0 : m[k - 1]) + 2 * lin + 1;
        for (long long v = 0; v <= capc; ++v) {
            m[k] = v;
            long long npw = pw - 2 * lin * v;
            npw += k == 1 ? v * v : (m[k - 1] - v) * (m[k - 1] - v);
            if (k == n) npw += v * v;
            if (npw - relief > N) {
                if (v >= mono) break;
                continue;
            }
            self(self, k + 1, npw);
        }
        m[k] = 0;
    };
    rec(rec, 1, 0);
    return total;
}

}  // namespace

QSeries chain_sum(int p, Exp cutoff) {
    if (p < 4) throw std::invalid_argument("chain_sum: p must be >= 4");
    return chain_sum_impl(p, 0, 0, false, cutoff);
}

QSeries chain_sum_shifted(int p, int a, int b, Exp cutoff) {
    if (p < 4) throw std::invalid_argument("chain_sum_shifted: p must be >= 4");
    if (a < 2 || a > p - 2 || b < 2 || b > p - 2)
        throw std::invalid_argument("chain_sum_shifted: a, b must lie in [2, p-2]");
    return chain_sum_impl(p, a, b, true, cutoff);
}

VerifyReport verify_character_identities(int p, Exp cutoff) {
    if (p < 4)
        throw std::invalid_argument("verify_character_identities: p must be >= 4");
    if (cutoff < 0)
        throw std::invalid_argument("verify_character_identities: cutoff must be >= 0");
    VerifyReport rep;
    rep.suite = "character-identities";
    const Exp N = cutoff;

    // Character side shifted onto the quarter lattice at exact cutoff N.
    auto chi_at = [&](int r, int s, Exp quarters) {
        return chi(p, r, s, N - quarters).shifted(quarters);
    };
    std::map<std::array<int, 3>, QSeries> lims;
    auto lim = [&](int i, int a, int b) -> const QSeries& {
        const std::array<int, 3> key{i, a, b};
        auto it = lims.find(key);
        if (it == lims.end())
            it = lims.emplace(key, fermi_limit(p, i, a, b, N)).first;
        return it->second;
    };

    for (int r = 1; r <= p - 1; ++r)
        for (int s = 1; s <= p; ++s) {
            const QSeries c = chi(p, r, s, N);
            bool nonneg = true;
            for (const auto& [e, co] : c.terms())
                if (co < 0) nonneg = false;
            check_true(rep, "chi-positive", {{"p", p}, {"r", r}, {"s", s}},
                       c.coeff(0) == 1 && nonneg,
                       "constant term " + c.coeff(0).str() +
                           (nonneg ? "" : ", negative coefficient present"));
        }

    check_eq(rep, "char-unit", {{"p", p}}, lim(0, 1, 1), chi(p, 1, 1, N));
    check_eq(rep, "char-vacuum", {{"p", p}}, chain_sum(p, N), chi(p, 1, 1, N));

    // b = 1 rows of both flavors; a is the identity's character index, the
    // flavor-1 lattice sum sits at first index p - a (delegated at a = 1).
    for (int a = 1; a <= p - 2; ++a) {
        const bool plain0 = (a + (a == 1 ? 1 : 0)) % 2 == 0;
        check_eq(rep, "char-fer-b1-even", {{"p", p}, {"a", a}, {"b", 1}, {"i", 0}},
                 lim(0, a, 1),
                 plain0 ? chi_at(a, 1, a * (a - 1))
                        : chi_at(a, 2, (a - 1) * (a - 2)));
        check_eq(rep, a == 1 ? "char-fer-delegate" : "char-fer-b1-odd",
                 {{"p", p}, {"a", a}, {"b", 1}, {"i", 1}},
                 a == 1 ? lim(0, 1, 1) : lim(1, p - a, 1),
                 a % 2 == 1 ? chi_at(a, 1, a * (a - 1))
                            : chi_at(a, 2, (a - 1) * (a - 2)));
    }

    // b >= 2 rows; the tilde branches compare against the two-character
    // combination, with the out-of-range character dropped at b = p-1.
    for (int a = 1; a <= p - 2; ++a)
        for (int b = 2; b <= p - 1; ++b) {
            auto tilde_rhs = [&] {
                QSeries r = chi_at(a, b, phi4t(a, b) + 4 * (a - b));
                if (b != p - 1) r += chi_at(a, b + 2, phi4t(a, b));
                return r;
            };
            if ((a + b + (a == 1 ? 1 : 0)) % 2 == 0)
                check_eq(rep, "char-fer-even", {{"p", p}, {"a", a}, {"b", b}, {"i", 0}},
                         lim(0, a, b), chi_at(a, b + 1, phi4(a, b)));
            else
                check_eq(rep, "char-fer-even-tilde",
                         {{"p", p}, {"a", a}, {"b", b}, {"i", 0}}, lim(0, a, b),
                         tilde_rhs());
            const QSeries& lhs1 = a == 1 ? lim(0, 1, b) : lim(1, p - a, b);
            const char* label1 = a == 1 ? "char-fer-delegate"
                                 : (a + b) % 2 == 1 ? "char-fer-odd"
                                                    : "char-fer-odd-tilde";
            check_eq(rep, label1, {{"p", p}, {"a", a}, {"b", b}, {"i", 1}}, lhs1,
                     (a + b) % 2 == 1 ? chi_at(a, b + 1, phi4(a, b)) : tilde_rhs());
        }

    // Chain sum with shifted tops; the (a, b) range is empty at p = 4.
    for (int a = 2; a <= p - 2; ++a)
        for (int b = 2; b <= p - 2; ++b) {
            if ((a + b) % 2 != 1) continue;
            check_eq(rep, "char-chain", {{"p", p}, {"a", a}, {"b", b}},
                     chain_sum_shifted(p, a, b, N),
                     chi_at(a, b + 2, phi4t(a, b)) +
                         chi_at(a, b, phi4t(a, b) + 4 * (a - b)));
        }

    if (p <= 5)
        for (int i = 0; i <= 1; ++i)
            for (int a = 1; a <= p - 1; ++a)
                for (int b = 1; b <= p - 1; ++b)
                    check_eq(rep, "char-limit-paths",
                             {{"p", p}, {"a", a}, {"b", b}, {"i", i}}, lim(i, a, b),
                             fermi_limit_direct(p, i, a, b, N));

    // Stabilized alternating trinomial sums against their character
    // combinations.
    const long long Ls = N / 4 + p + 2;
    for (int a = 1; a <= p - 1; ++a)
        for (int b = 1; b <= p - 1; ++b) {
            const std::map<std::string, long long> P{{"p", p}, {"a", a}, {"b", b}};
            auto plain_at = [&](long long L) {
                return QSeries::from_laurent(bose(BoseKind::plain, p, a, b, b + 1, L), N);
            };
            auto tilde_at = [&](long long L) {
                return QSeries::from_laurent(bose(BoseKind::tilde, p, a, b, b + 2, L), N);
            };
            const QSeries bp = plain_at(Ls), bt = tilde_at(Ls);
            check_eq(rep, "bose-limit-stable", P, bp, plain_at(Ls + 1));
            check_eq(rep, "bose-limit", P, bp, chi(p, a, b + 1, N));
            check_eq(rep, "bose-limit-tilde-stable", P, bt, tilde_at(Ls + 1));
            QSeries rhs = chi_at(a, b, 4 * (a - b));
            if (b != p - 1) rhs += chi(p, a, b + 2, N);
            check_eq(rep, "bose-limit-tilde", P, bt, rhs);
        }

    rep.sort_instances();
    return rep;
}

VerifyReport verify_finitized(int p, int a, int b, int i, long long L_max) {
    if (i != 0 && i != 1)
        throw std::invalid_argument("verify_finitized: i must be 0 or 1");
    if (i == 0 && (a < 1 || a > p - 2))
        throw std::invalid_argument("verify_finitized: flavor 0 needs a in [1, p-2]");
    if (i == 1 && (a < 2 || a > p - 1))
        throw std::invalid_argument("verify_finitized: flavor 1 needs a in [2, p-1]");
    build_params(p, a, b, i, 0);  // validates p and b

    VerifyReport rep;
    rep.suite = i == 0 ? "even-identities" : "odd-identities";
    const int alpha = p - a;           // character index of the flavor-1 rows
    const bool delegated = i == 1 && a == p - 1;
    for (long long L = 0; L <= L_max; ++L) {
        const std::map<std::string, long long> P{
            {"p", p}, {"a", a}, {"b", b}, {"i", i}, {"L", L}};
        if (i == 0) {
            const QLaurent lhs = fermi(build_params(p, a, b, 0, L));
            if (b == 1) {
                const bool plain = (a + (a == 1 ? 1 : 0)) % 2 == 0;
                check_eq(rep, a == 1 ? "finitized-char" : "even-id-b1", P, lhs,
                         plain ? bose(BoseKind::plain, p, a, 1, 1, L).shifted(a * (a - 1))
                               : bose(BoseKind::plain, p, a, 1, 2, L)
                                     .shifted((a - 1) * (a - 2)));
            } else {
                const bool plain = (a + b + (a == 1 ? 1 : 0)) % 2 == 0;
                check_eq(rep, "even-id", P, lhs,
                         plain ? bose(BoseKind::plain, p, a, b, b + 1, L).shifted(phi4(a, b))
                               : bose(BoseKind::tilde, p, a, b, b + 2, L)
                                     .shifted(phi4t(a, b)));
            }
        } else {
            QLaurent lhs = delegated ? fermi(build_params(p, 1, b, 0, L))
                                     : fermi(build_params(p, a, b, 1, L));
            if (b == 1) {
                check_eq(rep, delegated ? "odd-id-delegate" : "odd-id-b1", P, lhs,
                         alpha % 2 == 1
                             ? bose(BoseKind::plain, p, alpha, 1, 1, L)
                                   .shifted(alpha * (alpha - 1))
                             : bose(BoseKind::plain, p, alpha, 1, 2, L)
                                   .shifted((alpha - 1) * (alpha - 2)));
                if (!delegated)
                    check_eq(rep, "odd-id-dual", P, lhs,
                             fermi(build_params(p, a, p - 1, 0, L)));
            } else {
                if (L == 0 && alpha == b) lhs += QLaurent::one();
                check_eq(rep, delegated ? "odd-id-delegate" : "odd-id", P, lhs,
                         (alpha + b) % 2 == 1
                             ? bose(BoseKind::plain, p, alpha, b, b + 1, L)
                                   .shifted(phi4(alpha, b))
                             : bose(BoseKind::tilde, p, alpha, b, b + 2, L)
                                   .shifted(phi4t(alpha, b)));
            }
        }
    }
    rep.sort_instances();
    return rep;
}

}  // namespace qv
