#include "qv/bosonic.hpp"

#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "qv/qgauss.hpp"

namespace qv {

namespace {

// Exponents (integral q-powers) of the two j-terms.
struct TermExponents {
    long long lo;  // trinomial argument 2pj + a - b
    long long hi;  // trinomial argument 2pj + a + b
};

TermExponents exponents(BoseKind kind, long long p, long long a, long long b,
                        long long s, long long j) {
    const long long base = p * (p + 1) * j * j;
    switch (kind) {
        case BoseKind::plain:
            return {base + j * ((p + 1) * a - p * s),
                    (p * j + a) * ((p + 1) * j + s)};
        case BoseKind::tilde:
            return {base + j * ((p + 1) * a - p * s),
                    base + j * ((p + 1) * a + p * (s - 2)) + a * (s - 1) - b};
        case BoseKind::prime:
            return {base + j * ((p + 1) * a - p * (b + 1)),
                    base + j * ((p + 1) * a + p * (b - 1)) + b * (a - 1)};
    }
    throw std::logic_error("bose: bad kind");
}

}  // namespace

QLaurent bose(BoseKind kind, int p, int a, int b, long long s, long long L) {
    if (p < 4) throw std::invalid_argument("bose: p must be >= 4");
    if (L < 0) throw std::invalid_argument("bose: L must be >= 0");
    const int tri = kind == BoseKind::plain ? 0 : 1;
    QLaurent acc;
    // One j-term; false once both trinomials lack support (|arg| > L).
    auto add_term = [&](long long j) {
        const QLaurent t_lo = qtrinom(L, 2LL * p * j + a - b, tri);
        const QLaurent t_hi = qtrinom(L, 2LL * p * j + a + b, tri);
        if (t_lo.is_zero() && t_hi.is_zero()) return false;
        const auto e = exponents(kind, p, a, b, s, j);
        acc += t_lo.shifted(4 * e.lo);
        acc -= t_hi.shifted(4 * e.hi);
        return true;
    };
    for (long long j = 0, misses = 0; misses < 2; ++j)
        misses = add_term(j) ? 0 : misses + 1;
    for (long long j = -1, misses = 0; misses < 2; --j)
        misses = add_term(j) ? 0 : misses + 1;
    return acc;
}

namespace {

// Memoizing accessor for one (p, a); negative L is identically zero.
class BoseCache {
  public:
    BoseCache(int p, int a) : p_(p), a_(a) {}

    const QLaurent& at(BoseKind kind, int b, long long s, long long L) {
        const auto key = std::make_tuple(static_cast<int>(kind), b, s, L);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        QLaurent val;
        if (L >= 0) val = bose(kind, p_, a_, b, s, L);
        return cache_.emplace(key, std::move(val)).first->second;
    }

  private:
    int p_;
    int a_;
    std::map<std::tuple<int, int, long long, long long>, QLaurent> cache_;
};

QLaurent delta_poly(bool hit) { return hit ? QLaurent::one() : QLaurent(); }

}  // namespace

VerifyReport verify_bosonic_recurrences(int p, int a, long long L_max) {
    if (p < 4) throw std::invalid_argument("verify_bosonic_recurrences: p < 4");
    if (a < 1 || a > p - 1)
        throw std::invalid_argument("verify_bosonic_recurrences: a out of [1, p-1]");
    VerifyReport rep;
    rep.suite = "bosonic-recurrences";
    BoseCache C(p, a);
    auto B = [&](int b, long long s, long long L) -> const QLaurent& {
        return C.at(BoseKind::plain, b, s, L);
    };
    auto Bt = [&](int b, long long s, long long L) -> const QLaurent& {
        return C.at(BoseKind::tilde, b, s, L);
    };
    auto params_at = [&](int b, long long s, long long L) {
        return std::map<std::string, long long>{
            {"p", p}, {"a", a}, {"b", b}, {"s", s}, {"L", L}};
    };

    // Initial data: every kind collapses to the Kronecker delta at L = 0.
    for (int b = 1; b <= p - 1; ++b) {
        const QLaurent d = delta_poly(a == b);
        check_eq(rep, "bose-init", params_at(b, b + 1, 0), B(b, b + 1, 0), d);
        check_eq(rep, "bose-init", params_at(b, b + 2, 0), Bt(b, b + 2, 0), d);
        auto pr = params_at(b, 0, 0);
        pr.erase("s");
        pr["variant"] = 2;
        check_eq(rep, "bose-init", pr, bose(BoseKind::prime, p, a, b, 0, 0), d);
    }
    check_eq(rep, "bose-init", params_at(1, 1, 0), B(1, 1, 0),
             delta_poly(a == 1));
    check_eq(rep, "bose-init", params_at(1, 2, 0), B(1, 2, 0),
             delta_poly(a == 1));

    for (long long L = 1; L <= L_max; ++L) {
        check_eq(rep, "bose-rec-1", params_at(1, 1, L), B(1, 1, L),
                 B(1, 1, L - 1) + B(2, 3, L - 1).shifted(4 * (L + 1 - a)));
        check_eq(rep, "bose-rec-2", params_at(1, 2, L), B(1, 2, L),
                 B(1, 2, L - 1) + Bt(2, 4, L - 1).shifted(4 * (L + 1 - a)));
        check_eq(rep, "bose-rec-3", params_at(2, 3, L), B(2, 3, L),
                 B(2, 3, L - 1) + B(1, 1, L - 1).shifted(4 * (L + a - 2)) +
                     Bt(3, 5, L - 1).shifted(4 * (L - a + 2)));
        check_eq(rep, "bose-rec-4", params_at(2, 4, L), Bt(2, 4, L),
                 Bt(2, 4, L - 1).shifted(4 * (L - 1)) +
                     B(1, 2, L - 1).shifted(4 * (a - 2)) + B(3, 4, L - 1));
        const QLaurent step =
            QLaurent::monomial(1, 4 * (L - 1)) - QLaurent::one();  // q^{L-1}-1
        for (int b = 1; b <= p - 1; ++b) {
            check_eq(rep, "bose-rec-5", params_at(b, b + 1, L), B(b, b + 1, L),
                     B(b, b + 1, L - 1) +
                         (B(b, b + 1, L - 2) * step).shifted(4 * (L - 1)) +
                         Bt(b + 1, b + 3, L - 1).shifted(4 * (L - a + b)) +
                         Bt(b - 1, b + 1, L - 1).shifted(4 * (L - 1)));
            check_eq(rep, "bose-rec-6", params_at(b, b + 2, L), Bt(b, b + 2, L),
                     B(b + 1, b + 2, L - 1) + B(b + 1, b + 2, L - 2) * step +
                         (B(b - 1, b, L - 1) + B(b - 1, b, L - 2) * step)
                             .shifted(4 * (a - b)) +
                         Bt(b, b + 2, L - 1) +
                         (Bt(b, b + 2, L - 2) * step).shifted(4 * (L - 2)));
        }
    }

    // Uniqueness replay: rebuild every family from the L = 0 data through the
    // recurrences alone, closing the b = p columns to zero, then compare.
    const long long n = L_max + 1;
    std::vector<QLaurent> rb1s1(n), rb1s2(n);
    std::vector<std::vector<QLaurent>> rb(p + 1, std::vector<QLaurent>(n));
    std::vector<std::vector<QLaurent>> rt(p + 1, std::vector<QLaurent>(n));
    rb1s1[0] = delta_poly(a == 1);
    rb1s2[0] = delta_poly(a == 1);
    for (int b = 2; b <= p - 1; ++b) {
        rb[b][0] = delta_poly(a == b);
        rt[b][0] = delta_poly(a == b);
    }
    for (long long L = 1; L <= L_max; ++L) {
        const QLaurent step =
            QLaurent::monomial(1, 4 * (L - 1)) - QLaurent::one();
        auto two_back = [&](const std::vector<QLaurent>& f) {
            return L >= 2 ? f[L - 2] * step : QLaurent();
        };
        rb1s1[L] = rb1s1[L - 1] + rb[2][L - 1].shifted(4 * (L + 1 - a));
        rb1s2[L] = rb1s2[L - 1] + rt[2][L - 1].shifted(4 * (L + 1 - a));
        rb[2][L] = rb[2][L - 1] + rb1s1[L - 1].shifted(4 * (L + a - 2)) +
                   rt[3][L - 1].shifted(4 * (L - a + 2));
        rt[2][L] = rt[2][L - 1].shifted(4 * (L - 1)) +
                   rb1s2[L - 1].shifted(4 * (a - 2)) + rb[3][L - 1];
        for (int b = 3; b <= p - 1; ++b) {
            rb[b][L] = rb[b][L - 1] + two_back(rb[b]).shifted(4 * (L - 1)) +
                       rt[b + 1][L - 1].shifted(4 * (L - a + b)) +
                       rt[b - 1][L - 1].shifted(4 * (L - 1));
            rt[b][L] = rb[b + 1][L - 1] + two_back(rb[b + 1]) +
                       (rb[b - 1][L - 1] + two_back(rb[b - 1]))
                           .shifted(4 * (a - b)) +
                       rt[b][L - 1] + two_back(rt[b]).shifted(4 * (L - 2));
        }
    }
    for (long long L = 0; L <= L_max; ++L) {
        check_eq(rep, "bose-replay", params_at(1, 1, L), rb1s1[L], B(1, 1, L));
        check_eq(rep, "bose-replay", params_at(1, 2, L), rb1s2[L], B(1, 2, L));
        for (int b = 2; b <= p - 1; ++b) {
            check_eq(rep, "bose-replay", params_at(b, b + 1, L), rb[b][L],
                     B(b, b + 1, L));
            auto pr = params_at(b, b + 2, L);
            pr["variant"] = 1;
            check_eq(rep, "bose-replay", pr, rt[b][L], Bt(b, b + 2, L));
        }
    }
    rep.sort_instances();
    return rep;
}

VerifyReport verify_bosonic_relations(int p, long long L_max) {
    if (p < 4) throw std::invalid_argument("verify_bosonic_relations: p < 4");
    VerifyReport rep;
    rep.suite = "bosonic-relations";
    auto nonneg = [](const QLaurent& v) {
        for (const auto& [e, c] : v.terms())
            if (c < 0) return false;
        return true;
    };
    for (int a = 1; a <= p - 1; ++a)
        for (long long L = 0; L <= L_max; ++L) {
            std::map<std::string, long long> pr{{"p", p}, {"a", a}, {"L", L}};
            for (int b = 1; b <= p - 1; ++b) {
                auto prb = pr;
                prb["b"] = b;
                check_eq(rep, "bose-rel-dual", prb,
                         bose(BoseKind::plain, p, p - a, p - b, p - b + 1, L),
                         bose(BoseKind::plain, p, a, b, b, L));
                check_eq(rep, "bose-rel-dual-tilde", prb,
                         bose(BoseKind::tilde, p, p - a, p - b, p - b + 2, L),
                         bose(BoseKind::prime, p, a, b, 0, L)
                             .shifted(4 * (b - a)));
            }
            check_eq(rep, "bose-rel-top", pr,
                     bose(BoseKind::plain, p, a, p - 1, p, L),
                     bose(BoseKind::plain, p, p - a, 1, 1, L));
            check_eq(rep, "bose-rel-top-tilde", pr,
                     bose(BoseKind::tilde, p, a, p - 1, p + 1, L),
                     bose(BoseKind::plain, p, p - a, 1, 2, L)
                         .shifted(4 * (a - p + 1)));
            check_true(rep, "bose-rel-vanish", pr,
                       bose(BoseKind::plain, p, a, p, p + 1, L).is_zero() &&
                           bose(BoseKind::tilde, p, a, p, p + 2, L).is_zero(),
                       "closing column not zero");
            check_eq(rep, "bose-rel-b1", pr,
                     bose(BoseKind::plain, p, a, 1, 2, L),
                     bose(BoseKind::tilde, p, a, 1, 2, L));
            if (a <= p - 2) {
                auto ok = nonneg(bose(BoseKind::plain, p, a, 1, 1, L)) &&
                          nonneg(bose(BoseKind::plain, p, a, 1, 2, L));
                for (int b = 2; ok && b <= p - 1; ++b)
                    ok = nonneg(bose(BoseKind::plain, p, a, b, b + 1, L)) &&
                         nonneg(bose(BoseKind::tilde, p, a, b, b + 2, L));
                check_true(rep, "bose-nonneg", pr, ok,
                           "negative coefficient in a canonical value");
            }
        }
    rep.sort_instances();
    return rep;
}

}  // namespace qv
