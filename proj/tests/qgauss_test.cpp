#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qv/qgauss.hpp"

using namespace qv;

namespace {
QLaurent terms(QLaurent::TermMap m) { return QLaurent::from_terms(std::move(m)); }
}

TEST_CASE("gaussian binomial frozen values") {
    CHECK(qbinom(0, 0) == QLaurent::one());
    CHECK(qbinom(1, 1) == terms({{0, 1}, {4, 1}}));
    CHECK(qbinom(2, 2) == terms({{0, 1}, {4, 1}, {8, 2}, {12, 1}, {16, 1}}));
    CHECK(qbinom(2, 3) ==
          terms({{0, 1}, {4, 1}, {8, 2}, {12, 2}, {16, 2}, {20, 1}, {24, 1}}));
    CHECK(qbinom(-1, 5).is_zero());
    CHECK(qbinom(5, -1).is_zero());
}

TEST_CASE("modified binomial frozen values") {
    CHECK(qbinom_modified(-3, 2) == QLaurent::monomial(1, -12));
    CHECK(qbinom_modified(-1, 3).is_zero());
    // (1 - q^{-4})/(1 - q) = -q^{-4}(1 + q + q^2 + q^3)
    CHECK(qbinom_modified(-5, 1) ==
          terms({{-16, -1}, {-12, -1}, {-8, -1}, {-4, -1}}));
    CHECK(qbinom_modified(-1, 0) == QLaurent::one());
    CHECK(qbinom_modified(0, -2).is_zero());
    for (long long n = 0; n <= 6; ++n)
        for (long long m = 0; m <= 6; ++m)
            CHECK(qbinom_modified(n, m) == qbinom(n, m));
}

TEST_CASE("trinomial frozen values") {
    CHECK(qtrinom(0, 0, 0) == QLaurent::one());
    CHECK(qtrinom(0, 1, 0).is_zero());
    CHECK(qtrinom(-1, 0, 0).is_zero());
    CHECK(qtrinom(5, 7, 0).is_zero());
    CHECK(qtrinom(2, 0, 0) == terms({{0, 1}, {4, 1}, {8, 1}}));
    CHECK(qtrinom(2, 0, 1) == terms({{0, 2}, {4, 1}}));
    CHECK(qtrinom(2, 1, 1) == terms({{0, 1}, {4, 1}}));
    CHECK(qtrinom(2, -1, 1) == terms({{-4, 1}, {0, 1}}));
    CHECK(qtrinom(3, 1, 0) == terms({{0, 1}, {4, 1}, {8, 2}, {12, 1}, {16, 1}}));
}

TEST_CASE("trinomial limit closed forms") {
    CHECK_THROWS_AS(trinom_limit(0, 2, 20), std::invalid_argument);
    QSeries t0 = trinom_limit(5, 0, 40);  // independent of A
    const long long pn[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) CHECK(t0.coeff(4 * n) == pn[n]);
    QSeries t1 = trinom_limit(0, 1, 40);
    for (int n = 0; n <= 10; ++n) CHECK(t1.coeff(4 * n) == 2 * pn[n]);
    QSeries t1n = trinom_limit(-2, 1, 20);
    CHECK(t1n.coeff(-8) == 1);
    CHECK(t1n.coeff(-4) == 1);
    CHECK(t1n.coeff(0) == 3);
    CHECK(t1n.coeff(4) == 4);
    CHECK(t1n.coeff(8) == 7);
}

TEST_CASE("truncated trinomial matches exact polynomial") {
    for (long long L = 0; L <= 9; ++L)
        for (long long A = -L; A <= L; ++A)
            for (long long n = -1; n <= 2; ++n)
                CHECK(qtrinom_truncated(L, A, n, 30) ==
                      QSeries::from_laurent(qtrinom(L, A, n), 30));
}

TEST_CASE("a perturbed recurrence is detected") {
    // Guards the equality plumbing: a wrong shift must produce a mismatch.
    QLaurent lhs = qtrinom(3, 1, 0);
    QLaurent wrong = qtrinom(2, 2, 0) + qtrinom(2, 1, 1).shifted(4 * (3 - 1 - 1)) +
                     qtrinom(2, 0, 0).shifted(4 * (3 - 1 + 1));
    CHECK(lhs != wrong);
    CHECK(!diff_detail(lhs, wrong).empty());
    CHECK(qtrinom(3, 1, 0) != qtrinom(3, 1, 1));
}

TEST_CASE("trinomial property suite") {
    VerifyReport rep = verify_trinomial_properties(10);
    CAPTURE(rep.to_text());
    CHECK(rep.all_pass());
    CHECK(rep.instances.size() > 500);
}

TEST_CASE("binomial recurrence suite") {
    VerifyReport rep = verify_binomial_recurrences();
    CAPTURE(rep.to_text());
    CHECK(rep.all_pass());
    CHECK(rep.instances.size() > 500);
}
