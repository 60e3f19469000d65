#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qv/qlaurent.hpp"

using namespace qv;

namespace {

QLaurent q_pow(Exp quarters) { return QLaurent::monomial(1, quarters); }

QLaurent random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 6), coeff(-4, 4), exp(-8, 12);
    QLaurent::TermMap m;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) m[exp(rng)] = coeff(rng);
    return QLaurent::from_terms(m);
}

}  // namespace

TEST_CASE("construction and canonical form") {
    CHECK(QLaurent().is_zero());
    CHECK(QLaurent::constant(0).is_zero());
    CHECK(QLaurent::monomial(0, 8).is_zero());
    QLaurent p = QLaurent::from_terms({{0, 1}, {4, 0}, {6, 2}});
    CHECK(p.term_count() == 2);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(4) == 0);
    CHECK(p.coeff(6) == 2);
    CHECK(p.min_exp() == 0);
    CHECK(p.max_exp() == 6);
    CHECK_THROWS_AS(QLaurent().min_exp(), std::logic_error);
}

TEST_CASE("arithmetic canonicalizes zero coefficients") {
    QLaurent p = QLaurent::one() - q_pow(4);
    QLaurent s = p + q_pow(4);
    CHECK(s == QLaurent::one());
    CHECK((p - p).is_zero());
    CHECK((p * QLaurent()).is_zero());
}

TEST_CASE("ring axioms on random inputs") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        QLaurent a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a.shifted(5).shifted(-5) == a);
        CHECK((a * b).shifted(3) == a.shifted(3) * b);
        CHECK((a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one());
        CHECK((a + b).eval_at_one() == a.eval_at_one() + b.eval_at_one());
    }
}

TEST_CASE("pochhammer polynomial") {
    CHECK(poch_poly(0) == QLaurent::one());
    CHECK(poch_poly(1) == QLaurent::one() - q_pow(4));
    // (1-q)(1-q^2)(1-q^3) = 1 - q - q^2 + q^4 + q^5 - q^6
    QLaurent expect = QLaurent::from_terms(
        {{0, 1}, {4, -1}, {8, -1}, {16, 1}, {20, 1}, {24, -1}});
    CHECK(poch_poly(3) == expect);
    CHECK_THROWS_AS(poch_poly(-1), std::invalid_argument);
    for (int k = 1; k <= 6; ++k) CHECK(poch_poly(k).eval_at_one() == 0);
}

TEST_CASE("exact division") {
    // (q)_4 / ((q)_2 (q)_2) = 1 + q + 2q^2 + q^3 + q^4
    QLaurent gauss = divide_exact(poch_poly(4), poch_poly(2) * poch_poly(2));
    CHECK(gauss == QLaurent::from_terms({{0, 1}, {4, 1}, {8, 2}, {12, 1}, {16, 1}}));

    std::mt19937 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        QLaurent a = random_poly(rng), b = random_poly(rng);
        if (b.is_zero()) continue;
        CHECK(divide_exact(a * b, b) == a);
    }
    CHECK(!try_divide_exact(QLaurent::one() + q_pow(8),
                            QLaurent::one() + q_pow(4)));
    CHECK(!try_divide_exact(QLaurent::constant(2), QLaurent::constant(3)));
    CHECK_THROWS_AS(divide_exact(QLaurent::one(), QLaurent()),
                    std::invalid_argument);
    CHECK_THROWS_AS(divide_exact(QLaurent::one() + q_pow(8),
                                 QLaurent::one() + q_pow(4)),
                    std::domain_error);
}

TEST_CASE("series cutoff semantics") {
    QSeries a = QSeries::from_laurent(QLaurent::one() - q_pow(4), 40);
    QSeries b = QSeries::from_laurent(QLaurent::one() + q_pow(4), 20);
    CHECK((a + b).cutoff() == 20);
    CHECK((a * b).cutoff() == 20);
    QSeries p = a * b;  // 1 - q^2
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(8) == -1);
    CHECK(p.coeff(4) == 0);
    CHECK_THROWS_AS(p.coeff(24), std::logic_error);
    CHECK_THROWS_AS(p.truncated(24), std::logic_error);
    CHECK(p.truncated(4).terms().size() == 1);
    CHECK(a.shifted(8).cutoff() == 48);
    CHECK(a.shifted(8).coeff(8) == 1);
}

TEST_CASE("infinite pochhammer matches pentagonal expansion") {
    // (q)_inf = sum_k (-1)^k q^{k(3k-1)/2}: exponents 0,1,2,5,7,12,15,22,26.
    QSeries e = pochhammer(kPochInf, 30 * 4);
    QLaurent::TermMap want = {{0, 1},      {4, -1},      {8, -1},
                              {5 * 4, 1},  {7 * 4, 1},   {12 * 4, -1},
                              {15 * 4, -1}, {22 * 4, 1}, {26 * 4, 1}};
    CHECK(e.terms() == want);
}

TEST_CASE("finite pochhammer series matches polynomial truncation") {
    for (int k = 0; k <= 7; ++k) {
        QSeries s = pochhammer(k, 25);
        CHECK(s == QSeries::from_laurent(poch_poly(k), 25));
    }
    CHECK_THROWS_AS(pochhammer(-3, 20), std::invalid_argument);
}

TEST_CASE("series inverse reproduces partition numbers") {
    const long long pn[] = {1,  1,  2,  3,   5,   7,   11,  15,  22,  30,  42,
                            56, 77, 101, 135, 176, 231, 297, 385, 490, 627};
    QSeries inv = series_inverse(pochhammer(kPochInf, 20 * 4));
    for (int n = 0; n <= 20; ++n) CHECK(inv.coeff(4 * n) == pn[n]);
}

TEST_CASE("series inverse roundtrip") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 100; ++trial) {
        QLaurent body = random_poly(rng);
        // Force a unit lowest term at a (possibly negative) exponent.
        QLaurent x = q_pow(-4) + body.shifted(8);
        QSeries xs = QSeries::from_laurent(x, 30);
        QSeries prod = xs * series_inverse(xs);
        QSeries one = QSeries::from_laurent(QLaurent::one(), prod.cutoff());
        CHECK(prod == one);
    }
    QSeries bad = QSeries::from_laurent(QLaurent::constant(2), 10);
    CHECK_THROWS_AS(series_inverse(bad), std::domain_error);
    CHECK_THROWS_AS(series_inverse(QSeries(10)), std::domain_error);
}

TEST_CASE("human-readable printing") {
    QLaurent p = QLaurent::from_terms({{0, 1}, {4, -1}, {6, 2}});
    CHECK(p.str() == "1 - q + 2*q^(3/2)");
    CHECK(QLaurent().str() == "0");
    CHECK(QLaurent::monomial(-1, -3).str() == "-q^(-3/4)");
    CHECK(QLaurent::monomial(3, 8).str() == "3*q^2");
}

TEST_CASE("json serialization") {
    QLaurent p = QLaurent::from_terms({{0, 1}, {4, -1}, {6, 2}});
    CHECK(to_json_string(p) ==
          "[{\"exp_quarters\":0,\"coeff\":\"1\"},"
          "{\"exp_quarters\":4,\"coeff\":\"-1\"},"
          "{\"exp_quarters\":6,\"coeff\":\"2\"}]");
    QSeries s = QSeries::from_laurent(p, 5);
    CHECK(to_json_string(s) ==
          "{\"cutoff_quarters\":5,\"terms\":"
          "[{\"exp_quarters\":0,\"coeff\":\"1\"},"
          "{\"exp_quarters\":4,\"coeff\":\"-1\"}]}");
}
