#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "qv/characters.hpp"

#include <doctest.h>

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qv/bosonic.hpp"
#include "qv/fermionic.hpp"
#include "qv/nmsystem.hpp"
#include "qv/qgauss.hpp"

using namespace qv;

namespace {

// Character side moved onto the quarter lattice so cutoffs match exactly.
QSeries chi_at(int p, int r, int s, Exp quarters, Exp cutoff) {
    return chi(p, r, s, cutoff - quarters).shifted(quarters);
}

void expect_coeffs(const QSeries& got, const std::vector<long long>& want) {
    for (std::size_t n = 0; n < want.size(); ++n)
        CHECK(got.coeff(4 * static_cast<Exp>(n)) == want[n]);
    for (const auto& [e, c] : got.terms()) CHECK(e % 4 == 0);
}

std::map<std::string, int> label_counts(const VerifyReport& rep) {
    std::map<std::string, int> out;
    for (const auto& in : rep.instances) out[in.label]++;
    return out;
}

int fail_count(const VerifyReport& rep) {
    int n = 0;
    for (const auto& in : rep.instances)
        if (!in.pass) ++n;
    return n;
}

}  // namespace

TEST_CASE("chi rejects out-of-range labels and degenerate cutoffs") {
    CHECK_THROWS_AS(chi(3, 1, 1, 20), std::invalid_argument);
    CHECK_THROWS_AS(chi(4, 0, 1, 20), std::invalid_argument);
    CHECK_THROWS_AS(chi(4, 4, 1, 20), std::invalid_argument);
    CHECK_THROWS_AS(chi(4, 1, 0, 20), std::invalid_argument);
    CHECK_THROWS_AS(chi(4, 1, 5, 20), std::invalid_argument);
    CHECK(chi(4, 1, 1, -2).is_zero());
    CHECK(chi(4, 1, 1, 0).coeff(0) == 1);
}

TEST_CASE("chi matches the independent brute-force expansion") {
    // Frozen from tools/chi_bruteforce.py, highest power q^20.
    expect_coeffs(chi(4, 1, 1, 80), {1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12,
                                     14, 20, 23, 32, 38, 50, 59, 77, 91, 116});
    expect_coeffs(chi(4, 1, 2, 80), {1, 1, 1, 2, 3, 4, 6, 8, 11, 14, 19,
                                     24, 32, 40, 51, 64, 81, 100, 125, 153, 189});
    expect_coeffs(chi(5, 1, 1, 80), {1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12,
                                     14, 21, 24, 34, 41, 55, 66, 88, 105, 136});
    expect_coeffs(chi(5, 2, 3, 80), {1, 1, 2, 3, 5, 7, 10, 14, 20, 26, 36,
                                     47, 63, 81, 106, 135, 174, 219, 278, 347, 436});
}

TEST_CASE("chi is symmetric under the (r,s) -> (p-r, p+1-s) swap") {
    for (int p = 4; p <= 5; ++p)
        for (int r = 1; r <= p - 1; ++r)
            for (int s = 1; s <= p; ++s)
                CHECK(chi(p, r, s, 60) == chi(p, p - r, p + 1 - s, 60));
}

TEST_CASE("deep binomial columns converge to inverse Pochhammer factors") {
    for (long long k = 0; k <= 6; ++k)
        CHECK(QSeries::from_laurent(qbinom(20, k), 60) ==
              series_inverse(pochhammer(k, 60)));
}

TEST_CASE("truncated sums freeze at finite size and stay frozen") {
    const Exp cutoff = 40;
    QSeries prev = fermi_truncated(build_params(4, 1, 1, 0, 1), cutoff);
    long long Lstar = -1;
    for (long long L = 2; L <= 30; ++L) {
        const QSeries cur = fermi_truncated(build_params(4, 1, 1, 0, L), cutoff);
        if (cur == prev) {
            Lstar = L;
            break;
        }
        prev = cur;
    }
    REQUIRE(Lstar > 0);
    for (long long L = Lstar + 1; L <= Lstar + 5; ++L)
        CHECK(fermi_truncated(build_params(4, 1, 1, 0, L), cutoff) == prev);
    CHECK(fermi_limit(4, 0, 1, 1, cutoff) == prev);
}

TEST_CASE("stabilized and direct limit evaluations agree") {
    for (int i = 0; i <= 1; ++i)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                CHECK(fermi_limit(4, i, a, b, 40) == fermi_limit_direct(4, i, a, b, 40));
    for (auto [i, a, b] : {std::array{0, 1, 1}, std::array{0, 2, 3},
                           std::array{1, 3, 2}, std::array{1, 4, 4}})
        CHECK(fermi_limit(5, i, a, b, 40) == fermi_limit_direct(5, i, a, b, 40));
}

TEST_CASE("half-lattice prefactors shift the character onto the sum") {
    // First index 2, second index 1: the shift is two quarter steps, so the
    // limit series lives on the half-integer lattice.
    const QSeries lhs = fermi_limit(4, 0, 2, 1, 40);
    CHECK(lhs == chi_at(4, 2, 1, 2, 40));
    bool half = false;
    for (const auto& [e, c] : lhs.terms())
        if (e % 4 != 0) half = true;
    CHECK(half);
}

TEST_CASE("vacuum chain sum reproduces the unit character") {
    CHECK(chain_sum(4, 60) == chi(4, 1, 1, 60));
    CHECK(chain_sum(5, 48) == chi(5, 1, 1, 48));
}

TEST_CASE("shifted chain sum matches its two-character combination") {
    CHECK(chain_sum_shifted(5, 2, 3, 48) ==
          chi_at(5, 2, 5, 4, 48) + chi_at(5, 2, 3, 0, 48));
    CHECK(chain_sum_shifted(5, 3, 2, 48) ==
          chi_at(5, 3, 4, -2, 48) + chi_at(5, 3, 2, 2, 48));
    CHECK_THROWS_AS(chain_sum_shifted(5, 1, 2, 20), std::invalid_argument);
    CHECK_THROWS_AS(chain_sum_shifted(5, 2, 4, 20), std::invalid_argument);
}

TEST_CASE("character identity suite passes and is fully labeled") {
    const VerifyReport rep = verify_character_identities(4, 40);
    CHECK(rep.suite == "character-identities");
    CHECK(fail_count(rep) == 0);
    const auto counts = label_counts(rep);
    CHECK(counts.at("chi-positive") == 12);
    CHECK(counts.at("char-unit") == 1);
    CHECK(counts.at("char-vacuum") == 1);
    CHECK(counts.at("char-fer-b1-even") == 2);
    CHECK(counts.at("char-fer-b1-odd") == 1);
    CHECK(counts.at("char-fer-delegate") == 3);
    CHECK(counts.at("char-limit-paths") == 18);
    CHECK(counts.at("bose-limit") == 9);
    CHECK(counts.at("bose-limit-tilde") == 9);
    CHECK(counts.at("bose-limit-stable") == 9);
    CHECK(counts.at("bose-limit-tilde-stable") == 9);
    // The doubly-shifted chain range is empty below p = 5.
    CHECK(counts.find("char-chain") == counts.end());

    const VerifyReport rep5 = verify_character_identities(5, 32);
    CHECK(fail_count(rep5) == 0);
    CHECK(label_counts(rep5).at("char-chain") == 2);
}

TEST_CASE("finitized identity suites pass for every column") {
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 3; ++b) {
            const VerifyReport rep = verify_finitized(4, a, b, 0, 8);
            CHECK(rep.suite == "even-identities");
            CHECK(fail_count(rep) == 0);
        }
    for (int a = 2; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            const VerifyReport rep = verify_finitized(4, a, b, 1, 8);
            CHECK(rep.suite == "odd-identities");
            CHECK(fail_count(rep) == 0);
        }
}

TEST_CASE("finitized labels separate delegated and dual instances") {
    const auto direct = label_counts(verify_finitized(4, 2, 1, 1, 5));
    CHECK(direct.at("odd-id-b1") == 6);
    CHECK(direct.at("odd-id-dual") == 6);
    const auto delegated = label_counts(verify_finitized(4, 3, 2, 1, 5));
    CHECK(delegated.at("odd-id-delegate") == 6);
    CHECK(delegated.size() == 1);
    const auto unit = label_counts(verify_finitized(4, 1, 1, 0, 5));
    CHECK(unit.at("finitized-char") == 6);
}

TEST_CASE("finitized suites reject out-of-range columns") {
    CHECK_THROWS_AS(verify_finitized(4, 3, 1, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(verify_finitized(4, 1, 1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(verify_finitized(4, 2, 1, 2, 2), std::invalid_argument);
}

TEST_CASE("perturbed prefactors are detected as mismatches") {
    const QLaurent lhs = fermi(build_params(4, 1, 2, 0, 3));
    const QLaurent rhs = bose(BoseKind::plain, 4, 1, 2, 3, 3);
    CHECK(lhs == rhs.shifted(2));
    CHECK_FALSE(lhs == rhs.shifted(6));
    CHECK_FALSE(fermi_limit(4, 0, 1, 2, 40) == chi_at(4, 1, 3, 6, 40));
}
