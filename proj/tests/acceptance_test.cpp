// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <string>

#include "qv/bosonic.hpp"
#include "qv/characters.hpp"
#include "qv/fermionic.hpp"
#include "qv/nmsystem.hpp"
#include "qv/qgauss.hpp"
#include "qv/verify.hpp"

using namespace qv;

namespace {

int criteria_failed = 0;

void report(int index, const std::string& what, const VerifyReport& rep,
            double seconds, double budget_seconds) {
    const bool timed_ok = budget_seconds <= 0 || seconds < budget_seconds;
    const bool ok = rep.all_pass() && timed_ok;
    criteria_failed += !ok;
    std::printf("%s criterion %2d: %s (%zu checks, %zu failures, %.1f s%s)\n",
                ok ? "PASS" : "FAIL", index, what.c_str(), rep.instances.size(),
                rep.failures(), seconds,
                timed_ok ? "" : ", over time budget");
    if (!rep.all_pass()) {
        std::size_t shown = 0;
        for (const auto& inst : rep.instances) {
            if (inst.pass || ++shown > 5) continue;
            std::string params;
            for (const auto& [k, v] : inst.params)
                params += " " + k + "=" + std::to_string(v);
            std::printf("    mismatch %s%s: %s\n", inst.label.c_str(),
                        params.c_str(), inst.detail.c_str());
        }
    }
    std::fflush(stdout);
}

template <typename Fn>
void criterion(int index, const std::string& what, double budget_seconds, Fn fn) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport rep = fn();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report(index, what, rep, seconds, budget_seconds);
}

}  // namespace

int main() {
    criterion(1, "even-flavor polynomial identities, p 4..6, L <= 12", 300, [] {
        VerifyReport rep;
        for (int p = 4; p <= 6; ++p)
            for (int a = 1; a <= p - 2; ++a)
                for (int b = 1; b <= p - 1; ++b)
                    rep.merge(verify_finitized(p, a, b, 0, 12));
        return rep;
    });

    criterion(2, "odd-flavor polynomial identities with boundary delegation, p 4..6, L <= 12",
              300, [] {
                  VerifyReport rep;
                  for (int p = 4; p <= 6; ++p)
                      for (int a = 2; a <= p - 1; ++a)
                          for (int b = 1; b <= p - 1; ++b)
                              rep.merge(verify_finitized(p, a, b, 1, 12));
                  return rep;
              });

    criterion(3, "unit-column finitized character identity, p 4..7, L <= 12", 0, [] {
        VerifyReport rep;
        for (int p = 4; p <= 7; ++p) rep.merge(verify_finitized(p, 1, 1, 0, 12));
        return rep;
    });

    criterion(4, "trinomial property catalogue, L <= 20", 0,
              [] { return verify_trinomial_properties(20); });

    criterion(5, "bosonic recurrences, replay and reflection relations, p 4..6, L <= 12",
              0, [] {
                  VerifyReport rep;
                  for (int p = 4; p <= 6; ++p) {
                      for (int a = 1; a <= p - 1; ++a)
                          rep.merge(verify_bosonic_recurrences(p, a, 12));
                      rep.merge(verify_bosonic_relations(p, 12));
                  }
                  return rep;
              });

    criterion(6, "fermionic recurrences of both flavors, p 4..5, L <= 10", 0, [] {
        VerifyReport rep;
        for (int p = 4; p <= 5; ++p) {
            rep.merge(verify_even_recurrences(p, 10));
            rep.merge(verify_odd_recurrences(p, 10));
        }
        return rep;
    });

    criterion(7, "modified binomial closed forms, recurrences and sum reduction", 0, [] {
        VerifyReport rep = verify_binomial_recurrences();
        for (int p = 4; p <= 6; ++p) rep.merge(verify_modified_reduction(p, 3));
        return rep;
    });

    criterion(8, "alternating binomial sums: closed form, independence, vanishing", 0,
              [] { return verify_alt_binomial_sums(10, 10, 10); });

    criterion(9, "character identities to q^20 with dual-path limits, p 4..6", 600, [] {
        VerifyReport rep;
        for (int p = 4; p <= 6; ++p) rep.merge(verify_character_identities(p, 80));
        return rep;
    });

    criterion(10, "constraint-system enumeration against the box oracle, p 4..5, L <= 8",
              0, [] {
                  VerifyReport rep;
                  for (int p = 4; p <= 5; ++p) rep.merge(verify_nm_oracle(p, 8));
                  return rep;
              });

    std::printf("%d of 10 criteria failed\n", criteria_failed);
    return criteria_failed == 0 ? 0 : 1;
}
