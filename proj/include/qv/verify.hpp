#pragma once

#include <map>
#include <string>
#include <vector>

#include "qv/qlaurent.hpp"

namespace qv {

// One verified equality or property instance.
struct VerifyInstance {
    std::string label;
    std::map<std::string, long long> params;
    bool pass = false;
    std::string detail;  // empty when pass; first mismatch otherwise
};

// Aggregated result of a verification suite. Instance order is made
// deterministic by sort_instances() regardless of how checks were scheduled.
struct VerifyReport {
    std::string suite;
    std::vector<VerifyInstance> instances;

    std::size_t failures() const;
    bool all_pass() const { return failures() == 0; }
    void merge(VerifyReport other);
    void sort_instances();

    // Single-line JSON object, stable field order.
    std::string to_json_line() const;
    // Human-readable summary; failing instances listed first.
    std::string to_text() const;
};

// First-mismatch description, empty when equal.
std::string diff_detail(const QLaurent& lhs, const QLaurent& rhs);
std::string diff_detail(const QSeries& lhs, const QSeries& rhs);

void check_eq(VerifyReport& rep, std::string label,
              std::map<std::string, long long> params, const QLaurent& lhs,
              const QLaurent& rhs);
void check_eq(VerifyReport& rep, std::string label,
              std::map<std::string, long long> params, const QSeries& lhs,
              const QSeries& rhs);
void check_true(VerifyReport& rep, std::string label,
                std::map<std::string, long long> params, bool ok,
                std::string detail_on_fail);

}  // namespace qv
