#include "qv/verify.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <sstream>

namespace qv {

namespace {

// Canonical parameter order for sorting and printing.
constexpr std::array<const char*, 16> kKeyOrder = {
    "p", "a", "b", "i", "L", "r", "s", "A", "n", "m",
    "C0", "B", "k", "j", "variant", "cutoff"};

int key_rank(const std::string& k) {
    for (std::size_t r = 0; r < kKeyOrder.size(); ++r)
        if (k == kKeyOrder[r]) return static_cast<int>(r);
    return static_cast<int>(kKeyOrder.size());
}

std::vector<std::pair<std::string, long long>> ordered_params(
    const std::map<std::string, long long>& params) {
    std::vector<std::pair<std::string, long long>> v(params.begin(), params.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        int rx = key_rank(x.first), ry = key_rank(y.first);
        if (rx != ry) return rx < ry;
        return x.first < y.first;
    });
    return v;
}

std::string json_escape(const std::string& s) {
    std::ostringstream out;
    for (char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\t': out << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out << buf;
                } else {
                    out << c;
                }
        }
    }
    return out.str();
}

std::string params_str(const std::map<std::string, long long>& params) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : ordered_params(params)) {
        if (!first) out << " ";
        first = false;
        out << k << "=" << v;
    }
    return out.str();
}

std::string diff_terms(const QLaurent::TermMap& a, const QLaurent::TermMap& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            return "first mismatch at q^(" + std::to_string(ia->first) +
                   "/4): lhs " + ia->second.str() + ", rhs 0";
        }
        if (ia == a.end() || ib->first < ia->first) {
            return "first mismatch at q^(" + std::to_string(ib->first) +
                   "/4): lhs 0, rhs " + ib->second.str();
        }
        if (ia->second != ib->second) {
            return "first mismatch at q^(" + std::to_string(ia->first) +
                   "/4): lhs " + ia->second.str() + ", rhs " + ib->second.str();
        }
        ++ia;
        ++ib;
    }
    return "";
}

}  // namespace

std::size_t VerifyReport::failures() const {
    std::size_t n = 0;
    for (const auto& inst : instances)
        if (!inst.pass) ++n;
    return n;
}

void VerifyReport::merge(VerifyReport other) {
    for (auto& inst : other.instances) instances.push_back(std::move(inst));
}

void VerifyReport::sort_instances() {
    auto key = [](const VerifyInstance& inst) {
        std::vector<long long> v;
        for (const char* k : kKeyOrder) {
            auto it = inst.params.find(k);
            v.push_back(it == inst.params.end() ? LLONG_MIN : it->second);
        }
        return v;
    };
    std::stable_sort(instances.begin(), instances.end(),
                     [&](const VerifyInstance& x, const VerifyInstance& y) {
                         auto kx = key(x), ky = key(y);
                         if (kx != ky) return kx < ky;
                         if (x.label != y.label) return x.label < y.label;
                         return x.params < y.params;
                     });
}

std::string VerifyReport::to_json_line() const {
    std::ostringstream out;
    out << "{\"suite\":\"" << json_escape(suite) << "\",\"total\":"
        << instances.size() << ",\"failures\":" << failures()
        << ",\"instances\":[";
    bool first = true;
    for (const auto& inst : instances) {
        if (!first) out << ",";
        first = false;
        out << "{\"label\":\"" << json_escape(inst.label) << "\",\"params\":{";
        bool pfirst = true;
        for (const auto& [k, v] : ordered_params(inst.params)) {
            if (!pfirst) out << ",";
            pfirst = false;
            out << "\"" << json_escape(k) << "\":" << v;
        }
        out << "},\"pass\":" << (inst.pass ? "true" : "false")
            << ",\"detail\":\"" << json_escape(inst.detail) << "\"}";
    }
    out << "]}";
    return out.str();
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    out << "suite " << suite << ": " << instances.size() << " checks, "
        << failures() << " failures\n";
    std::size_t shown = 0;
    for (const auto& inst : instances) {
        if (inst.pass) continue;
        if (++shown > 50) {
            out << "  ... " << (failures() - 50) << " more failures\n";
            break;
        }
        out << "  FAIL " << inst.label << " [" << params_str(inst.params)
            << "] " << inst.detail << "\n";
    }
    return out.str();
}

std::string diff_detail(const QLaurent& lhs, const QLaurent& rhs) {
    return diff_terms(lhs.terms(), rhs.terms());
}

std::string diff_detail(const QSeries& lhs, const QSeries& rhs) {
    if (lhs.cutoff() != rhs.cutoff())
        return "cutoff mismatch: lhs " + std::to_string(lhs.cutoff()) +
               ", rhs " + std::to_string(rhs.cutoff());
    return diff_terms(lhs.terms(), rhs.terms());
}

void check_eq(VerifyReport& rep, std::string label,
              std::map<std::string, long long> params, const QLaurent& lhs,
              const QLaurent& rhs) {
    std::string d = diff_detail(lhs, rhs);
    rep.instances.push_back(
        {std::move(label), std::move(params), d.empty(), std::move(d)});
}

void check_eq(VerifyReport& rep, std::string label,
              std::map<std::string, long long> params, const QSeries& lhs,
              const QSeries& rhs) {
    std::string d = diff_detail(lhs, rhs);
    rep.instances.push_back(
        {std::move(label), std::move(params), d.empty(), std::move(d)});
}

void check_true(VerifyReport& rep, std::string label,
                std::map<std::string, long long> params, bool ok,
                std::string detail_on_fail) {
    rep.instances.push_back({std::move(label), std::move(params), ok,
                             ok ? "" : std::move(detail_on_fail)});
}

}  // namespace qv
