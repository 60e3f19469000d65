#include "qv/nmsystem.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace qv {

namespace {

long long parity_bit(long long x) { return ((x % 2) + 2) % 2; }

}  // namespace

FermMatrices build_matrices(int p) {
    FermMatrices mats;
    mats.p = p;
    const int d = p - 1;
    mats.inc_tilde.assign(d, std::vector<long long>(d, 0));
    // Index 0 couples antisymmetrically to index 2; indices 1..p-2 form the
    // usual chain.
    mats.inc_tilde[0][2] = -1;
    mats.inc_tilde[2][0] = 1;
    for (int r = 1; r <= p - 2; ++r)
        for (int c = 1; c <= p - 2; ++c)
            if (r == c + 1 || r == c - 1) mats.inc_tilde[r][c] = 1;
    mats.cartan_tilde.assign(d, std::vector<long long>(d, 0));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            mats.cartan_tilde[r][c] = (r == c ? 2 : 0) - mats.inc_tilde[r][c];

    const int e = p - 2;
    mats.inc.assign(e, std::vector<long long>(e, 0));
    for (int r = 0; r < e; ++r)
        for (int c = 0; c < e; ++c)
            if (r == c + 1 || r == c - 1) mats.inc[r][c] = 1;
    mats.cartan.assign(e, std::vector<long long>(e, 0));
    for (int r = 0; r < e; ++r)
        for (int c = 0; c < e; ++c)
            mats.cartan[r][c] = (r == c ? 2 : 0) - mats.inc[r][c];
    return mats;
}

SystemData build_params(int p, int a, int b, int i, long long L) {
    if (p < 4) throw std::invalid_argument("build_params: p must be >= 4");
    if (a < 1 || a > p - 1)
        throw std::invalid_argument("build_params: a must be in [1, p-1]");
    if (b < 1 || b > p - 1)
        throw std::invalid_argument("build_params: b must be in [1, p-1]");
    if (i != 0 && i != 1)
        throw std::invalid_argument("build_params: i must be 0 or 1");
    if (L < 0) throw std::invalid_argument("build_params: L must be >= 0");

    SystemData sys;
    sys.params = {p, a, b, i, L};
    sys.mats = build_matrices(p);

    const int d = p - 1;
    sys.ua.u.assign(d, 0);
    sys.ua.A.assign(d, 0);
    // Unit vectors e_a/e_b vanish when the index equals p-1.
    if (a > 1 && a <= p - 2) sys.ua.u[a] += 1;
    if (b > 1 && b <= p - 2) sys.ua.u[b] += 1;
    const long long arg =
        a + (a == 1 ? 1 : 0) + b + (b == 1 ? 1 : 0) + (i == 1 ? p - 1 : 0);
    if (parity_bit(arg) == 1) {
        sys.ua.u[1] += 1;
        sys.ua.u[0] -= 1;
        sys.ua.A[1] += 1;
    }
    if (b > 1 && b <= p - 2) sys.ua.A[b] += 1;

    sys.mp_parity = (b == p - 1) ? 1 - i : i;
    return sys;
}

namespace {

// Shared state for the recursive enumeration. Free variables are
// (m_{p-2}, n_{p-2}, ..., n_1); everything else is derived:
//   m_k  = sum_{j>=1} j (2 n_{k+j} - u_{k+j}) + (p-1-k) m_{p-2}   (k >= 2)
//   m_1  = (m_2 + u_1)/2 - n_1
//   2m_0 = sum_{j>=1} j (2 n_j - u_j) + (p-1) m_{p-2}
//   n_0  = L + (u_0 - m_2)/2 - m_0
class Enumerator {
public:
    Enumerator(const SystemData& sys, EnumMode mode, const ModifiedWindow* win)
        : sys_(sys),
          p_(sys.params.p),
          L_(sys.params.L),
          u_(sys.ua.u),
          mode_(mode) {
        if (win) win_ = *win;
        else win_ = default_window(sys.params);
        n_.assign(p_ - 1, 0);
        m_.assign(p_ - 1, 0);
    }

    std::vector<NMSolution> run() {
        out_.clear();
        enumerate_sector(false);
        if (mode_ == EnumMode::modified) enumerate_sector(true);
        return std::move(out_);
    }

private:
    // m_k for k >= 2 from the currently assigned n_{k+1}..n_{p-2}; entries
    // below `first_assigned` count as zero.
    long long derived_m(int k, int first_assigned) const {
        long long s = (p_ - 1 - k) * m_[p_ - 2];
        for (int j = 1; k + j <= p_ - 2; ++j) {
            long long nv = (k + j >= first_assigned) ? n_[k + j] : 0;
            s += static_cast<long long>(j) * (2 * nv - u_[k + j]);
        }
        return s;
    }

    long long m0_doubled(int first_assigned) const {
        long long s = (p_ - 1) * m_[p_ - 2];
        for (int j = 1; j <= p_ - 2; ++j) {
            long long nv = (j >= first_assigned) ? n_[j] : 0;
            s += static_cast<long long>(j) * (2 * nv - u_[j]);
        }
        return s;
    }

    void enumerate_sector(bool negative) {
        negative_ = negative;
        // Parity prechecks: all are independent of the free n's.
        long long cap;
        if (!negative) {
            long long slack = 0;
            for (int j = 1; j <= p_ - 3; ++j)
                slack += static_cast<long long>(j) * u_[j + 1];
            cap = (2 * L_ + slack >= 0) ? (L_ + slack) / (p_ - 2) : -1;
        } else {
            if (p_ == 4) {
                cap = win_.m2_cap;
            } else {
                long long slack = 0;
                for (int j = 1; j <= p_ - 4; ++j)
                    slack += static_cast<long long>(j) * u_[2 + j];
                cap = (win_.m2_cap + slack) / (p_ - 3);
            }
        }
        for (long long mp = sys_.mp_parity; mp <= cap; mp += 2) {
            m_[p_ - 2] = mp;
            if (parity_bit(m0_doubled(p_ - 1)) != 0) continue;   // m_0 integral
            if (parity_bit(derived_m(2, p_ - 1) - u_[0]) != 0) continue;  // n_0
            assign(p_ - 2);
        }
    }

    void assign(int t) {
        if (t == 1) {
            base_loop();
            return;
        }
        const long long hi = negative_ ? win_.n_cap
                                       : std::numeric_limits<long long>::max();
        for (long long v = 0; v <= hi; ++v) {
            n_[t] = v;
            if (!negative_) {
                // Max possible n_0 (remaining n's at zero) shrinks as v grows.
                long long n0x2_max =
                    2 * L_ + u_[0] - derived_m(2, t) - m0_doubled(t);
                if (n0x2_max < 0) break;
            }
            // m_{t-1} is now fixed and increases with n_t.
            if (t >= 3 && derived_m(t - 1, t) < 0) continue;
            assign(t - 1);
        }
        n_[t] = 0;
    }

    void base_loop() {
        const long long m2 = derived_m(2, 2);
        if (negative_) {
            // Negative sector: n_0 + m_0 < 0, i.e. m_2 > 2L + u_0, within the
            // window; groups are complete because n_1 is never capped.
            if (m2 <= 2 * L_ + u_[0] || m2 > win_.m2_cap) return;
        }
        if (parity_bit(m2 + u_[1]) != 0) return;  // m_1 never integral
        const long long n1_hi = (m2 + u_[1]) / 2;
        for (long long n1 = 0; n1 <= n1_hi; ++n1) {
            n_[1] = n1;
            m_[1] = (m2 + u_[1]) / 2 - n1;
            const long long m0x2 = m0_doubled(1);
            if (m0x2 < 0) continue;  // m_0 grows with n_1
            m_[0] = m0x2 / 2;
            const long long n0x2 = 2 * L_ + u_[0] - m2 - m0x2;
            if (!negative_) {
                if (n0x2 < 0) break;  // n_0 shrinks as n_1 grows
            }
            n_[0] = n0x2 / 2;
            for (int k = 2; k <= p_ - 2; ++k) {
                m_[k] = derived_m(k, 2);
                if (m_[k] < 0) throw std::logic_error("negative derived m");
            }
            if (!rows_hold()) throw std::logic_error("row check failed");
            out_.push_back({n_, m_});
        }
        n_[1] = 0;
    }

    // Full defining system, row by row, in doubled integers.
    bool rows_hold() const {
        for (int j = 0; j <= p_ - 2; ++j) {
            long long inc = 0;
            for (int k = 0; k <= p_ - 2; ++k)
                inc += sys_.mats.inc_tilde[j][k] * m_[k];
            long long rhs = inc + (j == 0 ? 2 * L_ : 0) + u_[j];
            if (2 * n_[j] + 2 * m_[j] != rhs) return false;
        }
        return true;
    }

    const SystemData& sys_;
    int p_;
    long long L_;
    const std::vector<long long>& u_;
    EnumMode mode_;
    ModifiedWindow win_;
    bool negative_ = false;
    std::vector<long long> n_, m_;
    std::vector<NMSolution> out_;
};

}  // namespace

ModifiedWindow default_window(const ModelParams& params) {
    return {2 * params.L + 2 + 2 * params.p, params.L + params.p + 2};
}

std::vector<NMSolution> enumerate_solutions(const SystemData& sys, EnumMode mode,
                                            const ModifiedWindow* window) {
    Enumerator e(sys, mode, window);
    return e.run();
}

bool check_consequences(const NMSolution& sol, const SystemData& sys) {
    const int p = sys.params.p;
    const long long L = sys.params.L;
    const auto& u = sys.ua.u;
    const auto& n = sol.n;
    const auto& m = sol.m;

    // L = n_0 + n_1 + 2 sum_j j (n - u/2)_{j+1} + (p-2) m_{p-2}
    long long s1 = n[0] + n[1] + (p - 2) * m[p - 2];
    for (int j = 1; j <= p - 3; ++j)
        s1 += static_cast<long long>(j) * (2 * n[j + 1] - u[j + 1]);
    if (s1 != L) return false;

    if (n[0] + n[1] + m[0] + m[1] != L) return false;

    long long s3 = n[0] + n[1] + m[2] + m[p - 2];
    for (int j = 2; j <= p - 2; ++j) s3 += 2 * n[j] - u[j];
    if (s3 != L) return false;

    long long s4 = (p - 1) * m[p - 2];
    for (int j = 1; j <= p - 2; ++j)
        s4 += static_cast<long long>(j) * (2 * n[j] - u[j]);
    if (s4 != 2 * m[0]) return false;

    for (int k = 2; k <= p - 2; ++k) {
        long long s5 = (p - 1 - k) * m[p - 2];
        for (int j = 1; k + j <= p - 2; ++j)
            s5 += static_cast<long long>(j) * (2 * n[k + j] - u[k + j]);
        if (s5 != m[k]) return false;
    }
    return true;
}

std::vector<NMSolution> enumerate_box_oracle(const SystemData& sys) {
    const int p = sys.params.p;
    const long long L = sys.params.L;
    const auto& u = sys.ua.u;
    const long long hi = 2 * L + p;
    std::vector<long long> m(p - 1, 0);
    std::vector<NMSolution> out;

    auto try_m = [&]() {
        if (parity_bit(m[p - 2]) != sys.mp_parity) return;
        std::vector<long long> n(p - 1, 0);
        for (int j = 0; j <= p - 2; ++j) {
            long long inc = 0;
            for (int k = 0; k <= p - 2; ++k)
                inc += sys.mats.inc_tilde[j][k] * m[k];
            long long nx2 = inc + (j == 0 ? 2 * L : 0) + u[j] - 2 * m[j];
            if (nx2 < 0 || parity_bit(nx2) != 0) return;
            n[j] = nx2 / 2;
        }
        out.push_back({std::move(n), m});
    };

    // Odometer over the (p-1)-dimensional box.
    int dim = p - 1;
    std::vector<long long> idx(dim, 0);
    while (true) {
        for (int j = 0; j < dim; ++j) m[j] = idx[j];
        try_m();
        int pos = dim - 1;
        while (pos >= 0 && ++idx[pos] > hi) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

namespace {

bool sol_less(const NMSolution& x, const NMSolution& y) {
    if (x.m != y.m) return x.m < y.m;
    return x.n < y.n;
}

std::string sol_str(const NMSolution& s) {
    std::string r = "n=(";
    for (std::size_t j = 0; j < s.n.size(); ++j)
        r += (j ? "," : "") + std::to_string(s.n[j]);
    r += ") m=(";
    for (std::size_t j = 0; j < s.m.size(); ++j)
        r += (j ? "," : "") + std::to_string(s.m[j]);
    return r + ")";
}

}  // namespace

VerifyReport verify_nm_oracle(int p, long long L_max) {
    VerifyReport rep;
    rep.suite = "nm-oracle";
    for (int a = 1; a <= p - 1; ++a) {
        for (int b = 1; b <= p - 1; ++b) {
            for (int i = 0; i <= 1; ++i) {
                for (long long L = 0; L <= L_max; ++L) {
                    SystemData sys = build_params(p, a, b, i, L);
                    auto fast = enumerate_solutions(sys, EnumMode::standard);
                    auto slow = enumerate_box_oracle(sys);
                    std::sort(fast.begin(), fast.end(), sol_less);
                    std::sort(slow.begin(), slow.end(), sol_less);
                    std::map<std::string, long long> params{
                        {"p", p}, {"a", a}, {"b", b}, {"i", i}, {"L", L}};
                    std::string detail;
                    if (fast.size() != slow.size()) {
                        detail = "count " + std::to_string(fast.size()) +
                                 " vs oracle " + std::to_string(slow.size());
                    } else {
                        for (std::size_t k = 0; k < fast.size(); ++k) {
                            if (!(fast[k].n == slow[k].n &&
                                  fast[k].m == slow[k].m)) {
                                detail = "solution " + std::to_string(k) +
                                         ": " + sol_str(fast[k]) +
                                         " vs oracle " + sol_str(slow[k]);
                                break;
                            }
                        }
                    }
                    check_true(rep, "nm-box-equiv", params, detail.empty(),
                               detail);
                    long long bad = 0;
                    for (const auto& sol : fast)
                        if (!check_consequences(sol, sys)) ++bad;
                    check_true(rep, "nm-consequences", params, bad == 0,
                               std::to_string(bad) + " solutions violate");
                }
            }
        }
    }
    rep.sort_instances();
    return rep;
}

}  // namespace qv
