#include "qv/qlaurent.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qv {

namespace {

void add_term(QLaurent::TermMap& m, Exp e, const Coeff& c) {
    if (c == 0) return;
    auto it = m.find(e);
    if (it == m.end()) {
        m.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

// Renders q^(e/4) with the exponent reduced, e.g. q, q^3, q^(1/2), q^(-3/4).
std::string power_str(Exp e) {
    if (e % 4 == 0) {
        Exp n = e / 4;
        if (n == 1) return "q";
        return "q^" + std::to_string(n);
    }
    Exp g = std::gcd(e < 0 ? -e : e, Exp{4});
    return "q^(" + std::to_string(e / g) + "/" + std::to_string(4 / g) + ")";
}

std::string terms_str(const QLaurent::TermMap& terms) {
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        Coeff a = c < 0 ? Coeff(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (e == 0) {
            out << a.str();
        } else {
            if (a != 1) out << a.str() << "*";
            out << power_str(e);
        }
    }
    return out.str();
}

std::string terms_json(const QLaurent::TermMap& terms) {
    std::ostringstream out;
    out << "[";
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) out << ",";
        first = false;
        out << "{\"exp_quarters\":" << e << ",\"coeff\":\"" << c.str() << "\"}";
    }
    out << "]";
    return out.str();
}

}  // namespace

QLaurent QLaurent::constant(Coeff c) {
    QLaurent p;
    if (c != 0) p.terms_.emplace(0, std::move(c));
    return p;
}

QLaurent QLaurent::monomial(Coeff c, Exp quarters) {
    QLaurent p;
    if (c != 0) p.terms_.emplace(quarters, std::move(c));
    return p;
}

QLaurent QLaurent::from_terms(TermMap terms) {
    QLaurent p;
    for (auto& [e, c] : terms)
        if (c != 0) p.terms_.emplace(e, std::move(c));
    return p;
}

Coeff QLaurent::coeff(Exp quarters) const {
    auto it = terms_.find(quarters);
    return it == terms_.end() ? Coeff(0) : it->second;
}

Exp QLaurent::min_exp() const {
    if (terms_.empty()) throw std::logic_error("min_exp of zero polynomial");
    return terms_.begin()->first;
}

Exp QLaurent::max_exp() const {
    if (terms_.empty()) throw std::logic_error("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

QLaurent QLaurent::operator-() const {
    QLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

QLaurent operator+(const QLaurent& a, const QLaurent& b) {
    QLaurent r = a;
    for (const auto& [e, c] : b.terms_) add_term(r.terms_, e, c);
    return r;
}

QLaurent operator-(const QLaurent& a, const QLaurent& b) {
    QLaurent r = a;
    for (const auto& [e, c] : b.terms_) add_term(r.terms_, e, -c);
    return r;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    QLaurent r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) add_term(r.terms_, ea + eb, ca * cb);
    return r;
}

QLaurent QLaurent::scaled(const Coeff& c) const {
    QLaurent r;
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

QLaurent QLaurent::shifted(Exp quarters) const {
    QLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + quarters, c);
    return r;
}

Coeff QLaurent::eval_at_one() const {
    Coeff s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

std::string QLaurent::str() const { return terms_str(terms_); }

QLaurent poch_poly(long long k) {
    if (k < 0) throw std::invalid_argument("poch_poly: negative k");
    QLaurent r = QLaurent::one();
    for (long long j = 1; j <= k; ++j)
        r *= QLaurent::one() - QLaurent::monomial(1, 4 * j);
    return r;
}

std::optional<QLaurent> try_divide_exact(const QLaurent& num, const QLaurent& den) {
    if (den.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    if (num.is_zero()) return QLaurent();
    const Exp den_min = den.min_exp();
    const Coeff& den_low = den.terms().begin()->second;
    // An exact quotient q satisfies max_exp(q) = max_exp(num) - max_exp(den).
    const Exp q_max = num.max_exp() - den.max_exp();
    QLaurent::TermMap quot;
    QLaurent::TermMap rem = num.terms();
    while (!rem.empty()) {
        auto low_it = rem.begin();
        const Exp e = low_it->first - den_min;
        if (e > q_max) return std::nullopt;
        if (low_it->second % den_low != 0) return std::nullopt;
        Coeff c = low_it->second / den_low;
        for (const auto& [de, dc] : den.terms()) {
            auto [it, inserted] = rem.try_emplace(de + e, 0);
            it->second -= dc * c;
            if (it->second == 0) rem.erase(it);
        }
        quot.emplace(e, std::move(c));
    }
    return QLaurent::from_terms(std::move(quot));
}

QLaurent divide_exact(const QLaurent& num, const QLaurent& den) {
    auto q = try_divide_exact(num, den);
    if (!q) throw std::domain_error("divide_exact: inexact division");
    return *q;
}

QSeries QSeries::from_laurent(const QLaurent& p, Exp cutoff) {
    QSeries s(cutoff);
    for (const auto& [e, c] : p.terms()) {
        if (e > cutoff) break;
        s.terms_.emplace(e, c);
    }
    return s;
}

Coeff QSeries::coeff(Exp quarters) const {
    if (quarters > cutoff_)
        throw std::logic_error("QSeries::coeff beyond cutoff");
    auto it = terms_.find(quarters);
    return it == terms_.end() ? Coeff(0) : it->second;
}

QSeries QSeries::operator-() const {
    QSeries r(cutoff_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.cutoff_, b.cutoff_));
    for (const auto& [e, c] : a.terms_) {
        if (e > r.cutoff_) break;
        add_term(r.terms_, e, c);
    }
    for (const auto& [e, c] : b.terms_) {
        if (e > r.cutoff_) break;
        add_term(r.terms_, e, c);
    }
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.cutoff_, b.cutoff_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            if (ea + eb > r.cutoff_) break;  // later eb only grow
            add_term(r.terms_, ea + eb, ca * cb);
        }
    }
    return r;
}

QSeries QSeries::scaled(const Coeff& c) const {
    QSeries r(cutoff_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

QSeries QSeries::shifted(Exp quarters) const {
    QSeries r(cutoff_ + quarters);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + quarters, c);
    return r;
}

QSeries QSeries::truncated(Exp cutoff) const {
    if (cutoff > cutoff_)
        throw std::logic_error("QSeries::truncated cannot raise the cutoff");
    QSeries r(cutoff);
    for (const auto& [e, c] : terms_) {
        if (e > cutoff) break;
        r.terms_.emplace(e, c);
    }
    return r;
}

std::string QSeries::str() const { return terms_str(terms_); }

QSeries pochhammer(long long k, Exp cutoff) {
    QSeries r = QSeries::from_laurent(QLaurent::one(), cutoff);
    if (k == kPochInf) {
        // Factors with 4j > cutoff cannot change kept coefficients.
        for (long long j = 1; 4 * j <= cutoff; ++j)
            r *= QSeries::from_laurent(
                QLaurent::one() - QLaurent::monomial(1, 4 * j), cutoff);
        return r;
    }
    if (k < 0) throw std::invalid_argument("pochhammer: negative k");
    for (long long j = 1; j <= k; ++j) {
        if (4 * j > cutoff) break;
        r *= QSeries::from_laurent(
            QLaurent::one() - QLaurent::monomial(1, 4 * j), cutoff);
    }
    return r;
}

QSeries series_inverse(const QSeries& x) {
    if (x.is_zero()) throw std::domain_error("series_inverse: zero series");
    const Exp e0 = x.terms().begin()->first;
    const Coeff& c0 = x.terms().begin()->second;
    if (c0 != 1 && c0 != -1)
        throw std::domain_error("series_inverse: lowest coefficient not a unit");
    // x = c0 q^(e0/4) u with u = 1 + O(q^(>0)); invert u by convolution.
    const Exp m = x.cutoff() - e0;  // u is known through exponent m
    QLaurent::TermMap u;            // strictly positive exponents of u
    for (const auto& [e, c] : x.terms())
        if (e != e0) u.emplace(e - e0, c0 == 1 ? c : Coeff(-c));
    QLaurent::TermMap y;  // inverse of u
    y.emplace(0, 1);
    for (Exp e = 1; e <= m; ++e) {
        Coeff s = 0;
        for (const auto& [d, ud] : u) {
            if (d > e) break;
            auto it = y.find(e - d);
            if (it != y.end()) s += ud * it->second;
        }
        if (s != 0) y.emplace(e, -s);
    }
    const Exp cut = x.cutoff() - 2 * e0;
    QLaurent::TermMap out;
    for (auto& [e, c] : y) {
        Exp re = e - e0;
        if (re > cut) break;
        out.emplace(re, c0 == 1 ? c : Coeff(-c));
    }
    return QSeries::from_laurent(QLaurent::from_terms(std::move(out)), cut);
}

QSeries mul_poly(const QSeries& s, const QLaurent& p) {
    Exp drop = p.is_zero() ? 0 : std::min<Exp>(0, p.min_exp());
    QSeries r(s.cutoff() + drop);
    QLaurent::TermMap acc;
    for (const auto& [ep, cp] : p.terms()) {
        for (const auto& [es, cs] : s.terms()) {
            if (ep + es > r.cutoff()) break;
            add_term(acc, ep + es, cp * cs);
        }
    }
    return QSeries::from_laurent(QLaurent::from_terms(std::move(acc)),
                                 r.cutoff());
}

std::string to_json_string(const QLaurent& p) { return terms_json(p.terms()); }

std::string to_json_string(const QSeries& s) {
    std::ostringstream out;
    out << "{\"cutoff_quarters\":" << s.cutoff()
        << ",\"terms\":" << terms_json(s.terms()) << "}";
    return out.str();
}

}  // namespace qv
