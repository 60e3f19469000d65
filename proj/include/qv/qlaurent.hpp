#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace qv {

using Coeff = boost::multiprecision::cpp_int;

// Exponents live on the quarter-integer lattice and are stored in units of
// q^(1/4): Exp e represents the monomial q^(e/4).
using Exp = long long;

// Exact sparse Laurent polynomial in q with arbitrary-precision integer
// coefficients. Canonical form: no zero coefficients, terms ordered by
// ascending exponent. Value type; all operations return new objects.
class QLaurent {
public:
    using TermMap = std::map<Exp, Coeff>;

    QLaurent() = default;  // zero polynomial

    static QLaurent constant(Coeff c);
    static QLaurent one() { return constant(1); }
    // c * q^(quarters/4)
    static QLaurent monomial(Coeff c, Exp quarters);
    static QLaurent from_terms(TermMap terms);  // drops zero coefficients

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    Coeff coeff(Exp quarters) const;
    // min_exp/max_exp require a nonzero polynomial.
    Exp min_exp() const;
    Exp max_exp() const;

    QLaurent operator-() const;
    friend QLaurent operator+(const QLaurent& a, const QLaurent& b);
    friend QLaurent operator-(const QLaurent& a, const QLaurent& b);
    friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
    QLaurent& operator+=(const QLaurent& o) { return *this = *this + o; }
    QLaurent& operator-=(const QLaurent& o) { return *this = *this - o; }
    QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

    QLaurent scaled(const Coeff& c) const;
    // Multiplies by q^(quarters/4).
    QLaurent shifted(Exp quarters) const;

    Coeff eval_at_one() const;

    bool operator==(const QLaurent&) const = default;

    // Human-readable form, e.g. "1 - q + 2*q^(3/2)". Zero prints as "0".
    std::string str() const;

private:
    TermMap terms_;
};

// (q)_k = prod_{j=1..k} (1 - q^j) as an exact polynomial. k must be >= 0.
QLaurent poch_poly(long long k);

// Exact division: returns num/den when the quotient is again a Laurent
// polynomial with integer coefficients, std::nullopt otherwise.
// den must be nonzero.
std::optional<QLaurent> try_divide_exact(const QLaurent& num, const QLaurent& den);

// As above but throws std::domain_error when the division is not exact.
QLaurent divide_exact(const QLaurent& num, const QLaurent& den);

// Truncated q-expansion: terms with exponent <= cutoff (inclusive, quarter
// units). The cutoff is explicit everywhere; binary operations produce the
// minimum of the operand cutoffs.
class QSeries {
public:
    explicit QSeries(Exp cutoff) : cutoff_(cutoff) {}
    static QSeries from_laurent(const QLaurent& p, Exp cutoff);

    Exp cutoff() const { return cutoff_; }
    bool is_zero() const { return terms_.empty(); }
    const QLaurent::TermMap& terms() const { return terms_; }
    Coeff coeff(Exp quarters) const;

    QSeries operator-() const;
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
    QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
    QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

    QSeries scaled(const Coeff& c) const;
    QSeries shifted(Exp quarters) const;
    QSeries truncated(Exp cutoff) const;  // cutoff must not exceed current

    // Same cutoff and identical terms.
    bool operator==(const QSeries&) const = default;

    std::string str() const;

private:
    Exp cutoff_;
    QLaurent::TermMap terms_;  // all exponents <= cutoff_
};

// Sentinel for the infinite Pochhammer product.
inline constexpr long long kPochInf = -1;

// (q)_k truncated at cutoff. k >= 0 finite, or kPochInf for (q)_infinity
// (factors (1 - q^j) with 4j > cutoff cannot affect kept terms and are
// skipped). Negative finite k is rejected.
QSeries pochhammer(long long k, Exp cutoff);

// Multiplicative inverse of a series whose lowest term has coefficient +-1.
// The result satisfies x * series_inverse(x) == 1 up to the cutoff.
QSeries series_inverse(const QSeries& x);

// Multiply a series by an exact Laurent polynomial. A negative minimum
// exponent of p pulls unknown tail coefficients of s downward, so the result
// cutoff honestly shrinks to s.cutoff() + min(0, p.min_exp()).
QSeries mul_poly(const QSeries& s, const QLaurent& p);

// Serialization: ascending list of {"exp_quarters": int, "coeff": "<decimal>"}.
// QSeries additionally wraps as {"cutoff_quarters": int, "terms": [...]}.
std::string to_json_string(const QLaurent& p);
std::string to_json_string(const QSeries& s);

}  // namespace qv
