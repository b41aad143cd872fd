#pragma once

#include "qbailey/exponent.hpp"
#include "qbailey/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace qb {

/// Exact Laurent polynomial in q^{1/2}: a finite map Exponent -> Rational
/// with no stored zero coefficients.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(const Rational& c, Exponent e = Exponent()) {
        if (!rat_is_zero(c)) coeffs_[e] = c;
    }

    static QPoly one() { return QPoly(Rational(1)); }
    static QPoly monomial(Exponent e) { return QPoly(Rational(1), e); }

    const std::map<Exponent, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Exponent valuation() const {
        if (is_zero()) throw std::logic_error("QPoly::valuation of zero");
        return coeffs_.begin()->first;
    }
    Exponent degree() const {
        if (is_zero()) throw std::logic_error("QPoly::degree of zero");
        return coeffs_.rbegin()->first;
    }

    Rational coeff(Exponent e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void add_term(Exponent e, const Rational& c) {
        if (rat_is_zero(c)) return;
        auto [it, inserted] = coeffs_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (rat_is_zero(it->second)) coeffs_.erase(it);
        }
    }

    QPoly& operator+=(const QPoly& o) {
        for (auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }
    QPoly& operator-=(const QPoly& o) {
        for (auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }
    friend QPoly operator+(QPoly a, const QPoly& b) { a += b; return a; }
    friend QPoly operator-(QPoly a, const QPoly& b) { a -= b; return a; }
    QPoly operator-() const {
        QPoly r;
        for (auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        QPoly r;
        for (auto& [ea, ca] : a.coeffs_)
            for (auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    QPoly& operator*=(const QPoly& o) { *this = *this * o; return *this; }

    QPoly scaled(const Rational& c) const {
        QPoly r;
        if (rat_is_zero(c)) return r;
        for (auto& [e, v] : coeffs_) r.coeffs_[e] = v * c;
        return r;
    }
    QPoly shifted(Exponent d) const {
        QPoly r;
        for (auto& [e, v] : coeffs_) r.coeffs_[e + d] = v;
        return r;
    }
    QPoly truncated(Exponent T) const {
        QPoly r;
        for (auto& [e, v] : coeffs_) {
            if (e > T) break;
            r.coeffs_[e] = v;
        }
        return r;
    }

    /// Exact division by the binomial (1 - c q^e); returns false (and leaves
    /// *this untouched) when the division has a remainder.
    bool try_divide_binomial(const Rational& c, Exponent e) {
        if (rat_is_zero(c)) return true; // dividing by 1
        if (is_zero()) return true;
        QPoly rem = *this, quot;
        Exponent top = rem.degree();
        while (!rem.is_zero()) {
            Exponent v = rem.valuation();
            if (v > top) return false;
            Rational a = rem.coeffs_.begin()->second;
            quot.add_term(v, a);
            rem.coeffs_.erase(rem.coeffs_.begin());
            rem.add_term(v + e, a * c);
        }
        *this = quot;
        return true;
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (auto& [e, c] : coeffs_) {
            if (!s.empty()) s += " + ";
            s += rat_str(c);
            if (e != Exponent()) s += "*q^" + e.str();
        }
        return s;
    }

private:
    std::map<Exponent, Rational> coeffs_;
};

/// Truncated Laurent series: coefficients are exact for every exponent
/// <= truncation_order, unknown beyond it. Equality is defined only up to
/// the smaller truncation order.
class QSeries {
public:
    QSeries() : trunc_(Exponent::infinity()) {}
    explicit QSeries(QPoly p, Exponent T = Exponent::infinity())
        : poly_(p.truncated(T)), trunc_(T) {}
    explicit QSeries(const Rational& c, Exponent T = Exponent::infinity())
        : poly_(c), trunc_(T) {}

    static QSeries zero(Exponent T) { return QSeries(QPoly(), T); }
    static QSeries one(Exponent T = Exponent::infinity()) { return QSeries(QPoly::one(), T); }

    const QPoly& poly() const { return poly_; }
    Exponent truncation_order() const { return trunc_; }
    bool is_zero() const { return poly_.is_zero(); }
    Rational coeff(Exponent e) const {
        if (e > trunc_) throw std::logic_error("QSeries::coeff beyond truncation order");
        return poly_.coeff(e);
    }
    /// Valuation, with +infinity for the (truncated) zero series.
    Exponent valuation_or_inf() const {
        return poly_.is_zero() ? Exponent::infinity() : poly_.valuation();
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        Exponent T = min(a.trunc_, b.trunc_);
        return QSeries(a.poly_ + b.poly_, T);
    }
    friend QSeries operator-(const QSeries& a, const QSeries& b) {
        Exponent T = min(a.trunc_, b.trunc_);
        return QSeries(a.poly_ - b.poly_, T);
    }
    QSeries operator-() const { return QSeries(-poly_, trunc_); }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        Exponent T = min(a.trunc_ + b.valuation_or_inf(), b.trunc_ + a.valuation_or_inf());
        return QSeries(a.poly_ * b.poly_, T);
    }
    QSeries& operator*=(const QSeries& o) { *this = *this * o; return *this; }
    QSeries& operator+=(const QSeries& o) { *this = *this + o; return *this; }
    QSeries& operator-=(const QSeries& o) { *this = *this - o; return *this; }

    QSeries scaled(const Rational& c) const { return QSeries(poly_.scaled(c), trunc_); }
    QSeries shifted(Exponent d) const { return QSeries(poly_.shifted(d), trunc_ + d); }
    QSeries truncated(Exponent T) const { return QSeries(poly_, min(T, trunc_)); }

    /// Multiplicative inverse. A single-term series inverts exactly; otherwise
    /// the result is computed to order trunc - 2*valuation so that
    /// a * invert(a) = 1 up to the input's truncation order.
    QSeries inverted() const {
        if (poly_.is_zero()) throw std::domain_error("QSeries: not invertible (zero series)");
        Exponent v = poly_.valuation();
        if (poly_.coeffs().size() == 1) {
            Rational c = Rational(1) / poly_.coeffs().begin()->second;
            return QSeries(QPoly(c, -v), trunc_.is_infinite() ? trunc_ : trunc_ - 2 * v);
        }
        if (trunc_.is_infinite())
            throw std::domain_error("QSeries: inverse of a multi-term exact polynomial needs a truncation order");
        // normalize to constant term 1 at exponent 0
        QPoly u = poly_.shifted(-v);
        Rational c0 = u.coeffs().begin()->second;
        u = u.scaled(Rational(1) / c0);
        Exponent T = trunc_ - 2 * v;
        QPoly inv = QPoly::one();
        QPoly rest = u - QPoly::one(); // valuation > 0
        // long division: inv so that u*inv = 1 + O(q^{>T})
        QPoly residual = rest; // u*inv - 1 so far
        while (!residual.is_zero() && residual.valuation() <= T) {
            Exponent e = residual.valuation();
            Rational a = residual.coeffs().begin()->second;
            inv.add_term(e, -a);
            residual -= QPoly(a, e);
            residual -= rest.shifted(e).scaled(a).truncated(T);
            residual = residual.truncated(T);
        }
        return QSeries(inv.scaled(Rational(1) / c0).shifted(-v), T);
    }

    /// Exact agreement of coefficients up to min truncation order.
    friend bool operator==(const QSeries& a, const QSeries& b) {
        Exponent T = min(a.trunc_, b.trunc_);
        return a.poly_.truncated(T) == b.poly_.truncated(T);
    }
    friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

    std::string str() const {
        std::string s = poly_.str();
        if (!trunc_.is_infinite()) s += " + O(q^>" + trunc_.str() + ")";
        return s;
    }

private:
    QPoly poly_;
    Exponent trunc_;
};

inline QSeries series_add(const QSeries& a, const QSeries& b) { return a + b; }
inline QSeries series_mul(const QSeries& a, const QSeries& b) { return a * b; }
inline QSeries series_invert(const QSeries& a) { return a.inverted(); }

} // namespace qb
