#pragma once

#include "qbailey/factored.hpp"

#include <map>
#include <stdexcept>

namespace qb {

/// Exact rational function in q^{1/2}: an expanded Laurent-polynomial
/// numerator over a factored denominator prod (1 - c*q^e)^mult (mult > 0,
/// e > 0). Sums of FactoredQ values live here, so W-function recursions and
/// matrix products stay exact with no truncation until the final lowering.
class QRat {
public:
    QRat() : num_(QPoly::one()) {}
    explicit QRat(QPoly num) : num_(std::move(num)) {}
    explicit QRat(const Rational& c) : num_(c) {}

    static QRat zero() { return QRat(QPoly()); }
    static QRat one() { return QRat(QPoly::one()); }

    /// Conversion from a product form; z_net > 0 gives the exact zero,
    /// z_net < 0 raises.
    static QRat from_factored(const FactoredQ& f) {
        if (f.is_pole()) throw std::domain_error("QRat: uncancelled pole");
        if (f.is_zero()) return zero();
        QRat r;
        r.num_ = QPoly(f.value_scalar(), f.monomial());
        for (auto& [b, m] : f.factors()) {
            QPoly bin = QPoly::one();
            bin.add_term(b.exp, -b.scale);
            if (m > 0) {
                for (std::int64_t i = 0; i < m; ++i) r.num_ *= bin;
            } else {
                r.den_[b] = -m;
            }
        }
        r.reduce();
        return r;
    }

    const QPoly& num() const { return num_; }
    const std::map<QFactorBase, std::int64_t>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    QRat& operator+=(const QRat& o) {
        // common denominator: this.num * (o.den \ this.den) + o.num * (this.den \ o.den)
        QPoly a = num_, b = o.num_;
        std::map<QFactorBase, std::int64_t> d = den_;
        for (auto& [base, m] : o.den_) {
            auto it = d.find(base);
            std::int64_t have = it == d.end() ? 0 : it->second;
            if (m > have) d[base] = m;
        }
        for (auto& [base, m] : d) {
            auto it = den_.find(base);
            std::int64_t ma = m - (it == den_.end() ? 0 : it->second);
            auto jt = o.den_.find(base);
            std::int64_t mb = m - (jt == o.den_.end() ? 0 : jt->second);
            QPoly bin = QPoly::one();
            bin.add_term(base.exp, -base.scale);
            for (std::int64_t i = 0; i < ma; ++i) a *= bin;
            for (std::int64_t i = 0; i < mb; ++i) b *= bin;
        }
        num_ = a + b;
        den_ = std::move(d);
        reduce();
        return *this;
    }
    friend QRat operator+(QRat a, const QRat& b) { a += b; return a; }
    QRat operator-() const {
        QRat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    QRat& operator-=(const QRat& o) { return *this += -o; }
    friend QRat operator-(QRat a, const QRat& b) { a -= b; return a; }

    QRat& operator*=(const QRat& o) {
        num_ *= o.num_;
        for (auto& [b, m] : o.den_) den_[b] += m;
        reduce();
        return *this;
    }
    friend QRat operator*(QRat a, const QRat& b) { a *= b; return a; }

    QRat& operator*=(const FactoredQ& f) { return *this *= from_factored(f); }

    /// Division by a product form (the only divisors that arise).
    QRat& operator/=(const FactoredQ& f) {
        if (f.is_zero()) throw std::domain_error("QRat: division by exact zero");
        return *this *= from_factored(f.inverse());
    }

    friend bool operator==(const QRat& a, const QRat& b) {
        if (a.num_.is_zero() || b.num_.is_zero()) return a.num_.is_zero() && b.num_.is_zero();
        // cross-multiply after cancelling the common denominator part
        QPoly lhs = a.num_, rhs = b.num_;
        for (auto& [base, m] : b.den_) {
            auto it = a.den_.find(base);
            std::int64_t common = it == a.den_.end() ? 0 : std::min(it->second, m);
            QPoly bin = QPoly::one();
            bin.add_term(base.exp, -base.scale);
            for (std::int64_t i = 0; i < m - common; ++i) lhs *= bin;
        }
        for (auto& [base, m] : a.den_) {
            auto it = b.den_.find(base);
            std::int64_t common = it == b.den_.end() ? 0 : std::min(it->second, m);
            QPoly bin = QPoly::one();
            bin.add_term(base.exp, -base.scale);
            for (std::int64_t i = 0; i < m - common; ++i) rhs *= bin;
        }
        return lhs == rhs;
    }
    friend bool operator!=(const QRat& a, const QRat& b) { return !(a == b); }

    /// Exact series expansion truncated at T.
    QSeries lower(Exponent T) const {
        if (num_.is_zero()) return QSeries::zero(T);
        // denominator binomials have valuation 0, so the result's valuation is
        // that of the numerator
        if (num_.valuation() > T) return QSeries::zero(T);
        Exponent W = T - num_.valuation();
        QSeries s(num_, Exponent::infinity());
        for (auto& [b, m] : den_) {
            QPoly bin = QPoly::one();
            bin.add_term(b.exp, -b.scale);
            QSeries inv = QSeries(bin, W).inverted();
            for (std::int64_t i = 0; i < m; ++i) s = (s * inv).truncated(W + num_.valuation());
        }
        return s.truncated(T);
    }

    std::string str() const {
        std::string s = "(" + num_.str() + ")";
        for (auto& [b, m] : den_) s += "/(1-" + b.str() + ")^" + std::to_string(m);
        return s;
    }

private:
    void reduce() {
        if (num_.is_zero()) { den_.clear(); return; }
        for (auto it = den_.begin(); it != den_.end();) {
            while (it->second > 0 && num_.try_divide_binomial(it->first.scale, it->first.exp))
                --it->second;
            if (it->second == 0)
                it = den_.erase(it);
            else
                ++it;
        }
    }

    QPoly num_;
    std::map<QFactorBase, std::int64_t> den_; // multiplicities > 0
};

} // namespace qb
