#pragma once

#include "qbailey/qseries.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace qb {

/// The scalar c*q^e: every parameter in the system (a, b, r, sigma, rho, z,
/// specialized arguments) is a value of this shape on the half-integer grid.
///
/// dw is the deformation weight: evaluating at a point where binomial factors
/// (1 - c*q^e) vanish is done as a limit along a generic multiplicative
/// deformation base -> base * exp(eps * dw), so a vanishing factor behaves
/// like -dw * eps. dw = 0 means the base is rigid (never deformed); it does
/// not participate in equality or ordering since it only matters at the
/// vanishing point.
struct QFactorBase {
    Rational scale; // c
    Exponent exp;   // e
    Rational dw;    // deformation weight

    QFactorBase() : scale(1), exp(), dw(0) {}
    QFactorBase(Rational c, Exponent e, Rational w = Rational(0))
        : scale(std::move(c)), exp(e), dw(std::move(w)) {}

    static QFactorBase q(Exponent e = Exponent::from_int(1)) { return {Rational(1), e}; }
    static QFactorBase q_int(std::int64_t n) { return {Rational(1), Exponent::from_int(n)}; }
    static QFactorBase one() { return {Rational(1), Exponent()}; }
    static QFactorBase zero() { return {Rational(0), Exponent()}; }

    bool is_zero() const { return rat_is_zero(scale); }
    bool is_one() const { return rat_is_one(scale) && exp == Exponent(); }

    friend QFactorBase operator*(const QFactorBase& a, const QFactorBase& b) {
        return {a.scale * b.scale, a.exp + b.exp, a.dw + b.dw};
    }
    QFactorBase inverse() const {
        if (is_zero()) throw std::domain_error("QFactorBase: inverse of zero");
        return {Rational(1) / scale, -exp, -dw};
    }
    QFactorBase pow(std::int64_t m) const {
        if (m == 0) return one();
        return {rat_pow(scale, m), exp * m, dw * Rational(m)};
    }
    QFactorBase negated() const { return {-scale, exp, dw}; }

    friend bool operator==(const QFactorBase& a, const QFactorBase& b) {
        return a.exp == b.exp && a.scale == b.scale;
    }
    friend bool operator<(const QFactorBase& a, const QFactorBase& b) {
        if (a.exp != b.exp) return a.exp < b.exp;
        return rat_cmp(a.scale, b.scale) < 0;
    }

    std::string str() const {
        std::string s = rat_str(scale);
        if (exp != Exponent()) s += "*q^" + exp.str();
        return s;
    }
};

/// Exact product form: scalar * q^monomial * prod (1 - c*q^e)^mult, with the
/// exact-zero factor (1 - q^0) tracked by its net multiplicity z_net.
///
/// Canonical form: stored factor bases have c != 0 and e > 0 (factors with
/// e <= 0 are normalized into scalar/monomial/z_net at insertion).
/// z_net > 0 means the value is exactly 0; z_net < 0 is a pole and lowering
/// raises an error until the caller cancels it.
class FactoredQ {
public:
    FactoredQ() : scalar_(1) {}
    explicit FactoredQ(Rational scalar, Exponent monomial = Exponent())
        : scalar_(std::move(scalar)), monomial_(monomial) {
        if (rat_is_zero(scalar_)) { scalar_ = 1; z_net_ = 1; }
    }

    static FactoredQ one() { return FactoredQ(); }
    static FactoredQ zero() {
        FactoredQ f;
        f.z_net_ = 1;
        return f;
    }
    static FactoredQ from_base(const QFactorBase& b) { // the value c*q^e itself
        if (b.is_zero()) return zero();
        return FactoredQ(b.scale, b.exp);
    }
    /// (1 - c*q^e)^mult
    static FactoredQ binomial(const QFactorBase& b, std::int64_t mult = 1) {
        FactoredQ f;
        f.mul_binomial(b, mult);
        return f;
    }

    const Rational& scalar() const { return scalar_; }
    Exponent monomial() const { return monomial_; }
    std::int64_t z_net() const { return z_net_; }
    std::int64_t eps_deg() const { return eps_deg_; }
    const Rational& eps_scale() const { return eps_scale_; }
    /// Scalar with the epsilon-limit prefactor folded in (valid at eps_deg 0).
    Rational value_scalar() const { return scalar_ * eps_scale_; }
    const std::map<QFactorBase, std::int64_t>& factors() const { return factors_; }

    // a rigid zero/pole dominates any epsilon-order factors: it stays exactly
    // 0 (resp. infinite) along the whole deformation
    bool is_zero() const { return z_net_ > 0 || (z_net_ == 0 && eps_deg_ > 0); }
    bool is_pole() const { return z_net_ < 0 || (z_net_ == 0 && eps_deg_ < 0); }

    void mul_scalar(const Rational& c) {
        if (rat_is_zero(c)) { z_net_ += 1; return; }
        scalar_ *= c;
    }
    void mul_monomial(Exponent e) { monomial_ += e; }
    void mul_base(const QFactorBase& b, std::int64_t power = 1) { // times (c*q^e)^power
        if (b.is_zero()) {
            if (power < 0) throw std::domain_error("FactoredQ: zero base to a negative power");
            if (power > 0) z_net_ += 1;
            return;
        }
        mul_scalar(rat_pow(b.scale, power));
        mul_monomial(b.exp * power);
    }

    /// Multiply by (1 - c*q^e)^mult, canonicalizing e <= 0:
    ///   e <  0: (1 - c q^e) = (-c) q^e (1 - (1/c) q^{-e})
    ///   e == 0: (1 - c) is a scalar; c == 1 feeds z_net.
    void mul_binomial(QFactorBase b, std::int64_t mult) {
        if (mult == 0) return;
        if (b.is_zero()) return; // (1 - 0) = 1
        if (b.exp < Exponent()) {
            mul_scalar(rat_pow(-b.scale, mult));
            mul_monomial(b.exp * mult);
            b = {Rational(1) / b.scale, -b.exp, -b.dw};
        }
        if (b.exp == Exponent()) {
            if (rat_is_one(b.scale)) {
                if (rat_is_zero(b.dw)) {
                    z_net_ += mult;
                } else {
                    // (1 - exp(eps*dw))^mult ~ (-dw*eps)^mult
                    eps_deg_ += mult;
                    eps_scale_ *= rat_pow(-b.dw, mult);
                }
            } else
                mul_scalar(rat_pow(Rational(1) - b.scale, mult));
            return;
        }
        auto [it, inserted] = factors_.emplace(b, mult);
        if (!inserted) {
            it->second += mult;
            if (it->second == 0) factors_.erase(it);
        }
    }

    FactoredQ& operator*=(const FactoredQ& o) {
        scalar_ *= o.scalar_;
        monomial_ += o.monomial_;
        z_net_ += o.z_net_;
        eps_deg_ += o.eps_deg_;
        eps_scale_ *= o.eps_scale_;
        for (auto& [b, m] : o.factors_) {
            auto [it, inserted] = factors_.emplace(b, m);
            if (!inserted) {
                it->second += m;
                if (it->second == 0) factors_.erase(it);
            }
        }
        return *this;
    }
    friend FactoredQ operator*(FactoredQ a, const FactoredQ& b) { a *= b; return a; }

    FactoredQ inverse() const {
        FactoredQ r;
        r.scalar_ = Rational(1) / scalar_;
        r.monomial_ = -monomial_;
        r.z_net_ = -z_net_;
        r.eps_deg_ = -eps_deg_;
        r.eps_scale_ = Rational(1) / eps_scale_;
        for (auto& [b, m] : factors_) r.factors_[b] = -m;
        return r;
    }
    FactoredQ pow(std::int64_t m) const {
        FactoredQ r;
        r.scalar_ = rat_pow(scalar_, m);
        r.monomial_ = monomial_ * m;
        r.z_net_ = z_net_ * m;
        r.eps_deg_ = eps_deg_ * m;
        r.eps_scale_ = rat_pow(eps_scale_, m);
        for (auto& [b, k] : factors_) {
            if (k * m != 0) r.factors_[b] = k * m;
        }
        return r;
    }
    friend FactoredQ operator/(FactoredQ a, const FactoredQ& b) { a *= b.inverse(); return a; }

    /// Canonical-form equality (same scalar, monomial, z_net and factor multiset).
    friend bool operator==(const FactoredQ& a, const FactoredQ& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.z_net_ == b.z_net_ && a.eps_deg_ == b.eps_deg_ &&
               a.monomial_ == b.monomial_ && a.value_scalar() == b.value_scalar() &&
               a.factors_ == b.factors_;
    }

    /// Exact series expansion truncated at T. Zero values (z_net > 0) lower to
    /// the zero series; poles raise.
    QSeries lower(Exponent T) const {
        if (is_pole()) throw std::domain_error("FactoredQ: pole (z_net < 0), cancel before lowering");
        if (is_zero()) return QSeries::zero(T);
        // working order: lowering happens at T - monomial so the final shift
        // by q^monomial lands the truncation exactly at T
        Exponent W = T - monomial_;
        QSeries s = QSeries::one(W);
        for (auto& [b, m] : factors_) {
            QPoly bin = QPoly::one();
            bin.add_term(b.exp, -b.scale);
            if (m > 0) {
                for (std::int64_t i = 0; i < m; ++i) s *= QSeries(bin, Exponent::infinity());
            } else {
                QSeries inv = QSeries(bin, W).inverted();
                for (std::int64_t i = 0; i < -m; ++i) s *= inv;
            }
            s = s.truncated(W);
        }
        return s.scaled(value_scalar()).shifted(monomial_).truncated(T);
    }

    std::string str() const {
        std::string s = rat_str(scalar_);
        if (monomial_ != Exponent()) s += "*q^" + monomial_.str();
        if (z_net_ != 0) s += "*(1-q^0)^" + std::to_string(z_net_);
        if (eps_deg_ != 0) s += "*(" + rat_str(eps_scale_) + "*eps^" + std::to_string(eps_deg_) + ")";
        for (auto& [b, m] : factors_)
            s += "*(1-" + b.str() + ")^" + std::to_string(m);
        return s;
    }

private:
    Rational scalar_;
    Exponent monomial_;
    std::int64_t z_net_ = 0;
    std::int64_t eps_deg_ = 0;
    Rational eps_scale_ = Rational(1);
    std::map<QFactorBase, std::int64_t> factors_;
};

} // namespace qb
