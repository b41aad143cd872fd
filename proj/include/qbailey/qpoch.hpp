#pragma once

#include "qbailey/factored.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qb {

/// (c*q^e; q)_m = prod_{i=0}^{m-1} (1 - c*q^{e+i}), extended to negative m by
/// (a; q)_m = 1/(a q^m; q)_{-m}.
inline FactoredQ qpoch_finite(const QFactorBase& base, std::int64_t m) {
    FactoredQ f;
    if (m >= 0) {
        for (std::int64_t i = 0; i < m; ++i)
            f.mul_binomial({base.scale, base.exp + Exponent::from_int(i), base.dw}, 1);
    } else {
        for (std::int64_t i = 0; i < -m; ++i)
            f.mul_binomial({base.scale, base.exp + Exponent::from_int(m + i), base.dw}, -1);
    }
    return f;
}

/// Partition Pochhammer (a; q, t)_lambda = prod_i (a t^{1-i}; q)_{lambda_i}
/// with t = q^k. Parts may be negative (lattice points); the negative-index
/// convention applies per part.
inline FactoredQ qpoch_partition(const QFactorBase& base, std::span<const std::int64_t> parts,
                                 std::int64_t k) {
    FactoredQ f;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        QFactorBase shifted{base.scale, base.exp + Exponent::from_int(k * (1 - (std::int64_t)(i + 1))), base.dw};
        f *= qpoch_finite(shifted, parts[i]);
    }
    return f;
}

/// Infinite product prod_{i>=0} (1 - c*q^{e+i*step}) truncated at T; factors
/// with exponent beyond T contribute 1. Finitely many factors with exponent
/// <= 0 are expanded exactly (a factor hitting q^0 with c = 1 makes the whole
/// product the zero series). Requires step > 0.
inline QSeries qpoch_infinite(const QFactorBase& base, Exponent T,
                              Exponent step = Exponent::from_int(1)) {
    if (!(step > Exponent())) throw std::domain_error("qpoch_infinite: step must be positive");
    if (rat_is_zero(base.scale)) return QSeries::one(T);
    std::vector<Exponent> exps;
    Exponent neg_shift; // total negative valuation contributed by e <= 0 factors
    for (Exponent e = base.exp; e <= T; e += step) {
        if (e == Exponent() && rat_is_one(base.scale)) return QSeries::zero(T);
        exps.push_back(e);
        if (e < Exponent()) neg_shift += e;
    }
    Exponent W = T - neg_shift; // working order; neg_shift <= 0
    QSeries s = QSeries::one(W);
    for (Exponent e : exps) {
        QPoly bin = QPoly::one();
        bin.add_term(e, -base.scale);
        s = (s * QSeries(bin, Exponent::infinity())).truncated(W);
    }
    return s.truncated(T);
}

} // namespace qb
