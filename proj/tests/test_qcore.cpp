#include "doctest.h"

#include "qbailey/qpoch.hpp"
#include "qbailey/qrat.hpp"

#include <random>

using namespace qb;

namespace {

Exponent E(std::int64_t n) { return Exponent::from_int(n); }
Exponent Eh(std::int64_t h) { return Exponent::from_half(h); }

QPoly poly(std::initializer_list<std::pair<std::int64_t, std::int64_t>> terms) {
    QPoly p;
    for (auto& [e, c] : terms) p.add_term(E(e), rat(c));
    return p;
}

QSeries random_series(std::mt19937& rng, Exponent T, bool invertible) {
    std::uniform_int_distribution<int> coef(-4, 4), den(1, 3);
    QPoly p;
    for (std::int64_t e = invertible ? 0 : -2; e <= T.half_units() / 2; ++e) {
        int c = coef(rng);
        if (invertible && e == 0 && c == 0) c = 1;
        p.add_term(E(e), rat(c, den(rng)));
    }
    return QSeries(p, T);
}

} // namespace

TEST_CASE("series_add basics") {
    QSeries a(poly({{0, 1}, {1, 1}}));
    QSeries b(poly({{0, 1}, {1, -1}}));
    CHECK(series_add(a, b) == QSeries(poly({{0, 2}})));
    CHECK(series_add(a, QSeries::zero(E(20))) == a);
    QPoly half;
    half.add_term(Eh(1), rat(1));
    QPoly two_half;
    two_half.add_term(Eh(1), rat(2));
    CHECK(series_add(QSeries(half), QSeries(half)) == QSeries(two_half));
}

TEST_CASE("series_mul basics") {
    QSeries a(poly({{0, 1}, {1, 1}}));
    QSeries b(poly({{0, 1}, {1, -1}}));
    CHECK(series_mul(a, b) == QSeries(poly({{0, 1}, {2, -1}})));
    CHECK(series_mul(a, QSeries::one()) == a);
    QSeries f1(poly({{0, 1}, {1, -1}}));
    QSeries f2(poly({{0, 1}, {2, -1}}));
    QSeries f3(poly({{0, 1}, {3, -1}}));
    CHECK(f1 * f2 * f3 == QSeries(poly({{0, 1}, {1, -1}, {2, -1}, {4, 1}, {5, 1}, {6, -1}})));
}

TEST_CASE("series_invert basics") {
    QSeries g = QSeries(poly({{0, 1}, {1, -1}}), E(10)).inverted();
    for (std::int64_t e = 0; e <= 10; ++e) CHECK(g.coeff(E(e)) == 1);

    // invert(q(1-q)) = q^{-1}(1 + q + ...)
    QSeries h = QSeries(poly({{1, 1}, {2, -1}}), E(10)).inverted();
    CHECK(h.coeff(E(-1)) == 1);
    CHECK(h.coeff(E(0)) == 1);
    CHECK(h.coeff(E(1)) == 1);

    CHECK(QSeries(rat(2)).inverted() == QSeries(rat(1, 2)));
    CHECK_THROWS(QSeries::zero(E(5)).inverted());
}

TEST_CASE("series ring axioms and inverse property") {
    std::mt19937 rng(12345);
    Exponent T = E(20);
    for (int it = 0; it < 60; ++it) {
        QSeries a = random_series(rng, T, false);
        QSeries b = random_series(rng, T, false);
        QSeries c = random_series(rng, T, false);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) + c == a + (b + c));
    }
    for (int it = 0; it < 200; ++it) {
        QSeries f = random_series(rng, T, true);
        QSeries p = f * f.inverted();
        CHECK(p == QSeries::one(p.truncation_order()));
        CHECK(p.truncation_order() >= E(20));
    }
}

TEST_CASE("qpoch_finite definition and conventions") {
    // (q; q)_2 = (1-q)(1-q^2)
    FactoredQ f = qpoch_finite(QFactorBase::q_int(1), 2);
    CHECK(f.lower(E(5)) == QSeries(poly({{0, 1}, {1, -1}, {2, -1}, {3, 1}})));
    CHECK(qpoch_finite(QFactorBase::q_int(3), 0) == FactoredQ::one());
    // (q^2; q)_{-1} = 1/(1-q)
    FactoredQ g = qpoch_finite(QFactorBase::q_int(2), -1);
    CHECK(g * qpoch_finite(QFactorBase::q_int(1), 1) == FactoredQ::one());
}

TEST_CASE("pochhammer cocycle and negative-index consistency") {
    QFactorBase a{rat(2, 3), E(1)};
    for (std::int64_t m = -5; m <= 5; ++m) {
        for (std::int64_t mp = -5; mp <= 5; ++mp) {
            QFactorBase aq{a.scale, a.exp + E(m)};
            CHECK(qpoch_finite(a, m) * qpoch_finite(aq, mp) == qpoch_finite(a, m + mp));
        }
        QFactorBase aq{a.scale, a.exp + E(m)};
        CHECK(qpoch_finite(a, m) * qpoch_finite(aq, -m) == FactoredQ::one());
    }
}

TEST_CASE("qpoch_infinite") {
    QSeries euler = qpoch_infinite(QFactorBase::q_int(1), E(7));
    CHECK(euler == QSeries(poly({{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}}), E(7)));
    CHECK(qpoch_infinite(QFactorBase::q_int(8), E(7)) == QSeries::one(E(7)));
    QSeries two = qpoch_infinite({rat(2), E(1)}, E(2));
    CHECK(two == QSeries(poly({{0, 1}, {1, -2}, {2, -2}}), E(2)));
    // a factor hitting exactly 1 makes the product the zero series
    CHECK(qpoch_infinite(QFactorBase::q_int(-2), E(5)).is_zero());
}

TEST_CASE("qpoch_infinite splitting property") {
    QFactorBase a{rat(1), E(1)};
    Exponent T = E(15);
    for (std::int64_t m = 1; m <= 10; ++m) {
        QFactorBase aq{a.scale, a.exp + E(m)};
        QSeries lhs = qpoch_infinite(a, T);
        QSeries rhs = qpoch_finite(a, m).lower(T) * qpoch_infinite(aq, T);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("qpoch_partition") {
    // base q^3, lambda=(2,1), k=1 -> (q^3;q)_2 (q^2;q)_1
    std::vector<std::int64_t> lam{2, 1};
    FactoredQ f = qpoch_partition(QFactorBase::q_int(3), lam, 1);
    FactoredQ expect = qpoch_finite(QFactorBase::q_int(3), 2) * qpoch_finite(QFactorBase::q_int(2), 1);
    CHECK(f == expect);
    CHECK(qpoch_partition(QFactorBase::q_int(1), std::vector<std::int64_t>{}, 1) == FactoredQ::one());
    std::vector<std::int64_t> one{1};
    CHECK(qpoch_partition(QFactorBase::q_int(1), one, 0) ==
          qpoch_finite(QFactorBase::q_int(1), 1));
}

TEST_CASE("factored_lower") {
    FactoredQ f(rat(3), E(2));
    CHECK(f.lower(E(5)) == QSeries(poly({{2, 3}})));

    FactoredQ g = qpoch_finite(QFactorBase::q_int(1), 1) * qpoch_finite(QFactorBase::q_int(1), 1).inverse();
    CHECK(g.lower(E(5)) == QSeries::one(E(5)));

    // zero-factor bookkeeping: (1-q^0) X / (1-q^0) = X
    FactoredQ x = qpoch_finite(QFactorBase::q_int(1), 3);
    FactoredQ z = FactoredQ::binomial(QFactorBase::one(), 1);
    FactoredQ h = z * x * z.inverse();
    CHECK(h.lower(E(8)) == x.lower(E(8)));

    CHECK_THROWS(z.inverse().lower(E(3)));
    CHECK(FactoredQ::zero().lower(E(4)).is_zero());
}

TEST_CASE("negative-part pochhammer reciprocal vanishes") {
    // 1/(q)_m = 0 for m < 0: (q)_{-2} is a pole, so its reciprocal is zero
    FactoredQ f = qpoch_finite(QFactorBase::q_int(1), -2);
    CHECK(f.is_pole());
    CHECK(f.inverse().is_zero());
}

TEST_CASE("QRat arithmetic and equality") {
    QRat a = QRat::from_factored(qpoch_finite(QFactorBase::q_int(1), 3).inverse()); // 1/(q)_3
    QRat b = QRat::from_factored(qpoch_finite(QFactorBase::q_int(1), 2));  // (q)_2
    QRat p = a * b; // 1/(1-q^3)
    CHECK(p == QRat::from_factored(FactoredQ::binomial(QFactorBase::q_int(3), -1)));

    QRat geo = QRat::from_factored(FactoredQ::binomial(QFactorBase::q_int(1), -1));
    QRat one_plus = QRat(poly({{0, 1}, {1, 1}}));
    // 1/(1-q) + (1+q) has numerator 2 - q^2 over (1-q)
    QRat s = geo + one_plus;
    QRat expect = QRat(poly({{0, 2}, {2, -1}}));
    expect = expect * QRat::from_factored(FactoredQ::binomial(QFactorBase::q_int(1), -1));
    CHECK(s == expect);
    CHECK(s.lower(E(4)) == geo.lower(E(4)) + one_plus.lower(E(4)));

    CHECK((s - s).is_zero());
    CHECK(QRat::from_factored(FactoredQ::zero()).is_zero());
}
