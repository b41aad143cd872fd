#include "doctest.h"

#include "qbailey/identities.hpp"

using namespace qb;

namespace {

Exponent E(std::int64_t n) { return Exponent::from_int(n); }

QSeries poly(std::vector<Rational> coeffs, Exponent T) {
    QPoly p;
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(E((std::int64_t)i), coeffs[i]);
    return QSeries(p, T);
}

} // namespace

TEST_CASE("infinite Pochhammer products") {
    // (q; q)_inf = 1 - q - q^2 + q^5 + q^7 - ...
    CHECK(poch_inf(QFactorBase::q_int(1), E(1), E(7)) ==
          poly({1, -1, -1, 0, 0, 1, 0, 1}, E(7)));
    // (q; q^2)_inf: odd parts, distinct, signed
    CHECK(poch_inf(QFactorBase::q_int(1), E(2), E(5)) ==
          poly({1, -1, 0, -1, 1, -1}, E(5)));
    // a factor (1 - q^0) makes the product exactly zero
    CHECK(poch_inf(QFactorBase::q_int(0), E(1), E(5)).is_zero());
    // negative leading exponents stay exact Laurent data; the (1 - 2q^0)
    // factor contributes the sign flip
    QSeries s = poch_inf({rat(2), E(-1)}, E(1), E(2));
    CHECK(s.coeff(E(-1)) == Rational(2));
    // rank-2 product agrees with the two explicit factors
    QSeries two = poch_inf_multi(QFactorBase::q_int(2), 2, 1, E(8));
    QSeries ref = (poch_inf(QFactorBase::q_int(2), E(1), E(8)) *
                   poch_inf(QFactorBase::q_int(1), E(1), E(8)))
                      .truncated(E(8));
    CHECK(two == ref);
}

TEST_CASE("lattice_sum termination and failure modes") {
    // zero summand sums to zero
    QSeries z = lattice_sum([](const LatticePoint&) { return QSeries::zero(E(6)); }, 2, E(6), 8);
    CHECK(z.is_zero());
    // growing valuation: sum over Z of q^{m^2} is the classical theta
    QSeries theta = lattice_sum(
        [](const LatticePoint& p) {
            return QSeries(QPoly::monomial(E(p[0] * p[0])), E(9));
        },
        1, E(9), 32);
    CHECK(theta == poly({1, 2, 0, 0, 2, 0, 0, 0, 0, 2}, E(9)));
    // a constant summand never stabilizes
    CHECK_THROWS_WITH_AS(
        lattice_sum([](const LatticePoint&) { return QSeries::one(E(4)); }, 1, E(4), 8),
        "lattice_sum: divergent or bound too small", std::runtime_error);
    // exact variant: contiguously supported summand
    QRat e = lattice_sum_exact(
        [](const LatticePoint& p) {
            return (p[0] == 0 || p[0] == 1) ? QRat::one() : QRat::zero();
        },
        1, 16);
    CHECK(e == QRat::one() + QRat::one());
}

TEST_CASE("chain_sum levels") {
    // one level: sum q^{|mu|} over partitions with <= 2 parts = sum_w p_2(w) q^w
    auto one = chain_sum(
        [](const std::vector<Partition>& c) {
            return QSeries(QPoly::monomial(E(stats(c[0]).weight)), E(5));
        },
        2, 1, E(5), 64);
    CHECK(one == poly({1, 1, 2, 2, 3, 3}, E(5)));
    // two levels: weight both links; small hand-checked table
    auto two = chain_sum(
        [](const std::vector<Partition>& c) {
            return QSeries(QPoly::monomial(E(stats(c[0]).weight + stats(c[1]).weight)), E(3));
        },
        1, 2, E(3), 64);
    // (mu1, mu2) with mu2 <= mu1 <= one row: q^{m1+m2}
    CHECK(two == poly({1, 1, 2, 2}, E(3)));
    CHECK_THROWS_AS(chain_sum(
                        [](const std::vector<Partition>&) { return QSeries::one(E(3)); }, 1, 0,
                        E(3), 8),
                    std::domain_error);
}

TEST_CASE("det_series") {
    QSeries one = QSeries::one(E(6)), q = QSeries(QPoly::monomial(E(1)), E(6));
    CHECK(det_series({{one, q}, {q, one}}) == poly({1, 0, -1}, E(6)));
    CHECK(det_series({{q}}) == q);
    // 3x3 with a repeated row is zero
    CHECK(det_series({{one, q, one}, {one, q, one}, {q, one, q}}).is_zero());
}

TEST_CASE("gordon counts and products") {
    CHECK(gordon_count(2, 2, 6) == std::vector<std::int64_t>{1, 1, 1, 1, 2, 2, 3});
    CHECK(gordon_count(2, 1, 6) == std::vector<std::int64_t>{1, 0, 1, 1, 1, 1, 2});
    CHECK(gordon_count(3, 3, 5) == std::vector<std::int64_t>{1, 1, 2, 2, 3, 4});
    CHECK_THROWS_AS(gordon_count(2, 3, 4), std::domain_error);
    // product over parts = +-1 mod 5 starts 1,1,1,1,2,2,3,3,4,5
    CHECK(ag_product_series(2, 2, E(9)) == poly({1, 1, 1, 1, 2, 2, 3, 3, 4, 5}, E(9)));
    CHECK(gordon_gf(2, 2, E(9)) == ag_product_series(2, 2, E(9)));
}

TEST_CASE("registry shape") {
    const auto& reg = registry();
    CHECK(reg.size() >= 20);
    std::set<std::string> names;
    for (const auto& info : reg) {
        CHECK(!info.name.empty());
        CHECK(!info.summary.empty());
        names.insert(info.name);
    }
    CHECK(names.size() == reg.size());
}

TEST_CASE("verify_identity error paths") {
    IdentityParams p;
    auto r = verify_identity("no_such_identity", p, E(4));
    CHECK(r.status == VerifyStatus::error);
    CHECK(r.message == "unknown identity: no_such_identity");

    p.delta = 2;
    auto bad = verify_identity("pentagonal_multiple", p, E(4));
    CHECK(bad.status == VerifyStatus::error);
    CHECK(bad.message == "delta must be 0 or 1");

    CHECK_THROWS_AS(identity_side("no_such_identity", true, IdentityParams{}, E(4)),
                    std::domain_error);
    // report-style rows have no series form
    CHECK_THROWS_AS(identity_side("summand_symmetry", true, IdentityParams{}, E(4)),
                    std::domain_error);
}

TEST_CASE("pentagonal and Rogers-Ramanujan series at rank one") {
    IdentityParams p;
    QSeries penta = identity_side("pentagonal_multiple", true, p, E(15));
    CHECK(penta == poly({1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1}, E(15)));
    CHECK(penta == identity_side("pentagonal_multiple", false, p, E(15)));

    QSeries rr1 = identity_side("rr_multiple", true, p, E(12));
    CHECK(rr1 == ag_product_series(2, 2, E(12)));
    CHECK(rr1 == gordon_gf(2, 2, E(12)));
    p.delta = 1;
    QSeries rr2 = identity_side("rr_multiple", true, p, E(12));
    CHECK(rr2 == ag_product_series(2, 1, E(12)));
    p.delta = 0;
    p.n = 2;
    // rank two, delta one: (q^2)_inf as the second pentagonal factor check
    p.delta = 1;
    QSeries lhs = identity_side("pentagonal_multiple", true, p, E(8));
    CHECK(lhs == poch_inf_multi(QFactorBase::q_int(4), 2, 1, E(8)));
}

TEST_CASE("registry verification at rank one") {
    IdentityParams p;
    for (const auto& info : registry()) {
        CAPTURE(info.name);
        auto r = verify_identity(info.name, p, E(12));
        CHECK(r.status == VerifyStatus::match);
        CHECK(r.name == info.name);
        CHECK(r.first_mismatch == std::nullopt);
    }
}

TEST_CASE("registry verification at rank two") {
    IdentityParams p;
    p.n = 2;
    p.delta = 1;
    for (const char* name : {"watson_multiple", "watson_box", "rogers_selberg_multiple",
                             "summand_symmetry", "matrix_inverse_multiple",
                             "lemma_commutation_multiple", "unit_pair_multiple",
                             "first_iteration", "second_iteration", "pentagonal_multiple",
                             "rr_multiple", "ag_lattice_b1", "ag_lattice_bq", "det_eval_dn"}) {
        CAPTURE(name);
        auto r = verify_identity(name, p, E(8));
        CHECK(r.status == VerifyStatus::match);
    }
}

TEST_CASE("jacobi triple product across arguments") {
    IdentityParams p;
    for (auto [sc, ex] : std::vector<std::pair<Rational, Exponent>>{
             {Rational(-1), E(1)},
             {Rational(2), E(1)},
             {Rational(1, 2), Exponent::from_half(1)},
             {Rational(-2), E(2)}}) {
        p.z_scale = sc;
        p.z_exp = ex;
        auto r = verify_identity("jacobi_triple", p, E(20));
        CAPTURE(r.params.at("z"));
        CHECK(r.status == VerifyStatus::match);
    }
    p.z_scale = Rational(0);
    CHECK(verify_identity("jacobi_triple", p, E(6)).status == VerifyStatus::error);
}

TEST_CASE("andrews-gordon classical grid") {
    IdentityParams p;
    for (auto [k, i] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {2, 1}, {2, 2}, {3, 1}, {3, 3}, {4, 2}}) {
        p.k = k;
        p.i = i;
        auto r = verify_identity("ag_classical", p, E(18));
        CAPTURE(k);
        CAPTURE(i);
        CHECK(r.status == VerifyStatus::match);
    }
}

TEST_CASE("report metadata") {
    IdentityParams p;
    auto r = verify_identity("pentagonal_multiple", p, E(10));
    CHECK(r.verified_order == E(10));
    CHECK(r.params.at("n") == "1");
    CHECK(r.params.at("delta") == "0");
    CHECK(r.lhs_terms > 0);
    auto s = verify_identity("summand_symmetry", p, E(10));
    CHECK(s.status == VerifyStatus::match);
    CHECK(s.params.at("samples") == "8");
}
