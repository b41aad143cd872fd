#include "qbailey/jackson.hpp"

#include <stdexcept>

namespace qb {

namespace {

Exponent E(std::int64_t v) { return Exponent::from_int(v); }

/// base * t^{tm} with t = q^k
QFactorBase tmul(const QFactorBase& b, std::int64_t tm, std::int64_t k) {
    return {b.scale, b.exp + E(k * tm), b.dw};
}
QFactorBase qshift(const QFactorBase& b, std::int64_t m) { return {b.scale, b.exp + E(m), b.dw}; }

std::int64_t part1(std::span<const std::int64_t> v, std::size_t i) {
    return (i >= 1 && i <= v.size()) ? v[i - 1] : 0;
}

} // namespace

QRat omega_single(const QFactorBase& x, std::span<const std::int64_t> lam,
                  std::span<const std::int64_t> mu, std::size_t n, const OmegaParams& p) {
    const std::int64_t k = p.k;
    const QFactorBase xinv = x.inverse();
    const QFactorBase br = p.b * p.r.inverse(); // b/r
    FactoredQ f;

    f *= qpoch_partition(xinv, lam, k) * qpoch_partition(p.a * x, lam, k);
    f *= (qpoch_partition(qshift(p.b * x, 1), lam, k) *
          qpoch_partition(qshift(p.b * (p.a * x).inverse(), 1), lam, k))
             .inverse();
    f *= qpoch_partition(qshift(br * x, 1), mu, k) *
         qpoch_partition(qshift(p.b * (p.a * x * p.r).inverse(), 1), mu, k);
    f *= (qpoch_partition(xinv, mu, k) * qpoch_partition(p.a * x, mu, k)).inverse();

    f *= qpoch_partition(p.r, mu, k) * qpoch_partition(tmul(br, 1 - (std::int64_t)n, k), mu, k);
    f *= (qpoch_partition(qshift(p.b * (p.r * p.r).inverse(), 1), mu, k) *
          qpoch_partition(tmul(QFactorBase::q_int(1), (std::int64_t)n - 1, k), mu, k))
             .inverse();

    for (std::size_t i = 1; i <= n; ++i) {
        std::int64_t ii = (std::int64_t)i;
        f *= FactoredQ::binomial(qshift(tmul(br, 2 - 2 * ii, k), 2 * part1(mu, i)), 1);
        f *= FactoredQ::binomial(tmul(br, 2 - 2 * ii, k), -1);
        f.mul_monomial((E(1) + E(k * (2 * ii - 2))) * part1(mu, i)); // (q t^{2i-2})^{mu_i}
    }
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            std::int64_t ii = (std::int64_t)i, jj = (std::int64_t)j;
            std::int64_t d = part1(mu, i) - part1(mu, j), s = part1(mu, i) + part1(mu, j);
            f *= qpoch_finite(qshift(tmul(QFactorBase::one(), jj - ii, k), 1), d);
            f *= qpoch_finite(qshift(tmul(QFactorBase::one(), jj - ii - 1, k), 1), d).inverse();
            f *= qpoch_finite(tmul(br, 3 - ii - jj, k), s);
            f *= qpoch_finite(tmul(br, 2 - ii - jj, k), s).inverse();
        }

    if (f.is_zero()) return QRat::zero();
    WParams wp = WParams::family_full(tmul(p.b, 2 - 2 * (std::int64_t)n, k),
                                      tmul(br, 1 - (std::int64_t)n, k), k);
    return QRat::from_factored(f) * w_staircase(WFamily::full, lam, mu, n, wp);
}

QRat omega_list(std::span<const QFactorBase> xs, std::span<const std::int64_t> lam,
                std::span<const std::int64_t> tau, std::size_t n, const OmegaParams& p) {
    if (xs.empty()) throw std::invalid_argument("omega_list: empty variable list");
    if (xs.size() == 1) return omega_single(xs[0], lam, tau, n, p);
    std::span<const QFactorBase> rest = xs.subspan(1);
    std::vector<QFactorBase> front{xs[0]};
    return omega_multi(lam, tau, front, rest, n, p);
}

QRat omega_multi(std::span<const std::int64_t> lam, std::span<const std::int64_t> tau,
                 std::span<const QFactorBase> ys, std::span<const QFactorBase> z, std::size_t n,
                 const OmegaParams& p) {
    if (ys.empty() || z.empty())
        throw std::invalid_argument("omega_multi: variable blocks must be nonempty");
    const std::int64_t split_count = (std::int64_t)z.size();
    OmegaParams shifted = p;
    shifted.a = p.a * p.r.pow(2 * split_count);
    shifted.b = p.b * p.r.pow(split_count);
    std::vector<QFactorBase> ys_shifted;
    ys_shifted.reserve(ys.size());
    for (auto& y : ys) ys_shifted.push_back(y * p.r.pow(-split_count));

    Partition lp((std::vector<std::int64_t>(lam.begin(), lam.end())));
    Partition tp((std::vector<std::int64_t>(tau.begin(), tau.end())));
    QRat sum = QRat::zero();
    for (auto& mu : enumerate_box(n, lp)) {
        if (!mu.contains(tp)) continue;
        QRat outer = omega_list(ys_shifted, lam, mu.parts(), n, shifted);
        if (outer.is_zero()) continue;
        QRat inner = omega_list(z, mu.parts(), tau, n, p);
        if (inner.is_zero()) continue;
        sum += outer * inner;
    }
    return sum;
}

IdentityReport cocycle_check(const Partition& nu, const Partition& mu, const QFactorBase& u,
                             const QFactorBase& v, const QFactorBase& a, const QFactorBase& b,
                             std::size_t n, std::int64_t k, Exponent T) {
    Stopwatch sw;
    std::map<std::string, std::string> params{
        {"nu", nu.str()},      {"mu", mu.str()},      {"u", u.str()}, {"v", v.str()},
        {"a", a.str()},        {"b", b.str()},        {"n", std::to_string(n)},
        {"k", std::to_string(k)}, {"T", T.str()}};
    IdentityReport rep;
    try {
        const QFactorBase uv = u * v;
        OmegaParams big{uv, a * uv.pow(2), b * uv, k};
        QSeries lhs = omega_single(uv.inverse(), nu.parts(), mu.parts(), n, big).lower(T);

        OmegaParams outer{v, a * uv.pow(2), b * uv, k};
        OmegaParams inner{u, a * u.pow(2), b * u, k};
        QRat rhs = QRat::zero();
        for (auto& lam : enumerate_box(n, nu)) {
            if (!lam.contains(mu)) continue;
            QRat o = omega_single(v.inverse(), nu.parts(), lam.parts(), n, outer);
            if (o.is_zero()) continue;
            QRat i = omega_single(u.inverse(), lam.parts(), mu.parts(), n, inner);
            if (i.is_zero()) continue;
            rhs += o * i;
        }
        rep = compare_series("cocycle", std::move(params), lhs, rhs.lower(T));
    } catch (const std::exception& e) {
        rep.name = "cocycle";
        rep.params = std::move(params);
        rep.status = VerifyStatus::error;
        rep.message = e.what();
    }
    rep.millis = sw.millis();
    return rep;
}

} // namespace qb
