#include "qbailey/wfunctions.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qb {

namespace {

Exponent E(std::int64_t v) { return Exponent::from_int(v); }

std::int64_t part1(std::span<const std::int64_t> v, std::size_t i) { // 1-based, 0 beyond
    return (i >= 1 && i <= v.size()) ? v[i - 1] : 0;
}

std::string vec_str(std::span<const std::int64_t> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

bool is_partition_vec(std::span<const std::int64_t> v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1]) return false;
    return v.empty() || v.back() >= 0;
}

bool interlaces(std::span<const std::int64_t> lam, std::span<const std::int64_t> mu, std::size_t n) {
    for (std::size_t i = 1; i <= n; ++i) {
        if (part1(lam, i) < part1(mu, i)) return false;
        if (part1(mu, i) < part1(lam, i + 1)) return false;
    }
    return true;
}

/// base * t^{tm} with t = q^k
QFactorBase tmul(const QFactorBase& b, std::int64_t tm, std::int64_t k) {
    return {b.scale, b.exp + E(k * tm), b.dw};
}
QFactorBase qshift(const QFactorBase& b, std::int64_t m) { return {b.scale, b.exp + E(m), b.dw}; }

/// (base; q, t)_v with t = q^k
FactoredQ ppoch(const QFactorBase& base, std::span<const std::int64_t> v, std::int64_t k) {
    return qpoch_partition(base, v, k);
}

PartStats vstats(std::span<const std::int64_t> v) { return stats(v); }

} // namespace

FactoredQ h_skew(std::span<const std::int64_t> lam, std::span<const std::int64_t> mu,
                 std::size_t n, std::int64_t k, const std::optional<QFactorBase>& b) {
    FactoredQ f;
    auto q1 = [](std::int64_t m, std::int64_t tm_times_k) {
        return QFactorBase{Rational(1), E(m) + E(tm_times_k)};
    };
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            std::int64_t len = part1(mu, j - 1) - part1(lam, j);
            std::int64_t ii = (std::int64_t)i, jj = (std::int64_t)j;
            f *= qpoch_finite(q1(part1(mu, i) - part1(mu, j - 1), k * (jj - ii)), len);
            f *= qpoch_finite(q1(part1(mu, i) - part1(mu, j - 1) + 1, k * (jj - ii - 1)), len)
                     .inverse();
            f *= qpoch_finite(q1(part1(lam, i) - part1(mu, j - 1) + 1, k * (jj - ii - 1)), len);
            f *= qpoch_finite(q1(part1(lam, i) - part1(mu, j - 1), k * (jj - ii)), len).inverse();
            if (b) {
                f *= qpoch_finite(tmul(qshift(*b, part1(lam, i) + part1(lam, j)), 3 - jj - ii, k),
                                  len);
                f *= qpoch_finite(
                         tmul(qshift(*b, part1(lam, i) + part1(lam, j) + 1), 2 - jj - ii, k), len)
                         .inverse();
            }
        }
        if (b) {
            for (std::size_t j = i + 2; j <= n; ++j) {
                std::int64_t len = part1(mu, j - 1) - part1(lam, j);
                std::int64_t ii = (std::int64_t)i, jj = (std::int64_t)j;
                f *= qpoch_finite(tmul(qshift(*b, part1(mu, i) + part1(lam, j) + 1), 1 - jj - ii, k),
                                  len);
                f *= qpoch_finite(tmul(qshift(*b, part1(mu, i) + part1(lam, j)), 2 - jj - ii, k),
                                  len)
                         .inverse();
            }
        }
    }
    return f;
}

FactoredQ w_single(WFamily family, const QFactorBase& x, std::span<const std::int64_t> lam,
                   std::span<const std::int64_t> mu, std::size_t n, const WParams& p) {
    const std::int64_t k = p.k;
    const bool partitions = is_partition_vec(lam) && is_partition_vec(mu);
    if (partitions && !interlaces(lam, mu, n)) return FactoredQ::zero();

    auto sl = vstats(lam), sm = vstats(mu);
    const QFactorBase q = QFactorBase::q_int(1);
    const QFactorBase xinv = x.inverse();
    FactoredQ f;

    auto diag_b_block = [&](const QFactorBase& b) {
        // prod_i (1 - b t^{1-2i} q^{2 mu_i}) / (1 - b t^{1-2i})
        //        * (b t^{1-2i})_{mu_i + lam_{i+1}} / (b q t^{-2i})_{mu_i + lam_{i+1}}
        for (std::size_t i = 1; i <= n; ++i) {
            std::int64_t ii = (std::int64_t)i;
            std::int64_t len = part1(mu, i) + part1(lam, i + 1);
            f *= FactoredQ::binomial(qshift(tmul(b, 1 - 2 * ii, k), 2 * part1(mu, i)), 1);
            f *= FactoredQ::binomial(tmul(b, 1 - 2 * ii, k), -1);
            f *= qpoch_finite(tmul(b, 1 - 2 * ii, k), len);
            f *= qpoch_finite(tmul(qshift(b, 1), -2 * ii, k), len).inverse();
        }
    };

    switch (family) {
    case WFamily::full: {
        const QFactorBase a = *p.a, b = *p.b;
        const QFactorBase qbx = qshift(b * x, 1);
        const QFactorBase qb_ax = qshift(b * (a * x).inverse(), 1);
        f = h_skew(lam, mu, n, k, b);
        f *= ppoch(xinv, lam, k) * ppoch(a * x, lam, k);
        f *= ppoch(tmul(qbx, -1, k), mu, k) * ppoch(tmul(qb_ax, -1, k), mu, k);
        f *= (ppoch(xinv, mu, k) * ppoch(a * x, mu, k)).inverse();
        f *= (ppoch(qbx, lam, k) * ppoch(qb_ax, lam, k)).inverse();
        diag_b_block(b);
        for (std::size_t i = 1; i <= n; ++i)
            f.mul_monomial(E(k * (std::int64_t)i * (part1(mu, i) - part1(lam, i + 1))));
        break;
    }
    case WFamily::a: {
        const QFactorBase b = *p.b;
        const QFactorBase qb_x = qshift(b * x.inverse(), 1); // qb/x
        const QFactorBase qbx = qshift(b * x, 1);            // qbx
        f = h_skew(lam, mu, n, k, b);
        f.mul_base(qb_x.negated(), -sl.weight + sm.weight); // (-qb/x)^{-|lam|+|mu|}
        f.mul_monomial(E(-sl.n_conj + sm.n_conj));
        f *= ppoch(xinv, lam, k) * ppoch(tmul(qbx, -1, k), mu, k);
        f *= (ppoch(xinv, mu, k) * ppoch(qbx, lam, k)).inverse();
        diag_b_block(b);
        break;
    }
    case WFamily::b: {
        const QFactorBase a = *p.a;
        f = h_skew(lam, mu, n, k, std::nullopt);
        f.mul_monomial(E(k * (-sl.n_of + sm.weight + sm.n_of)));
        f *= ppoch(xinv, lam, k) * ppoch(a * x, lam, k);
        f *= (ppoch(xinv, mu, k) * ppoch(a * x, mu, k)).inverse();
        break;
    }
    case WFamily::ab: {
        const QFactorBase s = *p.s;
        f = h_skew(lam, mu, n, k, std::nullopt);
        f.mul_monomial(E(k * (-sl.n_of + sm.weight + sm.n_of)));
        f *= ppoch(xinv, lam, k);
        f *= ppoch(tmul(qshift(s * x.inverse(), 1), -1, k), mu, k); // (qs/(xt))_mu
        f *= (ppoch(xinv, mu, k) * ppoch(qshift(s * x.inverse(), 1), lam, k)).inverse();
        break;
    }
    case WFamily::s_up: {
        const QFactorBase q_x = qshift(xinv, 1); // q/x
        f = h_skew(lam, mu, n, k, std::nullopt);
        f.mul_base(q_x.negated(), -sl.weight + sm.weight);
        f.mul_monomial(E(-sl.n_conj + sm.n_conj));
        f *= ppoch(xinv, lam, k);
        f *= ppoch(xinv, mu, k).inverse();
        break;
    }
    case WFamily::s_down: {
        f = h_skew(lam, mu, n, k, std::nullopt);
        f.mul_monomial(E(k * (-sl.n_of + sm.weight + sm.n_of)));
        f *= ppoch(xinv, lam, k);
        f *= ppoch(xinv, mu, k).inverse();
        break;
    }
    }
    return f;
}

namespace {

std::map<std::string, QRat>& memo() {
    static std::map<std::string, QRat> m;
    return m;
}

std::mutex& memo_mutex() {
    static std::mutex m;
    return m;
}

std::string memo_key(WFamily family, std::span<const QFactorBase> xs,
                     std::span<const std::int64_t> lam, std::span<const std::int64_t> mu,
                     std::size_t n, const WParams& p) {
    std::ostringstream os;
    os << (int)family << '|' << n << '|' << p.k << '|';
    auto put_base = [&](const std::optional<QFactorBase>& b) {
        if (b) os << rat_str(b->scale) << 'e' << b->exp.half_units() << 'd' << rat_str(b->dw);
        os << ';';
    };
    put_base(p.a);
    put_base(p.b);
    put_base(p.s);
    for (auto& x : xs)
        os << rat_str(x.scale) << 'e' << x.exp.half_units() << 'd' << rat_str(x.dw) << ',';
    os << '|';
    for (auto v : lam) os << v << ',';
    os << '|';
    for (auto v : mu) os << v << ',';
    return os.str();
}

/// Family-specific parameter shift for peeling one variable off the front
/// (ell variables remain) and the t-power weight on |lam| - |nu|.
WParams peel_params(WFamily family, const WParams& p, std::int64_t ell) {
    WParams r = p;
    switch (family) {
    case WFamily::full:
        r.a = tmul(*p.a, 2 * ell, p.k);
        r.b = tmul(*p.b, ell, p.k);
        break;
    case WFamily::a:
        r.b = tmul(*p.b, ell, p.k);
        break;
    case WFamily::b:
        r.a = tmul(*p.a, 2 * ell, p.k);
        break;
    case WFamily::ab:
        r.s = tmul(*p.s, -ell, p.k);
        break;
    case WFamily::s_up:
    case WFamily::s_down:
        break;
    }
    return r;
}

std::int64_t peel_weight_tpow(WFamily family, std::int64_t ell, std::int64_t wdiff) {
    switch (family) {
    case WFamily::a:
        return 2 * ell * wdiff;
    case WFamily::s_up:
        return ell * wdiff;
    default:
        return 0;
    }
}

} // namespace

void w_memo_clear() {
    std::lock_guard<std::mutex> lock(memo_mutex());
    memo().clear();
}

QRat w_multi(WFamily family, std::span<const QFactorBase> xs, std::span<const std::int64_t> lam_in,
             std::span<const std::int64_t> mu_in, std::size_t n, const WParams& p) {
    if (xs.empty()) throw std::invalid_argument("w_multi: empty variable list");
    IndexVector lam(lam_in.begin(), lam_in.end()), mu(mu_in.begin(), mu_in.end());
    lam.resize(n, 0);
    mu.resize(n, 0);

    if (xs.size() == 1) {
        FactoredQ f = w_single(family, xs[0], lam, mu, n, p);
        if (f.is_pole())
            throw std::domain_error("w_single: pole at lambda=" + vec_str(lam) +
                                    " mu=" + vec_str(mu));
        return QRat::from_factored(f);
    }

    std::string key = memo_key(family, xs, lam, mu, n, p);
    {
        std::lock_guard<std::mutex> lock(memo_mutex());
        if (auto it = memo().find(key); it != memo().end()) return it->second;
    }

    const std::int64_t ell = (std::int64_t)xs.size() - 1;
    const QFactorBase y_shift = tmul(xs[0], -ell, p.k);
    const WParams skew_params = peel_params(family, p, ell);
    std::span<const QFactorBase> rest = xs.subspan(1);

    QRat sum = QRat::zero();
    auto add_term = [&](const IndexVector& nu) -> bool {
        FactoredQ skew = w_single(family, y_shift, lam, nu, n, skew_params);
        if (skew.is_zero()) return false;
        auto snu = stats(std::span<const std::int64_t>(nu));
        FactoredQ weight(Rational(1),
                         E(p.k * peel_weight_tpow(family, ell, stats(std::span<const std::int64_t>(lam)).weight - snu.weight)));
        if (rest.size() == 1) {
            // keep the term in product form so a pole in the skew factor can
            // cancel against an exact zero of the inner factor
            FactoredQ term = skew * w_single(family, rest[0], nu, mu, n, p) * weight;
            if (term.is_pole())
                throw std::domain_error("w_multi: pole at nu=" + vec_str(nu));
            if (term.is_zero()) return false;
            sum += QRat::from_factored(term);
            return true;
        }
        QRat inner = w_multi(family, rest, nu, mu, n, p);
        if (inner.is_zero()) {
            if (skew.is_pole())
                throw std::domain_error("w_multi: pole times vanishing sum at nu=" + vec_str(nu));
            return false;
        }
        if (skew.is_pole())
            throw std::domain_error("w_multi: pole in skew factor at nu=" + vec_str(nu));
        sum += QRat::from_factored(skew * weight) * inner;
        return true;
    };

    if (!is_partition_vec(lam) || !is_partition_vec(mu))
        throw std::domain_error(
            "w_multi: lattice index is only defined at staircase arguments, use w_staircase");
    Partition lp(lam), mp(mu);
    for (auto& nu : strips_below(lp)) {
        if (!nu.contains(mp)) continue;
        IndexVector nv = nu.parts();
        nv.resize(n, 0);
        add_term(nv);
    }

    {
        std::lock_guard<std::mutex> lock(memo_mutex());
        memo().emplace(std::move(key), sum);
    }
    return sum;
}

namespace {

// generic deformation directions: distinct powers of a large base so no small
// integer combination of weights can vanish accidentally
const Rational kDeform = Rational(1000003);

} // namespace

FactoredQ staircase_fold_weight(std::span<const std::int64_t> lam, std::int64_t m_h,
                                std::int64_t k, std::size_t n) {
    auto s = vstats(lam);
    FactoredQ f;
    f.mul_monomial(E(s.weight + 2 * k * s.n_of + k * (1 - (std::int64_t)n) * s.weight) +
                   Exponent::from_half(m_h) * s.weight);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            std::int64_t ii = (std::int64_t)i, jj = (std::int64_t)j;
            std::int64_t di = lam[i - 1] - lam[j - 1], su = lam[i - 1] + lam[j - 1];
            f *= qpoch_finite(QFactorBase::q_int(1 + k * (jj - ii)), di);
            f *= qpoch_finite(QFactorBase::q_int(1 + k * (jj - ii - 1)), di).inverse();
            f *= qpoch_finite({Rational(1),
                               Exponent::from_half(m_h + 2 * k * (2 * (std::int64_t)n + 1 - ii - jj))},
                              su);
            f *= qpoch_finite({Rational(1),
                               Exponent::from_half(m_h + 2 * k * (2 * (std::int64_t)n - ii - jj))},
                              su)
                     .inverse();
        }
    return f;
}

bool staircase_orbit_rep(std::span<const std::int64_t> lam, std::int64_t m_h, std::int64_t k,
                         std::size_t n, std::vector<std::int64_t>& rep) {
    std::vector<std::int64_t> y4(n);
    for (std::size_t i = 1; i <= n; ++i)
        y4[i - 1] = std::abs(4 * lam[i - 1] + m_h + 4 * k * (std::int64_t)(n - i));
    std::sort(y4.rbegin(), y4.rend());
    rep.assign(n, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        std::int64_t m4 = y4[i - 1] - m_h - 4 * k * (std::int64_t)(n - i);
        if (m4 % 4 != 0) return false;
        rep[i - 1] = m4 / 4;
        if (rep[i - 1] < 0) return false;
        if (i > 1 && rep[i - 2] < rep[i - 1]) return false;
    }
    return true;
}

QRat w_staircase(WFamily family, std::span<const std::int64_t> nu,
                 std::span<const std::int64_t> lambda, std::size_t n, const WParams& p) {
    std::vector<QFactorBase> xs;
    xs.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        xs.push_back(QFactorBase{Rational(1), E(part1(nu, i)) + E(p.k * (std::int64_t)(n - i)),
                                 rat_pow(kDeform, (std::int64_t)i)});
    WParams dp = p;
    if (dp.a) dp.a->dw = rat_pow(kDeform, (std::int64_t)n + 1);
    if (dp.b) dp.b->dw = Rational(1);
    if (dp.s) dp.s->dw = rat_pow(kDeform, (std::int64_t)n + 2);

    IndexVector lam(lambda.begin(), lambda.end());
    lam.resize(n, 0);
    IndexVector mu; // 0
    if (is_partition_vec(lam) || n == 1) return w_multi(family, xs, lam, mu, n, dp);

    // lattice index: fold onto the partition orbit representative, using the
    // invariance of the weighted entry under sign changes and permutations of
    // lam_i + m/2 + k(n-i) at b = q^{m + k(n-1)}
    if (family != WFamily::a)
        throw std::domain_error("w_staircase: lattice index is only defined for the a family");
    if (!dp.b || !rat_is_one(dp.b->scale))
        throw std::domain_error("w_staircase: lattice index needs b an integer power of q");
    const std::int64_t m_h = dp.b->exp.half_units() - 2 * p.k * ((std::int64_t)n - 1);
    if (m_h < 0)
        throw std::domain_error("w_staircase: lattice index needs b at least q^{k(n-1)}");
    IndexVector rep;
    if (!staircase_orbit_rep(lam, m_h, p.k, n, rep)) return QRat::zero();
    FactoredQ fold =
        staircase_fold_weight(rep, m_h, p.k, n) * staircase_fold_weight(lam, m_h, p.k, n).inverse();
    if (fold.is_zero()) return QRat::zero();
    return QRat::from_factored(fold) * w_multi(family, xs, rep, mu, n, dp);
}

FactoredQ w_limit_formula(WFamily family, const Partition& mu, std::int64_t delta, std::size_t n) {
    auto sm = stats(mu);
    FactoredQ f;
    if (family == WFamily::s_up) {
        f.mul_monomial(E(-sm.weight));
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j) {
                std::int64_t d = mu.part(i - 1) - mu.part(j - 1);
                f *= qpoch_finite(QFactorBase::q_int((std::int64_t)(j - i) + 1), d);
                f *= qpoch_finite(QFactorBase::q_int((std::int64_t)(j - i)), d).inverse();
            }
        return f;
    }
    if (family != WFamily::a) throw std::invalid_argument("w_limit_formula: family must be a or s_up");
    f.mul_monomial(E(-(delta + (std::int64_t)n) * sm.weight));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            std::int64_t d = mu.part(i - 1) - mu.part(j - 1);
            std::int64_t s = mu.part(i - 1) + mu.part(j - 1);
            std::int64_t ii = (std::int64_t)i, jj = (std::int64_t)j;
            f *= qpoch_finite(QFactorBase::q_int(jj - ii + 1), d);
            f *= qpoch_finite(QFactorBase::q_int(delta + 1 + 2 * (std::int64_t)n - ii - jj), s);
            f *= qpoch_finite(QFactorBase::q_int(jj - ii), d).inverse();
            f *= qpoch_finite(QFactorBase::q_int(delta + 2 * (std::int64_t)n - ii - jj), s).inverse();
        }
    return f;
}

} // namespace qb
