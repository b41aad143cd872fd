#include "qbailey/bailey.hpp"

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

bool is_partition_vec(std::span<const std::int64_t> v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1]) return false;
    return v.empty() || v.back() >= 0;
}

QFactorBase q_t_pow(std::int64_t q_pow, std::int64_t t_pow, std::int64_t k) { // q^q_pow t^t_pow
    return QFactorBase::q(E(q_pow) + E(k * t_pow));
}

/// prod_{i<j} (q t^{j-i})_{v_i - v_j} / (q t^{j-i-1})_{v_i - v_j}
FactoredQ diff_products(std::span<const std::int64_t> v, std::size_t n, std::int64_t k) {
    FactoredQ f;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            std::int64_t d = part1(v, i) - part1(v, j);
            std::int64_t jj = (std::int64_t)j, ii = (std::int64_t)i;
            f *= qpoch_finite(q_t_pow(1, jj - ii, k), d);
            f *= qpoch_finite(q_t_pow(1, jj - ii - 1, k), d).inverse();
        }
    return f;
}

/// prod_i (1 - b t^{2-2i} q^{2 v_i}) / (1 - b t^{2-2i})
FactoredQ diag_ratio(const QFactorBase& b, std::span<const std::int64_t> v, std::size_t n,
                     std::int64_t k) {
    FactoredQ f;
    for (std::size_t i = 1; i <= n; ++i) {
        std::int64_t ii = (std::int64_t)i;
        f *= FactoredQ::binomial(qshift(tmul(b, 2 - 2 * ii, k), 2 * part1(v, i)), 1);
        f *= FactoredQ::binomial(tmul(b, 2 - 2 * ii, k), -1);
    }
    return f;
}

QRat combine(const FactoredQ& f, const QRat& w) {
    if (f.is_zero()) return QRat::zero();
    if (!f.is_pole() && w.is_zero()) return QRat::zero();
    return QRat::from_factored(f) * w;
}

void require_weak_mode(const ParamEnv& env, const char* who) {
    if (!env.specialized() || (env.m != 0 && env.m != 1) || env.k != 1)
        throw std::domain_error(std::string(who) +
                                ": weak form needs b = q^{delta + 2(n-1)}, delta in {0,1}, k = 1");
}

} // namespace

QRat m_entry(const Partition& nu, std::span<const std::int64_t> lambda, const ParamEnv& env,
             MatrixNorm norm) {
    const std::int64_t k = env.k, nn = (std::int64_t)env.n;
    const std::size_t n = env.n;
    std::vector<std::int64_t> lam(lambda.begin(), lambda.end());
    lam.resize(n, 0);

    if (norm == MatrixNorm::multilateral) {
        if (!env.specialized() || env.m < 0)
            throw std::domain_error("m_entry: multilateral normalization needs b = q^{m+2k(n-1)}");
        if (n > 1 && !is_partition_vec(lam)) {
            std::vector<std::int64_t> rep;
            if (!staircase_orbit_rep(lam, 2 * env.m, k, n, rep)) return QRat::zero();
            lam = std::move(rep);
        }
        FactoredQ f = staircase_fold_weight(lam, 2 * env.m, k, n);
        QRat w = w_staircase(WFamily::a, nu.parts(), lam, n,
                             WParams::family_a(QFactorBase::q_int(env.m + k * (nn - 1)), k));
        return combine(f, w);
    }

    if (!is_partition_vec(lam))
        throw std::domain_error("m_entry: unilateral columns are partitions");
    const QFactorBase b = env.b();
    auto s = stats(std::span<const std::int64_t>(lam));
    FactoredQ f;
    f.mul_scalar(rat_pow(rat(-1), s.weight));
    f.mul_monomial(E(2 * s.weight + s.n_conj) + E(k * (s.n_of + 2 * (1 - nn) * s.weight)));
    f.mul_base(b, s.weight);
    f *= qpoch_partition(tmul(b, 1 - nn, k), lam, k);
    f *= qpoch_partition(q_t_pow(1, nn - 1, k), lam, k).inverse();
    f *= diff_products(lam, n, k);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            std::int64_t su = part1(lam, i) + part1(lam, j);
            std::int64_t jj = (std::int64_t)j, ii = (std::int64_t)i;
            f *= qpoch_finite(tmul(b, 3 - ii - jj, k), su);
            f *= qpoch_finite(tmul(b, 2 - ii - jj, k), su).inverse();
        }
    QRat w = w_staircase(WFamily::a, nu.parts(), lam, n, WParams::family_a(tmul(b, 1 - nn, k), k));
    return combine(f, w);
}

QRat m_inv_entry(std::span<const std::int64_t> lambda, const Partition& mu, const ParamEnv& env,
                 MatrixNorm norm) {
    const std::int64_t k = env.k, nn = (std::int64_t)env.n;
    const std::size_t n = env.n;
    const QFactorBase b = env.b();
    auto sl = stats(lambda);
    auto sm = stats(mu);

    FactoredQ f;
    f.mul_monomial(E(sm.weight + 2 * k * sm.n_of));
    f *= (qpoch_partition(qshift(b, 1), mu.parts(), k) *
          qpoch_partition(q_t_pow(1, nn - 1, k), mu.parts(), k))
             .inverse();
    f *= diff_products(mu.parts(), n, k);
    f *= diag_ratio(b, lambda, n, k);
    if (norm == MatrixNorm::unilateral) {
        f.mul_monomial(E(-sl.weight));
    } else {
        f.mul_scalar(rat_pow(rat(-1), sl.weight));
        f.mul_monomial(E(k * ((nn - 1) * sl.weight - sl.n_of) + sl.n_conj));
        f *= qpoch_partition(tmul(b, 1 - nn, k), lambda, k);
        f *= qpoch_partition(q_t_pow(1, nn - 1, k), lambda, k).inverse();
    }
    QRat w = w_staircase(WFamily::b, lambda, mu.parts(), n,
                         WParams::family_b(tmul(b, 2 - 2 * nn, k), k));
    return combine(f, w);
}

FactoredQ s_entry(std::span<const std::int64_t> lambda, const ParamEnv& env) {
    const std::int64_t k = env.k, nn = (std::int64_t)env.n;
    auto s = stats(lambda);
    FactoredQ f;
    if (env.sigma && env.rho) {
        const QFactorBase qb = qshift(env.b(), 1);
        f.mul_base(qb * (*env.sigma * *env.rho).inverse(), s.weight);
        f *= qpoch_partition(*env.sigma, lambda, k) * qpoch_partition(*env.rho, lambda, k);
        f *= (qpoch_partition(qb * env.sigma->inverse(), lambda, k) *
              qpoch_partition(qb * env.rho->inverse(), lambda, k))
                 .inverse();
        return f;
    }
    require_weak_mode(env, "s_entry");
    f.mul_monomial(E((env.m + 2 * (nn - 1)) * s.weight + s.n2 - 2 * s.n_of));
    return f;
}

QRat n_entry(const Partition& nu, const Partition& mu, const ParamEnv& env) {
    const std::int64_t k = env.k, nn = (std::int64_t)env.n;
    const std::size_t n = env.n;
    auto sm = stats(mu);
    FactoredQ f;
    if (env.sigma && env.rho) {
        const QFactorBase b = env.b(), qb = qshift(b, 1);
        const QFactorBase sr = *env.sigma * *env.rho;
        f.mul_monomial(E(sm.weight + 2 * k * sm.n_of));
        f *= qpoch_partition(qb, nu.parts(), k) * qpoch_partition(qb * sr.inverse(), nu.parts(), k);
        f *= (qpoch_partition(qb * env.sigma->inverse(), nu.parts(), k) *
              qpoch_partition(qb * env.rho->inverse(), nu.parts(), k))
                 .inverse();
        f *= qpoch_partition(*env.sigma, mu.parts(), k) * qpoch_partition(*env.rho, mu.parts(), k);
        f *= (qpoch_partition(qb, mu.parts(), k) *
              qpoch_partition(q_t_pow(1, nn - 1, k), mu.parts(), k))
                 .inverse();
        f *= diff_products(mu.parts(), n, k);
        QRat w = w_staircase(WFamily::ab, nu.parts(), mu.parts(), n,
                             WParams::family_ab(tmul(sr, nn - 1, k) * qb.inverse(), k));
        return combine(f, w);
    }
    require_weak_mode(env, "n_entry");
    f.mul_monomial(E((env.m + nn) * sm.weight + sm.n2));
    f *= qpoch_partition(QFactorBase::q_int(env.m + 2 * nn - 1), nu.parts(), 1);
    f *= (qpoch_partition(QFactorBase::q_int(env.m + 2 * nn - 1), mu.parts(), 1) *
          qpoch_partition(QFactorBase::q_int(nn), mu.parts(), 1))
             .inverse();
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            std::int64_t jj = (std::int64_t)j, ii = (std::int64_t)i;
            f *= FactoredQ::binomial(QFactorBase::q_int(jj - ii + mu.part(i - 1) - mu.part(j - 1)), 1);
            f *= FactoredQ::binomial(QFactorBase::q_int(jj - ii), -1);
        }
    QRat w = w_staircase(WFamily::s_up, nu.parts(), mu.parts(), n, WParams::bare(1));
    return combine(f, w);
}

FactoredQ unit_alpha(std::span<const std::int64_t> lambda, const ParamEnv& env, MatrixNorm norm) {
    const std::int64_t k = env.k, nn = (std::int64_t)env.n;
    auto s = stats(lambda);
    FactoredQ f;
    if (norm == MatrixNorm::unilateral) {
        f.mul_monomial(E(-s.weight));
        f *= diag_ratio(env.b(), lambda, env.n, k);
        return f;
    }
    require_weak_mode(env, "unit_alpha");
    f.mul_scalar(rat_pow(rat(-1), s.weight));
    f.mul_monomial(E((nn - 1) * s.weight - s.n_of + s.n_conj));
    Rational fact(1);
    for (std::int64_t i = 2; i <= nn; ++i) fact *= i;
    f.mul_scalar(Rational(1) / fact);
    if (env.m == 0) {
        for (std::int64_t i = 1; i <= nn - 1; ++i)
            f *= FactoredQ::binomial({rat(-1), E(nn - i)}, -1); // 1/(1 + q^{n-i})
    } else {
        for (std::int64_t i = 1; i <= nn; ++i)
            f *= FactoredQ::binomial(QFactorBase::q_int(2 * nn - 2 * i + 1), -1);
    }
    return f;
}

WpSummand wp_summand(const LatticePoint& mu, const ParamEnv& env, std::int64_t N) {
    if (!env.specialized())
        throw std::domain_error("wp_summand: needs b = q^{m+2k(n-1)}");
    const std::int64_t k = env.k, m = env.m, nn = (std::int64_t)env.n;
    const std::size_t n = env.n;
    std::vector<std::int64_t> y_h(n); // shifted coordinates in half-units
    for (std::size_t i = 1; i <= n; ++i)
        y_h[i - 1] = 2 * part1(mu, i) + m + 2 * k * (nn - (std::int64_t)i);

    WpSummand r;
    r.qexp = 0;
    for (auto y : y_h) r.qexp += Rational((N - 1) * y * y, 4);
    r.qexp.canonicalize();

    for (std::size_t i = 0; i < n; ++i) {
        r.val *= qpoch_finite({rat(1), Exponent::from_half(2 - m + y_h[i])}, (y_h[i] + m) / 2);
        r.val *= qpoch_finite({rat(1), Exponent::from_half(2 - m - y_h[i])}, (m - y_h[i]) / 2);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::int64_t d = y_h[i] - y_h[j], su = y_h[i] + y_h[j];
            for (std::int64_t e : {d, -d, su, -su})
                r.val *= qpoch_finite({rat(1), Exponent::from_half(2 + e - 2 * k)}, k).inverse();
        }
    return r;
}

namespace {

const char* norm_str(MatrixNorm m) {
    return m == MatrixNorm::unilateral ? "unilateral" : "multilateral";
}

std::string lattice_str(const LatticePoint& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::map<std::string, std::string> env_params(const ParamEnv& env) {
    std::map<std::string, std::string> p{{"n", std::to_string(env.n)},
                                         {"k", std::to_string(env.k)}};
    if (env.b_override)
        p["b"] = env.b_override->str();
    else
        p["m"] = std::to_string(env.m);
    if (env.sigma) p["sigma"] = env.sigma->str();
    if (env.rho) p["rho"] = env.rho->str();
    return p;
}

/// One M * M^{-1} pairing over the box; returns "" on success, else the
/// offending cell (and the offending sum via out params).
std::string pairing_check(const std::vector<Partition>& cells, const ParamEnv& env,
                          MatrixNorm m_norm, MatrixNorm inv_norm, QRat& bad_sum, QRat& bad_want) {
    for (auto& lam : cells)
        for (auto& nu : cells) {
            QRat sum = QRat::zero();
            if (lam.contains(nu)) {
                for (auto& mu : enumerate_box(env.n, lam)) {
                    if (!mu.contains(nu)) continue;
                    QRat a = m_entry(lam, mu.parts(), env, m_norm);
                    if (a.is_zero()) continue;
                    QRat c = m_inv_entry(mu.parts(), nu, env, inv_norm);
                    if (c.is_zero()) continue;
                    sum += a * c;
                }
            }
            QRat want = lam == nu ? QRat::one() : QRat::zero();
            if (sum != want) {
                bad_sum = sum;
                bad_want = want;
                return lam.str() + "*" + nu.str();
            }
        }
    return "";
}

} // namespace

IdentityReport verify_inverse(const Partition& box, const ParamEnv& env, MatrixNorm norm,
                              Exponent T) {
    Stopwatch sw;
    auto params = env_params(env);
    params["box"] = box.str();
    params["normalization"] = norm_str(norm);
    IdentityReport rep;
    try {
        auto cells = enumerate_box(env.n, box);
        QRat uni_sum, uni_want, multi_sum, multi_want, mix_sum, mix_want;
        std::string uni_cell = pairing_check(cells, env, MatrixNorm::unilateral,
                                             MatrixNorm::unilateral, uni_sum, uni_want);
        params["pairing_unilateral"] = uni_cell.empty() ? "match" : "mismatch at " + uni_cell;
        std::string multi_cell;
        if (env.specialized()) {
            multi_cell = pairing_check(cells, env, MatrixNorm::multilateral,
                                       MatrixNorm::multilateral, multi_sum, multi_want);
            params["pairing_multilateral"] =
                multi_cell.empty() ? "match" : "mismatch at " + multi_cell;
        }
        std::string mixed_cell = pairing_check(cells, env, MatrixNorm::unilateral,
                                               MatrixNorm::multilateral, mix_sum, mix_want);
        params["pairing_mixed"] = mixed_cell.empty() ? "match" : "mismatch at " + mixed_cell;

        const bool uni = norm == MatrixNorm::unilateral;
        const std::string& cell = uni ? uni_cell : multi_cell;
        if (cell.empty()) {
            rep.name = "matrix_inverse";
            rep.params = std::move(params);
            rep.status = VerifyStatus::match;
            rep.verified_order = T;
            rep.lhs_terms = rep.rhs_terms = (std::int64_t)(cells.size() * cells.size());
        } else {
            rep = compare_series("matrix_inverse", std::move(params),
                                 (uni ? uni_sum : multi_sum).lower(T),
                                 (uni ? uni_want : multi_want).lower(T));
        }
    } catch (const std::exception& e) {
        rep.name = "matrix_inverse";
        rep.params = std::move(params);
        rep.status = VerifyStatus::error;
        rep.message = e.what();
    }
    rep.millis = sw.millis();
    return rep;
}

IdentityReport verify_lemma_commutation(const Partition& box, const ParamEnv& env, Exponent T) {
    Stopwatch sw;
    auto params = env_params(env);
    params["box"] = box.str();
    params["mode"] = env.sigma && env.rho ? "strong" : "weak";
    IdentityReport rep;
    try {
        MatrixNorm norm = env.specialized() ? MatrixNorm::multilateral : MatrixNorm::unilateral;
        auto cells = enumerate_box(env.n, box);
        for (auto& nu : cells)
            for (auto& lam : cells) {
                QRat lhs = QRat::zero();
                for (auto& mu : enumerate_box(env.n, nu)) {
                    if (!mu.contains(lam)) continue;
                    QRat nv = n_entry(nu, mu, env);
                    if (nv.is_zero()) continue;
                    QRat mv = m_entry(mu, lam.parts(), env, norm);
                    if (mv.is_zero()) continue;
                    lhs += nv * mv;
                }
                QRat rhs = m_entry(nu, lam.parts(), env, norm);
                if (!rhs.is_zero()) rhs *= QRat::from_factored(s_entry(lam.parts(), env));
                if (lhs != rhs) {
                    params["cell"] = nu.str() + "*" + lam.str();
                    rep = compare_series("lemma_commutation", std::move(params), lhs.lower(T),
                                         rhs.lower(T));
                    rep.millis = sw.millis();
                    return rep;
                }
            }
        rep.name = "lemma_commutation";
        rep.params = std::move(params);
        rep.status = VerifyStatus::match;
        rep.verified_order = T;
        rep.lhs_terms = rep.rhs_terms = (std::int64_t)(cells.size() * cells.size());
    } catch (const std::exception& e) {
        rep.name = "lemma_commutation";
        rep.params = std::move(params);
        rep.status = VerifyStatus::error;
        rep.message = e.what();
    }
    rep.millis = sw.millis();
    return rep;
}

IdentityReport verify_orbit_invariance(const Partition& nu, const LatticePoint& lambda,
                                       const ParamEnv& env, Exponent T) {
    Stopwatch sw;
    const std::int64_t kN = 2; // iterate count entering the summand's q-power
    auto params = env_params(env);
    params["nu"] = nu.str();
    params["lambda"] = lattice_str(lambda);
    IdentityReport rep;
    try {
        if (!env.specialized())
            throw std::domain_error("verify_orbit_invariance: needs b = q^{m+2k(n-1)}");
        const std::int64_t k = env.k, m = env.m, nn = (std::int64_t)env.n;
        const std::size_t n = env.n;
        std::vector<Exponent> y(n);
        for (std::size_t i = 1; i <= n; ++i)
            y[i - 1] = Exponent::from_half(2 * part1(lambda, i) + m + 2 * k * (nn - (std::int64_t)i));
        auto orbit = hyperoctahedral_orbit(y);
        params["orbit"] = std::to_string(orbit.size());

        QRat base = m_entry(nu, lambda, env, MatrixNorm::multilateral);
        WpSummand base_s = wp_summand(lambda, env, kN);
        QRat base_sv = QRat::from_factored(base_s.val);
        for (auto& img : orbit) {
            LatticePoint mu(n);
            for (std::size_t i = 1; i <= n; ++i)
                mu[i - 1] = (img[i - 1].half_units() - m - 2 * k * (nn - (std::int64_t)i)) / 2;
            QRat entry = m_entry(nu, mu, env, MatrixNorm::multilateral);
            WpSummand s = wp_summand(mu, env, kN);
            if (entry != base || s.qexp != base_s.qexp || QRat::from_factored(s.val) != base_sv) {
                params["image"] = lattice_str(mu);
                rep = compare_series("orbit_invariance", std::move(params), entry.lower(T),
                                     base.lower(T));
                if (rep.status == VerifyStatus::match) rep.status = VerifyStatus::mismatch;
                rep.millis = sw.millis();
                return rep;
            }
        }
        rep.name = "orbit_invariance";
        rep.params = std::move(params);
        rep.status = VerifyStatus::match;
        rep.verified_order = T;
        rep.lhs_terms = rep.rhs_terms = (std::int64_t)orbit.size();
    } catch (const std::exception& e) {
        rep.name = "orbit_invariance";
        rep.params = std::move(params);
        rep.status = VerifyStatus::error;
        rep.message = e.what();
    }
    rep.millis = sw.millis();
    return rep;
}

} // namespace qb
