#pragma once

#include "qbailey/report.hpp"
#include "qbailey/wfunctions.hpp"

namespace qb {

/// Scalar environment for the matrix machinery: t = q^k throughout, and
/// b = q^{m + 2k(n-1)} unless b_override is set (general-b work). sigma and
/// rho select the strong forms of S and N when present; absent means the
/// weak (sigma, rho -> infinity) limits.
struct ParamEnv {
    std::size_t n = 1;
    std::int64_t k = 1;
    std::int64_t m = 0; // delta when in {0, 1}
    std::optional<QFactorBase> b_override;
    std::optional<QFactorBase> sigma, rho;

    bool specialized() const { return !b_override.has_value(); }
    QFactorBase b() const {
        return b_override ? *b_override : QFactorBase::q_int(m + 2 * k * ((std::int64_t)n - 1));
    }
};

/// The two matrix normalizations are distinct definitions and are never
/// silently interchanged; their cross-relation is measured by tests, not
/// assumed. The multilateral one extends to lattice column indices under the
/// (m, k) specialization.
enum class MatrixNorm { unilateral, multilateral };

/// One alpha or beta sequence of a Bailey pair, stored on its finite support.
/// Unilateral entries are indexed by partitions only; multilateral alpha
/// entries may sit on lattice points.
struct BaileySequence {
    enum class Mode { unilateral, multilateral };
    std::map<LatticePoint, FactoredQ> entries;
    Mode mode = Mode::unilateral;
};

/// Lowering matrix entry M_{nu,lambda}. The unilateral normalization takes
/// general b and partition columns; the multilateral one requires the (m, k)
/// specialization and accepts lattice columns. At n = 1 the closed form
/// evaluates directly at any integer column; for n > 1 a lattice column is
/// folded to the partition representative of the orbit of
/// lambda_i + m/2 + k(n-i), and an orbit without representative gives 0.
QRat m_entry(const Partition& nu, std::span<const std::int64_t> lambda, const ParamEnv& env,
             MatrixNorm norm);

/// Inverse-matrix entry M^{-1}_{lambda,mu}; both normalizations take general
/// b. Columns mu are partitions; the row may be any staircase argument.
QRat m_inv_entry(std::span<const std::int64_t> lambda, const Partition& mu, const ParamEnv& env,
                 MatrixNorm norm);

/// Diagonal entry S_lambda: the strong form when sigma, rho are present,
/// the weak monomial limit (requires m in {0,1}, k = 1) otherwise.
FactoredQ s_entry(std::span<const std::int64_t> lambda, const ParamEnv& env);

/// Iteration matrix entry N_{nu,mu}: strong form with sigma, rho; weak limit
/// (requires m in {0,1}, k = 1) otherwise. N is the same in both
/// normalizations (it is a diagonal conjugation-invariant), so no
/// normalization argument.
QRat n_entry(const Partition& nu, const Partition& mu, const ParamEnv& env);

/// Alpha sequence of the unit Bailey pair (beta = delta_{lambda,0}).
/// Unilateral: the cancelled product form at general b; at b = 1 the result
/// is a signalled pole (is_pole()), steering callers to the multilateral
/// form. Multilateral: the orbit-normalized monomial times f(delta)
/// (requires m in {0,1}, k = 1); note the empty-index value is f(delta),
/// not 1, and it is validated through the identity sums.
FactoredQ unit_alpha(std::span<const std::int64_t> lambda, const ParamEnv& env, MatrixNorm norm);

/// The multilateralized well-poised summand at a lattice point mu, for the
/// N-th iterate: a q-power with rational exponent (quarter grid) times an
/// exact product form in the shifted coordinates y_i = mu_i + m/2 + k(n-i).
struct WpSummand {
    Rational qexp;
    FactoredQ val;
};
WpSummand wp_summand(const LatticePoint& mu, const ParamEnv& env, std::int64_t N);

/// Checks sum_mu M_{lambda,mu} M^{-1}_{mu,nu} = delta_{lambda,nu} exactly for
/// all lambda, nu in the box. The requested normalization pairing decides the
/// status; when the environment is specialized, the other pairing and the
/// mixed (unilateral M with multilateral inverse) diagnostic are also
/// computed and recorded in the report params.
IdentityReport verify_inverse(const Partition& box, const ParamEnv& env, MatrixNorm norm,
                              Exponent T);

/// Checks the entrywise commutation N * M = M * S on the box, exactly.
/// Uses the multilateral M when the environment is specialized, the
/// unilateral M otherwise (the relation holds for either).
IdentityReport verify_lemma_commutation(const Partition& box, const ParamEnv& env, Exponent T);

/// Checks that the multilateral M entry and the well-poised summand take the
/// same value at every hyperoctahedral image of lambda_i + m/2 + k(n-i).
IdentityReport verify_orbit_invariance(const Partition& nu, const LatticePoint& lambda,
                                       const ParamEnv& env, Exponent T);

} // namespace qb
