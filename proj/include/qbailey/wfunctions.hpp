#pragma once

#include "qbailey/partitions.hpp"
#include "qbailey/qpoch.hpp"
#include "qbailey/qrat.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qb {

/// The six well-poised W families: the full two-parameter function and its
/// limiting cases. The tag selects the single-variable closed form and the
/// matching multivariable recursion.
enum class WFamily { full, a, b, ab, s_up, s_down };

/// Scalar parameters of a W family; only the ones the family demands are set.
///   full: a, b    a: b    b: a    ab: s    s_up/s_down: none
/// t = q^k throughout.
struct WParams {
    std::optional<QFactorBase> a, b, s;
    std::int64_t k = 1;

    static WParams family_full(QFactorBase a, QFactorBase b, std::int64_t k) {
        return {a, b, std::nullopt, k};
    }
    static WParams family_a(QFactorBase b, std::int64_t k) { return {std::nullopt, b, std::nullopt, k}; }
    static WParams family_b(QFactorBase a, std::int64_t k) { return {a, std::nullopt, std::nullopt, k}; }
    static WParams family_ab(QFactorBase s, std::int64_t k) { return {std::nullopt, std::nullopt, s, k}; }
    static WParams bare(std::int64_t k) { return {std::nullopt, std::nullopt, std::nullopt, k}; }
};

using IndexVector = std::vector<std::int64_t>; // lambda entries, lattice allowed

/// Skew factor H_{lambda/mu}(q, t, b) (with b) or its b -> 0 limit (b absent),
/// t = q^k. Entries may be lattice points; the negative-index Pochhammer
/// convention applies.
FactoredQ h_skew(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                 std::size_t n, std::int64_t k, const std::optional<QFactorBase>& b);

/// Single-variable W_{lambda/mu}(x) for the selected family. For partition
/// arguments this is exactly 0 unless lambda/mu is a horizontal strip; for
/// lattice arguments the formula is evaluated verbatim and zero/pole
/// accounting decides vanishing.
FactoredQ w_single(WFamily family, const QFactorBase& x, std::span<const std::int64_t> lambda,
                   std::span<const std::int64_t> mu, std::size_t n, const WParams& params);

/// Multivariable W_{lambda/mu}(x_1, ..., x_m) via the family's recursion.
QRat w_multi(WFamily family, std::span<const QFactorBase> xs, std::span<const std::int64_t> lambda,
             std::span<const std::int64_t> mu, std::size_t n, const WParams& params);

/// W_{lambda}(q^{nu_1} t^{n-1}, ..., q^{nu_n}) at the staircase argument.
QRat w_staircase(WFamily family, std::span<const std::int64_t> nu,
                 std::span<const std::int64_t> lambda, std::size_t n, const WParams& params);

/// Monomial-and-product weight whose product with the a-family W at the
/// staircase argument is invariant under sign changes and permutations of
/// lambda_i + m/2 + k(n-i), for b = q^{m + k(n-1)}. m_h is m in half-units.
/// Evaluated verbatim at any lattice index (negative-index convention).
FactoredQ staircase_fold_weight(std::span<const std::int64_t> lambda, std::int64_t m_h,
                                std::int64_t k, std::size_t n);

/// Partition representative of the orbit of lambda under sign changes and
/// permutations of lambda_i + m/2 + k(n-i). Returns false when the orbit
/// contains no partition.
bool staircase_orbit_rep(std::span<const std::int64_t> lambda, std::int64_t m_h, std::int64_t k,
                         std::size_t n, std::vector<std::int64_t>& rep);

/// Closed-form large-argument limits of the staircase evaluation for the
/// a and s_up families (t = q).
FactoredQ w_limit_formula(WFamily family, const Partition& mu, std::int64_t delta, std::size_t n);

/// Clears the w_multi memo table (used by tests to get clean timings).
void w_memo_clear();

} // namespace qb
