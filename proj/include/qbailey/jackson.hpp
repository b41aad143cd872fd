#pragma once

#include "qbailey/report.hpp"
#include "qbailey/wfunctions.hpp"

namespace qb {

/// Scalar parameters of the Jackson coefficients omega_{lambda/mu}(x; r; a, b)
/// at p = 0; t = q^k. The argument x (or variable list) is passed separately,
/// mirroring the W-function API.
struct OmegaParams {
    QFactorBase r, a, b;
    std::int64_t k = 1;
};

/// Single-variable Jackson coefficient. Exact rational-function value; may be
/// nonzero when lambda/mu is not a horizontal strip, and is zero unless
/// mu is contained in lambda.
QRat omega_single(const QFactorBase& x, std::span<const std::int64_t> lambda,
                  std::span<const std::int64_t> mu, std::size_t n, const OmegaParams& p);

/// Multivariable omega over a variable list, defined by peeling the front
/// variable: omega_{lambda/tau}(x1, ..., xm) =
///   sum_mu omega_{lambda/mu}(r^{1-m} x1; a r^{2(m-1)}, b r^{m-1})
///          omega_{mu/tau}(x2, ..., xm).
QRat omega_list(std::span<const QFactorBase> xs, std::span<const std::int64_t> lambda,
                std::span<const std::int64_t> tau, std::size_t n, const OmegaParams& p);

/// Two-block recursion step: the ys block is evaluated with each variable
/// scaled by r^{-split_count} and parameters (a r^{2 split_count},
/// b r^{split_count}), split_count = |z|. Equals omega_list on the
/// concatenated list for every split point.
QRat omega_multi(std::span<const std::int64_t> lambda, std::span<const std::int64_t> tau,
                 std::span<const QFactorBase> ys, std::span<const QFactorBase> z, std::size_t n,
                 const OmegaParams& p);

/// Cocycle identity check:
///   omega_{nu/mu}((uv)^{-1}; uv; a (uv)^2, b uv)
///     = sum_{mu subseteq lambda subseteq nu}
///       omega_{nu/lambda}(v^{-1}; v; a (uv)^2, b uv)
///       omega_{lambda/mu}(u^{-1}; u; a u^2, b u),
/// compared as series to order T.
IdentityReport cocycle_check(const Partition& nu, const Partition& mu, const QFactorBase& u,
                             const QFactorBase& v, const QFactorBase& a, const QFactorBase& b,
                             std::size_t n, std::int64_t k, Exponent T);

} // namespace qb
