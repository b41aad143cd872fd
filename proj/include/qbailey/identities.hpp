#pragma once

#include "qbailey/bailey.hpp"

#include <functional>

namespace qb {

/// Parameters shared by all registry identities; each identity reads the
/// fields relevant to its schema and ignores the rest.
struct IdentityParams {
    std::size_t n = 1;               // rank of the multiple series
    std::int64_t N = 2;              // iteration count / modulus parameter (modulus 2N+1)
    std::int64_t delta = 0;          // delta in {0, 1}
    std::int64_t k = 2;              // Andrews-Gordon k (modulus 2k+1)
    std::int64_t i = 1;              // Andrews-Gordon i, 1 <= i <= k
    std::int64_t shell_cap = 64;     // max lattice shell / chain weight before giving up
    std::uint64_t seed = 1;          // sampling seed (orbit points, exponent tuples)
    Rational z_scale = Rational(-1); // jacobi_triple argument z = z_scale * q^{z_exp}
    Exponent z_exp = Exponent::from_int(1);
};

/// (c q^e; q^step)_infty truncated at T: only factors with exponent <= T
/// contribute below the truncation order. step must be positive.
QSeries poch_inf(const QFactorBase& base, Exponent step, Exponent T);

/// prod_{i=1}^{n} (x q^{k(1-i)}; q)_infty, the n-fold Pochhammer prefactor.
QSeries poch_inf_multi(const QFactorBase& x, std::size_t n, std::int64_t k, Exponent T);

/// Z^n sum by growing max-norm shells; stops once two consecutive shells
/// contribute exactly zero below T. Throws "divergent or bound too small"
/// when shell_cap shells do not stabilize.
QSeries lattice_sum(const std::function<QSeries(const LatticePoint&)>& term, std::size_t n,
                    Exponent T, std::int64_t shell_cap = 64);

/// Exact Z^n sum of a terminating summand (entries vanish outside a finite
/// region): grows the enclosing box until two consecutive added shells sum to
/// exactly zero. Throws like lattice_sum when the cap is hit.
QRat lattice_sum_exact(const std::function<QRat(const LatticePoint&)>& term, std::size_t n,
                       std::int64_t shell_cap = 64);

/// Sum over chains mu^levels <= ... <= mu^1 of partitions with at most n
/// parts, grouped by |mu^1|; stops once two consecutive weights contribute
/// exactly zero below T.
QSeries chain_sum(const std::function<QSeries(const std::vector<Partition>&)>& term,
                  std::size_t n, std::size_t levels, Exponent T, std::int64_t weight_cap = 256);

/// Exact determinant by cofactor expansion.
QSeries det_series(const std::vector<std::vector<QSeries>>& m);

/// Gordon's B_{k,i}(0..Nmax): partitions where adjacent part values have
/// combined multiplicity at most k-1 and at most i-1 parts equal 1.
std::vector<std::int64_t> gordon_count(std::int64_t k, std::int64_t i, std::int64_t Nmax);

/// Generating function of gordon_count to order T.
QSeries gordon_gf(std::int64_t k, std::int64_t i, Exponent T);

/// Product side of the Andrews-Gordon identities: parts not congruent to
/// 0, +-i mod 2k+1.
QSeries ag_product_series(std::int64_t k, std::int64_t i, Exponent T);

struct IdentityInfo {
    std::string name;
    std::string summary;
    std::string schema; // parameters the identity reads
};
const std::vector<IdentityInfo>& registry();

/// One side of a registry identity as a series to order T (cell aggregates
/// for the entrywise matrix identities).
QSeries identity_side(const std::string& name, bool lhs, const IdentityParams& p, Exponent T);

/// Builds both sides of the named identity and compares exactly to order T.
IdentityReport verify_identity(const std::string& name, const IdentityParams& p, Exponent T);

} // namespace qb
