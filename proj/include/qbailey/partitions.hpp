#pragma once

#include "qbailey/exponent.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace qb {

/// Weakly decreasing non-negative integer vector. Trailing zeros are
/// canonical padding: (2,1) and (2,1,0) compare equal.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<std::int64_t> parts) : parts_(parts) { normalize(); }
    explicit Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) { normalize(); }

    const std::vector<std::int64_t>& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    std::int64_t part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; } // 0-based
    bool is_empty() const { return parts_.empty(); }

    std::int64_t weight() const {
        std::int64_t s = 0;
        for (auto p : parts_) s += p;
        return s;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const Partition& a, const Partition& b) {
        // graded lexicographic: by weight, then lex on parts
        auto wa = a.weight(), wb = b.weight();
        if (wa != wb) return wa < wb;
        return a.parts_ < b.parts_;
    }

    /// mu subseteq lambda (containment order, componentwise).
    bool contains(const Partition& mu) const {
        for (std::size_t i = 0; i < mu.parts_.size(); ++i)
            if (mu.parts_[i] > part(i)) return false;
        return true;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i)
            s += (i ? "," : "") + std::to_string(parts_[i]);
        return s + ")";
    }

private:
    void normalize() {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
            if (parts_[i] < parts_[i + 1]) throw std::invalid_argument("Partition: not weakly decreasing");
        for (auto p : parts_)
            if (p < 0) throw std::invalid_argument("Partition: negative part");
    }
    std::vector<std::int64_t> parts_;
};

/// Point of Z^n; coordinates may be negative and need not be sorted.
using LatticePoint = std::vector<std::int64_t>;

struct PartStats {
    std::int64_t weight; // |lambda|
    std::int64_t n_of;   // n(lambda) = sum (i-1) lambda_i
    std::int64_t n_conj; // n(lambda') = sum C(lambda_i, 2), m(m-1)/2 for all integers
    std::int64_t n2;     // n_2(lambda) = sum lambda_i^2
};

inline std::int64_t binom2(std::int64_t m) { return m * (m - 1) / 2; }

inline PartStats stats(std::span<const std::int64_t> v) {
    PartStats s{0, 0, 0, 0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        s.weight += v[i];
        s.n_of += static_cast<std::int64_t>(i) * v[i];
        s.n_conj += binom2(v[i]);
        s.n2 += v[i] * v[i];
    }
    return s;
}
inline PartStats stats(const Partition& p) { return stats(std::span(p.parts())); }

/// Interlacing test: lambda_1 >= mu_1 >= lambda_2 >= ... >= lambda_n >= mu_n >= 0.
inline bool is_horizontal_strip(const Partition& lambda, const Partition& mu) {
    std::size_t n = std::max(lambda.length(), mu.length());
    for (std::size_t i = 0; i < n; ++i) {
        if (lambda.part(i) < mu.part(i)) return false;
        if (mu.part(i) < lambda.part(i + 1)) return false;
    }
    return true;
}

/// All partitions mu with mu subseteq cap and at most n parts, in graded
/// lexicographic order.
std::vector<Partition> enumerate_box(std::size_t n, const Partition& cap);

/// All containment chains mu^{N-1} subseteq ... subseteq mu^1 subseteq top.
/// Each chain is returned as the vector (mu^1, ..., mu^{N-1}).
std::vector<std::vector<Partition>> enumerate_chains(const Partition& top, std::size_t N);

/// Horizontal strips below lambda: all nu with lambda/nu a horizontal strip.
std::vector<Partition> strips_below(const Partition& lambda);

/// The shell of Z^n with max |coordinate| = L, deterministic order.
std::vector<LatticePoint> lattice_shells(std::size_t n, std::int64_t L);

/// Hyperoctahedral orbit (permutations and sign changes) of a point with
/// half-integer coordinates, duplicates collapsed.
std::vector<std::vector<Exponent>> hyperoctahedral_orbit(const std::vector<Exponent>& v);

/// Integer-point convenience overload.
std::vector<LatticePoint> hyperoctahedral_orbit(const LatticePoint& v);

/// The staircase delta(n) = (n-1, ..., 1, 0).
inline std::vector<std::int64_t> staircase(std::size_t n) {
    std::vector<std::int64_t> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<std::int64_t>(n - 1 - i);
    return d;
}

} // namespace qb
