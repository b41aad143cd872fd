#include "qbailey/partitions.hpp"

#include <map>

namespace qb {

namespace {

void box_rec(std::size_t n, const Partition& cap, std::size_t i, std::int64_t prev,
             std::vector<std::int64_t>& cur, std::vector<Partition>& out) {
    if (i == n) {
        out.emplace_back(cur);
        return;
    }
    std::int64_t hi = std::min(prev, cap.part(i));
    for (std::int64_t v = hi; v >= 0; --v) {
        cur.push_back(v);
        box_rec(n, cap, i + 1, v, cur, out);
        cur.pop_back();
        if (v == 0) break; // remaining coordinates forced to zero
    }
}

} // namespace

std::vector<Partition> enumerate_box(std::size_t n, const Partition& cap) {
    std::vector<Partition> out;
    std::vector<std::int64_t> cur;
    box_rec(n, cap, 0, cap.part(0), cur, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::vector<Partition>> enumerate_chains(const Partition& top, std::size_t N) {
    std::vector<std::vector<Partition>> chains{{}};
    for (std::size_t level = 1; level < N; ++level) {
        std::vector<std::vector<Partition>> next;
        for (auto& chain : chains) {
            const Partition& cap = chain.empty() ? top : chain.back();
            for (auto& mu : enumerate_box(cap.length(), cap)) {
                auto c = chain;
                c.push_back(mu);
                next.push_back(std::move(c));
            }
        }
        chains = std::move(next);
    }
    return chains;
}

std::vector<Partition> strips_below(const Partition& lambda) {
    std::size_t n = lambda.length();
    std::vector<Partition> out;
    std::vector<std::int64_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            out.emplace_back(cur);
            return;
        }
        for (std::int64_t v = lambda.part(i); v >= lambda.part(i + 1); --v) {
            cur.push_back(v);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<LatticePoint> lattice_shells(std::size_t n, std::int64_t L) {
    std::vector<LatticePoint> out;
    LatticePoint cur(n);
    std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool hit) {
        if (i == n) {
            if (hit) out.push_back(cur);
            return;
        }
        for (std::int64_t v = -L; v <= L; ++v) {
            cur[i] = v;
            rec(i + 1, hit || v == L || v == -L);
        }
    };
    rec(0, L == 0);
    if (L == 0) return {LatticePoint(n, 0)};
    return out;
}

std::vector<std::vector<Exponent>> hyperoctahedral_orbit(const std::vector<Exponent>& v) {
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::int64_t> halves(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) halves[i] = v[i].half_units();
    std::sort(halves.begin(), halves.end());
    do {
        // all sign patterns for this permutation
        std::size_t n = halves.size();
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            auto w = halves;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ull << i)) w[i] = -w[i];
            seen.insert(w);
        }
    } while (std::next_permutation(halves.begin(), halves.end()));
    std::vector<std::vector<Exponent>> out;
    for (auto& w : seen) {
        std::vector<Exponent> p;
        p.reserve(w.size());
        for (auto h : w) p.push_back(Exponent::from_half(h));
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<LatticePoint> hyperoctahedral_orbit(const LatticePoint& v) {
    std::vector<Exponent> e;
    e.reserve(v.size());
    for (auto x : v) e.push_back(Exponent::from_int(x));
    std::vector<LatticePoint> out;
    for (auto& w : hyperoctahedral_orbit(e)) {
        LatticePoint p;
        p.reserve(w.size());
        for (auto h : w) p.push_back(h.int_value());
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace qb
