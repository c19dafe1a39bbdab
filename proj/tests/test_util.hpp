#pragma once

#include "jcs/spoly.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace jcs::testutil {

/// Deterministic generator (splitmix64); identical on every platform.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
};

/// All monomials of /\(m,n) with every even exponent drawn from texps.
inline std::vector<SPoly> enumerate_monomials(const Signature& sig,
                                              const std::vector<int>& texps) {
    std::vector<std::vector<int>> evens{{}};
    for (int i = 0; i < sig.m; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& e : evens)
            for (int t : texps) {
                auto e2 = e;
                e2.push_back(t);
                next.push_back(std::move(e2));
            }
        evens = std::move(next);
    }
    std::vector<SPoly> out;
    for (const auto& e : evens)
        for (std::uint32_t mask = 0; mask < (1u << sig.n); ++mask)
            out.push_back(SPoly::monomial(sig, e, mask));
    return out;
}

inline std::vector<std::pair<std::string, SPoly>> named_monomials(const Signature& sig,
                                                                  const std::vector<int>& texps) {
    std::vector<std::pair<std::string, SPoly>> out;
    for (auto& p : enumerate_monomials(sig, texps)) out.emplace_back(spoly_str(p), std::move(p));
    return out;
}

} // namespace jcs::testutil
