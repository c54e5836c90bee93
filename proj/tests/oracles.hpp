#pragma once

// Test-only reference implementations. Each one recomputes a quantity from the
// definitions with plain containers, independent of the library's fast paths.

#include "setfun/setfun.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using setfun::Elem;
using setfun::FinMap;
using setfun::FinSet;
using setfun::Space;

using Family = std::set<std::set<Elem>>;

inline Space a0() { return Space::from_lists(2, {{0}, {1}}); }

inline Family family_of(const Space& a)
{
    Family out;
    for (const auto& s : a.opens()) {
        const auto m = s.members();
        out.insert(std::set<Elem>(m.begin(), m.end()));
    }
    return out;
}

/// Continuity straight from the definition, on std::set families.
inline bool continuous(const std::vector<Elem>& table, const Family& dom_opens, const Family& cod_opens)
{
    for (const auto& s : cod_opens) {
        std::set<Elem> pre;
        for (Elem x = 0; x < table.size(); ++x) {
            if (s.contains(table[x])) {
                pre.insert(x);
            }
        }
        if (!dom_opens.contains(pre)) {
            return false;
        }
    }
    return true;
}

/// Every table dom -> cod, by counting in base cod.
inline std::vector<std::vector<Elem>> all_tables(std::size_t dom, std::size_t cod)
{
    std::vector<std::vector<Elem>> out;
    if (dom > 0 && cod == 0) {
        return out;
    }
    std::vector<Elem> t(dom, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = dom;
        while (i > 0 && t[i - 1] + 1 == cod) {
            t[--i] = 0;
        }
        if (i == 0) {
            return out;
        }
        ++t[i - 1];
    }
}

inline std::size_t count_continuous(const Space& a, const Space& b)
{
    const Family fa = family_of(a);
    const Family fb = family_of(b);
    std::size_t n = 0;
    for (const auto& t : all_tables(a.carrier().size, b.carrier().size)) {
        n += continuous(t, fa, fb) ? 1 : 0;
    }
    return n;
}

/// Automorphism count by trying every permutation against an adjacency matrix.
inline std::size_t count_automorphisms(std::size_t n, const std::vector<std::pair<Elem, Elem>>& edges)
{
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (auto [i, j] : edges) {
        adj[i][j] = adj[j][i] = 1;
    }
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::size_t count = 0;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                ok = adj[i][j] == adj[p[i]][p[j]];
            }
        }
        count += ok ? 1 : 0;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

/// Number of classes of the raw relation on maps A -> [x], closed transitively by union-find.
inline std::size_t class_count_union_find(const Space& a, std::size_t x)
{
    std::vector<FinMap> maps;
    for (const FinMap& g : setfun::all_maps(a.carrier(), FinSet{x})) {
        maps.push_back(g);
    }
    std::vector<std::size_t> parent(maps.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            i = parent[i] = parent[parent[i]];
        }
        return i;
    };
    for (std::size_t i = 0; i < maps.size(); ++i) {
        for (std::size_t j = i + 1; j < maps.size(); ++j) {
            if (setfun::equivalent(maps[i], maps[j], a)) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        roots.insert(find(i));
    }
    return roots.size();
}

/// All spaces with carrier <= max_carrier and every open family (2, 4, 16 families for sizes 0, 1, 2).
inline std::vector<Space> exhaustive_spaces(std::size_t max_carrier)
{
    std::vector<Space> out;
    for (std::size_t n = 0; n <= max_carrier; ++n) {
        const std::uint64_t subsets = std::uint64_t{1} << n;
        for (std::uint64_t family = 0; family < (std::uint64_t{1} << subsets); ++family) {
            out.push_back(Space::from_family_mask(n, family));
        }
    }
    return out;
}

/// Distinct random families on a 3-element carrier from a fixed seed.
inline std::vector<Space> random_spaces_carrier3(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::set<std::uint64_t> used;
    std::vector<Space> out;
    while (out.size() < count) {
        const std::uint64_t family = gen() & 0xFFU;
        if (used.insert(family).second) {
            out.push_back(Space::from_family_mask(3, family));
        }
    }
    return out;
}

/// All (K1) spaces with carrier <= max_carrier.
inline std::vector<Space> k1_spaces(std::size_t max_carrier)
{
    std::vector<Space> out;
    for (std::size_t n = 0; n <= max_carrier; ++n) {
        const std::uint64_t subsets = std::uint64_t{1} << n;
        for (std::uint64_t family = 0; family < (std::uint64_t{1} << subsets); ++family) {
            Space s = Space::from_family_mask(n, family);
            if (setfun::is_k1(s)) {
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

/// F[0] = {} and F[k] = {*} otherwise; a functor not of quotient-hom form.
inline setfun::FunctorTable nonempty_functor(std::size_t n)
{
    std::vector<std::size_t> sizes(n + 1, 1);
    sizes[0] = 0;
    std::vector<std::vector<Elem>> arrows((n + 1) * (n + 1));
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t k2 = 1; k2 <= n; ++k2) {
            arrows[k * (n + 1) + k2].assign(setfun::map_count(FinSet{k}, FinSet{k2}), 0);
        }
    }
    return {n, std::move(sizes), std::move(arrows), "nonempty"};
}

/// The identity functor written out directly: F[k] = [k], F h = h.
inline setfun::FunctorTable identity_functor(std::size_t n)
{
    std::vector<std::size_t> sizes(n + 1);
    std::iota(sizes.begin(), sizes.end(), 0);
    std::vector<std::vector<Elem>> arrows((n + 1) * (n + 1));
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t k2 = 0; k2 <= n; ++k2) {
            for (const auto& t : all_tables(k, k2)) {
                arrows[k * (n + 1) + k2].insert(arrows[k * (n + 1) + k2].end(), t.begin(), t.end());
            }
        }
    }
    return {n, std::move(sizes), std::move(arrows), "identity"};
}

/// Tables with every component size <= 3 at skeleton 3.
inline std::vector<setfun::FunctorPtr> small_functor_pool()
{
    using setfun::share;
    const auto ne = nonempty_functor(3);
    std::vector<setfun::FunctorPtr> pool{share(setfun::constant_functor(FinSet{0}, 3)),
                                         share(setfun::constant_functor(FinSet{1}, 3)),
                                         share(setfun::constant_functor(FinSet{2}, 3)),
                                         share(setfun::constant_functor(FinSet{3}, 3)),
                                         share(identity_functor(3)),
                                         share(ne),
                                         share(setfun::coproduct(setfun::constant_functor(FinSet{1}, 3), ne)),
                                         share(setfun::coproduct(ne, ne)),
                                         share(setfun::coproduct(ne, setfun::coproduct(ne, ne)))};
    return pool;
}

} // namespace oracle
