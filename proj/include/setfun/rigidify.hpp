#pragma once

// The rigidifying embedding: a space A is sent to A + V, where V is the vertex
// set of a fixed asymmetric graph on six vertices, with opens chosen so that
// every continuous map between images is the identity on V.

#include "setfun/error.hpp"
#include "setfun/finmap.hpp"
#include "setfun/report.hpp"
#include "setfun/space.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace setfun {

inline constexpr std::size_t kRigidVertices = 6;
inline constexpr std::size_t kMaxAutomorphismVertices = 8;

/// Simple undirected graph; edges are stored as (i, j) with i < j, sorted.
struct Graph {
    std::size_t vertices = 0;
    std::vector<std::pair<Elem, Elem>> edges;

    friend bool operator==(const Graph&, const Graph&) = default;
};

using RigidGraph = Graph;

/// Vertex pairs (i, j), i < j, in lexicographic order; pair p is bit p of an edge mask.
inline std::vector<std::pair<Elem, Elem>> vertex_pairs(std::size_t n)
{
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem i = 0; i < n; ++i) {
        for (Elem j = i + 1; j < n; ++j) {
            out.emplace_back(i, j);
        }
    }
    return out;
}

inline Graph graph_from_mask(std::size_t n, std::uint64_t mask)
{
    Graph g{n, {}};
    const auto pairs = vertex_pairs(n);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if ((mask >> p) & 1U) {
            g.edges.push_back(pairs[p]);
        }
    }
    return g;
}

inline std::uint64_t graph_mask(const Graph& g)
{
    const auto pairs = vertex_pairs(g.vertices);
    std::uint64_t mask = 0;
    for (const auto& e : g.edges) {
        auto it = std::find(pairs.begin(), pairs.end(), e);
        mask |= std::uint64_t{1} << static_cast<std::size_t>(it - pairs.begin());
    }
    return mask;
}

/// All vertex permutations that map the edge set onto itself, in lexicographic order.
inline std::vector<FinMap> automorphisms(const Graph& g)
{
    const std::size_t n = g.vertices;
    if (n > kMaxAutomorphismVertices) {
        fail(ErrorKind::TooLarge, "automorphisms: brute force is limited to 8 vertices");
    }
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto [i, j] : g.edges) {
        adj[i][j] = adj[j][i] = true;
    }
    std::vector<Elem> perm(n);
    std::iota(perm.begin(), perm.end(), Elem{0});
    std::vector<FinMap> out;
    do {
        bool ok = std::all_of(g.edges.begin(), g.edges.end(),
                              [&](const auto& e) { return adj[perm[e.first]][perm[e.second]]; });
        if (ok) {
            out.emplace_back(FinSet{n}, FinSet{n}, perm);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Least edge mask on six vertices whose graph has only the identity automorphism.
inline RigidGraph find_rigid_graph()
{
    const std::uint64_t limit = std::uint64_t{1} << vertex_pairs(kRigidVertices).size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        Graph g = graph_from_mask(kRigidVertices, mask);
        if (automorphisms(g).size() == 1) {
            return g;
        }
    }
    fail(ErrorKind::LawViolation, "find_rigid_graph: no asymmetric graph on six vertices");
}

inline const RigidGraph& rigid_graph()
{
    static const RigidGraph g = find_rigid_graph();
    return g;
}

struct PsiImage {
    Space space;
    std::size_t a_size = 0;
    std::size_t vertex_offset = 0;
};

/// Carrier A + V (A first, vertex v_i at |A| + i - 1). The opens are: vertex
/// singletons and their complements, graph edges and their complements, and for
/// each open R of A the sets {v1,v2,v3} + R and {v4,v5,v6} + (A \ R).
inline PsiImage psi_object(const Space& a)
{
    const std::size_t n = a.carrier().size;
    if (n + kRigidVertices > kMaxSubsetAmbient) {
        fail(ErrorKind::TooLarge, "psi_object: carrier too large");
    }
    const FinSet bar{n + kRigidVertices};
    const std::uint64_t all = Subset::low_bits(bar.size);
    const std::uint64_t a_bits = Subset::low_bits(n);
    auto v = [n](std::size_t i) { return std::uint64_t{1} << (n + i); };

    std::vector<Subset> opens;
    for (std::size_t i = 0; i < kRigidVertices; ++i) {
        opens.emplace_back(bar, v(i));
        opens.emplace_back(bar, all & ~v(i));
    }
    for (auto [i, j] : rigid_graph().edges) {
        const std::uint64_t e = v(i) | v(j);
        opens.emplace_back(bar, e);
        opens.emplace_back(bar, all & ~e);
    }
    const std::uint64_t low = v(0) | v(1) | v(2);
    const std::uint64_t high = v(3) | v(4) | v(5);
    for (const Subset& r : a.opens()) {
        opens.emplace_back(bar, low | r.bits());
        opens.emplace_back(bar, high | (a_bits & ~r.bits()));
    }
    return {Space(bar, std::move(opens)), n, n};
}

/// f + id_V.
inline FinMap psi_morphism(const FinMap& f, const Space& a, const Space& b)
{
    if (!is_continuous(f, a, b)) {
        fail(ErrorKind::NotContinuous, "psi_morphism: map is not continuous");
    }
    const std::size_t n = a.carrier().size;
    const std::size_t m = b.carrier().size;
    std::vector<Elem> t(f.table().begin(), f.table().end());
    for (std::size_t i = 0; i < kRigidVertices; ++i) {
        t.push_back(static_cast<Elem>(m + i));
    }
    return {FinSet{n + kRigidVertices}, FinSet{m + kRigidVertices}, std::move(t)};
}

/// Enumerates every continuous map PsiA -> PsiB and checks that each one is
/// Psi f for exactly one continuous f : A -> B, and that the counts agree.
inline Report verify_psi_full(const Space& a, const Space& b, std::uint64_t guard = kDefaultGuard)
{
    const PsiImage pa = psi_object(a);
    const PsiImage pb = psi_object(b);
    if (map_count(pa.space.carrier(), pb.space.carrier()) > guard) {
        fail(ErrorKind::TooLarge, "verify_psi_full: candidate count exceeds guard");
    }
    const auto lifted = search_continuous(pa.space, pb.space, guard);
    const auto homs = continuous_maps(a, b, guard);
    const std::size_t n = a.carrier().size;
    const std::size_t m = b.carrier().size;

    Report rep("psi-verify");
    std::set<FinMap> restricted;
    json morphisms = json::array();
    for (const FinMap& g : lifted) {
        ++rep.pairs_checked;
        const auto t = g.table();
        bool vertices_fixed = true;
        for (std::size_t i = 0; i < kRigidVertices; ++i) {
            vertices_fixed = vertices_fixed && t[n + i] == m + i;
        }
        if (!vertices_fixed) {
            rep.add_violation({{"kind", "moves-vertices"}, {"g", std::vector<Elem>(t.begin(), t.end())}});
            continue;
        }
        if (!std::all_of(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n), [m](Elem y) { return y < m; })) {
            rep.add_violation({{"kind", "a-part-leaves-b"}, {"g", std::vector<Elem>(t.begin(), t.end())}});
            continue;
        }
        FinMap f(FinSet{n}, FinSet{m}, std::vector<Elem>(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n)));
        if (!is_continuous(f, a, b)) {
            rep.add_violation({{"kind", "restriction-not-continuous"},
                               {"g", std::vector<Elem>(t.begin(), t.end())},
                               {"f", std::vector<Elem>(f.table().begin(), f.table().end())}});
            continue;
        }
        if (psi_morphism(f, a, b) != g) {
            rep.add_violation({{"kind", "not-psi-image"}, {"g", std::vector<Elem>(t.begin(), t.end())}});
            continue;
        }
        if (!restricted.insert(f).second) {
            rep.add_violation({{"kind", "duplicate-restriction"}, {"g", std::vector<Elem>(t.begin(), t.end())}});
        }
        morphisms.push_back({{"g", std::vector<Elem>(t.begin(), t.end())},
                             {"f", std::vector<Elem>(f.table().begin(), f.table().end())}});
    }
    for (const FinMap& f : homs) {
        if (!restricted.contains(f)) {
            rep.add_violation({{"kind", "missing-psi-image"}, {"f", std::vector<Elem>(f.table().begin(), f.table().end())}});
        }
    }
    if (lifted.size() != homs.size()) {
        rep.add_violation({{"kind", "count-mismatch"}, {"psi_homs", lifted.size()}, {"base_homs", homs.size()}});
    }
    rep.summary = {{"psi_hom_count", lifted.size()}, {"base_hom_count", homs.size()}, {"morphisms", morphisms}};
    return rep;
}

} // namespace setfun
