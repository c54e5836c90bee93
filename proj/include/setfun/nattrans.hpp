#pragma once

// Natural transformations between skeleton-tabulated functors.

#include "setfun/error.hpp"
#include "setfun/finmap.hpp"
#include "setfun/functors.hpp"
#include "setfun/report.hpp"
#include "setfun/space.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace setfun {

using FunctorPtr = std::shared_ptr<const FunctorTable>;

inline FunctorPtr share(FunctorTable f) { return std::make_shared<const FunctorTable>(std::move(f)); }

/// components[k][x] is the image of x in F[k] under the k-th component.
struct NatTransTable {
    FunctorPtr source;
    FunctorPtr target;
    std::vector<std::vector<Elem>> components;

    friend bool operator==(const NatTransTable& x, const NatTransTable& y)
    {
        return x.components == y.components && same_functor(x.source, y.source) && same_functor(x.target, y.target);
    }

    static bool same_functor(const FunctorPtr& x, const FunctorPtr& y) { return x == y || (x && y && *x == *y); }
};

/// Checks shape and ranges of a component family; naturality is not checked here.
inline NatTransTable make_nat(FunctorPtr source, FunctorPtr target, std::vector<std::vector<Elem>> components)
{
    if (source->skeleton_max() != target->skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "natural transformation between functors on different skeletons");
    }
    if (components.size() != source->skeleton_max() + 1) {
        fail(ErrorKind::InvalidValue, "component family does not cover the skeleton");
    }
    for (std::size_t k = 0; k < components.size(); ++k) {
        if (components[k].size() != source->object_size(k)) {
            fail(ErrorKind::InvalidValue, "component " + std::to_string(k) + " has the wrong length");
        }
        for (Elem v : components[k]) {
            if (v >= target->object_size(k)) {
                fail(ErrorKind::InvalidValue, "component " + std::to_string(k) + " leaves the target object");
            }
        }
    }
    return {std::move(source), std::move(target), std::move(components)};
}

inline NatTransTable identity_nat(const FunctorPtr& f)
{
    std::vector<std::vector<Elem>> comps(f->skeleton_max() + 1);
    for (std::size_t k = 0; k < comps.size(); ++k) {
        comps[k].resize(f->object_size(k));
        for (std::size_t x = 0; x < comps[k].size(); ++x) {
            comps[k][x] = static_cast<Elem>(x);
        }
    }
    return {f, f, std::move(comps)};
}

/// Vertical composite outer o inner.
inline NatTransTable compose(const NatTransTable& outer, const NatTransTable& inner)
{
    if (!NatTransTable::same_functor(inner.target, outer.source)) {
        fail(ErrorKind::SignatureMismatch, "compose: inner target differs from outer source");
    }
    std::vector<std::vector<Elem>> comps(inner.components.size());
    for (std::size_t k = 0; k < comps.size(); ++k) {
        for (Elem x : inner.components[k]) {
            comps[k].push_back(outer.components[k][x]);
        }
    }
    return {inner.source, outer.target, std::move(comps)};
}

inline json map_json(const FinMap& h)
{
    return {{"dom", h.dom().size}, {"cod", h.cod().size}, {"table", std::vector<Elem>(h.table().begin(), h.table().end())}};
}

/// Lists every (h, x) with G h (mu x) != mu (F h x).
inline Report check_naturality(const NatTransTable& mu)
{
    const FunctorTable& f = *mu.source;
    const FunctorTable& g = *mu.target;
    if (f.skeleton_max() != g.skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "check_naturality: skeletons differ");
    }
    Report rep("nat-check");
    const std::size_t n = f.skeleton_max();
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t k2 = 0; k2 <= n; ++k2) {
            const std::uint64_t count = map_count(FinSet{k}, FinSet{k2});
            for (std::uint64_t h = 0; h < count; ++h) {
                const auto fh = f.arrow(k, k2, h);
                const auto gh = g.arrow(k, k2, h);
                for (std::size_t x = 0; x < fh.size(); ++x) {
                    ++rep.pairs_checked;
                    const Elem via_source = mu.components[k2][fh[x]];
                    const Elem via_target = gh[mu.components[k][x]];
                    if (via_source != via_target) {
                        rep.add_violation({{"h", map_json(decode(h, FinSet{k}, FinSet{k2}))},
                                           {"element", x},
                                           {"mu_of_Fh", via_source},
                                           {"Gh_of_mu", via_target}});
                    }
                }
            }
        }
    }
    return rep;
}

/// The family X |-> (g/~B |-> g o f /~A) from Phi(B) to Phi(A) determined by
/// mu_B(id_B) = f/~A. Both tables must come from from_quotient_hom.
inline NatTransTable yoneda_extend(const FinMap& f, const FunctorPtr& phi_b, const FunctorPtr& phi_a)
{
    const auto& hb = phi_b->hom();
    const auto& ha = phi_a->hom();
    if (!hb || !ha) {
        fail(ErrorKind::SignatureMismatch, "yoneda_extend: both functors must be quotient hom-functors");
    }
    if (f.dom() != ha->functor.base().carrier() || f.cod() != hb->functor.base().carrier()) {
        fail(ErrorKind::SignatureMismatch, "yoneda_extend: map must go from A's carrier to B's carrier");
    }
    if (phi_a->skeleton_max() != phi_b->skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "yoneda_extend: skeletons differ");
    }
    std::vector<std::vector<Elem>> comps(phi_b->skeleton_max() + 1);
    for (std::size_t k = 0; k < comps.size(); ++k) {
        for (const FinMap& g : hb->reps[k]) {
            comps[k].push_back(ha->class_of(compose(g, f)));
        }
    }
    return {phi_b, phi_a, std::move(comps)};
}

/// True when g o f /~A does not depend on the member g of each ~B class.
inline bool representative_independent(const FinMap& f, const FunctorPtr& phi_b, const FunctorPtr& phi_a)
{
    const auto& hb = phi_b->hom();
    const auto& ha = phi_a->hom();
    for (std::size_t k = 0; k < hb->reps.size(); ++k) {
        for (const FinMap& g : hb->reps[k]) {
            if (auto other = twin(g, hb->functor.base())) {
                if (ha->class_of(compose(g, f)) != ha->class_of(compose(*other, f))) {
                    return false;
                }
            }
        }
    }
    return true;
}

struct NatEnumeration {
    std::vector<NatTransTable> transformations;
    std::string route;
    std::uint64_t candidates = 0;
    /// Yoneda route only: the map f with mu_B(id_B) = f/~A for each transformation.
    std::vector<FinMap> determining_maps;
};

namespace detail {

inline bool nat_less(const NatTransTable& x, const NatTransTable& y) { return x.components < y.components; }

inline NatEnumeration enumerate_yoneda(const FunctorPtr& source, const FunctorPtr& target, std::uint64_t guard)
{
    const Space& b = source->hom()->functor.base();
    const Space& a = target->hom()->functor.base();
    NatEnumeration out;
    // Well-definedness at [2] on the pair of maps B -> [2] cut out by an open S forces
    // f^-1[S] to be open, so with (K1) on both sides and A nonempty only continuous f qualify.
    const bool prune = source->skeleton_max() >= 2 && is_k1(a) && is_k1(b) && a.carrier().size > 0;
    std::vector<FinMap> candidates;
    if (prune) {
        out.route = "yoneda-pruned";
        candidates = search_continuous(a, b, guard);
    } else {
        out.route = "yoneda-exhaustive";
        if (map_count(a.carrier(), b.carrier()) > guard) {
            fail(ErrorKind::TooLarge, "enumerate_nat_trans: candidate count exceeds guard");
        }
        for (const FinMap& f : all_maps(a.carrier(), b.carrier())) {
            candidates.push_back(f);
        }
    }
    std::vector<std::pair<NatTransTable, FinMap>> found;
    for (const FinMap& f : candidates) {
        if (canonical_rep(f, a).canonical != f) {
            continue;
        }
        ++out.candidates;
        if (!representative_independent(f, source, target)) {
            continue;
        }
        NatTransTable mu = yoneda_extend(f, source, target);
        if (check_naturality(mu).passed()) {
            found.emplace_back(std::move(mu), f);
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        return std::tie(x.first.components, x.second) < std::tie(y.first.components, y.second);
    });
    for (auto& [mu, f] : found) {
        if (!out.transformations.empty() && out.transformations.back().components == mu.components) {
            continue;
        }
        out.transformations.push_back(std::move(mu));
        out.determining_maps.push_back(std::move(f));
    }
    return out;
}

// Backtracking over elements (largest skeleton level first). Assigning mu(x) = v
// forces mu(F h x) = G h v for every arrow h out of x's level; these forced values
// are propagated until a fixpoint or a conflict.
class NatSearch {
public:
    NatSearch(const FunctorTable& f, const FunctorTable& g, std::uint64_t guard)
        : f_(f)
        , g_(g)
        , n_(f.skeleton_max())
        , guard_(guard)
    {
        offset_.resize(n_ + 2, 0);
        for (std::size_t k = 0; k <= n_; ++k) {
            offset_[k + 1] = offset_[k] + f.object_size(k);
        }
        value_.assign(offset_[n_ + 1], kUnset);
        for (std::size_t k = n_ + 1; k-- > 0;) {
            for (std::size_t x = 0; x < f.object_size(k); ++x) {
                order_.push_back(offset_[k] + x);
            }
        }
    }

    std::vector<std::vector<std::vector<Elem>>> run()
    {
        for (std::size_t k = 0; k <= n_; ++k) {
            if (f_.object_size(k) > 0 && g_.object_size(k) == 0) {
                return {};
            }
        }
        recurse(0);
        std::sort(solutions_.begin(), solutions_.end());
        return std::move(solutions_);
    }

    [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_; }

private:
    static constexpr std::int64_t kUnset = -1;

    [[nodiscard]] std::size_t level_of(std::size_t gid) const
    {
        return static_cast<std::size_t>(std::upper_bound(offset_.begin(), offset_.end(), gid) - offset_.begin()) - 1;
    }

    bool assign(std::size_t gid, Elem v)
    {
        std::vector<std::size_t> queue{gid};
        value_[gid] = v;
        trail_.push_back(gid);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::size_t z = queue[qi];
            const std::size_t k = level_of(z);
            const std::size_t local = z - offset_[k];
            const auto val = static_cast<Elem>(value_[z]);
            for (std::size_t k2 = 0; k2 <= n_; ++k2) {
                const std::uint64_t count = map_count(FinSet{k}, FinSet{k2});
                for (std::uint64_t h = 0; h < count; ++h) {
                    const std::size_t y = offset_[k2] + f_.arrow(k, k2, h)[local];
                    const Elem required = g_.arrow(k, k2, h)[val];
                    if (value_[y] == kUnset) {
                        value_[y] = required;
                        trail_.push_back(y);
                        queue.push_back(y);
                    } else if (value_[y] != required) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            value_[trail_.back()] = kUnset;
            trail_.pop_back();
        }
    }

    void recurse(std::size_t pos)
    {
        while (pos < order_.size() && value_[order_[pos]] != kUnset) {
            ++pos;
        }
        if (pos == order_.size()) {
            std::vector<std::vector<Elem>> comps(n_ + 1);
            for (std::size_t k = 0; k <= n_; ++k) {
                for (std::size_t x = offset_[k]; x < offset_[k + 1]; ++x) {
                    comps[k].push_back(static_cast<Elem>(value_[x]));
                }
            }
            // stored output counts against the same guard as search nodes
            stored_ += offset_[n_ + 1] + 1;
            if (stored_ > guard_) {
                fail(ErrorKind::TooLarge, "enumerate_nat_trans: result size exceeded the guard");
            }
            solutions_.push_back(std::move(comps));
            return;
        }
        const std::size_t gid = order_[pos];
        const std::size_t k = level_of(gid);
        for (std::size_t v = 0; v < g_.object_size(k); ++v) {
            if (++nodes_ > guard_) {
                fail(ErrorKind::TooLarge, "enumerate_nat_trans: search exceeded the node guard");
            }
            const std::size_t mark = trail_.size();
            if (assign(gid, static_cast<Elem>(v))) {
                recurse(pos + 1);
            }
            undo(mark);
        }
    }

    const FunctorTable& f_;
    const FunctorTable& g_;
    std::size_t n_;
    std::uint64_t guard_;
    std::vector<std::size_t> offset_;
    std::vector<std::int64_t> value_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> trail_;
    std::vector<std::vector<std::vector<Elem>>> solutions_;
    std::uint64_t nodes_ = 0;
    std::uint64_t stored_ = 0;
};

} // namespace detail

/// Quotient hom-functor pairs use Yoneda determination; any other pair falls back
/// to a propagating search over component values. Results are sorted by components.
inline NatEnumeration enumerate_nat_trans_detailed(const FunctorPtr& source, const FunctorPtr& target,
                                                   std::uint64_t guard = kDefaultGuard)
{
    if (source->skeleton_max() != target->skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "enumerate_nat_trans: skeletons differ");
    }
    if (source->hom() && target->hom()) {
        return detail::enumerate_yoneda(source, target, guard);
    }
    NatEnumeration out;
    out.route = "propagating-search";
    detail::NatSearch search(*source, *target, guard);
    for (auto& comps : search.run()) {
        out.transformations.push_back({source, target, std::move(comps)});
    }
    out.candidates = search.nodes();
    return out;
}

/// Exhaustive propagating search regardless of how the functors were built.
inline std::vector<NatTransTable> enumerate_nat_trans_by_search(const FunctorPtr& source, const FunctorPtr& target,
                                                                std::uint64_t guard = kDefaultGuard)
{
    if (source->skeleton_max() != target->skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "enumerate_nat_trans: skeletons differ");
    }
    std::vector<NatTransTable> out;
    detail::NatSearch search(*source, *target, guard);
    for (auto& comps : search.run()) {
        out.push_back({source, target, std::move(comps)});
    }
    return out;
}

inline std::vector<NatTransTable> enumerate_nat_trans(const FunctorPtr& source, const FunctorPtr& target,
                                                      std::uint64_t guard = kDefaultGuard)
{
    return enumerate_nat_trans_detailed(source, target, guard).transformations;
}

/// Size of the raw component search space prod_k |G[k]|^|F[k]|, saturating.
inline std::uint64_t component_family_count(const FunctorTable& f, const FunctorTable& g)
{
    std::uint64_t total = 1;
    for (std::size_t k = 0; k <= f.skeleton_max(); ++k) {
        const std::uint64_t c = map_count(FinSet{f.object_size(k)}, FinSet{g.object_size(k)});
        if (c != 0 && total > UINT64_MAX / c) {
            return UINT64_MAX;
        }
        total *= c;
    }
    return total;
}

/// Calls visit on every component family F -> G, natural or not, in lexicographic order.
inline void for_each_component_family(const FunctorTable& f, const FunctorTable& g, std::uint64_t guard,
                                      const std::function<void(const std::vector<std::vector<Elem>>&)>& visit)
{
    if (f.skeleton_max() != g.skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "for_each_component_family: skeletons differ");
    }
    if (component_family_count(f, g) > guard) {
        fail(ErrorKind::TooLarge, "for_each_component_family: search space exceeds guard");
    }
    const std::size_t n = f.skeleton_max();
    std::vector<std::vector<Elem>> comps(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        if (f.object_size(k) > 0 && g.object_size(k) == 0) {
            return;
        }
        comps[k].assign(f.object_size(k), 0);
    }
    while (true) {
        visit(comps);
        std::size_t k = n + 1;
        bool advanced = false;
        while (k-- > 0 && !advanced) {
            for (std::size_t x = comps[k].size(); x-- > 0;) {
                if (comps[k][x] + 1 < g.object_size(k)) {
                    ++comps[k][x];
                    advanced = true;
                    break;
                }
                comps[k][x] = 0;
            }
        }
        if (!advanced) {
            return;
        }
    }
}

/// Checks that f |-> Phi f is a bijection from Hom(A, B) onto Nat(Phi B, Phi A).
/// Both spaces must be K-objects: (K1) on the spaces and (K2) on every morphism.
inline Report verify_phi_embedding(const Space& a, const Space& b, std::size_t skeleton_max,
                                   std::uint64_t guard = kDefaultGuard)
{
    if (!is_k1(a) || !is_k1(b)) {
        fail(ErrorKind::NotKObjects, "verify_phi_embedding: a space violates (K1)");
    }
    const auto homs = search_continuous(a, b, guard);
    for (const FinMap& f : homs) {
        if (!check_k2(f, a, b)) {
            fail(ErrorKind::NotKObjects, "verify_phi_embedding: a morphism violates (K2)");
        }
    }
    const FunctorPtr phi_a = share(from_quotient_hom(a, skeleton_max));
    const FunctorPtr phi_b = share(from_quotient_hom(b, skeleton_max));
    const NatEnumeration nats = enumerate_nat_trans_detailed(phi_b, phi_a, guard);

    Report rep("phi-embedding");
    std::vector<NatTransTable> images;
    for (const FinMap& f : homs) {
        ++rep.pairs_checked;
        NatTransTable mu = yoneda_extend(f, phi_b, phi_a);
        if (!representative_independent(f, phi_b, phi_a) || !check_naturality(mu).passed()) {
            rep.add_violation({{"kind", "phi-f-not-natural"}, {"f", map_json(f)}});
        }
        images.push_back(std::move(mu));
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            if (images[i].components == images[j].components) {
                rep.add_violation({{"kind", "not-faithful"}, {"f1", map_json(homs[i])}, {"f2", map_json(homs[j])}});
            }
        }
    }
    for (std::size_t t = 0; t < nats.transformations.size(); ++t) {
        std::size_t preimages = 0;
        for (const auto& img : images) {
            preimages += img.components == nats.transformations[t].components ? 1 : 0;
        }
        if (preimages != 1) {
            rep.add_violation({{"kind", preimages == 0 ? "not-full" : "ambiguous-preimage"},
                               {"determining_map", map_json(nats.determining_maps.at(t))},
                               {"preimages", preimages}});
        }
    }
    if (nats.transformations.size() != homs.size()) {
        rep.add_violation({{"kind", "count-mismatch"}, {"hom_count", homs.size()}, {"nat_count", nats.transformations.size()}});
    }
    rep.summary = {{"hom_count", homs.size()},
                   {"nat_count", nats.transformations.size()},
                   {"route", nats.route},
                   {"skeleton_max", skeleton_max}};
    return rep;
}

} // namespace setfun
