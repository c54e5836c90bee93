#pragma once

// Fingerprints of spans F <- H -> G and the agreement test against cocones
// F -> K <- G: a cocone (alpha, beta) equalises (mu, nu) exactly when alpha and
// beta agree on every fingerprint pair at the chosen component X and at [0].

#include "setfun/error.hpp"
#include "setfun/finmap.hpp"
#include "setfun/functors.hpp"
#include "setfun/nattrans.hpp"
#include "setfun/report.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace setfun {

struct NatTransPair {
    FunctorPtr hub;
    NatTransTable left;  // mu : H -> F
    NatTransTable right; // nu : H -> G
};

inline NatTransPair make_nat_pair(FunctorPtr hub, NatTransTable left, NatTransTable right)
{
    if (!NatTransTable::same_functor(left.source, hub) || !NatTransTable::same_functor(right.source, hub)) {
        fail(ErrorKind::SignatureMismatch, "make_nat_pair: both transformations must start at the hub");
    }
    return {std::move(hub), std::move(left), std::move(right)};
}

struct Cocone {
    NatTransTable alpha; // F -> K
    NatTransTable beta;  // G -> K
};

using ElemPair = std::pair<Elem, Elem>;

struct FingerprintSet {
    std::size_t x_size = 0;
    std::vector<ElemPair> pairs;      // sorted, unique; inside F[x] x G[x]
    std::vector<ElemPair> zero_pairs; // sorted, unique; inside F[0] x G[0]

    friend bool operator==(const FingerprintSet&, const FingerprintSet&) = default;
    friend auto operator<=>(const FingerprintSet&, const FingerprintSet&) = default;
};

namespace detail {

inline std::vector<ElemPair> image_pairs(const NatTransPair& p, std::size_t k)
{
    std::vector<ElemPair> out;
    for (std::size_t x = 0; x < p.hub->object_size(k); ++x) {
        out.emplace_back(p.left.components[k][x], p.right.components[k][x]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

inline FingerprintSet fingerprint(const NatTransPair& p, std::size_t x_size)
{
    if (x_size > p.hub->skeleton_max()) {
        fail(ErrorKind::SkeletonExceeded, "fingerprint: component outside the skeleton");
    }
    return {x_size, detail::image_pairs(p, x_size), detail::image_pairs(p, 0)};
}

/// alpha o mu = beta o nu on every component of the skeleton.
inline bool cocone_agrees(const NatTransTable& alpha, const NatTransTable& beta, const NatTransPair& p)
{
    if (!NatTransTable::same_functor(alpha.source, p.left.target)
        || !NatTransTable::same_functor(beta.source, p.right.target)
        || !NatTransTable::same_functor(alpha.target, beta.target)) {
        fail(ErrorKind::SignatureMismatch, "cocone_agrees: cocone does not match the pair");
    }
    for (std::size_t k = 0; k < p.left.components.size(); ++k) {
        for (std::size_t x = 0; x < p.left.components[k].size(); ++x) {
            if (alpha.components[k][p.left.components[k][x]] != beta.components[k][p.right.components[k][x]]) {
                return false;
            }
        }
    }
    return true;
}

/// alpha_X(x1) = beta_X(x2) on the fingerprint pairs and likewise at [0].
inline bool fingerprint_agrees(const NatTransTable& alpha, const NatTransTable& beta, const FingerprintSet& fp)
{
    const auto holds = [&](std::size_t k, const std::vector<ElemPair>& pairs) {
        return std::all_of(pairs.begin(), pairs.end(),
                           [&](const ElemPair& e) { return alpha.components[k][e.first] == beta.components[k][e.second]; });
    };
    return holds(fp.x_size, fp.pairs) && holds(0, fp.zero_pairs);
}

inline json fingerprint_json(const FingerprintSet& fp)
{
    json pairs = json::array();
    for (auto [a, b] : fp.pairs) {
        pairs.push_back({a, b});
    }
    json zero = json::array();
    for (auto [a, b] : fp.zero_pairs) {
        zero.push_back({a, b});
    }
    return {{"x_size", fp.x_size}, {"pairs", pairs}, {"zero_pairs", zero}};
}

/// Every (mu, nu) with mu : H -> F and nu : H -> G among the enumerated transformations.
inline std::vector<NatTransPair> enumerate_pairs(const FunctorPtr& hub, const FunctorPtr& f, const FunctorPtr& g,
                                                 std::uint64_t guard = kDefaultGuard)
{
    const auto mus = enumerate_nat_trans(hub, f, guard);
    const auto nus = enumerate_nat_trans(hub, g, guard);
    std::vector<NatTransPair> out;
    for (const auto& mu : mus) {
        for (const auto& nu : nus) {
            out.push_back({hub, mu, nu});
        }
    }
    return out;
}

inline std::vector<Cocone> enumerate_cocones(const FunctorPtr& f, const FunctorPtr& g, const FunctorPtr& k,
                                             std::uint64_t guard = kDefaultGuard)
{
    const auto alphas = enumerate_nat_trans(f, k, guard);
    const auto betas = enumerate_nat_trans(g, k, guard);
    std::vector<Cocone> out;
    for (const auto& alpha : alphas) {
        for (const auto& beta : betas) {
            out.push_back({alpha, beta});
        }
    }
    return out;
}

/// Hubs tried when none are given: the empty and one-point constants, F itself and
/// the one-point constant plus F.
inline std::vector<FunctorPtr> default_hub_pool(const FunctorPtr& f)
{
    const std::size_t n = f->skeleton_max();
    const FunctorTable one = constant_functor(FinSet{1}, n);
    return {share(constant_functor(FinSet{0}, n)), share(one), f, share(coproduct(one, *f))};
}

/// Cocone vertices tried when none are given. Coproduct vertices are left out: when the
/// skeleton stops below a quotient-hom base, the search into them overruns the default guard.
inline std::vector<FunctorPtr> default_cocone_targets(const FunctorPtr& f, const FunctorPtr& g)
{
    std::vector<FunctorPtr> out{share(constant_functor(FinSet{1}, f->skeleton_max())), f};
    if (!NatTransTable::same_functor(f, g)) {
        out.push_back(g);
    }
    return out;
}

/// Runs the (pair x cocone) grid. Forward direction: agreement implies the
/// fingerprint condition. Reverse direction: the fingerprint condition implies
/// agreement. Corollary: pairs with equal fingerprints agree with the same cocones.
/// x_size must be large enough that both functors are accessed from sets of size <= x_size.
inline Report verify_isbell_claim(const FunctorPtr& f, const FunctorPtr& g, std::size_t x_size,
                                  const std::vector<NatTransPair>& pairs, const std::vector<Cocone>& cocones)
{
    if (f->skeleton_max() != g->skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "verify_isbell_claim: skeletons differ");
    }
    if (x_size > f->skeleton_max()) {
        fail(ErrorKind::SkeletonExceeded, "verify_isbell_claim: x_size outside the skeleton");
    }
    if (accessibility_rank(*f) > x_size + 1 || accessibility_rank(*g) > x_size + 1) {
        fail(ErrorKind::RankTooLow, "verify_isbell_claim: x_size is below the accessibility rank");
    }
    for (const auto& p : pairs) {
        if (!NatTransTable::same_functor(p.left.target, f) || !NatTransTable::same_functor(p.right.target, g)) {
            fail(ErrorKind::SignatureMismatch, "verify_isbell_claim: pair does not end at (F, G)");
        }
    }
    for (const auto& c : cocones) {
        if (!NatTransTable::same_functor(c.alpha.source, f) || !NatTransTable::same_functor(c.beta.source, g)
            || !NatTransTable::same_functor(c.alpha.target, c.beta.target)) {
            fail(ErrorKind::SignatureMismatch, "verify_isbell_claim: cocone does not start at (F, G)");
        }
    }

    Report rep("isbell-verify");
    std::vector<FingerprintSet> prints;
    std::vector<std::vector<bool>> pattern(pairs.size());
    std::uint64_t agreements = 0;
    std::uint64_t forward_failures = 0;
    std::uint64_t reverse_failures = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        prints.push_back(fingerprint(pairs[i], x_size));
        for (std::size_t j = 0; j < cocones.size(); ++j) {
            ++rep.pairs_checked;
            const bool agree = cocone_agrees(cocones[j].alpha, cocones[j].beta, pairs[i]);
            const bool fp_ok = fingerprint_agrees(cocones[j].alpha, cocones[j].beta, prints[i]);
            pattern[i].push_back(agree);
            agreements += agree ? 1 : 0;
            if (agree != fp_ok) {
                (agree ? forward_failures : reverse_failures) += 1;
                rep.add_violation({{"kind", agree ? "forward" : "reverse"},
                                   {"pair", i},
                                   {"cocone", j},
                                   {"hub", pairs[i].hub->description()},
                                   {"mu", pairs[i].left.components},
                                   {"nu", pairs[i].right.components},
                                   {"alpha", cocones[j].alpha.components},
                                   {"beta", cocones[j].beta.components},
                                   {"fingerprint", fingerprint_json(prints[i])}});
            }
        }
    }
    std::map<FingerprintSet, std::size_t> first_with;
    std::uint64_t corollary_failures = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [it, inserted] = first_with.emplace(prints[i], i);
        if (!inserted && pattern[it->second] != pattern[i]) {
            ++corollary_failures;
            rep.add_violation({{"kind", "corollary"},
                               {"pair", i},
                               {"same_fingerprint_as", it->second},
                               {"fingerprint", fingerprint_json(prints[i])}});
        }
    }
    rep.summary = {{"x_size", x_size},
                   {"pairs", pairs.size()},
                   {"cocones", cocones.size()},
                   {"agreements", agreements},
                   {"distinct_fingerprints", first_with.size()},
                   {"forward_failures", forward_failures},
                   {"reverse_counterexamples", reverse_failures},
                   {"corollary_failures", corollary_failures}};
    return rep;
}

} // namespace setfun
