#pragma once

// Set functors tabulated on the skeleton [0], [1], ..., [n], and the quotient
// hom-functors Phi(A): X |-> maps(A, X) / ~A, where g ~A g' glues a map with a
// two-element image to its twin that swaps the two values, provided the fibres
// are open in A.

#include "setfun/error.hpp"
#include "setfun/finmap.hpp"
#include "setfun/report.hpp"
#include "setfun/space.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace setfun {

inline constexpr std::size_t kDefaultSkeletonMax = 4;

struct ClassRep {
    FinMap canonical;

    friend auto operator<=>(const ClassRep&, const ClassRep&) = default;
};

namespace detail {

inline void require_same_signature(const FinMap& g1, const FinMap& g2, const Space& a, const char* op)
{
    if (g1.dom() != a.carrier() || g2.dom() != a.carrier() || g1.cod() != g2.cod()) {
        fail(ErrorKind::SignatureMismatch, std::string(op) + ": maps must share the space's carrier as domain and a codomain");
    }
}

inline std::uint64_t fibre_bits(std::span<const Elem> table, Elem value) noexcept
{
    std::uint64_t bits = 0;
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (table[x] == value) {
            bits |= std::uint64_t{1} << x;
        }
    }
    return bits;
}

} // namespace detail

/// g1 ~A g2: equal, or both have the same two-element image {x, x'} and
/// g1^-1[x] = g2^-1[x'] is open for one labelling of the image.
inline bool equivalent(const FinMap& g1, const FinMap& g2, const Space& a)
{
    detail::require_same_signature(g1, g2, a, "equivalent");
    if (g1 == g2) {
        return true;
    }
    const Subset whole = Subset::full(a.carrier());
    const Subset img = image(g1, whole);
    if (img != image(g2, whole) || img.count() != 2) {
        return false;
    }
    const auto m = img.members();
    const auto fits = [&](Elem x, Elem y) {
        const Subset p = preimage(g1, Subset::of(g1.cod(), {x}));
        return p == preimage(g2, Subset::of(g2.cod(), {y})) && a.is_open(p);
    };
    return fits(m[0], m[1]) || fits(m[1], m[0]);
}

/// The other member of g's class, if the class has two members.
inline std::optional<FinMap> twin(const FinMap& g, const Space& a)
{
    if (g.dom() != a.carrier()) {
        fail(ErrorKind::SignatureMismatch, "twin: map domain differs from the space's carrier");
    }
    const auto t = g.table();
    if (t.empty()) {
        return std::nullopt;
    }
    const Elem x = t[0];
    Elem y = x;
    for (Elem v : t) {
        if (v != x) {
            if (y != x && v != y) {
                return std::nullopt;
            }
            y = v;
        }
    }
    if (y == x) {
        return std::nullopt;
    }
    const std::uint64_t fx = detail::fibre_bits(t, x);
    if (!a.is_open_bits(fx) && !a.is_open_bits(Subset::low_bits(t.size()) & ~fx)) {
        return std::nullopt;
    }
    std::vector<Elem> swapped(t.begin(), t.end());
    for (Elem& v : swapped) {
        v = v == x ? y : x;
    }
    return FinMap(g.dom(), g.cod(), std::move(swapped));
}

/// Lexicographically least member of g's class.
inline ClassRep canonical_rep(const FinMap& g, const Space& a)
{
    auto other = twin(g, a);
    if (other && *other < g) {
        return {*std::move(other)};
    }
    return {g};
}

/// Phi(A) presented by its base space. Without (K1) on the base the functor is
/// refused unless explicitly allowed.
class QuotientHomFunctor {
public:
    explicit QuotientHomFunctor(Space base, bool allow_non_k1 = false)
        : base_(std::move(base))
    {
        if (!allow_non_k1 && !is_k1(base_)) {
            fail(ErrorKind::K1Violation, "quotient hom-functor base does not satisfy (K1)");
        }
    }

    [[nodiscard]] const Space& base() const noexcept { return base_; }

    [[nodiscard]] bool equivalent(const FinMap& g1, const FinMap& g2) const { return setfun::equivalent(g1, g2, base_); }

    [[nodiscard]] ClassRep canonical_rep(const FinMap& g) const { return setfun::canonical_rep(g, base_); }

    /// One class per element of Phi(A)X, sorted.
    [[nodiscard]] std::vector<ClassRep> tabulate(FinSet x) const
    {
        std::vector<ClassRep> out;
        for (const FinMap& g : all_maps(base_.carrier(), x)) {
            ClassRep c = canonical_rep(g);
            if (c.canonical == g) {
                out.push_back(std::move(c));
            }
        }
        return out;
    }

    /// Phi(A)h applied to a class: the class of h o g.
    [[nodiscard]] ClassRep apply_on_map(const FinMap& h, const ClassRep& c) const
    {
        if (h.dom() != c.canonical.cod()) {
            fail(ErrorKind::SignatureMismatch, "apply_on_map: map domain differs from the class codomain");
        }
        return canonical_rep(compose(h, c.canonical));
    }

    /// Every class is reached from the class of id_A: c = Phi(A)(g)(id/~) with g = c.canonical.
    [[nodiscard]] FinMap accessibility_witness(FinSet x, const ClassRep& c) const
    {
        if (c.canonical.dom() != base_.carrier() || c.canonical.cod() != x) {
            fail(ErrorKind::SignatureMismatch, "accessibility_witness: class is not an element of Phi(A)X");
        }
        return c.canonical;
    }

    friend bool operator==(const QuotientHomFunctor&, const QuotientHomFunctor&) = default;

private:
    Space base_;
};

/// Component of Phi f at X: the class of g o f, for f : A -> B continuous between (K1) spaces.
inline ClassRep phi_morphism_component(const FinMap& f, const Space& a, const Space& b, FinSet x, const ClassRep& c)
{
    if (!is_k1(a) || !is_k1(b)) {
        fail(ErrorKind::K1Violation, "phi_morphism_component: spaces must satisfy (K1)");
    }
    if (!is_continuous(f, a, b)) {
        fail(ErrorKind::NotContinuous, "phi_morphism_component: map is not continuous");
    }
    if (c.canonical.dom() != b.carrier() || c.canonical.cod() != x) {
        fail(ErrorKind::SignatureMismatch, "phi_morphism_component: class is not an element of Phi(B)X");
    }
    return canonical_rep(compose(c.canonical, f), a);
}

/// Element data kept for tables built from a quotient hom-functor: the canonical
/// map of every class and a lookup from map code to class id.
struct HomPresentation {
    QuotientHomFunctor functor;
    std::vector<std::vector<FinMap>> reps;
    std::vector<std::vector<Elem>> class_of_code;

    [[nodiscard]] Elem class_of(const FinMap& g) const { return class_of_code.at(g.cod().size).at(encode(g)); }
};

/// A set functor restricted to the skeleton {[0], ..., [n]}: the size of each F[k]
/// and the table of F h for every map h : [k] -> [k'].
class FunctorTable {
public:
    FunctorTable() = default;

    /// arrows[k * (n + 1) + k'] holds the tables of F h for h : [k] -> [k'] in
    /// lexicographic order of h, each of length sizes[k], concatenated.
    FunctorTable(std::size_t skeleton_max, std::vector<std::size_t> sizes, std::vector<std::vector<Elem>> arrows,
                 std::string description = {})
        : n_(skeleton_max)
        , sizes_(std::move(sizes))
        , arrows_(std::move(arrows))
        , description_(std::move(description))
    {
        if (n_ > 8) {
            fail(ErrorKind::TooLarge, "skeleton_max above 8 is not supported");
        }
        if (sizes_.size() != n_ + 1 || arrows_.size() != (n_ + 1) * (n_ + 1)) {
            fail(ErrorKind::InvalidValue, "functor table shape does not match skeleton_max");
        }
        for (std::size_t k = 0; k <= n_; ++k) {
            for (std::size_t k2 = 0; k2 <= n_; ++k2) {
                const auto& a = arrows_[slot(k, k2)];
                if (a.size() != map_count(FinSet{k}, FinSet{k2}) * sizes_[k]) {
                    fail(ErrorKind::InvalidValue, "functor table arrow block has the wrong length");
                }
                for (Elem v : a) {
                    if (v >= sizes_[k2]) {
                        fail(ErrorKind::InvalidValue, "functor table arrow value outside its codomain");
                    }
                }
            }
        }
    }

    [[nodiscard]] std::size_t skeleton_max() const noexcept { return n_; }
    [[nodiscard]] std::size_t object_size(std::size_t k) const { return sizes_.at(k); }
    [[nodiscard]] const std::vector<std::size_t>& object_sizes() const noexcept { return sizes_; }
    [[nodiscard]] const std::string& description() const noexcept { return description_; }

    [[nodiscard]] std::span<const Elem> arrow(std::size_t k, std::size_t k2, std::uint64_t code) const
    {
        const auto& block = arrows_.at(slot(k, k2));
        const std::size_t len = sizes_[k];
        return std::span<const Elem>(block).subspan(code * len, len);
    }

    [[nodiscard]] std::span<const Elem> arrow(const FinMap& h) const
    {
        if (h.dom().size > n_ || h.cod().size > n_) {
            fail(ErrorKind::SkeletonExceeded, "arrow: map leaves the skeleton");
        }
        return arrow(h.dom().size, h.cod().size, encode(h));
    }

    [[nodiscard]] const std::vector<std::vector<Elem>>& raw_arrows() const noexcept { return arrows_; }

    [[nodiscard]] const std::shared_ptr<const HomPresentation>& hom() const noexcept { return hom_; }

    void set_hom(std::shared_ptr<const HomPresentation> hom) { hom_ = std::move(hom); }

    [[nodiscard]] std::size_t slot(std::size_t k, std::size_t k2) const noexcept { return k * (n_ + 1) + k2; }

    /// Structural equality: same skeleton, objects and arrows.
    friend bool operator==(const FunctorTable& x, const FunctorTable& y)
    {
        return x.n_ == y.n_ && x.sizes_ == y.sizes_ && x.arrows_ == y.arrows_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> sizes_{0};
    std::vector<std::vector<Elem>> arrows_{std::vector<Elem>{}};
    std::string description_;
    std::shared_ptr<const HomPresentation> hom_;
};

/// Functor laws on the skeleton: identities go to identities and composites to composites.
inline Report check_functor_laws(const FunctorTable& f)
{
    Report rep("functor-laws");
    const std::size_t n = f.skeleton_max();
    for (std::size_t k = 0; k <= n; ++k) {
        const auto id = f.arrow(FinMap::identity(FinSet{k}));
        for (std::size_t x = 0; x < id.size(); ++x) {
            ++rep.pairs_checked;
            if (id[x] != x) {
                rep.add_violation({{"law", "identity"}, {"k", k}, {"element", x}, {"image", id[x]}});
            }
        }
    }
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t k1 = 0; k1 <= n; ++k1) {
            for (std::size_t k2 = 0; k2 <= n; ++k2) {
                for (const FinMap& inner : all_maps(FinSet{k}, FinSet{k1})) {
                    const auto fi = f.arrow(inner);
                    for (const FinMap& outer : all_maps(FinSet{k1}, FinSet{k2})) {
                        const auto fo = f.arrow(outer);
                        const auto fc = f.arrow(compose(outer, inner));
                        for (std::size_t x = 0; x < fi.size(); ++x) {
                            ++rep.pairs_checked;
                            if (fo[fi[x]] != fc[x]) {
                                rep.add_violation({{"law", "composition"},
                                                   {"inner", std::vector<Elem>(inner.table().begin(), inner.table().end())},
                                                   {"outer", std::vector<Elem>(outer.table().begin(), outer.table().end())},
                                                   {"k", k},
                                                   {"k_mid", k1},
                                                   {"k_out", k2},
                                                   {"element", x}});
                            }
                        }
                    }
                }
            }
        }
    }
    return rep;
}

/// Tabulates Phi(A) on the skeleton. Class ids at [k] index the sorted class list.
inline FunctorTable from_quotient_hom(const QuotientHomFunctor& phi, std::size_t skeleton_max = kDefaultSkeletonMax)
{
    const Space& a = phi.base();
    const FinSet dom = a.carrier();
    auto hom = std::make_shared<HomPresentation>(HomPresentation{phi, {}, {}});
    std::vector<std::size_t> sizes(skeleton_max + 1);
    for (std::size_t k = 0; k <= skeleton_max; ++k) {
        const std::uint64_t total = map_count(dom, FinSet{k});
        if (total > std::uint64_t{1} << 26) {
            fail(ErrorKind::TooLarge, "from_quotient_hom: too many maps into the skeleton");
        }
        std::vector<Elem> lookup(total, 0);
        std::vector<FinMap> reps;
        std::vector<std::uint64_t> canon(total);
        std::uint64_t code = 0;
        for (const FinMap& g : all_maps(dom, FinSet{k})) {
            const ClassRep c = phi.canonical_rep(g);
            canon[code] = encode(c.canonical);
            if (canon[code] == code) {
                lookup[code] = static_cast<Elem>(reps.size());
                reps.push_back(g);
            }
            ++code;
        }
        for (std::uint64_t c = 0; c < total; ++c) {
            lookup[c] = lookup[canon[c]];
        }
        sizes[k] = reps.size();
        hom->reps.push_back(std::move(reps));
        hom->class_of_code.push_back(std::move(lookup));
    }

    std::vector<std::vector<Elem>> arrows((skeleton_max + 1) * (skeleton_max + 1));
    for (std::size_t k = 0; k <= skeleton_max; ++k) {
        for (std::size_t k2 = 0; k2 <= skeleton_max; ++k2) {
            auto& block = arrows[k * (skeleton_max + 1) + k2];
            block.reserve(map_count(FinSet{k}, FinSet{k2}) * sizes[k]);
            for (const FinMap& h : all_maps(FinSet{k}, FinSet{k2})) {
                for (const FinMap& g : hom->reps[k]) {
                    const Elem target = hom->class_of(compose(h, g));
                    if (auto other = twin(g, a); other && hom->class_of(compose(h, *other)) != target) {
                        fail(ErrorKind::LawViolation, "from_quotient_hom: image class depends on the representative");
                    }
                    block.push_back(target);
                }
            }
        }
    }
    FunctorTable table(skeleton_max, std::move(sizes), std::move(arrows), "quotient-hom");
    table.set_hom(std::move(hom));
    return table;
}

inline FunctorTable from_quotient_hom(const Space& a, std::size_t skeleton_max = kDefaultSkeletonMax)
{
    return from_quotient_hom(QuotientHomFunctor(a), skeleton_max);
}

/// F X = C and F h = id.
inline FunctorTable constant_functor(FinSet c, std::size_t skeleton_max = kDefaultSkeletonMax)
{
    std::vector<std::vector<Elem>> arrows((skeleton_max + 1) * (skeleton_max + 1));
    for (std::size_t k = 0; k <= skeleton_max; ++k) {
        for (std::size_t k2 = 0; k2 <= skeleton_max; ++k2) {
            auto& block = arrows[k * (skeleton_max + 1) + k2];
            for (std::uint64_t h = 0; h < map_count(FinSet{k}, FinSet{k2}); ++h) {
                for (std::size_t x = 0; x < c.size; ++x) {
                    block.push_back(static_cast<Elem>(x));
                }
            }
        }
    }
    return {skeleton_max, std::vector<std::size_t>(skeleton_max + 1, c.size), std::move(arrows),
            "constant(" + std::to_string(c.size) + ")"};
}

/// (F + G)X = FX + GX with F's elements first.
inline FunctorTable coproduct(const FunctorTable& f, const FunctorTable& g)
{
    if (f.skeleton_max() != g.skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "coproduct: skeleton sizes differ");
    }
    const std::size_t n = f.skeleton_max();
    std::vector<std::size_t> sizes(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        sizes[k] = f.object_size(k) + g.object_size(k);
    }
    std::vector<std::vector<Elem>> arrows((n + 1) * (n + 1));
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t k2 = 0; k2 <= n; ++k2) {
            auto& block = arrows[k * (n + 1) + k2];
            const auto offset = static_cast<Elem>(f.object_size(k2));
            for (std::uint64_t h = 0; h < map_count(FinSet{k}, FinSet{k2}); ++h) {
                for (Elem v : f.arrow(k, k2, h)) {
                    block.push_back(v);
                }
                for (Elem v : g.arrow(k, k2, h)) {
                    block.push_back(v + offset);
                }
            }
        }
    }
    return {n, std::move(sizes), std::move(arrows), "coproduct(" + f.description() + "," + g.description() + ")"};
}

/// Functor laws plus accessibility inside the skeleton: every element of every
/// F[k] lies in F f[F[j]] for some f : [j] -> [k] with j < kappa.
inline Report validate_functor(const FunctorTable& f, std::size_t kappa)
{
    const std::size_t n = f.skeleton_max();
    if (kappa > n + 1) {
        fail(ErrorKind::SkeletonExceeded, "validate_functor: kappa exceeds skeleton_max + 1");
    }
    Report rep("functor-validate");
    const Report laws = check_functor_laws(f);
    rep.absorb(laws, "functor-laws");
    std::size_t uncovered = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<bool> hit(f.object_size(k), false);
        for (std::size_t j = 0; j < kappa; ++j) {
            for (std::uint64_t h = 0; h < map_count(FinSet{j}, FinSet{k}); ++h) {
                for (Elem v : f.arrow(j, k, h)) {
                    hit[v] = true;
                }
            }
        }
        for (std::size_t x = 0; x < hit.size(); ++x) {
            ++rep.pairs_checked;
            if (!hit[x]) {
                ++uncovered;
                rep.add_violation({{"kind", "not-accessible"}, {"k", k}, {"element", x}, {"kappa", kappa}});
            }
        }
    }
    rep.summary = {{"skeleton_max", n},
                   {"kappa", kappa},
                   {"object_sizes", f.object_sizes()},
                   {"laws_hold", laws.passed()},
                   {"accessible", uncovered == 0}};
    return rep;
}

/// Least kappa in 0..n+1 for which every element is accessed from below kappa.
inline std::size_t accessibility_rank(const FunctorTable& f)
{
    const std::size_t n = f.skeleton_max();
    std::vector<std::vector<bool>> hit(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        hit[k].assign(f.object_size(k), false);
    }
    auto all_hit = [&] {
        return std::all_of(hit.begin(), hit.end(), [](const auto& h) { return std::all_of(h.begin(), h.end(), [](bool b) { return b; }); });
    };
    for (std::size_t kappa = 0; kappa <= n; ++kappa) {
        if (all_hit()) {
            return kappa;
        }
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::uint64_t h = 0; h < map_count(FinSet{kappa}, FinSet{k}); ++h) {
                for (Elem v : f.arrow(kappa, k, h)) {
                    hit[k][v] = true;
                }
            }
        }
    }
    return n + 1;
}

} // namespace setfun
