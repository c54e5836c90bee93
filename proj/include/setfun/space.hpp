#pragma once

// Spaces without axioms: a carrier with an arbitrary family of "open" subsets.
// A map is continuous when every open set pulls back to an open set.

#include "setfun/error.hpp"
#include "setfun/finmap.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace setfun {

inline constexpr std::uint64_t kDefaultGuard = 100'000'000;

class Space {
public:
    Space() = default;

    /// Opens are sorted and deduplicated, so equal families compare equal.
    Space(FinSet carrier, std::vector<Subset> opens)
        : carrier_(carrier)
        , opens_(std::move(opens))
    {
        if (carrier.size > kMaxSubsetAmbient) {
            fail(ErrorKind::TooLarge, "space carrier exceeds 64 elements");
        }
        for (const Subset& s : opens_) {
            if (s.ambient() != carrier_) {
                fail(ErrorKind::CarrierMismatch, "open set ambient differs from the space carrier");
            }
        }
        std::sort(opens_.begin(), opens_.end());
        opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    }

    static Space from_lists(std::size_t size, const std::vector<std::vector<Elem>>& opens)
    {
        std::vector<Subset> family;
        family.reserve(opens.size());
        for (const auto& members : opens) {
            family.push_back(Subset::of(FinSet{size}, members));
        }
        return {FinSet{size}, std::move(family)};
    }

    /// Family given as a bitmask over all 2^n subsets (bit s set means subset with mask s is open).
    static Space from_family_mask(std::size_t size, std::uint64_t family)
    {
        if (size > 6) {
            fail(ErrorKind::TooLarge, "family masks only cover carriers up to 6 elements");
        }
        std::vector<Subset> opens;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << size); ++s) {
            if ((family >> s) & 1U) {
                opens.emplace_back(FinSet{size}, s);
            }
        }
        return {FinSet{size}, std::move(opens)};
    }

    [[nodiscard]] FinSet carrier() const noexcept { return carrier_; }
    [[nodiscard]] const std::vector<Subset>& opens() const noexcept { return opens_; }

    [[nodiscard]] bool is_open(const Subset& s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }

    [[nodiscard]] bool is_open_bits(std::uint64_t bits) const { return is_open(Subset(carrier_, bits)); }

    friend auto operator<=>(const Space&, const Space&) = default;

private:
    FinSet carrier_{};
    std::vector<Subset> opens_;
};

inline bool is_continuous(const FinMap& f, const Space& a, const Space& b)
{
    if (f.dom() != a.carrier() || f.cod() != b.carrier()) {
        fail(ErrorKind::CarrierMismatch, "is_continuous: map signature differs from the spaces' carriers");
    }
    return std::all_of(b.opens().begin(), b.opens().end(),
                       [&](const Subset& s) { return a.is_open(preimage(f, s)); });
}

/// Hom-set of the category of spaces by filtering every map; lexicographic order.
inline std::vector<FinMap> continuous_maps(const Space& a, const Space& b, std::uint64_t guard = kDefaultGuard)
{
    if (map_count(a.carrier(), b.carrier()) > guard) {
        fail(ErrorKind::TooLarge, "continuous_maps: candidate count exceeds guard");
    }
    std::vector<FinMap> out;
    for (const FinMap& f : all_maps(a.carrier(), b.carrier())) {
        if (is_continuous(f, a, b)) {
            out.push_back(f);
        }
    }
    return out;
}

namespace detail {

// Backtracking over the table of f, last position first. After each assignment,
// every open of b has a partial preimage on the assigned positions; the branch
// survives only if some open of a has the same trace on those positions.
class ContinuousSearch {
public:
    ContinuousSearch(const Space& a, const Space& b)
        : a_(a)
        , b_(b)
        , n_(a.carrier().size)
        , m_(b.carrier().size)
    {
        traces_.resize(n_ + 1);
        std::uint64_t assigned = 0;
        for (std::size_t d = 0; d <= n_; ++d) {
            auto& tr = traces_[d];
            for (const Subset& o : a.opens()) {
                tr.push_back(o.bits() & assigned);
            }
            std::sort(tr.begin(), tr.end());
            tr.erase(std::unique(tr.begin(), tr.end()), tr.end());
            if (d < n_) {
                assigned |= std::uint64_t{1} << position(d);
            }
        }
        opens_containing_.resize(m_);
        for (std::size_t q = 0; q < b.opens().size(); ++q) {
            for (Elem y : b.opens()[q].members()) {
                opens_containing_[y].push_back(q);
            }
        }
        pre_.assign(b.opens().size(), 0);
        table_.assign(n_, 0);
    }

    std::vector<FinMap> run()
    {
        if (n_ > 0 && m_ == 0) {
            return {};
        }
        if (traces_ok(0)) {
            recurse(0);
        }
        std::sort(found_.begin(), found_.end());
        return std::move(found_);
    }

    [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_; }

private:
    [[nodiscard]] std::size_t position(std::size_t depth) const noexcept { return n_ - 1 - depth; }

    [[nodiscard]] bool traces_ok(std::size_t depth) const
    {
        const auto& tr = traces_[depth];
        return std::all_of(pre_.begin(), pre_.end(),
                           [&](std::uint64_t p) { return std::binary_search(tr.begin(), tr.end(), p); });
    }

    void recurse(std::size_t depth)
    {
        ++nodes_;
        if (depth == n_) {
            found_.emplace_back(a_.carrier(), b_.carrier(), table_);
            return;
        }
        const std::size_t pos = position(depth);
        const std::uint64_t bit = std::uint64_t{1} << pos;
        for (std::size_t y = 0; y < m_; ++y) {
            table_[pos] = static_cast<Elem>(y);
            for (std::size_t q : opens_containing_[y]) {
                pre_[q] |= bit;
            }
            if (traces_ok(depth + 1)) {
                recurse(depth + 1);
            }
            for (std::size_t q : opens_containing_[y]) {
                pre_[q] &= ~bit;
            }
        }
    }

    const Space& a_;
    const Space& b_;
    std::size_t n_;
    std::size_t m_;
    std::vector<std::vector<std::uint64_t>> traces_;
    std::vector<std::vector<std::size_t>> opens_containing_;
    std::vector<std::uint64_t> pre_;
    std::vector<Elem> table_;
    std::vector<FinMap> found_;
    std::uint64_t nodes_ = 0;
};

} // namespace detail

/// Same result as continuous_maps, found by pruned backtracking instead of filtering.
/// The guard applies to the size of the unpruned candidate space.
inline std::vector<FinMap> search_continuous(const Space& a, const Space& b, std::uint64_t guard = kDefaultGuard)
{
    if (map_count(a.carrier(), b.carrier()) > guard) {
        fail(ErrorKind::TooLarge, "search_continuous: candidate count exceeds guard");
    }
    return detail::ContinuousSearch(a, b).run();
}

/// (K1): every open is nonempty and its complement is open too.
inline bool is_k1(const Space& a)
{
    return std::all_of(a.opens().begin(), a.opens().end(),
                       [&](const Subset& r) { return !r.is_empty() && a.is_open(r.complement()); });
}

/// (K2) for one morphism: its image has more than two elements.
inline bool check_k2(const FinMap& f, const Space& a, const Space& b)
{
    if (!is_continuous(f, a, b)) {
        fail(ErrorKind::NotContinuous, "check_k2: map is not continuous");
    }
    return f.image_size() > 2;
}

} // namespace setfun
