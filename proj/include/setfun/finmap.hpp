#pragma once

// Finite sets [n] = {0, ..., n-1}, subsets of them, and total maps between them.

#include "setfun/error.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace setfun {

using Elem = std::uint32_t;

/// Subsets are stored as a 64-bit mask, which bounds the ambient size.
inline constexpr std::size_t kMaxSubsetAmbient = 64;

struct FinSet {
    std::size_t size = 0;

    friend auto operator<=>(const FinSet&, const FinSet&) = default;
};

class Subset {
public:
    Subset() = default;

    Subset(FinSet ambient, std::uint64_t bits)
        : ambient_(ambient)
        , bits_(bits)
    {
        if (ambient.size > kMaxSubsetAmbient) {
            fail(ErrorKind::TooLarge, "subset ambient exceeds 64 elements");
        }
        if (ambient.size < kMaxSubsetAmbient && (bits >> ambient.size) != 0) {
            fail(ErrorKind::InvalidValue, "subset member outside ambient set");
        }
    }

    static Subset empty(FinSet ambient) { return {ambient, 0}; }

    static Subset full(FinSet ambient) { return {ambient, low_bits(ambient.size)}; }

    static Subset of(FinSet ambient, std::span<const Elem> members)
    {
        std::uint64_t bits = 0;
        for (Elem m : members) {
            if (m >= ambient.size) {
                fail(ErrorKind::InvalidValue, "subset member " + std::to_string(m) + " outside ambient set");
            }
            bits |= std::uint64_t{1} << m;
        }
        return {ambient, bits};
    }

    static Subset of(FinSet ambient, std::initializer_list<Elem> members)
    {
        return of(ambient, std::span<const Elem>(members.begin(), members.size()));
    }

    [[nodiscard]] FinSet ambient() const noexcept { return ambient_; }
    [[nodiscard]] std::uint64_t bits() const noexcept { return bits_; }
    [[nodiscard]] bool contains(Elem x) const noexcept { return x < 64 && ((bits_ >> x) & 1U) != 0; }
    [[nodiscard]] std::size_t count() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    [[nodiscard]] bool is_empty() const noexcept { return bits_ == 0; }

    [[nodiscard]] Subset complement() const { return {ambient_, low_bits(ambient_.size) & ~bits_}; }

    [[nodiscard]] std::vector<Elem> members() const
    {
        std::vector<Elem> out;
        out.reserve(count());
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
            out.push_back(static_cast<Elem>(std::countr_zero(b)));
        }
        return out;
    }

    static constexpr std::uint64_t low_bits(std::size_t n) noexcept
    {
        return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }

    friend auto operator<=>(const Subset&, const Subset&) = default;

private:
    FinSet ambient_{};
    std::uint64_t bits_ = 0;
};

/// A total map dom -> cod stored as its value table. Ordering is lexicographic on
/// (dom, cod, table), which is the enumeration order used everywhere.
class FinMap {
public:
    FinMap() = default;

    FinMap(FinSet dom, FinSet cod, std::vector<Elem> table)
        : dom_(dom)
        , cod_(cod)
        , table_(std::move(table))
    {
        if (table_.size() != dom_.size) {
            fail(ErrorKind::InvalidValue, "map table length " + std::to_string(table_.size())
                                              + " differs from domain size " + std::to_string(dom_.size));
        }
        for (Elem y : table_) {
            if (y >= cod_.size) {
                fail(ErrorKind::InvalidValue, "map value " + std::to_string(y) + " outside codomain of size "
                                                  + std::to_string(cod_.size));
            }
        }
    }

    static FinMap identity(FinSet x)
    {
        std::vector<Elem> t(x.size);
        for (std::size_t i = 0; i < x.size; ++i) {
            t[i] = static_cast<Elem>(i);
        }
        return {x, x, std::move(t)};
    }

    static FinMap constant(FinSet dom, FinSet cod, Elem value) { return {dom, cod, std::vector<Elem>(dom.size, value)}; }

    [[nodiscard]] FinSet dom() const noexcept { return dom_; }
    [[nodiscard]] FinSet cod() const noexcept { return cod_; }
    [[nodiscard]] std::span<const Elem> table() const noexcept { return table_; }
    [[nodiscard]] Elem operator()(Elem x) const { return table_.at(x); }

    [[nodiscard]] bool is_injective() const
    {
        std::vector<bool> seen(cod_.size, false);
        for (Elem y : table_) {
            if (seen[y]) {
                return false;
            }
            seen[y] = true;
        }
        return true;
    }

    [[nodiscard]] bool is_surjective() const
    {
        std::vector<bool> seen(cod_.size, false);
        std::size_t hit = 0;
        for (Elem y : table_) {
            if (!seen[y]) {
                seen[y] = true;
                ++hit;
            }
        }
        return hit == cod_.size;
    }

    [[nodiscard]] std::size_t image_size() const
    {
        std::vector<bool> seen(cod_.size, false);
        std::size_t hit = 0;
        for (Elem y : table_) {
            hit += seen[y] ? 0 : 1;
            seen[y] = true;
        }
        return hit;
    }

    friend auto operator<=>(const FinMap&, const FinMap&) = default;

private:
    FinSet dom_{};
    FinSet cod_{};
    std::vector<Elem> table_;
};

/// Right-to-left composition: compose(f, g)(x) = f(g(x)).
inline FinMap compose(const FinMap& f, const FinMap& g)
{
    if (g.cod() != f.dom()) {
        fail(ErrorKind::DomainMismatch, "compose: codomain of inner map (" + std::to_string(g.cod().size)
                                            + ") differs from domain of outer map (" + std::to_string(f.dom().size) + ")");
    }
    std::vector<Elem> t(g.dom().size);
    for (std::size_t x = 0; x < t.size(); ++x) {
        t[x] = f.table()[g.table()[x]];
    }
    return {g.dom(), f.cod(), std::move(t)};
}

inline Subset image(const FinMap& f, const Subset& r)
{
    if (r.ambient() != f.dom()) {
        fail(ErrorKind::AmbientMismatch, "image: subset is not over the map's domain");
    }
    std::uint64_t bits = 0;
    for (Elem x : r.members()) {
        bits |= std::uint64_t{1} << f.table()[x];
    }
    return {f.cod(), bits};
}

inline Subset preimage(const FinMap& f, const Subset& s)
{
    if (s.ambient() != f.cod()) {
        fail(ErrorKind::AmbientMismatch, "preimage: subset is not over the map's codomain");
    }
    std::uint64_t bits = 0;
    for (std::size_t x = 0; x < f.dom().size; ++x) {
        if (s.contains(f.table()[x])) {
            bits |= std::uint64_t{1} << x;
        }
    }
    return {f.dom(), bits};
}

/// |Y|^|X| with 0^0 = 1, saturating at the uint64 maximum.
inline std::uint64_t map_count(FinSet x, FinSet y) noexcept
{
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < x.size; ++i) {
        if (y.size != 0 && n > std::numeric_limits<std::uint64_t>::max() / y.size) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        n *= y.size;
    }
    return n;
}

/// Position of f in the lexicographic enumeration of all maps dom -> cod
/// (base-|cod| numeral, first table entry most significant).
inline std::uint64_t encode(const FinMap& f) noexcept
{
    std::uint64_t code = 0;
    for (Elem y : f.table()) {
        code = code * f.cod().size + y;
    }
    return code;
}

inline FinMap decode(std::uint64_t code, FinSet dom, FinSet cod)
{
    std::vector<Elem> t(dom.size);
    for (std::size_t i = dom.size; i-- > 0;) {
        t[i] = static_cast<Elem>(code % cod.size);
        code /= cod.size;
    }
    return {dom, cod, std::move(t)};
}

/// Lazily enumerates every map X -> Y in lexicographic table order.
class MapRange {
public:
    class iterator {
    public:
        using value_type = FinMap;
        using difference_type = std::ptrdiff_t;

        iterator() = default;

        const FinMap& operator*() const { return current_; }
        const FinMap* operator->() const { return &current_; }

        iterator& operator++()
        {
            std::vector<Elem> t(current_.table().begin(), current_.table().end());
            std::size_t i = t.size();
            while (i > 0) {
                --i;
                if (t[i] + 1 < current_.cod().size) {
                    ++t[i];
                    current_ = FinMap(current_.dom(), current_.cod(), std::move(t));
                    return *this;
                }
                t[i] = 0;
            }
            done_ = true;
            return *this;
        }

        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) noexcept { return it.done_; }

    private:
        friend class MapRange;
        iterator(FinSet x, FinSet y)
            : done_(x.size > 0 && y.size == 0)
        {
            if (!done_) {
                current_ = FinMap(x, y, std::vector<Elem>(x.size, 0));
            }
        }

        FinMap current_;
        bool done_ = true;
    };

    MapRange(FinSet x, FinSet y)
        : x_(x)
        , y_(y)
    {
    }

    [[nodiscard]] iterator begin() const { return {x_, y_}; }
    [[nodiscard]] std::default_sentinel_t end() const noexcept { return {}; }
    [[nodiscard]] std::uint64_t size() const noexcept { return map_count(x_, y_); }

private:
    FinSet x_;
    FinSet y_;
};

inline MapRange all_maps(FinSet x, FinSet y) { return {x, y}; }

struct Factorization {
    FinMap surjection;
    FinMap injection;
};

/// f = injection o surjection; image elements are numbered by first occurrence in f's table.
inline Factorization epi_mono_factorize(const FinMap& f)
{
    std::vector<Elem> slot(f.cod().size, std::numeric_limits<Elem>::max());
    std::vector<Elem> inj;
    std::vector<Elem> surj(f.dom().size);
    for (std::size_t x = 0; x < f.dom().size; ++x) {
        Elem y = f.table()[x];
        if (slot[y] == std::numeric_limits<Elem>::max()) {
            slot[y] = static_cast<Elem>(inj.size());
            inj.push_back(y);
        }
        surj[x] = slot[y];
    }
    FinSet img{inj.size()};
    return {FinMap(f.dom(), img, std::move(surj)), FinMap(img, f.cod(), std::move(inj))};
}

/// Left inverse of an injective map; points outside the image go to element 0.
inline FinMap left_inverse(const FinMap& i)
{
    if (!i.is_injective()) {
        fail(ErrorKind::NotInjective, "left_inverse: map is not injective");
    }
    if (i.dom().size == 0 && i.cod().size > 0) {
        fail(ErrorKind::NoLeftInverse, "left_inverse: no map from a nonempty set into the empty set");
    }
    std::vector<Elem> t(i.cod().size, 0);
    for (std::size_t x = 0; x < i.dom().size; ++x) {
        t[i.table()[x]] = static_cast<Elem>(x);
    }
    return {i.cod(), i.dom(), std::move(t)};
}

} // namespace setfun
