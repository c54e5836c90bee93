#pragma once

// JSON encodings of the library's values, and the functor builder that turns a
// small JSON description (constant, quotient hom, psi, coproduct, or an explicit
// table) into a FunctorTable.

#include "setfun/error.hpp"
#include "setfun/finmap.hpp"
#include "setfun/functors.hpp"
#include "setfun/heightone.hpp"
#include "setfun/isbell.hpp"
#include "setfun/nattrans.hpp"
#include "setfun/report.hpp"
#include "setfun/rigidify.hpp"
#include "setfun/space.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace setfun {

namespace detail {

template <class Fn>
auto parsing(const char* what, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) {
            throw;
        }
        fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
    }
}

inline std::string table_key(std::size_t k, std::size_t k2, const FinMap& h)
{
    std::string key = std::to_string(k) + "->" + std::to_string(k2) + "|";
    for (std::size_t i = 0; i < h.dom().size; ++i) {
        key += (i ? "," : "") + std::to_string(h.table()[i]);
    }
    return key;
}

} // namespace detail

inline json to_json(const FinMap& f) { return map_json(f); }

inline FinMap finmap_from_json(const json& j)
{
    return detail::parsing("FinMap", [&] {
        return FinMap(FinSet{j.at("dom").get<std::size_t>()}, FinSet{j.at("cod").get<std::size_t>()},
                      j.at("table").get<std::vector<Elem>>());
    });
}

inline json to_json(const Subset& s) { return {{"ambient", s.ambient().size}, {"members", s.members()}}; }

inline Subset subset_from_json(const json& j)
{
    return detail::parsing("Subset", [&] {
        const auto members = j.at("members").get<std::vector<Elem>>();
        return Subset::of(FinSet{j.at("ambient").get<std::size_t>()}, std::span<const Elem>(members));
    });
}

inline json to_json(const Space& a)
{
    json opens = json::array();
    for (const Subset& s : a.opens()) {
        opens.push_back(s.members());
    }
    return {{"size", a.carrier().size}, {"opens", opens}};
}

inline Space space_from_json(const json& j)
{
    return detail::parsing("Space", [&] {
        return Space::from_lists(j.at("size").get<std::size_t>(), j.at("opens").get<std::vector<std::vector<Elem>>>());
    });
}

inline json to_json(const Graph& g)
{
    json edges = json::array();
    for (auto [i, j] : g.edges) {
        edges.push_back({i, j});
    }
    return {{"vertices", g.vertices}, {"edges", edges}};
}

inline json to_json(const PsiImage& p)
{
    return {{"space", to_json(p.space)}, {"a_size", p.a_size}, {"vertex_offset", p.vertex_offset}};
}

inline json to_json(const FunctorTable& f)
{
    json objects = json::object();
    json arrows = json::object();
    const std::size_t n = f.skeleton_max();
    for (std::size_t k = 0; k <= n; ++k) {
        objects[std::to_string(k)] = f.object_size(k);
        for (std::size_t k2 = 0; k2 <= n; ++k2) {
            std::uint64_t code = 0;
            for (const FinMap& h : all_maps(FinSet{k}, FinSet{k2})) {
                const auto t = f.arrow(k, k2, code++);
                arrows[detail::table_key(k, k2, h)] = std::vector<Elem>(t.begin(), t.end());
            }
        }
    }
    return {{"skeleton_max", n}, {"objects", objects}, {"arrows", arrows}};
}

/// Reads an explicit table; functor laws are not checked here.
inline FunctorTable functor_table_from_json(const json& j)
{
    return detail::parsing("FunctorTable", [&] {
        const auto n = j.at("skeleton_max").get<std::size_t>();
        if (n > 8) {
            fail(ErrorKind::TooLarge, "skeleton_max above 8 is not supported");
        }
        std::vector<std::size_t> sizes(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            sizes[k] = j.at("objects").at(std::to_string(k)).get<std::size_t>();
        }
        std::vector<std::vector<Elem>> arrows((n + 1) * (n + 1));
        const json& blocks = j.at("arrows");
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t k2 = 0; k2 <= n; ++k2) {
                auto& block = arrows[k * (n + 1) + k2];
                for (const FinMap& h : all_maps(FinSet{k}, FinSet{k2})) {
                    const auto t = blocks.at(detail::table_key(k, k2, h)).get<std::vector<Elem>>();
                    if (t.size() != sizes[k]) {
                        fail(ErrorKind::ParseError, "arrow " + detail::table_key(k, k2, h) + " has the wrong length");
                    }
                    block.insert(block.end(), t.begin(), t.end());
                }
            }
        }
        return FunctorTable(n, std::move(sizes), std::move(arrows), "table");
    });
}

/// Functor descriptions:
///   {"constant": c}
///   {"quotient_hom": <Space>, "allow_non_k1": bool}   (a bare Space means the same)
///   {"psi": <Space>}                                   quotient hom of the rigidified space
///   {"coproduct": [<desc>, <desc>]}
///   {"skeleton_max": n, "objects": ..., "arrows": ...} explicit table
/// A "skeleton_max" key overrides the default for non-table descriptions.
inline FunctorTable build_functor_table(const json& desc, std::size_t skeleton_max = kDefaultSkeletonMax)
{
    if (desc.is_object() && desc.contains("skeleton_max") && !desc.contains("arrows")) {
        skeleton_max = detail::parsing("skeleton_max", [&] { return desc.at("skeleton_max").get<std::size_t>(); });
    }
    if (!desc.is_object()) {
        fail(ErrorKind::ParseError, "functor description must be a JSON object");
    }
    FunctorTable table;
    if (desc.contains("arrows")) {
        table = functor_table_from_json(desc);
    } else if (desc.contains("constant")) {
        table = constant_functor(FinSet{detail::parsing("constant", [&] { return desc.at("constant").get<std::size_t>(); })},
                                 skeleton_max);
    } else if (desc.contains("psi")) {
        table = from_quotient_hom(QuotientHomFunctor(psi_object(space_from_json(desc.at("psi"))).space), skeleton_max);
    } else if (desc.contains("quotient_hom") || desc.contains("opens")) {
        const json& base = desc.contains("quotient_hom") ? desc.at("quotient_hom") : desc;
        const bool allow = desc.value("allow_non_k1", false);
        table = from_quotient_hom(QuotientHomFunctor(space_from_json(base), allow), skeleton_max);
    } else if (desc.contains("coproduct")) {
        const json& parts = desc.at("coproduct");
        if (!parts.is_array() || parts.size() != 2) {
            fail(ErrorKind::ParseError, "coproduct expects exactly two functor descriptions");
        }
        table = coproduct(build_functor_table(parts[0], skeleton_max), build_functor_table(parts[1], skeleton_max));
    } else {
        fail(ErrorKind::ParseError, "unrecognised functor description");
    }
    if (!check_functor_laws(table).passed()) {
        fail(ErrorKind::LawViolation, "functor table violates the functor laws");
    }
    return table;
}

inline json to_json(const NatTransTable& mu)
{
    json comps = json::object();
    for (std::size_t k = 0; k < mu.components.size(); ++k) {
        comps[std::to_string(k)] = mu.components[k];
    }
    return {{"components", comps}};
}

inline NatTransTable nat_from_json(const json& j, FunctorPtr source, FunctorPtr target)
{
    auto comps = detail::parsing("NatTransTable", [&] {
        std::vector<std::vector<Elem>> out(source->skeleton_max() + 1);
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] = j.at("components").at(std::to_string(k)).get<std::vector<Elem>>();
        }
        return out;
    });
    return detail::parsing("NatTransTable", [&] { return make_nat(source, target, std::move(comps)); });
}

inline json to_json(const FingerprintSet& fp) { return fingerprint_json(fp); }

inline json to_json(const HeightOneSystem& sys)
{
    json eqs = json::array();
    for (const auto& eq : sys.equations) {
        eqs.push_back({{"t", {eq.arity, eq.t}},
                       {"f", std::vector<Elem>(eq.substitution.table().begin(), eq.substitution.table().end())},
                       {"s", {eq.result_arity, eq.s}},
                       {"text", render_equation(eq)}});
    }
    return {{"skeleton_max", sys.skeleton_max}, {"symbols", sys.symbol_counts}, {"equations", eqs}};
}

} // namespace setfun
