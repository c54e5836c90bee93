#pragma once

// Height-one equational presentation of a tabulated functor: every element t of
// F[k] is a k-ary symbol, and every map f : [k] -> [k'] contributes the equation
// t(y_f(1), ..., y_f(k)) = s(y_1, ..., y_k') with s = F f (t).

#include "setfun/error.hpp"
#include "setfun/finmap.hpp"
#include "setfun/functors.hpp"
#include "setfun/report.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace setfun {

struct HeightOneEquation {
    std::size_t arity = 0;       // k
    Elem t = 0;                  // symbol id in F[k]
    FinMap substitution;         // f : [k] -> [k']
    std::size_t result_arity = 0; // k'
    Elem s = 0;                  // symbol id in F[k']

    friend bool operator==(const HeightOneEquation&, const HeightOneEquation&) = default;
};

struct HeightOneSystem {
    std::size_t skeleton_max = 0;
    std::vector<std::size_t> symbol_counts;
    std::vector<HeightOneEquation> equations;
};

/// One equation per (t in F[k], f : [k] -> [k']), ordered by k, k', f, t.
inline HeightOneSystem derive_system(const FunctorTable& f)
{
    HeightOneSystem sys{f.skeleton_max(), f.object_sizes(), {}};
    const std::size_t n = f.skeleton_max();
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t k2 = 0; k2 <= n; ++k2) {
            std::uint64_t code = 0;
            for (const FinMap& h : all_maps(FinSet{k}, FinSet{k2})) {
                const auto fh = f.arrow(k, k2, code++);
                for (std::size_t t = 0; t < fh.size(); ++t) {
                    sys.equations.push_back({k, static_cast<Elem>(t), h, k2, fh[t]});
                }
            }
        }
    }
    return sys;
}

struct RenderStyle {
    /// Plain `t` / `s` instead of `t_k_i` / `s_k'_j`.
    bool anonymous = false;
    /// Variable indices as Unicode subscripts (y₂ rather than y2).
    bool subscripts = false;
};

namespace detail {

inline std::string variable(std::size_t index, bool subscripts)
{
    static const char* const digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    const std::string plain = std::to_string(index);
    if (!subscripts) {
        return "y" + plain;
    }
    std::string out = "y";
    for (char c : plain) {
        out += digits[c - '0'];
    }
    return out;
}

} // namespace detail

/// Variables are 1-based: element j of [k'] is written y_(j+1).
inline std::string render_equation(const HeightOneEquation& eq, RenderStyle style = {})
{
    std::ostringstream os;
    if (style.anonymous) {
        os << "t(";
    } else {
        os << "t_" << eq.arity << "_" << eq.t << "(";
    }
    for (std::size_t i = 0; i < eq.arity; ++i) {
        os << (i ? "," : "") << detail::variable(eq.substitution.table()[i] + 1, style.subscripts);
    }
    if (style.anonymous) {
        os << ") = s(";
    } else {
        os << ") = s_" << eq.result_arity << "_" << eq.s << "(";
    }
    for (std::size_t j = 0; j < eq.result_arity; ++j) {
        os << (j ? "," : "") << detail::variable(j + 1, style.subscripts);
    }
    os << ")";
    return os.str();
}

inline std::string render_system(const HeightOneSystem& sys, RenderStyle style = {})
{
    std::string out;
    for (const auto& eq : sys.equations) {
        out += render_equation(eq, style);
        out += '\n';
    }
    return out;
}

/// Empty report iff assignment(s) = G f (assignment(t)) for every equation.
inline Report check_preserves(const std::vector<std::vector<Elem>>& assignment, const HeightOneSystem& sys,
                              const FunctorTable& g)
{
    if (sys.skeleton_max != g.skeleton_max()) {
        fail(ErrorKind::SkeletonMismatch, "check_preserves: skeletons differ");
    }
    if (assignment.size() != sys.skeleton_max + 1) {
        fail(ErrorKind::InvalidValue, "check_preserves: assignment does not cover the skeleton");
    }
    for (std::size_t k = 0; k <= sys.skeleton_max; ++k) {
        if (assignment[k].size() != sys.symbol_counts[k]) {
            fail(ErrorKind::InvalidValue, "check_preserves: assignment has the wrong length at " + std::to_string(k));
        }
        for (Elem v : assignment[k]) {
            if (v >= g.object_size(k)) {
                fail(ErrorKind::InvalidValue, "check_preserves: assigned symbol outside the target at " + std::to_string(k));
            }
        }
    }
    Report rep("heq-check");
    for (const auto& eq : sys.equations) {
        ++rep.pairs_checked;
        const Elem lhs = g.arrow(eq.substitution)[assignment[eq.arity][eq.t]];
        const Elem rhs = assignment[eq.result_arity][eq.s];
        if (lhs != rhs) {
            rep.add_violation({{"t", {eq.arity, eq.t}},
                               {"f", std::vector<Elem>(eq.substitution.table().begin(), eq.substitution.table().end())},
                               {"s", {eq.result_arity, eq.s}},
                               {"equation", render_equation(eq)}});
        }
    }
    return rep;
}

} // namespace setfun
