#pragma once

// Batch command driver. Every verb reads JSON inputs, runs one library
// operation and writes one JSON (or text) artifact.
//
// Exit codes: 0 all checks passed, 1 a verification found violations,
// 2 usage, parse or guard error.

#include "setfun/setfun.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace setfun::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;

inline const std::vector<std::string>& verbs()
{
    static const std::vector<std::string> v{"space-validate", "psi-apply",       "psi-verify",         "phi-tabulate",
                                            "nat-enumerate",  "nat-check",       "heq-derive",         "heq-check",
                                            "isbell-fingerprint", "isbell-verify", "rigid-find",       "functor-validate"};
    return v;
}

struct Options {
    std::string verb;
    std::vector<std::string> inputs;
    std::vector<std::string> hubs;
    std::vector<std::string> targets;
    std::string out;
    std::string format = "json";
    std::size_t skeleton_max = kDefaultSkeletonMax;
    std::uint64_t guard = kDefaultGuard;
    unsigned jobs = 1;
    std::size_t kappa = 0;
    bool kappa_set = false;
    std::size_t x_size = 0;
    bool x_size_set = false;
    bool require_k1 = false;
};

/// What a verb produced: the artifact to write and whether its checks passed.
struct Outcome {
    json artifact;
    std::string text;
    bool passed = true;
};

namespace detail {

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::ParseError, "cannot open input file " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, path + ": " + e.what());
    }
}

inline void require_inputs(const Options& o, std::size_t count, const char* usage)
{
    if (o.inputs.size() != count) {
        fail(ErrorKind::ParseError, o.verb + " expects " + usage);
    }
}

inline FunctorPtr load_functor(const std::string& path, const Options& o)
{
    return share(build_functor_table(read_json_file(path), o.skeleton_max));
}

inline Outcome from_report(const Report& rep) { return {rep.to_json(), rep.to_text(), rep.passed()}; }

inline Outcome space_validate(const Options& o)
{
    require_inputs(o, 1, "one --in <space.json>");
    const json j = read_json_file(o.inputs[0]);
    const Space a = space_from_json(j);
    Report rep("space-validate");
    rep.pairs_checked = a.opens().size();
    const bool k1 = is_k1(a);
    const std::size_t listed = j.at("opens").size();
    rep.summary = {{"size", a.carrier().size},
                   {"open_count", a.opens().size()},
                   {"duplicates_removed", listed - a.opens().size()},
                   {"is_k1", k1},
                   {"space", to_json(a)}};
    if (o.require_k1 && !k1) {
        for (const Subset& r : a.opens()) {
            if (r.is_empty() || !a.is_open(r.complement())) {
                rep.add_violation({{"kind", "k1"}, {"open", r.members()}});
            }
        }
    }
    return from_report(rep);
}

inline Outcome psi_apply(const Options& o)
{
    if (o.inputs.size() == 1) {
        const PsiImage p = psi_object(space_from_json(read_json_file(o.inputs[0])));
        const json j = to_json(p);
        return {j, j.dump(2) + "\n", true};
    }
    require_inputs(o, 3, "one --in <space.json>, or --in A --in B --in f");
    const Space a = space_from_json(read_json_file(o.inputs[0]));
    const Space b = space_from_json(read_json_file(o.inputs[1]));
    const FinMap f = finmap_from_json(read_json_file(o.inputs[2]));
    const json j = to_json(psi_morphism(f, a, b));
    return {j, j.dump(2) + "\n", true};
}

inline Outcome psi_verify(const Options& o)
{
    require_inputs(o, 2, "--in A --in B");
    const Space a = space_from_json(read_json_file(o.inputs[0]));
    const Space b = space_from_json(read_json_file(o.inputs[1]));
    return from_report(verify_psi_full(a, b, o.guard));
}

inline Outcome phi_tabulate(const Options& o)
{
    require_inputs(o, 1, "one --in <functor description or space>");
    const FunctorPtr f = load_functor(o.inputs[0], o);
    json j{{"functor", to_json(*f)}, {"description", f->description()}};
    if (f->hom()) {
        json classes = json::object();
        for (std::size_t k = 0; k < f->hom()->reps.size(); ++k) {
            json list = json::array();
            for (const FinMap& g : f->hom()->reps[k]) {
                list.push_back(std::vector<Elem>(g.table().begin(), g.table().end()));
            }
            classes[std::to_string(k)] = list;
        }
        j["classes"] = classes;
    }
    return {j, j.dump(2) + "\n", true};
}

inline Outcome functor_validate(const Options& o)
{
    require_inputs(o, 1, "one --in <functor>");
    const json desc = read_json_file(o.inputs[0]);
    const FunctorTable f =
        desc.contains("arrows") ? functor_table_from_json(desc) : build_functor_table(desc, o.skeleton_max);
    const std::size_t kappa = o.kappa_set ? o.kappa : f.skeleton_max() + 1;
    Report rep = validate_functor(f, kappa);
    rep.summary["rank_within_skeleton"] = accessibility_rank(f);
    return from_report(rep);
}

inline Outcome nat_enumerate(const Options& o)
{
    require_inputs(o, 2, "--in F --in G");
    const FunctorPtr f = load_functor(o.inputs[0], o);
    const FunctorPtr g = load_functor(o.inputs[1], o);
    const NatEnumeration e = enumerate_nat_trans_detailed(f, g, o.guard);
    json list = json::array();
    for (const auto& mu : e.transformations) {
        list.push_back(to_json(mu));
    }
    json j{{"route", e.route}, {"candidates", e.candidates}, {"count", e.transformations.size()}, {"transformations", list}};
    std::ostringstream text;
    text << "nat-enumerate: " << e.transformations.size() << " transformations (route " << e.route << ")\n";
    return {j, text.str(), true};
}

inline Outcome nat_check(const Options& o)
{
    require_inputs(o, 3, "--in F --in G --in <nat.json>");
    const FunctorPtr f = load_functor(o.inputs[0], o);
    const FunctorPtr g = load_functor(o.inputs[1], o);
    const NatTransTable mu = nat_from_json(read_json_file(o.inputs[2]), f, g);
    return from_report(check_naturality(mu));
}

inline Outcome heq_derive(const Options& o)
{
    require_inputs(o, 1, "one --in <functor>");
    const FunctorPtr f = load_functor(o.inputs[0], o);
    const HeightOneSystem sys = derive_system(*f);
    return {to_json(sys), render_system(sys), true};
}

inline Outcome heq_check(const Options& o)
{
    require_inputs(o, 3, "--in F --in G --in <assignment.json>");
    const FunctorPtr f = load_functor(o.inputs[0], o);
    const FunctorPtr g = load_functor(o.inputs[1], o);
    const NatTransTable mu = nat_from_json(read_json_file(o.inputs[2]), f, g);
    return from_report(check_preserves(mu.components, derive_system(*f), *g));
}

inline Outcome isbell_fingerprint(const Options& o)
{
    require_inputs(o, 5, "--in H --in F --in G --in <mu.json> --in <nu.json>");
    const FunctorPtr h = load_functor(o.inputs[0], o);
    const FunctorPtr f = load_functor(o.inputs[1], o);
    const FunctorPtr g = load_functor(o.inputs[2], o);
    const NatTransTable mu = nat_from_json(read_json_file(o.inputs[3]), h, f);
    const NatTransTable nu = nat_from_json(read_json_file(o.inputs[4]), h, g);
    const FingerprintSet fp = fingerprint(make_nat_pair(h, mu, nu), o.x_size_set ? o.x_size : h->skeleton_max());
    const json j = to_json(fp);
    return {j, j.dump(2) + "\n", true};
}

inline Outcome isbell_verify(const Options& o)
{
    require_inputs(o, 2, "--in F --in G");
    const FunctorPtr f = load_functor(o.inputs[0], o);
    const FunctorPtr g = load_functor(o.inputs[1], o);
    std::vector<FunctorPtr> hubs;
    std::vector<FunctorPtr> targets;
    for (const auto& path : o.hubs) {
        hubs.push_back(load_functor(path, o));
    }
    for (const auto& path : o.targets) {
        targets.push_back(load_functor(path, o));
    }
    const std::size_t n = f->skeleton_max();
    if (hubs.empty()) {
        hubs = default_hub_pool(f);
    }
    if (targets.empty()) {
        targets = default_cocone_targets(f, g);
    }
    std::vector<NatTransPair> pairs;
    for (const auto& h : hubs) {
        for (auto& p : enumerate_pairs(h, f, g, o.guard)) {
            pairs.push_back(std::move(p));
        }
    }
    std::vector<Cocone> cocones;
    for (const auto& k : targets) {
        for (auto& c : enumerate_cocones(f, g, k, o.guard)) {
            cocones.push_back(std::move(c));
        }
    }
    return from_report(verify_isbell_claim(f, g, o.x_size_set ? o.x_size : n, pairs, cocones));
}

inline Outcome rigid_find(const Options&)
{
    const RigidGraph g = find_rigid_graph();
    const std::size_t autos = automorphisms(g).size();
    const json j = to_json(g);
    std::ostringstream text;
    text << "rigid-find: mask " << graph_mask(g) << ", " << g.edges.size() << " edges, " << autos << " automorphism(s)\n";
    return {j, text.str(), autos == 1};
}

inline Outcome dispatch(const Options& o)
{
    if (o.verb == "space-validate") return space_validate(o);
    if (o.verb == "psi-apply") return psi_apply(o);
    if (o.verb == "psi-verify") return psi_verify(o);
    if (o.verb == "phi-tabulate") return phi_tabulate(o);
    if (o.verb == "functor-validate") return functor_validate(o);
    if (o.verb == "nat-enumerate") return nat_enumerate(o);
    if (o.verb == "nat-check") return nat_check(o);
    if (o.verb == "heq-derive") return heq_derive(o);
    if (o.verb == "heq-check") return heq_check(o);
    if (o.verb == "isbell-fingerprint") return isbell_fingerprint(o);
    if (o.verb == "isbell-verify") return isbell_verify(o);
    if (o.verb == "rigid-find") return rigid_find(o);
    fail(ErrorKind::ParseError, "unknown command " + o.verb);
}

} // namespace detail

/// Parses argv-style arguments (without the program name), runs the verb and
/// writes the artifact to --out or `out`. Returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"setfun: spaces without axioms, quotient hom-functors and their verifiers"};
    app.set_help_flag("-h,--help", "Print help");
    Options o;
    app.add_option("verb", o.verb, "Command to run")->required()->check(CLI::IsMember(verbs()));
    app.add_option("--in", o.inputs, "Input JSON file (repeatable, order matters)");
    app.add_option("--out", o.out, "Write the artifact here instead of stdout");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--skeleton-max", o.skeleton_max, "Largest skeleton set [n]")->check(CLI::Range(0, 8));
    app.add_option("--guard", o.guard, "Candidate / search-node guard");
    app.add_option("--jobs", o.jobs, "Worker cap")->check(CLI::PositiveNumber);
    auto* kappa = app.add_option("--kappa", o.kappa, "Accessibility bound for functor-validate");
    auto* xs = app.add_option("--x-size", o.x_size, "Fingerprint component size");
    app.add_option("--hub", o.hubs, "isbell-verify: hub functor (repeatable)");
    app.add_option("--target", o.targets, "isbell-verify: cocone target functor (repeatable)");
    app.add_flag("--require-k1", o.require_k1, "space-validate: report (K1) failures as violations");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    o.kappa_set = kappa->count() > 0;
    o.x_size_set = xs->count() > 0;

    Outcome result;
    try {
        result = detail::dispatch(o);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string payload = o.format == "text" ? result.text : result.artifact.dump(2) + "\n";
    if (o.out.empty()) {
        out << payload;
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << o.out << "\n";
            return kExitUsage;
        }
        file << payload;
    }
    return result.passed ? kExitOk : kExitViolations;
}

} // namespace setfun::cli
