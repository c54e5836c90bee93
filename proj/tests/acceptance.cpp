// Acceptance run: one PASS/FAIL line per criterion, each under its time limit.

#include "oracles.hpp"

#include "setfun/setfun.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace setfun;

namespace {

/// What a criterion found: pass/fail plus a one-line account and any witnesses.
struct Verdict {
    bool ok = true;
    std::string detail;
    std::vector<std::string> witnesses;

    void fail_with(std::string w)
    {
        ok = false;
        if (witnesses.size() < 20) {
            witnesses.push_back(std::move(w));
        }
    }
};

std::string space_text(const Space& a) { return to_json(a).dump(); }

Verdict rigid_graph_criterion()
{
    Verdict v;
    std::ostringstream d;
    for (std::size_t n = 2; n <= 5; ++n) {
        const std::uint64_t graphs = std::uint64_t{1} << (n * (n - 1) / 2);
        std::uint64_t asymmetric = 0;
        for (std::uint64_t mask = 0; mask < graphs; ++mask) {
            const Graph g = graph_from_mask(n, mask);
            const std::size_t autos = automorphisms(g).size();
            if (autos != oracle::count_automorphisms(n, g.edges)) {
                v.fail_with("automorphism count disagrees with the oracle at n=" + std::to_string(n) + " mask "
                            + std::to_string(mask));
            }
            asymmetric += autos < 2 ? 1 : 0;
        }
        if (asymmetric != 0) {
            v.fail_with(std::to_string(asymmetric) + " asymmetric graphs on " + std::to_string(n) + " vertices");
        }
        d << "n=" << n << ": " << graphs << " graphs, " << asymmetric << " asymmetric; ";
    }
    std::uint64_t asymmetric6 = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 15); ++mask) {
        asymmetric6 += oracle::count_automorphisms(6, graph_from_mask(6, mask).edges) == 1 ? 1 : 0;
    }
    const RigidGraph g = setfun::rigid_graph();
    const std::size_t autos = oracle::count_automorphisms(6, g.edges);
    if (asymmetric6 == 0 || autos != 1 || automorphisms(g).size() != 1) {
        v.fail_with("canonical graph is not rigid");
    }
    d << "n=6: " << asymmetric6 << " asymmetric labelled graphs; canonical mask " << graph_mask(g) << " has " << autos
      << " automorphism among 720 permutations";
    v.detail = d.str();
    return v;
}

Verdict psi_functoriality()
{
    Verdict v;
    std::vector<Space> pool = oracle::exhaustive_spaces(2);
    const std::size_t exhaustive = pool.size();
    for (Space& s : oracle::random_spaces_carrier3(200, 20240601)) {
        pool.push_back(std::move(s));
    }
    std::vector<PsiImage> images;
    for (const Space& a : pool) {
        images.push_back(psi_object(a));
    }
    std::vector<std::vector<std::vector<FinMap>>> homs(pool.size(), std::vector<std::vector<FinMap>>(pool.size()));
    std::uint64_t maps = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const FinMap id = FinMap::identity(pool[i].carrier());
        if (psi_morphism(id, pool[i], pool[i]) != FinMap::identity(images[i].space.carrier())) {
            v.fail_with("identity not preserved on " + space_text(pool[i]));
        }
        for (std::size_t j = 0; j < pool.size(); ++j) {
            homs[i][j] = continuous_maps(pool[i], pool[j]);
            for (const FinMap& f : homs[i][j]) {
                ++maps;
                if (!is_continuous(psi_morphism(f, pool[i], pool[j]), images[i].space, images[j].space)) {
                    v.fail_with("Psi f not continuous: " + space_text(pool[i]) + " -> " + space_text(pool[j]));
                }
            }
        }
    }
    std::uint64_t composites = 0;
    const auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c) {
        for (const FinMap& f : homs[a][b]) {
            const FinMap pf = psi_morphism(f, pool[a], pool[b]);
            for (const FinMap& g : homs[b][c]) {
                ++composites;
                if (psi_morphism(compose(g, f), pool[a], pool[c]) != compose(psi_morphism(g, pool[b], pool[c]), pf)) {
                    v.fail_with("composition not preserved: " + space_text(pool[a]) + " -> " + space_text(pool[b])
                                + " -> " + space_text(pool[c]));
                }
            }
        }
    };
    for (std::size_t a = 0; a < exhaustive; ++a) {
        for (std::size_t b = 0; b < exhaustive; ++b) {
            for (std::size_t c = 0; c < exhaustive; ++c) {
                check_triple(a, b, c);
            }
        }
    }
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 20000; ++t) {
        check_triple(pick(gen), pick(gen), pick(gen));
    }
    std::ostringstream d;
    d << pool.size() << " spaces (" << exhaustive << " exhaustive, " << pool.size() - exhaustive << " random on 3 points), "
      << maps << " continuous maps, " << composites << " composites checked";
    v.detail = d.str();
    return v;
}

Verdict psi_fullness()
{
    Verdict v;
    const auto pool = oracle::exhaustive_spaces(2);
    std::uint64_t morphisms = 0;
    for (const Space& a : pool) {
        for (const Space& b : pool) {
            const Report r = verify_psi_full(a, b);
            const std::size_t expected = oracle::count_continuous(a, b);
            morphisms += expected;
            if (!r.passed()) {
                v.fail_with(r.to_json().dump());
            }
            if (r.summary["psi_hom_count"].get<std::size_t>() != expected
                || r.summary["base_hom_count"].get<std::size_t>() != expected) {
                v.fail_with("hom counts differ from the oracle for " + space_text(a) + " -> " + space_text(b));
            }
        }
    }
    v.detail = std::to_string(pool.size() * pool.size()) + " pairs, " + std::to_string(morphisms)
               + " morphisms, every continuous PsiA -> PsiB is Psi f for exactly one f";
    return v;
}

Verdict quotient_hom()
{
    Verdict v;
    const auto k1 = oracle::k1_spaces(3);
    std::uint64_t triples = 0;
    for (const Space& a : k1) {
        for (std::size_t x = 0; x <= 4; ++x) {
            std::vector<FinMap> maps;
            for (const FinMap& g : all_maps(a.carrier(), FinSet{x})) {
                maps.push_back(g);
            }
            // Equivalence matrix, then reflexivity, symmetry and transitivity on it.
            const std::size_t m = maps.size();
            std::vector<char> eq(m * m);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    eq[i * m + j] = equivalent(maps[i], maps[j], a) ? 1 : 0;
                }
            }
            for (std::size_t i = 0; i < m; ++i) {
                if (!eq[i * m + i]) {
                    v.fail_with("not reflexive on " + space_text(a));
                }
                for (std::size_t j = 0; j < m; ++j) {
                    if (eq[i * m + j] != eq[j * m + i]) {
                        v.fail_with("not symmetric on " + space_text(a));
                    }
                    if (!eq[i * m + j]) {
                        continue;
                    }
                    for (std::size_t k = 0; k < m; ++k) {
                        ++triples;
                        if (eq[j * m + k] && !eq[i * m + k]) {
                            v.fail_with("not transitive on " + space_text(a) + " X=" + std::to_string(x));
                        }
                    }
                }
            }
        }
    }
    const Space a0 = oracle::a0();
    const FunctorTable phi = from_quotient_hom(a0, 3);
    std::vector<std::size_t> oracle_counts;
    for (std::size_t k = 0; k <= 3; ++k) {
        oracle_counts.push_back(oracle::class_count_union_find(a0, k));
    }
    const std::vector<std::size_t> expected{0, 1, 3, 6};
    if (phi.object_sizes() != expected || oracle_counts != expected) {
        v.fail_with("Phi(A0) object counts " + json(phi.object_sizes()).dump() + ", oracle " + json(oracle_counts).dump());
    }
    for (const Space& a : k1) {
        const Report r = check_functor_laws(from_quotient_hom(a, 4));
        if (!r.passed()) {
            v.fail_with("functor laws fail for " + space_text(a));
        }
    }
    v.detail = std::to_string(k1.size()) + " (K1) spaces, " + std::to_string(triples)
               + " transitivity triples; Phi(A0) sizes [0,1,3,6] match union-find; laws hold at skeleton 4";
    return v;
}

Verdict phi_full_faithful()
{
    Verdict v;
    const auto pool = oracle::exhaustive_spaces(2);
    std::vector<Space> psi;
    std::vector<FunctorPtr> tables;
    for (const Space& a : pool) {
        psi.push_back(psi_object(a).space);
        tables.push_back(share(from_quotient_hom(psi.back(), 3)));
    }
    std::uint64_t nats = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = 0; j < pool.size(); ++j) {
            const Report r = verify_phi_embedding(psi[i], psi[j], 3);
            if (!r.passed()) {
                v.fail_with(r.to_json().dump());
            }
            // Explicit bijection Hom(A, B) -> Nat(Phi Psi B, Phi Psi A) through yoneda_extend.
            const auto base = continuous_maps(pool[i], pool[j]);
            const auto enumerated = enumerate_nat_trans(tables[j], tables[i]);
            nats += enumerated.size();
            if (base.size() != oracle::count_continuous(pool[i], pool[j]) || enumerated.size() != base.size()) {
                v.fail_with("|Nat| = " + std::to_string(enumerated.size()) + " but |Hom| = " + std::to_string(base.size())
                            + " for " + space_text(pool[i]) + " -> " + space_text(pool[j]));
                continue;
            }
            std::vector<int> hits(enumerated.size(), 0);
            for (const FinMap& f : base) {
                const NatTransTable mu = yoneda_extend(psi_morphism(f, pool[i], pool[j]), tables[j], tables[i]);
                const auto it = std::find(enumerated.begin(), enumerated.end(), mu);
                if (it == enumerated.end()) {
                    v.fail_with("Phi Psi f not among the enumerated transformations");
                } else {
                    ++hits[static_cast<std::size_t>(it - enumerated.begin())];
                }
            }
            if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) {
                v.fail_with("yoneda_extend is not a bijection for " + space_text(pool[i]) + " -> " + space_text(pool[j]));
            }
        }
    }
    v.detail = std::to_string(pool.size() * pool.size()) + " pairs at skeleton 3, " + std::to_string(nats)
               + " transformations, each Phi Psi f for exactly one continuous f";
    return v;
}

Verdict accessibility()
{
    Verdict v;
    const auto k1 = oracle::k1_spaces(3);
    for (const Space& a : k1) {
        const FunctorTable t = from_quotient_hom(a, 4);
        const std::size_t n = a.carrier().size;
        const Report good = validate_functor(t, n + 1);
        if (!good.passed()) {
            v.fail_with("kappa=|A|+1 rejected for " + space_text(a) + ": " + good.to_json().dump());
        }
        if (n > 0 && validate_functor(t, 1).passed()) {
            v.fail_with("kappa=1 accepted for nonempty " + space_text(a));
        }
    }
    v.detail = std::to_string(k1.size()) + " (K1) spaces at skeleton 4: accessible at |A|+1, not at 1 when A is nonempty";
    return v;
}

Verdict height_one()
{
    Verdict v;
    const auto pool = oracle::small_functor_pool();
    std::uint64_t families = 0;
    std::uint64_t natural = 0;
    for (const auto& f : pool) {
        const HeightOneSystem sys = derive_system(*f);
        for (const auto& g : pool) {
            for_each_component_family(*f, *g, kDefaultGuard, [&](const auto& comps) {
                ++families;
                const bool nat = check_naturality(make_nat(f, g, comps)).passed();
                natural += nat ? 1 : 0;
                if (nat != check_preserves(comps, sys, *g).passed()) {
                    v.fail_with(f->description() + " -> " + g->description() + ": checkers disagree on "
                                + json(comps).dump());
                }
            });
        }
    }
    const FinMap f(FinSet{3}, FinSet{2}, {1, 1, 0});
    const FunctorTable phi = from_quotient_hom(oracle::a0(), 3);
    std::string printed;
    for (const auto& eq : derive_system(phi).equations) {
        if (eq.substitution == f) {
            printed = render_equation(eq, {true, true});
            break;
        }
    }
    if (printed != "t(y₂,y₂,y₁) = s(y₁,y₂)") {
        v.fail_with("worked example prints as '" + printed + "'");
    }
    v.detail = std::to_string(pool.size() * pool.size()) + " table pairs, " + std::to_string(families) + " families ("
               + std::to_string(natural) + " natural); worked example prints " + printed;
    return v;
}

Report isbell_report()
{
    const FunctorPtr f = share(from_quotient_hom(psi_object(oracle::a0()).space, 3));
    std::vector<NatTransPair> pairs;
    for (const auto& h : default_hub_pool(f)) {
        for (auto& p : enumerate_pairs(h, f, f)) {
            pairs.push_back(std::move(p));
        }
    }
    std::vector<Cocone> cocones;
    for (const auto& k : default_cocone_targets(f, f)) {
        for (auto& c : enumerate_cocones(f, f, k)) {
            cocones.push_back(std::move(c));
        }
    }
    return verify_isbell_claim(f, f, 3, pairs, cocones);
}

Verdict isbell()
{
    Verdict v;
    const Report r = isbell_report();
    for (const auto& w : r.violations) {
        v.fail_with(w.dump());
    }
    const json& s = r.summary;
    if (s["forward_failures"] != 0) {
        v.ok = false;
    }
    v.detail = std::to_string(s["pairs"].get<int>()) + " pairs x " + std::to_string(s["cocones"].get<int>())
               + " cocones, " + std::to_string(s["agreements"].get<int>()) + " agreements; forward failures "
               + s["forward_failures"].dump() + ", reverse counterexamples " + s["reverse_counterexamples"].dump()
               + ", corollary failures " + s["corollary_failures"].dump();
    return v;
}

std::string run_cli(const std::string& args)
{
    const std::string cmd = std::string(SETFUN_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return "<popen failed>";
    }
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
        out.append(buf.data(), n);
    }
    out += "\nexit " + std::to_string(WEXITSTATUS(pclose(pipe)));
    return out;
}

Verdict determinism()
{
    Verdict v;
    const auto reports = [] {
        std::vector<std::string> out;
        out.push_back(verify_psi_full(oracle::a0(), oracle::a0()).to_json().dump());
        const Space p = psi_object(oracle::a0()).space;
        out.push_back(verify_phi_embedding(p, p, 3).to_json().dump());
        const FunctorPtr phi = share(from_quotient_hom(oracle::a0(), 3));
        out.push_back(to_json(derive_system(*phi)).dump());
        out.push_back(validate_functor(*phi, 3).to_json().dump());
        out.push_back(isbell_report().to_json().dump());
        json nats = json::array();
        for (const auto& mu : enumerate_nat_trans(share(from_quotient_hom(p, 3)), share(from_quotient_hom(p, 3)))) {
            nats.push_back(to_json(mu));
        }
        out.push_back(nats.dump());
        return out;
    };
    const std::string samples = SETFUN_SAMPLES_DIR;
    const std::vector<std::string> commands{
        "rigid-find",
        "psi-verify --in " + samples + "/a0.json --in " + samples + "/a0.json",
        "nat-enumerate --in " + samples + "/phi_psi_a0.json --in " + samples + "/phi_psi_a0.json",
        "nat-check --in " + samples + "/phi_a0.json --in " + samples + "/phi_a0.json --in " + samples
            + "/phi_a0_corrupted.json",
        "heq-derive --in " + samples + "/phi_a0.json --format text",
        "isbell-verify --in " + samples + "/phi_psi_a0.json --in " + samples + "/phi_psi_a0.json",
    };
    const auto first = reports();
    const auto second = reports();
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (first[i] != second[i]) {
            v.fail_with("in-process report " + std::to_string(i) + " differs between runs");
        }
    }
    for (const auto& c : commands) {
        if (run_cli(c) != run_cli(c)) {
            v.fail_with("CLI output differs between runs: " + c);
        }
    }
    v.detail = std::to_string(first.size()) + " in-process reports and " + std::to_string(commands.size())
               + " CLI runs byte-identical on repetition";
    return v;
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Verdict()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "rigid graph", 5, rigid_graph_criterion},
        {2, "Psi functoriality and continuity", 60, psi_functoriality},
        {3, "Psi fullness", 600, psi_fullness},
        {4, "equivalence and Phi object counts", 60, quotient_hom},
        {5, "Phi full and faithful", 900, phi_full_faithful},
        {6, "accessibility bound", 60, accessibility},
        {7, "height-one equivalence", 300, height_one},
        {8, "Isbell agreement grid", 900, isbell},
        {9, "determinism", 600, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail = std::string("aborted: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_seconds;
        const bool pass = v.ok && in_time;
        failures += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ") " << std::fixed
                  << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.limit_seconds << " s: "
                  << v.detail << (in_time ? "" : " [time limit exceeded]") << "\n";
        for (const auto& w : v.witnesses) {
            std::cout << "    witness: " << w << "\n";
        }
        std::cout.flush();
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
