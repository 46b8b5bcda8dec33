// Acceptance suite: one pass/fail line per criterion, exit nonzero when any
// criterion fails.  Everything is pinned here - bounds, expected values,
// counterexamples - so a regression shows up as a plain FAIL line.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "wpo/checkers.hpp"
#include "wpo/kruskal.hpp"
#include "wpo/ordinal.hpp"

using namespace wpo;

namespace {

struct CriterionFailure {
    std::string reason;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CriterionFailure{what};
}

Ordinal O(const std::string& s) { return parse_ordinal(s); }

DilatorSpec SEQ = DilatorSpec::seq();
DilatorSpec MSET = DilatorSpec::multiset();
DilatorSpec ID = DilatorSpec::identity();

Checker checker;  // shared so element tables are built once

int failures = 0;

void criterion(int number, const std::string& label, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
        body();
    } catch (const CriterionFailure& f) {
        reason = f.reason;
    } catch (const std::exception& e) {
        reason = std::string("exception: ") + e.what();
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (reason.empty() ? "PASS" : "FAIL") << " criterion " << number << ": " << label
         << "  [" << static_cast<long>(secs * 1000) << " ms]";
    if (!reason.empty()) {
        line << "\n     " << reason;
        ++failures;
    }
    std::cout << line.str() << std::endl;
}

}  // namespace

int main() {
    auto suite_start = std::chrono::steady_clock::now();

    criterion(1, "dilator axioms for seq, multiset, identity (posets<=4, elems<=3)", [] {
        for (const auto& d : {SEQ, MSET, ID}) {
            auto v = checker.check_property(d, Property::axioms, {4, 3});
            require(v.pass, d.name() + " failed the axioms check");
        }
    });

    criterion(2, "normality hierarchy: seq normal+aczel but not strongly normal; multiset strongly normal", [] {
        std::vector<std::pair<bool, bool>> aczel_vs_normal;

        auto seq_normal = checker.check_property(SEQ, Property::normal, {4, 3});
        auto seq_aczel = checker.check_property(SEQ, Property::aczel_normal, {4, 3});
        require(seq_normal.pass, "seq should be normal at <=4/<=3");
        require(seq_aczel.pass, "seq should be Aczel-normal at <=4/<=3");

        auto seq_strong = checker.check_property(SEQ, Property::strongly_normal, {3, 3});
        require(!seq_strong.pass, "seq must fail strong normality");
        require(seq_strong.counterexample.has_value(), "missing counterexample");
        const auto& cx = *seq_strong.counterexample;
        require(cx.poset == "elements: 0 1\nle: 0 1\n",
                "minimal counterexample poset is not the two-chain: got\n" + cx.poset);
        require(cx.elements.size() == 1 && cx.elements[0] == "seq⟨0 0⟩",
                "minimal counterexample element should be seq<0 0>");
        require(cx.points.size() == 1 && cx.points[0] == "1",
                "minimal counterexample witness should be y=1");

        auto mset_strong = checker.check_property(MSET, Property::strongly_normal, {4, 4});
        require(mset_strong.pass, "multiset should be strongly normal at <=4/<=4");

        // The hierarchy implication across every spec measured in this run.
        for (const auto& d : {SEQ, MSET, ID, star_completion(SEQ), star_completion(MSET)}) {
            bool aczel = checker.check_property(d, Property::aczel_normal, {3, 3}).pass;
            bool normal = checker.check_property(d, Property::normal, {3, 3}).pass;
            aczel_vs_normal.emplace_back(aczel, normal);
        }
        for (const auto& [aczel, normal] : aczel_vs_normal)
            require(!aczel || normal, "an Aczel-normal spec was measured as not normal");
    });

    criterion(3, "units: supp(mu(x)) = {x} and mu is an embedding (posets<=4)", [] {
        for (const auto& d : {SEQ, MSET})
            for (int n = 0; n <= 4; ++n)
                for (const auto& x : enumerate_posets(n)) {
                    for (const auto& id : x->carrier()) {
                        auto supp = dil_supp(dil_mu(d, x, id));
                        require(supp == std::vector<std::string>{id},
                                d.name() + ": supp(mu(" + id + ")) != {" + id + "}");
                    }
                    for (const auto& a : x->carrier())
                        for (const auto& b : x->carrier())
                            require(dil_leq(dil_mu(d, x, a), dil_mu(d, x, b)) == x->leq(a, b),
                                    d.name() + ": mu is not an order embedding");
                }
    });

    criterion(4, "star completion: strongly normal, conservative over multiset, quasi embeddings", [] {
        auto star_seq = star_completion(SEQ);
        require(checker.check_property(star_seq, Property::strongly_normal, {3, 3}).pass,
                "star(seq) should be strongly normal at <=3/<=3");

        auto star_mset = star_completion(MSET);
        for (const auto& x : enumerate_posets(3)) {
            auto plain = dil_elements(MSET, x, 3);
            for (const auto& a : plain)
                for (const auto& b : plain) {
                    auto sa = make_element(star_mset, x, a.items());
                    auto sb = make_element(star_mset, x, b.items());
                    require(dil_leq(sa, sb) == dil_leq(a, b),
                            "star(multiset) order deviates from the multiset order");
                }
        }

        require(checker.check_quasi_embedding("identity-carrier", star_seq, SEQ, {3, 3}).pass,
                "identity carrier star(seq) => seq should reflect the order");
        require(checker.check_quasi_embedding("msetToSeq", MSET, star_seq, {3, 3}).pass,
                "msetToSeq into star(seq) should pass on linear orders <=3");
    });

    criterion(5, "term order: partial order at length<=7 and fixed point equation at length<=6 (multiset)", [] {
        KruskalSystem sys(MSET);
        require(sys.audit(AuditKind::partial_order, 7).pass, "partial-order audit failed");
        require(sys.audit(AuditKind::fixed_point_eq, 6).pass, "fixed-point-eq audit failed");
    });

    criterion(6, "height lemma: passes for multiset and star(seq), fails for seq with the (1,2) pair", [] {
        KruskalSystem msys(MSET);
        require(msys.audit(AuditKind::height_lemma, 7).pass, "multiset height lemma failed");
        KruskalSystem star_sys(star_completion(SEQ));
        require(star_sys.audit(AuditKind::height_lemma, 7).pass, "star(seq) height lemma failed");

        KruskalSystem ssys(SEQ);
        auto v = ssys.audit(AuditKind::height_lemma, 7);
        require(!v.pass, "seq height lemma should fail");
        require(v.counterexample.has_value(), "missing counterexample");
        require(v.details.count("heights") && v.details.at("heights") == "1 2",
                "counterexample heights should be (1,2)");
        require(v.counterexample->elements.size() == 2 &&
                    v.counterexample->elements[0] == "( ( ; ⟨⟩ ) ; ⟨0 0⟩ )" &&
                    v.counterexample->elements[1] ==
                        "( ( ( ; ⟨⟩ ) ; ⟨0⟩ ) ; ⟨0⟩ )",
                "counterexample pair is not the documented one");
        require(v.note.find("hypothesis not met") == 0,
                "the audit must state that strong normality fails for seq");
    });

    criterion(7, "ordinal golden table for the sequence and multiset order types", [] {
        const std::vector<std::pair<std::string, std::string>> seq_table = {
            {"0", "1"},
            {"1", "w"},
            {"2", "w^w"},
            {"3", "w^(w^2)"},
            {"w", "w^(w^w)"},
            {"w + 1", "w^(w^(w + 1))"},
            {"w^w", "w^(w^(w^w))"},
            {"phi(1,0)", "w^(w^(phi(1,0) + 1))"},
            {"phi(1,0) + 2", "w^(w^(phi(1,0) + 3))"},
            {"phi(1,1)", "w^(w^(phi(1,1) + 1))"},
            {"phi(2,0)", "w^(w^(phi(2,0) + 1))"},
        };
        for (const auto& [probe, expect] : seq_table)
            require(otype_seq(O(probe)) == O(expect),
                    "otype seq " + probe + " should be " + expect + ", got " + otype_seq(O(probe)).str());
        for (const auto& [probe, unused] : seq_table) {
            (void)unused;
            require(otype_multiset(O(probe)) == Ordinal::omega_pow(O(probe)),
                    "otype multiset " + probe + " deviates from the omega power");
        }
        require(otype_multiset(O("phi(1,0)")) == O("phi(1,0)"), "epsilon numbers must absorb");
    });

    criterion(8, "normal-function analyzer: multiset/omega-pow normal, seq discontinuous at epsilons", [] {
        std::vector<Ordinal> probes = {O("w"), O("w^2"), O("w^w"), O("phi(1,0)"), O("phi(1,1)")};
        require(check_normal_function(OtypeMap::multiset_otype, probes, 200, 0).pass,
                "multiset-otype should be a normal function on the probes");
        require(check_normal_function(OtypeMap::omega_pow, probes, 200, 0).pass,
                "omega-pow should be a normal function on the probes");

        auto seq = check_normal_function(OtypeMap::seq_otype, probes, 200, 0);
        require(!seq.pass && seq.monotone, "seq-otype should be monotone but discontinuous");
        require(seq.probes.size() == 5, "probe bookkeeping");
        require(seq.probes[0].continuous && seq.probes[1].continuous && seq.probes[2].continuous,
                "seq-otype should be continuous at w, w^2, w^w");
        require(!seq.probes[3].continuous && seq.probes[3].sup_witness == "phi(1,0)" &&
                    seq.probes[3].value == "w^(w^(phi(1,0) + 1))",
                "gap pair at phi(1,0) should be (phi(1,0), w^(w^(phi(1,0) + 1)))");
        require(!seq.probes[4].continuous && seq.probes[4].sup_witness == "phi(1,1)" &&
                    seq.probes[4].value == "w^(w^(phi(1,1) + 1))",
                "gap pair at phi(1,1) should be (phi(1,1), w^(w^(phi(1,1) + 1)))");
    });

    criterion(9, "strong normality matches normal-function behavior for flat graph-like dilators", [] {
        std::vector<Ordinal> probes = {O("w"), O("w^2"), O("w^w"), O("phi(1,0)"), O("phi(1,1)")};
        struct Row {
            DilatorSpec spec;
            OtypeMap map;
        };
        for (const auto& row : {Row{SEQ, OtypeMap::seq_otype}, Row{MSET, OtypeMap::multiset_otype}}) {
            require(checker.check_property(row.spec, Property::flat, {3, 3}).pass,
                    row.spec.name() + " should be flat");
            require(checker.check_property(row.spec, Property::graph_like, {3, 3}).pass,
                    row.spec.name() + " should be graph-like");
            bool strongly = checker.check_property(row.spec, Property::strongly_normal, {4, 4}).pass;
            bool normal_fn = check_normal_function(row.map, probes, 200, 0).pass;
            require(strongly == normal_fn,
                    row.spec.name() + ": strongly-normal verdict and normal-function verdict disagree");
        }
    });

    criterion(10, "finite order-type recursion: max(|L(x)|+1) = |X| on all posets <= 4", [] {
        for (int n = 0; n <= 4; ++n)
            for (const auto& x : enumerate_posets(n)) {
                int best = 0;
                for (const auto& id : x->carrier())
                    best = std::max(best, lower_set(x, id)->size() + 1);
                require(best == x->size(), "recursion failed on\n" + x->serial());
            }
    });

    criterion(11, "whole suite under 30 minutes, deterministic under a fixed seed", [&] {
        std::vector<Ordinal> probes = {O("w"), O("phi(1,0)")};
        auto a = check_normal_function(OtypeMap::seq_otype, probes, 200, 0);
        auto b = check_normal_function(OtypeMap::seq_otype, probes, 200, 0);
        require(to_json(a) == to_json(b), "seeded analyzer is not deterministic");
        auto s1 = sample_ordinals(100, 42);
        auto s2 = sample_ordinals(100, 42);
        for (size_t i = 0; i < s1.size(); ++i)
            require(s1[i] == s2[i], "seeded ordinal sampling is not deterministic");
        auto total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
        require(total < 1800.0, "suite exceeded 30 minutes");
    });

    auto total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " in " << total
              << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
