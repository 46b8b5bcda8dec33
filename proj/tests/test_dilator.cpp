#include "doctest.h"

#include <algorithm>
#include <set>

#include "wpo/dilator.hpp"

using namespace wpo;

namespace {

PosetPtr two_chain() { return make_chain(2); }
PosetPtr three_chain() { return make_chain(3); }

DilatorSpec SEQ = DilatorSpec::seq();
DilatorSpec MSET = DilatorSpec::multiset();
DilatorSpec ID = DilatorSpec::identity();

DilatorElement seq_el(const PosetPtr& x, const std::vector<int>& items) {
    return make_element(SEQ, x, items);
}
DilatorElement mset_el(const PosetPtr& x, const std::vector<int>& items) {
    return make_element(MSET, x, items);
}

}  // namespace

TEST_CASE("bounded element enumeration") {
    auto empty = make_poset({}, {});
    CHECK(dil_elements(SEQ, empty, 3).size() == 1);  // only the empty sequence

    auto c2 = two_chain();
    auto msets = dil_elements(MSET, c2, 2);
    REQUIRE(msets.size() == 6);
    CHECK(msets[0].str() == "mset[]");
    CHECK(msets[1].str() == "mset[0]");
    CHECK(msets[2].str() == "mset[1]");
    CHECK(msets[3].str() == "mset[0 0]");
    CHECK(msets[4].str() == "mset[0 1]");
    CHECK(msets[5].str() == "mset[1 1]");

    CHECK(dil_elements(SEQ, c2, 2).size() == 7);  // 1 + 2 + 4
    CHECK(dil_elements(ID, c2, 3).size() == 2);
    CHECK(dil_elements(ID, empty, 3).empty());
    CHECK_THROWS_AS(dil_elements(SEQ, c2, 7), BoundExceeded);
}

TEST_CASE("order decisions") {
    auto c2 = two_chain();
    CHECK(dil_leq(seq_el(c2, {0, 0}), seq_el(c2, {0, 1})));
    CHECK(dil_leq(seq_el(c2, {}), seq_el(c2, {1, 0, 1})));
    CHECK_FALSE(dil_leq(seq_el(c2, {0, 0}), seq_el(c2, {1})));
    CHECK_FALSE(dil_leq(mset_el(c2, {1}), mset_el(c2, {0, 0})));
    CHECK(dil_leq(mset_el(c2, {0, 0}), mset_el(c2, {1})));

    auto a2 = make_poset({"a", "b"}, {{"a", "a"}, {"b", "b"}});
    auto sa = make_element_ids(MSET, a2, {"a"});
    auto sb = make_element_ids(MSET, a2, {"b"});
    CHECK_FALSE(dil_leq(sa, sb));
    CHECK_FALSE(dil_leq(sb, sa));

    CHECK_THROWS_AS(dil_leq(seq_el(c2, {0}), seq_el(three_chain(), {0})), AmbientMismatch);
}

TEST_CASE("supports") {
    auto c2 = two_chain();
    CHECK(dil_supp(seq_el(c2, {0, 1, 0})) == std::vector<std::string>{"0", "1"});
    CHECK(dil_supp(mset_el(c2, {})).empty());
    auto mu = dil_mu(SEQ, c2, "1");
    CHECK(dil_supp(mu) == std::vector<std::string>{"1"});
}

TEST_CASE("renaming") {
    auto c2 = two_chain();
    auto c3 = three_chain();
    auto embs = enumerate_maps(c2, c3, MapKind::embedding);
    REQUIRE(embs.size() == 3);
    // the inclusion 0,1 -> 0,1
    const OrderMap& incl = embs[0];
    REQUIRE(incl.apply(0) == 0);
    REQUIRE(incl.apply(1) == 1);
    CHECK(dil_rename(incl, seq_el(c2, {0, 1})).str() == "seq⟨0 1⟩");

    const OrderMap* shift = nullptr;  // 0->1, 1->2
    for (const auto& f : embs)
        if (f.apply(0) == 1 && f.apply(1) == 2) shift = &f;
    REQUIRE(shift != nullptr);
    CHECK(dil_rename(*shift, mset_el(c2, {0, 0, 1})).str() == "mset[1 1 2]");

    auto idel = make_element(ID, c2, {0});
    CHECK(dil_rename(*shift, idel).str() == "id(1)");
}

TEST_CASE("units") {
    auto c2 = two_chain();
    CHECK(dil_mu(SEQ, c2, "0").str() == "seq⟨0⟩");
    CHECK(dil_mu(MSET, c2, "1").str() == "mset[1]");
    CHECK(dil_mu(ID, c2, "0").str() == "id(0)");
    CHECK(dil_mu(DilatorSpec::star(SEQ), c2, "0").str() == "seq⟨0⟩");
    CHECK_THROWS_AS(dil_mu(SEQ, c2, "9"), UnknownIdentifier);
}

TEST_CASE("trace membership") {
    auto a2 = make_poset({"p", "q"}, {{"p", "p"}, {"q", "q"}});
    CHECK(trace_has(make_element_ids(SEQ, a2, {"p", "q"})));
    auto one = make_poset({"p"}, {{"p", "p"}});
    CHECK_FALSE(trace_has(make_element_ids(SEQ, one, {})));
    auto empty = make_poset({}, {});
    CHECK(trace_has(make_element(MSET, empty, {})));
}

TEST_CASE("coded comparisons agree with the direct order") {
    auto c3 = three_chain();
    auto s = seq_el(c3, {0});
    auto t = seq_el(c3, {2});
    CHECK(coded_leq(encode(s), encode(t)));
    CHECK(coded_leq(encode(s), encode(s)));
    CHECK_FALSE(coded_leq(encode(mset_el(c3, {2})), encode(mset_el(c3, {0, 0}))));

    for (const auto& d : {SEQ, MSET, ID}) {
        for (const auto& x : enumerate_posets(3)) {
            auto elems = dil_elements(d, x, 3);
            for (const auto& a : elems) {
                CHECK(decode(encode(a)) == a);
                for (const auto& b : elems)
                    CHECK(coded_leq(encode(a), encode(b)) == dil_leq(a, b));
            }
        }
    }
}

TEST_CASE("multiset to sequence along a linearization") {
    auto c2 = two_chain();
    auto ext = linear_extensions(c2).at(0);
    CHECK(mset_to_seq(ext, mset_el(c2, {1, 0, 0})).str() == "seq⟨0 0 1⟩");
    CHECK(mset_to_seq(ext, mset_el(c2, {})).str() == "seq⟨⟩");
    CHECK(mset_to_seq(ext, mset_el(c2, {1})).str() == "seq⟨1⟩");
}

TEST_CASE("msetToSeq is order reflecting for every poset and extension") {
    // The candidate map sorts along a linear extension; reflection holds on
    // every partial order we can reach, not only linear ones.
    for (const auto& x : enumerate_posets(4)) {
        auto elems = dil_elements(MSET, x, 3);
        for (const auto& ext : linear_extensions(x)) {
            for (const auto& a : elems)
                for (const auto& b : elems) {
                    auto sa = mset_to_seq(ext, a);
                    auto sb = mset_to_seq(ext, b);
                    if (dil_leq(sa, sb)) CHECK(dil_leq(a, b));
                }
        }
    }
}

TEST_CASE("functor laws and naturality on small posets") {
    auto specs = {SEQ, MSET, ID};
    auto posets = enumerate_posets(3);
    for (const auto& d : specs) {
        for (const auto& x : posets) {
            auto elems = dil_elements(d, x, 3);
            auto idm = identity_map(x);
            for (const auto& s : elems) CHECK(dil_rename(idm, s) == s);
            for (const auto& y : posets) {
                for (const auto& f : enumerate_maps(x, y, MapKind::quasi)) {
                    for (const auto& s : elems) {
                        auto fs = dil_rename(f, s);
                        // supp naturality
                        std::set<std::string> expect;
                        for (const auto& id : dil_supp(s)) expect.insert(f.apply(id));
                        auto got = dil_supp(fs);
                        CHECK(std::set<std::string>(got.begin(), got.end()) == expect);
                        // quasi embeddings reflect; embeddings also preserve
                        for (const auto& t : elems) {
                            auto ft = dil_rename(f, t);
                            if (dil_leq(fs, ft)) CHECK(dil_leq(s, t));
                            if (f.is_embedding() && dil_leq(s, t)) CHECK(dil_leq(fs, ft));
                        }
                        // mu naturality
                    }
                    for (const auto& id : x->carrier())
                        CHECK(dil_rename(f, dil_mu(d, x, id)) == dil_mu(d, y, f.apply(id)));
                    // support condition: elements over the target with support
                    // inside the range have a preimage
                    if (f.is_embedding()) {
                        for (const auto& t : dil_elements(d, y, 3)) {
                            bool inside = true;
                            for (int i : dil_supp_indices(t))
                                if (!f.in_range(i)) { inside = false; break; }
                            if (!inside) continue;
                            auto pre = dil_preimage(f, t);
                            REQUIRE(pre.has_value());
                            CHECK(dil_rename(f, *pre) == t);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("functor composition law") {
    auto c2 = two_chain();
    auto c3 = three_chain();
    auto c4 = make_chain(4);
    auto f = enumerate_maps(c2, c3, MapKind::embedding).at(1);
    auto g = enumerate_maps(c3, c4, MapKind::embedding).at(2);
    auto gf = compose(g, f);
    for (const auto& d : {SEQ, MSET}) {
        for (const auto& s : dil_elements(d, c2, 3))
            CHECK(dil_rename(gf, s) == dil_rename(g, dil_rename(f, s)));
    }
}

TEST_CASE("each unit is an order embedding") {
    for (const auto& d : {SEQ, MSET, ID})
        for (int n = 0; n <= 4; ++n)
            for (const auto& x : enumerate_posets(n))
                for (const auto& a : x->carrier())
                    for (const auto& b : x->carrier()) {
                        bool below = dil_leq(dil_mu(d, x, a), dil_mu(d, x, b));
                        CHECK(below == x->leq(a, b));
                    }
}

TEST_CASE("star order extends the base order") {
    auto star_seq = DilatorSpec::star(SEQ);
    auto c2 = two_chain();
    auto s = make_element(star_seq, c2, {0, 0});
    auto t = make_element(star_seq, c2, {1});
    CHECK(dil_leq(s, t));  // second disjunct: 0 < 1
    CHECK_FALSE(dil_leq(t, s));
    for (const auto& x : enumerate_posets(3)) {
        auto plain = dil_elements(SEQ, x, 3);
        for (const auto& a : plain)
            for (const auto& b : plain) {
                auto sa = make_element(star_seq, x, a.items());
                auto sb = make_element(star_seq, x, b.items());
                if (dil_leq(a, b)) CHECK(dil_leq(sa, sb));
            }
    }
}

TEST_CASE("star multiset coincides with multiset on small bounds") {
    auto star_mset = DilatorSpec::star(MSET);
    for (const auto& x : enumerate_posets(3)) {
        auto plain = dil_elements(MSET, x, 3);
        for (const auto& a : plain)
            for (const auto& b : plain) {
                auto sa = make_element(star_mset, x, a.items());
                auto sb = make_element(star_mset, x, b.items());
                CHECK(dil_leq(sa, sb) == dil_leq(a, b));
            }
    }
}

TEST_CASE("composition dilator basics") {
    auto comp = DilatorSpec::compose(SEQ, MSET);
    CHECK(comp.name() == "compose(seq,multiset)");
    CHECK(DilatorSpec::parse("compose(seq,mset)") == comp);

    auto c2 = two_chain();
    auto elems = detail::elements_unguarded(comp, c2, 3);
    CHECK(!elems.empty());
    for (const auto& e : elems) CHECK(e.size_measure() <= 3);
    std::set<std::string> serials;
    for (const auto& e : elems) serials.insert(e.str());
    CHECK(serials.size() == elems.size());
    CHECK(serials.count("seq⟨⟩") == 1);
    CHECK(serials.count("seq⟨mset[]⟩") == 1);
    CHECK(serials.count("seq⟨mset[0 1]⟩") == 1);

    // unit, support, rename
    auto mu = dil_mu(comp, c2, "1");
    CHECK(mu.str() == "seq⟨mset[1]⟩");
    CHECK(dil_supp(mu) == std::vector<std::string>{"1"});
    auto c3 = three_chain();
    auto f = enumerate_maps(c2, c3, MapKind::embedding).at(1);
    CHECK(dil_rename(f, mu) == dil_mu(comp, c3, f.apply("1")));

    // a sequence of two multisets compares by Higman over the inner order
    auto small = parse_element(comp, c2, "seq<mset[0] mset[0 0]>");
    auto large = parse_element(comp, c2, "seq<mset[1] mset[0 1]>");
    CHECK(dil_leq(small, large));
    CHECK_FALSE(dil_leq(large, small));
}

TEST_CASE("element parsing round trips") {
    auto c2 = two_chain();
    for (const auto& d : {SEQ, MSET, ID, DilatorSpec::star(SEQ), DilatorSpec::compose(MSET, SEQ)}) {
        for (const auto& e : detail::elements_unguarded(d, c2, 3)) {
            CHECK(parse_element(d, c2, e.str()) == e);
        }
    }
    CHECK(parse_element(SEQ, c2, "seq<1 0>") == make_element(SEQ, c2, {1, 0}));
    CHECK_THROWS_AS(parse_element(SEQ, c2, "seq<0"), SyntaxError);
    CHECK_THROWS_AS(parse_element(SEQ, c2, "mset[0]"), SyntaxError);
    CHECK_THROWS_AS(parse_element(SEQ, c2, "seq<7>"), UnknownIdentifier);
}
