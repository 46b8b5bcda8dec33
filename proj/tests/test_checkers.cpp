#include "doctest.h"

#include "wpo/checkers.hpp"

using namespace wpo;

namespace {
DilatorSpec SEQ = DilatorSpec::seq();
DilatorSpec MSET = DilatorSpec::multiset();
DilatorSpec ID = DilatorSpec::identity();
}  // namespace

TEST_CASE("normality hierarchy verdicts for seq and multiset") {
    Checker ck;

    auto seq_normal = ck.check_property(SEQ, Property::normal, {4, 3});
    CHECK(seq_normal.pass);
    auto seq_aczel = ck.check_property(SEQ, Property::aczel_normal, {4, 3});
    CHECK(seq_aczel.pass);

    auto seq_strong = ck.check_property(SEQ, Property::strongly_normal, {3, 3});
    REQUIRE_FALSE(seq_strong.pass);
    REQUIRE(seq_strong.counterexample.has_value());
    const auto& cx = *seq_strong.counterexample;
    CHECK(cx.poset == "elements: 0 1\nle: 0 1\n");
    REQUIRE(cx.elements.size() == 1);
    CHECK(cx.elements[0] == "seq⟨0 0⟩");
    REQUIRE(cx.points.size() == 1);
    CHECK(cx.points[0] == "1");
    CHECK(cx.clause == "strict-below-unit");

    // The counterexample replays through the definitional predicate.
    auto poset = parse_poset(cx.poset);
    auto sigma = parse_element(SEQ, poset, cx.elements[0]);
    auto mu = dil_mu(SEQ, poset, cx.points[0]);
    for (const auto& id : dil_supp(sigma)) CHECK(poset->leq(id, cx.points[0]));
    CHECK_FALSE(dil_leq(sigma, mu));

    CHECK(ck.check_property(MSET, Property::strongly_normal, {4, 4}).pass);
    CHECK_FALSE(ck.check_property(SEQ, Property::strongly_normal_linear, {3, 3}).pass);
    CHECK(ck.check_property(MSET, Property::strongly_normal_linear, {3, 3}).pass);
}

TEST_CASE("dilator axioms hold for the built-ins at small bounds") {
    Checker ck;
    for (const auto& d : {SEQ, MSET, ID, star_completion(SEQ)}) {
        auto v = ck.check_property(d, Property::axioms, {3, 3});
        CHECK_MESSAGE(v.pass, d.name());
    }
}

TEST_CASE("aczel-normal implies normal across measured specs") {
    Checker ck;
    for (const auto& d : {SEQ, MSET, ID, star_completion(SEQ), star_completion(MSET),
                          DilatorSpec::compose(SEQ, MSET), DilatorSpec::compose(MSET, SEQ)}) {
        auto aczel = ck.check_property(d, Property::aczel_normal, {3, 3});
        auto normal = ck.check_property(d, Property::normal, {3, 3});
        if (aczel.pass) CHECK_MESSAGE(normal.pass, d.name());
    }
}

TEST_CASE("strongly normal implies the unit dominance condition") {
    Checker ck;
    for (const auto& d : {SEQ, MSET, ID, star_completion(SEQ)}) {
        auto strong = ck.check_property(d, Property::strongly_normal, {3, 2});
        auto remark = ck.check_property(d, Property::remark_condition, {3, 2});
        if (strong.pass) CHECK_MESSAGE(remark.pass, d.name());
    }
}

TEST_CASE("flat and graph-like for seq and multiset") {
    Checker ck;
    for (const auto& d : {SEQ, MSET}) {
        CHECK(ck.check_property(d, Property::flat, {3, 3}).pass);
        CHECK(ck.check_property(d, Property::graph_like, {3, 3}).pass);
    }
}

TEST_CASE("star completion is strongly normal and keeps partial orders") {
    Checker ck;
    auto star_seq = star_completion(SEQ);
    CHECK(ck.check_property(star_seq, Property::strongly_normal, {3, 3}).pass);
    CHECK(ck.check_property(star_completion(MSET), Property::strongly_normal, {3, 3}).pass);

    // Antisymmetry and transitivity of the completed order on bounded slices.
    for (const auto& x : enumerate_posets(3)) {
        auto elems = dil_elements(star_seq, x, 3);
        const int n = static_cast<int>(elems.size());
        std::vector<char> leq(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                leq[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                    dil_leq(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)]) ? 1 : 0;
        auto at = [&](int i, int j) { return leq[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] != 0; };
        for (int i = 0; i < n; ++i) {
            CHECK(at(i, i));
            for (int j = 0; j < n; ++j) {
                if (i != j && at(i, j)) CHECK_FALSE(at(j, i));
                for (int k = 0; k < n; ++k)
                    if (at(i, j) && at(j, k)) CHECK(at(i, k));
            }
        }
    }
}

TEST_CASE("measured: star preserves flatness and graph-likeness at small bounds") {
    Checker ck;
    auto star_seq = star_completion(SEQ);
    CHECK(ck.check_property(star_seq, Property::flat, {3, 2}).pass);
    CHECK(ck.check_property(star_seq, Property::graph_like, {3, 2}).pass);
}

TEST_CASE("registered quasi embeddings of dilators") {
    Checker ck;
    CHECK(ck.check_quasi_embedding("msetToSeq", MSET, SEQ, {3, 3}).pass);
    CHECK(ck.check_quasi_embedding("msetToSeq", MSET, star_completion(SEQ), {3, 3}).pass);
    CHECK(ck.check_quasi_embedding("identity-carrier", star_completion(SEQ), SEQ, {3, 3}).pass);
    CHECK_THROWS_AS(ck.check_quasi_embedding("identity-carrier", SEQ, MSET, {3, 3}),
                    UnknownTransformation);
    CHECK_THROWS_AS(ck.check_quasi_embedding("nope", MSET, SEQ, {3, 3}), UnknownTransformation);
}

TEST_CASE("verdict serialization") {
    Checker ck;
    auto v = ck.check_property(SEQ, Property::strongly_normal, {3, 3});
    auto text = to_text(v);
    CHECK(text.find("result: fail") != std::string::npos);
    CHECK(text.find("strict-below-unit") != std::string::npos);
    auto json = to_json(v);
    CHECK(json.find("\"instancesChecked\"") != std::string::npos);
    CHECK(json.find("\"maxPosetSize\": 3") != std::string::npos);
}
