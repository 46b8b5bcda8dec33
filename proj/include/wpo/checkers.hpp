#pragma once

#include <map>
#include <string>
#include <vector>

#include "wpo/dilator.hpp"
#include "wpo/verdict.hpp"

namespace wpo {

enum class Property {
    axioms,
    normal,
    aczel_normal,
    strongly_normal,
    strongly_normal_linear,
    flat,
    graph_like,
    remark_condition,
};

Property property_from_string(const std::string& name);
std::string property_name(Property p);

/// The strongly normal completion W*: same elements, supports and units; the
/// order gains the clause "some y in supp(t) strictly dominates supp(s)".
/// Requires a unit; every representable spec carries one.
DilatorSpec star_completion(const DilatorSpec& w);

/// Exhaustive bounded property checker.  Quantifier instantiation is fixed
/// (posets by (size, serial), then elements by (size, serial), then maps by
/// serial) and short-circuits on the first failure, which is therefore the
/// minimal counterexample under that order.  Caches element tables and order
/// matrices between runs, so reuse one instance across related checks.
class Checker {
public:
    Verdict check_property(const DilatorSpec& w, Property p, Bounds b);

    /// Checks a registered natural transformation nu : D => W restricted to
    /// finite linear orders: order reflection of every component, naturality
    /// against all embeddings between the tested orders, and support
    /// preservation.  Registered names: "msetToSeq" (D = multiset, sorts
    /// along the unique extension of each linear order) and
    /// "identity-carrier" (D = star(W), the identity on carriers).
    Verdict check_quasi_embedding(const std::string& nu, const DilatorSpec& d,
                                  const DilatorSpec& w, Bounds b);

private:
    struct Table {
        std::vector<DilatorElement> elems;
        std::map<std::string, int> index;
        std::vector<char> leq;  // row-major elems x elems
        bool leq_at(int i, int j) const { return leq[static_cast<size_t>(i) * elems.size() + static_cast<size_t>(j)] != 0; }
    };

    const std::vector<PosetPtr>& posets_up_to(int n, bool linear_only);
    const Table& table(const DilatorSpec& d, const PosetPtr& x, int bound);
    const std::vector<OrderMap>& maps(const PosetPtr& x, const PosetPtr& y, MapKind kind);

    std::map<std::string, std::vector<PosetPtr>> poset_cache_;
    std::map<std::string, Table> table_cache_;
    std::map<std::string, std::vector<OrderMap>> map_cache_;
};

}  // namespace wpo
