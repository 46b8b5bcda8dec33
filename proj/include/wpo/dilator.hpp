#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wpo/poset.hpp"

namespace wpo {

/// Verdict cache for measured properties.  Purely informational: nothing in
/// the library assumes a cached value, checkers only record what they found.
struct PropertyFlags {
    std::optional<bool> normal;
    std::optional<bool> aczel_normal;
    std::optional<bool> strongly_normal;
    std::optional<bool> flat;
    std::optional<bool> graph_like;
};

/// Names one of the coded dilators: identity, seq (Higman order), multiset
/// (Dershowitz-Manna order), star(W) (the strongly normal completion of W),
/// or compose(V,W) acting as V after W.
class DilatorSpec {
public:
    enum class Kind { identity, seq, multiset, star, compose };

    static DilatorSpec identity();
    static DilatorSpec seq();
    static DilatorSpec multiset();
    static DilatorSpec star(const DilatorSpec& inner);
    static DilatorSpec compose(const DilatorSpec& outer, const DilatorSpec& inner);

    /// Accepts "identity"/"id", "seq", "multiset"/"mset", "star(...)",
    /// "compose(...,...)".  Throws SyntaxError.
    static DilatorSpec parse(const std::string& text);

    Kind kind() const { return node_->kind; }
    DilatorSpec inner() const;  // star and compose
    DilatorSpec outer() const;  // compose only

    /// The payload shape after unwrapping star: star changes only the order,
    /// not the underlying elements.
    DilatorSpec base() const;

    std::string name() const;
    bool operator==(const DilatorSpec& other) const { return name() == other.name(); }
    bool operator!=(const DilatorSpec& other) const { return !(*this == other); }

    PropertyFlags& flags() const { return node_->flags; }

private:
    struct Node {
        Kind kind;
        std::shared_ptr<const Node> a;  // star inner / compose outer
        std::shared_ptr<const Node> b;  // compose inner
        mutable PropertyFlags flags;
    };
    explicit DilatorSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// A value of W(X) for finite X.  For seq the payload is an ordered list of
/// carrier indices, for multiset a sorted occurrence list, for identity a
/// single index.  Star elements reuse the payload of the inner dilator.  For
/// compose(V,W) the element keeps the distinct inner W-elements ("atoms",
/// sorted by serial) plus a V-shape over the canonical atom poset.
class DilatorElement {
public:
    const DilatorSpec& dilator() const { return dilator_; }
    const PosetPtr& ambient() const { return ambient_; }

    const std::vector<int>& items() const { return items_; }
    const std::vector<DilatorElement>& atoms() const { return atoms_; }
    const DilatorElement& shape() const { return *shape_; }
    const PosetPtr& atom_poset() const { return atom_poset_; }

    /// Size measure: sequence length; multiset cardinality with multiplicity;
    /// 1 for identity; for compose each atom occurrence costs 1 + its size.
    int size_measure() const;

    std::string str() const;
    bool operator==(const DilatorElement& other) const;
    bool operator!=(const DilatorElement& other) const { return !(*this == other); }

private:
    DilatorElement(DilatorSpec d, PosetPtr ambient) : dilator_(std::move(d)), ambient_(std::move(ambient)) {}

    DilatorSpec dilator_;
    PosetPtr ambient_;
    std::vector<int> items_;
    std::vector<DilatorElement> atoms_;
    std::shared_ptr<const DilatorElement> shape_;
    PosetPtr atom_poset_;

    friend DilatorElement make_element(const DilatorSpec&, const PosetPtr&, const std::vector<int>&);
    friend DilatorElement make_compose_element(const DilatorSpec&, const PosetPtr&,
                                               const DilatorElement&, const std::vector<DilatorElement>&);
};

/// Builds a basic (identity/seq/multiset, possibly star-wrapped) element from
/// a payload of carrier indices.  Multiset payloads are sorted; identity
/// payloads must have exactly one entry.
DilatorElement make_element(const DilatorSpec& d, const PosetPtr& ambient, const std::vector<int>& payload);
DilatorElement make_element_ids(const DilatorSpec& d, const PosetPtr& ambient,
                                const std::vector<std::string>& payload);

/// Builds a compose element from an outer shape over some poset of atoms and
/// the atoms themselves (atoms[i] corresponds to shape.ambient carrier[i]).
/// The result is canonicalized: unused atoms are dropped, atoms are sorted by
/// serial and the atom poset is recomputed from the inner order.
DilatorElement make_compose_element(const DilatorSpec& d, const PosetPtr& ambient,
                                    const DilatorElement& shape, const std::vector<DilatorElement>& atoms);

/// All elements of W(X) of size <= bound, ordered by (size, serial).
/// Guarded by bound <= 6 (BoundExceeded).
std::vector<DilatorElement> dil_elements(const DilatorSpec& d, const PosetPtr& x, int size_bound);

/// Decides s <=_{W(X)} t.  Throws AmbientMismatch when the elements disagree
/// on dilator or ambient poset.
bool dil_leq(const DilatorElement& s, const DilatorElement& t);

/// Support as carrier indices (ascending) / identifiers.
std::vector<int> dil_supp_indices(const DilatorElement& s);
std::vector<std::string> dil_supp(const DilatorElement& s);

/// W(f)(s); the source of f must be the ambient of s.
DilatorElement dil_rename(const OrderMap& f, const DilatorElement& s);

/// The preimage of t under W(f) when it exists (exactly when the payload of
/// t only uses identifiers in the range of f).
std::optional<DilatorElement> dil_preimage(const OrderMap& f, const DilatorElement& t);

/// The unit mu_X(x): <x> for seq, [x] for multiset, x for identity;
/// inherited through star; composed units for compose.
DilatorElement dil_mu(const DilatorSpec& d, const PosetPtr& x, const std::string& id);

/// True iff the support of s is the whole carrier of its ambient poset.
bool trace_has(const DilatorElement& s);

/// An element in coded form: canonical support poset |a|, kernel of full
/// support over |a|, and the recorded inclusion |a| -> X.
struct CodedElement {
    PosetPtr support_poset;
    DilatorElement kernel;
    OrderMap embed;
};

CodedElement encode(const DilatorElement& s);
DilatorElement decode(const CodedElement& c);

/// Decides the order through the coded pathway: renames both kernels into
/// W(|a u b|) and compares there.  Must agree with dil_leq after decoding.
bool coded_leq(const CodedElement& s, const CodedElement& t);

/// The sequence listing a multiset's elements with multiplicity, ascending
/// along the given linearization ext of the ambient poset.
DilatorElement mset_to_seq(const OrderMap& ext, const DilatorElement& s);

/// Element text syntax: seq "seq<x0 x1 ...>", multiset "mset[x0 x1 ...]"
/// (repetition = multiplicity), identity "id(x)"; U+27E8/27E9 angle brackets
/// are accepted as well and used for printing.
DilatorElement parse_element(const DilatorSpec& d, const PosetPtr& ambient, const std::string& text);

namespace detail {
/// Unguarded enumeration used internally by the term machinery.
std::vector<DilatorElement> elements_unguarded(const DilatorSpec& d, const PosetPtr& x, int size_bound);
/// Rebuilds an element over a new ambient with carrier indices substituted.
DilatorElement remap_indices(const DilatorElement& e, const std::vector<int>& idx_map, const PosetPtr& ambient);
/// Parses a bare payload ("<0 1>", "[0 0]", "id(0)" or a lone identifier for
/// identity); full element syntax is accepted too.
DilatorElement parse_payload(const DilatorSpec& d, const PosetPtr& ambient, const std::string& text);
std::string payload_str(const DilatorElement& s);
}  // namespace detail

}  // namespace wpo
