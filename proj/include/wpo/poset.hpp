#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpo/errors.hpp"

namespace wpo {

class FinitePoset;
class OrderMap;
using PosetPtr = std::shared_ptr<const FinitePoset>;

/// A finite partial order over opaque string identifiers.  The full <=
/// relation is stored as a matrix, so membership queries are O(1).
/// Immutable after construction; construct through the factory functions.
class FinitePoset {
public:
    const std::vector<std::string>& carrier() const { return carrier_; }
    int size() const { return static_cast<int>(carrier_.size()); }

    bool contains(const std::string& id) const { return index_.count(id) != 0; }
    int index_of(const std::string& id) const;  // -1 if absent
    const std::string& id_of(int i) const { return carrier_[static_cast<size_t>(i)]; }

    bool leq(int i, int j) const { return leq_[static_cast<size_t>(i) * carrier_.size() + static_cast<size_t>(j)] != 0; }
    bool leq(const std::string& x, const std::string& y) const;
    bool lt(int i, int j) const { return i != j && leq(i, j); }

    /// Canonical text form ("elements:" line with sorted carrier, then the
    /// covering pairs as "le:" lines).  Doubles as the identity key.
    const std::string& serial() const { return serial_; }

    bool operator==(const FinitePoset& other) const { return serial_ == other.serial_; }
    bool operator!=(const FinitePoset& other) const { return !(*this == other); }

private:
    FinitePoset(std::vector<std::string> carrier, std::vector<char> leq);

    std::vector<std::string> carrier_;  // first-occurrence order
    std::vector<char> leq_;             // row-major size*size matrix
    std::map<std::string, int> index_;
    std::string serial_;

    friend PosetPtr make_poset(const std::vector<std::string>&,
                               const std::vector<std::pair<std::string, std::string>>&);
    friend PosetPtr make_poset_closed(const std::vector<std::string>&,
                                      const std::vector<std::pair<std::string, std::string>>&);
    friend PosetPtr make_validated(std::vector<std::string>, std::vector<char>);
};

/// Validates the poset axioms on the full relation as given; identifiers in
/// the carrier are deduplicated preserving first occurrence.
/// Throws AxiomViolation or UnknownIdentifier.
PosetPtr make_poset(const std::vector<std::string>& carrier,
                    const std::vector<std::pair<std::string, std::string>>& leq);

/// Same, but takes generating pairs: the reflexive-transitive closure is
/// computed first and only antisymmetry can fail.
PosetPtr make_poset_closed(const std::vector<std::string>& carrier,
                           const std::vector<std::pair<std::string, std::string>>& leq);

/// Low-level factory over a full row-major relation matrix; validates the
/// axioms like make_poset.
PosetPtr make_validated(std::vector<std::string> carrier, std::vector<char> leq);

/// The n-element chain 0 < 1 < ... < n-1 (identifiers are decimal strings).
PosetPtr make_chain(int n);

/// True when any two elements are comparable.
bool is_total(const FinitePoset& x);

/// Suborder on the listed carrier indices, keeping the ambient carrier order.
PosetPtr suborder(const PosetPtr& x, const std::vector<int>& keep);

/// The suborder on all y with not (x <= y).  Throws UnknownIdentifier.
PosetPtr lower_set(const PosetPtr& x, const std::string& id);

/// All labeled partial orders on carrier {"0",...,"n-1"}, sorted by serial.
/// With up_to_iso, one canonical representative per isomorphism class.
/// Guarded by n <= 5 (BoundExceeded).
std::vector<PosetPtr> enumerate_posets(int n, bool up_to_iso = false);

enum class MapKind { quasi, embedding };

/// A total order-reflecting map between finite posets, optionally order
/// preserving as well (an embedding).  Order reflection entails injectivity.
class OrderMap {
public:
    OrderMap(PosetPtr source, PosetPtr target, std::vector<int> graph, bool embedding);

    const PosetPtr& source() const { return source_; }
    const PosetPtr& target() const { return target_; }
    int apply(int i) const { return graph_[static_cast<size_t>(i)]; }
    const std::string& apply(const std::string& id) const;
    const std::vector<int>& graph() const { return graph_; }
    bool is_embedding() const { return embedding_; }

    bool in_range(int target_index) const;
    std::optional<int> preimage(int target_index) const;

    /// "[a=>x b=>y]" with entries sorted by source identifier.
    const std::string& serial() const { return serial_; }

    bool operator==(const OrderMap& other) const;

private:
    PosetPtr source_;
    PosetPtr target_;
    std::vector<int> graph_;
    bool embedding_;
    std::string serial_;
};

/// Validates totality and order reflection (and preservation when an
/// embedding is requested).  Throws Error on violation, UnknownIdentifier
/// for identifiers outside the carriers.
OrderMap make_order_map(const PosetPtr& source, const PosetPtr& target,
                        const std::map<std::string, std::string>& graph, MapKind requested);

OrderMap identity_map(const PosetPtr& x);
OrderMap compose(const OrderMap& g, const OrderMap& f);  // g after f
OrderMap inverse(const OrderMap& f);                     // f must be an isomorphism

/// Builds a map from source-carrier indices to target-carrier indices,
/// validating order reflection and detecting preservation.
OrderMap make_index_map(const PosetPtr& source, const PosetPtr& target, std::vector<int> graph);

/// All total maps X -> Y of the requested kind, sorted by graph serial.
std::vector<OrderMap> enumerate_maps(const PosetPtr& x, const PosetPtr& y, MapKind kind);

/// All linear extensions of X as surjective quasi embeddings |X|-chain -> X,
/// sorted by graph serial.  Nonempty for every finite poset.
std::vector<OrderMap> linear_extensions(const PosetPtr& x);

/// The canonical copy |a| on carrier {"0",...,"k-1"} plus the isomorphism
/// en : |a| -> a.  Indexing sorts the carrier of a lexicographically.
std::pair<PosetPtr, OrderMap> canonical_copy(const PosetPtr& a);

/// Text format: "elements: a b c" then zero or more "le: x y" lines; the
/// reflexive-transitive closure is computed on load.  '#' starts a comment.
PosetPtr parse_poset(const std::string& text);
std::string print_poset(const FinitePoset& x);

}  // namespace wpo
