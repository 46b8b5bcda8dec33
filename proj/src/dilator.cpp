#include "wpo/dilator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace wpo {

namespace {

constexpr const char* kLAngle = "⟨";  // mathematical left angle bracket
constexpr const char* kRAngle = "⟩";

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " ";
        out += parts[i];
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// DilatorSpec

DilatorSpec DilatorSpec::identity() { return DilatorSpec(std::make_shared<Node>(Node{Kind::identity, nullptr, nullptr, {}})); }
DilatorSpec DilatorSpec::seq() { return DilatorSpec(std::make_shared<Node>(Node{Kind::seq, nullptr, nullptr, {}})); }
DilatorSpec DilatorSpec::multiset() { return DilatorSpec(std::make_shared<Node>(Node{Kind::multiset, nullptr, nullptr, {}})); }

DilatorSpec DilatorSpec::star(const DilatorSpec& inner) {
    return DilatorSpec(std::make_shared<Node>(Node{Kind::star, inner.node_, nullptr, {}}));
}

DilatorSpec DilatorSpec::compose(const DilatorSpec& outer, const DilatorSpec& inner) {
    return DilatorSpec(std::make_shared<Node>(Node{Kind::compose, outer.node_, inner.node_, {}}));
}

DilatorSpec DilatorSpec::inner() const {
    return DilatorSpec(kind() == Kind::star ? node_->a : node_->b);
}

DilatorSpec DilatorSpec::outer() const { return DilatorSpec(node_->a); }

DilatorSpec DilatorSpec::base() const {
    DilatorSpec d(*this);
    while (d.kind() == Kind::star) d = DilatorSpec(d.node_->a);
    return d;
}

std::string DilatorSpec::name() const {
    switch (kind()) {
        case Kind::identity: return "identity";
        case Kind::seq: return "seq";
        case Kind::multiset: return "multiset";
        case Kind::star: return "star(" + DilatorSpec(node_->a).name() + ")";
        case Kind::compose:
            return "compose(" + DilatorSpec(node_->a).name() + "," + DilatorSpec(node_->b).name() + ")";
    }
    return "?";
}

DilatorSpec DilatorSpec::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "identity" || s == "id") return identity();
    if (s == "seq") return seq();
    if (s == "multiset" || s == "mset") return multiset();
    if (s.rfind("star(", 0) == 0 && s.back() == ')')
        return star(parse(s.substr(5, s.size() - 6)));
    if (s.rfind("compose(", 0) == 0 && s.back() == ')') {
        std::string body = s.substr(8, s.size() - 9);
        int depth = 0;
        for (size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '(') ++depth;
            if (body[i] == ')') --depth;
            if (body[i] == ',' && depth == 0)
                return compose(parse(body.substr(0, i)), parse(body.substr(i + 1)));
        }
    }
    throw SyntaxError("unknown dilator: " + text);
}

// ---------------------------------------------------------------------------
// DilatorElement construction

DilatorElement make_element(const DilatorSpec& d, const PosetPtr& ambient, const std::vector<int>& payload) {
    DilatorSpec::Kind base = d.base().kind();
    if (base == DilatorSpec::Kind::compose)
        throw Error("make_element: compose elements need make_compose_element");
    for (int i : payload)
        if (i < 0 || i >= ambient->size())
            throw UnknownIdentifier("#" + std::to_string(i));
    if (base == DilatorSpec::Kind::identity && payload.size() != 1)
        throw Error("identity elements carry exactly one point");
    DilatorElement e(d, ambient);
    e.items_ = payload;
    if (base == DilatorSpec::Kind::multiset) std::sort(e.items_.begin(), e.items_.end());
    return e;
}

DilatorElement make_element_ids(const DilatorSpec& d, const PosetPtr& ambient,
                                const std::vector<std::string>& payload) {
    std::vector<int> idx;
    idx.reserve(payload.size());
    for (const auto& id : payload) {
        int i = ambient->index_of(id);
        if (i < 0) throw UnknownIdentifier(id);
        idx.push_back(i);
    }
    return make_element(d, ambient, idx);
}

namespace detail {
// Rebuilds an element over a new ambient with carrier indices substituted.
DilatorElement remap_indices(const DilatorElement& e, const std::vector<int>& idx_map, const PosetPtr& ambient) {
    DilatorSpec::Kind base = e.dilator().base().kind();
    if (base != DilatorSpec::Kind::compose) {
        std::vector<int> items;
        items.reserve(e.items().size());
        for (int i : e.items()) items.push_back(idx_map[static_cast<size_t>(i)]);
        return make_element(e.dilator(), ambient, items);
    }
    std::vector<DilatorElement> atoms;
    atoms.reserve(e.atoms().size());
    for (const auto& a : e.atoms()) atoms.push_back(remap_indices(a, idx_map, ambient));
    return make_compose_element(e.dilator(), ambient, e.shape(), atoms);
}
}  // namespace detail

DilatorElement make_compose_element(const DilatorSpec& d, const PosetPtr& ambient,
                                    const DilatorElement& shape, const std::vector<DilatorElement>& atoms) {
    if (d.base().kind() != DilatorSpec::Kind::compose)
        throw Error("make_compose_element: dilator is not a composition");
    const DilatorSpec outer = d.base().outer();
    const DilatorSpec inner = d.base().inner();
    if (shape.dilator().base() != outer.base())
        throw AmbientMismatch("compose shape has the wrong outer dilator");
    if (static_cast<int>(atoms.size()) != shape.ambient()->size())
        throw AmbientMismatch("compose shape arity does not match the atom list");
    for (const auto& a : atoms) {
        if (a.dilator().base() != inner.base())
            throw AmbientMismatch("compose atom has the wrong inner dilator");
        if (a.ambient()->serial() != ambient->serial())
            throw AmbientMismatch("compose atom over the wrong ambient poset");
    }

    // Keep only atoms the shape actually uses, merge equal ones, sort by
    // serial, and recompute the atom poset from the inner order.
    std::vector<int> used = dil_supp_indices(shape);
    std::vector<std::pair<std::string, int>> keyed;  // (serial, original index)
    for (int i : used) keyed.emplace_back(atoms[static_cast<size_t>(i)].str(), i);
    std::sort(keyed.begin(), keyed.end());
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());

    std::vector<DilatorElement> kept;
    std::map<std::string, int> new_index;
    for (const auto& [serial, orig] : keyed) {
        new_index[serial] = static_cast<int>(kept.size());
        kept.push_back(atoms[static_cast<size_t>(orig)]);
    }
    const int k = static_cast<int>(kept.size());
    std::vector<std::string> ids;
    std::vector<char> mat(static_cast<size_t>(k) * static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        ids.push_back(std::to_string(i));
        for (int j = 0; j < k; ++j)
            mat[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(j)] =
                dil_leq(kept[static_cast<size_t>(i)], kept[static_cast<size_t>(j)]) ? 1 : 0;
    }
    PosetPtr atom_poset = make_validated(ids, mat);

    std::vector<int> idx_map(atoms.size(), -1);
    for (size_t i = 0; i < atoms.size(); ++i) {
        auto it = new_index.find(atoms[i].str());
        if (it != new_index.end()) idx_map[i] = it->second;
    }
    // Unused atom slots keep -1; the shape never references them.
    DilatorElement new_shape = detail::remap_indices(shape, idx_map, atom_poset);

    DilatorElement e(d, ambient);
    e.atoms_ = std::move(kept);
    e.shape_ = std::make_shared<DilatorElement>(std::move(new_shape));
    e.atom_poset_ = std::move(atom_poset);
    return e;
}

// ---------------------------------------------------------------------------
// Size, support, serialization, equality

namespace {

// Structure size with per-carrier-point weights.
int weighted_size(const DilatorElement& e, const std::vector<int>& w) {
    if (e.dilator().base().kind() != DilatorSpec::Kind::compose) {
        int total = 0;
        for (int i : e.items()) total += w[static_cast<size_t>(i)];
        return total;
    }
    std::vector<int> atom_w;
    atom_w.reserve(e.atoms().size());
    for (const auto& a : e.atoms()) atom_w.push_back(1 + weighted_size(a, w));
    return weighted_size(e.shape(), atom_w);
}

std::string render(const DilatorElement& e, const std::vector<std::string>& names, bool bare);

std::string render_items(const DilatorElement& e, const std::vector<std::string>& names) {
    std::vector<std::string> parts;
    for (int i : e.items()) parts.push_back(names[static_cast<size_t>(i)]);
    return join(parts);
}

std::string render(const DilatorElement& e, const std::vector<std::string>& names, bool bare) {
    switch (e.dilator().base().kind()) {
        case DilatorSpec::Kind::identity:
            return "id(" + names[static_cast<size_t>(e.items()[0])] + ")";
        case DilatorSpec::Kind::seq:
            return (bare ? "" : "seq") + std::string(kLAngle) + render_items(e, names) + kRAngle;
        case DilatorSpec::Kind::multiset:
            return (bare ? "" : "mset") + std::string("[") + render_items(e, names) + "]";
        case DilatorSpec::Kind::compose: {
            std::vector<std::string> atom_names;
            for (const auto& a : e.atoms()) atom_names.push_back(render(a, names, false));
            return render(e.shape(), atom_names, bare);
        }
        default:
            throw Error("render: unexpected dilator kind");
    }
}

}  // namespace

int DilatorElement::size_measure() const {
    std::vector<int> ones(static_cast<size_t>(ambient_->size()), 1);
    return weighted_size(*this, ones);
}

std::string DilatorElement::str() const { return render(*this, ambient_->carrier(), false); }

bool DilatorElement::operator==(const DilatorElement& other) const {
    if (dilator_ != other.dilator_ || ambient_->serial() != other.ambient_->serial()) return false;
    if (items_ != other.items_) return false;
    if (atoms_.size() != other.atoms_.size()) return false;
    for (size_t i = 0; i < atoms_.size(); ++i)
        if (!(atoms_[i] == other.atoms_[i])) return false;
    if ((shape_ == nullptr) != (other.shape_ == nullptr)) return false;
    if (shape_ && !(*shape_ == *other.shape_)) return false;
    return true;
}

std::vector<int> dil_supp_indices(const DilatorElement& s) {
    std::set<int> out;
    if (s.dilator().base().kind() != DilatorSpec::Kind::compose) {
        out.insert(s.items().begin(), s.items().end());
    } else {
        for (const auto& a : s.atoms())
            for (int i : dil_supp_indices(a)) out.insert(i);
    }
    return std::vector<int>(out.begin(), out.end());
}

std::vector<std::string> dil_supp(const DilatorElement& s) {
    std::vector<std::string> out;
    for (int i : dil_supp_indices(s)) out.push_back(s.ambient()->id_of(i));
    std::sort(out.begin(), out.end());
    return out;
}

bool trace_has(const DilatorElement& s) {
    return static_cast<int>(dil_supp_indices(s).size()) == s.ambient()->size();
}

// ---------------------------------------------------------------------------
// Order decision

namespace {

bool same_context(const DilatorElement& s, const DilatorElement& t) {
    return s.dilator() == t.dilator() && s.ambient()->serial() == t.ambient()->serial();
}

// Higman: a strictly increasing index map with pointwise <=.
bool seq_leq(const FinitePoset& x, const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
    if (m == 0) return true;
    if (m > n) return false;
    // can[j]: a[i:] embeds into b[j:], computed for descending i.
    std::vector<char> can(static_cast<size_t>(n) + 1, 1);
    for (int i = m - 1; i >= 0; --i) {
        std::vector<char> next(static_cast<size_t>(n) + 1, 0);
        for (int j = n - 1; j >= 0; --j) {
            bool here = x.leq(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]) &&
                        can[static_cast<size_t>(j) + 1];
            next[static_cast<size_t>(j)] = here || next[static_cast<size_t>(j) + 1];
        }
        can = std::move(next);
    }
    return can[0] != 0;
}

std::map<int, int> count_map(const std::vector<int>& occurrences) {
    std::map<int, int> m;
    for (int i : occurrences) ++m[i];
    return m;
}

// Dershowitz-Manna: every element of s\t has a strict majorant in t\s.
bool mset_leq(const FinitePoset& x, const std::vector<int>& s, const std::vector<int>& t) {
    auto cs = count_map(s), ct = count_map(t);
    std::vector<int> only_t;
    for (const auto& [v, c] : ct) {
        auto it = cs.find(v);
        if (it == cs.end() || it->second < c) only_t.push_back(v);
    }
    for (const auto& [v, c] : cs) {
        auto it = ct.find(v);
        int excess = c - (it == ct.end() ? 0 : it->second);
        if (excess <= 0) continue;
        bool dominated = false;
        for (int y : only_t)
            if (x.lt(v, y)) { dominated = true; break; }
        if (!dominated) return false;
    }
    return true;
}

DilatorElement retag(const DilatorElement& e, const DilatorSpec& d) {
    if (e.dilator().base().kind() != DilatorSpec::Kind::compose)
        return make_element(d, e.ambient(), e.items());
    return make_compose_element(d, e.ambient(), e.shape(), e.atoms());
}

}  // namespace

bool dil_leq(const DilatorElement& s, const DilatorElement& t) {
    if (!same_context(s, t)) throw AmbientMismatch("dil_leq: elements from different contexts");
    const FinitePoset& x = *s.ambient();
    switch (s.dilator().kind()) {
        case DilatorSpec::Kind::identity:
            return x.leq(s.items()[0], t.items()[0]);
        case DilatorSpec::Kind::seq:
            return seq_leq(x, s.items(), t.items());
        case DilatorSpec::Kind::multiset:
            return mset_leq(x, s.items(), t.items());
        case DilatorSpec::Kind::star: {
            const DilatorSpec inner = s.dilator().inner();
            if (dil_leq(retag(s, inner), retag(t, inner))) return true;
            auto supp_s = dil_supp_indices(s);
            for (int y : dil_supp_indices(t)) {
                bool all_below = true;
                for (int v : supp_s)
                    if (!x.lt(v, y)) { all_below = false; break; }
                if (all_below) return true;
            }
            return false;
        }
        case DilatorSpec::Kind::compose: {
            // Compare the outer shapes over the union of the atom sets,
            // ordered by the inner dilator.
            std::vector<DilatorElement> all;
            std::vector<std::string> serials;
            auto add = [&](const DilatorElement& a) {
                std::string key = a.str();
                if (std::find(serials.begin(), serials.end(), key) == serials.end()) {
                    serials.push_back(key);
                    all.push_back(a);
                }
            };
            for (const auto& a : s.atoms()) add(a);
            for (const auto& a : t.atoms()) add(a);
            std::vector<int> order(all.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int i, int j) { return serials[static_cast<size_t>(i)] < serials[static_cast<size_t>(j)]; });
            const int k = static_cast<int>(all.size());
            std::vector<std::string> ids;
            std::vector<char> mat(static_cast<size_t>(k) * static_cast<size_t>(k), 0);
            std::map<std::string, int> pos;
            for (int i = 0; i < k; ++i) {
                ids.push_back(std::to_string(i));
                pos[serials[static_cast<size_t>(order[static_cast<size_t>(i)])]] = i;
            }
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    mat[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(j)] =
                        dil_leq(all[static_cast<size_t>(order[static_cast<size_t>(i)])],
                                all[static_cast<size_t>(order[static_cast<size_t>(j)])])
                            ? 1
                            : 0;
            PosetPtr u = make_validated(ids, mat);
            auto lift = [&](const DilatorElement& e) {
                std::vector<int> idx_map(e.atoms().size());
                for (size_t i = 0; i < e.atoms().size(); ++i) idx_map[i] = pos.at(e.atoms()[i].str());
                return detail::remap_indices(e.shape(), idx_map, u);
            };
            return dil_leq(lift(s), lift(t));
        }
    }
    throw Error("dil_leq: unexpected dilator kind");
}

// ---------------------------------------------------------------------------
// Renaming, units, coding

DilatorElement dil_rename(const OrderMap& f, const DilatorElement& s) {
    if (f.source()->serial() != s.ambient()->serial())
        throw AmbientMismatch("dil_rename: map source is not the ambient of the element");
    return detail::remap_indices(s, f.graph(), f.target());
}

std::optional<DilatorElement> dil_preimage(const OrderMap& f, const DilatorElement& t) {
    if (f.target()->serial() != t.ambient()->serial())
        throw AmbientMismatch("dil_preimage: map target is not the ambient of the element");
    std::vector<int> inv(static_cast<size_t>(f.target()->size()), -1);
    for (int i = 0; i < f.source()->size(); ++i) inv[static_cast<size_t>(f.apply(i))] = i;
    for (int i : dil_supp_indices(t))
        if (inv[static_cast<size_t>(i)] < 0) return std::nullopt;
    return detail::remap_indices(t, inv, f.source());
}

DilatorElement dil_mu(const DilatorSpec& d, const PosetPtr& x, const std::string& id) {
    int i = x->index_of(id);
    if (i < 0) throw UnknownIdentifier(id);
    switch (d.kind()) {
        case DilatorSpec::Kind::identity:
        case DilatorSpec::Kind::seq:
        case DilatorSpec::Kind::multiset:
            return make_element(d, x, {i});
        case DilatorSpec::Kind::star:
            return retag(dil_mu(d.inner(), x, id), d);
        case DilatorSpec::Kind::compose: {
            DilatorElement atom = dil_mu(d.base().inner(), x, id);
            PosetPtr point = make_poset({"0"}, {{"0", "0"}});
            DilatorElement shape = dil_mu(d.base().outer(), point, "0");
            return make_compose_element(d, x, shape, {atom});
        }
    }
    throw NoMu("dilator carries no unit");
}

CodedElement encode(const DilatorElement& s) {
    std::vector<int> supp = dil_supp_indices(s);
    PosetPtr sub = suborder(s.ambient(), supp);
    auto [canon, en] = canonical_copy(sub);
    OrderMap incl = make_index_map(sub, s.ambient(), supp);
    OrderMap embed = compose(incl, en);
    auto kernel = dil_preimage(embed, s);
    if (!kernel) throw Error("internal: support escaped its own suborder");
    return CodedElement{canon, *kernel, embed};
}

DilatorElement decode(const CodedElement& c) { return dil_rename(c.embed, c.kernel); }

bool coded_leq(const CodedElement& s, const CodedElement& t) {
    if (s.embed.target()->serial() != t.embed.target()->serial())
        throw AmbientMismatch("coded_leq: coded elements over different posets");
    const PosetPtr& x = s.embed.target();
    std::set<int> union_set;
    for (int g : s.embed.graph()) union_set.insert(g);
    for (int g : t.embed.graph()) union_set.insert(g);
    std::vector<int> union_idx(union_set.begin(), union_set.end());
    PosetPtr u = suborder(x, union_idx);
    auto [canon_u, en_u] = canonical_copy(u);
    OrderMap incl_u = make_index_map(u, x, union_idx);
    OrderMap embed_u = compose(incl_u, en_u);

    auto into_union = [&](const CodedElement& c) {
        std::vector<int> graph;
        for (int i = 0; i < c.support_poset->size(); ++i) {
            auto j = embed_u.preimage(c.embed.apply(i));
            if (!j) throw Error("internal: union misses a support point");
            graph.push_back(*j);
        }
        return dil_rename(make_index_map(c.support_poset, canon_u, graph), c.kernel);
    };
    return dil_leq(into_union(s), into_union(t));
}

DilatorElement mset_to_seq(const OrderMap& ext, const DilatorElement& s) {
    if (s.dilator().base().kind() != DilatorSpec::Kind::multiset)
        throw AmbientMismatch("mset_to_seq expects a multiset element");
    if (ext.target()->serial() != s.ambient()->serial())
        throw AmbientMismatch("mset_to_seq: extension over the wrong poset");
    auto counts = count_map(s.items());
    std::vector<int> items;
    for (int p = 0; p < ext.source()->size(); ++p) {
        int x = ext.apply(p);
        auto it = counts.find(x);
        if (it == counts.end()) continue;
        for (int c = 0; c < it->second; ++c) items.push_back(x);
    }
    return make_element(DilatorSpec::seq(), s.ambient(), items);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

namespace {

std::vector<DilatorElement> elements_weighted(const DilatorSpec& d, const PosetPtr& x,
                                              const std::vector<int>& w, int budget) {
    std::vector<DilatorElement> out;
    if (budget < 0) return out;
    switch (d.kind()) {
        case DilatorSpec::Kind::identity: {
            for (int i = 0; i < x->size(); ++i)
                if (w[static_cast<size_t>(i)] <= budget) out.push_back(make_element(d, x, {i}));
            break;
        }
        case DilatorSpec::Kind::seq: {
            std::vector<int> cur;
            auto rec = [&](auto&& self, int left) -> void {
                out.push_back(make_element(d, x, cur));
                for (int i = 0; i < x->size(); ++i) {
                    if (w[static_cast<size_t>(i)] > left) continue;
                    cur.push_back(i);
                    self(self, left - w[static_cast<size_t>(i)]);
                    cur.pop_back();
                }
            };
            rec(rec, budget);
            break;
        }
        case DilatorSpec::Kind::multiset: {
            std::vector<int> cur;
            auto rec = [&](auto&& self, int from, int left) -> void {
                out.push_back(make_element(d, x, cur));
                for (int i = from; i < x->size(); ++i) {
                    if (w[static_cast<size_t>(i)] > left) continue;
                    cur.push_back(i);
                    self(self, i, left - w[static_cast<size_t>(i)]);
                    cur.pop_back();
                }
            };
            rec(rec, 0, budget);
            break;
        }
        case DilatorSpec::Kind::star: {
            for (const auto& e : elements_weighted(d.inner(), x, w, budget)) out.push_back(retag(e, d));
            break;
        }
        case DilatorSpec::Kind::compose: {
            const DilatorSpec outer = d.outer();
            const DilatorSpec inner = d.inner();
            auto atoms = elements_weighted(inner, x, w, budget - 1);
            std::sort(atoms.begin(), atoms.end(),
                      [](const DilatorElement& a, const DilatorElement& b) { return a.str() < b.str(); });
            atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
            const int k = static_cast<int>(atoms.size());
            std::vector<std::string> ids;
            std::vector<char> mat(static_cast<size_t>(k) * static_cast<size_t>(k), 0);
            std::vector<int> atom_w;
            for (int i = 0; i < k; ++i) {
                ids.push_back(std::to_string(i));
                atom_w.push_back(1 + weighted_size(atoms[static_cast<size_t>(i)], w));
                for (int j = 0; j < k; ++j)
                    mat[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(j)] =
                        dil_leq(atoms[static_cast<size_t>(i)], atoms[static_cast<size_t>(j)]) ? 1 : 0;
            }
            PosetPtr atom_poset = make_validated(ids, mat);
            std::set<std::string> seen;
            for (const auto& shape : elements_weighted(outer, atom_poset, atom_w, budget)) {
                auto e = make_compose_element(d, x, shape, atoms);
                if (seen.insert(e.str()).second) out.push_back(e);
            }
            break;
        }
    }
    return out;
}

}  // namespace

std::vector<DilatorElement> elements_unguarded(const DilatorSpec& d, const PosetPtr& x, int size_bound) {
    std::vector<int> ones(static_cast<size_t>(x->size()), 1);
    auto out = elements_weighted(d, x, ones, size_bound);
    std::stable_sort(out.begin(), out.end(), [](const DilatorElement& a, const DilatorElement& b) {
        int sa = a.size_measure(), sb = b.size_measure();
        if (sa != sb) return sa < sb;
        return a.str() < b.str();
    });
    return out;
}

}  // namespace detail

std::vector<DilatorElement> dil_elements(const DilatorSpec& d, const PosetPtr& x, int size_bound) {
    if (size_bound < 0 || size_bound > 6)
        throw BoundExceeded("dil_elements: size bound must be between 0 and 6");
    return detail::elements_unguarded(d, x, size_bound);
}

// ---------------------------------------------------------------------------
// Element text syntax

namespace detail {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(const std::string& tok) {
        if (text.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    bool peek(const std::string& tok) const { return text.compare(pos, tok.size(), tok) == 0; }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
};

bool ident_char(char c) {
    return isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

std::string read_ident(Cursor& c) {
    c.skip_ws();
    size_t start = c.pos;
    while (c.pos < c.text.size() && ident_char(c.text[c.pos])) ++c.pos;
    if (c.pos == start) throw SyntaxError("expected an identifier at '" + c.text.substr(c.pos, 8) + "'");
    return c.text.substr(start, c.pos - start);
}

DilatorElement parse_at(const DilatorSpec& d, const PosetPtr& ambient, Cursor& c);

std::vector<std::string> read_items(Cursor& c, const std::string& open1, const std::string& open2,
                                    const std::string& close1, const std::string& close2) {
    c.skip_ws();
    if (!c.eat(open1) && !c.eat(open2)) throw SyntaxError("expected '" + open1 + "'");
    std::vector<std::string> items;
    while (true) {
        c.skip_ws();
        if (c.eat(close1) || c.eat(close2)) break;
        if (c.pos >= c.text.size()) throw SyntaxError("unterminated element literal");
        items.push_back(read_ident(c));
    }
    return items;
}

DilatorElement parse_compose_at(const DilatorSpec& d, const PosetPtr& ambient, Cursor& c) {
    const DilatorSpec outer = d.base().outer();
    const DilatorSpec inner = d.base().inner();
    DilatorSpec::Kind ok = outer.base().kind();
    std::vector<DilatorElement> atoms;
    auto read_atom_list = [&](const std::string& open1, const std::string& open2,
                              const std::string& close1, const std::string& close2) {
        c.skip_ws();
        if (!c.eat(open1) && !c.eat(open2)) throw SyntaxError("expected '" + open1 + "'");
        while (true) {
            c.skip_ws();
            if (c.eat(close1) || c.eat(close2)) break;
            if (c.pos >= c.text.size()) throw SyntaxError("unterminated element literal");
            atoms.push_back(parse_at(inner, ambient, c));
        }
    };
    if (ok == DilatorSpec::Kind::seq) {
        c.skip_ws();
        c.eat("seq");
        read_atom_list(kLAngle, "<", kRAngle, ">");
    } else if (ok == DilatorSpec::Kind::multiset) {
        c.skip_ws();
        c.eat("mset");
        read_atom_list("[", "[", "]", "]");
    } else if (ok == DilatorSpec::Kind::identity) {
        c.skip_ws();
        if (!c.eat("id(")) throw SyntaxError("expected 'id('");
        atoms.push_back(parse_at(inner, ambient, c));
        c.skip_ws();
        if (!c.eat(")")) throw SyntaxError("expected ')'");
    } else {
        throw SyntaxError("nested compose element literals are not supported");
    }

    // Repeated occurrences in the literal mean multiplicity; collapse them to
    // distinct atoms and let the shape reference them by index.
    std::vector<DilatorElement> distinct;
    std::vector<int> occ_index;
    for (const auto& a : atoms) {
        int found = -1;
        for (size_t i = 0; i < distinct.size(); ++i)
            if (distinct[i] == a) { found = static_cast<int>(i); break; }
        if (found < 0) {
            found = static_cast<int>(distinct.size());
            distinct.push_back(a);
        }
        occ_index.push_back(found);
    }
    const int k = static_cast<int>(distinct.size());
    std::vector<std::string> ids;
    std::vector<char> mat(static_cast<size_t>(k) * static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        ids.push_back(std::to_string(i));
        for (int j = 0; j < k; ++j)
            mat[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(j)] =
                dil_leq(distinct[static_cast<size_t>(i)], distinct[static_cast<size_t>(j)]) ? 1 : 0;
    }
    PosetPtr atom_poset = make_validated(ids, mat);
    DilatorElement shape = make_element(outer, atom_poset, occ_index);
    return make_compose_element(d, ambient, shape, distinct);
}

DilatorElement parse_at(const DilatorSpec& d, const PosetPtr& ambient, Cursor& c) {
    DilatorSpec::Kind base = d.base().kind();
    c.skip_ws();
    switch (base) {
        case DilatorSpec::Kind::identity: {
            if (c.eat("id(")) {
                std::string id = read_ident(c);
                c.skip_ws();
                if (!c.eat(")")) throw SyntaxError("expected ')'");
                return make_element_ids(d, ambient, {id});
            }
            return make_element_ids(d, ambient, {read_ident(c)});
        }
        case DilatorSpec::Kind::seq: {
            c.eat("seq");
            return make_element_ids(d, ambient, read_items(c, kLAngle, "<", kRAngle, ">"));
        }
        case DilatorSpec::Kind::multiset: {
            c.eat("mset");
            return make_element_ids(d, ambient, read_items(c, "[", "[", "]", "]"));
        }
        case DilatorSpec::Kind::compose:
            return parse_compose_at(d, ambient, c);
        default:
            throw SyntaxError("cannot parse element for dilator " + d.name());
    }
}

}  // namespace

DilatorElement parse_payload(const DilatorSpec& d, const PosetPtr& ambient, const std::string& text) {
    Cursor c{text};
    DilatorElement e = parse_at(d, ambient, c);
    if (!c.done()) throw SyntaxError("trailing input after element: '" + text.substr(c.pos) + "'");
    return e;
}

std::string payload_str(const DilatorElement& s) {
    return render(s, s.ambient()->carrier(), true);
}

}  // namespace detail

DilatorElement parse_element(const DilatorSpec& d, const PosetPtr& ambient, const std::string& text) {
    return detail::parse_payload(d, ambient, text);
}

}  // namespace wpo
