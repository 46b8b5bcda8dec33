#include "wpo/checkers.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wpo {

Property property_from_string(const std::string& name) {
    if (name == "axioms") return Property::axioms;
    if (name == "normal") return Property::normal;
    if (name == "aczel-normal") return Property::aczel_normal;
    if (name == "strongly-normal") return Property::strongly_normal;
    if (name == "strongly-normal-linear") return Property::strongly_normal_linear;
    if (name == "flat") return Property::flat;
    if (name == "graph-like") return Property::graph_like;
    if (name == "remark-condition") return Property::remark_condition;
    throw Error("unknown property: " + name);
}

std::string property_name(Property p) {
    switch (p) {
        case Property::axioms: return "axioms";
        case Property::normal: return "normal";
        case Property::aczel_normal: return "aczel-normal";
        case Property::strongly_normal: return "strongly-normal";
        case Property::strongly_normal_linear: return "strongly-normal-linear";
        case Property::flat: return "flat";
        case Property::graph_like: return "graph-like";
        case Property::remark_condition: return "remark-condition";
    }
    return "?";
}

DilatorSpec star_completion(const DilatorSpec& w) { return DilatorSpec::star(w); }

// ---------------------------------------------------------------------------
// Caches

const std::vector<PosetPtr>& Checker::posets_up_to(int n, bool linear_only) {
    std::string key = std::to_string(n) + (linear_only ? "L" : "P");
    auto it = poset_cache_.find(key);
    if (it != poset_cache_.end()) return it->second;
    std::vector<PosetPtr> out;
    for (int k = 0; k <= n; ++k)
        for (const auto& x : enumerate_posets(k))
            if (!linear_only || is_total(*x)) out.push_back(x);
    return poset_cache_.emplace(key, std::move(out)).first->second;
}

const Checker::Table& Checker::table(const DilatorSpec& d, const PosetPtr& x, int bound) {
    std::string key = d.name() + "|" + std::to_string(bound) + "|" + x->serial();
    auto it = table_cache_.find(key);
    if (it != table_cache_.end()) return it->second;
    Table t;
    t.elems = detail::elements_unguarded(d, x, bound);
    const int n = static_cast<int>(t.elems.size());
    for (int i = 0; i < n; ++i) t.index[t.elems[static_cast<size_t>(i)].str()] = i;
    t.leq.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.leq[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                dil_leq(t.elems[static_cast<size_t>(i)], t.elems[static_cast<size_t>(j)]) ? 1 : 0;
    return table_cache_.emplace(key, std::move(t)).first->second;
}

const std::vector<OrderMap>& Checker::maps(const PosetPtr& x, const PosetPtr& y, MapKind kind) {
    std::string key = (kind == MapKind::quasi ? "q" : "e") + x->serial() + "\x01" + y->serial();
    auto it = map_cache_.find(key);
    if (it != map_cache_.end()) return it->second;
    return map_cache_.emplace(key, enumerate_maps(x, y, kind)).first->second;
}

// ---------------------------------------------------------------------------
// check_property

namespace {

Counterexample make_cx(const PosetPtr& x, std::vector<std::string> elements,
                       std::vector<std::string> points, std::string map, std::string clause) {
    Counterexample c;
    c.poset = x->serial();
    c.elements = std::move(elements);
    c.points = std::move(points);
    c.map = std::move(map);
    c.clause = std::move(clause);
    return c;
}

}  // namespace

Verdict Checker::check_property(const DilatorSpec& w, Property p, Bounds b) {
    Verdict v;
    v.property = property_name(p);
    v.subject = w.name();
    v.bounds = b;
    v.pass = true;

    bool linear_only = (p == Property::strongly_normal_linear);
    const auto& all_posets = posets_up_to(b.max_poset, linear_only);

    auto fail = [&](Counterexample c) {
        v.pass = false;
        v.counterexample = std::move(c);
    };

    switch (p) {
        case Property::axioms: {
            // Functor on embeddings (preserve and reflect), naturality of
            // supports, and the support condition.
            for (const auto& x : all_posets) {
                const Table& tx = table(w, x, b.max_elem);
                for (const auto& y : all_posets) {
                    const Table& ty = table(w, y, b.max_elem);
                    for (const auto& f : maps(x, y, MapKind::embedding)) {
                        std::vector<int> renamed(tx.elems.size());
                        bool bad = false;
                        for (size_t i = 0; i < tx.elems.size() && !bad; ++i) {
                            auto fs = dil_rename(f, tx.elems[i]);
                            auto it = ty.index.find(fs.str());
                            if (it == ty.index.end())
                                throw Error("internal: renamed element escaped its size bound");
                            renamed[i] = it->second;
                            ++v.instances_checked;
                            std::set<std::string> expect;
                            for (const auto& id : dil_supp(tx.elems[i])) expect.insert(f.apply(id));
                            auto got = dil_supp(fs);
                            if (std::set<std::string>(got.begin(), got.end()) != expect) {
                                fail(make_cx(x, {tx.elems[i].str()}, {}, f.serial(), "supp-naturality"));
                                bad = true;
                            }
                        }
                        if (bad) return v;
                        for (size_t i = 0; i < tx.elems.size(); ++i)
                            for (size_t j = 0; j < tx.elems.size(); ++j) {
                                ++v.instances_checked;
                                bool src = tx.leq_at(static_cast<int>(i), static_cast<int>(j));
                                bool dst = ty.leq_at(renamed[i], renamed[j]);
                                if (src && !dst) {
                                    fail(make_cx(x, {tx.elems[i].str(), tx.elems[j].str()}, {},
                                                 f.serial(), "order-preservation"));
                                    return v;
                                }
                                if (dst && !src) {
                                    fail(make_cx(x, {tx.elems[i].str(), tx.elems[j].str()}, {},
                                                 f.serial(), "order-reflection"));
                                    return v;
                                }
                            }
                        for (const auto& t : ty.elems) {
                            bool inside = true;
                            for (int i : dil_supp_indices(t))
                                if (!f.in_range(i)) { inside = false; break; }
                            if (!inside) continue;
                            ++v.instances_checked;
                            auto pre = dil_preimage(f, t);
                            if (!pre || dil_rename(f, *pre) != t) {
                                fail(make_cx(y, {t.str()}, {}, f.serial(), "support-condition"));
                                return v;
                            }
                        }
                    }
                }
            }
            break;
        }

        case Property::normal: {
            for (const auto& x : all_posets) {
                const Table& tx = table(w, x, b.max_elem);
                for (size_t i = 0; i < tx.elems.size(); ++i)
                    for (size_t j = 0; j < tx.elems.size(); ++j) {
                        ++v.instances_checked;
                        if (!tx.leq_at(static_cast<int>(i), static_cast<int>(j))) continue;
                        auto supp_s = dil_supp_indices(tx.elems[i]);
                        auto supp_t = dil_supp_indices(tx.elems[j]);
                        for (int xs : supp_s) {
                            bool majorized = false;
                            for (int xt : supp_t)
                                if (x->leq(xs, xt)) { majorized = true; break; }
                            if (!majorized) {
                                fail(make_cx(x, {tx.elems[i].str(), tx.elems[j].str()},
                                             {x->id_of(xs)}, "", "majorant-in-support"));
                                return v;
                            }
                        }
                    }
            }
            break;
        }

        case Property::aczel_normal: {
            for (const auto& x : all_posets) {
                const Table& tx = table(w, x, b.max_elem);
                for (const auto& s : tx.elems) {
                    auto supp_s = dil_supp_indices(s);
                    for (int xi = 0; xi < x->size(); ++xi) {
                        ++v.instances_checked;
                        bool majorant = false;
                        for (int y : supp_s)
                            if (x->leq(xi, y)) { majorant = true; break; }
                        bool unit_below = dil_leq(dil_mu(w, x, x->id_of(xi)), s);
                        if (majorant && !unit_below) {
                            fail(make_cx(x, {s.str()}, {x->id_of(xi)}, "", "majorant-implies-unit-below"));
                            return v;
                        }
                        if (unit_below && !majorant) {
                            fail(make_cx(x, {s.str()}, {x->id_of(xi)}, "", "unit-below-implies-majorant"));
                            return v;
                        }
                    }
                }
            }
            break;
        }

        case Property::strongly_normal:
        case Property::strongly_normal_linear: {
            for (const auto& x : all_posets) {
                const Table& tx = table(w, x, b.max_elem);
                for (const auto& s : tx.elems) {
                    auto supp_s = dil_supp_indices(s);
                    for (int yi = 0; yi < x->size(); ++yi) {
                        ++v.instances_checked;
                        bool premise = true;
                        for (int xi : supp_s)
                            if (!x->lt(xi, yi)) { premise = false; break; }
                        if (!premise) continue;
                        auto mu = dil_mu(w, x, x->id_of(yi));
                        if (!dil_leq(s, mu) || dil_leq(mu, s)) {
                            fail(make_cx(x, {s.str()}, {x->id_of(yi)}, "", "strict-below-unit"));
                            return v;
                        }
                    }
                }
            }
            break;
        }

        case Property::flat: {
            for (const auto& x : all_posets) {
                for (const auto& y : all_posets) {
                    const Table& ty = table(w, y, b.max_elem);
                    for (const auto& f : maps(x, y, MapKind::quasi)) {
                        for (const auto& t : ty.elems) {
                            bool inside = true;
                            for (int i : dil_supp_indices(t))
                                if (!f.in_range(i)) { inside = false; break; }
                            if (!inside) continue;
                            ++v.instances_checked;
                            auto pre = dil_preimage(f, t);
                            if (!pre || dil_rename(f, *pre) != t) {
                                fail(make_cx(y, {t.str()}, {}, f.serial(), "support-condition-quasi"));
                                return v;
                            }
                        }
                    }
                }
            }
            break;
        }

        case Property::graph_like: {
            for (const auto& x : all_posets) {
                const Table& tx = table(w, x, b.max_elem);
                for (const auto& y : all_posets) {
                    const Table& ty = table(w, y, b.max_elem);
                    for (const auto& f : maps(x, y, MapKind::quasi)) {
                        for (size_t i = 0; i < tx.elems.size(); ++i) {
                            auto supp_s = dil_supp_indices(tx.elems[i]);
                            for (size_t j = 0; j < tx.elems.size(); ++j) {
                                ++v.instances_checked;
                                if (!tx.leq_at(static_cast<int>(i), static_cast<int>(j))) continue;
                                auto supp_t = dil_supp_indices(tx.elems[j]);
                                bool compatible = true;
                                for (int xs : supp_s) {
                                    for (int xt : supp_t)
                                        if (x->leq(xs, xt) && !y->leq(f.apply(xs), f.apply(xt))) {
                                            compatible = false;
                                            break;
                                        }
                                    if (!compatible) break;
                                }
                                if (!compatible) continue;
                                auto fs = dil_rename(f, tx.elems[i]);
                                auto ft = dil_rename(f, tx.elems[j]);
                                if (!ty.leq_at(ty.index.at(fs.str()), ty.index.at(ft.str()))) {
                                    fail(make_cx(x, {tx.elems[i].str(), tx.elems[j].str()}, {},
                                                 f.serial(), "compatible-map-preservation"));
                                    return v;
                                }
                            }
                        }
                    }
                }
            }
            break;
        }

        case Property::remark_condition: {
            for (const auto& x : all_posets) {
                const Table& tx = table(w, x, b.max_elem);
                for (const auto& y : all_posets) {
                    for (const auto& f : maps(x, y, MapKind::quasi)) {
                        for (const auto& s : tx.elems) {
                            auto supp_s = dil_supp_indices(s);
                            for (int yi = 0; yi < x->size(); ++yi) {
                                ++v.instances_checked;
                                bool compatible = true;
                                for (int xs : supp_s)
                                    if (x->leq(xs, yi) && !y->leq(f.apply(xs), f.apply(yi))) {
                                        compatible = false;
                                        break;
                                    }
                                if (!compatible) continue;
                                auto mu = dil_mu(w, x, x->id_of(yi));
                                if (!(dil_leq(s, mu) && !dil_leq(mu, s))) continue;
                                auto fs = dil_rename(f, s);
                                auto fmu = dil_mu(w, y, y->id_of(f.apply(yi)));
                                if (!(dil_leq(fs, fmu) && !dil_leq(fmu, fs))) {
                                    fail(make_cx(x, {s.str()}, {x->id_of(yi)}, f.serial(),
                                                 "unit-dominance-preservation"));
                                    return v;
                                }
                            }
                        }
                    }
                }
            }
            break;
        }
    }

    // Record the measured outcome on the spec's property cache.
    switch (p) {
        case Property::normal: w.flags().normal = v.pass; break;
        case Property::aczel_normal: w.flags().aczel_normal = v.pass; break;
        case Property::strongly_normal: w.flags().strongly_normal = v.pass; break;
        case Property::flat: w.flags().flat = v.pass; break;
        case Property::graph_like: w.flags().graph_like = v.pass; break;
        default: break;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Natural transformations on linear orders

Verdict Checker::check_quasi_embedding(const std::string& nu, const DilatorSpec& d,
                                       const DilatorSpec& w, Bounds b) {
    enum class Which { mset_to_seq, identity_carrier } which;
    if (nu == "msetToSeq") {
        if (d.base().kind() != DilatorSpec::Kind::multiset ||
            w.base().kind() != DilatorSpec::Kind::seq)
            throw UnknownTransformation("msetToSeq expects D = multiset and W based on seq");
        which = Which::mset_to_seq;
    } else if (nu == "identity-carrier") {
        if (d != star_completion(w))
            throw UnknownTransformation("identity-carrier expects D = star(W)");
        which = Which::identity_carrier;
    } else {
        throw UnknownTransformation("unknown transformation: " + nu);
    }

    // Component at a linear order X; retags into W so comparisons happen in
    // the target order.
    auto component = [&](const PosetPtr& x, const DilatorElement& s) {
        if (which == Which::mset_to_seq) {
            auto ext = linear_extensions(x).at(0);  // unique for total X
            auto as_seq = mset_to_seq(ext, s);
            return w.kind() == DilatorSpec::Kind::seq ? as_seq
                                                      : make_element(w, x, as_seq.items());
        }
        if (s.dilator().base().kind() == DilatorSpec::Kind::compose)
            return make_compose_element(w, x, s.shape(), s.atoms());
        return make_element(w, x, s.items());
    };

    Verdict v;
    v.property = "dilator-quasi-embedding";
    v.subject = nu + ": " + d.name() + " => " + w.name();
    v.bounds = b;
    v.pass = true;

    const auto& chains = posets_up_to(b.max_poset, /*linear_only=*/true);
    for (const auto& x : chains) {
        auto elems = detail::elements_unguarded(d, x, b.max_elem);
        for (const auto& s : elems) {
            ++v.instances_checked;
            auto ns = component(x, s);
            auto supp_a = dil_supp(ns);
            auto supp_b = dil_supp(s);
            if (supp_a != supp_b) {
                v.pass = false;
                v.counterexample = make_cx(x, {s.str()}, {}, "", "support-preservation");
                return v;
            }
            for (const auto& t : elems) {
                ++v.instances_checked;
                if (dil_leq(ns, component(x, t)) && !dil_leq(s, t)) {
                    v.pass = false;
                    v.counterexample = make_cx(x, {s.str(), t.str()}, {}, "", "order-reflection");
                    return v;
                }
            }
        }
        for (const auto& y : chains) {
            for (const auto& f : maps(x, y, MapKind::embedding)) {
                for (const auto& s : elems) {
                    ++v.instances_checked;
                    auto lhs = component(y, dil_rename(f, s));
                    auto rhs = dil_rename(f, component(x, s));
                    if (lhs != rhs) {
                        v.pass = false;
                        v.counterexample = make_cx(x, {s.str()}, {}, f.serial(), "naturality");
                        return v;
                    }
                }
            }
        }
    }
    return v;
}

}  // namespace wpo
