#include "wpo/kruskal.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "wpo/checkers.hpp"

namespace wpo {

AuditKind audit_from_string(const std::string& name) {
    if (name == "partial-order") return AuditKind::partial_order;
    if (name == "fixed-point-eq") return AuditKind::fixed_point_eq;
    if (name == "height-lemma") return AuditKind::height_lemma;
    if (name == "bad-sequence-probe") return AuditKind::bad_sequence_probe;
    throw Error("unknown audit: " + name);
}

std::string audit_name(AuditKind k) {
    switch (k) {
        case AuditKind::partial_order: return "partial-order";
        case AuditKind::fixed_point_eq: return "fixed-point-eq";
        case AuditKind::height_lemma: return "height-lemma";
        case AuditKind::bad_sequence_probe: return "bad-sequence-probe";
    }
    return "?";
}

KruskalSystem::KruskalSystem(DilatorSpec w) : w_(std::move(w)) {}

// Canonical poset on {0..k-1} ordered like the given terms (assumed sorted
// and distinct).  Signals SubordersNotPartial when the term order fails to
// restrict to a partial order on the set.
PosetPtr KruskalSystem::term_poset(const std::vector<TermPtr>& terms, bool use_memo) {
    const int k = static_cast<int>(terms.size());
    std::vector<std::string> ids;
    std::vector<char> mat(static_cast<size_t>(k) * static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        ids.push_back(std::to_string(i));
        for (int j = 0; j < k; ++j)
            mat[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(j)] =
                leq_impl(*terms[static_cast<size_t>(i)], *terms[static_cast<size_t>(j)], use_memo) ? 1 : 0;
    }
    try {
        return make_validated(std::move(ids), std::move(mat));
    } catch (const AxiomViolation& e) {
        throw SubordersNotPartial(std::string("term order is not a partial order here: ") + e.what());
    }
}

TermPtr KruskalSystem::make_term(const std::vector<TermPtr>& subterms, const DilatorElement& kernel) {
    std::vector<TermPtr> subs = subterms;
    std::sort(subs.begin(), subs.end(),
              [](const TermPtr& a, const TermPtr& b) { return a->str() < b->str(); });
    for (size_t i = 1; i < subs.size(); ++i)
        if (subs[i]->str() == subs[i - 1]->str()) throw DuplicateSubterm("duplicate subterm: " + subs[i]->str());

    PosetPtr canon = term_poset(subs, /*use_memo=*/true);
    if (kernel.dilator() != w_)
        throw AmbientMismatch("kernel built for dilator " + kernel.dilator().name());
    if (kernel.ambient()->serial() != canon->serial())
        throw AmbientMismatch("kernel ambient is not the canonical subterm poset");
    if (!trace_has(kernel))
        throw NotInTrace("kernel support must cover every subterm");

    long length = 1;
    int height = 0;
    for (const auto& s : subs) {
        length += 2 * s->length();
        height = std::max(height, s->height() + 1);
    }
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < subs.size(); ++i) out << (i ? " , " : " ") << subs[i]->str();
    out << " ; " << detail::payload_str(kernel) << " )";
    return TermPtr(new KruskalTerm(std::move(subs), kernel, length, height, out.str()));
}

bool KruskalSystem::leq(const TermPtr& s, const TermPtr& t) { return leq_impl(*s, *t, true); }
bool KruskalSystem::leq_unmemoized(const TermPtr& s, const TermPtr& t) { return leq_impl(*s, *t, false); }

bool KruskalSystem::leq_impl(const KruskalTerm& s, const KruskalTerm& t, bool use_memo) {
    std::pair<std::string, std::string> key;
    if (use_memo) {
        key = {s.str(), t.str()};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }

    bool result = false;
    // Clause 1: s is below some subterm of t.
    for (const auto& r : t.subterms())
        if (leq_impl(s, *r, use_memo)) { result = true; break; }

    // Clause 2: the coded comparison over the union of the subterm sets,
    // provided the term order restricts to a partial order there.
    if (!result) {
        std::vector<TermPtr> uni = s.subterms();
        for (const auto& r : t.subterms()) uni.push_back(r);
        std::sort(uni.begin(), uni.end(),
                  [](const TermPtr& a, const TermPtr& b) { return a->str() < b->str(); });
        uni.erase(std::unique(uni.begin(), uni.end(),
                              [](const TermPtr& a, const TermPtr& b) { return a->str() == b->str(); }),
                  uni.end());
        bool ordered = true;
        PosetPtr u;
        try {
            u = term_poset(uni, use_memo);
        } catch (const SubordersNotPartial&) {
            ordered = false;
        }
        if (ordered) {
            auto position = [&](const TermPtr& x) {
                for (size_t i = 0; i < uni.size(); ++i)
                    if (uni[i]->str() == x->str()) return static_cast<int>(i);
                throw Error("internal: term missing from its own union");
            };
            auto lift = [&](const KruskalTerm& term) {
                std::vector<int> graph;
                for (const auto& sub : term.subterms()) graph.push_back(position(sub));
                return dil_rename(make_index_map(term.kernel().ambient(), u, graph), term.kernel());
            };
            result = dil_leq(lift(s), lift(t));
        }
    }

    if (use_memo) memo_[key] = result;
    return result;
}

std::vector<TermPtr> KruskalSystem::enumerate(int length_bound) {
    if (length_bound < 0 || length_bound > 9)
        throw BoundExceeded("enumerate: term length bound must be between 0 and 9");

    std::map<std::string, TermPtr> found;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<TermPtr> pool;
        pool.reserve(found.size());
        for (const auto& [serial, t] : found) pool.push_back(t);

        // All duplicate-free subsets of the pool within the length budget.
        std::vector<TermPtr> subset;
        auto emit = [&]() {
            PosetPtr canon;
            try {
                canon = term_poset(subset, true);
            } catch (const SubordersNotPartial&) {
                return;  // not eligible as a subterm set
            }
            for (const auto& kernel : detail::elements_unguarded(w_, canon, length_bound - 1)) {
                if (!trace_has(kernel)) continue;
                auto term = make_term(subset, kernel);
                if (term->length() > length_bound) continue;
                if (found.emplace(term->str(), term).second) changed = true;
            }
        };
        auto rec = [&](auto&& self, size_t from, long budget) -> void {
            emit();
            for (size_t i = from; i < pool.size(); ++i) {
                long cost = 2 * pool[i]->length();
                if (cost > budget) continue;
                subset.push_back(pool[i]);
                self(self, i + 1, budget - cost);
                subset.pop_back();
            }
        };
        rec(rec, 0, length_bound - 1);
    }

    std::vector<TermPtr> out;
    for (const auto& [serial, t] : found) out.push_back(t);
    std::sort(out.begin(), out.end(), [](const TermPtr& a, const TermPtr& b) {
        if (a->length() != b->length()) return a->length() < b->length();
        return a->str() < b->str();
    });
    return out;
}

TermPtr KruskalSystem::kappa(const TermSetElement& sigma) {
    if (static_cast<int>(sigma.atoms.size()) != sigma.elem.ambient()->size())
        throw AmbientMismatch("kappa: atom list does not match the ambient carrier");
    std::vector<int> supp = dil_supp_indices(sigma.elem);
    std::sort(supp.begin(), supp.end(), [&](int a, int b) {
        return sigma.atoms[static_cast<size_t>(a)]->str() < sigma.atoms[static_cast<size_t>(b)]->str();
    });
    std::vector<TermPtr> subs;
    for (int i : supp) subs.push_back(sigma.atoms[static_cast<size_t>(i)]);
    PosetPtr canon = term_poset(subs, true);
    std::vector<int> idx_map(static_cast<size_t>(sigma.elem.ambient()->size()), -1);
    for (size_t a = 0; a < supp.size(); ++a) idx_map[static_cast<size_t>(supp[a])] = static_cast<int>(a);
    DilatorElement kernel = detail::remap_indices(sigma.elem, idx_map, canon);
    return make_term(subs, kernel);
}

TermSetElement KruskalSystem::kappa_inv(const TermPtr& t) {
    const auto& subs = t->subterms();
    const int k = static_cast<int>(subs.size());
    std::vector<std::string> ids;
    std::vector<char> mat(static_cast<size_t>(k) * static_cast<size_t>(k), 0);
    const PosetPtr& canon = t->kernel().ambient();
    for (int i = 0; i < k; ++i) {
        ids.push_back(subs[static_cast<size_t>(i)]->str());
        for (int j = 0; j < k; ++j)
            mat[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(j)] = canon->leq(i, j) ? 1 : 0;
    }
    PosetPtr named = make_validated(std::move(ids), std::move(mat));
    std::vector<int> ident(static_cast<size_t>(k));
    std::iota(ident.begin(), ident.end(), 0);
    return TermSetElement{subs, detail::remap_indices(t->kernel(), ident, named)};
}

// ---------------------------------------------------------------------------
// Audits

namespace {

// Longest antichain in a finite poset via a maximum bipartite matching on the
// strict order (minimum chain cover).
struct AntichainResult {
    int size;
    std::vector<int> members;
};

AntichainResult longest_antichain(int n, const std::vector<char>& strict) {
    auto edge = [&](int i, int j) { return strict[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] != 0; };
    std::vector<int> match_right(static_cast<size_t>(n), -1);  // right vertex -> left
    std::vector<int> match_left(static_cast<size_t>(n), -1);

    std::vector<char> visited;
    auto augment = [&](auto&& self, int u) -> bool {
        for (int v = 0; v < n; ++v) {
            if (!edge(u, v) || visited[static_cast<size_t>(v)]) continue;
            visited[static_cast<size_t>(v)] = 1;
            if (match_right[static_cast<size_t>(v)] < 0 || self(self, match_right[static_cast<size_t>(v)])) {
                match_right[static_cast<size_t>(v)] = u;
                match_left[static_cast<size_t>(u)] = v;
                return true;
            }
        }
        return false;
    };
    int matching = 0;
    for (int u = 0; u < n; ++u) {
        visited.assign(static_cast<size_t>(n), 0);
        if (augment(augment, u)) ++matching;
    }

    // Koenig: alternating reachability from unmatched left vertices.
    std::vector<char> zl(static_cast<size_t>(n), 0), zr(static_cast<size_t>(n), 0);
    std::vector<int> queue;
    for (int u = 0; u < n; ++u)
        if (match_left[static_cast<size_t>(u)] < 0) { zl[static_cast<size_t>(u)] = 1; queue.push_back(u); }
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        for (int v = 0; v < n; ++v) {
            if (!edge(u, v) || zr[static_cast<size_t>(v)]) continue;
            zr[static_cast<size_t>(v)] = 1;
            int w = match_right[static_cast<size_t>(v)];
            if (w >= 0 && !zl[static_cast<size_t>(w)]) { zl[static_cast<size_t>(w)] = 1; queue.push_back(w); }
        }
    }
    AntichainResult res;
    res.size = n - matching;
    for (int i = 0; i < n; ++i)
        if (zl[static_cast<size_t>(i)] && !zr[static_cast<size_t>(i)]) res.members.push_back(i);
    return res;
}

}  // namespace

Verdict KruskalSystem::audit(AuditKind kind, int length_bound) {
    Verdict v;
    v.property = "tw-" + audit_name(kind);
    v.subject = w_.name();
    v.bounds = Bounds{0, 0};
    v.pass = true;
    v.details["lengthBound"] = std::to_string(length_bound);

    auto terms = enumerate(length_bound);
    const int n = static_cast<int>(terms.size());
    v.details["terms"] = std::to_string(n);

    std::vector<char> leq_mat(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    auto at = [&](int i, int j) { return leq_mat[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] != 0; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            leq_mat[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                leq(terms[static_cast<size_t>(i)], terms[static_cast<size_t>(j)]) ? 1 : 0;

    // Pairs in the counterexample-minimality order: summed term length, then
    // summed kernel sizes over all nodes, then the serialized forms.
    auto kernel_total = [](const TermPtr& t) {
        auto rec = [](auto&& self, const KruskalTerm& term) -> long {
            long total = term.kernel().size_measure();
            for (const auto& s : term.subterms()) total += self(self, *s);
            return total;
        };
        return rec(rec, *t);
    };
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pairs.emplace_back(i, j);
    std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
        long la = terms[static_cast<size_t>(a.first)]->length() + terms[static_cast<size_t>(a.second)]->length();
        long lb = terms[static_cast<size_t>(b.first)]->length() + terms[static_cast<size_t>(b.second)]->length();
        if (la != lb) return la < lb;
        long ka = kernel_total(terms[static_cast<size_t>(a.first)]) + kernel_total(terms[static_cast<size_t>(a.second)]);
        long kb = kernel_total(terms[static_cast<size_t>(b.first)]) + kernel_total(terms[static_cast<size_t>(b.second)]);
        if (ka != kb) return ka < kb;
        const std::string& sa = terms[static_cast<size_t>(a.first)]->str();
        const std::string& sb = terms[static_cast<size_t>(b.first)]->str();
        if (sa != sb) return sa < sb;
        return terms[static_cast<size_t>(a.second)]->str() < terms[static_cast<size_t>(b.second)]->str();
    });

    auto fail_pair = [&](int i, int j, const std::string& clause) {
        v.pass = false;
        Counterexample c;
        c.poset = "";
        c.elements = {terms[static_cast<size_t>(i)]->str(), terms[static_cast<size_t>(j)]->str()};
        c.clause = clause;
        v.counterexample = std::move(c);
    };

    switch (kind) {
        case AuditKind::partial_order: {
            for (int i = 0; i < n; ++i) {
                ++v.instances_checked;
                if (!at(i, i)) {
                    fail_pair(i, i, "reflexivity");
                    return v;
                }
            }
            for (const auto& [i, j] : pairs) {
                if (i == j) continue;
                ++v.instances_checked;
                if (at(i, j) && at(j, i)) {
                    fail_pair(i, j, "antisymmetry");
                    return v;
                }
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (!at(i, j)) continue;
                    for (int k = 0; k < n; ++k) {
                        ++v.instances_checked;
                        if (at(j, k) && !at(i, k)) {
                            fail_pair(i, k, "transitivity");
                            v.counterexample->elements.push_back(terms[static_cast<size_t>(j)]->str());
                            return v;
                        }
                    }
                }
            break;
        }

        case AuditKind::fixed_point_eq: {
            // kappa(sigma) <= kappa(tau) iff sigma <= tau in W over the span
            // of the subterms, or kappa(sigma) lies below a support point.
            for (const auto& [i, j] : pairs) {
                ++v.instances_checked;
                const TermPtr& s = terms[static_cast<size_t>(i)];
                const TermPtr& t = terms[static_cast<size_t>(j)];
                std::vector<TermPtr> span = s->subterms();
                for (const auto& r : t->subterms()) span.push_back(r);
                std::sort(span.begin(), span.end(),
                          [](const TermPtr& a, const TermPtr& b) { return a->str() < b->str(); });
                span.erase(std::unique(span.begin(), span.end(),
                                       [](const TermPtr& a, const TermPtr& b) { return a->str() == b->str(); }),
                           span.end());
                const int m = static_cast<int>(span.size());
                std::vector<std::string> ids;
                std::vector<char> mat(static_cast<size_t>(m) * static_cast<size_t>(m), 0);
                for (int a = 0; a < m; ++a) {
                    ids.push_back(span[static_cast<size_t>(a)]->str());
                    for (int b2 = 0; b2 < m; ++b2)
                        mat[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(b2)] =
                            leq(span[static_cast<size_t>(a)], span[static_cast<size_t>(b2)]) ? 1 : 0;
                }
                PosetPtr x_fin = make_validated(std::move(ids), std::move(mat));
                auto lift = [&](const TermPtr& term) {
                    auto named = kappa_inv(term);
                    std::vector<int> graph;
                    for (int a = 0; a < named.elem.ambient()->size(); ++a)
                        graph.push_back(x_fin->index_of(named.elem.ambient()->id_of(a)));
                    return dil_rename(make_index_map(named.elem.ambient(), x_fin, graph), named.elem);
                };
                bool rhs = dil_leq(lift(s), lift(t));
                if (!rhs)
                    for (const auto& y : t->subterms())
                        if (leq(s, y)) { rhs = true; break; }
                if (at(i, j) != rhs) {
                    fail_pair(i, j, at(i, j) ? "order-without-witness" : "witness-without-order");
                    return v;
                }
            }
            break;
        }

        case AuditKind::height_lemma: {
            Checker ck;
            bool strongly = ck.check_property(w_, Property::strongly_normal, {3, 3}).pass;
            v.note = strongly
                         ? "hypothesis met: dilator is strongly normal at posets<=3/elems<=3"
                         : "hypothesis not met: dilator fails strong normality at posets<=3/elems<=3";
            for (const auto& [i, j] : pairs) {
                const TermPtr& s = terms[static_cast<size_t>(i)];
                const TermPtr& t = terms[static_cast<size_t>(j)];
                if (s->height() >= t->height()) continue;
                ++v.instances_checked;
                if (!at(i, j)) {
                    fail_pair(i, j, "height-dominance");
                    v.details["heights"] = std::to_string(s->height()) + " " + std::to_string(t->height());
                    return v;
                }
            }
            break;
        }

        case AuditKind::bad_sequence_probe: {
            std::vector<char> strict(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    strict[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                        (i != j && at(i, j)) ? 1 : 0;
            auto res = longest_antichain(n, strict);
            v.instances_checked = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
            for (size_t a = 0; a < res.members.size(); ++a)
                for (size_t b2 = 0; b2 < res.members.size(); ++b2)
                    if (a != b2 && at(res.members[a], res.members[b2]))
                        throw Error("internal: antichain witness is not an antichain");
            if (static_cast<int>(res.members.size()) != res.size)
                throw Error("internal: antichain witness has the wrong size");
            v.details["longestBadSequence"] = std::to_string(res.size);
            std::string witness;
            for (int i : res.members) {
                if (!witness.empty()) witness += "  ";
                witness += terms[static_cast<size_t>(i)]->str();
            }
            v.details["witness"] = witness;
            v.note = "search probe; no pass/fail claim";
            break;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct TermCursor {
    const std::string& text;
    size_t pos = 0;
    void skip_ws() {
        while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
};

}  // namespace

TermPtr KruskalSystem::parse(const std::string& text) {
    TermCursor c{text};
    auto parse_term = [&](auto&& self) -> TermPtr {
        if (!c.eat('(')) throw SyntaxError("expected '(' in term");
        std::vector<TermPtr> subs;
        if (c.peek() == '(') {
            subs.push_back(self(self));
            while (c.eat(',')) subs.push_back(self(self));
        }
        if (!c.eat(';')) throw SyntaxError("expected ';' in term");
        // The payload runs to the matching ')'; only id(...) nests parens.
        c.skip_ws();
        size_t start = c.pos;
        int depth = 0;
        while (c.pos < c.text.size()) {
            char ch = c.text[c.pos];
            if (ch == '(') ++depth;
            if (ch == ')') {
                if (depth == 0) break;
                --depth;
            }
            ++c.pos;
        }
        if (c.pos >= c.text.size()) throw SyntaxError("unterminated term");
        std::string payload = c.text.substr(start, c.pos - start);
        ++c.pos;  // consume ')'

        std::sort(subs.begin(), subs.end(),
                  [](const TermPtr& a, const TermPtr& b) { return a->str() < b->str(); });
        for (size_t i = 1; i < subs.size(); ++i)
            if (subs[i]->str() == subs[i - 1]->str())
                throw DuplicateSubterm("duplicate subterm: " + subs[i]->str());
        PosetPtr canon = term_poset(subs, true);
        DilatorElement kernel = [&] {
            try {
                return detail::parse_payload(w_, canon, payload);
            } catch (const UnknownIdentifier& e) {
                throw SyntaxError("payload index out of range: " + e.identifier);
            }
        }();
        return make_term(subs, kernel);
    };
    TermPtr t = parse_term(parse_term);
    c.skip_ws();
    if (c.pos != text.size()) throw SyntaxError("trailing input after term");
    return t;
}

}  // namespace wpo
