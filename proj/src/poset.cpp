#include "wpo/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace wpo {

namespace {

std::string pair_str(const std::string& x, const std::string& y) {
    return "(" + x + "," + y + ")";
}

}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> carrier, std::vector<char> leq)
    : carrier_(std::move(carrier)), leq_(std::move(leq)) {
    for (int i = 0; i < size(); ++i) index_[carrier_[static_cast<size_t>(i)]] = i;

    // Serial: sorted carrier, then the covering pairs of the strict order.
    std::vector<int> order(carrier_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return carrier_[static_cast<size_t>(a)] < carrier_[static_cast<size_t>(b)]; });
    std::ostringstream out;
    out << "elements:";
    for (int i : order) out << " " << carrier_[static_cast<size_t>(i)];
    out << "\n";
    for (int i : order) {
        for (int j : order) {
            if (!lt(i, j)) continue;
            bool covered = true;
            for (int k = 0; k < size() && covered; ++k)
                if (lt(i, k) && lt(k, j)) covered = false;
            if (covered) out << "le: " << id_of(i) << " " << id_of(j) << "\n";
        }
    }
    serial_ = out.str();
}

int FinitePoset::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

bool FinitePoset::leq(const std::string& x, const std::string& y) const {
    int i = index_of(x), j = index_of(y);
    if (i < 0) throw UnknownIdentifier(x);
    if (j < 0) throw UnknownIdentifier(y);
    return leq(i, j);
}

PosetPtr make_validated(std::vector<std::string> carrier, std::vector<char> leq) {
    const int n = static_cast<int>(carrier.size());
    auto at = [&](int i, int j) -> char& { return leq[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]; };
    for (int i = 0; i < n; ++i)
        if (!at(i, i)) throw AxiomViolation("reflexivity", carrier[static_cast<size_t>(i)]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && at(i, j) && at(j, i))
                throw AxiomViolation("antisymmetry", pair_str(carrier[static_cast<size_t>(i)], carrier[static_cast<size_t>(j)]));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!at(i, j)) continue;
            for (int k = 0; k < n; ++k)
                if (at(j, k) && !at(i, k))
                    throw AxiomViolation("transitivity", pair_str(carrier[static_cast<size_t>(i)], carrier[static_cast<size_t>(k)]));
        }
    return PosetPtr(new FinitePoset(std::move(carrier), std::move(leq)));
}

static std::vector<std::string> dedup_carrier(const std::vector<std::string>& carrier) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& id : carrier)
        if (seen.insert(id).second) out.push_back(id);
    return out;
}

PosetPtr make_poset(const std::vector<std::string>& carrier,
                    const std::vector<std::pair<std::string, std::string>>& leq) {
    auto ids = dedup_carrier(carrier);
    const int n = static_cast<int>(ids.size());
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) index[ids[static_cast<size_t>(i)]] = i;
    std::vector<char> mat(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (const auto& [x, y] : leq) {
        auto ix = index.find(x);
        if (ix == index.end()) throw UnknownIdentifier(x);
        auto iy = index.find(y);
        if (iy == index.end()) throw UnknownIdentifier(y);
        mat[static_cast<size_t>(ix->second) * static_cast<size_t>(n) + static_cast<size_t>(iy->second)] = 1;
    }
    return make_validated(std::move(ids), std::move(mat));
}

PosetPtr make_poset_closed(const std::vector<std::string>& carrier,
                           const std::vector<std::pair<std::string, std::string>>& leq) {
    auto ids = dedup_carrier(carrier);
    const int n = static_cast<int>(ids.size());
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) index[ids[static_cast<size_t>(i)]] = i;
    std::vector<char> mat(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    auto at = [&](int i, int j) -> char& { return mat[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]; };
    for (int i = 0; i < n; ++i) at(i, i) = 1;
    for (const auto& [x, y] : leq) {
        auto ix = index.find(x);
        if (ix == index.end()) throw UnknownIdentifier(x);
        auto iy = index.find(y);
        if (iy == index.end()) throw UnknownIdentifier(y);
        at(ix->second, iy->second) = 1;
    }
    // Warshall closure.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (at(i, k))
                for (int j = 0; j < n; ++j)
                    if (at(k, j)) at(i, j) = 1;
    return make_validated(std::move(ids), std::move(mat));
}

PosetPtr make_chain(int n) {
    std::vector<std::string> ids;
    std::vector<char> mat(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        ids.push_back(std::to_string(i));
        for (int j = i; j < n; ++j) mat[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] = 1;
    }
    return make_validated(std::move(ids), std::move(mat));
}

bool is_total(const FinitePoset& x) {
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < x.size(); ++j)
            if (!x.leq(i, j) && !x.leq(j, i)) return false;
    return true;
}

PosetPtr suborder(const PosetPtr& x, const std::vector<int>& keep) {
    std::vector<std::string> ids;
    const int k = static_cast<int>(keep.size());
    std::vector<char> mat(static_cast<size_t>(k) * static_cast<size_t>(k), 0);
    for (int a = 0; a < k; ++a) {
        ids.push_back(x->id_of(keep[static_cast<size_t>(a)]));
        for (int b = 0; b < k; ++b)
            mat[static_cast<size_t>(a) * static_cast<size_t>(k) + static_cast<size_t>(b)] =
                x->leq(keep[static_cast<size_t>(a)], keep[static_cast<size_t>(b)]) ? 1 : 0;
    }
    return make_validated(std::move(ids), std::move(mat));
}

PosetPtr lower_set(const PosetPtr& x, const std::string& id) {
    int i = x->index_of(id);
    if (i < 0) throw UnknownIdentifier(id);
    std::vector<int> keep;
    for (int j = 0; j < x->size(); ++j)
        if (!x->leq(i, j)) keep.push_back(j);
    return suborder(x, keep);
}

std::vector<PosetPtr> enumerate_posets(int n, bool up_to_iso) {
    if (n < 0 || n > 5) throw BoundExceeded("enumerate_posets: n must be between 0 and 5");
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    std::vector<PosetPtr> out;
    std::vector<int> state(pairs.size(), 0);  // 0 incomparable, 1 i<j, 2 j<i
    while (true) {
        std::vector<char> mat(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
        auto at = [&](int i, int j) -> char& { return mat[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]; };
        for (int i = 0; i < n; ++i) at(i, i) = 1;
        for (size_t p = 0; p < pairs.size(); ++p) {
            if (state[p] == 1) at(pairs[p].first, pairs[p].second) = 1;
            if (state[p] == 2) at(pairs[p].second, pairs[p].first) = 1;
        }
        bool transitive = true;
        for (int i = 0; i < n && transitive; ++i)
            for (int j = 0; j < n && transitive; ++j) {
                if (!at(i, j)) continue;
                for (int k = 0; k < n; ++k)
                    if (at(j, k) && !at(i, k)) { transitive = false; break; }
            }
        if (transitive) out.push_back(make_validated(ids, mat));

        size_t p = 0;
        while (p < state.size() && state[p] == 2) state[p++] = 0;
        if (p == state.size()) break;
        ++state[p];
    }

    if (up_to_iso) {
        std::vector<int> perm(static_cast<size_t>(n));
        std::map<std::string, PosetPtr> classes;  // canonical serial -> representative
        for (const auto& x : out) {
            std::iota(perm.begin(), perm.end(), 0);
            std::string best;
            do {
                std::vector<char> mat(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        mat[static_cast<size_t>(perm[static_cast<size_t>(i)]) * static_cast<size_t>(n) +
                            static_cast<size_t>(perm[static_cast<size_t>(j)])] = x->leq(i, j) ? 1 : 0;
                auto relabeled = make_validated(ids, mat);
                if (best.empty() || relabeled->serial() < best) best = relabeled->serial();
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (!classes.count(best)) classes[best] = parse_poset(best);
        }
        out.clear();
        for (auto& [serial, rep] : classes) out.push_back(rep);
    }

    std::sort(out.begin(), out.end(),
              [](const PosetPtr& a, const PosetPtr& b) { return a->serial() < b->serial(); });
    return out;
}

OrderMap::OrderMap(PosetPtr source, PosetPtr target, std::vector<int> graph, bool embedding)
    : source_(std::move(source)), target_(std::move(target)), graph_(std::move(graph)), embedding_(embedding) {
    std::vector<int> order(source_->carrier().size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return source_->id_of(a) < source_->id_of(b); });
    std::string s = "[";
    bool first = true;
    for (int i : order) {
        if (!first) s += " ";
        first = false;
        s += source_->id_of(i) + "=>" + target_->id_of(graph_[static_cast<size_t>(i)]);
    }
    s += "]";
    serial_ = s;
}

const std::string& OrderMap::apply(const std::string& id) const {
    int i = source_->index_of(id);
    if (i < 0) throw UnknownIdentifier(id);
    return target_->id_of(apply(i));
}

bool OrderMap::in_range(int target_index) const {
    for (int g : graph_)
        if (g == target_index) return true;
    return false;
}

std::optional<int> OrderMap::preimage(int target_index) const {
    for (size_t i = 0; i < graph_.size(); ++i)
        if (graph_[i] == target_index) return static_cast<int>(i);
    return std::nullopt;
}

bool OrderMap::operator==(const OrderMap& other) const {
    return source_->serial() == other.source_->serial() &&
           target_->serial() == other.target_->serial() && graph_ == other.graph_;
}

namespace {

// Order reflection of a total map given by indices; -1 means unchecked slot.
bool reflects(const FinitePoset& x, const FinitePoset& y, const std::vector<int>& graph) {
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < x.size(); ++j)
            if (y.leq(graph[static_cast<size_t>(i)], graph[static_cast<size_t>(j)]) && !x.leq(i, j)) return false;
    return true;
}

bool preserves(const FinitePoset& x, const FinitePoset& y, const std::vector<int>& graph) {
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < x.size(); ++j)
            if (x.leq(i, j) && !y.leq(graph[static_cast<size_t>(i)], graph[static_cast<size_t>(j)])) return false;
    return true;
}

}  // namespace

OrderMap make_order_map(const PosetPtr& source, const PosetPtr& target,
                        const std::map<std::string, std::string>& graph, MapKind requested) {
    std::vector<int> g(static_cast<size_t>(source->size()), -1);
    for (const auto& [x, y] : graph) {
        int i = source->index_of(x);
        if (i < 0) throw UnknownIdentifier(x);
        int j = target->index_of(y);
        if (j < 0) throw UnknownIdentifier(y);
        g[static_cast<size_t>(i)] = j;
    }
    for (int i = 0; i < source->size(); ++i)
        if (g[static_cast<size_t>(i)] < 0) throw Error("order map not total: missing " + source->id_of(i));
    if (!reflects(*source, *target, g)) throw Error("map does not reflect the order");
    bool emb = preserves(*source, *target, g);
    if (requested == MapKind::embedding && !emb) throw Error("map does not preserve the order");
    return OrderMap(source, target, std::move(g), emb);
}

OrderMap identity_map(const PosetPtr& x) {
    std::vector<int> g(static_cast<size_t>(x->size()));
    std::iota(g.begin(), g.end(), 0);
    return OrderMap(x, x, std::move(g), true);
}

OrderMap make_index_map(const PosetPtr& source, const PosetPtr& target, std::vector<int> graph) {
    if (!reflects(*source, *target, graph))
        throw Error("index map does not reflect the order");
    bool emb = preserves(*source, *target, graph);
    return OrderMap(source, target, std::move(graph), emb);
}

OrderMap compose(const OrderMap& g, const OrderMap& f) {
    if (f.target()->serial() != g.source()->serial())
        throw AmbientMismatch("compose: target of f is not the source of g");
    std::vector<int> graph;
    graph.reserve(f.graph().size());
    for (int i : f.graph()) graph.push_back(g.apply(i));
    bool emb = preserves(*f.source(), *g.target(), graph);
    return OrderMap(f.source(), g.target(), std::move(graph), emb);
}

OrderMap inverse(const OrderMap& f) {
    if (f.source()->size() != f.target()->size())
        throw Error("inverse: map is not a bijection");
    std::vector<int> graph(static_cast<size_t>(f.target()->size()), -1);
    for (int i = 0; i < f.source()->size(); ++i) graph[static_cast<size_t>(f.apply(i))] = i;
    for (int v : graph)
        if (v < 0) throw Error("inverse: map is not a bijection");
    bool emb = preserves(*f.target(), *f.source(), graph);
    return OrderMap(f.target(), f.source(), std::move(graph), emb);
}

std::vector<OrderMap> enumerate_maps(const PosetPtr& x, const PosetPtr& y, MapKind kind) {
    std::vector<OrderMap> out;
    const int n = x->size(), m = y->size();
    if (n == 0) {
        out.emplace_back(x, y, std::vector<int>{}, true);
        return out;
    }
    if (m == 0) return out;
    std::vector<int> g(static_cast<size_t>(n), 0);
    while (true) {
        if (reflects(*x, *y, g)) {
            bool emb = preserves(*x, *y, g);
            if (kind == MapKind::quasi || emb) out.emplace_back(x, y, g, emb);
        }
        int p = 0;
        while (p < n && g[static_cast<size_t>(p)] == m - 1) g[static_cast<size_t>(p++)] = 0;
        if (p == n) break;
        ++g[static_cast<size_t>(p)];
    }
    std::sort(out.begin(), out.end(),
              [](const OrderMap& a, const OrderMap& b) { return a.serial() < b.serial(); });
    return out;
}

std::vector<OrderMap> linear_extensions(const PosetPtr& x) {
    const int n = x->size();
    PosetPtr chain = make_chain(n);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<OrderMap> out;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if (x->leq(perm[static_cast<size_t>(j)], perm[static_cast<size_t>(i)])) ok = false;
        if (ok) out.emplace_back(chain, x, perm, false);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end(),
              [](const OrderMap& a, const OrderMap& b) { return a.serial() < b.serial(); });
    return out;
}

std::pair<PosetPtr, OrderMap> canonical_copy(const PosetPtr& a) {
    const int n = a->size();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a->id_of(i) < a->id_of(j); });
    std::vector<std::string> ids;
    std::vector<char> mat(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        ids.push_back(std::to_string(i));
        for (int j = 0; j < n; ++j)
            mat[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                a->leq(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]) ? 1 : 0;
    }
    PosetPtr canon = make_validated(std::move(ids), std::move(mat));
    return {canon, OrderMap(canon, a, order, true)};
}

PosetPtr parse_poset(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<std::vector<std::string>> carrier;
    std::vector<std::pair<std::string, std::string>> rel;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "elements:") {
            if (carrier) throw SyntaxError("duplicate elements line", lineno);
            carrier.emplace();
            std::string id;
            while (ls >> id) carrier->push_back(id);
        } else if (head == "le:") {
            if (!carrier) throw SyntaxError("le line before elements line", lineno);
            std::string x, y, extra;
            if (!(ls >> x >> y) || (ls >> extra))
                throw SyntaxError("expected 'le: x y'", lineno);
            rel.emplace_back(x, y);
        } else {
            throw SyntaxError("unexpected token '" + head + "'", lineno);
        }
    }
    if (!carrier) throw SyntaxError("missing elements line");
    return make_poset_closed(*carrier, rel);
}

std::string print_poset(const FinitePoset& x) { return x.serial(); }

}  // namespace wpo
