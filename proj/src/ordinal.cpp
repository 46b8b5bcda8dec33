#include "wpo/ordinal.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

namespace wpo {

namespace {

Ordinal::Atom make_atom(const Ordinal& first, const Ordinal& second, std::uint64_t coeff) {
    return Ordinal::Atom{std::make_shared<Ordinal>(first), std::make_shared<Ordinal>(second), coeff};
}

Ordinal atom_value(const Ordinal::Atom& a) {
    return Ordinal::from_atoms({Ordinal::Atom{a.first, a.second, 1}});
}

// Value comparison of phi(a1,b1) against phi(a2,b2).
int compare_atoms(const Ordinal::Atom& x, const Ordinal::Atom& y) {
    int c = compare(*x.first, *y.first);
    if (c == 0) return compare(*x.second, *y.second);
    if (c < 0) {
        int d = compare(*x.second, atom_value(y));
        return d < 0 ? -1 : (d == 0 ? 0 : 1);
    }
    int d = compare(*y.second, atom_value(x));
    return d < 0 ? 1 : (d == 0 ? 0 : -1);
}

bool atom_is_one(const Ordinal::Atom& a) { return a.first->is_zero() && a.second->is_zero(); }

}  // namespace

Ordinal Ordinal::natural(std::uint64_t n) {
    if (n == 0) return zero();
    return from_atoms({make_atom(zero(), zero(), n)});
}

Ordinal Ordinal::omega() { return omega_pow(natural(1)); }

Ordinal Ordinal::veblen(const Ordinal& a, const Ordinal& b) {
    // b already a fixed point of phi(a,.): absorb.
    if (b.atoms_.size() == 1 && b.atoms_[0].coeff == 1 && compare(*b.atoms_[0].first, a) > 0)
        return b;
    return from_atoms({make_atom(a, b, 1)});
}

Ordinal Ordinal::omega_pow(const Ordinal& a) { return veblen(zero(), a); }

bool Ordinal::is_finite() const {
    if (atoms_.empty()) return true;
    return atoms_.size() == 1 && atom_is_one(atoms_[0]);
}

bool Ordinal::is_limit() const {
    if (atoms_.empty()) return false;
    return !atom_is_one(atoms_.back());
}

std::optional<std::uint64_t> Ordinal::finite_value() const {
    if (atoms_.empty()) return 0;
    if (!is_finite()) return std::nullopt;
    return atoms_[0].coeff;
}

int compare(const Ordinal& x, const Ordinal& y) {
    const auto& ax = x.atoms_;
    const auto& ay = y.atoms_;
    for (size_t i = 0;; ++i) {
        bool ex = i >= ax.size(), ey = i >= ay.size();
        if (ex && ey) return 0;
        if (ex) return -1;
        if (ey) return 1;
        int c = compare_atoms(ax[i], ay[i]);
        if (c != 0) return c;
        if (ax[i].coeff != ay[i].coeff) return ax[i].coeff < ay[i].coeff ? -1 : 1;
    }
}

Ordinal natural_sum(const Ordinal& a, const Ordinal& b) {
    std::vector<Ordinal::Atom> atoms;
    size_t i = 0, j = 0;
    while (i < a.atoms().size() || j < b.atoms().size()) {
        if (i >= a.atoms().size()) { atoms.push_back(b.atoms()[j++]); continue; }
        if (j >= b.atoms().size()) { atoms.push_back(a.atoms()[i++]); continue; }
        int c = compare_atoms(a.atoms()[i], b.atoms()[j]);
        if (c > 0) atoms.push_back(a.atoms()[i++]);
        else if (c < 0) atoms.push_back(b.atoms()[j++]);
        else {
            Ordinal::Atom merged = a.atoms()[i++];
            merged.coeff += b.atoms()[j++].coeff;
            atoms.push_back(merged);
        }
    }
    return Ordinal::from_atoms(std::move(atoms));
}

Ordinal ordinal_add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    std::vector<Ordinal::Atom> atoms;
    const Ordinal::Atom& lead = b.atoms()[0];
    size_t i = 0;
    while (i < a.atoms().size() && compare_atoms(a.atoms()[i], lead) > 0)
        atoms.push_back(a.atoms()[i++]);
    Ordinal::Atom merged = lead;
    if (i < a.atoms().size() && compare_atoms(a.atoms()[i], lead) == 0)
        merged.coeff += a.atoms()[i].coeff;
    atoms.push_back(merged);
    for (size_t j = 1; j < b.atoms().size(); ++j) atoms.push_back(b.atoms()[j]);
    return Ordinal::from_atoms(std::move(atoms));
}

namespace {

// The omega-exponent of an atom: b for phi(0,b); otherwise the atom itself
// (phi with index >= 1 is closed under omega powers).
Ordinal omega_log(const Ordinal::Atom& a) {
    if (a.first->is_zero()) return *a.second;
    return atom_value(a);
}

Ordinal scaled(const Ordinal& single, std::uint64_t k) {
    if (k == 0 || single.is_zero()) return Ordinal::zero();
    auto atoms = single.atoms();
    atoms[0].coeff *= k;
    return Ordinal::from_atoms(std::move(atoms));
}

}  // namespace

Ordinal natural_product(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal::zero();
    Ordinal out;
    for (const auto& x : a.atoms())
        for (const auto& y : b.atoms()) {
            Ordinal part = scaled(Ordinal::omega_pow(natural_sum(omega_log(x), omega_log(y))),
                                  x.coeff * y.coeff);
            out = natural_sum(out, part);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Fundamental sequences

namespace {

// Drops one unit from a successor (or one copy of the smallest atom).
Ordinal predecessor(const Ordinal& x) {
    auto atoms = x.atoms();
    if (atoms.back().coeff > 1) --atoms.back().coeff;
    else atoms.pop_back();
    return Ordinal::from_atoms(std::move(atoms));
}

// Fundamental sequence of a single limit atom phi(a,b).
Ordinal fs_atom(const Ordinal& a, const Ordinal& b, std::uint64_t n) {
    if (a.is_zero()) {
        // omega^b with b != 0
        if (b.is_limit()) return Ordinal::omega_pow(fundamental_sequence(b, n));
        return scaled(Ordinal::omega_pow(predecessor(b)), n);
    }
    if (b.is_zero()) {
        if (a.is_limit()) return Ordinal::veblen(fundamental_sequence(a, n), Ordinal::zero());
        Ordinal ap = predecessor(a);
        Ordinal v = Ordinal::veblen(ap, Ordinal::zero());
        for (std::uint64_t k = 0; k < n; ++k) v = Ordinal::veblen(ap, v);
        return v;
    }
    if (b.is_limit()) return Ordinal::veblen(a, fundamental_sequence(b, n));
    // b a successor: climb from just above phi(a, b-1)
    Ordinal start = ordinal_add(Ordinal::veblen(a, predecessor(b)), Ordinal::natural(1));
    if (a.is_limit()) return Ordinal::veblen(fundamental_sequence(a, n), start);
    Ordinal ap = predecessor(a);
    Ordinal v = start;
    for (std::uint64_t k = 0; k < n; ++k) v = Ordinal::veblen(ap, v);
    return v;
}

}  // namespace

Ordinal fundamental_sequence(const Ordinal& limit, std::uint64_t n) {
    if (!limit.is_limit())
        throw NotALimit("fundamental_sequence: " + limit.str() + " is not a limit");
    const Ordinal::Atom& last = limit.atoms().back();
    Ordinal head = predecessor(limit);  // everything above one copy of the last atom
    return ordinal_add(head, fs_atom(*last.first, *last.second, n));
}

// ---------------------------------------------------------------------------
// Maximal order types

Ordinal otype_seq(const Ordinal& alpha) {
    if (auto n = alpha.finite_value()) {
        if (*n == 0) return Ordinal::natural(1);  // omega^(omega^-1) with omega^-1 := 0
        return Ordinal::omega_pow(Ordinal::omega_pow(Ordinal::natural(*n - 1)));
    }
    // "epsilon plus finite": one coefficient-1 atom closed under omega powers,
    // then at most a finite tail.
    const auto& atoms = alpha.atoms();
    bool eps_plus_finite =
        !atoms[0].first->is_zero() && atoms[0].coeff == 1 &&
        (atoms.size() == 1 || (atoms.size() == 2 && atoms[1].first->is_zero() && atoms[1].second->is_zero()));
    if (eps_plus_finite)
        return Ordinal::omega_pow(Ordinal::omega_pow(ordinal_add(alpha, Ordinal::natural(1))));
    return Ordinal::omega_pow(Ordinal::omega_pow(alpha));
}

Ordinal otype_multiset(const Ordinal& alpha) { return Ordinal::omega_pow(alpha); }
Ordinal otype_sum(const Ordinal& a, const Ordinal& b) { return natural_sum(a, b); }
Ordinal otype_product(const Ordinal& a, const Ordinal& b) { return natural_product(a, b); }

// ---------------------------------------------------------------------------
// Text form

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::string Ordinal::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        std::string part;
        if (atom_is_one(a)) {
            part = std::to_string(a.coeff);
            out += (i ? " + " : "") + part;
            continue;
        }
        if (a.first->is_zero()) {
            if (*a.second == natural(1)) part = "w";
            else {
                std::string e = a.second->str();
                part = (all_digits(e) || e == "w") ? "w^" + e : "w^(" + e + ")";
            }
        } else {
            part = "phi(" + a.first->str() + "," + a.second->str() + ")";
        }
        if (a.coeff > 1) part += "(*)" + std::to_string(a.coeff);
        out += (i ? " + " : "") + part;
    }
    return out;
}

namespace {

struct OrdCursor {
    const std::string& text;
    size_t pos = 0;
    void skip_ws() {
        while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(const std::string& tok) {
        skip_ws();
        if (text.compare(pos, tok.size(), tok) == 0) { pos += tok.size(); return true; }
        return false;
    }
    bool peek(const std::string& tok) {
        skip_ws();
        return text.compare(pos, tok.size(), tok) == 0;
    }
};

Ordinal parse_add(OrdCursor& c);

Ordinal parse_primary(OrdCursor& c) {
    c.skip_ws();
    if (c.pos >= c.text.size()) throw SyntaxError("unexpected end of ordinal expression");
    if (c.eat("phi")) {
        if (!c.eat("(")) throw SyntaxError("expected '(' after phi");
        Ordinal a = parse_add(c);
        if (!c.eat(",")) throw SyntaxError("expected ',' in phi");
        Ordinal b = parse_add(c);
        if (!c.eat(")")) throw SyntaxError("expected ')' after phi");
        return Ordinal::veblen(a, b);
    }
    if (c.eat("e0")) return Ordinal::veblen(Ordinal::natural(1), Ordinal::zero());
    if (c.eat("w")) {
        if (c.eat("^")) return Ordinal::omega_pow(parse_primary(c));
        return Ordinal::omega();
    }
    if (c.peek("(")) {
        c.eat("(");
        Ordinal v = parse_add(c);
        if (!c.eat(")")) throw SyntaxError("expected ')'");
        return v;
    }
    c.skip_ws();
    size_t start = c.pos;
    while (c.pos < c.text.size() && isdigit(static_cast<unsigned char>(c.text[c.pos]))) ++c.pos;
    if (c.pos == start)
        throw SyntaxError("unexpected token in ordinal: '" + c.text.substr(c.pos, 6) + "'");
    return Ordinal::natural(std::stoull(c.text.substr(start, c.pos - start)));
}

Ordinal parse_nprod(OrdCursor& c) {
    Ordinal v = parse_primary(c);
    while (c.eat("(*)")) v = natural_product(v, parse_primary(c));
    return v;
}

Ordinal parse_nsum(OrdCursor& c) {
    Ordinal v = parse_nprod(c);
    while (c.eat("(+)")) v = natural_sum(v, parse_nprod(c));
    return v;
}

Ordinal parse_add(OrdCursor& c) {
    Ordinal v = parse_nsum(c);
    while (true) {
        // "(+)" and "(*)" bind tighter and are consumed a level down.
        if (c.peek("(+)") || c.peek("(*)")) break;
        if (!c.eat("+")) break;
        v = ordinal_add(v, parse_nsum(c));
    }
    return v;
}

}  // namespace

Ordinal parse_ordinal(const std::string& text) {
    OrdCursor c{text};
    Ordinal v = parse_add(c);
    c.skip_ws();
    if (c.pos != text.size())
        throw SyntaxError("trailing input after ordinal: '" + text.substr(c.pos) + "'");
    return v;
}

// ---------------------------------------------------------------------------
// Normal-function analysis

OtypeMap otype_map_from_string(const std::string& name) {
    if (name == "seq-otype") return OtypeMap::seq_otype;
    if (name == "multiset-otype") return OtypeMap::multiset_otype;
    if (name == "omega-pow") return OtypeMap::omega_pow;
    throw Error("unknown symbolic map: " + name);
}

std::string otype_map_name(OtypeMap f) {
    switch (f) {
        case OtypeMap::seq_otype: return "seq-otype";
        case OtypeMap::multiset_otype: return "multiset-otype";
        case OtypeMap::omega_pow: return "omega-pow";
    }
    return "?";
}

Ordinal apply_otype_map(OtypeMap f, const Ordinal& a) {
    switch (f) {
        case OtypeMap::seq_otype: return otype_seq(a);
        case OtypeMap::multiset_otype: return otype_multiset(a);
        case OtypeMap::omega_pow: return Ordinal::omega_pow(a);
    }
    throw Error("unknown symbolic map");
}

namespace {

Ordinal random_ordinal(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<std::uint64_t> small(0, 4);
    if (depth <= 0) return Ordinal::natural(small(rng));
    Ordinal v;
    switch (pick(rng)) {
        case 0: v = Ordinal::natural(small(rng)); break;
        case 1: v = Ordinal::omega_pow(random_ordinal(rng, depth - 1)); break;
        case 2:
            v = Ordinal::veblen(Ordinal::natural(small(rng) % 3), random_ordinal(rng, depth - 1));
            break;
        case 3: v = natural_sum(random_ordinal(rng, depth - 1), random_ordinal(rng, depth - 1)); break;
        case 4:
            v = natural_product(random_ordinal(rng, depth - 1), random_ordinal(rng, depth - 1));
            break;
        default: v = ordinal_add(random_ordinal(rng, depth - 1), random_ordinal(rng, depth - 1)); break;
    }
    if (v.atoms().size() > 12) return Ordinal::natural(small(rng));
    return v;
}

}  // namespace

std::vector<Ordinal> sample_ordinals(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Ordinal> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(random_ordinal(rng, 3));
    return out;
}

FunctionVerdict check_normal_function(OtypeMap f, const std::vector<Ordinal>& probes,
                                      int pair_samples, std::uint64_t seed) {
    for (const auto& p : probes)
        if (!p.is_limit()) throw NotALimit("probe " + p.str() + " is not a limit");

    FunctionVerdict v;
    v.function = otype_map_name(f);
    v.samples = static_cast<std::uint64_t>(pair_samples);
    v.seed = seed;
    v.monotone = true;

    auto check_pair = [&](const Ordinal& a, const Ordinal& b) {
        if (!(a < b) || !v.monotone) return;
        if (!(apply_otype_map(f, a) < apply_otype_map(f, b))) {
            v.monotone = false;
            v.monotonicity_counterexample = {{a.str(), b.str()}};
        }
    };

    std::mt19937_64 rng(seed);
    for (int k = 0; k < pair_samples; ++k) {
        Ordinal a = random_ordinal(rng, 3);
        Ordinal b = random_ordinal(rng, 3);
        if (a < b) check_pair(a, b);
        else check_pair(b, a);
    }
    for (const auto& probe : probes) {
        std::vector<Ordinal> hood;
        for (std::uint64_t i = 0; i < 4; ++i) hood.push_back(fundamental_sequence(probe, i));
        hood.push_back(probe);
        hood.push_back(ordinal_add(probe, Ordinal::natural(1)));
        for (const auto& a : hood)
            for (const auto& b : hood) check_pair(a, b);
    }

    // Continuity as mutual cofinality of the fundamental-sequence images.
    constexpr std::uint64_t kDepth = 6;
    constexpr std::uint64_t kSearch = 24;
    for (const auto& probe : probes) {
        ProbeOutcome outcome;
        outcome.probe = probe.str();
        outcome.continuous = true;
        Ordinal value = apply_otype_map(f, probe);
        outcome.value = value.str();
        if (!value.is_limit()) {
            outcome.continuous = false;
            outcome.sup_witness = value.str();
        } else {
            for (std::uint64_t n = 0; n < kSearch && outcome.continuous; ++n) {
                Ordinal below = apply_otype_map(f, fundamental_sequence(probe, n));
                if (!(below < value)) {
                    outcome.continuous = false;
                    outcome.sup_witness = below.str();
                }
            }
            for (std::uint64_t k = 0; k < kDepth && outcome.continuous; ++k) {
                Ordinal stage = fundamental_sequence(value, k);
                bool dominated = false;
                for (std::uint64_t n = 0; n < kSearch; ++n) {
                    if (stage <= apply_otype_map(f, fundamental_sequence(probe, n))) {
                        dominated = true;
                        break;
                    }
                }
                if (!dominated) {
                    outcome.continuous = false;
                    outcome.sup_witness = stage.str();
                }
            }
        }
        v.probes.push_back(std::move(outcome));
    }

    v.pass = v.monotone;
    for (const auto& p : v.probes)
        if (!p.continuous) v.pass = false;
    return v;
}

std::string to_text(const FunctionVerdict& v) {
    std::ostringstream out;
    out << "function: " << v.function << "\n";
    out << "result: " << (v.pass ? "pass" : "fail") << "\n";
    out << "monotone: " << (v.monotone ? "yes" : "no") << "\n";
    if (v.monotonicity_counterexample)
        out << "monotonicity counterexample: f(" << v.monotonicity_counterexample->first
            << ") !< f(" << v.monotonicity_counterexample->second << ")\n";
    out << "samples: " << v.samples << " (seed " << v.seed << ")\n";
    for (const auto& p : v.probes) {
        out << "probe " << p.probe << ": ";
        if (p.continuous) out << "continuous, value " << p.value << "\n";
        else out << "NOT continuous, gap (" << p.sup_witness << ", " << p.value << ")\n";
    }
    return out.str();
}

std::string to_json(const FunctionVerdict& v) {
    nlohmann::json j;
    j["function"] = v.function;
    j["result"] = v.pass ? "pass" : "fail";
    j["monotone"] = v.monotone;
    if (v.monotonicity_counterexample)
        j["monotonicityCounterexample"] = {v.monotonicity_counterexample->first,
                                           v.monotonicity_counterexample->second};
    j["samples"] = v.samples;
    j["seed"] = v.seed;
    j["probes"] = nlohmann::json::array();
    for (const auto& p : v.probes) {
        nlohmann::json pj;
        pj["probe"] = p.probe;
        pj["continuous"] = p.continuous;
        pj["value"] = p.value;
        if (!p.continuous) pj["supWitness"] = p.sup_witness;
        j["probes"].push_back(pj);
    }
    return j.dump(2);
}

}  // namespace wpo
