#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpo/errors.hpp"

namespace wpo {

/// Veblen normal forms below Gamma_0: zero or a strictly descending sum of
/// atoms phi(a,b) with positive coefficients.  omega^g is phi(0,g); epsilon
/// numbers are phi(1,.).  Immutable values; all operations normalize.  The
/// parameters of an atom are shared immutable sub-terms.
class Ordinal {
public:
    struct Atom {
        std::shared_ptr<const Ordinal> first;   // phi index
        std::shared_ptr<const Ordinal> second;  // phi argument
        std::uint64_t coeff;
    };

    Ordinal() = default;  // zero

    static Ordinal zero() { return Ordinal(); }
    static Ordinal natural(std::uint64_t n);
    static Ordinal omega();

    /// phi(a,b), normalized: collapses to b when b is a fixed point of
    /// phi(a,.), i.e. a single coefficient-1 atom phi(c,e) with c > a.
    static Ordinal veblen(const Ordinal& a, const Ordinal& b);
    /// omega^a = phi(0,a).
    static Ordinal omega_pow(const Ordinal& a);

    /// Trusted assembly from atoms already in normal form.
    static Ordinal from_atoms(std::vector<Atom> atoms) {
        Ordinal v;
        v.atoms_ = std::move(atoms);
        return v;
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool is_zero() const { return atoms_.empty(); }
    bool is_finite() const;
    /// Nonzero without a trailing finite part.
    bool is_limit() const;
    bool is_successor() const { return !is_zero() && !is_limit(); }
    std::optional<std::uint64_t> finite_value() const;

    std::string str() const;

    bool operator==(const Ordinal& o) const { return compare(*this, o) == 0; }
    bool operator!=(const Ordinal& o) const { return compare(*this, o) != 0; }
    bool operator<(const Ordinal& o) const { return compare(*this, o) < 0; }
    bool operator<=(const Ordinal& o) const { return compare(*this, o) <= 0; }
    bool operator>(const Ordinal& o) const { return compare(*this, o) > 0; }
    bool operator>=(const Ordinal& o) const { return compare(*this, o) >= 0; }

    /// Trichotomous comparison: negative, zero or positive.
    friend int compare(const Ordinal& x, const Ordinal& y);

private:
    std::vector<Atom> atoms_;  // strictly descending by atom value
};

/// Ordinary (non-commutative, absorbing) ordinal addition.
Ordinal ordinal_add(const Ordinal& a, const Ordinal& b);
/// Hessenberg (natural) sum: merge the atom lists.
Ordinal natural_sum(const Ordinal& a, const Ordinal& b);
/// Hessenberg (natural) product: distribute over omega-exponents.
Ordinal natural_product(const Ordinal& a, const Ordinal& b);

/// The fixed fundamental-sequence assignment; throws NotALimit.
Ordinal fundamental_sequence(const Ordinal& limit, std::uint64_t n);

/// Maximal order types: the three-case formula for finite sequences, and
/// omega^alpha for the multiset order; sum and product are the natural
/// operations.
Ordinal otype_seq(const Ordinal& alpha);
Ordinal otype_multiset(const Ordinal& alpha);
Ordinal otype_sum(const Ordinal& a, const Ordinal& b);
Ordinal otype_product(const Ordinal& a, const Ordinal& b);

/// Expression grammar: 0, decimal naturals, w, w^<primary>, phi(e,e), e0,
/// binary + (ordinal add), (+) (natural sum), (*) (natural product);
/// precedence (*) > (+) > +, all left associative.
Ordinal parse_ordinal(const std::string& text);

enum class OtypeMap { seq_otype, multiset_otype, omega_pow };
OtypeMap otype_map_from_string(const std::string& name);
std::string otype_map_name(OtypeMap f);
Ordinal apply_otype_map(OtypeMap f, const Ordinal& a);

struct ProbeOutcome {
    std::string probe;
    bool continuous;
    std::string sup_witness;  // the cofinality gap when not continuous
    std::string value;        // f(probe)
};

struct FunctionVerdict {
    std::string function;
    bool pass = false;
    bool monotone = false;
    std::optional<std::pair<std::string, std::string>> monotonicity_counterexample;
    std::vector<ProbeOutcome> probes;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Strict monotonicity on seeded random comparable pairs plus the probe
/// neighborhoods, and continuity at each limit probe tested as mutual
/// cofinality of fundamental-sequence images.  Throws NotALimit when a probe
/// is not a limit.
FunctionVerdict check_normal_function(OtypeMap f, const std::vector<Ordinal>& probes,
                                      int pair_samples, std::uint64_t seed);

std::string to_text(const FunctionVerdict& v);
std::string to_json(const FunctionVerdict& v);

/// Deterministic pseudo-random normal forms for property tests and sampling.
std::vector<Ordinal> sample_ordinals(int count, std::uint64_t seed);

}  // namespace wpo
