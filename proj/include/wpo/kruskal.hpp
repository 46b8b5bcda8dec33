#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wpo/dilator.hpp"
#include "wpo/verdict.hpp"

namespace wpo {

class KruskalTerm;
using TermPtr = std::shared_ptr<const KruskalTerm>;

/// A term of the initial Kruskal fixed point: a duplicate-free canonically
/// sorted set of subterms plus a kernel of full support over the canonical
/// poset of those subterms.  Immutable; build through KruskalSystem.
class KruskalTerm {
public:
    const std::vector<TermPtr>& subterms() const { return subs_; }
    const DilatorElement& kernel() const { return kernel_; }
    long length() const { return length_; }  // 1 + sum over subterms of 2*length
    int height() const { return height_; }   // max(0, height(sub)+1)
    const std::string& str() const { return serial_; }

private:
    friend class KruskalSystem;
    KruskalTerm(std::vector<TermPtr> subs, DilatorElement kernel, long length, int height,
                std::string serial)
        : subs_(std::move(subs)), kernel_(std::move(kernel)), length_(length), height_(height),
          serial_(std::move(serial)) {}

    std::vector<TermPtr> subs_;
    DilatorElement kernel_;
    long length_;
    int height_;
    std::string serial_;
};

/// A dilator element over a finite set of terms: the ambient carrier is the
/// list of term serials (sorted), atoms[i] being the term named by carrier[i].
struct TermSetElement {
    std::vector<TermPtr> atoms;
    DilatorElement elem;
};

enum class AuditKind { partial_order, fixed_point_eq, height_lemma, bad_sequence_probe };

AuditKind audit_from_string(const std::string& name);
std::string audit_name(AuditKind k);

/// The term system of one dilator, with the memoized order decision.  The
/// memo is a cache of a pure function; a fresh system recomputes everything.
class KruskalSystem {
public:
    explicit KruskalSystem(DilatorSpec w);

    const DilatorSpec& dilator() const { return w_; }

    /// Validates and builds a term.  The kernel must live over the canonical
    /// poset on {0..k-1} carrying the term order of the sorted subterms.
    /// Throws DuplicateSubterm, NotInTrace, SubordersNotPartial,
    /// AmbientMismatch.
    TermPtr make_term(const std::vector<TermPtr>& subterms, const DilatorElement& kernel);

    /// Decides s <= t in the term order; memoized on the serialized pair.
    bool leq(const TermPtr& s, const TermPtr& t);
    /// Same recursion without reading or writing the memo table.
    bool leq_unmemoized(const TermPtr& s, const TermPtr& t);

    /// All terms of length <= bound (bound <= 9).  Kernel sizes are capped at
    /// bound-1 per node to keep the enumeration finite: the length formula
    /// only sees the subterm set, not kernel multiplicities.
    std::vector<TermPtr> enumerate(int length_bound);

    /// kappa(sigma) = the term whose subterms are the support of sigma and
    /// whose kernel is sigma transported to canonical indices.
    TermPtr kappa(const TermSetElement& sigma);
    /// The inverse: the kernel transported to the subterm set.
    TermSetElement kappa_inv(const TermPtr& t);

    Verdict audit(AuditKind kind, int length_bound);

    /// Term syntax: "( sub1 , sub2 ; payload )" where the payload uses
    /// indices 0..k-1 into the canonically sorted distinct subterms; the
    /// leaf is "( ; [] )" for multisets and "( ; <> )" for sequences.
    TermPtr parse(const std::string& text);

private:
    bool leq_impl(const KruskalTerm& s, const KruskalTerm& t, bool use_memo);
    PosetPtr term_poset(const std::vector<TermPtr>& terms, bool use_memo);

    DilatorSpec w_;
    std::map<std::pair<std::string, std::string>, bool> memo_;
};

}  // namespace wpo
