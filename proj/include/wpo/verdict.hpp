#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wpo {

struct Bounds {
    int max_poset = 0;
    int max_elem = 0;
};

/// A replayable counterexample: the poset in the order-core text format, the
/// offending elements in dilator-kit syntax, optional witness points and map,
/// and the name of the failing clause.
struct Counterexample {
    std::string poset;
    std::vector<std::string> elements;
    std::vector<std::string> points;
    std::string map;
    std::string clause;
};

/// Outcome of a bounded exhaustive check.  A pass is a bounded claim, never a
/// proof; the bounds are part of the record.
struct Verdict {
    std::string property;
    std::string subject;  // dilator or transformation name
    bool pass = false;
    Bounds bounds;
    std::optional<Counterexample> counterexample;
    std::uint64_t instances_checked = 0;
    std::string note;
    std::map<std::string, std::string> details;
};

std::string to_text(const Verdict& v);
std::string to_json(const Verdict& v);

}  // namespace wpo
