#include "wpo/verdict.hpp"

#include <sstream>

#include "json.hpp"

namespace wpo {

namespace {

std::string indent_block(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) out << prefix << line << "\n";
    return out.str();
}

}  // namespace

std::string to_text(const Verdict& v) {
    std::ostringstream out;
    out << "property: " << v.property << "\n";
    out << "subject: " << v.subject << "\n";
    if (v.bounds.max_poset > 0 || v.bounds.max_elem > 0)
        out << "bounds: posets<=" << v.bounds.max_poset << " elems<=" << v.bounds.max_elem << "\n";
    out << "result: " << (v.pass ? "pass" : "fail") << "\n";
    out << "instancesChecked: " << v.instances_checked << "\n";
    for (const auto& [key, value] : v.details) out << key << ": " << value << "\n";
    if (v.counterexample) {
        const auto& c = *v.counterexample;
        out << "counterexample:\n";
        out << "  clause: " << c.clause << "\n";
        if (!c.poset.empty()) out << "  poset:\n" << indent_block(c.poset, "    ");
        if (!c.elements.empty()) {
            out << "  elements:";
            for (const auto& e : c.elements) out << " " << e;
            out << "\n";
        }
        if (!c.points.empty()) {
            out << "  points:";
            for (const auto& p : c.points) out << " " << p;
            out << "\n";
        }
        if (!c.map.empty()) out << "  map: " << c.map << "\n";
    }
    if (!v.note.empty()) out << "note: " << v.note << "\n";
    return out.str();
}

std::string to_json(const Verdict& v) {
    nlohmann::json j;
    j["property"] = v.property;
    j["subject"] = v.subject;
    j["bounds"] = {{"maxPosetSize", v.bounds.max_poset}, {"maxElemSize", v.bounds.max_elem}};
    j["result"] = v.pass ? "pass" : "fail";
    j["instancesChecked"] = v.instances_checked;
    if (v.counterexample) {
        const auto& c = *v.counterexample;
        j["counterexample"] = {{"poset", c.poset},
                               {"elements", c.elements},
                               {"points", c.points},
                               {"map", c.map},
                               {"clause", c.clause}};
    } else {
        j["counterexample"] = nullptr;
    }
    if (!v.note.empty()) j["note"] = v.note;
    if (!v.details.empty()) j["details"] = v.details;
    return j.dump(2);
}

}  // namespace wpo
