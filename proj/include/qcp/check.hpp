#pragma once

#include <string>
#include <vector>

namespace qcp {

// one verified identity inside a report
struct Check {
    std::string id;
    std::string anchor;   // stable name of the identity being checked
    bool pass = false;
    std::string residual; // decimal or exact text; "0" when an identity holds
    std::string note;
    bool corrected = false; // holds only after a solved correction
};

using Checks = std::vector<Check>;

inline bool all_pass(const Checks& cs) {
    for (auto& c : cs)
        if (!c.pass) return false;
    return true;
}

} // namespace qcp
