#pragma once

#include <string>

#include "qcp/errors.hpp"

namespace qcp {

enum class Family { I = 1, II, III, IV, V, VI };

inline std::string family_name(Family f) {
    static const char* n[] = {"", "I", "II", "III", "IV", "V", "VI"};
    return n[int(f)];
}

inline Family parse_family(const std::string& s) {
    for (int k = 1; k <= 6; ++k)
        if (family_name(Family(k)) == s) return Family(k);
    throw usage_error("unknown family '" + s + "' (expected I..VI)");
}

} // namespace qcp
