#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcp/errors.hpp"
#include "qcp/rat.hpp"

namespace qcp {

// Evaluated parameter record. Keys are the names accepted on the command line.
class ParamSet {
public:
    static const std::vector<std::string>& known_keys() {
        static const std::vector<std::string> k{"hbar", "kappa", "theta", "theta0", "theta1", "theta2",
                                                "thetat", "k", "k2", "a", "b", "c", "d", "t"};
        return k;
    }

    bool has(const std::string& key) const { return v_.count(key) != 0; }

    Rat get(const std::string& key) const {
        auto it = v_.find(key);
        if (it == v_.end()) throw usage_error("missing parameter '" + key + "'");
        return it->second;
    }
    Rat get_or(const std::string& key, const Rat& dflt) const { return has(key) ? get(key) : dflt; }

    ParamSet& set(const std::string& key, const Rat& value) {
        bool ok = false;
        for (auto& k : known_keys()) ok = ok || k == key;
        if (!ok) throw usage_error("unknown parameter '" + key + "'");
        if (key == "hbar" && value.is_zero()) throw usage_error("hbar must be nonzero");
        if (key == "k") {
            v_["k2"] = value * value; // only k^2 is ever used
            return *this;
        }
        v_[key] = value;
        return *this;
    }

    // fill values from another set without overwriting
    ParamSet& merge_missing(const ParamSet& o) {
        for (auto& [k, x] : o.v_)
            if (!has(k)) v_[k] = x;
        return *this;
    }

    void require(const std::vector<std::string>& keys) const {
        std::string missing;
        for (auto& k : keys)
            if (!has(k)) missing += (missing.empty() ? "" : ", ") + k;
        if (!missing.empty()) throw usage_error("missing parameter(s): " + missing);
    }

    const std::map<std::string, Rat>& values() const { return v_; }

    // "b=-1/3,c=-1/5"; whitespace around tokens is ignored
    static ParamSet parse(const std::string& text) {
        ParamSet p;
        std::size_t i = 0;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        while (i <= text.size()) {
            auto j = text.find(',', i);
            if (j == std::string::npos) j = text.size();
            std::string item = trim(text.substr(i, j - i));
            i = j + 1;
            if (item.empty()) {
                if (j == text.size()) break;
                throw usage_error("empty parameter in '" + text + "'");
            }
            auto eq = item.find('=');
            if (eq == std::string::npos) throw usage_error("expected key=value, got '" + item + "'");
            p.set(trim(item.substr(0, eq)), Rat::parse(trim(item.substr(eq + 1))));
        }
        return p;
    }

    std::string str() const {
        std::string s;
        for (auto& [k, x] : v_) s += (s.empty() ? "" : ",") + k + "=" + x.str();
        return s;
    }

private:
    std::map<std::string, Rat> v_;
};

} // namespace qcp
