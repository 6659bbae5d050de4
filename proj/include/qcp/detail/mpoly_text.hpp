#pragma once

#include <cctype>
#include <string>

namespace qcp {

namespace detail {

inline std::string monomial_str(const Registry& r, const Exps& x) {
    std::string s;
    for (int i = 0; i < r.size(); ++i) {
        if (!x[i]) continue;
        if (!s.empty()) s += '*';
        s += r.name(i);
        if (x[i] > 1) s += '^' + std::to_string(x[i]);
    }
    return s;
}

// poly := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)*
// factor := int ['/' int] | name ['^' int] | '(' poly ')' ['^' int]
class PolyParser {
public:
    PolyParser(const RegPtr& r, const std::string& s) : reg_(r), s_(s) {}

    MPoly run() {
        MPoly p = poly();
        skip();
        if (i_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw usage_error("cannot parse polynomial '" + s_ + "' at " + std::to_string(i_) + ": " + why);
    }
    std::string digits() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_) fail("expected integer");
        return s_.substr(b, i_ - b);
    }
    int exponent() {
        if (!eat('^')) return 1;
        std::string d = digits();
        if (d.size() > 4) fail("exponent too large");
        return std::stoi(d);
    }
    MPoly poly() {
        bool neg = eat('-');
        if (!neg) eat('+');
        MPoly p = term();
        if (neg) p = -p;
        for (;;) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p -= term();
            else
                break;
        }
        return p;
    }
    MPoly term() {
        MPoly p = factor();
        while (eat('*')) p *= factor();
        return p;
    }
    MPoly factor() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string n = digits();
            std::string d = "1";
            skip();
            // a '/' directly after an integer literal is part of the rational literal
            if (i_ < s_.size() && s_[i_] == '/') {
                ++i_;
                d = digits();
            }
            Rat v;
            try {
                v = Rat::parse(n + "/" + d);
            } catch (const usage_error&) {
                fail("bad rational");
            }
            return MPoly(reg_, v);
        }
        if (c == '(') {
            ++i_;
            MPoly p = poly();
            if (!eat(')')) fail("expected ')'");
            return p.pow(exponent());
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name = s_.substr(b, i_ - b);
            int v = reg_->find(name);
            if (v < 0) fail("unknown variable '" + name + "'");
            return MPoly::var(reg_, v, exponent());
        }
        fail(std::string("unexpected '") + c + "'");
    }

    RegPtr reg_;
    const std::string& s_;
    std::size_t i_ = 0;
};

} // namespace detail

// terms in descending lex order: 3/2*z1^2*t - 1*nu0
inline std::string MPoly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const Rat& c = it->second;
        std::string mono = reg_ ? detail::monomial_str(*reg_, it->first) : std::string();
        std::string body = c.abs().str();
        if (!mono.empty()) body += "*" + mono;
        if (first)
            s = (c.sign() < 0 ? "-" : "") + body;
        else
            s += (c.sign() < 0 ? " - " : " + ") + body;
        first = false;
    }
    return s;
}

inline MPoly MPoly::parse(const RegPtr& r, const std::string& text) {
    return detail::PolyParser(r, text).run();
}

} // namespace qcp
