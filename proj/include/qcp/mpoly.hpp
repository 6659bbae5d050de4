#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcp/errors.hpp"
#include "qcp/rat.hpp"

namespace qcp {

inline constexpr int kMaxVars = 16;

// ordered variable names; position 0 is the most significant in lex order
class Registry {
public:
    explicit Registry(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > kMaxVars) throw usage_error("too many variables in registry");
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw usage_error("duplicate variable " + names_[i]);
    }
    int size() const { return int(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    int find(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return int(i);
        return -1;
    }
    int index(const std::string& n) const {
        int i = find(n);
        if (i < 0) throw usage_error("unknown variable '" + n + "'");
        return i;
    }

private:
    std::vector<std::string> names_;
};

using RegPtr = std::shared_ptr<const Registry>;

inline RegPtr make_registry(std::vector<std::string> names) {
    return std::make_shared<const Registry>(std::move(names));
}

inline bool same_registry(const RegPtr& a, const RegPtr& b) {
    return a == b || (a && b && a->names() == b->names());
}

using Exps = std::array<std::uint16_t, kMaxVars>;

class MPoly {
public:
    using Terms = std::map<Exps, Rat>;

    MPoly() = default;
    explicit MPoly(RegPtr r) : reg_(std::move(r)) {}
    MPoly(RegPtr r, const Rat& c) : reg_(std::move(r)) {
        if (!c.is_zero()) t_.emplace(Exps{}, c);
    }

    static MPoly var(const RegPtr& r, int i, int e = 1) {
        if (i < 0 || i >= r->size()) throw usage_error("variable index out of range");
        MPoly p(r);
        Exps x{};
        x[i] = std::uint16_t(e);
        p.t_.emplace(x, Rat(1));
        return p;
    }
    static MPoly var(const RegPtr& r, const std::string& n, int e = 1) { return var(r, r->index(n), e); }
    static MPoly monomial(const RegPtr& r, const Exps& x, const Rat& c) {
        MPoly p(r);
        if (!c.is_zero()) p.t_.emplace(x, c);
        return p;
    }

    const RegPtr& reg() const { return reg_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Exps{}); }
    Rat constant_term() const {
        auto it = t_.find(Exps{});
        return it == t_.end() ? Rat(0) : it->second;
    }
    // lex-largest term
    const std::pair<const Exps, Rat>& leading() const {
        if (t_.empty()) throw internal_error("leading term of zero polynomial");
        return *t_.rbegin();
    }
    int degree(int v) const {
        int d = 0;
        for (auto& [x, c] : t_) d = std::max<int>(d, x[v]);
        return d;
    }
    int total_degree() const {
        int d = 0;
        for (auto& [x, c] : t_) {
            int s = 0;
            for (int i = 0; i < kMaxVars; ++i) s += x[i];
            d = std::max(d, s);
        }
        return d;
    }
    bool uses(int v) const {
        for (auto& [x, c] : t_)
            if (x[v]) return true;
        return false;
    }

    void add_term(const Exps& x, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(x, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    MPoly operator-() const {
        MPoly r(reg_);
        for (auto& [x, c] : t_) r.t_.emplace_hint(r.t_.end(), x, -c);
        return r;
    }
    MPoly& operator+=(const MPoly& o) {
        adopt(o);
        for (auto& [x, c] : o.t_) add_term(x, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        adopt(o);
        for (auto& [x, c] : o.t_) add_term(x, -c);
        return *this;
    }
    MPoly& operator*=(const Rat& s) {
        if (s.is_zero()) {
            t_.clear();
            return *this;
        }
        for (auto& [x, c] : t_) c *= s;
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, const Rat& s) { return a *= s; }
    friend MPoly operator*(const Rat& s, MPoly a) { return a *= s; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        check(a, b);
        MPoly r(a.reg_ ? a.reg_ : b.reg_);
        if (a.is_zero() || b.is_zero()) return r;
        for (auto& [xa, ca] : a.t_)
            for (auto& [xb, cb] : b.t_) {
                Exps x;
                for (int i = 0; i < kMaxVars; ++i) x[i] = std::uint16_t(xa[i] + xb[i]);
                r.add_term(x, ca * cb);
            }
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly pow(int e) const {
        if (e < 0) throw usage_error("negative power of polynomial");
        MPoly r(reg_, Rat(1)), b(*this);
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    MPoly partial(int v) const {
        if (!reg_ || v < 0 || v >= reg_->size()) throw usage_error("derivative in unknown variable");
        MPoly r(reg_);
        for (auto& [x, c] : t_) {
            if (!x[v]) continue;
            Exps y = x;
            --y[v];
            r.add_term(y, c * Rat(long(x[v])));
        }
        return r;
    }
    MPoly partial(const std::string& n) const {
        if (!reg_) throw usage_error("derivative of unregistered polynomial");
        return partial(reg_->index(n));
    }

    // substitute rationals for a subset of variables
    MPoly subs(const std::vector<std::pair<int, Rat>>& vals) const {
        MPoly r(reg_);
        for (auto& [x, c] : t_) {
            Exps y = x;
            Rat k = c;
            for (auto& [v, val] : vals) {
                if (y[v]) {
                    k *= val.pow(y[v]);
                    y[v] = 0;
                }
            }
            r.add_term(y, k);
        }
        return r;
    }
    // full evaluation, vals indexed by registry position
    Rat eval(const std::vector<Rat>& vals) const {
        Rat s(0);
        for (auto& [x, c] : t_) {
            Rat k = c;
            for (int i = 0; i < kMaxVars; ++i)
                if (x[i]) k *= vals.at(i).pow(x[i]);
            s += k;
        }
        return s;
    }
    // generic evaluation into any ring that accepts Rat via conv
    template <class T, class Conv>
    T eval_as(const std::vector<T>& vals, Conv conv) const {
        T s = conv(Rat(0));
        for (auto& [x, c] : t_) {
            T k = conv(c);
            for (int i = 0; i < kMaxVars; ++i)
                for (int e = 0; e < x[i]; ++e) k = k * vals.at(i);
            s = s + k;
        }
        return s;
    }

    // replace variable v by polynomial q (same registry)
    MPoly compose(int v, const MPoly& q) const {
        MPoly r(reg_);
        std::vector<MPoly> pw{MPoly(reg_, Rat(1))};
        for (auto& [x, c] : t_) {
            while (int(pw.size()) <= x[v]) pw.push_back(pw.back() * q);
            Exps y = x;
            int e = y[v];
            y[v] = 0;
            r += monomial(reg_, y, c) * pw[e];
        }
        return r;
    }

    // move into another registry; map[i] = new position of old variable i or -1
    MPoly remap(const RegPtr& to, const std::vector<int>& map) const {
        MPoly r(to);
        for (auto& [x, c] : t_) {
            Exps y{};
            for (int i = 0; i < int(map.size()); ++i) {
                if (!x[i]) continue;
                if (map[i] < 0) throw internal_error("remap drops a used variable");
                y[map[i]] = std::uint16_t(y[map[i]] + x[i]);
            }
            r.add_term(y, c);
        }
        return r;
    }
    // same registry, permuted variables (perm[i] = image of i)
    MPoly permute(const std::vector<int>& perm) const { return remap(reg_, perm); }

    // exact division; nullopt when d does not divide *this
    std::optional<MPoly> divide(const MPoly& d) const {
        check(*this, d);
        if (d.is_zero()) throw domain_error("polynomial division by zero");
        if (is_zero()) return MPoly(reg_);
        for (int v = 0; v < kMaxVars; ++v)
            if (d.degree(v) > degree(v)) return std::nullopt;
        MPoly q(reg_), r(*this);
        const auto& [dx, dc] = d.leading();
        Rat dinv = dc.inv();
        while (!r.is_zero()) {
            auto [rx, rc] = r.leading();
            Exps m;
            for (int i = 0; i < kMaxVars; ++i) {
                if (rx[i] < dx[i]) return std::nullopt;
                m[i] = std::uint16_t(rx[i] - dx[i]);
            }
            Rat k = rc * dinv;
            q.add_term(m, k);
            for (auto& [x, c] : d.t_) {
                Exps y;
                for (int i = 0; i < kMaxVars; ++i) y[i] = std::uint16_t(x[i] + m[i]);
                r.add_term(y, -(c * k));
            }
        }
        return q;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
    friend bool operator<(const MPoly& a, const MPoly& b) { return a.t_ < b.t_; }

    std::string str() const;
    static MPoly parse(const RegPtr& r, const std::string& text);

private:
    static void check(const MPoly& a, const MPoly& b) {
        if (a.reg_ && b.reg_ && !same_registry(a.reg_, b.reg_))
            throw usage_error("polynomials from different variable registries");
    }
    void adopt(const MPoly& o) {
        check(*this, o);
        if (!reg_) reg_ = o.reg_;
    }

    RegPtr reg_;
    Terms t_;
};

} // namespace qcp

#include "qcp/detail/mpoly_text.hpp"
