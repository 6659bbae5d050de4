#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcp/mpoly.hpp"

namespace qcp {

// numerator over a product of monic "atoms" with multiplicities; atoms are
// never refactored, so two RatFuns for the same function may look different.
// Equality goes through cross multiplication.
class RatFun {
public:
    using Den = std::map<MPoly, int>;

    RatFun() = default;
    explicit RatFun(RegPtr r) : num_(std::move(r)) {}
    RatFun(RegPtr r, const Rat& c) : num_(std::move(r), c) {}
    RatFun(const MPoly& n) : num_(n) {}

    static RatFun make(const MPoly& n, const MPoly& d) {
        if (d.is_zero()) throw domain_error("rational function with zero denominator");
        RatFun r(n);
        if (!r.num_.reg()) r.num_ = MPoly(d.reg());
        auto [content, atoms] = atomize(d, {});
        r.num_ *= content.inv();
        r.den_ = std::move(atoms);
        r.cancel();
        return r;
    }

    const RegPtr& reg() const { return num_.reg(); }
    const MPoly& num() const { return num_; }
    const Den& den_factors() const { return den_; }
    MPoly den() const {
        MPoly d(reg(), Rat(1));
        for (auto& [a, e] : den_) d *= a.pow(e);
        return d;
    }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    bool uses(int v) const {
        if (num_.uses(v)) return true;
        for (auto& [a, e] : den_)
            if (a.uses(v)) return true;
        return false;
    }

    RatFun operator-() const {
        RatFun r(*this);
        r.num_ = -r.num_;
        return r;
    }
    friend RatFun operator+(const RatFun& a, const RatFun& b) { return combine(a, b, false); }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return combine(a, b, true); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        if (a.is_zero() || b.is_zero()) return RatFun(a.reg() ? a.reg() : b.reg());
        RatFun r(a.num_ * b.num_);
        r.den_ = a.den_;
        for (auto& [f, e] : b.den_) r.den_[f] += e;
        r.cancel();
        return r;
    }
    friend RatFun operator*(RatFun a, const Rat& s) {
        a.num_ *= s;
        if (a.num_.is_zero()) a.den_.clear();
        return a;
    }
    friend RatFun operator*(const Rat& s, RatFun a) { return std::move(a) * s; }
    friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }
    friend RatFun operator/(RatFun a, const Rat& s) { return std::move(a) * s.inv(); }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

    RatFun inverse() const {
        if (is_zero()) throw domain_error("inverse of zero rational function");
        std::vector<MPoly> hint;
        for (auto& [f, e] : den_) hint.push_back(f);
        auto [content, atoms] = atomize(num_, hint);
        RatFun r(MPoly(reg(), content.inv()));
        for (auto& [f, e] : den_) r.num_ *= f.pow(e);
        r.den_ = std::move(atoms);
        r.cancel();
        return r;
    }
    RatFun pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        RatFun r(num_.pow(e));
        for (auto& [f, k] : den_) r.den_[f] = k * e;
        if (r.num_.is_zero()) r.den_.clear();
        return r;
    }

    RatFun partial(int v) const {
        std::vector<const std::pair<const MPoly, int>*> moving;
        for (auto& fe : den_)
            if (fe.first.uses(v)) moving.push_back(&fe);
        if (moving.empty()) return RatFun(num_.partial(v), den_);
        MPoly prod(reg(), Rat(1));
        for (auto* fe : moving) prod *= fe->first;
        MPoly n = num_.partial(v) * prod;
        for (std::size_t i = 0; i < moving.size(); ++i) {
            MPoly rest = moving[i]->first.partial(v) * Rat(long(moving[i]->second));
            for (std::size_t j = 0; j < moving.size(); ++j)
                if (j != i) rest *= moving[j]->first;
            n -= num_ * rest;
        }
        RatFun r(n, den_);
        for (auto* fe : moving) r.den_[fe->first] += 1;
        r.cancel();
        return r;
    }
    RatFun partial(const std::string& name) const { return partial(reg()->index(name)); }

    Rat eval(const std::vector<Rat>& vals) const {
        Rat d(1);
        for (auto& [f, e] : den_) d *= f.eval(vals).pow(e);
        if (d.is_zero()) throw degenerate_point("rational function evaluated on a pole");
        return num_.eval(vals) / d;
    }
    template <class T, class Conv>
    T eval_as(const std::vector<T>& vals, Conv conv) const {
        T n = num_.eval_as(vals, conv);
        T d = conv(Rat(1));
        for (auto& [f, e] : den_) {
            T fv = f.eval_as(vals, conv);
            for (int k = 0; k < e; ++k) d = d * fv;
        }
        return n / d;
    }

    RatFun subs(const std::vector<std::pair<int, Rat>>& vals) const {
        return rebuild([&](const MPoly& p) { return p.subs(vals); });
    }
    RatFun permute(const std::vector<int>& perm) const {
        return rebuild([&](const MPoly& p) { return p.permute(perm); });
    }
    RatFun remap(const RegPtr& to, const std::vector<int>& map) const {
        return rebuild([&](const MPoly& p) { return p.remap(to, map); });
    }
    RatFun compose(int v, const MPoly& q) const {
        return rebuild([&](const MPoly& p) { return p.compose(v, q); });
    }

    // exact-division check; throws if a denominator survives
    MPoly as_polynomial() const {
        if (!den_.empty()) {
            auto q = num_.divide(den());
            if (!q) throw domain_error("expected a polynomial, division leaves a remainder");
            return *q;
        }
        return num_;
    }

    std::string str() const {
        if (den_.empty()) return num_.str();
        std::string d;
        for (auto& [f, e] : den_) {
            if (!d.empty()) d += "*";
            d += "(" + f.str() + ")";
            if (e > 1) d += "^" + std::to_string(e);
        }
        return "(" + num_.str() + ")/(" + d + ")";
    }

    // "poly" or "(poly)/(poly)"
    static RatFun parse(const RegPtr& r, const std::string& text) {
        int depth = 0;
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == '/' && depth == 0 && i > 0 && text[i - 1] == ')')
                return make(MPoly::parse(r, text.substr(0, i)), MPoly::parse(r, text.substr(i + 1)));
        }
        return RatFun(MPoly::parse(r, text));
    }

    friend bool ratfun_equal(const RatFun& a, const RatFun& b) {
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return (a.num_ * b.den() - b.num_ * a.den()).is_zero();
    }
    friend bool operator==(const RatFun& a, const RatFun& b) { return ratfun_equal(a, b); }

private:
    RatFun(MPoly n, Den d) : num_(std::move(n)), den_(std::move(d)) {
        if (num_.is_zero()) den_.clear();
    }

    template <class F>
    RatFun rebuild(F f) const {
        RatFun r(f(num_));
        for (auto& [a, e] : den_) {
            MPoly g = f(a);
            if (g.is_zero()) throw degenerate_point("denominator vanishes after substitution");
            if (g.is_constant()) {
                r.num_ *= g.constant_term().pow(-e);
                continue;
            }
            Rat lc = g.leading().second;
            if (!lc.is_one()) {
                g *= lc.inv();
                r.num_ *= lc.pow(-e);
            }
            r.den_[g] += e;
        }
        if (r.num_.is_zero()) r.den_.clear();
        r.cancel();
        return r;
    }

    static RatFun combine(const RatFun& a, const RatFun& b, bool sub) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return sub ? -b : b;
        if (a.den_ == b.den_) {
            RatFun r(sub ? a.num_ - b.num_ : a.num_ + b.num_, a.den_);
            r.cancel();
            return r;
        }
        Den l = a.den_;
        for (auto& [f, e] : b.den_) l[f] = std::max(l[f], e);
        auto lift = [&](const RatFun& x) {
            MPoly n = x.num_;
            for (auto& [f, e] : l) {
                auto it = x.den_.find(f);
                int have = it == x.den_.end() ? 0 : it->second;
                if (e > have) n *= f.pow(e - have);
            }
            return n;
        };
        MPoly na = lift(a), nb = lift(b);
        RatFun r(sub ? na - nb : na + nb, std::move(l));
        r.cancel();
        return r;
    }

    void cancel() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            while (it->second > 0) {
                auto q = num_.divide(it->first);
                if (!q) break;
                num_ = std::move(*q);
                --it->second;
            }
            it = it->second == 0 ? den_.erase(it) : std::next(it);
        }
    }

    // split p into content * product of monic atoms, trying known atoms and
    // the cheap linear candidates x, x-1, x-y first
    static std::pair<Rat, Den> atomize(const MPoly& p, const std::vector<MPoly>& hint) {
        Den out;
        if (p.is_constant()) return {p.constant_term(), out};
        const RegPtr& r = p.reg();
        std::vector<MPoly> cands = hint;
        std::vector<int> used;
        for (int v = 0; v < r->size(); ++v)
            if (p.uses(v)) used.push_back(v);
        for (int v : used) {
            cands.push_back(MPoly::var(r, v));
            cands.push_back(MPoly::var(r, v) - MPoly(r, Rat(1)));
        }
        for (std::size_t i = 0; i < used.size(); ++i)
            for (std::size_t j = i + 1; j < used.size(); ++j)
                cands.push_back(MPoly::var(r, used[i]) - MPoly::var(r, used[j]));
        MPoly rest = p;
        for (auto& c : cands) {
            if (rest.is_constant()) break;
            while (!rest.is_constant()) {
                auto q = rest.divide(c);
                if (!q) break;
                out[c] += 1;
                rest = std::move(*q);
            }
        }
        if (rest.is_constant()) return {rest.constant_term(), out};
        Rat lc = rest.leading().second;
        out[rest * lc.inv()] += 1;
        return {lc, out};
    }

    MPoly num_;
    Den den_;
};

inline RatFun rf_var(const RegPtr& r, const std::string& n) { return RatFun(MPoly::var(r, n)); }
inline RatFun rf_const(const RegPtr& r, const Rat& c) { return RatFun(r, c); }

} // namespace qcp
