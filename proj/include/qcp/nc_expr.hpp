#pragma once

#include <cctype>
#include <string>

#include "qcp/ncpoly.hpp"

namespace qcp {

// Small expression language over the Weyl (or free) algebra:
//   Tr(p*q*p*q), [H, q], p[1][2], (q^2 + t/2)^2, hbar*N
// p, q are the momentum/position matrices (plain letters P, Q in free mode).
// Any other identifier must be a coefficient variable.
template <class C>
class NCValue {
public:
    bool is_matrix = false;
    NCPoly<C> s;
    NCMatrix<C> m;

    static NCValue of(NCPoly<C> x) {
        NCValue v;
        v.s = std::move(x);
        return v;
    }
    static NCValue of(NCMatrix<C> x) {
        NCValue v;
        v.is_matrix = true;
        v.m = std::move(x);
        return v;
    }
};

template <class C>
class NCExprParser {
public:
    NCExprParser(AlgPtr<C> a, std::string src) : a_(std::move(a)), s_(std::move(src)) {}

    NCValue<C> run() {
        auto v = expr();
        skip();
        if (i_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    using V = NCValue<C>;

    NCMatrix<C> promote(const V& v) const {
        if (v.is_matrix) return v.m;
        return v.s * NCMatrix<C>::identity(a_, a_->N);
    }
    V add(const V& x, const V& y, bool sub) {
        if (!x.is_matrix && !y.is_matrix) return V::of(sub ? x.s - y.s : x.s + y.s);
        if (a_->mode == Mode::free) fail("matrices are not available in free mode");
        return V::of(sub ? promote(x) - promote(y) : promote(x) + promote(y));
    }
    V mul(const V& x, const V& y) {
        if (!x.is_matrix && !y.is_matrix) return V::of(x.s * y.s);
        if (!x.is_matrix) return V::of(x.s * y.m);
        if (!y.is_matrix) return V::of(x.m * y.s);
        return V::of(x.m * y.m);
    }
    V bracket(const V& x, const V& y) {
        auto d = add(mul(x, y), mul(y, x), true);
        if (a_->mode != Mode::weyl) return d;
        if (d.is_matrix) return V::of(normal_order(d.m));
        return V::of(normal_order(d.s));
    }

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
    [[noreturn]] void fail(const std::string& why) const {
        throw usage_error("cannot parse expression '" + s_ + "' at " + std::to_string(i_) + ": " + why);
    }
    long integer() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_ || i_ - b > 9) fail("expected integer");
        return std::stol(s_.substr(b, i_ - b));
    }

    V expr() {
        bool neg = eat('-');
        if (!neg) eat('+');
        V v = term();
        if (neg) v = mul(V::of(NCPoly<C>::scalar(a_, Rat(-1))), v);
        for (;;) {
            if (eat('+'))
                v = add(v, term(), false);
            else if (eat('-'))
                v = add(v, term(), true);
            else
                return v;
        }
    }
    V term() {
        V v = power();
        for (;;) {
            if (eat('*')) {
                v = mul(v, power());
            } else if (eat('/')) {
                V d = power();
                if (d.is_matrix || d.s.size() != 1 || !d.s.terms().begin()->first.empty())
                    fail("can only divide by a coefficient");
                auto inv = CoeffTraits<C>::inverse(d.s.terms().begin()->second);
                v = mul(V::of(NCPoly<C>(a_, inv)), v);
            } else {
                return v;
            }
        }
    }
    V power() {
        V v = atom();
        if (eat('^')) {
            long e = integer();
            if (e < 1) fail("exponent must be positive");
            V r = v;
            for (long k = 1; k < e; ++k) r = mul(r, v);
            return r;
        }
        return v;
    }
    V atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) return V::of(NCPoly<C>::scalar(a_, Rat(integer())));
        if (c == '(') {
            ++i_;
            V v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == '[') {
            ++i_;
            V x = expr();
            if (!eat(',')) fail("expected ','");
            V y = expr();
            if (!eat(']')) fail("expected ']'");
            return bracket(x, y);
        }
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') fail(std::string("unexpected '") + c + "'");
        std::size_t b = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        std::string id = s_.substr(b, i_ - b);
        if (id == "Tr") {
            if (!eat('(')) fail("expected '(' after Tr");
            V v = expr();
            if (!eat(')')) fail("expected ')'");
            if (!v.is_matrix) return mul(V::of(NCPoly<C>::scalar(a_, Rat(a_->N))), v);
            return V::of(v.m.trace());
        }
        if (id == "N") return V::of(NCPoly<C>::scalar(a_, Rat(a_->N)));
        if (id == "p" || id == "q" || id == "P" || id == "Q") {
            bool mom = id == "p" || id == "P";
            if (a_->mode == Mode::free)
                return V::of(NCPoly<C>::letter(a_, mom ? p_letter(0, 0) : q_letter(0, 0)));
            skip();
            if (i_ < s_.size() && s_[i_] == '[') {
                ++i_;
                long r = integer();
                if (!eat(']') || !eat('[')) fail("expected entry index");
                long k = integer();
                if (!eat(']')) fail("expected ']'");
                if (r < 1 || k < 1 || r > a_->N || k > a_->N) fail("entry index out of range");
                int i = int(r - 1), j = int(k - 1);
                return V::of(NCPoly<C>::letter(a_, mom ? p_letter(i, j) : q_letter(i, j)));
            }
            return V::of(mom ? NCMatrix<C>::p_matrix(a_) : NCMatrix<C>::q_matrix(a_));
        }
        if (a_->reg->find(id) < 0) fail("unknown symbol '" + id + "'");
        return V::of(NCPoly<C>(a_, CoeffTraits<C>::var(a_->reg, id)));
    }

    AlgPtr<C> a_;
    std::string s_;
    std::size_t i_ = 0;
};

template <class C>
NCValue<C> parse_nc(const AlgPtr<C>& a, const std::string& src) {
    return NCExprParser<C>(a, src).run();
}

template <class C>
NCPoly<C> parse_nc_scalar(const AlgPtr<C>& a, const std::string& src) {
    auto v = parse_nc(a, src);
    if (v.is_matrix) throw usage_error("expected a scalar expression: " + src);
    return v.s;
}

template <class C>
NCMatrix<C> parse_nc_matrix(const AlgPtr<C>& a, const std::string& src) {
    auto v = parse_nc(a, src);
    if (!v.is_matrix) return v.s * NCMatrix<C>::identity(a, a->N);
    return v.m;
}

} // namespace qcp
