#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qcp/ratfun.hpp"

namespace qcp {

enum class Mode { weyl, free };

// letter code: bit 8 = momentum, bits 4..7 row, bits 0..3 column (0-based).
// q-letters sort before p-letters, so a sorted word is a normal-ordered one.
using Word = std::u16string;

inline char16_t q_letter(int i, int j) { return char16_t((i << 4) | j); }
inline char16_t p_letter(int i, int j) { return char16_t(0x100 | (i << 4) | j); }
inline bool is_p(char16_t c) { return c & 0x100; }
inline int row_of(char16_t c) { return (c >> 4) & 0xf; }
inline int col_of(char16_t c) { return c & 0xf; }

// coefficient-ring glue for MPoly and RatFun
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<MPoly> {
    static MPoly constant(const RegPtr& r, const Rat& c) { return MPoly(r, c); }
    static MPoly var(const RegPtr& r, const std::string& n) { return MPoly::var(r, n); }
    static MPoly inverse(const MPoly& x) {
        if (!x.is_constant() || x.is_zero()) throw usage_error("division by a non-constant polynomial coefficient");
        return MPoly(x.reg(), x.constant_term().inv());
    }
    static std::string str(const MPoly& x) { return x.str(); }
};

template <>
struct CoeffTraits<RatFun> {
    static RatFun constant(const RegPtr& r, const Rat& c) { return RatFun(r, c); }
    static RatFun var(const RegPtr& r, const std::string& n) { return RatFun(MPoly::var(r, n)); }
    static RatFun inverse(const RatFun& x) { return x.inverse(); }
    static std::string str(const RatFun& x) { return x.str(); }
};

template <class C>
struct Algebra {
    Mode mode;
    int N;    // matrix size; 1 in free mode
    RegPtr reg; // coefficient variables
    C hbar;   // meaningful in weyl mode only
};

template <class C>
using AlgPtr = std::shared_ptr<const Algebra<C>>;

inline AlgPtr<MPoly> weyl_algebra(int N, const RegPtr& reg, const std::string& hbar_name = "hbar") {
    if (N < 1 || N > 4) throw usage_error("matrix size must be between 1 and 4");
    return std::make_shared<const Algebra<MPoly>>(Algebra<MPoly>{Mode::weyl, N, reg, MPoly::var(reg, hbar_name)});
}

template <class C>
AlgPtr<C> free_algebra(const RegPtr& reg) {
    return std::make_shared<const Algebra<C>>(Algebra<C>{Mode::free, 1, reg, CoeffTraits<C>::constant(reg, Rat(0))});
}

template <class C>
class NCPoly {
public:
    using Terms = std::map<Word, C>;

    NCPoly() = default;
    explicit NCPoly(AlgPtr<C> a) : alg_(std::move(a)) {}
    NCPoly(AlgPtr<C> a, const C& c) : alg_(std::move(a)) { add_term(Word(), c); }

    static NCPoly letter(const AlgPtr<C>& a, char16_t l) {
        NCPoly x(a);
        x.add_term(Word(1, l), CoeffTraits<C>::constant(a->reg, Rat(1)));
        return x;
    }
    static NCPoly scalar(const AlgPtr<C>& a, const Rat& c) { return NCPoly(a, CoeffTraits<C>::constant(a->reg, c)); }

    const AlgPtr<C>& alg() const { return alg_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    void add_term(const Word& w, const C& c) {
        if (c.is_zero()) return;
        auto it = t_.find(w);
        if (it == t_.end()) {
            t_.emplace(w, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }

    NCPoly operator-() const {
        NCPoly r(alg_);
        for (auto& [w, c] : t_) r.t_.emplace(w, -c);
        return r;
    }
    NCPoly& operator+=(const NCPoly& o) {
        check(o);
        for (auto& [w, c] : o.t_) add_term(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        check(o);
        for (auto& [w, c] : o.t_) add_term(w, -c);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    // coefficients commute with every letter
    friend NCPoly operator*(const C& s, const NCPoly& a) {
        NCPoly r(a.alg_);
        for (auto& [w, c] : a.t_) r.add_term(w, s * c);
        return r;
    }
    friend NCPoly operator*(const NCPoly& a, const Rat& s) {
        NCPoly r(a.alg_);
        for (auto& [w, c] : a.t_) r.add_term(w, c * s);
        return r;
    }
    // plain concatenation; no reordering in either mode
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        a.check(b);
        NCPoly r(a.alg_);
        for (auto& [wa, ca] : a.t_)
            for (auto& [wb, cb] : b.t_) r.add_term(wa + wb, ca * cb);
        return r;
    }

    // map coefficients (e.g. substitute parameter values)
    template <class F>
    NCPoly map_coeffs(F f) const {
        NCPoly r(alg_);
        for (auto& [w, c] : t_) r.add_term(w, f(c));
        return r;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto& [w, c] : t_) {
            if (!s.empty()) s += " + ";
            s += "(" + CoeffTraits<C>::str(c) + ")";
            if (!w.empty()) s += "*" + word_str(w);
        }
        return s;
    }
    std::string word_str(const Word& w) const {
        std::string s;
        for (char16_t l : w) {
            if (!s.empty()) s += "*";
            if (alg_->mode == Mode::free) {
                s += is_p(l) ? "P" : "Q";
            } else {
                s += is_p(l) ? "p" : "q";
                s += std::to_string(row_of(l) + 1) + std::to_string(col_of(l) + 1);
            }
        }
        return s;
    }

private:
    void check(const NCPoly& o) const {
        if (alg_ && o.alg_ && alg_ != o.alg_ && (alg_->N != o.alg_->N || alg_->mode != o.alg_->mode))
            throw usage_error("noncommutative polynomials over different algebras");
    }

    AlgPtr<C> alg_;
    Terms t_;
};

namespace detail {

// right-multiply a normal-ordered monomial by one letter:
// (Q P) q_kl = (Q q_kl) P + hbar * #p_lk * Q (P / p_lk)
template <class C>
void push_letter(std::map<Word, C>& out, const Word& m, const C& c, char16_t l, const C& hbar) {
    auto add = [&](const Word& w, const C& k) {
        if (k.is_zero()) return;
        auto it = out.find(w);
        if (it == out.end()) {
            out.emplace(w, k);
            return;
        }
        it->second = it->second + k;
        if (it->second.is_zero()) out.erase(it);
    };
    Word w = m;
    w.insert(std::upper_bound(w.begin(), w.end(), l), l);
    add(w, c);
    if (is_p(l)) return;
    char16_t partner = p_letter(col_of(l), row_of(l));
    auto lo = std::lower_bound(m.begin(), m.end(), partner);
    auto hi = std::upper_bound(m.begin(), m.end(), partner);
    long n = long(hi - lo);
    if (!n) return;
    Word rest = m;
    rest.erase(std::size_t(lo - m.begin()), 1);
    add(rest, (hbar * c) * Rat(n));
}

} // namespace detail

template <class C>
NCPoly<C> normal_order(const NCPoly<C>& x) {
    const auto& a = x.alg();
    if (!a) return x;
    if (a->mode != Mode::weyl) throw unsupported_mode("normal ordering needs the Weyl algebra");
    NCPoly<C> r(a);
    for (auto& [w, c] : x.terms()) {
        std::map<Word, C> cur{{Word(), c}};
        for (char16_t l : w) {
            std::map<Word, C> nxt;
            for (auto& [m, k] : cur) detail::push_letter(nxt, m, k, l, a->hbar);
            cur.swap(nxt);
        }
        for (auto& [m, k] : cur) r.add_term(m, k);
    }
    return r;
}

// normal-ordered product of normal-ordered inputs
template <class C>
NCPoly<C> mul_normal(const NCPoly<C>& x, const NCPoly<C>& y) {
    return normal_order(x * y);
}

template <class C>
NCPoly<C> commutator(const NCPoly<C>& x, const NCPoly<C>& y) {
    if (x.alg() && x.alg()->mode == Mode::weyl) return normal_order(x * y - y * x);
    return x * y - y * x;
}

template <class C>
bool nc_equal(const NCPoly<C>& x, const NCPoly<C>& y) {
    auto d = x - y;
    if (d.alg() && d.alg()->mode == Mode::weyl) d = normal_order(d);
    return d.is_zero();
}

// commuting image: letters sorted, no correction terms
template <class C>
NCPoly<C> commutative_image(const NCPoly<C>& x) {
    NCPoly<C> r(x.alg());
    for (auto& [w, c] : x.terms()) {
        Word s = w;
        std::sort(s.begin(), s.end());
        r.add_term(s, c);
    }
    return r;
}

// derivative of a commutative (sorted-word) polynomial in one letter
template <class C>
NCPoly<C> letter_partial(const NCPoly<C>& x, char16_t l) {
    NCPoly<C> r(x.alg());
    for (auto& [w, c] : x.terms()) {
        auto lo = std::lower_bound(w.begin(), w.end(), l);
        auto hi = std::upper_bound(w.begin(), w.end(), l);
        long n = long(hi - lo);
        if (!n) continue;
        Word s = w;
        s.erase(std::size_t(lo - w.begin()), 1);
        r.add_term(s, c * Rat(n));
    }
    return r;
}

// {F,G} = sum_ab dF/dp_ab dG/dq_ba - dF/dq_ba dG/dp_ab on commutative images
template <class C>
NCPoly<C> classical_bracket(const NCPoly<C>& f, const NCPoly<C>& g) {
    int N = f.alg()->N;
    auto F = commutative_image(f), G = commutative_image(g);
    NCPoly<C> r(f.alg());
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            auto fp = letter_partial(F, p_letter(a, b)), gq = letter_partial(G, q_letter(b, a));
            auto fq = letter_partial(F, q_letter(b, a)), gp = letter_partial(G, p_letter(a, b));
            if (!fp.is_zero() && !gq.is_zero()) r += commutative_image(fp * gq);
            if (!fq.is_zero() && !gp.is_zero()) r -= commutative_image(fq * gp);
        }
    return r;
}

template <class C>
class NCMatrix {
public:
    NCMatrix() = default;
    NCMatrix(AlgPtr<C> a, int rows, int cols) : alg_(a), r_(rows), c_(cols), e_(std::size_t(rows * cols), NCPoly<C>(a)) {}

    static NCMatrix identity(const AlgPtr<C>& a, int n) {
        NCMatrix m(a, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = NCPoly<C>::scalar(a, Rat(1));
        return m;
    }
    static NCMatrix q_matrix(const AlgPtr<C>& a) {
        int n = a->N;
        NCMatrix m(a, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = NCPoly<C>::letter(a, q_letter(i, j));
        return m;
    }
    static NCMatrix p_matrix(const AlgPtr<C>& a) {
        int n = a->N;
        NCMatrix m(a, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = NCPoly<C>::letter(a, p_letter(i, j));
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    const AlgPtr<C>& alg() const { return alg_; }
    NCPoly<C>& operator()(int i, int j) { return e_.at(std::size_t(i * c_ + j)); }
    const NCPoly<C>& operator()(int i, int j) const { return e_.at(std::size_t(i * c_ + j)); }

    NCMatrix& operator+=(const NCMatrix& o) {
        same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    NCMatrix& operator-=(const NCMatrix& o) {
        same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    friend NCMatrix operator+(NCMatrix a, const NCMatrix& b) { return a += b; }
    friend NCMatrix operator-(NCMatrix a, const NCMatrix& b) { return a -= b; }
    NCMatrix operator-() const {
        NCMatrix r(*this);
        for (auto& x : r.e_) x = -x;
        return r;
    }
    friend NCMatrix operator*(const NCMatrix& a, const NCMatrix& b) {
        if (a.c_ != b.r_) throw usage_error("matrix size mismatch");
        NCMatrix r(a.alg_, a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < b.c_; ++j)
                for (int k = 0; k < a.c_; ++k) r(i, j) += a(i, k) * b(k, j);
        return r;
    }
    // scalar element times matrix, scalar kept on the left
    friend NCMatrix operator*(const NCPoly<C>& s, const NCMatrix& m) {
        NCMatrix r(m.alg_, m.r_, m.c_);
        for (std::size_t k = 0; k < m.e_.size(); ++k) r.e_[k] = s * m.e_[k];
        return r;
    }
    friend NCMatrix operator*(const NCMatrix& m, const NCPoly<C>& s) {
        NCMatrix r(m.alg_, m.r_, m.c_);
        for (std::size_t k = 0; k < m.e_.size(); ++k) r.e_[k] = m.e_[k] * s;
        return r;
    }
    friend NCMatrix operator*(const C& s, const NCMatrix& m) {
        NCMatrix r(m.alg_, m.r_, m.c_);
        for (std::size_t k = 0; k < m.e_.size(); ++k) r.e_[k] = s * m.e_[k];
        return r;
    }

    NCPoly<C> trace() const {
        if (r_ != c_) throw usage_error("trace of a non-square matrix");
        NCPoly<C> s(alg_);
        for (int i = 0; i < r_; ++i) s += (*this)(i, i);
        return s;
    }

    template <class F>
    NCMatrix map(F f) const {
        NCMatrix r(alg_, r_, c_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f(e_[k]);
        return r;
    }

    // block matrix from blocks[i][j], all blocks same size
    static NCMatrix blocks(const std::vector<std::vector<NCMatrix>>& b) {
        int br = b[0][0].r_, bc = b[0][0].c_;
        NCMatrix m(b[0][0].alg_, br * int(b.size()), bc * int(b[0].size()));
        for (std::size_t I = 0; I < b.size(); ++I)
            for (std::size_t J = 0; J < b[I].size(); ++J)
                for (int i = 0; i < br; ++i)
                    for (int j = 0; j < bc; ++j) m(int(I) * br + i, int(J) * bc + j) = b[I][J](i, j);
        return m;
    }

private:
    void same_shape(const NCMatrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw usage_error("matrix size mismatch");
    }

    AlgPtr<C> alg_;
    int r_ = 0, c_ = 0;
    std::vector<NCPoly<C>> e_;
};

template <class C>
NCMatrix<C> normal_order(const NCMatrix<C>& m) {
    return m.map([](const NCPoly<C>& x) { return normal_order(x); });
}

// entrywise [h, X]
template <class C>
NCMatrix<C> commutator(const NCPoly<C>& h, const NCMatrix<C>& x) {
    if (h.alg() && x.alg() && h.alg()->N != x.alg()->N) throw usage_error("matrix size mismatch in commutator");
    return x.map([&](const NCPoly<C>& e) { return commutator(h, e); });
}

} // namespace qcp
