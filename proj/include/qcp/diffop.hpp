#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcp/ratfun.hpp"

namespace qcp {

// z1..zN, t
inline RegPtr diffop_registry(int N) {
    if (N < 1 || N > 8) throw usage_error("N must be between 1 and 8");
    static RegPtr cache[9];
    if (!cache[N]) {
        std::vector<std::string> n;
        for (int i = 1; i <= N; ++i) n.push_back("z" + std::to_string(i));
        n.push_back("t");
        cache[N] = make_registry(n);
    }
    return cache[N];
}

// sum_rho A_rho d_rho^2 + sum_rho B_rho d_rho + C
// `left` is the t-factor the operator is written with (1, t, t(t-1)); it only
// matters for the Schroedinger equation left * hbar d_t Phi = op Phi.
class DiffOp {
public:
    int N = 0;
    RegPtr reg;
    std::vector<RatFun> A, B;
    RatFun C;
    MPoly left;

    DiffOp() = default;
    explicit DiffOp(int n) : N(n), reg(diffop_registry(n)), A(n, RatFun(reg)), B(n, RatFun(reg)), C(reg), left(reg, Rat(1)) {}

    int t_index() const { return N; }
    RatFun z(int rho) const { return RatFun(MPoly::var(reg, rho)); }
    RatFun t() const { return RatFun(MPoly::var(reg, N)); }
    RatFun cst(const Rat& c) const { return RatFun(reg, c); }

    bool is_zero() const {
        if (!C.is_zero()) return false;
        for (int r = 0; r < N; ++r)
            if (!A[r].is_zero() || !B[r].is_zero()) return false;
        return true;
    }
    bool is_multiplication() const {
        for (int r = 0; r < N; ++r)
            if (!A[r].is_zero() || !B[r].is_zero()) return false;
        return true;
    }

    friend DiffOp operator+(DiffOp a, const DiffOp& b) {
        same(a, b);
        for (int r = 0; r < a.N; ++r) {
            a.A[r] += b.A[r];
            a.B[r] += b.B[r];
        }
        a.C += b.C;
        return a;
    }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) {
        same(a, b);
        for (int r = 0; r < a.N; ++r) {
            a.A[r] -= b.A[r];
            a.B[r] -= b.B[r];
        }
        a.C -= b.C;
        return a;
    }
    // multiplication operator composed on the left
    friend DiffOp operator*(const RatFun& f, DiffOp a) {
        for (int r = 0; r < a.N; ++r) {
            a.A[r] *= f;
            a.B[r] *= f;
        }
        a.C *= f;
        return a;
    }

    std::string str() const {
        std::string s;
        auto add = [&](const std::string& what, const RatFun& c) {
            if (c.is_zero()) return;
            s += (s.empty() ? "" : "\n") + what + ": " + c.str();
        };
        for (int r = 0; r < N; ++r) add("A" + std::to_string(r + 1), A[r]);
        for (int r = 0; r < N; ++r) add("B" + std::to_string(r + 1), B[r]);
        add("C", C);
        if (s.empty()) s = "0";
        if (!(left == MPoly(reg, Rat(1)))) s = "left factor: " + left.str() + "\n" + s;
        return s;
    }

private:
    static void same(const DiffOp& a, const DiffOp& b) {
        if (a.N != b.N) throw usage_error("operators act on different numbers of variables");
    }
};

// f(z_rho) from a one-site function written in z1 (and t)
inline RatFun at_site(const RatFun& f, int rho) {
    if (rho == 0) return f;
    int n = f.reg()->size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::swap(perm[0], perm[rho]);
    return f.permute(perm);
}

// Term list read off the printed Hamiltonians. One-site functions f are given
// in the variable z1 (and t). All pair sums run over ordered pairs rho != sigma.
struct Term {
    enum class Kind {
        second,             // sum f(z_r) d_r^2
        first,              // sum f(z_r) d_r
        mult,               // sum f(z_r)
        divided_difference, // sum (f(z_r) d_r - f(z_s) d_s) / (z_r - z_s)
        calogero_single,    // sum f(z_r) / (z_r - z_s)^2
        calogero_pair,      // sum (f(z_r) + f(z_s)) / (z_r - z_s)^2
        plain_second,       // f d_site^2, f arbitrary
        plain_first,        // f d_site
        plain_mult          // f
    };
    Kind kind;
    RatFun f;
    int site = 0;
};
using TermSpec = std::vector<Term>;

inline DiffOp canonicalize(int N, const TermSpec& terms) {
    DiffOp op(N);
    for (auto& tm : terms) {
        if (!same_registry(tm.f.reg(), op.reg)) throw usage_error("term built over a different registry");
        bool one_site = tm.kind < Term::Kind::plain_second;
        if (one_site)
            for (int v = 1; v < N; ++v)
                if (tm.f.uses(v)) throw usage_error("one-site term may only use z1 and t");
        switch (tm.kind) {
        case Term::Kind::second:
            for (int r = 0; r < N; ++r) op.A[r] += at_site(tm.f, r);
            break;
        case Term::Kind::first:
            for (int r = 0; r < N; ++r) op.B[r] += at_site(tm.f, r);
            break;
        case Term::Kind::mult:
            for (int r = 0; r < N; ++r) op.C += at_site(tm.f, r);
            break;
        case Term::Kind::divided_difference:
            for (int r = 0; r < N; ++r) {
                RatFun w(op.reg);
                for (int s = 0; s < N; ++s)
                    if (s != r) w += (op.z(r) - op.z(s)).inverse();
                op.B[r] += Rat(2) * at_site(tm.f, r) * w;
            }
            break;
        case Term::Kind::calogero_single:
        case Term::Kind::calogero_pair:
            for (int r = 0; r < N; ++r)
                for (int s = 0; s < N; ++s) {
                    if (r == s) continue;
                    RatFun num = at_site(tm.f, r);
                    if (tm.kind == Term::Kind::calogero_pair) num += at_site(tm.f, s);
                    op.C += num * (op.z(r) - op.z(s)).pow(-2);
                }
            break;
        case Term::Kind::plain_second:
        case Term::Kind::plain_first:
            if (tm.site < 0 || tm.site >= N) throw usage_error("term site out of range");
            (tm.kind == Term::Kind::plain_second ? op.A : op.B)[tm.site] += tm.f;
            break;
        case Term::Kind::plain_mult:
            op.C += tm.f;
            break;
        }
    }
    return op;
}

inline bool is_symmetric_in_z(const MPoly& f, int N) {
    int n = f.reg()->size();
    for (int r = 1; r < N; ++r) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::swap(perm[0], perm[r]);
        if (!(f.permute(perm) == f)) return false;
    }
    return true;
}

// op f; with expect_polynomial the result must divide out exactly
inline RatFun apply(const DiffOp& op, const MPoly& f, bool expect_polynomial = false) {
    if (!same_registry(f.reg(), op.reg)) throw usage_error("function built over a different registry");
    if (!is_symmetric_in_z(f, op.N)) throw domain_error("apply: input is not symmetric in z");
    RatFun out = op.C * RatFun(f);
    for (int r = 0; r < op.N; ++r) {
        MPoly d1 = f.partial(r);
        if (!op.B[r].is_zero()) out += op.B[r] * RatFun(d1);
        if (!op.A[r].is_zero()) out += op.A[r] * RatFun(d1.partial(r));
    }
    if (expect_polynomial) return RatFun(out.as_polynomial());
    return out;
}

// op' = e^{-G} op e^{G} where d_r G = g_r: d_r -> d_r + g_r
inline DiffOp conjugate_by_logderivative(const DiffOp& op, const std::vector<RatFun>& g) {
    DiffOp out = op;
    for (int r = 0; r < op.N; ++r) {
        if (g[r].is_zero()) continue;
        out.B[r] += Rat(2) * op.A[r] * g[r];
        out.C += op.A[r] * (g[r] * g[r] + g[r].partial(r)) + op.B[r] * g[r];
    }
    return out;
}

// w_r = d_r log Delta = sum_{s != r} 1/(z_r - z_s)
inline std::vector<RatFun> vandermonde_logderivative(int N) {
    DiffOp z(N);
    std::vector<RatFun> w(N, RatFun(z.reg));
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s)
            if (s != r) w[r] += (z.z(r) - z.z(s)).inverse();
    return w;
}

// Delta^{-R} op Delta^{R}
inline DiffOp conjugate_by_vandermonde(const DiffOp& op, const Rat& R) {
    if (R.is_zero()) return op;
    auto w = vandermonde_logderivative(op.N);
    for (auto& x : w) x = R * x;
    return conjugate_by_logderivative(op, w);
}

// e^{S/hbar} op e^{-S/hbar} + left * d_t S, i.e. the operator seen by Phi
// when Psi = e^{-S/hbar} Phi solves left * hbar d_t Psi = op Psi
inline DiffOp gauge_scalar_conjugate(const DiffOp& op, const MPoly& S, const Rat& hbar) {
    if (hbar.is_zero()) throw usage_error("hbar must be nonzero");
    std::vector<RatFun> g(op.N, RatFun(op.reg));
    for (int r = 0; r < op.N; ++r) g[r] = RatFun(S.partial(r)) * (-hbar.inv());
    DiffOp out = conjugate_by_logderivative(op, g);
    out.C += RatFun(op.left * S.partial(op.t_index()));
    return out;
}

inline bool operator_equal(const DiffOp& a, const DiffOp& b) {
    if (a.N != b.N) throw usage_error("operator_equal: different N");
    for (int r = 0; r < a.N; ++r)
        if (!ratfun_equal(a.A[r], b.A[r]) || !ratfun_equal(a.B[r], b.B[r])) return false;
    return ratfun_equal(a.C, b.C);
}

// a zeroth-order operator alpha(t) + beta(t) * sum z_r
struct LinearShift {
    RatFun alpha, beta;
};

inline std::optional<LinearShift> as_linear_shift(const DiffOp& d) {
    if (!d.is_multiplication()) return std::nullopt;
    MPoly c;
    try {
        c = d.C.as_polynomial();
    } catch (const domain_error&) {
        return std::nullopt;
    }
    MPoly beta = c.partial(0);
    for (int r = 0; r < d.N; ++r) {
        if (beta.uses(r)) return std::nullopt;
        if (!(c.partial(r) == beta)) return std::nullopt;
    }
    MPoly sum(d.reg);
    for (int r = 0; r < d.N; ++r) sum += MPoly::var(d.reg, r);
    MPoly alpha = c - beta * sum;
    for (int r = 0; r < d.N; ++r)
        if (alpha.uses(r)) return std::nullopt;
    return LinearShift{RatFun(alpha), RatFun(beta)};
}

// first coefficient that differs, for reports
inline std::string describe_difference(const DiffOp& a, const DiffOp& b) {
    for (int r = 0; r < a.N; ++r) {
        auto d = a.A[r] - b.A[r];
        if (!d.is_zero()) return "A" + std::to_string(r + 1) + " differs by " + d.str();
    }
    for (int r = 0; r < a.N; ++r) {
        auto d = a.B[r] - b.B[r];
        if (!d.is_zero()) return "B" + std::to_string(r + 1) + " differs by " + d.str();
    }
    auto d = a.C - b.C;
    if (!d.is_zero()) return "C differs by " + d.str();
    return "0";
}

} // namespace qcp
