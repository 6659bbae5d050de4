#pragma once

#include <string>

#include "qcp/check.hpp"
#include "qcp/family.hpp"
#include "qcp/nc_expr.hpp"

namespace qcp {

// coefficient variables of the matrix Hamiltonians
inline RegPtr weyl_registry() {
    static RegPtr r = make_registry({"t", "hbar", "theta", "theta0", "theta1", "theta2", "thetat", "k"});
    return r;
}

// the symmetrized quantum Hamiltonians, each multiplied by the same left factor
// (1, t or t(t-1)) as it is usually written
inline std::string hamiltonian_source(Family f) {
    switch (f) {
    case Family::I: return "Tr(p^2/2 - q^3/2 - t*q/4)";
    case Family::II: return "Tr(p^2/2 - (q^2 + t/2)^2/2 - theta*q)";
    case Family::III:
        return "Tr((p^2*q^2 + q^2*p^2)/2 - (q^2*p + p*q^2)/2 - (theta0 - theta1)*q*p + t*p - theta1*q)";
    case Family::IV: return "Tr(p*q*p - (p*q^2 + q^2*p)/2 - t*p*q + theta0*p - (theta0 + theta1)*q)";
    case Family::V:
        return "Tr((p^2*q^2 + q^2*p^2)/2 - (p^2*q + q*p^2)/2 + t*(p*q^2 + q^2*p)/2"
               " + (theta0 - theta2 - t)*p*q + theta2*p + (theta0 + theta1)*t*q)";
    case Family::VI:
        return "Tr(q*p*q*p*q - t*p*q^2*p + t*p*q*p - (p*q*p*q + q*p*q*p)/2 - theta*q*p*q"
               " + t*(theta0 + theta1)*p*q + (theta0 + thetat)*p*q - theta0*t*p - (k^2 - theta^2)/4*q)";
    }
    throw usage_error("unknown family");
}

// t(t-1) times the right-hand sides of the PVI evolution qdot = A, pdot = B
inline const char* pvi_A_source() {
    return "-theta0*t + (theta0 + thetat)*q + (theta0 + theta1)*t*q - theta*q^2 - 2*q*p*q"
           " + t*(p*q + q*p) - (t*p*q^2 + q^2*t*p) + (q*p*q*q + q*q*p*q)";
}
inline const char* pvi_B_source() {
    return "(k^2 - theta^2)/4 - (theta0 + thetat)*p - (theta0 + theta1)*t*p + theta*(q*p + p*q)"
           " - t*p^2 + t*(q*p^2 + p^2*q) + p*(2*q - q^2)*p - (q*p*q*p + p*q*p*q)";
}

// theta -> theta0 + theta1 + thetat where the sum is meant
template <class C>
C tie_theta(const C& c) {
    const auto& r = c.reg();
    MPoly sum = MPoly::var(r, "theta0") + MPoly::var(r, "theta1") + MPoly::var(r, "thetat");
    return c.compose(r->index("theta"), sum);
}

inline NCPoly<MPoly> build_quantum_hamiltonian(Family f, const AlgPtr<MPoly>& a) {
    auto h = parse_nc_scalar(a, hamiltonian_source(f));
    if (f == Family::VI) h = h.map_coeffs([](const MPoly& c) { return tie_theta(c); });
    return normal_order(h);
}

inline Checks trace_identities_check(int N) {
    auto a = weyl_algebra(N, weyl_registry());
    auto T = [&](const std::string& s) { return parse_nc_scalar(a, s); };
    struct Item {
        const char* id;
        const char* lhs;
        const char* rhs;
    };
    const Item items[] = {
        {"trace.pq", "Tr(p*q)", "Tr(q*p) + hbar*N^2"},
        {"trace.pqp", "Tr(p*q*p)", "Tr(q*p^2) + hbar*N*Tr(p)"},
        {"trace.qpq", "Tr(q*p*q)", "Tr(q^2*p) + hbar*N*Tr(q)"},
        {"trace.pq2", "Tr(p*q^2)", "Tr(q^2*p) + 2*hbar*N*Tr(q)"},
        {"trace.p2q2", "Tr(p^2*q^2)",
         "Tr(q^2*p^2) + 2*hbar*N*Tr(q*p) + 2*hbar*Tr(q)*Tr(p) + hbar^2*N*(1 + N^2)"},
    };
    Checks out;
    for (auto& it : items) {
        auto d = normal_order(T(it.lhs) - T(it.rhs));
        Check c;
        c.id = std::string("weyl.") + it.id + ".N" + std::to_string(N);
        c.anchor = std::string(it.lhs) + " = " + it.rhs;
        c.pass = d.is_zero();
        c.residual = d.is_zero() ? "0" : d.str();
        out.push_back(c);
    }
    return out;
}

inline Checks worked_commutator_check(int N) {
    auto a = weyl_algebra(N, weyl_registry());
    Checks out;
    auto M = [&](const std::string& s) { return parse_nc_matrix(a, s); };
    auto diff_zero = [](const NCMatrix<MPoly>& m) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!normal_order(m(i, j)).is_zero()) return false;
        return true;
    };
    auto residual = [&](const NCMatrix<MPoly>& m) {
        auto x = normal_order(m(0, 0));
        return x.is_zero() ? std::string("0") : "entry (1,1): " + x.str();
    };
    {
        // the printed closing step; exact only for N = 1
        auto d = M("[p, Tr(p*q*p*q)] - 2*hbar*p*q*p - hbar^2*p");
        out.push_back({"weyl.example.quantum.N" + std::to_string(N), "[p, Tr(pqpq)] = 2 hbar pqp + hbar^2 p",
                       diff_zero(d), residual(d), "entrywise [p_ij, H]"});
    }
    {
        auto d = M("[p, Tr(p*q*p*q)] - 2*hbar*p*q*p - N*hbar^2*p");
        out.push_back({"weyl.example.quantum.general_N.N" + std::to_string(N),
                       "[p, Tr(pqpq)] = 2 hbar pqp + N hbar^2 p", diff_zero(d), residual(d),
                       "diagnostic: p^2 q = pqp + N hbar p for N x N matrices"});
    }
    {
        auto d = M("[p, Tr(p*q*p*q + q*p*q*p)/2] - 2*hbar*p*q*p");
        out.push_back({"weyl.example.symmetrized.N" + std::to_string(N),
                       "[p, Tr(pqpq + qpqp)/2] = 2 hbar pqp", diff_zero(d), diff_zero(d) ? "0" : "nonzero", ""});
    }
    {
        auto H = parse_nc_scalar(a, "Tr(p*q*p*q)");
        auto P = NCMatrix<MPoly>::p_matrix(a);
        auto want = M("2*p*q*p");
        bool ok = true;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                auto d = classical_bracket(P(i, j), H) - commutative_image(want(i, j));
                if (!commutative_image(d).is_zero()) ok = false;
            }
        out.push_back({"weyl.example.classical.N" + std::to_string(N), "{p, Tr(pqpq)} = 2pqp", ok, ok ? "0" : "nonzero",
                       "commuting letters, {p_ab, q_cd} = delta_ad delta_bc"});
    }
    return out;
}

// hbar*qdot = [H, q]: the sign for which [t(t-1)H, q] = hbar t(t-1) A
inline Checks eom_pvi_check(int N) {
    auto a = weyl_algebra(N, weyl_registry());
    auto tie = [](const NCMatrix<MPoly>& m) {
        return m.map([](const NCPoly<MPoly>& x) { return x.map_coeffs([](const MPoly& c) { return tie_theta(c); }); });
    };
    auto H = build_quantum_hamiltonian(Family::VI, a);
    auto A = tie(parse_nc_matrix(a, pvi_A_source()));
    auto B = tie(parse_nc_matrix(a, pvi_B_source()));
    auto Q = NCMatrix<MPoly>::q_matrix(a), P = NCMatrix<MPoly>::p_matrix(a);
    const MPoly& hb = a->hbar;
    Checks out;
    auto run = [&](const char* id, const char* anchor, const NCMatrix<MPoly>& X, const NCMatrix<MPoly>& want) {
        auto lhs = commutator(H, X);
        std::string first;
        bool ok = true, flipped = true;
        for (int i = 0; i < N && ok; ++i)
            for (int j = 0; j < N; ++j) {
                auto w = normal_order(hb * want(i, j));
                auto d = lhs(i, j) - w;
                if (!d.is_zero()) {
                    ok = false;
                    first = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): first differing word " +
                            d.word_str(d.terms().begin()->first);
                    break;
                }
            }
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (!(lhs(i, j) + normal_order(hb * want(i, j))).is_zero()) flipped = false;
        Check c{std::string(id) + ".N" + std::to_string(N), anchor, ok, ok ? "0" : first,
                "convention hbar*xdot = [H, x]"};
        if (!ok && flipped) c.note = "holds with the opposite commutator sign";
        out.push_back(c);
    };
    run("eom.pvi.q", "[t(t-1)H_VI, q] = hbar t(t-1) A(q,p)", Q, A);
    run("eom.pvi.p", "[t(t-1)H_VI, p] = hbar t(t-1) B(q,p)", P, B);
    return out;
}

inline RegPtr lax_registry() {
    static RegPtr r = make_registry({"zeta", "t", "theta", "theta0", "theta1", "thetat", "k"});
    return r;
}

struct LaxPairPVI {
    AlgPtr<RatFun> alg;
    NCMatrix<RatFun> A0, A1, At, B;
    NCPoly<RatFun> Adot, Bdot; // qdot, pdot
};

inline LaxPairPVI build_lax_pvi() {
    auto a = free_algebra<RatFun>(lax_registry());
    auto tie = [](const NCPoly<RatFun>& x) { return x.map_coeffs([](const RatFun& c) { return tie_theta(c); }); };
    auto S = [&](const std::string& s) { return tie(parse_nc_scalar(a, s)); };
    auto blk = [&](const char* a11, const char* a12, const char* a21, const char* a22) {
        NCMatrix<RatFun> m(a, 2, 2);
        m(0, 0) = S(a11);
        m(0, 1) = S(a12);
        m(1, 0) = S(a21);
        m(1, 1) = S(a22);
        return m;
    };
    LaxPairPVI L;
    L.alg = a;
    L.A0 = blk("-1 - thetat", "q/t - 1", "0", "0");
    L.A1 = blk("-q*p + (k + theta)/2", "1", "(theta - q*p)*q*p + (k^2 - theta^2)/4", "q*p + (k - theta)/2");
    L.At = blk("q*p - theta0", "-q/t", "t*(-theta0 + p*q)*p", "-p*q");
    L.B = blk("(t*(q*p + p*q - theta0) + theta*q - (q*p*q + q*q*p))/(t*(t - 1))", "0", "-theta0*p + p*q*p", "0");
    L.Adot = S(std::string("(") + pvi_A_source() + ")/(t*(t - 1))");
    L.Bdot = S(std::string("(") + pvi_B_source() + ")/(t*(t - 1))");
    return L;
}

namespace detail {

// d/dt with explicit t in the coefficients and q -> qdot, p -> pdot
inline NCPoly<RatFun> time_derivative(const NCPoly<RatFun>& x, const LaxPairPVI& L) {
    int tv = L.alg->reg->index("t");
    NCPoly<RatFun> r(L.alg);
    for (auto& [w, c] : x.terms()) {
        auto dc = c.partial(tv);
        if (!dc.is_zero()) r.add_term(w, dc);
        for (std::size_t i = 0; i < w.size(); ++i) {
            NCPoly<RatFun> pre(L.alg, c), post(L.alg, RatFun(L.alg->reg, Rat(1)));
            for (std::size_t k = 0; k < i; ++k) pre = pre * NCPoly<RatFun>::letter(L.alg, w[k]);
            for (std::size_t k = i + 1; k < w.size(); ++k) post = post * NCPoly<RatFun>::letter(L.alg, w[k]);
            r += pre * (is_p(w[i]) ? L.Bdot : L.Adot) * post;
        }
    }
    return r;
}

} // namespace detail

inline Checks zero_curvature_pvi_check() {
    auto L = build_lax_pvi();
    const auto& r = L.alg->reg;
    RatFun zeta = rf_var(r, "zeta"), t = rf_var(r, "t"), one(r, Rat(1));
    auto Am = one / zeta * L.A0 + one / (zeta - one) * L.A1 + one / (zeta - t) * L.At;
    auto Bm = -(one / (zeta - t) * L.At + L.B);
    int zv = r->index("zeta");
    auto dA = Am.map([&](const NCPoly<RatFun>& x) { return detail::time_derivative(x, L); });
    auto dB = Bm.map([&](const NCPoly<RatFun>& x) { return x.map_coeffs([&](const RatFun& c) { return c.partial(zv); }); });
    auto R = dA - dB + (Am * Bm - Bm * Am);
    Checks out;
    bool ok = true;
    std::string where;
    for (int i = 0; i < 2 && ok; ++i)
        for (int j = 0; j < 2; ++j)
            if (!R(i, j).is_zero()) {
                ok = false;
                auto& [w, c] = *R(i, j).terms().begin();
                where = "block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") word " +
                        R(i, j).word_str(w) + " coefficient " + c.str();
                break;
            }
    out.push_back({"zero_curvature.pvi", "dA/dt - dB/dzeta + [A, B] = 0", ok, ok ? "0" : where,
                   "free algebra in P, Q; qdot, pdot substituted"});

    // residues of A at 0, 1, t and of B at t
    auto residue = [&](const NCMatrix<RatFun>& M, const RatFun& factor, const Rat& at, bool at_t) {
        return M.map([&](const NCPoly<RatFun>& x) {
            return x.map_coeffs([&](const RatFun& c) {
                RatFun g = c * factor;
                if (at_t) return g.compose(zv, MPoly::var(r, "t"));
                return g.subs({{zv, at}});
            });
        });
    };
    auto same = [](const NCMatrix<RatFun>& x, const NCMatrix<RatFun>& y) {
        auto d = x - y;
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j)
                if (!d(i, j).is_zero()) return false;
        return true;
    };
    bool res = same(residue(Am, zeta, Rat(0), false), L.A0) && same(residue(Am, zeta - one, Rat(1), false), L.A1) &&
               same(residue(Am, zeta - t, Rat(0), true), L.At) && same(residue(Bm, zeta - t, Rat(0), true), -L.At);
    out.push_back({"zero_curvature.residues", "Res A = A0, A1, At; Res B = -At", res, res ? "0" : "mismatch", ""});
    return out;
}

} // namespace qcp
