#pragma once

#include <random>
#include <string>
#include <vector>

#include "qcp/hamiltonians.hpp"
#include "qcp/weyl.hpp"

namespace qcp {

using RMat = std::vector<std::vector<Rat>>;

inline RMat rmat_identity(int n) {
    RMat m(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = Rat(1);
    return m;
}

inline RMat rmat_mul(const RMat& a, const RMat& b) {
    int n = int(a.size());
    RMat c(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// Gauss-Jordan; throws domain_error when singular
inline RMat rmat_inverse(RMat a) {
    int n = int(a.size());
    RMat inv = rmat_identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw domain_error("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat s = a[col][col].inv();
        for (int j = 0; j < n; ++j) {
            a[col][j] *= s;
            inv[col][j] *= s;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rat f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// Q = G Z G^{-1}: exact rational matrix with prescribed eigenvalues
struct RationalMatrixPoint {
    std::vector<Rat> z;
    RMat G, Q;

    RationalMatrixPoint(std::vector<Rat> diag, RMat g) : z(std::move(diag)), G(std::move(g)) {
        int n = int(z.size());
        if (int(G.size()) != n) throw usage_error("point: size mismatch");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (z[i] == z[j]) throw degenerate_point("eigenvalues must be pairwise distinct");
        RMat Z(n, std::vector<Rat>(n, Rat(0)));
        for (int i = 0; i < n; ++i) Z[i][i] = z[i];
        Q = rmat_mul(rmat_mul(G, Z), rmat_inverse(G));
    }
    int N() const { return int(z.size()); }
};

// polynomials in T_j = Tr(Q^j), j <= 6
inline RegPtr trace_registry() {
    static RegPtr r = make_registry({"T1", "T2", "T3", "T4", "T5", "T6"});
    return r;
}

// the symmetric polynomial in z obtained by T_j -> sum z^j
inline MPoly trace_poly_to_z(const MPoly& f, int N) {
    auto reg = diffop_registry(N);
    std::vector<MPoly> pj;
    for (int j = 1; j <= 6; ++j) {
        MPoly s(reg);
        for (int r = 0; r < N; ++r) s += MPoly::var(reg, r, j);
        pj.push_back(s);
    }
    MPoly out(reg);
    for (auto& [x, c] : f.terms()) {
        MPoly m(reg, c);
        for (int j = 0; j < 6; ++j)
            if (x[j]) m *= pj[j].pow(x[j]);
        out += m;
    }
    return out;
}

// first and second derivatives of Psi(Q) = f(Tr Q, Tr Q^2, ...) in the matrix entries
class TraceJet {
public:
    TraceJet(const MPoly& f, const RMat& Q) : n_(int(Q.size())) {
        pw_.push_back(rmat_identity(n_));
        for (int j = 1; j <= 6; ++j) pw_.push_back(rmat_mul(pw_.back(), Q));
        std::vector<Rat> T(6, Rat(0));
        for (int j = 1; j <= 6; ++j)
            for (int i = 0; i < n_; ++i) T[j - 1] += pw_[j][i][i];
        value_ = f.eval(T);
        for (int j = 0; j < 6; ++j) {
            MPoly fj = f.partial(j);
            f1_.push_back(fj.eval(T));
            std::vector<Rat> row;
            for (int l = 0; l < 6; ++l) row.push_back(fj.partial(l).eval(T));
            f2_.push_back(row);
        }
    }

    const Rat& value() const { return value_; }

    // d T_j / d q_ab = j (Q^{j-1})_ba
    Rat dT(int j, int a, int b) const { return Rat(j) * pw_[j - 1][b][a]; }

    Rat d1(int a, int b) const {
        Rat s(0);
        for (int j = 1; j <= 6; ++j)
            if (!f1_[j - 1].is_zero()) s += f1_[j - 1] * dT(j, a, b);
        return s;
    }

    Rat d2(int a, int b, int c, int d) const {
        Rat s(0);
        for (int j = 1; j <= 6; ++j) {
            for (int l = 1; l <= 6; ++l)
                if (!f2_[j - 1][l - 1].is_zero()) s += f2_[j - 1][l - 1] * dT(j, a, b) * dT(l, c, d);
            if (f1_[j - 1].is_zero()) continue;
            Rat acc(0);
            for (int r = 0; r <= j - 2; ++r) acc += pw_[r][b][c] * pw_[j - 2 - r][d][a];
            s += f1_[j - 1] * Rat(j) * acc;
        }
        return s;
    }

private:
    int n_;
    std::vector<RMat> pw_;
    Rat value_;
    std::vector<Rat> f1_;
    std::vector<std::vector<Rat>> f2_;
};

// coefficient values for the matrix Hamiltonians; k enters only as k^2
inline Rat eval_weyl_coeff(const MPoly& c, const ParamSet& p, const Rat& t) {
    const auto& reg = c.reg();
    Rat out(0);
    for (auto& [x, coef] : c.terms()) {
        Rat m = coef;
        for (int v = 0; v < reg->size(); ++v) {
            int e = x[v];
            if (!e) continue;
            const std::string& n = reg->name(v);
            if (n == "t")
                m *= t.pow(e);
            else if (n == "k") {
                if (e % 2) throw usage_error("odd power of k in a coefficient");
                m *= p.get("k2").pow(e / 2);
            } else
                m *= p.get(n).pow(e);
        }
        out += m;
    }
    return out;
}

// a normal-ordered operator (q letters, then at most two p letters) applied to
// Psi(Q) with p_ab -> hbar d/dq_ba
inline Rat apply_matrix_operator(const NCPoly<MPoly>& op, const MPoly& f, const RationalMatrixPoint& pt,
                                 const ParamSet& p, const Rat& t) {
    if (op.alg()->N != pt.N()) throw usage_error("operator and point have different N");
    TraceJet jet(f, pt.Q);
    Rat h = p.get("hbar");
    Rat total(0);
    for (auto& [w, c] : op.terms()) {
        Rat cv = eval_weyl_coeff(c, p, t);
        if (cv.is_zero()) continue;
        Rat m(1);
        std::vector<std::pair<int, int>> ds;
        for (auto l : w) {
            if (is_p(l)) {
                ds.push_back({col_of(l), row_of(l)}); // p_ij -> d/dq_ji
            } else {
                if (!ds.empty()) throw usage_error("apply_matrix_operator needs a normal-ordered operator");
                m *= pt.Q[row_of(l)][col_of(l)];
            }
        }
        if (ds.size() > 2) throw usage_error("operators above second order in p are not supported");
        Rat dv = ds.empty()       ? jet.value()
                 : ds.size() == 1 ? h * jet.d1(ds[0].first, ds[0].second)
                                  : h * h * jet.d2(ds[0].first, ds[0].second, ds[1].first, ds[1].second);
        total += cv * m * dv;
    }
    return total;
}

// the radial operator at the eigenvalues of the point
inline Rat apply_radial_at(const DiffOp& op, const MPoly& f, const RationalMatrixPoint& pt, const Rat& t) {
    MPoly F = trace_poly_to_z(f, op.N);
    RatFun r = apply(op, F);
    std::vector<Rat> vals = pt.z;
    vals.push_back(t);
    return r.eval(vals);
}

namespace detail {

inline Rat rand_rat(std::mt19937_64& g, int num = 5, int den = 4) {
    long n = long(g() % (2 * num + 1)) - num;
    long d = long(g() % den) + 1;
    return Rat(n, d);
}

inline Rat rand_nonzero(std::mt19937_64& g, int num = 5, int den = 4) {
    for (;;) {
        Rat r = rand_rat(g, num, den);
        if (!r.is_zero()) return r;
    }
}

} // namespace detail

inline RationalMatrixPoint random_point(int N, std::mt19937_64& g) {
    std::vector<Rat> z;
    while (int(z.size()) < N) {
        Rat c = detail::rand_rat(g, 6, 3);
        bool dup = false;
        for (auto& x : z) dup = dup || x == c;
        if (!dup) z.push_back(c);
    }
    for (;;) {
        RMat G(N, std::vector<Rat>(N));
        for (auto& row : G)
            for (auto& x : row) x = Rat(long(g() % 7) - 3);
        try {
            return RationalMatrixPoint(z, G);
        } catch (const domain_error&) {
        }
    }
}

// random polynomial in T1..T3 of total degree <= 3
inline MPoly random_trace_poly(std::mt19937_64& g, int terms = 4) {
    auto reg = trace_registry();
    MPoly f(reg);
    for (int k = 0; k < terms; ++k) {
        Exps x{};
        int left = int(g() % 4);
        while (left > 0) {
            int v = int(g() % 3);
            x[v]++;
            --left;
        }
        f.add_term(x, detail::rand_nonzero(g, 3, 2));
    }
    return f;
}

inline ParamSet random_radial_params(Family J, std::mt19937_64& g) {
    ParamSet p;
    const Rat hs[] = {Rat(1), Rat(1, 2), Rat(2), Rat(-1, 3), Rat(3, 2)};
    p.set("hbar", hs[g() % 5]).set("kappa", Rat(0));
    switch (J) {
    case Family::II: p.set("theta", detail::rand_rat(g)); break;
    case Family::III:
    case Family::IV: p.set("theta0", detail::rand_rat(g)).set("theta1", detail::rand_rat(g)); break;
    case Family::V:
        p.set("theta0", detail::rand_rat(g)).set("theta1", detail::rand_rat(g)).set("theta2", detail::rand_rat(g));
        break;
    case Family::VI:
        p.set("theta0", detail::rand_rat(g)).set("theta1", detail::rand_rat(g)).set("thetat", detail::rand_rat(g));
        p.set("k2", detail::rand_rat(g));
        break;
    default: break;
    }
    return p;
}

// matrix side versus printed radial operator, kappa = 0
inline Checks verify_radial_match(Family J, int N, int trials, std::uint64_t seed) {
    if (N < 1 || N > 3) throw usage_error("radial check supports N = 1..3");
    std::mt19937_64 g(seed ^ (0x9e37u * unsigned(J)) ^ (std::uint64_t(N) << 32));
    auto alg = weyl_algebra(N, weyl_registry());
    auto H = build_quantum_hamiltonian(J, alg);
    Checks out;
    for (int k = 0; k < trials; ++k) {
        auto pt = random_point(N, g);
        auto f = random_trace_poly(g);
        auto p = random_radial_params(J, g);
        if (J == Family::VI) p.set("theta", p.get("theta0") + p.get("theta1") + p.get("thetat"));
        Rat t = detail::rand_nonzero(g);
        if (J == Family::VI && t.is_one()) t = Rat(3);
        Rat lhs = apply_matrix_operator(H, f, pt, p, t);
        Rat rhs = apply_radial_at(build_radial_hamiltonian(J, N, p), f, pt, t);
        Check c{"radial." + family_name(J) + ".N" + std::to_string(N) + ".trial" + std::to_string(k),
                "Htilde_" + family_name(J) + " Psi(Q) = radial operator on Psi(Z), kappa = 0", lhs == rhs, "", "",
                false};
        if (c.pass) {
            c.residual = "0";
        } else {
            std::string zs;
            for (auto& x : pt.z) zs += (zs.empty() ? "" : ",") + x.str();
            c.residual = (lhs - rhs).str();
            c.note = "matrix " + lhs.str() + " vs radial " + rhs.str() + " at z=(" + zs + "), t=" + t.str() +
                     ", f=" + f.str() + ", " + p.str();
        }
        out.push_back(c);
        if (J == Family::VI) {
            // diagnostic: z d_z coefficient -2 hbar (1 + t) instead of the printed one
            Rat amended = apply_radial_at(build_radial_hamiltonian(J, N, p, true), f, pt, t);
            Check d{c.id + ".amended", "radial operator with z d_z coefficient -2 hbar (1+t), kappa = 0",
                    lhs == amended, lhs == amended ? "0" : (lhs - amended).str(), "diagnostic", false};
            out.push_back(d);
        }
    }
    return out;
}

// Tr(q^k p^2) in both displayed radial forms (kappa = 0)
inline DiffOp radial_qkp2(int N, int k, const Rat& hbar, bool symmetrized) {
    DiffOp op(N);
    Rat h2 = hbar * hbar;
    for (int s = 0; s < N; ++s) {
        op.A[s] = h2 * op.z(s).pow(k);
        for (int u = 0; u < N; ++u) {
            if (u == s) continue;
            RatFun inv = (op.z(s) - op.z(u)).inverse();
            // z_s^k (d_s - d_u)/(z_s - z_u), or (z_s^k d_s - z_u^k d_u)/(z_s - z_u)
            op.B[s] += h2 * op.z(s).pow(k) * inv;
            op.B[u] -= h2 * (symmetrized ? op.z(u).pow(k) : op.z(s).pow(k)) * inv;
        }
    }
    if (symmetrized) {
        for (int j = 0; j < k; ++j) {
            RatFun pj(op.reg);
            for (int s = 0; s < N; ++s) pj += op.z(s).pow(j);
            for (int u = 0; u < N; ++u) op.B[u] -= h2 * pj * op.z(u).pow(k - j - 1);
        }
        for (int u = 0; u < N && k > 0; ++u) op.B[u] += h2 * Rat(k) * op.z(u).pow(k - 1);
    }
    return op;
}

inline Checks verify_qkp2_example(int N, int trials, std::uint64_t seed) {
    std::mt19937_64 g(seed + 77);
    auto alg = weyl_algebra(N, weyl_registry());
    Checks out;
    for (int k = 0; k <= 3; ++k) {
        auto H = normal_order(parse_nc_scalar(alg, k == 0 ? "Tr(p^2)" : "Tr(q^" + std::to_string(k) + "*p^2)"));
        bool ok1 = true, ok2 = true;
        std::string bad;
        for (int i = 0; i < trials; ++i) {
            auto pt = random_point(N, g);
            auto f = random_trace_poly(g);
            ParamSet p;
            p.set("hbar", detail::rand_nonzero(g));
            Rat lhs = apply_matrix_operator(H, f, pt, p, Rat(0));
            for (int form = 0; form < 2; ++form) {
                Rat rhs = apply_radial_at(radial_qkp2(N, k, p.get("hbar"), form == 1), f, pt, Rat(0));
                if (lhs != rhs) {
                    (form ? ok2 : ok1) = false;
                    bad = "matrix " + lhs.str() + " vs radial " + rhs.str();
                }
            }
        }
        std::string ks = std::to_string(k);
        out.push_back({"radial.example.qkp2.k" + ks + ".N" + std::to_string(N),
                       "Tr(q^k p^2) = hbar^2 sum z^k d^2 + hbar^2 sum z_s^k (d_s - d_u)/(z_s - z_u)", ok1,
                       ok1 ? "0" : bad, "", false});
        out.push_back({"radial.example.qkp2_symmetrized.k" + ks + ".N" + std::to_string(N),
                       "Tr(q^k p^2), symmetrized divided-difference form", ok2, ok2 ? "0" : bad, "", false});
    }
    return out;
}

} // namespace qcp
