#pragma once

#include <random>

#include "qcp/numeric.hpp"

namespace qcp::num {

inline constexpr double kOracleTol = 1e-10;
inline constexpr double kCrossTol = 1e-8;
inline constexpr double kAcceptTol = 1e-6;

struct NumericPoint {
    ParamSet params;
    Rat t;
    std::string str() const { return params.str() + " t=" + t.str(); }
};

// a rational drawn from [lo, hi] on a grid of 1/60
inline Rat draw(std::mt19937_64& rng, const Rat& lo, const Rat& hi) {
    long a = (lo * Rat(60)).num().get_si(), b = (hi * Rat(60)).num().get_si();
    long n = std::uniform_int_distribution<long>(a, b)(rng);
    return Rat(n, 60);
}

inline NumericPoint random_point(Family J, std::mt19937_64& rng) {
    NumericPoint q;
    switch (J) {
    case Family::II: q.t = draw(rng, Rat(-1), Rat(1)); break;
    case Family::III:
        q.params.set("b", draw(rng, Rat(-1), Rat(1)));
        q.t = draw(rng, Rat(-2), Rat(-1, 4));
        break;
    case Family::IV:
        q.params.set("b", draw(rng, Rat(-9, 10), Rat(-1, 10)));
        q.t = draw(rng, Rat(-1), Rat(1));
        break;
    case Family::V:
        q.params.set("b", draw(rng, Rat(-9, 10), Rat(-1, 10)));
        q.params.set("c", draw(rng, Rat(-9, 10), Rat(-1, 10)));
        q.t = draw(rng, Rat(-1), Rat(1));
        break;
    case Family::VI:
        q.params.set("a", draw(rng, Rat(-1, 2), Rat(-1, 20)));
        q.params.set("b", draw(rng, Rat(-2, 5), Rat(-1, 20)));
        q.params.set("c", draw(rng, Rat(-9, 10), Rat(-1, 10)));
        q.params.set("d", draw(rng, Rat(-1), Rat(1)));
        q.t = draw(rng, Rat(3, 2), Rat(3));
        break;
    default: throw usage_error("family I has no master function");
    }
    return q;
}

inline const std::vector<Family>& integral_families() {
    static const std::vector<Family> f{Family::II, Family::III, Family::IV, Family::V, Family::VI};
    return f;
}

// worst relative residual of the k = 0..kmax relations (and the rho relations for VI)
template <class R>
double relation_worst(Family J, const NumericPoint& q, int kmax) {
    MomentSystem ms(J, q.params);
    double worst = 0;
    for (int k = 0; k <= kmax; ++k) {
        worst = std::max(worst, to_double(relation_residual<R>(ms.ibp_relation(k), ms.tvar(), J, q.t, q.params)));
        if (J == Family::VI)
            worst = std::max(worst, to_double(relation_residual<R>(ms.rho_relation(k), ms.tvar(), J, q.t, q.params)));
    }
    return worst;
}

inline Checks moment_relation_checks(std::uint64_t seed, int bits, int points = 3, int kmax = 6) {
    Checks out;
    std::mt19937_64 rng(seed);
    for (Family J : integral_families()) {
        for (int i = 0; i < points; ++i) {
            NumericPoint q = random_point(J, rng);
            double w = with_precision(bits, [&]<class R>(std::type_identity<R>) { return relation_worst<R>(J, q, kmax); });
            Check c;
            c.id = "moments.relations." + family_name(J) + ".pt" + std::to_string(i + 1);
            c.anchor = "0 = int d/du [u^n c_J(u) Theta_J(u)] du";
            c.pass = w < kOracleTol;
            c.residual = sci(w);
            c.note = "k = 0.." + std::to_string(kmax) + (J == Family::VI ? " (nu and rho)" : "") + " at " + q.str();
            out.push_back(c);
        }
    }
    return out;
}

// fixed admissible points for the cross-path checks
inline NumericPoint fixed_point(Family J) {
    NumericPoint q;
    switch (J) {
    case Family::II: q.t = Rat(1, 3); break;
    case Family::III:
        q.params.set("b", Rat(1, 3));
        q.t = Rat(-1, 2);
        break;
    case Family::IV:
        q.params.set("b", Rat(-1, 3));
        q.t = Rat(1, 2);
        break;
    case Family::V:
        q.params.set("b", Rat(-1, 3));
        q.params.set("c", Rat(-2, 5));
        q.t = Rat(1, 2);
        break;
    case Family::VI:
        q.params.set("a", Rat(-1, 4));
        q.params.set("b", Rat(-1, 5));
        q.params.set("c", Rat(-1, 3));
        q.params.set("d", Rat(2, 7));
        q.t = Rat(3, 2);
        break;
    default: throw usage_error("family I has no master function");
    }
    return q;
}

template <class R>
R rel_gap(const std::vector<Cx<R>>& a, const std::vector<Cx<R>>& b) {
    R s = std::max(max_abs(a), max_abs(b));
    return s == 0 ? R(0) : max_diff(a, b) / s;
}

inline Check andreief_check(Family J, int N, int m, int bits) {
    NumericPoint q = fixed_point(J);
    Check c;
    c.id = "numeric.andreief." + family_name(J) + ".N" + std::to_string(N) + ".m" + std::to_string(m);
    c.anchor = "Phi = m! det[ int u^{i+j} prod_rho (z_rho - u) Theta_J du ] at hbar = 1";
    with_precision(bits, [&]<class R>(std::type_identity<R>) {
        auto ph = phi_adaptive<R>(J, N, m, Rat(1), q.t, q.params, 1e-12);
        auto an = andreief_phi<R>(J, N, m, q.t, q.params);
        double g = to_double(rel_gap(ph.coef, an.coef));
        c.pass = g < kCrossTol;
        c.residual = sci(g);
        c.note = "product-rule level " + std::to_string(ph.level) + ", estimate " + sci(to_double(ph.rel_error)) +
                 " at " + q.str();
    });
    return c;
}

// symbolic Phi (seed form, hbar = 1) with numerically evaluated seeds
template <class R>
std::vector<Cx<R>> symbolic_phi_numeric_seeds(Family J, int N, int m, const NumericPoint& q) {
    MomentSystem ms(J, q.params, diffop_registry(N), N);
    WaveFunction w = build_phi(ms, N, m, Rat(1));
    Cx<R> s0 = symbol_value<R>(J, ms.seeds().first, q.t, q.params);
    Cx<R> s1 = symbol_value<R>(J, ms.seeds().second, q.t, q.params);
    PhiData<R> shape;
    shape.N = N;
    shape.m = m;
    int n = 1;
    for (int r = 0; r < N; ++r) n *= m + 1;
    std::vector<Cx<R>> coef(n);
    for (int j = 0; j <= m; ++j) {
        Cx<R> sj = s0.pow(m - j) * s1.pow(j);
        MPoly pj = w.part[j].subs({{N, q.t}}).as_polynomial();
        for (auto& [x, c] : pj.terms()) {
            std::vector<int> e(N);
            for (int r = 0; r < N; ++r) e[r] = x[r];
            coef[shape.index(e)] += to_real<R>(c) * sj;
        }
    }
    return coef;
}

inline Check seeds_cross_check(Family J, int N, int m, int bits) {
    NumericPoint q = fixed_point(J);
    Check c;
    c.id = "numeric.seeds." + family_name(J) + ".N" + std::to_string(N) + ".m" + std::to_string(m);
    c.anchor = "Phi(z;t) = int prod_i prod_rho (z_rho - u_i) Delta(u)^{2 hbar} prod_i Theta_J(u_i) du";
    with_precision(bits, [&]<class R>(std::type_identity<R>) {
        auto ph = phi_adaptive<R>(J, N, m, Rat(1), q.t, q.params, 1e-12);
        auto sy = symbolic_phi_numeric_seeds<R>(J, N, m, q);
        double g = to_double(rel_gap(ph.coef, sy));
        c.pass = g < kCrossTol;
        c.residual = sci(g);
        c.note = "moment-engine reduction with numeric seeds vs product rule at " + q.str();
    });
    return c;
}

inline std::string num_pde_id(Family J, int N, int m, const Rat& h, PdeForm form, const Rat& t, bool control) {
    return pde_id(control ? "numeric.control" : "numeric", J, N, m, h, form) + ".t" + t.str();
}

// printed check, n_scaled diagnostic and a negative control (against n_scaled)
inline Checks pde_numeric_checks(Family J, int N, int m, const ParamSet& given, const Rat& t, int bits,
                                 bool control = true) {
    ParamSet p = pde_params(J, m, given);
    Rat h = p.get("hbar");
    check_domain(J, p, t);
    Checks out;
    with_precision(bits, [&]<class R>(std::type_identity<R>) {
        auto r = pde_residual_numeric<R>(J, N, m, p, t);
        double agree = to_double(r.dt_agreement);
        bool healthy = agree < kCrossTol;
        std::string health = "d_t under the integral vs Richardson differ by " + sci(agree) + ", quadrature level " +
                             std::to_string(r.level) + " estimate " + sci(to_double(r.quadrature_error));
        for (PdeForm form : {PdeForm::printed, PdeForm::n_scaled}) {
            double res = to_double(r.residual[int(form)]), fd = to_double(r.residual_fd[int(form)]);
            Check c;
            c.id = num_pde_id(J, N, m, h, form, t, false);
            c.anchor = pde_anchor(form);
            c.pass = res < kAcceptTol && fd < kAcceptTol && healthy;
            c.residual = sci(res);
            c.note = (form == PdeForm::n_scaled ? "diagnostic; " : "") + std::string("Richardson residual ") + sci(fd) +
                     "; " + health + "; params " + p.str();
            if (!healthy) c.note = "quadrature-health failure; " + c.note;
            if (form == PdeForm::printed && !c.pass && N > 1 && to_double(r.residual[1]) < kAcceptTol)
                c.note += "; with N hbar d_t the residual is " + sci(to_double(r.residual[1]));
            out.push_back(c);
        }
        if (control) {
            auto rc = pde_residual_numeric<R>(J, N, m, p, t, true, r.level);
            double res = to_double(rc.residual[int(PdeForm::n_scaled)]);
            Check c;
            c.id = num_pde_id(J, N, m, h, PdeForm::n_scaled, t, true);
            c.anchor = pde_anchor(PdeForm::n_scaled);
            c.pass = res > 1e-3;
            c.residual = sci(res);
            c.note = "negative control: operator with an extra sum z_rho term must leave an O(1) residual";
            out.push_back(c);
        }
    });
    return out;
}

// default admissible points for the numeric Schroedinger check
inline std::vector<NumericPoint> pde_points(Family J) {
    std::vector<NumericPoint> v;
    auto add = [&](std::vector<std::pair<const char*, Rat>> kv, Rat t) {
        NumericPoint q;
        for (auto& [k, x] : kv) q.params.set(k, x);
        q.t = t;
        v.push_back(q);
    };
    switch (J) {
    case Family::V:
        add({{"b", Rat(-1, 3)}, {"c", Rat(-2, 5)}}, Rat(-2, 3));
        add({{"b", Rat(-1, 2)}, {"c", Rat(-1, 4)}}, Rat(3, 2));
        break;
    case Family::VI: // d follows from the PDE condition
        add({{"a", Rat(-1, 4)}, {"b", Rat(-1, 3)}, {"c", Rat(-2, 5)}}, Rat(4, 3));
        add({{"a", Rat(-1, 5)}, {"b", Rat(-1, 2)}, {"c", Rat(-1, 4)}}, Rat(7, 2));
        break;
    case Family::IV: add({{"b", Rat(-1, 3)}}, Rat(1, 2)); break;
    case Family::III: add({{"b", Rat(1, 3)}}, Rat(-1, 2)); break;
    case Family::II: add({}, Rat(1, 3)); break;
    default: throw usage_error("family I has no master function");
    }
    return v;
}

// nu_k (and rho_k for VI) with quadrature error estimates
struct OracleRow {
    std::string symbol, re, im, error;
};

inline std::vector<OracleRow> oracle_moments(Family J, int kmax, const ParamSet& p, const Rat& t, int bits) {
    std::vector<OracleRow> rows;
    with_precision(bits, [&]<class R>(std::type_identity<R>) {
        const int digits = std::numeric_limits<R>::digits10 - 5;
        auto txt = [&](const R& x) { return x.str(digits, std::ios_base::scientific); };
        for (int s = 0; s <= (J == Family::VI ? 1 : 0); ++s)
            for (int k = 0; k <= kmax; ++k) {
                auto v = moment_numeric<R>(J, k, s, t, p);
                rows.push_back({(s ? "rho" : "nu") + std::to_string(k), txt(v.value.re), txt(v.value.im),
                                sci(to_double(v.error))});
            }
    });
    return rows;
}

} // namespace qcp::num
