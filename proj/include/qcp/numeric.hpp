#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "qcp/check.hpp"
#include "qcp/diffop.hpp"
#include "qcp/family.hpp"
#include "qcp/hamiltonians.hpp"
#include "qcp/moments.hpp"
#include "qcp/params.hpp"

namespace qcp::num {

// fixed-precision MPFR floats; Boost's quadrature tables need a static precision
template <unsigned Digits10>
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits10>,
                                           boost::multiprecision::et_off>;
using R128 = Real<39>;
using R192 = Real<58>;
using R256 = Real<78>;

template <class R>
int bits_of() {
    return std::numeric_limits<R>::digits;
}

// run f(std::type_identity<R>{}) with the smallest supported type of at least `bits`
template <class F>
decltype(auto) with_precision(int bits, F&& f) {
    if (bits < 128) throw usage_error("precision must be at least 128 bits");
    if (bits <= 128) return f(std::type_identity<R128>{});
    if (bits <= 192) return f(std::type_identity<R192>{});
    if (bits <= 256) return f(std::type_identity<R256>{});
    throw usage_error("precision above 256 bits is not supported");
}

template <class R>
R to_real(const Rat& q) {
    return R(q.num().get_str()) / R(q.den().get_str());
}

template <class R>
double to_double(const R& x) {
    return x.template convert_to<double>();
}

inline std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

template <class R>
struct Cx {
    R re = 0, im = 0;
    Cx() = default;
    Cx(R r, R i = R(0)) : re(std::move(r)), im(std::move(i)) {}
    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend Cx operator*(const R& s, const Cx& a) { return {s * a.re, s * a.im}; }
    friend Cx operator/(const Cx& a, const R& s) { return {a.re / s, a.im / s}; }
    Cx operator-() const { return {-re, -im}; }
    Cx& operator+=(const Cx& b) {
        re += b.re;
        im += b.im;
        return *this;
    }
    R abs() const { return sqrt(re * re + im * im); }
    static Cx expi(const R& phi) { return {cos(phi), sin(phi)}; }
    Cx pow(int e) const {
        Cx r(R(1)), b = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * b;
            b = b * b;
        }
        return r;
    }
};

template <class R>
Cx<R> cexp(const Cx<R>& z) {
    R m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// ---------------------------------------------------------------------------
// contours and parameter domains

inline const char* contour_text(Family J) {
    switch (J) {
    case Family::II: return "polyline from infinity at arg -2pi/3 through 0 to +infinity";
    case Family::III:
    case Family::IV: return "(0, +infinity)";
    default: return "[0, 1]";
    }
}

// parameter constraints under which the canonical contour is admissible
inline void check_domain(Family J, const ParamSet& p, const Rat& t) {
    auto neg = [&](const Rat& x, const char* what) {
        if (x.sign() >= 0) throw domain_error(std::string("contour for family ") + family_name(J) + " needs " + what);
    };
    switch (J) {
    case Family::II: break;
    case Family::III:
        if (t.sign() >= 0) throw domain_error("family III is only integrated numerically at t < 0");
        break;
    case Family::IV: neg(p.get("b"), "b < 0"); break;
    case Family::V:
        neg(p.get("b"), "b < 0");
        neg(p.get("c"), "c < 0");
        break;
    case Family::VI:
        neg(p.get("a") + p.get("b"), "a + b < 0");
        neg(p.get("c"), "c < 0");
        if (!(t > Rat(1))) throw domain_error("contour for family VI needs t > 1");
        break;
    default: throw usage_error("family I has no master function");
    }
}

// real-contour master function with exact complements: u and uc = 1 - u
template <class R>
struct Master {
    Family J;
    R t, e0, e1, d; // exponents of u and (1 - u), and d for VI

    Master(Family j, const ParamSet& p, const R& tt) : J(j), t(tt), e0(0), e1(0), d(0) {
        switch (J) {
        case Family::III:
        case Family::IV: e0 = -to_real<R>(p.get("b")) - 1; break;
        case Family::V:
            e0 = -to_real<R>(p.get("b")) - 1;
            e1 = -to_real<R>(p.get("c")) - 1;
            break;
        case Family::VI:
            e0 = -to_real<R>(p.get("a") + p.get("b")) - 1;
            e1 = -to_real<R>(p.get("c")) - 1;
            d = to_real<R>(p.get("d"));
            break;
        default: throw usage_error("not a real-contour family");
        }
    }

    R log_theta(const R& u, const R& uc) const {
        switch (J) {
        case Family::III: return e0 * log(u) + t / u - u;
        case Family::IV: return e0 * log(u) - (u * t + u * u / 2);
        case Family::V: return e0 * log(u) + e1 * log(uc) + u * t;
        default: return e0 * log(u) + e1 * log(uc) - d * log((t - 1) + uc);
        }
    }
    R theta(const R& u, const R& uc) const { return exp(log_theta(u, uc)); }
    // d/dt log Theta
    R dt_log(const R& u, const R& uc) const {
        switch (J) {
        case Family::III: return 1 / u;
        case Family::IV: return -u;
        case Family::V: return u;
        default: return -d / ((t - 1) + uc);
        }
    }
    R t_minus_u(const R& uc) const { return (t - 1) + uc; }
};

template <class R>
struct MomentValue {
    Cx<R> value;
    R error = 0;
};

template <class R>
boost::math::quadrature::tanh_sinh<R>& tanh_sinh_rule() {
    // the default min_complement overflows for MPFR's exponent range
    static thread_local boost::math::quadrature::tanh_sinh<R> q(15, ldexp(R(1), -3 * bits_of<R>()));
    return q;
}

template <class R>
boost::math::quadrature::exp_sinh<R>& exp_sinh_rule() {
    static thread_local boost::math::quadrature::exp_sinh<R> q(12);
    return q;
}

// int u^k (t-u)^{-s} Theta_J(u) du on the canonical contour
template <class R>
MomentValue<R> moment_numeric(Family J, int k, int s, const Rat& t, const ParamSet& p) {
    if (s != 0 && s != 1) throw usage_error("s must be 0 or 1");
    if (s == 1 && J != Family::VI) throw usage_error("s = 1 only for family VI");
    check_domain(J, p, t);
    if (k < 0 && J != Family::III) throw usage_error("negative moments only for family III");
    const R tr = to_real<R>(t);
    const R tol = sqrt(std::numeric_limits<R>::epsilon());
    MomentValue<R> out;
    R err = 0, l1 = 0;
    if (J == Family::II) {
        // u = r on the real ray, u = r w on the incoming ray (w = e^{-2 pi i/3}, w^3 = 1)
        const R pi = boost::math::constants::pi<R>();
        const R phi = -2 * pi / 3;
        auto& q = exp_sinh_rule<R>();
        // beyond rcut the cubic decay is below working precision; MPFR's trig
        // argument reduction at huge r would otherwise dominate the run time
        const R rcut = 4 + cbrt(R(3 * bits_of<R>() + 3 * k)) + abs(tr);
        R a = q.integrate([&](const R& r) { return r > rcut ? R(0) : R(pow(r, k) * exp(-(r * tr + 2 * r * r * r / 3))); },
                          tol, &err, &l1);
        R e1 = err;
        // r^k exp(-r t cos(phi) - 2r^3/3) * e^{-i r t sin(phi)}
        auto ray = [&](const R& r) { return pow(r, k) * exp(-(r * tr * cos(phi) + 2 * r * r * r / 3)); };
        R re = q.integrate([&](const R& r) { return r > rcut ? R(0) : R(ray(r) * cos(r * tr * sin(phi))); }, tol, &err, &l1);
        R e2 = err;
        R im = q.integrate([&](const R& r) { return r > rcut ? R(0) : R(-ray(r) * sin(r * tr * sin(phi))); }, tol, &err, &l1);
        Cx<R> w = Cx<R>::expi(phi * (k + 1));
        out.value = Cx<R>(a) - w * Cx<R>(re, im);
        out.error = e1 + e2 + err;
        return out;
    }
    Master<R> th(J, p, tr);
    if (J == Family::III || J == Family::IV) {
        const R ucut = 8 + 2 * (bits_of<R>() + std::abs(k)) + abs(tr);
        auto f = [&](const R& u) {
            R one = 1;
            return u > ucut ? R(0) : R(pow(u, k) * th.theta(u, one - u));
        };
        out.value = Cx<R>(exp_sinh_rule<R>().integrate(f, tol, &err, &l1));
        out.error = err;
        return out;
    }
    // [0, 1]: fold onto [0, 1/2] so that both endpoints are evaluated without cancellation
    auto g = [&](const R& u, const R& uc) {
        R v = pow(u, k) * th.theta(u, uc);
        if (s == 1) v /= th.t_minus_u(uc);
        return v;
    };
    auto f = [&](const R& x) {
        R xc = 1 - x;
        return g(x, xc) + g(xc, x);
    };
    out.value = Cx<R>(tanh_sinh_rule<R>().integrate(f, R(0), R(1) / 2, tol, &err, &l1));
    out.error = err;
    return out;
}

// value of a moment symbol
template <class R>
Cx<R> symbol_value(Family J, const MomentSymbol& s, const Rat& t, const ParamSet& p) {
    return moment_numeric<R>(J, s.k, s.kind == MomentSymbol::Kind::rho ? 1 : 0, t, p).value;
}

// |sum c_i v_i| / max |c_i v_i| for a linear relation evaluated at t
template <class R>
R relation_residual(const MomentExpr& rel, int tvar, Family J, const Rat& t, const ParamSet& p) {
    Cx<R> sum;
    R scale = 0;
    std::vector<Rat> at(rel.reg()->size(), Rat(0));
    at[tvar] = t;
    for (auto& [key, c] : rel.terms()) {
        Cx<R> v(R(1));
        for (auto& s : key) v = v * symbol_value<R>(J, s, t, p);
        Cx<R> term = to_real<R>(c.eval(at)) * v;
        sum += term;
        scale = std::max(scale, term.abs());
    }
    return scale == 0 ? R(0) : sum.abs() / scale;
}

// ---------------------------------------------------------------------------
// m-fold integrals. Boost's integrators are scalar; every Phi coefficient (and
// its t-derivative) is wanted from one node set, so the product rule is ours:
// tanh-sinh on (0,1) and exp-sinh on (0,inf) with step h = 2^-level, the rule
// with step 2h read off the even nodes for the error estimate.

template <class R>
struct Node {
    R x, xc, w; // point, complement (1 - x or unused), weight
    bool even;
};

template <class R>
std::vector<Node<R>> unit_nodes(int level) {
    const R pi = boost::math::constants::pi<R>();
    const R h = ldexp(R(1), -level);
    const double tmax = std::asinh(2.0 / M_PI * bits_of<R>() * std::log(2.0));
    int K = int(std::ceil(tmax * std::ldexp(1.0, level)));
    std::vector<Node<R>> v;
    for (int k = -K; k <= K; ++k) {
        R tau = h * k;
        R s = pi / 2 * sinh(tau);
        R e = exp(-2 * abs(s)); // e^{-2|s|}
        R small = e / (1 + e), big = 1 / (1 + e);
        R x = s < 0 ? small : big, xc = s < 0 ? big : small;
        R w = h * pi / 2 * cosh(tau) * 4 * e / ((1 + e) * (1 + e)) / 2;
        if (w == 0 || x == 0 || xc == 0) continue;
        v.push_back({x, xc, w, k % 2 == 0});
    }
    return v;
}

template <class R>
std::vector<Node<R>> halfline_nodes(int level) {
    const R pi = boost::math::constants::pi<R>();
    const R h = ldexp(R(1), -level);
    const double b = bits_of<R>() * std::log(2.0);
    const double lo = -std::asinh(2.0 / M_PI * b), hi = std::asinh(2.0 / M_PI * std::log(2 * b));
    int K0 = int(std::floor(lo * std::ldexp(1.0, level))), K1 = int(std::ceil(hi * std::ldexp(1.0, level)));
    std::vector<Node<R>> v;
    for (int k = K0; k <= K1; ++k) {
        R tau = h * k;
        R u = exp(pi / 2 * sinh(tau));
        R w = h * pi / 2 * cosh(tau) * u;
        v.push_back({u, R(0), w, k % 2 == 0});
    }
    return v;
}

// coefficient arrays of Phi, flattened over z-exponents x in {0..m}^N
template <class R>
struct PhiData {
    int N = 0, m = 0;
    std::vector<Cx<R>> coef, dcoef; // Phi and d_t Phi (derivative under the integral)
    R rel_error = 0;                // step-doubling estimate
    std::size_t nodes = 0;
    int level = 0;

    int index(const std::vector<int>& x) const {
        int i = 0;
        for (int r = N - 1; r >= 0; --r) i = i * (m + 1) + x[r];
        return i;
    }
    std::vector<int> exps(int i) const {
        std::vector<int> x(N);
        for (int r = 0; r < N; ++r) {
            x[r] = i % (m + 1);
            i /= m + 1;
        }
        return x;
    }
    // Phi at a point
    Cx<R> eval(const std::vector<Cx<R>>& z) const {
        Cx<R> s;
        for (int i = 0; i < int(coef.size()); ++i) {
            Cx<R> term = coef[i];
            auto x = exps(i);
            for (int r = 0; r < N; ++r) term = term * z[r].pow(x[r]);
            s += term;
        }
        return s;
    }
};

template <class R>
R max_abs(const std::vector<Cx<R>>& v) {
    R m = 0;
    for (auto& c : v) m = std::max(m, c.abs());
    return m;
}

template <class R>
R max_diff(const std::vector<Cx<R>>& a, const std::vector<Cx<R>>& b) {
    R m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).abs());
    return m;
}

namespace detail {

// acc[x] += sign * wgt * prod_rho e_{m - x_rho}; T is R or Cx<R>
template <class T>
void accumulate(std::vector<T>& acc, const T& wgt, const std::vector<T>& e, int N, int m) {
    int n = int(acc.size());
    for (int i = 0; i < n; ++i) {
        int j = i, ks = 0;
        T v = wgt;
        for (int r = 0; r < N; ++r) {
            int k = m - j % (m + 1);
            j /= m + 1;
            ks += k;
            v = v * e[k];
        }
        if (ks % 2) acc[i] = acc[i] - v;
        else acc[i] = acc[i] + v;
    }
}

template <class T>
std::vector<T> elementary(const std::vector<T>& u) {
    std::vector<T> e(u.size() + 1, T(0));
    e[0] = T(1);
    for (auto& x : u)
        for (std::size_t k = u.size(); k >= 1; --k) e[k] = e[k] + e[k - 1] * x;
    return e;
}

// fine and coarse (even-node) sums of Phi and of d_t Phi
template <class T>
struct Sums {
    std::vector<T> fine, coarse, dfine, dcoarse;
    explicit Sums(int n) : fine(n, T(0)), coarse(n, T(0)), dfine(n, T(0)), dcoarse(n, T(0)) {}
    void add(const T& w, const T& dlog, const std::vector<T>& e, bool even, int N, int m, const T& coarse_factor) {
        accumulate(fine, w, e, N, m);
        T dw = w * dlog;
        accumulate(dfine, dw, e, N, m);
        if (even) {
            accumulate(coarse, coarse_factor * w, e, N, m);
            accumulate(dcoarse, coarse_factor * dw, e, N, m);
        }
    }
};

} // namespace detail

// m! times the ordered-simplex integral (the full common-contour integral when
// 2 hbar is an even integer); II uses the full product over its polyline
template <class R>
PhiData<R> phi_numeric(Family J, int N, int m, const Rat& hbar, const Rat& t, const ParamSet& p, int level) {
    if (m < 1 || m > 3 || N < 1 || N > 3) throw usage_error("phi_numeric supports N <= 3, 1 <= m <= 3");
    if (level < 2 || level > 8) throw usage_error("quadrature level must be between 2 and 8");
    if (hbar.sign() <= 0) throw domain_error("numeric path needs hbar > 0");
    check_domain(J, p, t);
    const R tr = to_real<R>(t);
    const Rat two_h = Rat(2) * hbar;
    const bool int_power = two_h.is_integer();
    const int ip = int_power ? int(two_h.num().get_si()) : 0;
    const R rp = to_real<R>(two_h);
    auto vpow = [&](const R& g) { return int_power ? R(pow(g, ip)) : R(pow(g, rp)); };

    PhiData<R> out;
    out.N = N;
    out.m = m;
    int ncoef = 1;
    for (int r = 0; r < N; ++r) ncoef *= m + 1;
    R mfact = 1;
    for (int i = 2; i <= m; ++i) mfact *= i;
    const R cf = R(1u << m);

    auto finish = [&](auto& S, const R& scale) {
        auto cx = [&](const auto& v) {
            std::vector<Cx<R>> r(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) r[i] = scale * Cx<R>(v[i]);
            return r;
        };
        out.coef = cx(S.fine);
        out.dcoef = cx(S.dfine);
        auto c = cx(S.coarse), dc = cx(S.dcoarse);
        R s0 = std::max(max_abs(out.coef), R(1e-300)), s1 = std::max(max_abs(out.dcoef), R(1e-300));
        out.rel_error = std::max(max_diff(out.coef, c) / s0, max_diff(out.dcoef, dc) / s1);
    };

    if (J == Family::II) {
        if (!hbar.is_integer()) throw unsupported_mode("family II contour needs integer hbar on the numeric path");
        const R pi = boost::math::constants::pi<R>();
        Cx<R> w = Cx<R>::expi(-2 * pi / 3);
        struct CNode {
            Cx<R> u, wt;
            bool even;
        };
        std::vector<CNode> nodes;
        for (auto& n : halfline_nodes<R>(level)) {
            nodes.push_back({Cx<R>(n.x), Cx<R>(n.w), n.even});
            nodes.push_back({n.x * w, R(-1) * (n.w * w), n.even});
        }
        int M = int(nodes.size());
        std::vector<Cx<R>> th(M), dl(M);
        for (int i = 0; i < M; ++i) {
            const Cx<R>& u = nodes[i].u;
            th[i] = cexp(R(-1) * (u * Cx<R>(tr) + (R(2) / 3) * u.pow(3))) * nodes[i].wt;
            dl[i] = R(-1) * u;
        }
        detail::Sums<Cx<R>> S(ncoef);
        std::vector<int> idx(m, 0);
        std::vector<Cx<R>> us(m);
        while (true) {
            Cx<R> wgt(R(1)), dsum;
            bool even = true;
            for (int i = 0; i < m; ++i) {
                wgt = wgt * th[idx[i]];
                dsum += dl[idx[i]];
                us[i] = nodes[idx[i]].u;
                even = even && nodes[idx[i]].even;
            }
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) wgt = wgt * (us[i] - us[j]).pow(ip);
            S.add(wgt, dsum, detail::elementary(us), even, N, m, Cx<R>(cf));
            ++out.nodes;
            int d = 0;
            while (d < m && ++idx[d] == M) idx[d++] = 0;
            if (d == m) break;
        }
        finish(S, R(1));
        return out;
    }

    Master<R> th(J, p, tr);
    const bool unit = J == Family::V || J == Family::VI;
    auto outer = unit ? unit_nodes<R>(level) : halfline_nodes<R>(level);
    auto inner = unit_nodes<R>(level);
    detail::Sums<R> S(ncoef);
    // per depth: u, 1 - u, gap to the previous variable
    std::vector<R> u(m), uc(m), gap(m);
    auto rec = [&](auto&& self, int depth, const R& wgt, const R& dsum, bool even) -> void {
        if (depth == m) {
            R v = wgt;
            for (int i = 0; i < m; ++i) {
                R diff = 0;
                for (int j = i + 1; j < m; ++j) {
                    diff += gap[j];
                    v *= vpow(diff);
                }
            }
            S.add(v, dsum, detail::elementary(u), even, N, m, cf);
            ++out.nodes;
            return;
        }
        const auto& nodes = depth == 0 ? outer : inner;
        for (auto& n : nodes) {
            R w;
            if (depth == 0) {
                u[0] = n.x;
                uc[0] = unit ? n.xc : R(1 - n.x);
                gap[0] = 0;
                w = n.w;
            } else {
                const R& prev = u[depth - 1];
                u[depth] = prev * n.x;
                uc[depth] = uc[depth - 1] + prev * n.xc;
                gap[depth] = prev * n.xc;
                w = n.w * prev;
            }
            R f = th.theta(u[depth], uc[depth]);
            if (f == 0) continue;
            self(self, depth + 1, wgt * w * f, dsum + th.dt_log(u[depth], uc[depth]), even && n.even);
        }
    };
    rec(rec, 0, R(1), R(0), true);
    finish(S, mfact);
    return out;
}

// smallest level in [3, max_level] whose step-doubling estimate is below target
template <class R>
PhiData<R> phi_adaptive(Family J, int N, int m, const Rat& hbar, const Rat& t, const ParamSet& p, double target,
                        int max_level = 6) {
    PhiData<R> r;
    for (int L = 3; L <= max_level; ++L) {
        r = phi_numeric<R>(J, N, m, hbar, t, p, L);
        r.level = L;
        if (r.rel_error < target) break;
    }
    return r;
}

// Heine/Andreief at hbar = 1: m! det[ int u^{i+j} prod_rho (z_rho - u) Theta du ]
template <class R>
PhiData<R> andreief_phi(Family J, int N, int m, const Rat& t, const ParamSet& p) {
    if (m < 1 || m > 3 || N < 1 || N > 3) throw usage_error("andreief_phi supports N <= 3, 1 <= m <= 3");
    int kmax = 2 * (m - 1) + N;
    std::vector<Cx<R>> nu(kmax + 1);
    for (int k = 0; k <= kmax; ++k) nu[k] = moment_numeric<R>(J, k, 0, t, p).value;
    using Poly = std::map<std::vector<int>, Cx<R>>;
    auto mul = [&](const Poly& a, const Poly& b) {
        Poly r;
        for (auto& [xa, ca] : a)
            for (auto& [xb, cb] : b) {
                std::vector<int> x(N);
                for (int i = 0; i < N; ++i) x[i] = xa[i] + xb[i];
                r[x] += ca * cb;
            }
        return r;
    };
    // entry (i, j): sum over subsets S of (-1)^|S| prod_{rho not in S} z_rho nu_{i+j+|S|}
    auto entry = [&](int i, int j) {
        Poly e;
        for (int S = 0; S < (1 << N); ++S) {
            std::vector<int> x(N);
            int s = 0;
            for (int r = 0; r < N; ++r) {
                bool in = (S >> r) & 1;
                s += in;
                x[r] = in ? 0 : 1;
            }
            e[x] += (s % 2 ? R(-1) : R(1)) * nu[i + j + s];
        }
        return e;
    };
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    Poly det;
    do {
        int inv = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) inv += perm[i] > perm[j];
        Poly term{{std::vector<int>(N, 0), Cx<R>(R(inv % 2 ? -1 : 1))}};
        for (int i = 0; i < m; ++i) term = mul(term, entry(i, perm[i]));
        for (auto& [x, c] : term) det[x] += c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    R mfact = 1;
    for (int i = 2; i <= m; ++i) mfact *= i;
    PhiData<R> out;
    out.N = N;
    out.m = m;
    int ncoef = 1;
    for (int r = 0; r < N; ++r) ncoef *= m + 1;
    out.coef.assign(ncoef, Cx<R>());
    for (auto& [x, c] : det) out.coef[out.index(x)] = mfact * c;
    return out;
}

// ---------------------------------------------------------------------------
// Schroedinger residual on the numeric path

template <class R>
struct PdeNumeric {
    // indexed by PdeForm
    R residual[2] = {0, 0};    // derivative under the integral
    R residual_fd[2] = {0, 0}; // Richardson derivative
    R dt_agreement = 0;        // relative gap between the two d_t computations
    R quadrature_error = 0;
    int level = 0;
};

// (op Phi) coefficients at t; op applied exactly to each monomial orbit
template <class R>
std::map<std::vector<int>, Cx<R>> apply_numeric(const DiffOp& op, const PhiData<R>& phi, const Rat& t) {
    std::map<std::vector<int>, Cx<R>> out;
    std::vector<std::pair<int, Rat>> tsub{{op.t_index(), t}};
    for (int i = 0; i < int(phi.coef.size()); ++i) {
        auto lam = phi.exps(i);
        if (!std::is_sorted(lam.begin(), lam.end(), std::greater<int>())) continue;
        // monomial symmetric function m_lambda
        MPoly ml(op.reg);
        auto x = lam;
        std::sort(x.begin(), x.end());
        do {
            Exps e{};
            for (int r = 0; r < op.N; ++r) e[r] = std::uint16_t(x[r]);
            ml += MPoly::monomial(op.reg, e, Rat(1));
        } while (std::next_permutation(x.begin(), x.end()));
        MPoly img = apply(op, ml, true).as_polynomial().subs(tsub);
        for (auto& [e, c] : img.terms()) {
            std::vector<int> y(op.N);
            for (int r = 0; r < op.N; ++r) y[r] = e[r];
            out[y] += to_real<R>(c) * phi.coef[i];
        }
    }
    return out;
}

// both forms of the equation from one set of quadratures; perturb adds sum z_rho
// to the operator (negative control)
template <class R>
PdeNumeric<R> pde_residual_numeric(Family J, int N, int m, const ParamSet& p, const Rat& t, bool perturb = false,
                                   int level = 0) {
    Rat h = p.get("hbar");
    DiffOp op = build_cp_hamiltonian(J, N, m, p);
    if (perturb)
        for (int r = 0; r < N; ++r) op.C += op.z(r);
    auto phi = level > 0 ? phi_numeric<R>(J, N, m, h, t, p, level) : phi_adaptive<R>(J, N, m, h, t, p, 1e-10);
    level = phi.level > 0 ? phi.level : level;
    // two-level Richardson on central differences, same nodes as the centre
    const Rat delta = Rat(1) / Rat(128);
    auto D = [&](const Rat& dl) {
        auto a = phi_numeric<R>(J, N, m, h, t + dl, p, level);
        auto b = phi_numeric<R>(J, N, m, h, t - dl, p, level);
        std::vector<Cx<R>> d(a.coef.size());
        R inv = 1 / (2 * to_real<R>(dl));
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = inv * (a.coef[i] - b.coef[i]);
        return d;
    };
    auto d1 = D(delta), d2 = D(delta / Rat(2)), d3 = D(delta / Rat(4));
    std::vector<Cx<R>> rich(d1.size());
    for (std::size_t i = 0; i < rich.size(); ++i) {
        Cx<R> r1 = (R(4) * d2[i] - d1[i]) / R(3), r2 = (R(4) * d3[i] - d2[i]) / R(3);
        rich[i] = (R(16) * r2 - r1) / R(15);
    }
    PdeNumeric<R> res;
    res.quadrature_error = phi.rel_error;
    res.level = level;
    res.dt_agreement = max_diff(phi.dcoef, rich) / std::max(max_abs(phi.dcoef), R(1e-300));

    auto hphi = apply_numeric(op, phi, t);
    std::vector<Rat> at(op.reg->size(), Rat(0));
    at[op.t_index()] = t;
    for (PdeForm form : {PdeForm::printed, PdeForm::n_scaled}) {
        R k = to_real<R>(op.left.eval(at) * h * pde_time_factor(form, N));
        auto resid = [&](const std::vector<Cx<R>>& dphi) {
            std::map<std::vector<int>, Cx<R>> lhs;
            for (int i = 0; i < int(dphi.size()); ++i) lhs[phi.exps(i)] = k * dphi[i];
            R num = 0, sl = 0, sr = 0;
            for (auto& [x, c] : lhs) sl = std::max(sl, c.abs());
            for (auto& [x, c] : hphi) sr = std::max(sr, c.abs());
            auto keys = lhs;
            for (auto& [x, c] : hphi) keys[x];
            for (auto& [x, c] : keys) {
                Cx<R> a = lhs.count(x) ? lhs[x] : Cx<R>(), b = hphi.count(x) ? hphi.at(x) : Cx<R>();
                num = std::max(num, (a - b).abs());
            }
            R den = std::max(sl, sr);
            return den == 0 ? R(0) : num / den;
        };
        res.residual[int(form)] = resid(phi.dcoef);
        res.residual_fd[int(form)] = resid(rich);
    }
    return res;
}

} // namespace qcp::num
