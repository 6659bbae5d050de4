#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qcp/hamiltonians.hpp"
#include "qcp/radial.hpp"

using namespace qcp;

namespace {

ParamSet hb(const Rat& h) {
    ParamSet p;
    p.set("hbar", h).set("kappa", Rat(0));
    return p;
}

RationalMatrixPoint point2() {
    return RationalMatrixPoint({Rat(1, 2), Rat(-2)}, {{Rat(1), Rat(2)}, {Rat(-1), Rat(3)}});
}

MPoly T(const std::string& s) { return MPoly::parse(trace_registry(), s); }

using DMat = std::vector<std::vector<double>>;

double trace_pow(const DMat& Q, int j) {
    int n = int(Q.size());
    DMat P(n, std::vector<double>(n, 0));
    for (int i = 0; i < n; ++i) P[i][i] = 1;
    for (int k = 0; k < j; ++k) {
        DMat R(n, std::vector<double>(n, 0));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) R[a][b] += P[a][c] * Q[c][b];
        P = R;
    }
    double s = 0;
    for (int i = 0; i < n; ++i) s += P[i][i];
    return s;
}

} // namespace

TEST_CASE("matrix operator examples") {
    auto a = weyl_algebra(2, weyl_registry());
    auto pt = point2();
    Rat h(1, 3);
    auto trp2 = normal_order(parse_nc_scalar(a, "Tr(p^2)"));
    CHECK(apply_matrix_operator(trp2, T("T2"), pt, hb(h), Rat(0)) == Rat(8) * h * h);
    auto trp = normal_order(parse_nc_scalar(a, "Tr(p)"));
    CHECK(apply_matrix_operator(trp, T("T1"), pt, hb(h), Rat(0)) == Rat(2) * h);
    auto trq2 = normal_order(parse_nc_scalar(a, "Tr(q^2)"));
    CHECK(apply_matrix_operator(trq2, T("1"), pt, hb(h), Rat(0)) == Rat(1, 4) + Rat(4));
}

TEST_CASE("eigenvalue collisions are rejected") {
    CHECK_THROWS_AS(RationalMatrixPoint({Rat(1), Rat(1)}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}), degenerate_point);
}

TEST_CASE("matrix operator values are conjugation invariant") {
    std::mt19937_64 g(5);
    auto a = weyl_algebra(3, weyl_registry());
    auto H = build_quantum_hamiltonian(Family::V, a);
    ParamSet p = random_radial_params(Family::V, g);
    for (int i = 0; i < 5; ++i) {
        auto pt = random_point(3, g);
        auto other = random_point(3, g);
        RationalMatrixPoint same(pt.z, other.G);
        auto f = random_trace_poly(g);
        CHECK(apply_matrix_operator(H, f, pt, p, Rat(2)) == apply_matrix_operator(H, f, same, p, Rat(2)));
    }
}

TEST_CASE("second-derivative chain rule against finite differences") {
    std::mt19937_64 g(9);
    auto pt = random_point(3, g);
    MPoly f = T("T1^2*T2 + 3*T3 - T2^2");
    TraceJet jet(f, pt.Q);
    DMat Q(3, std::vector<double>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Q[i][j] = pt.Q[i][j].to_double();
    auto F = [&](const DMat& M) {
        std::vector<Rat> dummy;
        double t1 = trace_pow(M, 1), t2 = trace_pow(M, 2), t3 = trace_pow(M, 3);
        return t1 * t1 * t2 + 3 * t3 - t2 * t2;
    };
    const double e = 1e-4;
    for (auto [a, b, c, d] : {std::array<int, 4>{0, 1, 2, 0}, {1, 1, 1, 1}, {0, 2, 0, 2}, {2, 1, 0, 0}}) {
        auto at = [&](double s1, double s2) {
            DMat M = Q;
            M[a][b] += s1;
            M[c][d] += s2;
            return F(M);
        };
        double fd = (at(e, e) - at(e, -e) - at(-e, e) + at(-e, -e)) / (4 * e * e);
        double ex = jet.d2(a, b, c, d).to_double();
        CHECK(std::abs(fd - ex) <= 1e-6 * std::max(1.0, std::abs(ex)));
    }
}

TEST_CASE("radial reduction, families I to V") {
    for (Family J : {Family::I, Family::II, Family::III, Family::IV, Family::V})
        for (int N = 2; N <= 3; ++N)
            for (auto& c : verify_radial_match(J, N, 5, 42)) {
                INFO(c.id << " " << c.note);
                CHECK(c.pass);
            }
}

TEST_CASE("radial VI: the printed z d_z coefficient is off, the amended one matches") {
    int printed_fail = 0;
    for (int N = 2; N <= 3; ++N)
        for (auto& c : verify_radial_match(Family::VI, N, 5, 42)) {
            bool amended = c.id.size() > 8 && c.id.substr(c.id.size() - 8) == ".amended";
            if (amended) {
                INFO(c.id << " " << c.residual);
                CHECK(c.pass);
            } else if (!c.pass) {
                ++printed_fail;
            }
        }
    CHECK(printed_fail > 0);
}

TEST_CASE("constant trace function only sees multiplication parts") {
    auto a = weyl_algebra(2, weyl_registry());
    auto H = build_quantum_hamiltonian(Family::IV, a);
    std::mt19937_64 g(3);
    ParamSet p = random_radial_params(Family::IV, g);
    auto pt = point2();
    Rat lhs = apply_matrix_operator(H, T("1"), pt, p, Rat(1, 2));
    Rat rhs = apply_radial_at(build_radial_hamiltonian(Family::IV, 2, p), T("1"), pt, Rat(1, 2));
    CHECK(lhs == rhs);
}

TEST_CASE("Tr(q^k p^2) reduction, k <= 3") {
    for (int N = 2; N <= 3; ++N)
        for (auto& c : verify_qkp2_example(N, 5, 42)) {
            INFO(c.id << " " << c.residual);
            CHECK(c.pass);
        }
}

TEST_CASE("family II exponential gauge") {
    ParamSet p;
    p.set("hbar", Rat(1, 2)).set("kappa", Rat(0)).set("theta", Rat(1, 3));
    for (int N = 1; N <= 3; ++N) CHECK(gauge_ii_check(N, p).pass);
    auto op = build_radial_hamiltonian(Family::II, 2, p);
    CHECK(operator_equal(gauge_scalar_conjugate(op, MPoly(op.reg), Rat(1, 2)), op));
    // recovered coefficients of the gauged operator
    auto g = build_radial_ii_gauged(2, p);
    auto reg = g.reg;
    RatFun expect_c = RatFun::parse(reg, "(1/2 - 1/3 - 1)*(z1+z2)");
    CHECK(g.C == expect_c);
}

TEST_CASE("radial III constant term") {
    ParamSet p;
    p.set("hbar", Rat(1, 2)).set("kappa", Rat(0)).set("theta0", Rat(0)).set("theta1", Rat(0));
    auto op = build_radial_hamiltonian(Family::III, 2, p);
    // constant part hbar^2 N (1 + N^2) / 2 = 5/4, seen on the constant function
    auto F = MPoly(op.reg, Rat(1));
    auto v = apply(op, F);
    std::vector<Rat> at{Rat(0), Rat(0), Rat(0)};
    CHECK(v.eval(at) == Rat(5, 4));
}
