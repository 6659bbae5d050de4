#include <catch_amalgamated.hpp>

#include "qcp/numeric_checks.hpp"

using namespace qcp;
using namespace qcp::num;

TEST_CASE("family II moment is finite, nonzero and stable across precisions") {
    ParamSet p;
    auto a = moment_numeric<R128>(Family::II, 0, 0, Rat(0), p);
    auto b = moment_numeric<R256>(Family::II, 0, 0, Rat(0), p);
    CHECK(to_double(a.value.abs()) > 0.1);
    CHECK(std::abs(to_double(a.value.re) - to_double(R128(b.value.re))) < 1e-30);
    CHECK(std::abs(to_double(a.value.im) - to_double(R128(b.value.im))) < 1e-30);
}

TEST_CASE("moment interface contract") {
    ParamSet v;
    v.set("b", Rat(-1, 3)).set("c", Rat(-1, 5));
    CHECK_THROWS_AS(moment_numeric<R128>(Family::V, 0, 1, Rat(1, 2), v), usage_error);
    ParamSet bad;
    bad.set("b", Rat(1, 3)).set("c", Rat(-1, 5));
    CHECK_THROWS_AS(moment_numeric<R128>(Family::V, 0, 0, Rat(1, 2), bad), domain_error);
    ParamSet iii;
    iii.set("b", Rat(1, 3));
    CHECK_THROWS_AS(moment_numeric<R128>(Family::III, 0, 0, Rat(1, 2), iii), domain_error);
    ParamSet vi;
    vi.set("a", Rat(-1, 4)).set("b", Rat(-1, 5)).set("c", Rat(-1, 3)).set("d", Rat(1, 2));
    CHECK_THROWS_AS(moment_numeric<R128>(Family::VI, 0, 0, Rat(1, 2), vi), domain_error);
    CHECK_NOTHROW(moment_numeric<R128>(Family::VI, 2, 1, Rat(3, 2), vi));
    CHECK_THROWS_AS(with_precision(100, [](auto) { return 0; }), usage_error);
}

TEST_CASE("family V relation at a hand-picked point") {
    ParamSet p;
    p.set("b", Rat(-1, 3)).set("c", Rat(-2, 5));
    Rat t(1, 2);
    const R192 b = to_real<R192>(Rat(-1, 3)), c = to_real<R192>(Rat(-2, 5)), tr = to_real<R192>(t);
    for (int k = 1; k <= 6; ++k) {
        R192 a0 = moment_numeric<R192>(Family::V, k - 1, 0, t, p).value.re;
        R192 a1 = moment_numeric<R192>(Family::V, k, 0, t, p).value.re;
        R192 a2 = moment_numeric<R192>(Family::V, k + 1, 0, t, p).value.re;
        R192 r = (k - b - 1) * a0 + (b + c + 1 - k + tr) * a1 - tr * a2;
        R192 s = std::max({R192(abs((k - b - 1) * a0)), R192(abs((b + c + 1 - k + tr) * a1)), R192(abs(tr * a2))});
        CHECK(to_double(abs(r) / s) < 1e-10);
    }
}

TEST_CASE("moment relations hold numerically for all families") {
    for (auto& c : moment_relation_checks(20240601, 192)) {
        INFO(c.id << " " << c.residual << " " << c.note);
        CHECK(c.pass);
    }
}

TEST_CASE("N = 1, m = 1: Phi = z nu0 - nu1") {
    for (Family J : integral_families()) {
        auto q = fixed_point(J);
        auto ph = phi_numeric<R128>(J, 1, 1, Rat(1), q.t, q.params, 5);
        auto n0 = moment_numeric<R128>(J, 0, 0, q.t, q.params).value;
        auto n1 = moment_numeric<R128>(J, 1, 0, q.t, q.params).value;
        double g0 = to_double((ph.coef[1] - n0).abs() / n0.abs());
        double g1 = to_double((ph.coef[0] + n1).abs() / n1.abs());
        INFO(family_name(J));
        CHECK(g0 < 1e-12);
        CHECK(g1 < 1e-12);
    }
}

TEST_CASE("phi_numeric is symmetric in z") {
    auto q = fixed_point(Family::V);
    auto ph = phi_numeric<R128>(Family::V, 3, 2, Rat(1, 2), q.t, q.params, 3);
    for (int i = 0; i < int(ph.coef.size()); ++i) {
        auto x = ph.exps(i);
        std::swap(x[0], x[2]);
        int j = ph.index(x);
        CHECK(to_double((ph.coef[i] - ph.coef[j]).abs()) <= 1e-30 * to_double(max_abs(ph.coef)));
    }
}

TEST_CASE("refining the rule moves the result by less than the estimate") {
    for (Family J : {Family::IV, Family::V}) {
        auto q = fixed_point(J);
        auto a = phi_numeric<R128>(J, 2, 2, Rat(1, 2), q.t, q.params, 3);
        auto b = phi_numeric<R128>(J, 2, 2, Rat(1, 2), q.t, q.params, 4);
        double moved = to_double(max_diff(a.coef, b.coef) / max_abs(b.coef));
        INFO(family_name(J) << " moved " << moved << " estimate " << to_double(a.rel_error));
        CHECK(moved <= to_double(a.rel_error));
    }
}

TEST_CASE("Andreief determinant agrees with the product rule") {
    CHECK(andreief_check(Family::IV, 2, 2, 128).pass);
    CHECK(andreief_check(Family::V, 1, 1, 128).pass);
    auto c = andreief_check(Family::II, 1, 2, 128);
    INFO(c.residual << " " << c.note);
    CHECK(c.pass);
}

TEST_CASE("symbolic reduction with numeric seeds matches the product rule") {
    for (Family J : integral_families()) {
        auto c = seeds_cross_check(J, 2, 2, 128);
        INFO(c.id << " " << c.residual << " " << c.note);
        CHECK(c.pass);
    }
}

TEST_CASE("numeric PDE, family V at hbar = 1/2") {
    ParamSet p;
    p.set("hbar", Rat(1, 2)).set("b", Rat(-1, 3)).set("c", Rat(-2, 5));
    auto cs = pde_numeric_checks(Family::V, 2, 2, p, Rat(-2, 3), 128);
    REQUIRE(cs.size() == 3);
    CHECK_FALSE(cs[0].pass); // printed time factor
    CHECK(cs[1].pass);       // N hbar d_t
    CHECK(cs[2].pass);       // control leaves an O(1) residual
}

TEST_CASE("numeric PDE, family VI at hbar = 1 cross-checks the symbolic pass") {
    ParamSet p;
    p.set("hbar", Rat(1)).set("a", Rat(-1, 4)).set("b", Rat(-1, 3)).set("c", Rat(-2, 5));
    auto cs = pde_numeric_checks(Family::VI, 2, 2, p, Rat(5, 2), 128, false);
    REQUIRE(cs.size() == 2);
    CHECK(std::stod(cs[1].residual) < 1e-8);
}
