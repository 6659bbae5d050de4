#include <catch_amalgamated.hpp>

#include <random>

#include "qcp/hamiltonians.hpp"

using namespace qcp;

namespace {

RatFun rf(int N, const std::string& s) { return RatFun::parse(diffop_registry(N), s); }

// swapping z_r and z_s maps the coefficient family to itself
bool symmetric_operator(const DiffOp& op) {
    int n = op.reg->size();
    for (int r = 0; r < op.N; ++r)
        for (int s = r + 1; s < op.N; ++s) {
            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i;
            std::swap(perm[r], perm[s]);
            for (int u = 0; u < op.N; ++u) {
                int v = u == r ? s : u == s ? r : u;
                if (!(op.A[u].permute(perm) == op.A[v]) || !(op.B[u].permute(perm) == op.B[v])) return false;
            }
            if (!(op.C.permute(perm) == op.C)) return false;
        }
    return true;
}

ParamSet cp_params(Family J, const Rat& hbar) {
    ParamSet p;
    p.set("hbar", hbar);
    switch (J) {
    case Family::III:
    case Family::IV: p.set("b", Rat(-1, 3)); break;
    case Family::V: p.set("b", Rat(-1, 3)).set("c", Rat(-1, 5)); break;
    case Family::VI: p.set("a", Rat(-1, 2)).set("b", Rat(-1, 3)).set("c", Rat(-1, 5)).set("d", Rat(2, 7)); break;
    default: break;
    }
    return p;
}

ParamSet radial_params(Family J) {
    ParamSet p;
    p.set("hbar", Rat(1, 2)).set("kappa", Rat(1));
    switch (J) {
    case Family::II: p.set("theta", Rat(1, 3)); break;
    case Family::III:
    case Family::IV: p.set("theta0", Rat(1, 3)).set("theta1", Rat(-2, 5)); break;
    case Family::V: p.set("theta0", Rat(1, 3)).set("theta1", Rat(-2, 5)).set("theta2", Rat(3, 7)); break;
    case Family::VI:
        p.set("theta0", Rat(1, 3)).set("theta1", Rat(-2, 5)).set("thetat", Rat(3, 7)).set("k2", Rat(4, 9));
        break;
    default: break;
    }
    return p;
}

const Family kFamilies[] = {Family::II, Family::III, Family::IV, Family::V, Family::VI};

} // namespace

TEST_CASE("canonicalize: divided difference and Calogero potential over ordered pairs") {
    auto reg = diffop_registry(2);
    DiffOp dd = canonicalize(2, {{Term::Kind::divided_difference, RatFun(reg, Rat(1))}});
    RatFun d12 = rf(2, "z1-z2");
    CHECK(dd.B[0] == Rat(2) * d12.inverse());
    CHECK(dd.B[1] == Rat(-2) * d12.inverse());
    DiffOp pot = canonicalize(2, {{Term::Kind::calogero_single, RatFun(reg, Rat(1))}});
    CHECK(pot.C == Rat(2) * d12.pow(-2));
    CHECK(canonicalize(2, {}).is_zero());
}

TEST_CASE("canonicalize is independent of term order") {
    auto reg = diffop_registry(3);
    TermSpec ts{{Term::Kind::second, rf(3, "z1^2")},
                {Term::Kind::divided_difference, rf(3, "z1*t")},
                {Term::Kind::calogero_pair, rf(3, "z1")},
                {Term::Kind::mult, rf(3, "3*z1")},
                {Term::Kind::first, rf(3, "z1-t")}};
    DiffOp a = canonicalize(3, ts);
    std::reverse(ts.begin(), ts.end());
    CHECK(operator_equal(a, canonicalize(3, ts)));
    std::rotate(ts.begin(), ts.begin() + 2, ts.end());
    CHECK(operator_equal(a, canonicalize(3, ts)));
}

TEST_CASE("apply: divided differences on symmetric polynomials") {
    auto reg = diffop_registry(2);
    DiffOp dd = canonicalize(2, {{Term::Kind::divided_difference, RatFun(reg, Rat(1))}});
    // sum (d_r - d_s)/(z_r - z_s) over ordered pairs
    CHECK(apply(dd, MPoly::parse(reg, "z1^2+z2^2")) == RatFun(reg, Rat(4)));
    CHECK(apply(dd, MPoly::parse(reg, "z1+z2")).is_zero());
    CHECK_THROWS_AS(apply(dd, MPoly::parse(reg, "z1")), domain_error);
}

TEST_CASE("apply: second-order part of CP_II kills e2") {
    auto reg = diffop_registry(2);
    DiffOp op(2);
    op.A[0] = op.A[1] = RatFun(reg, Rat(1, 2));
    CHECK(apply(op, MPoly::parse(reg, "z1*z2")).is_zero());
}

TEST_CASE("Hamiltonians with kappa(kappa+1) = 0 map symmetric polynomials to polynomials") {
    for (Family J : kFamilies)
        for (int N = 2; N <= 3; ++N) {
            auto op = build_cp_hamiltonian(J, N, 2, cp_params(J, Rat(1, 2)));
            auto reg = op.reg;
            MPoly f(reg);
            for (int r = 0; r < N; ++r) f += MPoly::var(reg, r, 3) + MPoly::var(reg, r, 1) * MPoly::var(reg, N);
            REQUIRE_NOTHROW(apply(op, f, true));
        }
}

TEST_CASE("printed CP coefficients") {
    auto p3 = cp_params(Family::III, Rat(1, 2));
    auto op3 = build_cp_hamiltonian(Family::III, 2, 2, p3);
    // first order -hbar(z^2 + (b+N-1) z + t) plus the divided-difference part hbar z^2 * 2/(z1-z2)
    CHECK(op3.B[0] == rf(2, "-1/2*(z1^2 + 2/3*z1 + t)") + rf(2, "z1^2") * rf(2, "z1-z2").inverse());
    CHECK(op3.left == MPoly::parse(op3.reg, "t"));

    auto op4 = build_cp_hamiltonian(Family::IV, 2, 3, cp_params(Family::IV, Rat(1, 2)));
    // constant hbar N m t = 3t, and m hbar sum z
    CHECK(op4.C == rf(2, "3/2*(z1+z2) + 3*t"));

    auto p6 = cp_params(Family::VI, Rat(1));
    auto op6 = build_cp_hamiltonian(Family::VI, 2, 1, p6);
    // first order contains -(d+N-1) z(z-1)
    RatFun plain = rf(2, "-(-5/6*(z1-1)*(z1-t) - 1/5*z1*(z1-t) + 9/7*z1*(z1-1))");
    CHECK(op6.B[0] - plain == rf(2, "2*z1*(z1-1)*(z1-t)") * rf(2, "z1-z2").inverse());
    CHECK(op6.left == MPoly::parse(op6.reg, "t*(t-1)"));
}

TEST_CASE("CP_V constant term") {
    auto op = build_cp_hamiltonian(Family::V, 2, 2, cp_params(Family::V, Rat(1, 2)));
    // hbar N m (b + c + t - hbar(m-1) - N + 1) - m hbar t sum z
    CHECK(op.C == rf(2, "2*(-1/3 - 1/5 + t - 1/2 - 1) - t*(z1+z2)"));
}

TEST_CASE("single-particle operators") {
    ParamSet p;
    p.set("hbar", Rat(1, 2)).set("a", Rat(2, 3)).set("b", Rat(-1, 3)).set("c", Rat(-1, 5)).set("d", Rat(1, 7));
    auto ii = build_nagoya_single(Family::II, p);
    CHECK(ii.C == rf(1, "2/3*z1"));
    auto v = build_nagoya_single(Family::V, p);
    CHECK(v.C == rf(1, "2/3*(-1/3 - 1/5 - 2/3 + 1/2 + t - t*z1)"));
    auto vi = build_nagoya_single(Family::VI, p);
    CHECK(vi.C == rf(1, "(-1/3 - 1/5 + 1/7 + 1/2)*2/3*(z1 - t)"));
}

TEST_CASE("every builder yields a symmetric operator") {
    for (Family J : kFamilies)
        for (int N = 2; N <= 3; ++N) {
            CHECK(symmetric_operator(build_cp_hamiltonian(J, N, 2, cp_params(J, Rat(1, 3)))));
            CHECK(symmetric_operator(build_radial_hamiltonian(J, N, radial_params(J))));
        }
    CHECK(symmetric_operator(build_radial_hamiltonian(Family::I, 3, ParamSet().set("hbar", Rat(2)).set("kappa", Rat(1)))));
}

TEST_CASE("Vandermonde conjugation round trip") {
    for (Family J : kFamilies)
        for (Rat R : {Rat(1, 2), Rat(-3), Rat(2, 3)}) {
            auto op = build_cp_hamiltonian(J, 3, 1, cp_params(J, Rat(1, 2)));
            CHECK(operator_equal(conjugate_by_vandermonde(conjugate_by_vandermonde(op, R), -R), op));
        }
    auto op = build_radial_hamiltonian(Family::V, 2, radial_params(Family::V));
    CHECK(operator_equal(conjugate_by_vandermonde(op, Rat(0)), op));
}

TEST_CASE("operator_equal basics") {
    auto a = build_cp_hamiltonian(Family::II, 2, 1, cp_params(Family::II, Rat(1)));
    auto b = build_cp_hamiltonian(Family::III, 2, 1, cp_params(Family::III, Rat(1)));
    CHECK(operator_equal(a, a));
    CHECK_FALSE(operator_equal(a, b));
}

TEST_CASE("correspondence parameters") {
    ParamSet abcd;
    abcd.set("b", Rat(-1, 3));
    auto p = table1_params(Family::IV, Rat(1, 2), Table1Mode::gauged, 2, 3, abcd);
    CHECK(p.get("theta0") == Rat(-1, 3) * Rat(-1) - Rat(1, 2));
    CHECK(p.get("theta1") == Rat(-1, 3) + Rat(1) - Rat(3) - Rat(1));
    auto p2 = table1_params(Family::II, Rat(1), Table1Mode::ungauged, 2, 3, ParamSet());
    CHECK(p2.get("theta") == Rat(1, 2) - Rat(3) - Rat(2));
    CHECK_THROWS_AS(table1_params(Family::II, Rat(2), Table1Mode::ungauged, 1, 2, ParamSet()), usage_error);
}

TEST_CASE("radial VI depends on k only through k^2") {
    auto p = radial_params(Family::VI);
    ParamSet q = p;
    q.set("k", Rat(-2, 3));
    ParamSet r = p;
    r.set("k", Rat(2, 3));
    CHECK(operator_equal(build_radial_hamiltonian(Family::VI, 2, q), build_radial_hamiltonian(Family::VI, 2, r)));
    CHECK(operator_equal(build_radial_hamiltonian(Family::VI, 2, q), build_radial_hamiltonian(Family::VI, 2, p)));
}

TEST_CASE("N = 1 reduction for all five families") {
    for (Family J : kFamilies)
        for (int m = 1; m <= 3; ++m) {
            ParamSet p = cp_params(J, Rat(1, 2));
            if (J == Family::VI) p.set("d", Rat(m - 1) * Rat(1, 2) - p.get("b") - p.get("c"));
            auto c = n1_check(J, m, p);
            INFO(c.id << " " << c.residual);
            CHECK(c.pass);
        }
    ParamSet bad = cp_params(Family::VI, Rat(1));
    CHECK_THROWS_AS(n1_check(Family::VI, 2, bad), usage_error);
}

TEST_CASE("gauge identities: a = 0, 1 exact; a = 2, 3 exact up to lambda = hbar^2 - 1") {
    for (Rat h : {Rat(1, 2), Rat(1, 3), Rat(2)})
        for (int N = 2; N <= 3; ++N)
            for (auto& c : gauge_checks(N, h)) {
                INFO(c.id << " " << c.residual << " " << c.note);
                CHECK(c.pass);
                if (c.corrected) CHECK((c.id.find("theorem.a2") != std::string::npos ||
                                        c.id.find("theorem.a3") != std::string::npos ||
                                        c.id.find("lemma") != std::string::npos));
            }
}

TEST_CASE("correspondence table: exact rows and corrected rows") {
    ParamSet abcd;
    abcd.set("b", Rat(-1, 3)).set("c", Rat(-1, 5)).set("a", Rat(-1, 2)).set("d", Rat(2, 7));
    // hbar = 1, kappa = 0: II exact, III first-order sign mismatch
    CHECK(table1_check(Family::II, 2, 1, Rat(1), abcd).pass);
    auto c3 = table1_check(Family::III, 2, 1, Rat(1), abcd);
    CHECK_FALSE(c3.pass);
    for (Family J : {Family::IV, Family::V}) {
        auto c = table1_check(J, 2, 1, Rat(1), abcd);
        INFO(c.id << " " << c.note);
        CHECK(c.pass);
    }
    // printed radial VI fails in first order; the amended one only by an energy shift at hbar = 1
    CHECK_FALSE(table1_check(Family::VI, 2, 1, Rat(1), abcd).pass);
    CHECK(table1_check(Family::VI, 2, 1, Rat(1), abcd, 0, true).pass);
}
