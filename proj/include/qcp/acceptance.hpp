#pragma once

#include <chrono>
#include <functional>

#include "qcp/hamiltonians.hpp"
#include "qcp/moments.hpp"
#include "qcp/numeric_checks.hpp"
#include "qcp/radial.hpp"
#include "qcp/weyl.hpp"

namespace qcp {

// Full acceptance matrix. Shared by `qcp suite acceptance` and the ctest gate.

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<Checks()> run;
};

struct CriterionResult {
    int id;
    std::string title;
    double budget_s, seconds;
    Checks checks;
    bool pass() const { return all_pass(checks) && seconds <= budget_s; }
    bool corrected() const {
        for (auto& c : checks)
            if (c.corrected) return true;
        return false;
    }
    int failures() const {
        int n = 0;
        for (auto& c : checks) n += !c.pass;
        return n;
    }
};

namespace detail {

inline void append(Checks& out, const Checks& more) { out.insert(out.end(), more.begin(), more.end()); }

inline ParamSet table_abcd() {
    ParamSet p;
    p.set("a", Rat(-1, 2)).set("b", Rat(-1, 3)).set("c", Rat(-1, 5)).set("d", Rat(2, 7));
    return p;
}

inline ParamSet cp_point(Family J, const Rat& h) {
    ParamSet p = table_abcd();
    if (J != Family::VI) p = ParamSet().set("b", Rat(-1, 3)).set("c", Rat(-1, 5));
    return p.set("hbar", h);
}

} // namespace detail

inline std::vector<Criterion> acceptance_criteria(std::uint64_t seed, int bits) {
    using namespace detail;
    const Family cp_families[] = {Family::II, Family::III, Family::IV, Family::V, Family::VI};
    std::vector<Criterion> v;

    v.push_back({1, "trace reordering identities, N = 1..3, symbolic hbar", 5, [] {
                     Checks out;
                     for (int N = 1; N <= 3; ++N) append(out, trace_identities_check(N));
                     return out;
                 }});

    v.push_back({2, "[p, Tr(pqpq)] = 2 hbar pqp + hbar^2 p for N = 2, 3; classical bracket 2pqp", 5, [] {
                     Checks out;
                     for (int N = 2; N <= 3; ++N) append(out, worked_commutator_check(N));
                     return out;
                 }});

    v.push_back({3, "PVI equations of motion from [t(t-1)H_VI, q] and [t(t-1)H_VI, p], N = 2", 60,
                 [] { return eom_pvi_check(2); }});

    v.push_back({4, "PVI zero curvature in the free algebra", 60, [] { return zero_curvature_pvi_check(); }});

    v.push_back({5, "radial reduction I..VI and Tr(q^k p^2), kappa = 0, 5 points, N = 2, 3", 60, [seed] {
                     Checks out;
                     for (int N = 2; N <= 3; ++N) {
                         for (int J = 1; J <= 6; ++J) append(out, verify_radial_match(Family(J), N, 5, seed));
                         append(out, verify_qkp2_example(N, 5, seed));
                     }
                     return out;
                 }});

    v.push_back({6, "gauge lemma and Vandermonde theorem a = 0..3, hbar in {1/2, 1/3, 2}, both kappa, N = 2, 3", 30,
                 [] {
                     Checks out;
                     for (Rat h : {Rat(1, 2), Rat(1, 3), Rat(2)})
                         for (int N = 2; N <= 3; ++N) append(out, gauge_checks(N, h));
                     return out;
                 }});

    v.push_back({7, "correspondence CP_J vs radial H_J, hbar = 1 and hbar in {1/2, 2} (both kappa), N = 2, 3", 60,
                 [cp_families] {
                     Checks out;
                     ParamSet abcd = table_abcd();
                     for (Family J : cp_families)
                         for (int N = 2; N <= 3; ++N) {
                             out.push_back(table1_check(J, N, 1, Rat(1), abcd));
                             for (Rat h : {Rat(1, 2), Rat(2)})
                                 for (int br = 0; br < 2; ++br) out.push_back(table1_check(J, N, 1, h, abcd, br));
                         }
                     // diagnostic: VI with the amended radial operator
                     Check d = table1_check(Family::VI, 2, 1, Rat(1), abcd, 0, true);
                     d.note = "diagnostic; " + d.note;
                     out.push_back(d);
                     return out;
                 }});

    v.push_back({8, "N = 1 reduction to the single-particle operators, m = 1..3", 5, [cp_families] {
                     Checks out;
                     for (Rat h : {Rat(1), Rat(1, 2)})
                         for (Family J : cp_families)
                             for (int m = 1; m <= 3; ++m) {
                                 ParamSet p = cp_point(J, h);
                                 if (J == Family::VI) p.set("d", Rat(m - 1) * h - p.get("b") - p.get("c"));
                                 out.push_back(n1_check(J, m, p));
                             }
                     return out;
                 }});

    v.push_back({9, "symbolic Schroedinger equation, II..VI, (N,m) <= (2,2), hbar = 1; II, IV at hbar = 2", 600,
                 [cp_families] {
                     Checks out;
                     auto run = [&](Family J, int N, int m, const Rat& h) {
                         ParamSet p = cp_point(J, h);
                         if (J == Family::VI) p = ParamSet().set("a", Rat(-1, 2)).set("b", Rat(-1, 3)).set("c", Rat(-1, 5)).set("hbar", h);
                         out.push_back(verify_pde_symbolic(J, N, m, p, PdeForm::printed));
                         out.push_back(verify_pde_symbolic(J, N, m, p, PdeForm::n_scaled));
                         out.push_back(verify_pde_symbolic(J, N, m, p, PdeForm::n_scaled, true));
                     };
                     for (Family J : cp_families)
                         for (auto [N, m] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) run(J, N, m, Rat(1));
                     for (Family J : {Family::II, Family::IV}) run(J, 2, 2, Rat(2));
                     return out;
                 }});

    v.push_back({10, "numeric Schroedinger residual < 1e-6, V and VI, hbar = 1/2, N = m = 2, two points", 600, [bits] {
                     Checks out;
                     for (Family J : {Family::V, Family::VI})
                         for (auto& q : num::pde_points(J)) {
                             ParamSet p = q.params;
                             p.set("hbar", Rat(1, 2));
                             append(out, num::pde_numeric_checks(J, 2, 2, p, q.t, bits));
                         }
                     return out;
                 }});

    v.push_back({11, "moment recursions to 1e-10 (k = 0..6), Andreief vs product rule to 1e-8 at hbar = 1, m = 2", 300,
                 [seed, bits, cp_families] {
                     Checks out = num::moment_relation_checks(seed, bits);
                     for (Family J : cp_families) out.push_back(num::andreief_check(J, 2, 2, bits));
                     return out;
                 }});
    return v;
}

inline CriterionResult run_criterion(const Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    Checks cs = c.run();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {c.id, c.title, c.budget_s, s, std::move(cs)};
}

} // namespace qcp
