// qcp: command-line front end. JSON report on stdout, short summary on stderr.
#include <CLI11.hpp>
#include <json.hpp>

#include <boost/version.hpp>
#include <chrono>
#include <fstream>
#include <gmp.h>
#include <iostream>
#include <mpfr.h>

#include "qcp/acceptance.hpp"

using json = nlohmann::ordered_json;
using namespace qcp;

namespace {

struct Options {
    std::string verb, target, suite;
    std::vector<std::string> params_list;
    std::string family, params, hbar, t, mode = "symbolic", form = "printed", kind = "cp", identity, json_path;
    int N = 0, m = 0, a = -1, trials = 5, kmax = 6, kappa_branch = -1;
    std::uint64_t seed = 42;
    int prec = 192;
    bool amended = false, timings = false, no_control = false;
    CLI::App* app = nullptr;

    bool given(const std::string& opt) const { return app->count("--" + opt) > 0; }
};

// collects every missing option before complaining
void need(const Options& o, std::initializer_list<const char*> opts) {
    std::string missing;
    for (auto* s : opts)
        if (!o.given(s)) missing += (missing.empty() ? "--" : ", --") + std::string(s);
    if (!missing.empty()) throw usage_error("missing option(s): " + missing);
}

struct Report {
    Checks checks;
    json extra = json::object();
    std::vector<CriterionResult> criteria;
};

json check_json(const Check& c) {
    json j;
    j["id"] = c.id;
    j["anchor"] = c.anchor;
    j["pass"] = c.pass;
    j["residual"] = c.residual;
    if (c.corrected) j["corrected"] = true;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

std::string status_of(const Checks& cs) {
    bool corr = false;
    for (auto& c : cs) {
        if (!c.pass) return "fail";
        corr = corr || c.corrected;
    }
    return corr ? "resolved-with-correction" : "pass";
}

ParamSet base_params(const Options& o) {
    ParamSet p = ParamSet::parse(o.params);
    if (o.given("hbar")) p.set("hbar", Rat::parse(o.hbar));
    return p;
}

std::vector<Family> families_or(const Options& o, std::vector<Family> all) {
    if (o.given("family")) return {parse_family(o.family)};
    return all;
}

const std::vector<Family> kCp = {Family::II, Family::III, Family::IV, Family::V, Family::VI};

void append(Checks& out, const Checks& more) { out.insert(out.end(), more.begin(), more.end()); }

std::vector<int> branches(const Options& o) {
    if (o.kappa_branch == 0 || o.kappa_branch == 1) return {o.kappa_branch};
    return {0, 1};
}

// ---- verbs -------------------------------------------------------------

Report verify_weyl(const Options& o) {
    need(o, {"N"});
    Report r;
    append(r.checks, trace_identities_check(o.N));
    append(r.checks, worked_commutator_check(o.N));
    if (!o.identity.empty()) {
        auto eq = o.identity.find('=');
        if (eq == std::string::npos) throw usage_error("--identity expects 'lhs = rhs'");
        auto a = weyl_algebra(o.N, weyl_registry());
        std::string lhs = o.identity.substr(0, eq), rhs = o.identity.substr(eq + 1);
        auto d = parse_nc_matrix(a, "(" + lhs + ") - (" + rhs + ")");
        Check c{"weyl.identity.N" + std::to_string(o.N), o.identity, true, "0", "", false};
        for (int i = 0; i < d.rows() && c.pass; ++i)
            for (int j = 0; j < d.cols(); ++j) {
                auto x = normal_order(d(i, j));
                if (!x.is_zero()) {
                    c.pass = false;
                    c.residual = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + x.str();
                    break;
                }
            }
        r.checks.push_back(c);
    }
    return r;
}

Report verify_radial(const Options& o) {
    need(o, {"N"});
    Report r;
    for (Family J : families_or(o, {Family::I, Family::II, Family::III, Family::IV, Family::V, Family::VI}))
        append(r.checks, verify_radial_match(J, o.N, o.trials, o.seed));
    if (!o.given("family")) append(r.checks, verify_qkp2_example(o.N, o.trials, o.seed));
    return r;
}

Report verify_gauge(const Options& o) {
    need(o, {"N", "hbar"});
    Rat h = Rat::parse(o.hbar);
    if (h.is_zero()) throw usage_error("hbar must be nonzero");
    Report r;
    if (o.given("a")) {
        if (o.a < 0 || o.a > 3) throw usage_error("--a must be 0..3");
        for (int br : branches(o)) r.checks.push_back(theorem_gauge_check(o.a, o.N, h, br));
    } else {
        for (auto& c : gauge_checks(o.N, h, o.m > 0 ? o.m : 1))
            if (o.kappa_branch < 0 || c.id.find(kappa_label(o.kappa_branch)) != std::string::npos) r.checks.push_back(c);
    }
    return r;
}

Report verify_table1(const Options& o) {
    need(o, {"N", "hbar"});
    Rat h = Rat::parse(o.hbar);
    ParamSet abcd = ParamSet::parse(o.params);
    int m = o.m > 0 ? o.m : 1;
    Report r;
    for (Family J : families_or(o, kCp)) {
        if (h.is_one()) r.checks.push_back(table1_check(J, o.N, m, h, abcd, 0, o.amended));
        else
            for (int br : branches(o)) r.checks.push_back(table1_check(J, o.N, m, h, abcd, br, o.amended));
    }
    return r;
}

Report verify_n1(const Options& o) {
    need(o, {"m", "hbar"});
    ParamSet p = base_params(o);
    Report r;
    for (Family J : families_or(o, kCp)) r.checks.push_back(n1_check(J, o.m, p));
    return r;
}

Report verify_pde(const Options& o) {
    need(o, {"family", "N", "m", "hbar"});
    Family J = parse_family(o.family);
    ParamSet p = base_params(o);
    PdeForm form;
    if (o.form == "printed") form = PdeForm::printed;
    else if (o.form == "n_scaled") form = PdeForm::n_scaled;
    else throw usage_error("--form must be printed or n_scaled");
    Report r;
    if (o.mode == "symbolic") {
        r.checks.push_back(verify_pde_symbolic(J, o.N, o.m, p, form));
        if (form == PdeForm::printed) r.checks.push_back(verify_pde_symbolic(J, o.N, o.m, p, PdeForm::n_scaled));
        if (!o.no_control) r.checks.push_back(verify_pde_symbolic(J, o.N, o.m, p, PdeForm::n_scaled, true));
    } else if (o.mode == "numeric") {
        need(o, {"t"});
        Checks cs = num::pde_numeric_checks(J, o.N, o.m, p, Rat::parse(o.t), o.prec, !o.no_control);
        for (auto& c : cs)
            if (form == PdeForm::printed || c.anchor != pde_anchor(PdeForm::printed)) r.checks.push_back(c);
    } else {
        throw usage_error("--mode must be symbolic or numeric");
    }
    return r;
}

json op_json(const DiffOp& op) {
    json j;
    j["N"] = op.N;
    auto text = [](const RatFun& f) { return f.is_zero() ? std::string("0") : f.str(); };
    for (int r = 0; r < op.N; ++r) j["A" + std::to_string(r + 1)] = text(op.A[r]);
    for (int r = 0; r < op.N; ++r) j["B" + std::to_string(r + 1)] = text(op.B[r]);
    j["C"] = text(op.C);
    j["form"] = "sum_rho A_rho d_rho^2 + B_rho d_rho + C";
    return j;
}

Report print_hamiltonian(const Options& o) {
    need(o, {"family", "hbar"});
    Family J = parse_family(o.family);
    ParamSet p = base_params(o);
    int m = o.m > 0 ? o.m : 1;
    Report r;
    DiffOp op;
    if (o.kind == "cp") {
        need(o, {"N"});
        op = build_cp_hamiltonian(J, o.N, m, p);
    } else if (o.kind == "radial") {
        need(o, {"N"});
        // without explicit theta parameters the correspondence map supplies them
        bool has_theta = p.has("theta") || p.has("theta0");
        if (!has_theta && J != Family::I) {
            Rat h = p.get("hbar");
            int br = o.kappa_branch == 1 ? 1 : 0;
            ParamSet mp = table1_params(J, h, h.is_one() ? Table1Mode::ungauged : Table1Mode::gauged, m, o.N, p, br);
            r.extra["mapped_params"] = mp.str();
            p = mp;
        }
        if (!p.has("kappa")) p.set("kappa", Rat(0));
        op = J == Family::II && !has_theta ? build_radial_ii_gauged(o.N, p) : build_radial_hamiltonian(J, o.N, p, o.amended);
    } else if (o.kind == "nagoya") {
        if (!p.has("a")) p.set("a", Rat(m) * p.get("hbar"));
        op = build_nagoya_single(J, p);
    } else {
        throw usage_error("--kind must be cp, radial or nagoya");
    }
    r.extra["operator"] = op_json(op);
    std::cout.flush();
    std::cerr << op.str() << "\n";
    return r;
}

Report oracle_moments_verb(const Options& o) {
    need(o, {"family"});
    Family J = parse_family(o.family);
    num::NumericPoint q = num::fixed_point(J);
    if (o.given("params")) q.params = ParamSet::parse(o.params);
    if (o.given("t")) q.t = Rat::parse(o.t);
    Report r;
    json rows = json::array();
    for (auto& row : num::oracle_moments(J, o.kmax, q.params, q.t, o.prec))
        rows.push_back({{"symbol", row.symbol}, {"re", row.re}, {"im", row.im}, {"error", row.error}});
    r.extra["point"] = q.str();
    r.extra["moments"] = rows;
    double w = num::with_precision(o.prec, [&]<class R>(std::type_identity<R>) {
        return num::relation_worst<R>(J, q, std::max(0, o.kmax - 2));
    });
    r.checks.push_back({"moments.relations." + family_name(J), "0 = int d/du [u^n c_J(u) Theta_J(u)] du",
                        w < num::kOracleTol, num::sci(w), "at " + q.str(), false});
    return r;
}

Report suite_acceptance(const Options& o) {
    Report r;
    for (auto& c : acceptance_criteria(o.seed, o.prec)) {
        std::cerr << "criterion " << c.id << " ..." << std::endl;
        r.criteria.push_back(run_criterion(c));
        for (auto& x : r.criteria.back().checks) r.checks.push_back(x);
    }
    return r;
}

Report dispatch(const Options& o) {
    const std::string& v = o.verb;
    const std::string& w = o.target;
    if (v == "verify") {
        if (w == "weyl") return verify_weyl(o);
        if (w == "eom") return {eom_pvi_check(o.given("N") ? o.N : 2)};
        if (w == "zero-curvature") return {zero_curvature_pvi_check()};
        if (w == "radial") return verify_radial(o);
        if (w == "gauge") return verify_gauge(o);
        if (w == "table1") return verify_table1(o);
        if (w == "n1") return verify_n1(o);
        if (w == "pde") return verify_pde(o);
        throw usage_error("verify what? (weyl, eom, zero-curvature, radial, gauge, table1, n1, pde)");
    }
    if (v == "print" && w == "hamiltonian") return print_hamiltonian(o);
    if (v == "oracle" && w == "moments") return oracle_moments_verb(o);
    if (v == "suite" && w == "acceptance") return suite_acceptance(o);
    throw usage_error("unknown command '" + v + (w.empty() ? "" : " " + w) + "'");
}

json environment(const Options& o) {
    json e;
    e["qcp"] = "0.1.0";
    e["compiler"] = __VERSION__;
    e["gmp"] = gmp_version;
    e["mpfr"] = mpfr_get_version();
    e["boost"] = BOOST_LIB_VERSION;
    e["precision_bits"] = o.prec;
    return e;
}

json task_echo(const Options& o) {
    json t;
    t["verb"] = o.verb;
    t["kind"] = o.target;
    if (o.given("params")) t["params"] = o.params;
    for (const char* k : {"family", "hbar", "t", "mode", "form"})
        if (o.given(k)) t[k] = o.app->get_option(std::string("--") + k)->as<std::string>();
    if (o.given("kind")) t["operator_kind"] = o.kind;
    for (const char* k : {"N", "m", "a", "trials", "kmax", "kappa-branch"})
        if (o.given(k)) t[k] = o.app->get_option(std::string("--") + k)->as<int>();
    t["seed"] = o.seed;
    t["precision_bits"] = o.prec;
    return t;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcp: exact and high-precision checks for quantum Calogero-Painleve systems"};
    Options o;
    o.app = &app;
    app.add_option("verb", o.verb, "verify | print | oracle | suite");
    app.add_option("target", o.target, "what to verify / print / evaluate");
    app.add_option("--suite", o.suite, "shorthand for `suite <name>`");
    app.add_option("--family", o.family, "I..VI");
    app.add_option("--N", o.N, "number of particles / matrix size")->check(CLI::Range(1, 8));
    app.add_option("--m", o.m, "degree in each z")->check(CLI::Range(1, 8));
    app.add_option("--hbar", o.hbar, "rational, e.g. 1/2");
    app.add_option("--params", o.params_list, "key=value list, e.g. b=-1/3,c=-1/5");
    app.add_option("--t", o.t, "time point for numeric evaluation");
    app.add_option("--a", o.a, "gauge theorem index 0..3");
    app.add_option("--kappa-branch", o.kappa_branch, "0: kappa = 1/hbar - 1, 1: kappa = -1/hbar (default both)");
    app.add_option("--trials", o.trials, "random points for radial checks")->check(CLI::PositiveNumber);
    app.add_option("--mode", o.mode, "symbolic | numeric");
    app.add_option("--form", o.form, "printed | n_scaled");
    app.add_option("--kind", o.kind, "cp | radial | nagoya");
    app.add_option("--kmax", o.kmax, "highest moment index")->check(CLI::Range(0, 40));
    app.add_option("--identity", o.identity, "extra Weyl identity 'lhs = rhs' to normal-order");
    app.add_flag("--amended", o.amended, "use the amended family VI radial operator");
    app.add_flag("--no-control", o.no_control, "skip negative controls");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--prec", o.prec, "working precision in bits (128..256)");
    app.add_option("--json", o.json_path, "also write the report to this file");
    app.add_flag("--timings", o.timings, "include wall-clock timings (breaks byte-identical reports)");
    app.set_config("--config", "", "key = value file mirroring the long options");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    for (auto& s : o.params_list) o.params += (o.params.empty() ? "" : ",") + s;
    if (!o.suite.empty()) {
        o.verb = "suite";
        o.target = o.suite;
    }

    json out;
    out["schema"] = 1;
    out["task"] = task_echo(o);
    int code = 0;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (o.prec < 128 || o.prec > 256) throw usage_error("--prec must be between 128 and 256 bits");
        if (o.given("params")) ParamSet::parse(o.params); // unknown keys and bad rationals fail early
        Report r = dispatch(o);
        std::string status = status_of(r.checks);
        if (!r.criteria.empty()) {
            json cj = json::array();
            bool red = false;
            for (auto& c : r.criteria) {
                json x;
                x["criterion"] = c.id;
                x["title"] = c.title;
                x["status"] = !c.pass() ? "fail" : c.corrected() ? "resolved-with-correction" : "pass";
                red = red || !c.pass();
                if (o.timings) x["ms"] = std::llround(c.seconds * 1000);
                x["budget_ms"] = std::llround(c.budget_s * 1000);
                x["checks"] = json::array();
                for (auto& k : c.checks) x["checks"].push_back(check_json(k));
                cj.push_back(x);
            }
            if (red) status = "fail";
            out["status"] = status;
            out["criteria"] = cj;
        } else {
            out["status"] = status;
            out["checks"] = json::array();
            for (auto& c : r.checks) out["checks"].push_back(check_json(c));
        }
        for (auto& [k, v] : r.extra.items()) out[k] = v;
        code = status == "fail" ? 1 : 0;

        for (auto& c : r.checks)
            std::cerr << (c.pass ? (c.corrected ? "corr " : "ok   ") : "FAIL ") << c.id << "  " << c.residual.substr(0, 120)
                      << "\n";
        for (auto& c : r.criteria)
            std::cerr << "criterion " << c.id << ": " << (c.pass() ? "pass" : "FAIL") << "  " << c.title << "\n";
        std::cerr << "status: " << status << " (" << r.checks.size() << " checks)\n";
    } catch (const usage_error& e) {
        out["status"] = "usage-error";
        out["error"] = e.what();
        std::cerr << "usage error: " << e.what() << "\n";
        code = 2;
    } catch (const domain_error& e) {
        out["status"] = "usage-error";
        out["error"] = std::string("outside the admissible domain: ") + e.what();
        std::cerr << "usage error: " << e.what() << "\n";
        code = 2;
    } catch (const unsupported_mode& e) {
        out["status"] = "usage-error";
        out["error"] = std::string("unsupported: ") + e.what();
        std::cerr << "unsupported: " << e.what() << "\n";
        code = 2;
    } catch (const std::exception& e) {
        out["status"] = "fail";
        out["error"] = e.what();
        std::cerr << "error: " << e.what() << "\n";
        code = 1;
    }
    if (o.timings)
        out["ms"] = std::llround(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    out["environment"] = environment(o);
    std::string text = out.dump(2);
    std::cout << text << std::endl;
    if (!o.json_path.empty()) std::ofstream(o.json_path) << text << "\n";
    return code;
}
