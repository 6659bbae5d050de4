#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcp/check.hpp"
#include "qcp/diffop.hpp"
#include "qcp/family.hpp"
#include "qcp/hamiltonians.hpp"
#include "qcp/params.hpp"

namespace qcp {

// nu_k = int u^k Theta du, rho_k = int u^k (t-u)^{-1} Theta du (VI only)
struct MomentSymbol {
    enum class Kind { nu, rho };
    Kind kind = Kind::nu;
    int k = 0;
    friend auto operator<=>(const MomentSymbol&, const MomentSymbol&) = default;
    std::string str() const { return (kind == Kind::nu ? "nu" : "rho") + std::to_string(k); }
};

inline MomentSymbol nu(int k) { return {MomentSymbol::Kind::nu, k}; }
inline MomentSymbol rho(int k) { return {MomentSymbol::Kind::rho, k}; }

// sum of coefficient * (product of symbols); coefficients are RatFuns that may
// only use the variable t of the registry
class MomentExpr {
public:
    using Key = std::vector<MomentSymbol>; // sorted
    using Terms = std::map<Key, RatFun>;

    MomentExpr() = default;
    explicit MomentExpr(RegPtr r) : reg_(std::move(r)) {}
    MomentExpr(RegPtr r, Key k, const RatFun& c) : reg_(std::move(r)) { add(std::move(k), c); }
    static MomentExpr symbol(const RegPtr& r, MomentSymbol s) { return MomentExpr(r, {s}, RatFun(r, Rat(1))); }

    const RegPtr& reg() const { return reg_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add(Key k, const RatFun& c) {
        if (c.is_zero()) return;
        std::sort(k.begin(), k.end());
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_.emplace(std::move(k), c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }

    MomentExpr& operator+=(const MomentExpr& o) {
        adopt(o);
        for (auto& [k, c] : o.t_) add(k, c);
        return *this;
    }
    MomentExpr& operator-=(const MomentExpr& o) {
        adopt(o);
        for (auto& [k, c] : o.t_) add(k, -c);
        return *this;
    }
    friend MomentExpr operator+(MomentExpr a, const MomentExpr& b) { return a += b; }
    friend MomentExpr operator-(MomentExpr a, const MomentExpr& b) { return a -= b; }
    friend MomentExpr operator*(const RatFun& s, const MomentExpr& a) {
        MomentExpr r(a.reg_);
        for (auto& [k, c] : a.t_) r.add(k, s * c);
        return r;
    }
    friend MomentExpr operator*(const MomentExpr& a, const MomentExpr& b) {
        MomentExpr r(a.reg_ ? a.reg_ : b.reg_);
        for (auto& [ka, ca] : a.t_)
            for (auto& [kb, cb] : b.t_) {
                Key k = ka;
                k.insert(k.end(), kb.begin(), kb.end());
                r.add(std::move(k), ca * cb);
            }
        return r;
    }

    bool equals(const MomentExpr& o) const { return (*this - o).is_zero(); }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto& [k, c] : t_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (auto& x : k) s += "*" + x.str();
        }
        return s;
    }

private:
    void adopt(const MomentExpr& o) {
        if (!reg_) reg_ = o.reg_;
        else if (o.reg_ && !same_registry(reg_, o.reg_)) throw usage_error("moment expressions over different registries");
    }
    RegPtr reg_;
    Terms t_;
};

// coefficients on the seeds (nu0, nu1)
struct SeedForm {
    RatFun c0, c1;
};

// Master function data plus the relation generator and reduction. Parameters
// are evaluated; t stays a variable (index tvar of reg).
class MomentSystem {
public:
    MomentSystem(Family J, const ParamSet& p, RegPtr reg, int tvar) : J_(J), reg_(std::move(reg)), tvar_(tvar) {
        if (J == Family::I) throw usage_error("family I has no master function");
        p.require(required(J));
        p_ = p;
        build_master();
        find_seeds();
    }
    // t-only registry for standalone use
    MomentSystem(Family J, const ParamSet& p) : MomentSystem(J, p, diffop_registry(1), 1) {}

    static std::vector<std::string> required(Family J) {
        switch (J) {
        case Family::III:
        case Family::IV: return {"b"};
        case Family::V: return {"b", "c"};
        case Family::VI: return {"a", "b", "c", "d"};
        default: return {};
        }
    }

    Family family() const { return J_; }
    const RegPtr& reg() const { return reg_; }
    int tvar() const { return tvar_; }
    RatFun t() const { return RatFun(MPoly::var(reg_, tvar_)); }
    RatFun cst(const Rat& c) const { return RatFun(reg_, c); }
    // nu0 and nu1, except at a VI resonance where nu1 is tied to nu0
    const std::pair<MomentSymbol, MomentSymbol>& seeds() const { return seeds_; }

    // u-coefficients of the clearing polynomial and of clearing * Theta'/Theta
    const std::vector<RatFun>& clearing() const { return clear_; }
    const std::vector<RatFun>& cleared_logderivative() const { return logd_; }

    // 0 = int d/du [u^n c_J(u) Theta] du, as a linear moment expression
    MomentExpr ibp_relation(int n) const {
        if (n < 0 && J_ != Family::III) throw usage_error("negative n only for family III");
        MomentExpr e(reg_);
        for (int j = 0; j < int(clear_.size()); ++j)
            if (n + j != 0) e.add({nu(n + j - 1)}, Rat(n + j) * clear_[j]);
        for (int j = 0; j < int(logd_.size()); ++j) e.add({nu(n + j)}, logd_[j]);
        return e;
    }

    // VI with clearing u(1-u): the remainder d t(1-t)/(t-u) produces rho_n
    MomentExpr rho_relation(int n) const {
        if (J_ != Family::VI) throw usage_error("rho moments exist only for family VI");
        if (n < 0) throw usage_error("n must be nonnegative");
        MomentExpr e(reg_);
        for (int j = 0; j < int(clear2_.size()); ++j)
            if (n + j != 0) e.add({nu(n + j - 1)}, Rat(n + j) * clear2_[j]);
        for (int j = 0; j < int(logd2_.size()); ++j) e.add({nu(n + j)}, logd2_[j]);
        e.add({rho(n)}, rho_coef_);
        return e;
    }

    SeedForm seed_form(MomentSymbol s) const {
        auto it = cache_.find(s);
        if (it != cache_.end()) return it->second;
        SeedForm f = s.kind == MomentSymbol::Kind::nu ? solve_nu(s.k) : solve_rho(s.k);
        cache_.emplace(s, f);
        return f;
    }

    // normal form over the seeds nu0, nu1
    MomentExpr reduce(const MomentExpr& e) const {
        MomentExpr out(reg_);
        for (auto& [key, c] : e.terms()) {
            // expand the product of seed forms; index = number of nu1 factors
            std::vector<RatFun> acc{c};
            for (auto& s : key) {
                SeedForm f = seed_form(s);
                std::vector<RatFun> nxt(acc.size() + 1, RatFun(reg_));
                for (std::size_t j = 0; j < acc.size(); ++j) {
                    if (acc[j].is_zero()) continue;
                    if (!f.c0.is_zero()) nxt[j] += acc[j] * f.c0;
                    if (!f.c1.is_zero()) nxt[j + 1] += acc[j] * f.c1;
                }
                acc = std::move(nxt);
            }
            int deg = int(key.size());
            for (int j = 0; j <= deg; ++j) {
                MomentExpr::Key k(deg - j, seeds_.first);
                k.insert(k.end(), j, seeds_.second);
                out.add(std::move(k), acc[j]);
            }
        }
        return out;
    }

    // d/dt under the integral, then reduce
    MomentExpr d_dt(const MomentExpr& e0) const {
        MomentExpr e = has_rho(e0) ? reduce(e0) : e0;
        MomentExpr out(reg_);
        for (auto& [key, c] : e.terms()) {
            out.add(key, c.partial(tvar_));
            for (std::size_t i = 0; i < key.size(); ++i) {
                MomentExpr rest(reg_, {}, c);
                for (std::size_t j = 0; j < key.size(); ++j)
                    if (j != i) rest = rest * MomentExpr::symbol(reg_, key[j]);
                out += rest * dt_symbol(key[i].k);
            }
        }
        return reduce(out);
    }

    MomentExpr dt_symbol(int k) const {
        switch (J_) {
        case Family::II:
        case Family::IV: return cst(Rat(-1)) * MomentExpr::symbol(reg_, nu(k + 1));
        case Family::III: return MomentExpr::symbol(reg_, nu(k - 1));
        case Family::V: return MomentExpr::symbol(reg_, nu(k + 1));
        case Family::VI: return cst(-p_.get("d")) * MomentExpr::symbol(reg_, rho(k));
        default: throw usage_error("unknown family");
        }
    }

    // d/dt of the seeds, reduced
    SeedForm seed_derivative(int which) const {
        auto r = d_dt(MomentExpr::symbol(reg_, which == 0 ? seeds_.first : seeds_.second));
        SeedForm f{RatFun(reg_), RatFun(reg_)};
        for (auto& [k, c] : r.terms()) (k[0] == seeds_.first ? f.c0 : f.c1) = c;
        return f;
    }

    const ParamSet& params() const { return p_; }

private:
    static bool has_rho(const MomentExpr& e) {
        for (auto& [k, c] : e.terms())
            for (auto& s : k)
                if (s.kind == MomentSymbol::Kind::rho) return true;
        return false;
    }

    // u-coefficients of a polynomial in (u, t), t moved to the target registry
    std::vector<RatFun> u_coeffs(const MPoly& f) const {
        std::vector<RatFun> out;
        for (auto& [x, c] : f.terms()) {
            Exps y{};
            y[tvar_] = x[1];
            if (int(out.size()) <= x[0]) out.resize(x[0] + 1, RatFun(reg_));
            out[x[0]] += RatFun(MPoly::monomial(reg_, y, c));
        }
        return out;
    }

    void build_master() {
        auto ur = make_registry({"u", "t"});
        RatFun u(MPoly::var(ur, 0)), t(MPoly::var(ur, 1)), one(ur, Rat(1));
        auto C = [&](const Rat& x) { return RatFun(ur, x); };
        RatFun logd(ur), clear = one;
        switch (J_) {
        case Family::II:
            logd = -t - C(Rat(2)) * u * u;
            break;
        case Family::III:
            logd = C(-(p_.get("b") + Rat(1))) / u - t / (u * u) - one;
            clear = u * u;
            break;
        case Family::IV:
            logd = C(-(p_.get("b") + Rat(1))) / u - t - u;
            clear = u;
            break;
        case Family::V:
            logd = C(-(p_.get("b") + Rat(1))) / u + C(p_.get("c") + Rat(1)) / (one - u) + t;
            clear = u * (one - u);
            break;
        case Family::VI: {
            Rat ab = p_.get("a") + p_.get("b"), c = p_.get("c"), d = p_.get("d");
            logd = C(-(ab + Rat(1))) / u + C(c + Rat(1)) / (one - u) + C(d) / (t - u);
            clear = u * (one - u) * (t - u);
            // clearing u(1-u) leaves d t(1-t)/(t-u)
            RatFun c2 = u * (one - u);
            RatFun rem = C(d) * t * (one - t) / (t - u);
            clear2_ = u_coeffs(c2.as_polynomial());
            logd2_ = u_coeffs((c2 * logd - rem).as_polynomial());
            RatFun coef = C(d) * t * (one - t);
            auto rc = u_coeffs(coef.as_polynomial());
            rho_coef_ = rc.empty() ? RatFun(reg_) : rc[0];
            break;
        }
        default: throw usage_error("unknown family");
        }
        // throws unless clearing * Theta'/Theta is a polynomial in u
        logd_ = u_coeffs((clear * logd).as_polynomial());
        clear_ = u_coeffs(clear.as_polynomial());
    }

    // solve relation `rel` for the symbol s given everything else in seed form
    SeedForm solve_from(const MomentExpr& rel, MomentSymbol s, int n, const char* which) const {
        RatFun coef(reg_);
        SeedForm rest{RatFun(reg_), RatFun(reg_)};
        for (auto& [k, c] : rel.terms()) {
            if (k[0] == s) {
                coef = c;
                continue;
            }
            SeedForm f = seed_form(k[0]);
            rest.c0 += c * f.c0;
            rest.c1 += c * f.c1;
        }
        if (coef.is_zero())
            throw domain_error(std::string("resonant recursion: ") + which + " relation n=" + std::to_string(n) +
                               " has zero coefficient on " + s.str() + " (parameters hit an integer resonance)");
        RatFun inv = -coef.inverse();
        return {rest.c0 * inv, rest.c1 * inv};
    }

    // The VI recursion coefficient on nu_{n+2} is n + 1 - (a+b+c+d). When it
    // vanishes at some n = R >= 0, relation R ties nu1 to nu0 and nu_{R+2} is
    // free, so that becomes the second seed.
    void find_seeds() {
        seeds_ = {nu(0), nu(1)};
        if (J_ != Family::VI) return;
        Rat R = p_.get("a") + p_.get("b") + p_.get("c") + p_.get("d") - Rat(1);
        if (!R.is_integer() || R.sign() < 0) return;
        int r = int(R.num().get_si());
        MomentExpr rel = ibp_relation(r);
        SeedForm tie{RatFun(reg_), RatFun(reg_)};
        for (auto& [k, c] : rel.terms()) {
            if (k[0] == nu(r + 2)) throw internal_error("resonance bookkeeping");
            SeedForm f = seed_form(k[0]);
            tie.c0 += c * f.c0;
            tie.c1 += c * f.c1;
        }
        if (tie.c1.is_zero())
            throw domain_error("resonant VI recursion at n=" + std::to_string(r) + " leaves three free moments");
        RatFun lam = -tie.c0 / tie.c1; // nu1 = lam nu0
        for (auto& [s, f] : cache_) f = {f.c0 + f.c1 * lam, RatFun(reg_)};
        cache_[nu(1)] = {lam, RatFun(reg_)};
        cache_[nu(r + 2)] = {RatFun(reg_), cst(Rat(1))};
        seeds_ = {nu(0), nu(r + 2)};
    }

    SeedForm solve_nu(int k) const {
        if (k == 0) return {cst(Rat(1)), RatFun(reg_)};
        if (k == 1) return {RatFun(reg_), cst(Rat(1))};
        if (k >= 2) return solve_from(ibp_relation(k - 2), nu(k), k - 2, "ibp");
        if (J_ != Family::III) throw internal_error("irreducible symbol " + nu(k).str());
        return solve_from(ibp_relation(k), nu(k), k, "ibp");
    }

    SeedForm solve_rho(int k) const {
        if (J_ != Family::VI) throw internal_error("irreducible symbol " + rho(k).str());
        if (k < 0) throw internal_error("irreducible symbol " + rho(k).str());
        if (k == 0) return solve_from(rho_relation(0), rho(0), 0, "rho");
        // u^k/(t-u) = t^k/(t-u) - sum_{j<k} t^{k-1-j} u^j
        SeedForm r0 = seed_form(rho(0));
        RatFun tk = t().pow(k);
        SeedForm out{r0.c0 * tk, r0.c1 * tk};
        for (int j = 0; j < k; ++j) {
            SeedForm f = seed_form(nu(j));
            RatFun w = t().pow(k - 1 - j);
            out.c0 -= w * f.c0;
            out.c1 -= w * f.c1;
        }
        return out;
    }

    Family J_;
    ParamSet p_;
    RegPtr reg_;
    int tvar_;
    std::vector<RatFun> clear_, logd_, clear2_, logd2_;
    RatFun rho_coef_;
    std::pair<MomentSymbol, MomentSymbol> seeds_{nu(0), nu(1)};
    mutable std::map<MomentSymbol, SeedForm> cache_;
};

// Phi = sum_j nu0^{m-j} nu1^j part[j], each part a polynomial in z with
// coefficients rational in t (over diffop_registry(N))
struct WaveFunction {
    Family J;
    int N = 0, m = 0;
    Rat hbar;
    std::vector<RatFun> part;
};

inline Rat vi_condition_d(const ParamSet& p, int m) {
    // a + b + c + d = (2m - 1) hbar
    return Rat(2 * m - 1) * p.get("hbar") - p.get("a") - p.get("b") - p.get("c");
}

inline void require_integer_hbar(const Rat& h) {
    if (!h.is_integer() || h.sign() <= 0)
        throw unsupported_mode("symbolic path needs a positive integer hbar; use the numeric path");
}

// expand Delta(u)^{2 hbar} prod (z_rho - u_i) and integrate monomials termwise
inline WaveFunction build_phi(const MomentSystem& ms, int N, int m, const Rat& hbar) {
    require_integer_hbar(hbar);
    if (N < 1 || N > 4 || m < 1 || m > 3) throw usage_error("build_phi supports N <= 4, 1 <= m <= 3");
    auto zr = diffop_registry(N);
    if (!same_registry(ms.reg(), zr)) throw usage_error("moment system must live over the z,t registry");
    std::vector<std::string> names;
    for (int r = 1; r <= N; ++r) names.push_back("z" + std::to_string(r));
    for (int i = 1; i <= m; ++i) names.push_back("u" + std::to_string(i));
    auto er = make_registry(names);
    MPoly integrand(er, Rat(1));
    int e2 = 2 * int(hbar.num().get_si());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) integrand *= (MPoly::var(er, N + i) - MPoly::var(er, N + j)).pow(e2);
    for (int r = 0; r < N; ++r)
        for (int i = 0; i < m; ++i) integrand *= MPoly::var(er, r) - MPoly::var(er, N + i);

    WaveFunction w{ms.family(), N, m, hbar, std::vector<RatFun>(m + 1, RatFun(zr))};
    std::map<MomentExpr::Key, MomentExpr> memo;
    for (auto& [x, c] : integrand.terms()) {
        MomentExpr::Key key;
        for (int i = 0; i < m; ++i) key.push_back(nu(x[N + i]));
        std::sort(key.begin(), key.end());
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, ms.reduce(MomentExpr(zr, key, RatFun(zr, Rat(1))))).first;
        Exps zx{};
        for (int r = 0; r < N; ++r) zx[r] = x[r];
        RatFun zm(MPoly::monomial(zr, zx, c));
        for (auto& [k, coef] : it->second.terms()) {
            int j = int(std::count(k.begin(), k.end(), ms.seeds().second));
            w.part[j] += zm * coef;
        }
    }
    return w;
}

inline WaveFunction phi_d_dt(const MomentSystem& ms, const WaveFunction& w) {
    SeedForm d0 = ms.seed_derivative(0), d1 = ms.seed_derivative(1);
    int m = w.m, tv = ms.tvar();
    WaveFunction out = w;
    for (auto& p : out.part) p = RatFun(ms.reg());
    for (int j = 0; j <= m; ++j) {
        const RatFun& F = w.part[j];
        if (F.is_zero()) continue;
        out.part[j] += F.partial(tv);
        if (m - j > 0) {
            out.part[j] += Rat(m - j) * d0.c0 * F;
            out.part[j + 1] += Rat(m - j) * d0.c1 * F;
        }
        if (j > 0) {
            out.part[j - 1] += Rat(j) * d1.c0 * F;
            out.part[j] += Rat(j) * d1.c1 * F;
        }
    }
    return out;
}

// op applied to a function whose denominator involves t only
inline RatFun apply_t_rational(const DiffOp& op, const RatFun& f) {
    if (f.is_zero()) return f;
    for (int r = 0; r < op.N; ++r)
        for (auto& [a, e] : f.den_factors())
            if (a.uses(r)) throw domain_error("wave function coefficient has a z-dependent denominator");
    MPoly den = f.den();
    return apply(op, f.num()) / RatFun(den);
}

struct PdeResidual {
    std::vector<RatFun> part; // per seed monomial, multiplied by the operator's left factor
    bool zero() const {
        for (auto& p : part)
            if (!p.is_zero()) return false;
        return true;
    }
    std::string describe(int m) const {
        for (int j = 0; j <= m; ++j) {
            if (part[j].is_zero()) continue;
            const auto& num = part[j].num();
            auto [x, c] = num.leading();
            std::string zm = MPoly::monomial(num.reg(), x, Rat(1)).str();
            return "seed monomial s0^" + std::to_string(m - j) + "*s1^" + std::to_string(j) + ", leading term " +
                   c.str() + "*" + zm;
        }
        return "0";
    }
};

// Which time derivative the operator is matched against. `printed`:
// hbar d_t Phi = H Phi. `n_scaled`: N hbar d_t Phi = H Phi, which is what the
// integration by parts actually produces (every z_rho contributes one d_t).
enum class PdeForm { printed, n_scaled };

inline Rat pde_time_factor(PdeForm f, int N) { return f == PdeForm::printed ? Rat(1) : Rat(N); }
inline const char* pde_form_name(PdeForm f) { return f == PdeForm::printed ? "printed" : "n_scaled"; }

// left * factor * hbar * d_t Phi - op Phi
inline PdeResidual pde_residual_symbolic(const MomentSystem& ms, const DiffOp& op, const WaveFunction& w,
                                         PdeForm form = PdeForm::printed) {
    WaveFunction dt = phi_d_dt(ms, w);
    PdeResidual r;
    RatFun left(op.left);
    Rat k = w.hbar * pde_time_factor(form, w.N);
    for (int j = 0; j <= w.m; ++j) r.part.push_back(left * k * dt.part[j] - apply_t_rational(op, w.part[j]));
    return r;
}

inline ParamSet pde_params(Family J, int m, ParamSet p) {
    p.require({"hbar"});
    p.require(MomentSystem::required(J == Family::VI ? Family::V : J)); // d may be derived
    if (J == Family::VI) {
        p.require({"a"});
        Rat need = vi_condition_d(p, m);
        if (!p.has("d")) p.set("d", need);
        else if (!(p.get("d") == need))
            throw usage_error("family VI needs a+b+c+d = (2m-1) hbar; with these a, b, c that is d = " + need.str());
    }
    return p;
}

inline std::string pde_id(const char* mode, Family J, int N, int m, const Rat& h, PdeForm form) {
    return std::string("pde.") + mode + (form == PdeForm::n_scaled ? ".n_scaled." : ".") + family_name(J) + ".N" +
           std::to_string(N) + ".m" + std::to_string(m) + ".hbar" + h.str();
}

inline const char* pde_anchor(PdeForm form) {
    return form == PdeForm::printed ? "hbar d_t Phi = H_J Phi" : "N hbar d_t Phi = H_J Phi";
}

// exact check of the Schroedinger equation; `perturb` adds sum z_rho to the
// operator (negative control, expected to fail)
inline Check verify_pde_symbolic(Family J, int N, int m, const ParamSet& given, PdeForm form = PdeForm::printed,
                                 bool perturb = false) {
    ParamSet p = pde_params(J, m, given);
    Rat h = p.get("hbar");
    require_integer_hbar(h);
    MomentSystem ms(J, p, diffop_registry(N), N);
    DiffOp op = build_cp_hamiltonian(J, N, m, p);
    if (perturb)
        for (int r = 0; r < N; ++r) op.C += op.z(r);
    WaveFunction w = build_phi(ms, N, m, h);
    PdeResidual res = pde_residual_symbolic(ms, op, w, form);
    Check c;
    c.id = pde_id(perturb ? "symbolic.control" : "symbolic", J, N, m, h, form);
    c.anchor = pde_anchor(form);
    bool zero = res.zero();
    c.pass = perturb ? !zero : zero;
    c.residual = zero ? "0" : res.describe(m);
    if (perturb) c.note = "negative control: operator with an extra sum z_rho term must leave a residual";
    else if (form == PdeForm::n_scaled) c.note = "diagnostic: time derivative scaled by N; params " + p.str();
    else c.note = "params " + p.str();
    if (!zero && !perturb && form == PdeForm::printed && N > 1)
        c.note += pde_residual_symbolic(ms, op, w, PdeForm::n_scaled).zero()
                      ? "; with N hbar d_t the residual vanishes"
                      : "; the N hbar d_t form fails too";
    return c;
}

} // namespace qcp
