#pragma once

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>

#include "qcp/errors.hpp"

namespace qcp {

// mpq_class keeps things canonical after arithmetic, but not after the
// two-argument constructor, so every entry point here canonicalizes
class Rat {
public:
    Rat() = default;
    template <std::integral I>
    Rat(I n) : v_(static_cast<long>(n)) {}
    Rat(long n, long d) {
        if (d == 0) throw domain_error("rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rat(const mpz_class& n) : v_(n) {}

    // "p/q", "-7", "+3/4"; whitespace not allowed inside
    static Rat parse(std::string_view s) {
        std::string t(s);
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        if (t.empty()) throw usage_error("empty rational");
        auto slash = t.find('/');
        auto digits_ok = [](std::string_view d, bool sign_ok) {
            if (sign_ok && !d.empty() && d[0] == '-') d.remove_prefix(1);
            if (d.empty()) return false;
            for (char c : d)
                if (c < '0' || c > '9') return false;
            return true;
        };
        if (slash == std::string::npos) {
            if (!digits_ok(t, true)) throw usage_error("malformed rational '" + t + "'");
            return Rat(mpq_class(mpz_class(t)));
        }
        std::string n = t.substr(0, slash), d = t.substr(slash + 1);
        if (!digits_ok(n, true) || !digits_ok(d, false))
            throw usage_error("malformed rational '" + t + "'");
        mpz_class dz(d);
        if (dz == 0) throw usage_error("rational with zero denominator '" + t + "'");
        mpq_class q(mpz_class(n), dz);
        q.canonicalize();
        return Rat(q);
    }

    const mpq_class& q() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    Rat inv() const {
        if (is_zero()) throw domain_error("division by zero rational");
        mpq_class r = 1 / v_;
        return Rat(r);
    }
    Rat pow(int e) const {
        if (e < 0) return inv().pow(-e);
        Rat r(1), b(*this);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    Rat abs() const { return sign() < 0 ? -*this : *this; }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw domain_error("division by zero rational");
        v_ /= o.v_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

} // namespace qcp
