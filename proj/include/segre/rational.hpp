#ifndef SEGRE_RATIONAL_HPP
#define SEGRE_RATIONAL_HPP

#include <gmpxx.h>

#include <ostream>
#include <string>

#include "segre/error.hpp"

namespace segre {

// Exact arbitrary-precision rational. Always held in canonical form:
// gcd(num, den) = 1 and den > 0. No floating point enters or leaves.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}

    Rational(long num, long den) {
        if (den == 0) throw contract_error("rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Strict grammar: -?[0-9]+(/[1-9][0-9]*)?  (no signs or leading zeros in
    // the denominator, no whitespace). Non-canonical fractions are reduced.
    static Rational parse(const std::string& s) {
        std::size_t i = 0;
        const std::size_t n = s.size();
        if (i < n && s[i] == '-') ++i;
        std::size_t num_begin = i;
        while (i < n && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == num_begin) throw parse_error("rational: expected digits in '" + s + "'");
        if (i < n && s[i] == '/') {
            ++i;
            if (i >= n || s[i] < '1' || s[i] > '9')
                throw parse_error("rational: denominator must start with 1-9 in '" + s + "'");
            while (i < n && s[i] >= '0' && s[i] <= '9') ++i;
        }
        if (i != n) throw parse_error("rational: trailing characters in '" + s + "'");
        Rational r;
        r.v_ = mpq_class(s);
        r.v_.canonicalize();
        return r;
    }

    // Canonical text: "p" when den = 1, else "p/q" with q > 1.
    std::string str() const { return v_.get_str(); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    int sign() const { return sgn(v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw contract_error("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r; r.v_ = -v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    explicit operator bool() const { return !is_zero(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace segre

#endif
