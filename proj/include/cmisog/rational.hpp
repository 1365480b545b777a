#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace cmisog {

// Always canonical: lowest terms, positive denominator.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(long n) : q_(n) {}
    ExactRational(const mpz_class& n) : q_(n) {}
    ExactRational(const mpz_class& n, const mpz_class& d);
    explicit ExactRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& get() const { return q_; }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }

    ExactRational operator-() const { return ExactRational(mpq_class(-q_)); }
    ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
    ExactRational& operator/=(const ExactRational& o);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    mpq_class q_;
};

ExactRational abs(const ExactRational& x);
ExactRational pow(const ExactRational& x, unsigned e);

}  // namespace cmisog
