#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace cmisog {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thin owner of an mpfr_t. Binary operations round to nearest at the larger
// of the two operand precisions.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128);
    BigFloat(double x, mpfr_prec_t prec);
    BigFloat(long x, mpfr_prec_t prec);
    BigFloat(const mpz_class& z, mpfr_prec_t prec);
    BigFloat(const mpq_class& q, mpfr_prec_t prec);
    BigFloat(const std::string& dec, mpfr_prec_t prec);

    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // nearest integer (ties away)
    mpz_class round() const;
    mpz_class floor() const;
    std::string str(int digits = 20) const;
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    long exponent() const;  // x = m * 2^e with 1/2 <= |m| < 1; LONG_MIN for zero

    BigFloat operator-() const;
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, long k);
    friend BigFloat operator+(const BigFloat& a, long k);

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

    static BigFloat pi(mpfr_prec_t prec);
    static BigFloat pow2(long e, mpfr_prec_t prec = 64);

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);

// Upward-rounded 64-bit arithmetic for error radii. Never underflows the way
// a double would at 2^-3000.
namespace up {
constexpr mpfr_prec_t kBits = 64;
BigFloat zero();
BigFloat from(double x);
BigFloat mag(const BigFloat& x);  // upper bound on |x|
BigFloat add(const BigFloat& a, const BigFloat& b);
BigFloat mul(const BigFloat& a, const BigFloat& b);
BigFloat div(const BigFloat& a, const BigFloat& b);  // a / lower(b) caller's job
BigFloat ulp_rel(const BigFloat& x, mpfr_prec_t p, int k = 0);  // |x| * 2^(k-p)
BigFloat exp(const BigFloat& x);
BigFloat expm1(const BigFloat& x);
}  // namespace up

// Lower-rounded subtraction for denominators in error formulas.
BigFloat down_sub(const BigFloat& a, const BigFloat& b);

class BigFloatWithError {
public:
    BigFloatWithError() : value_(128), err_(up::zero()) {}
    explicit BigFloatWithError(BigFloat v) : value_(std::move(v)), err_(up::zero()) {}
    BigFloatWithError(BigFloat v, BigFloat err);
    static BigFloatWithError exact(const mpz_class& z, mpfr_prec_t prec);
    static BigFloatWithError exact(const mpq_class& q, mpfr_prec_t prec);
    static BigFloatWithError exact(long x, mpfr_prec_t prec);
    static BigFloatWithError pi(mpfr_prec_t prec);

    const BigFloat& value() const { return value_; }
    const BigFloat& error_bound() const { return err_; }
    double error_double() const { return err_.to_double(); }
    mpfr_prec_t precision_bits() const { return value_.prec(); }
    bool contains(const mpz_class& z) const;

    BigFloatWithError operator-() const { return {-value_, err_}; }
    friend BigFloatWithError operator+(const BigFloatWithError& a, const BigFloatWithError& b);
    friend BigFloatWithError operator-(const BigFloatWithError& a, const BigFloatWithError& b);
    friend BigFloatWithError operator*(const BigFloatWithError& a, const BigFloatWithError& b);
    friend BigFloatWithError operator/(const BigFloatWithError& a, const BigFloatWithError& b);

private:
    BigFloat value_;
    BigFloat err_;
};

BigFloatWithError log(const BigFloatWithError& x);
BigFloatWithError exp(const BigFloatWithError& x);
BigFloatWithError sqrt(const BigFloatWithError& x);
BigFloatWithError sin(const BigFloatWithError& x);
BigFloatWithError cos(const BigFloatWithError& x);

// Complex midpoint with one radius bounding |true - mid|.
class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = 128);
    ComplexBall(BigFloat re, BigFloat im, BigFloat rad);
    static ComplexBall exact(const mpz_class& re, mpfr_prec_t prec);
    static ComplexBall from_real(const BigFloatWithError& x);

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    const BigFloat& rad() const { return rad_; }
    mpfr_prec_t prec() const { return re_.prec(); }
    BigFloat mag_up() const;   // upper bound on |z| over the ball
    BigFloat mid_abs() const;  // |mid|, rounded up
    void inflate(const BigFloat& r);

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator*(const ComplexBall& a, long k);
    friend ComplexBall operator+(const ComplexBall& a, long k);

private:
    BigFloat re_, im_, rad_;
};

ComplexBall exp(const ComplexBall& z);

}  // namespace cmisog
