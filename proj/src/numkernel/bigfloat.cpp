#include "cmisog/bigfloat.hpp"

#include <algorithm>
#include <climits>
#include <memory>

namespace cmisog {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
}

BigFloat::BigFloat(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& z, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const std::string& dec, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    if (mpfr_set_str(v_, dec.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(v_))
        throw std::invalid_argument("BigFloat: cannot parse '" + dec + "'");
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

mpz_class BigFloat::round() const {
    mpz_class z;
    BigFloat t(prec());
    mpfr_round(t.v_, v_);
    mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
    return z;
}

mpz_class BigFloat::floor() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
}

std::string BigFloat::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

long BigFloat::exponent() const {
    if (mpfr_zero_p(v_)) return LONG_MIN;
    return mpfr_get_exp(v_);
}

BigFloat BigFloat::operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

static mpfr_prec_t pmax(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(pmax(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(pmax(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(pmax(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(pmax(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, long k) {
    BigFloat r(a.prec());
    mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
}

BigFloat operator+(const BigFloat& a, long k) {
    BigFloat r(a.prec());
    mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

#define CMISOG_UNARY(fn, mp)                       \
    BigFloat fn(const BigFloat& x) {               \
        BigFloat r(x.prec());                      \
        mp(r.raw(), x.raw(), MPFR_RNDN);           \
        return r;                                  \
    }
CMISOG_UNARY(abs, mpfr_abs)
CMISOG_UNARY(sqrt, mpfr_sqrt)
CMISOG_UNARY(log, mpfr_log)
CMISOG_UNARY(log1p, mpfr_log1p)
CMISOG_UNARY(exp, mpfr_exp)
CMISOG_UNARY(sin, mpfr_sin)
CMISOG_UNARY(cos, mpfr_cos)
#undef CMISOG_UNARY

namespace up {

BigFloat zero() { return BigFloat(kBits); }

BigFloat from(double x) {
    BigFloat r(kBits);
    mpfr_set_d(r.raw(), x, MPFR_RNDU);
    return r;
}

BigFloat mag(const BigFloat& x) {
    BigFloat r(kBits);
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDU);
    return r;
}

BigFloat add(const BigFloat& a, const BigFloat& b) {
    BigFloat r(kBits);
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

BigFloat mul(const BigFloat& a, const BigFloat& b) {
    BigFloat r(kBits);
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

BigFloat div(const BigFloat& a, const BigFloat& b) {
    BigFloat r(kBits);
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

BigFloat ulp_rel(const BigFloat& x, mpfr_prec_t p, int k) {
    BigFloat r = mag(x);
    mpfr_mul_2si(r.raw(), r.raw(), k - static_cast<long>(p), MPFR_RNDU);
    return r;
}

BigFloat exp(const BigFloat& x) {
    BigFloat r(kBits);
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDU);
    return r;
}

BigFloat expm1(const BigFloat& x) {
    BigFloat r(kBits);
    mpfr_expm1(r.raw(), x.raw(), MPFR_RNDU);
    return r;
}

}  // namespace up

BigFloat down_sub(const BigFloat& a, const BigFloat& b) {
    BigFloat r(up::kBits);
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDD);
    return r;
}

// --- BigFloatWithError ---

namespace {
// rounding contribution of a correctly rounded result
BigFloat rnd(const BigFloat& v) { return up::ulp_rel(v, v.prec()); }

BigFloat lower_abs(const BigFloat& v, const BigFloat& e) {
    BigFloat a = up::zero();
    mpfr_abs(a.raw(), v.raw(), MPFR_RNDD);
    return down_sub(a, e);
}
}  // namespace

BigFloatWithError::BigFloatWithError(BigFloat v, BigFloat err) : value_(std::move(v)), err_(std::move(err)) {
    if (err_.sign() < 0 || !err_.is_finite()) throw std::invalid_argument("BigFloatWithError: bad error bound");
}

BigFloatWithError BigFloatWithError::exact(const mpz_class& z, mpfr_prec_t prec) {
    BigFloat v(prec);
    int t = mpfr_set_z(v.raw(), z.get_mpz_t(), MPFR_RNDN);
    return {v, t ? rnd(v) : up::zero()};
}

BigFloatWithError BigFloatWithError::exact(const mpq_class& q, mpfr_prec_t prec) {
    BigFloat v(prec);
    int t = mpfr_set_q(v.raw(), q.get_mpq_t(), MPFR_RNDN);
    return {v, t ? rnd(v) : up::zero()};
}

BigFloatWithError BigFloatWithError::exact(long x, mpfr_prec_t prec) {
    BigFloat v(prec);
    int t = mpfr_set_si(v.raw(), x, MPFR_RNDN);
    return {v, t ? rnd(v) : up::zero()};
}

BigFloatWithError BigFloatWithError::pi(mpfr_prec_t prec) {
    BigFloat v = BigFloat::pi(prec);
    return {v, rnd(v)};
}

bool BigFloatWithError::contains(const mpz_class& z) const {
    BigFloat d = up::mag(value_ - BigFloat(z, value_.prec() + 64));
    return d <= err_;
}

BigFloatWithError operator+(const BigFloatWithError& a, const BigFloatWithError& b) {
    BigFloat v = a.value_ + b.value_;
    return {v, up::add(up::add(a.err_, b.err_), rnd(v))};
}

BigFloatWithError operator-(const BigFloatWithError& a, const BigFloatWithError& b) {
    BigFloat v = a.value_ - b.value_;
    return {v, up::add(up::add(a.err_, b.err_), rnd(v))};
}

BigFloatWithError operator*(const BigFloatWithError& a, const BigFloatWithError& b) {
    BigFloat v = a.value_ * b.value_;
    BigFloat e = up::add(up::mul(up::mag(a.value_), b.err_), up::mul(up::mag(b.value_), a.err_));
    e = up::add(e, up::mul(a.err_, b.err_));
    return {v, up::add(e, rnd(v))};
}

BigFloatWithError operator/(const BigFloatWithError& a, const BigFloatWithError& b) {
    BigFloat lo = lower_abs(b.value_, b.err_);
    if (lo.sign() <= 0) throw PrecisionError("division by a ball containing zero");
    BigFloat v = a.value_ / b.value_;
    BigFloat q = up::add(up::mag(v), up::ulp_rel(v, v.prec(), 1));
    BigFloat e = up::div(up::add(a.err_, up::mul(q, b.err_)), lo);
    return {v, up::add(e, rnd(v))};
}

BigFloatWithError log(const BigFloatWithError& x) {
    if (x.value().sign() <= 0) throw DomainError("log of nonpositive value");
    BigFloat lo = lower_abs(x.value(), x.error_bound());
    if (lo.sign() <= 0) throw PrecisionError("log argument ball touches zero");
    BigFloat v = log(x.value());
    return {v, up::add(up::div(x.error_bound(), lo), rnd(v))};
}

BigFloatWithError exp(const BigFloatWithError& x) {
    BigFloat v = exp(x.value());
    BigFloat m = up::add(up::mag(v), up::ulp_rel(v, v.prec(), 1));
    return {v, up::add(up::mul(m, up::expm1(x.error_bound())), rnd(v))};
}

BigFloatWithError sqrt(const BigFloatWithError& x) {
    if (x.value().sign() < 0) throw DomainError("sqrt of negative value");
    BigFloat v = sqrt(x.value());
    if (x.error_bound().is_zero()) return {v, rnd(v)};
    BigFloat lo = lower_abs(x.value(), x.error_bound());
    if (lo.sign() <= 0) throw PrecisionError("sqrt argument ball touches zero");
    BigFloat s(up::kBits);
    mpfr_sqrt(s.raw(), lo.raw(), MPFR_RNDD);
    return {v, up::add(up::div(x.error_bound(), s), rnd(v))};
}

BigFloatWithError sin(const BigFloatWithError& x) {
    BigFloat v = sin(x.value());
    return {v, up::add(x.error_bound(), rnd(v))};
}

BigFloatWithError cos(const BigFloatWithError& x) {
    BigFloat v = cos(x.value());
    return {v, up::add(x.error_bound(), rnd(v))};
}

// --- ComplexBall ---

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(up::zero()) {}

ComplexBall::ComplexBall(BigFloat re, BigFloat im, BigFloat rad)
    : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)) {}

ComplexBall ComplexBall::exact(const mpz_class& re, mpfr_prec_t prec) {
    BigFloatWithError x = BigFloatWithError::exact(re, prec);
    return from_real(x);
}

ComplexBall ComplexBall::from_real(const BigFloatWithError& x) {
    return {x.value(), BigFloat(x.precision_bits()), x.error_bound()};
}

BigFloat ComplexBall::mid_abs() const {
    BigFloat r(up::kBits);
    mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDU);
    return r;
}

BigFloat ComplexBall::mag_up() const { return up::add(mid_abs(), rad_); }

void ComplexBall::inflate(const BigFloat& r) { rad_ = up::add(rad_, r); }

namespace {
mpfr_prec_t cprec(const ComplexBall& a, const ComplexBall& b) { return std::max(a.prec(), b.prec()); }

BigFloat crnd(const BigFloat& re, const BigFloat& im, int k) {
    return up::ulp_rel(up::add(up::mag(re), up::mag(im)), re.prec(), k);
}
}  // namespace

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
    BigFloat re = a.re_ + b.re_, im = a.im_ + b.im_;
    BigFloat rad = up::add(up::add(a.rad_, b.rad_), crnd(re, im, 0));
    return {re, im, rad};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
    BigFloat re = a.re_ - b.re_, im = a.im_ - b.im_;
    BigFloat rad = up::add(up::add(a.rad_, b.rad_), crnd(re, im, 0));
    return {re, im, rad};
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    mpfr_prec_t p = cprec(a, b);
    BigFloat re(p), im(p);
    mpfr_fmms(re.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_fmma(im.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
    BigFloat am = a.mid_abs(), bm = b.mid_abs();
    BigFloat rad = up::add(up::mul(am, b.rad_), up::mul(bm, a.rad_));
    rad = up::add(rad, up::mul(a.rad_, b.rad_));
    rad = up::add(rad, up::ulp_rel(up::mul(am, bm), p, 1));
    return {re, im, rad};
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
    mpfr_prec_t p = cprec(a, b);
    BigFloat bm_lo(up::kBits);
    mpfr_hypot(bm_lo.raw(), b.re_.raw(), b.im_.raw(), MPFR_RNDD);
    BigFloat lo = down_sub(bm_lo, b.rad_);
    if (lo.sign() <= 0) throw PrecisionError("complex division by a ball containing zero");
    BigFloat nre(p), nim(p), den(p);
    mpfr_fmma(nre.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_fmms(nim.raw(), a.im_.raw(), b.re_.raw(), a.re_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_fmma(den.raw(), b.re_.raw(), b.re_.raw(), b.im_.raw(), b.im_.raw(), MPFR_RNDN);
    BigFloat re = nre / den, im = nim / den;
    // |a/b| using lower |b|, then rounding of the three-step quotient
    BigFloat q = up::div(a.mid_abs(), bm_lo);
    BigFloat rad = up::div(up::add(a.rad_, up::mul(q, b.rad_)), lo);
    rad = up::add(rad, up::ulp_rel(q, p, 3));
    return {re, im, rad};
}

ComplexBall operator*(const ComplexBall& a, long k) {
    BigFloat re = a.re_ * k, im = a.im_ * k;
    BigFloat kk = up::from(static_cast<double>(k < 0 ? -k : k));
    return {re, im, up::add(up::mul(a.rad_, kk), crnd(re, im, 0))};
}

ComplexBall operator+(const ComplexBall& a, long k) {
    BigFloat re = a.re_ + k;
    return {re, a.im_, up::add(a.rad_, up::ulp_rel(re, re.prec()))};
}

ComplexBall exp(const ComplexBall& z) {
    mpfr_prec_t p = z.prec();
    BigFloat e = exp(z.re());
    BigFloat s(p), c(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.im().raw(), MPFR_RNDN);
    BigFloat re = e * c, im = e * s;
    BigFloat m = up::add(up::mag(e), up::ulp_rel(e, p, 1));
    BigFloat rad = up::mul(m, up::expm1(z.rad()));
    rad = up::add(rad, up::ulp_rel(m, p, 3));
    return {re, im, rad};
}

}  // namespace cmisog
