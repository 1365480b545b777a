#include "cmisog/rational.hpp"

#include <stdexcept>

namespace cmisog {

ExactRational::ExactRational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw std::domain_error("ExactRational: zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
}

ExactRational& ExactRational::operator/=(const ExactRational& o) {
    if (o.is_zero()) throw std::domain_error("ExactRational: division by zero");
    q_ /= o.q_;
    return *this;
}

ExactRational abs(const ExactRational& x) { return x.sign() < 0 ? -x : x; }

ExactRational pow(const ExactRational& x, unsigned e) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), x.numerator().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), x.denominator().get_mpz_t(), e);
    return ExactRational(n, d);
}

}  // namespace cmisog
