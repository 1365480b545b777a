#include <cmath>
#include <stdexcept>

#include "cmisog/green.hpp"
#include "cmisog/legendre.hpp"

namespace cmisog::green {

CMPoint CMPoint::of(i64 D) {
    if (D >= 0 || (D % 4 != 0 && (D % 4 + 4) % 4 != 1)) throw DomainError("CMPoint: not a negative discriminant");
    return CMPoint{1, (-D) % 2, D};
}

double CMPoint::x() const { return -static_cast<double>(B) / (2.0 * A); }
double CMPoint::y() const { return std::sqrt(static_cast<double>(-D)) / (2.0 * A); }

ComplexBall CMPoint::ball(mpfr_prec_t prec) const {
    auto two_a = BigFloatWithError::exact(2 * A, prec);
    auto re = BigFloatWithError::exact(-B, prec) / two_a;
    auto im = sqrt(BigFloatWithError::exact(-D, prec)) / two_a;
    return ComplexBall(re.value(), im.value(), up::add(re.error_bound(), im.error_bound()));
}

namespace {

BigFloat widen(const BigFloat& x, mpfr_prec_t p) {
    BigFloat r(std::max(p, x.prec()));
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

// exact test of M z2 = z1 for two CM points of the same discriminant
bool same_point(const Mat2& M, const CMPoint& z1, const CMPoint& z2) {
    if (z1.D != z2.D || z1.A != 1 || z2.A != 1) return false;
    i64 a = M.a, b = M.b, c = M.c, d = M.d, B1 = z1.B, B2 = z2.B, D = z1.D;
    return -c * (B1 + B2) + 2 * d - 2 * a == 0 && c * (B1 * B2 + D) - 2 * d * B1 + 2 * a * B2 - 4 * b == 0;
}

DPoint reduce(DPoint w) {
    for (int it = 0; it < 10000; ++it) {
        w.x -= std::round(w.x);
        double r2 = w.x * w.x + w.y * w.y;
        if (r2 >= 1 - 1e-14) return w;
        w = {-w.x / r2, w.y / r2};
    }
    throw PrecisionError("reduce: no convergence");
}

double q_coefficient(int n) {  // n! / (2n+1)!!
    double c = 1;
    for (int k = 1; k <= n; ++k) c *= static_cast<double>(k) / (2 * k + 1);
    return c;
}

}  // namespace

BigFloatWithError green_kernel(const ComplexBall& z1, const ComplexBall& z2, int s) {
    if (s < 1) throw std::invalid_argument("green_kernel: s >= 1");
    if (z1.im().sign() <= 0 || z2.im().sign() <= 0) throw DomainError("green_kernel: upper half plane only");
    if (z1.re() == z2.re() && z1.im() == z2.im() && z1.rad().is_zero() && z2.rad().is_zero())
        throw SingularityError("green_kernel: z1 = z2");
    unsigned n = static_cast<unsigned>(s - 1);
    BigFloatWithError best;
    bool have = false;
    for (mpfr_prec_t p = std::max<mpfr_prec_t>(128, z1.prec()); p <= (1 << 14); p *= 2) {
        BigFloatWithError x1(widen(z1.re(), p), z1.rad()), y1(widen(z1.im(), p), z1.rad());
        BigFloatWithError x2(widen(z2.re(), p), z2.rad()), y2(widen(z2.im(), p), z2.rad());
        auto dx = x1 - x2, dy = y1 - y2;
        auto num = dx * dx + dy * dy;
        if (num.value() <= num.error_bound()) throw SingularityError("green_kernel: points not separated");
        auto t = BigFloatWithError::exact(1L, p) + num / (BigFloatWithError::exact(2L, p) * y1 * y2);
        auto q = legendre_q(n, t);
        best = BigFloatWithError::exact(-2L, p) * q;
        have = true;
        if (best.error_bound() < up::ulp_rel(best.value(), 50)) break;
    }
    if (!have) throw PrecisionError("green_kernel");
    return best;
}

double packing_constant(i64 m, DPoint z2) {
    double A = 0;
    for (const auto& U : modpoly::hecke_cosets(m)) {
        DPoint w{(U.a * z2.x + U.b) / U.d, U.a * z2.y / U.d};
        w = reduce(w);
        // T: w -> w + 1 gives an orbit point at cosh-distance 1 + 1/(2y^2)
        double c0 = 1 + 1 / (2 * w.y * w.y);
        int stab = 0;
        double umin = c0 - 1;
        for_each_orbit_point(1, w, w, c0, [&](const Mat2&, double u) {
            if (u < 1e-9)
                ++stab;
            else
                umin = std::min(umin, u);
        });
        if (stab == 0) throw PrecisionError("packing_constant: identity not found");
        double rho = std::acosh(1 + umin) / 2;
        A += stab * std::exp(rho) / (std::cosh(rho) - 1);
    }
    return A * (1 + 1e-6);
}

double tail_bound(int n, double A, double T) {
    if (n < 1) throw std::invalid_argument("tail_bound: n >= 1");
    double est = q_coefficient(n) * std::pow(T, -(n + 1));
    auto q = legendre_q(static_cast<unsigned>(n), BigFloat(T, 64), est * 1e-6);
    double qup = q.value().to_double() + q.error_double();
    return 2 * A * T * qup * (1 + 1.0 / n) * (1 + 1e-12);
}

GreenResult green_value(const GreenRequest& req, const CMPoint& z1, const CMPoint& z2) {
    if (req.k < 3 || req.k % 2 == 0)
        throw std::invalid_argument("green_value: odd k >= 3 only; k = 1 goes through the exact valuation path");
    if (req.m < 1) throw std::invalid_argument("green_value: m >= 1");
    if (!(req.tol > 0) && !(req.radius > 0)) throw std::invalid_argument("green_value: tol > 0");
    const int n = req.k - 1;
    DPoint p1{z1.x(), z1.y()}, p2{z2.x(), z2.y()};
    GreenResult res;
    res.packing = packing_constant(req.m, p2);
    double T;
    if (req.radius > 0) {
        T = std::cosh(req.radius);
    } else {
        T = std::max(2.0, std::pow(4 * res.packing * (1 + 1.0 / n) * q_coefficient(n) / req.tol, 1.0 / n));
        while (tail_bound(n, res.packing, T) >= req.tol / 2) T *= 1.05;
    }
    res.cosh_radius = T;
    res.radius = std::acosh(T);
    res.tail = tail_bound(n, res.packing, T);

    // Neumaier summation in enumeration order
    double sum = 0, comp = 0;
    for_each_orbit_point(req.m, p1, p2, T, [&](const Mat2& M, double u) {
        if (u < 1e-12 && (u <= 0 || same_point(M, z1, z2)))
            throw OrbitCollisionError("green_value: z1 lies in the Hecke orbit of z2");
        double term = -2 * legendre_q_fast(static_cast<unsigned>(n), u);
        double s = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - s) + term;
        else
            comp += (term - s) + sum;
        sum = s;
        ++res.terms;
    });
    res.value = sum + comp;
    // fast Q is good to ~1e-13 relative; the margin covers argument rounding
    res.error = res.tail + 1e-12 * std::abs(res.value);
    return res;
}

}  // namespace cmisog::green
