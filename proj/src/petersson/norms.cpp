#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>

#include "cmisog/bigfloat.hpp"
#include "cmisog/petersson.hpp"

namespace cmisog::petersson {

namespace {

struct SL2 {
    i64 a, b, c, d;
};

// one matrix per point of P^1(Z/N) ≅ Γ0(N)\SL2(Z)
std::vector<SL2> coset_representatives(u64 N) {
    const i64 n = static_cast<i64>(N);
    std::vector<std::pair<i64, i64>> seen;
    std::vector<SL2> out;
    std::vector<i64> units;
    for (i64 l = 1; l <= n; ++l)
        if (std::gcd(l, n) == 1) units.push_back(l % n);
    for (i64 c = 0; c < n || (n == 1 && c == 0); ++c)
        for (i64 d = 0; d < std::max<i64>(n, 1); ++d) {
            if (std::gcd(std::gcd(c, d), n) != 1) continue;
            std::pair<i64, i64> canon{n, n};
            for (i64 l : units) canon = std::min(canon, std::pair<i64, i64>{l * c % n, l * d % n});
            if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
            seen.push_back(canon);
            // lift to a coprime integer pair and complete to SL2(Z)
            i64 cc = c, dd = d;
            if (cc == 0) {
                out.push_back({1, 0, 0, 1});
                continue;
            }
            while (std::gcd(cc, dd) != 1) dd += n;
            i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1, x = dd, y = cc;
            while (y != 0) {
                i64 q = x / y, r = x - q * y;
                x = y, y = r;
                i64 s2 = s0 - q * s1, t2 = t0 - q * t1;
                s0 = s1, s1 = s2, t0 = t1, t1 = t2;
            }
            // s0 dd + t0 cc = 1  ->  a = s0, b = -t0
            out.push_back({s0, -t0, cc, dd});
        }
    return out;
}

double density_at(const FormData& f, const SL2& g, double x, double y) {
    // w = g z
    double den = (g.c * x + g.d) * (g.c * x + g.d) + g.c * g.c * y * y;
    double wx = ((g.a * x + g.b) * (g.c * x + g.d) + g.a * g.c * y * y) / den;
    double wy = y / den;
    return density(f, wx, wy);
}

template <unsigned P>
NormResult integrate(const FormData& f, const QuadOptions& opt) {
    using boost::math::quadrature::gauss_kronrod;
    NormResult r;
    const auto reps = coset_representatives(f.N);
    double total = 0, err = 0;
    for (const auto& g : reps) {
        auto outer = [&](double x) {
            double vmax = 1 / std::sqrt(1 - x * x);
            auto inner = [&](double v) {
                if (v <= 0) return 0.0;
                ++r.evaluations;
                return density_at(f, g, x, 1 / v);
            };
            return gauss_kronrod<double, P>::integrate(inner, 0.0, vmax, opt.max_depth, opt.tol * 1e-2);
        };
        double e = 0;
        total += gauss_kronrod<double, P>::integrate(outer, -0.5, 0.5, opt.max_depth, opt.tol, &e);
        err += e;
    }
    const double idx = static_cast<double>(index_gamma0(f.N));
    r.value = total / idx;
    r.error = err / idx;
    if (!(r.error <= 1e3 * opt.tol * std::abs(r.value) + 1e-300)) throw QuadratureError("petersson_numeric: no convergence");
    return r;
}

}  // namespace

NormResult petersson_numeric(const FormData& f, const QuadOptions& opt) {
    if (f.scale == 0) return {};
    return opt.fine ? integrate<61>(f, opt) : integrate<31>(f, opt);
}

SupResult sup_norm_numeric(const FormData& f, unsigned grid) {
    SupResult best;
    best.grid_spacing = 1.0 / grid;
    if (f.scale == 0) return best;
    const auto reps = coset_representatives(f.N);
    struct Cand {
        double val, x, v;
        std::size_t rep;
    };
    std::vector<Cand> top;
    auto vmax = [](double x) { return 1 / std::sqrt(1 - x * x); };
    auto value = [&](std::size_t i, double x, double v) { return std::sqrt(density_at(f, reps[i], x, 1 / v)); };
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (unsigned jx = 0; jx <= grid; ++jx) {
            double x = -0.5 + static_cast<double>(jx) / grid;
            for (unsigned jv = 1; jv <= grid; ++jv) {
                double v = vmax(x) * jv / grid;
                top.push_back({value(i, x, v), x, v, i});
            }
            if (top.size() > 4096) {
                std::partial_sort(top.begin(), top.begin() + 8, top.end(), [](auto& a, auto& b) { return a.val > b.val; });
                top.resize(8);
            }
        }
    std::partial_sort(top.begin(), top.begin() + std::min<std::size_t>(8, top.size()), top.end(),
                      [](auto& a, auto& b) { return a.val > b.val; });
    top.resize(std::min<std::size_t>(8, top.size()));
    // compass search inside |x| <= 1/2, 0 < v <= vmax(x)
    for (auto c : top) {
        double h = 1.0 / grid;
        while (h > 1e-10) {
            bool moved = false;
            for (auto [dx, dv] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}}) {
                double x = std::clamp(c.x + dx, -0.5, 0.5);
                double v = std::min(c.v + dv, vmax(x));
                if (v <= 0) continue;
                double val = value(c.rep, x, v);
                if (val > c.val) {
                    c = {val, x, v, c.rep};
                    moved = true;
                }
            }
            if (!moved) h /= 2;
        }
        if (c.val > best.value) {
            const auto& g = reps[c.rep];
            double y = 1 / c.v, x = c.x;
            double den = (g.c * x + g.d) * (g.c * x + g.d) + g.c * g.c * y * y;
            best.value = c.val;
            best.x = ((g.a * x + g.b) * (g.c * x + g.d) + g.a * g.c * y * y) / den;
            best.y = y / den;
        }
    }
    return best;
}

AuditReport theorem_audit(const FormData& f, double Y) {
    AuditReport r;
    r.N = f.N, r.kappa = f.kappa, r.Y = Y;
    const double idx = static_cast<double>(index_gamma0(f.N));
    auto nr = petersson_numeric(f);
    r.norm = nr.value, r.norm_error = nr.error;
    r.supnorm = sup_norm_numeric(f).value;
    r.I_f = i_f(Y, f).value;
    auto vol = cusp_tail_volume(f.N, Y);
    r.volume_bound = vol.bound, r.volume_mc = vol.monte_carlo;
    r.rhs = r.I_f / idx + r.volume_bound * r.supnorm * r.supnorm / idx;
    r.inequality_ok = r.norm <= r.rhs;
    r.rhs_mc = r.I_f / idx + (vol.monte_carlo + 3 * vol.stderr_mc) * r.supnorm * r.supnorm / idx;
    r.inequality_ok_mc = r.norm <= r.rhs_mc;
    const double X = std::pow(static_cast<double>(f.N), 2.1);
    double S = s_f(std::min<double>(X, static_cast<double>(f.length())), f).to_double();
    r.effective_c1 = S > 0 ? r.norm * idx / S : 0;
    ExactRational acc(0L);
    const double target = r.norm * idx;
    for (u64 n = 1; n <= f.length() && r.norm > 0; ++n) {
        const mpz_class& a = f.coeffs[n - 1];
        if (a != 0) {
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), n, static_cast<unsigned long>(f.kappa - 1));
            acc = acc + ExactRational(mpq_class(a * a, den));
        }
        if (acc.to_double() >= target) {
            r.smallest_truncation = n;
            break;
        }
    }
    return r;
}

}  // namespace cmisog::petersson
