#include "commdet/analytic.hpp"

#include <limits>

#include "commdet/errors.hpp"

namespace commdet {

namespace {

void require_prob_open(double p, const char* msg) {
    require(p > 0.0 && p < 1.0, msg);
}

}  // namespace

RateParams RateParams::from_model(long long N, long long n, double p0, double p1) {
    require(n >= 2 && n < N, "RateParams: need 2 <= n < N");
    require(p0 > 0.0 && p0 <= p1 && p1 < 1.0, "RateParams: need 0 < p0 <= p1 < 1");
    RateParams r;
    r.lambda0 = static_cast<double>(N) * p0;
    r.lambda1 = static_cast<double>(n) * p1;
    r.alpha = std::log(r.lambda0) / std::log(static_cast<double>(N) / static_cast<double>(n));
    r.zeta = signal_zeta(N, n, p0, p1);
    return r;
}

double kl_bernoulli(double q, double p) {
    require_prob_open(q, "kl_bernoulli: q must be in (0,1)");
    require_prob_open(p, "kl_bernoulli: p must be in (0,1)");
    if (q == p) return 0.0;
    // log((1-q)/(1-p)) via log1p keeps precision when p, q are near 0.
    double t1 = q * std::log(q / p);
    double t2 = (1.0 - q) * (std::log1p(-q) - std::log1p(-p));
    double v = t1 + t2;
    return v < 0.0 ? 0.0 : v;
}

double rate_I(double lambda) {
    require(lambda > 0.0, "rate_I: lambda must be positive");
    return lambda - 1.0 - std::log(lambda);
}

double eta(double lambda) {
    require(lambda > 0.0, "eta: lambda must be positive");
    if (lambda <= 1.0) return 1.0;
    // g(x) = x - exp(lambda*(x-1)) is negative on (0, eta) and positive on
    // (eta, 1); bisection is robust near lambda -> 1+ where Newton stalls.
    auto g = [lambda](double x) { return x - std::exp(lambda * (x - 1.0)); };
    double lo = 0.0, hi = 1.0 - 1e-15;
    if (g(hi) <= 0.0) return 1.0;  // root indistinguishable from 1 in double
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double giant_fraction(double lambda) { return 1.0 - eta(lambda); }

double bernoulli_cgf(double p0, double theta) {
    require_prob_open(p0, "bernoulli_cgf: p0 must be in (0,1)");
    return std::log1p(p0 * std::expm1(theta));
}

double tilt_theta(double p0, double q) {
    require_prob_open(p0, "tilt_theta: p0 must be in (0,1)");
    require_prob_open(q, "tilt_theta: q must be in (0,1)");
    return std::log(q) - std::log(p0) + std::log1p(-p0) - std::log1p(-q);
}

Tilt tilt(double p0, double p1) {
    require(p0 > 0.0 && p0 <= p1 && p1 < 1.0, "tilt: need 0 < p0 <= p1 < 1");
    Tilt t;
    t.theta = tilt_theta(p0, p1);
    t.cgf_theta = bernoulli_cgf(p0, t.theta);
    double d = p1 - p0;
    t.delta = std::log1p(d * d / (p0 * (1.0 - p0)));
    return t;
}

DeltaK delta_k(double p0, double p1, long long k) {
    require(k >= 4, "delta_k: k must be >= 4");
    require_prob_open(p1, "delta_k: p1 must be in (0,1)");
    double qk = 2.0 / static_cast<double>(k - 1);
    require(p0 > 0.0 && p0 < qk, "delta_k: need 0 < p0 < q_k");
    DeltaK out;
    out.qk = qk;
    out.interior = 2.0 * tilt_theta(p0, p1) >= tilt_theta(p0, qk);
    if (out.interior) {
        double first = (p1 == qk) ? 0.0 : kl_bernoulli(qk, p1);
        out.value = -2.0 * first + kl_bernoulli(qk, p0);
    } else {
        out.value = tilt(p0, std::max(p0, p1)).delta;
    }
    return out;
}

double legendre_dual(double q, double p0) {
    require_prob_open(p0, "legendre_dual: p0 must be in (0,1)");
    require(q > p0 && q < 1.0, "legendre_dual: need p0 < q < 1");
    return tilt_theta(p0, q);
}

double signal_zeta(long long N, long long n, double p0, double p1) {
    require(n >= 2 && n < N, "signal_zeta: need 2 <= n < N");
    require(p0 > 0.0 && p0 <= p1 && p1 < 1.0, "signal_zeta: need 0 < p0 <= p1 < 1");
    double d = p1 - p0;
    double nn = static_cast<double>(n);
    double NN = static_cast<double>(N);
    return d * d / p0 * (nn * nn / NN) * (nn * nn / NN);
}

double cycle_intensity(double lambda) {
    require(lambda >= 0.0 && lambda < 1.0, "cycle_intensity: lambda must be in [0,1)");
    return -0.5 * std::log1p(-lambda) - 0.5 * lambda - 0.25 * lambda * lambda;
}

double chernoff_tail(long long n, double p, double q) {
    require(n >= 1, "chernoff_tail: n must be >= 1");
    require_prob_open(p, "chernoff_tail: p must be in (0,1)");
    require_prob_open(q, "chernoff_tail: q must be in (0,1)");
    require(q >= p, "chernoff_tail: need q >= p");
    return std::exp(-static_cast<double>(n) * kl_bernoulli(q, p));
}

}  // namespace commdet
