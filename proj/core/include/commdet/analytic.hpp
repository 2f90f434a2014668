#pragma once

// Closed-form scalar functions shared by every test statistic and boundary
// curve: Bernoulli relative entropy, the large-deviation rate I_lambda, the
// survival fixed point eta_lambda, exponential tilting of Bern(p0), and the
// total-degree signal strength zeta.  All pure, all double precision.

#include <cmath>

namespace commdet {

// lambda0 = N*p0 and lambda1 = n*p1, with the derived exponent
// alpha = log(lambda0)/log(N/n) and signal strength zeta.
struct RateParams {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double alpha = 0.0;
    double zeta = 0.0;

    static RateParams from_model(long long N, long long n, double p0, double p1);
};

// Relative entropy of Bern(q) with respect to Bern(p); >= 0, zero iff q == p.
// Both arguments must lie in the open interval (0,1).
double kl_bernoulli(double q, double p);

// I_lambda = lambda - 1 - log(lambda); rate of subcritical cluster decay.
double rate_I(double lambda);

// Smallest root of eta = exp(lambda*(eta-1)).  Returns 1 for lambda <= 1;
// for lambda > 1 the unique root in (0,1), residual below 1e-12.
double eta(double lambda);

// 1 - eta(lambda): asymptotic giant-component fraction of G(m, lambda/m).
double giant_fraction(double lambda);

struct Tilt {
    double theta;      // theta_{p1}
    double cgf_theta;  // Lambda(theta) = log(1 - p0 + p0*e^theta)
    double delta;      // Lambda(2 theta) - 2 Lambda(theta), closed form
};

// Cumulant generating function of Bern(p0) at theta.
double bernoulli_cgf(double p0, double theta);

// Tilting parameter theta_q = log(q(1-p0)/(p0(1-q))) for the pair (p0, q).
double tilt_theta(double p0, double q);

// Exponential tilt of Bern(p0) toward Bern(p1); requires 0 < p0 <= p1 < 1.
Tilt tilt(double p0, double p1);

struct DeltaK {
    double value;    // the rate; equals the fallback delta when !interior
    double qk;       // 2/(k-1)
    bool interior;   // true iff 2*theta_{p1} >= theta_{q_k} (minimiser interior)
};

// delta_k = -2*H_{p1}(q_k) + H_{p0}(q_k) with q_k = 2/(k-1), valid when the
// minimiser of Lambda(xi) + (2 theta - xi) q_k - 2 Lambda(theta) is interior.
// When the interior condition fails the value falls back to the coarse bound
// delta = Lambda(2 theta) - 2 Lambda(theta) and interior is false.
DeltaK delta_k(double p0, double p1, long long k);

// Legendre point of the entropy: theta_q such that
// H_{p0}(q) = q*theta_q - Lambda(theta_q).  Requires p0 < q < 1.
double legendre_dual(double q, double p0);

// zeta = (p1-p0)^2/p0 * n^4/N^2; the total degree test separates iff zeta is
// large.
double signal_zeta(long long N, long long n, double p0, double p1);

// Mean of the limiting Poisson number of cycles in G(n, lambda/n) for
// lambda < 1:  a(lambda) = 0.5*log(1/(1-lambda)) - lambda/2 - lambda^2/4.
double cycle_intensity(double lambda);

// Chernoff upper bound exp(-n * H_p(q)) for P(Bin(n,p) >= q n), q >= p.
double chernoff_tail(long long n, double p, double q);

}  // namespace commdet
