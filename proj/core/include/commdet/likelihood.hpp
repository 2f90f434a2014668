#pragma once

// Likelihood-ratio laboratory for the planted model: per-subset likelihood
// L_S = exp(theta W_S - Lambda(theta) n^(2)), the subset-averaged ratio L,
// and its truncation by decreasing events Gamma_S (forest, forest with a
// component cap, per-size edge caps).  Exhaustive versions sum over all
// graphs on N <= 5 vertices, optionally in exact rational arithmetic.

#include <cstdint>
#include <vector>

#include "commdet/graph.hpp"
#include "commdet/rational.hpp"

namespace commdet {

struct TruncationEvent {
    enum class Kind { none, forest, forest_with_cap, edge_cap_profile };

    Kind kind = Kind::none;
    double component_cap = 0.0;                     // forest_with_cap
    std::vector<std::pair<int, double>> edge_caps;  // edge_cap_profile: (k, w_k)

    static TruncationEvent none() { return {}; }
    static TruncationEvent forest() { return {Kind::forest, 0.0, {}}; }
    static TruncationEvent forest_with_cap(double f);
    static TruncationEvent edge_cap_profile(std::vector<std::pair<int, double>> caps);
};

// f_n = (1+c) * log(n) / I_{lambda1}; the component cap used with the forest
// event in the subcritical truncation.  c defaults to 0.1.
double forest_cap_fn(double lambda1, long long n, double c = 0.1);

// Does the event hold for this community subgraph?  All events are decreasing
// in the edge set.  The edge-cap profile requires an exact scan per declared
// k and is exponential in general; the usual exact-scan caps apply.
bool truncation_holds(const Graph& community_subgraph, const TruncationEvent& event);

// log L_S from the sufficient statistic: theta*W_S - Lambda(theta)*pairs.
double log_ls(long long w_s, long long pairs, double p0, double p1);

// L_S for the subset S of g; requires 0 < p0 <= p1 < 1 and |S| >= 2.
double ls(const Graph& g, const std::vector<int>& S, double p0, double p1);

struct FullLResult {
    double value = 0.0;        // C(N,n)^{-1} sum_S L_S 1{Gamma_S}
    long long subsets = 0;     // C(N,n)
    long long surviving = 0;   // subsets with Gamma_S holding
};

// Exhaustive subset sum; feasibility-capped at C(N,n) <= subset_cap.
FullLResult full_L(const Graph& g, int n, double p0, double p1,
                   const TruncationEvent& event, long long subset_cap = 1'000'000);

struct Moments {
    double e0_lt = 0.0;   // E_0[L-tilde]
    double e0_lt2 = 0.0;  // E_0[L-tilde^2]
    double ps_gamma = 0.0;  // P_S(Gamma_S), same for every |S| = n
};

// Exact moments by summation over all 2^{C(N,2)} graphs; N <= 5.
Moments exhaustive_moments(int N, int n, double p0, double p1,
                           const TruncationEvent& event);

struct RationalMoments {
    Rat e0_lt;
    Rat e0_lt2;
    Rat ps_gamma;
};

// Same sums in exact rational arithmetic (p0, p1 given as rationals); the
// "equals one exactly" statements hold as integer identities here.
RationalMoments exhaustive_moments_exact(int N, int n, const Rat& p0, const Rat& p1,
                                         const TruncationEvent& event);

// (4/27) * (E_0 L-tilde)^3 / E_0[L-tilde^2], with the convention 0/0 = 0.
double risk_lower_bound(double e0_lt, double e0_lt2);

}  // namespace commdet
