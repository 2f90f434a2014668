#pragma once

// Random graph generation for both hypotheses.  G(N, p) sampling uses
// geometric skipping over the linearised pair sequence when p is small, so a
// draw costs O(p N^2) expected work instead of O(N^2); the sampled law is
// exactly iid Bernoulli(p) per pair either way.

#include <cstdint>
#include <vector>

#include "commdet/graph.hpp"

namespace commdet {

struct ModelParams {
    long long N;   // ambient size
    long long n;   // community size
    double p0;     // background connection probability
    double p1;     // within-community connection probability
};

// Graph together with the hidden community S (sorted) and the parameters it
// was drawn with.
struct PlantedInstance {
    Graph graph;
    std::vector<int> community;
    ModelParams params;
};

// Erdos-Renyi G(N, p); deterministic given seed.
Graph gen_er(int N, double p, std::uint64_t seed);

// G(N, p0; n, p1): S uniform over size-n subsets, within-S pairs Bern(p1),
// all other pairs Bern(p0); deterministic given seed.
PlantedInstance gen_planted(int N, double p0, int n, double p1, std::uint64_t seed);

// Same alternative draw on a caller-fixed community (used where label
// invariance has already been applied).
Graph gen_planted_fixed(int N, double p0, const std::vector<int>& S, double p1,
                        std::uint64_t seed);

// Uniform size-n subset of {0..N-1}, sorted.
std::vector<int> sample_subset(int N, int n, std::uint64_t seed);

}  // namespace commdet
