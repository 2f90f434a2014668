#pragma once

// The acceptance battery: every headline check of the artifact, runnable from
// the CLI (`verify`) and from the acceptance test binary.  Each check pins
// its parameters, tolerances and master-seed use in code.  Brute-force
// oracles (subset enumeration, Prufer decoding) live here so they stay
// independent of the optimised implementation paths they validate.

#include <cstdint>
#include <string>
#include <vector>

#include "commdet/graph.hpp"

namespace commdet {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20250808;
    int threads = 2;
    // Empty runs everything; otherwise a comma-separated list of criterion
    // numbers, e.g. "1,6,8".
    std::string only;
};

std::vector<CheckResult> run_acceptance(const VerifyOptions& opts);

// ---- independent oracles (naive enumeration paths) ----

// max over all C(N,k) subsets of the in-subset edge count.
long long brute_force_scan(const Graph& g, int k);

// max over the broad-scan k range of brute_force_scan / k.
double brute_force_broad_scan(const Graph& g, int n);

// number of k-subsets inducing a tree, by C(N,k) enumeration.
long long brute_force_ktree(const Graph& g, int k);

// exact P(Bin(n,p) >= ceil(q*n)) by summation.
double exact_binomial_upper_tail(int n, double p, double q);

}  // namespace commdet
