#pragma once

// Monte-Carlo machinery: named test statistics, empirical calibration of
// critical values, power/risk estimation under the planted alternative, the
// (lambda0, lambda1) detection-diagram sweep, and the theoretical boundary
// contours rendered at finite (N, n).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "commdet/graph.hpp"
#include "commdet/statistics.hpp"

namespace commdet {

// A named statistic plus its parameters.  Rejection is always for large
// values.  Stable names: "total_degree", "scan", "broad_scan", "largest_cc",
// "triangles", "ktree".
struct TestSpec {
    std::string name;
    int k = 0;                         // scan, ktree
    int n = 0;                         // broad_scan window anchor
    ScanMode mode = ScanMode::greedy;  // scan, broad_scan
    double ktree_c = 0.0;              // ktree: k = max(2, round(c log n)) when k == 0

    // All statistics are integer-valued except broad_scan.
    bool integer_valued() const { return name != "broad_scan"; }
    std::string display() const;

    // Parses e.g. "scan k=3 mode=exact", "broad_scan n=70 mode=component",
    // "ktree k=4", "triangles".  Throws std::invalid_argument on unknown
    // names or malformed/missing parameters.
    static TestSpec parse(const std::string& text);
};

// Evaluates the statistic on a graph.  Feasibility errors from exact modes
// propagate.
double eval_statistic(const TestSpec& spec, const Graph& g);

struct CalibrationResult {
    double t = 0.0;          // critical value; reject when stat >= t
    double level = 0.0;      // target level
    double achieved = 0.0;   // empirical P0(stat >= t), <= level by construction
    int replicates = 0;
    std::uint64_t seed = 0;  // master seed of the null draws
};

// Smallest achievable threshold with empirical size <= level: candidates are
// the observed null values plus one step past the maximum (value+1 for
// integer statistics, nextafter for real ones).  level >= 1 returns the
// always-reject sentinel t = -infinity.
double critical_value(std::vector<double> null_values, double level, bool integer_valued);

CalibrationResult calibrate(const TestSpec& spec, int N, double p0, double level, int R,
                            std::uint64_t seed, int threads = 1);

struct PowerEstimate {
    double value = 0.0;  // empirical P_S(stat >= t)
    double se = 0.0;     // binomial standard error
    int replicates = 0;
};

// Uniform-S draws estimate the worst case exactly: relabelling invariance
// makes P_S identical for every |S| = n.
PowerEstimate power(const TestSpec& spec, int N, double p0, int n, double p1, double t,
                    int R, std::uint64_t seed, int threads = 1);

struct RiskEstimate {
    double type1 = 0.0;
    double type2 = 0.0;
    double risk = 0.0;  // type1 + type2
};

RiskEstimate risk(const TestSpec& spec, int N, double p0, int n, double p1, double t,
                  int R, std::uint64_t seed, int threads = 1);

struct CellTestResult {
    std::string test;
    double t = 0.0;
    double type1 = 0.0;
    double type2 = 0.0;
    double risk = 0.0;
    int replicates = 0;
    std::uint64_t seed = 0;
};

struct DiagramCell {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    bool valid = false;  // p1 >= p0 and both probabilities in range
    std::vector<CellTestResult> tests;
};

struct DiagramGrid {
    int N = 0;
    int n = 0;
    double level = 0.0;
    int replicates = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> lambda0s, lambda1s;
    std::vector<DiagramCell> cells;  // row-major over (lambda0, lambda1)
};

// Calibrates and evaluates every test on every valid grid cell.  Cell seeds
// derive from (master, cell index, test index); output is bitwise stable
// under any thread count.
DiagramGrid diagram(int N, int n, const std::vector<double>& lambda0s,
                    const std::vector<double>& lambda1s, const std::vector<TestSpec>& tests,
                    double level, int R, std::uint64_t seed, int threads = 1);

struct CurvePoint {
    std::string curve;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
};

// Finite-(N,n) boundary contours in the (lambda0, lambda1) plane:
//   total_degree_zeta1      zeta = 1
//   broad_scan_lambda1      lambda1 = 1
//   cc_subcritical          I_{l0} log n = (l0 + I_{l1} - l0 e^{I_{l1}}) log N
//   cc_subcritical_simple   I_{l0} log n = I_{l1} log N
//   no_powerful_frontier    lambda1 = sqrt(lambda0 / e)
//   ktree_feasibility       equality in the k-tree detectability condition
// `which` filters by curve name; "all" emits every curve.
std::vector<CurvePoint> boundary_curves(long long N, long long n,
                                        const std::vector<double>& lambda0_grid,
                                        const std::string& which = "all");

// Midpoint of the admissible interval for the k-tree constant c (k = c log n);
// empty or invalid inputs return nullopt.
std::optional<double> ktree_default_c(long long N, long long n, double lambda0,
                                      double lambda1);

// CSV renderings with the documented stable schemas.  Byte-identical for
// identical inputs regardless of thread count.
//   diagram: lambda0,lambda1,test,t,type1,type2,risk,R,seed
//   curves:  curve_name,lambda0,lambda1
std::string diagram_csv(const DiagramGrid& grid);
std::string curves_csv(const std::vector<CurvePoint>& points);

}  // namespace commdet
