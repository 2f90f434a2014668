#include "commdet/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "commdet/analytic.hpp"
#include "commdet/errors.hpp"
#include "commdet/generate.hpp"
#include "commdet/io.hpp"
#include "commdet/parallel.hpp"
#include "commdet/rng.hpp"

namespace commdet {

namespace {

ScanMode parse_mode(const std::string& s) {
    if (s == "exact") return ScanMode::exact;
    if (s == "greedy") return ScanMode::greedy;
    if (s == "component") return ScanMode::component;
    throw std::invalid_argument("unknown scan mode: " + s);
}

const char* mode_name(ScanMode m) {
    switch (m) {
        case ScanMode::exact: return "exact";
        case ScanMode::greedy: return "greedy";
        case ScanMode::component: return "component";
    }
    return "?";
}

}  // namespace

std::string TestSpec::display() const {
    std::ostringstream os;
    os << name;
    if (name == "scan") os << " k=" << k << " mode=" << mode_name(mode);
    if (name == "broad_scan") os << " n=" << n << " mode=" << mode_name(mode);
    if (name == "ktree") {
        if (k > 0)
            os << " k=" << k;
        else
            os << " c=" << ktree_c;
    }
    return os.str();
}

TestSpec TestSpec::parse(const std::string& text) {
    std::istringstream is(text);
    TestSpec spec;
    is >> spec.name;
    require(!spec.name.empty(), "TestSpec: empty statistic name");
    static const char* known[] = {"total_degree", "scan",      "broad_scan",
                                  "largest_cc",   "triangles", "ktree"};
    bool ok = false;
    for (const char* s : known) ok = ok || spec.name == s;
    if (!ok) throw std::invalid_argument("TestSpec: unknown statistic: " + spec.name);

    std::string kv;
    while (is >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("TestSpec: expected key=value, got: " + kv);
        std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "k")
            spec.k = std::stoi(value);
        else if (key == "n")
            spec.n = std::stoi(value);
        else if (key == "mode")
            spec.mode = parse_mode(value);
        else if (key == "c")
            spec.ktree_c = std::stod(value);
        else
            throw std::invalid_argument("TestSpec: unknown parameter: " + key);
    }
    if (spec.name == "scan") require(spec.k >= 1, "TestSpec: scan requires k >= 1");
    if (spec.name == "broad_scan") require(spec.n >= 2, "TestSpec: broad_scan requires n >= 2");
    if (spec.name == "ktree")
        require(spec.k >= 1 || spec.ktree_c > 0.0, "TestSpec: ktree requires k or c");
    return spec;
}

double eval_statistic(const TestSpec& spec, const Graph& g) {
    if (spec.name == "total_degree") return static_cast<double>(total_degree(g));
    if (spec.name == "largest_cc") return static_cast<double>(largest_cc(g).size);
    if (spec.name == "triangles") return static_cast<double>(triangles(g));
    if (spec.name == "scan")
        return static_cast<double>(scan(g, spec.k, spec.mode).value);
    if (spec.name == "broad_scan") return broad_scan(g, spec.n, spec.mode).value;
    if (spec.name == "ktree") {
        int k = spec.k;
        if (k == 0) {
            require(spec.ktree_c > 0.0 && spec.n >= 2, "ktree: need k, or c and n");
            k = std::max(2, static_cast<int>(std::lround(
                                spec.ktree_c * std::log(static_cast<double>(spec.n)))));
        }
        return static_cast<double>(ktree_count(g, k));
    }
    throw std::invalid_argument("eval_statistic: unknown statistic: " + spec.name);
}

double critical_value(std::vector<double> values, double level, bool integer_valued) {
    require(!values.empty(), "critical_value: no null values");
    if (level >= 1.0) return -std::numeric_limits<double>::infinity();
    require(level > 0.0, "critical_value: level must be in (0,1)");
    std::sort(values.begin(), values.end());
    const auto R = static_cast<double>(values.size());
    const double budget = level * R + 1e-9;
    // First observed value whose >=-count fits the budget.
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && values[i] == values[i - 1]) continue;
        double count_ge = R - static_cast<double>(i);
        if (count_ge <= budget) return values[i];
    }
    double vmax = values.back();
    return integer_valued ? std::floor(vmax) + 1.0
                          : std::nextafter(vmax, std::numeric_limits<double>::infinity());
}

CalibrationResult calibrate(const TestSpec& spec, int N, double p0, double level, int R,
                            std::uint64_t seed, int threads) {
    require(R >= 1, "calibrate: R must be >= 1");
    require(p0 >= 0.0 && p0 <= 1.0, "calibrate: p0 must be in [0,1]");
    auto values = parallel_map(R, threads, [&](int r) {
        Graph g = gen_er(N, p0, derive_seed(seed, static_cast<std::uint64_t>(r)));
        return eval_statistic(spec, g);
    });
    CalibrationResult out;
    out.level = level;
    out.replicates = R;
    out.seed = seed;
    out.t = critical_value(values, level, spec.integer_valued());
    long long count = 0;
    for (double v : values)
        if (v >= out.t) ++count;
    out.achieved = static_cast<double>(count) / static_cast<double>(R);
    return out;
}

PowerEstimate power(const TestSpec& spec, int N, double p0, int n, double p1, double t,
                    int R, std::uint64_t seed, int threads) {
    require(R >= 1, "power: R must be >= 1");
    auto values = parallel_map(R, threads, [&](int r) {
        auto inst = gen_planted(N, p0, n, p1, derive_seed(seed, static_cast<std::uint64_t>(r)));
        return eval_statistic(spec, inst.graph) >= t ? 1.0 : 0.0;
    });
    PowerEstimate out;
    out.replicates = R;
    double hits = 0.0;
    for (double v : values) hits += v;
    out.value = hits / static_cast<double>(R);
    out.se = std::sqrt(out.value * (1.0 - out.value) / static_cast<double>(R));
    return out;
}

RiskEstimate risk(const TestSpec& spec, int N, double p0, int n, double p1, double t,
                  int R, std::uint64_t seed, int threads) {
    auto null_values = parallel_map(R, threads, [&](int r) {
        Graph g = gen_er(N, p0, derive_seed(seed, static_cast<std::uint64_t>(r)));
        return eval_statistic(spec, g) >= t ? 1.0 : 0.0;
    });
    double rejects = 0.0;
    for (double v : null_values) rejects += v;
    PowerEstimate pw = power(spec, N, p0, n, p1, t, R, derive_seed(seed, 0x9f1e), threads);
    RiskEstimate out;
    out.type1 = rejects / static_cast<double>(R);
    out.type2 = 1.0 - pw.value;
    out.risk = out.type1 + out.type2;
    return out;
}

DiagramGrid diagram(int N, int n, const std::vector<double>& lambda0s,
                    const std::vector<double>& lambda1s, const std::vector<TestSpec>& tests,
                    double level, int R, std::uint64_t seed, int threads) {
    require(!lambda0s.empty() && !lambda1s.empty(), "diagram: empty grid");
    require(n >= 2 && n <= N, "diagram: need 2 <= n <= N");
    DiagramGrid grid;
    grid.N = N;
    grid.n = n;
    grid.level = level;
    grid.replicates = R;
    grid.master_seed = seed;
    grid.lambda0s = lambda0s;
    grid.lambda1s = lambda1s;

    std::uint64_t cell_index = 0;
    for (double l0 : lambda0s) {
        for (double l1 : lambda1s) {
            DiagramCell cell;
            cell.lambda0 = l0;
            cell.lambda1 = l1;
            double p0 = l0 / static_cast<double>(N);
            double p1 = l1 / static_cast<double>(n);
            cell.valid = p0 >= 0.0 && p0 <= 1.0 && p1 >= p0 && p1 <= 1.0;
            if (cell.valid) {
                for (std::size_t ti = 0; ti < tests.size(); ++ti) {
                    std::uint64_t cell_seed =
                        derive_seed(seed, cell_index * 1024 + static_cast<std::uint64_t>(ti));
                    CalibrationResult cal = calibrate(tests[ti], N, p0, level, R,
                                                      derive_seed(cell_seed, 1), threads);
                    RiskEstimate rk = risk(tests[ti], N, p0, n, p1, cal.t, R,
                                           derive_seed(cell_seed, 2), threads);
                    CellTestResult res;
                    res.test = tests[ti].display();
                    res.t = cal.t;
                    res.type1 = rk.type1;
                    res.type2 = rk.type2;
                    res.risk = rk.risk;
                    res.replicates = R;
                    res.seed = cell_seed;
                    cell.tests.push_back(std::move(res));
                }
            }
            grid.cells.push_back(std::move(cell));
            ++cell_index;
        }
    }
    return grid;
}

namespace {

// Bisection for f(x) = 0 on [lo, hi] assuming a sign change.
template <typename F>
double bisect(F&& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters && hi - lo > 1e-13; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm <= 0.0) == (flo <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Solves I_{x} = target on x in (0, 1); I is decreasing there.
double invert_rate_on_01(double target) {
    double lo = 1e-12, hi = 1.0 - 1e-12;
    return bisect([&](double x) { return rate_I(x) - target; }, lo, hi);
}

// k-tree detectability condition, right-hand side of the inequality: the
// curve is RHS(l0, l1) = log(N/n^2)/log(n).
double ktree_rhs(double l0, double l1) {
    double a = l0 / (l1 * M_E);            // lambda0 / (lambda1 e)
    double b = std::sqrt(l0 / M_E);        // sqrt(lambda0/e)
    double c = std::sqrt(l1) / M_E;        // sqrt(lambda1)/e
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return (rate_I(a) - rate_I(b)) / ((1.0 - a) * rate_I(c));
}

}  // namespace

std::optional<double> ktree_default_c(long long N, long long n, double lambda0,
                                      double lambda1) {
    if (!(lambda0 > 0.0 && lambda1 > std::sqrt(lambda0 / M_E) && lambda1 < 1.0))
        return std::nullopt;
    double a = lambda0 / (lambda1 * M_E);
    double c_hi = 1.0 / (2.0 * (1.0 - a) * rate_I(std::sqrt(lambda1) / M_E));
    double num = std::log(static_cast<double>(N) / (static_cast<double>(n) * static_cast<double>(n)));
    double c_lo = num <= 0.0 ? 0.0
                             : num / std::log(static_cast<double>(n)) /
                                   (2.0 * (rate_I(a) - rate_I(std::sqrt(lambda0 / M_E))));
    if (!(c_lo < c_hi) || c_hi <= 0.0) return std::nullopt;
    return 0.5 * (std::max(0.0, c_lo) + c_hi);
}

std::vector<CurvePoint> boundary_curves(long long N, long long n,
                                        const std::vector<double>& lambda0_grid,
                                        const std::string& which) {
    require(n >= 2 && n < N, "boundary_curves: need 2 <= n < N");
    std::vector<CurvePoint> out;
    auto want = [&](const char* name) { return which == "all" || which == name; };
    const double NN = static_cast<double>(N), nn = static_cast<double>(n);
    const double logN = std::log(NN), logn = std::log(nn);

    for (double l0 : lambda0_grid) {
        if (l0 <= 0.0) continue;
        if (want("total_degree_zeta1")) {
            // zeta = 1  <=>  (l1 - l0 n/N)^2 = l0 N / n^2.
            double l1 = l0 * nn / NN + std::sqrt(l0 * NN) / nn;
            out.push_back({"total_degree_zeta1", l0, l1});
        }
        if (want("broad_scan_lambda1")) out.push_back({"broad_scan_lambda1", l0, 1.0});
        if (want("no_powerful_frontier"))
            out.push_back({"no_powerful_frontier", l0, std::sqrt(l0 / M_E)});

        if (want("cc_subcritical_simple") && l0 < 1.0) {
            double target = rate_I(l0) * logn / logN;
            if (target > 0.0)
                out.push_back({"cc_subcritical_simple", l0, invert_rate_on_01(target)});
        }
        if (want("cc_subcritical") && l0 < 1.0) {
            // Solve l0 + I_{l1} - l0 e^{I_{l1}} = I_{l0} log(n)/log(N) on the
            // admissible branch l0 e^{I_{l1}} <= 1 (l1 above the root of
            // l0 = l1 e^{1-l1}), where the left side decreases to 0 at l1 = 1.
            double target = rate_I(l0) * logn / logN;
            auto lhs = [&](double l1) {
                double I = rate_I(l1);
                return l0 + I - l0 * std::exp(I);
            };
            double lo = bisect([&](double x) { return x * std::exp(1.0 - x) - l0; },
                               1e-12, 1.0);  // l1_min with l0 = l1 e^{1-l1}
            double flo = lhs(std::min(1.0 - 1e-12, lo + 1e-12));
            if (target > 0.0 && target <= flo) {
                double l1 = bisect([&](double x) { return lhs(x) - target; },
                                   std::min(1.0 - 1e-12, lo + 1e-12), 1.0 - 1e-12);
                out.push_back({"cc_subcritical", l0, l1});
            }
        }
        if (want("ktree_feasibility") && l0 < M_E && l0 > 0.0) {
            double tau = std::log(NN / (nn * nn)) / logn;
            double lo = std::sqrt(l0 / M_E) + 1e-9;
            if (lo < 1.0 - 1e-9 && tau > 0.0) {
                // RHS rises from 0 at l1 = sqrt(l0/e); scan for the first
                // bracket then refine.
                double prev = ktree_rhs(l0, lo);
                double step = (1.0 - 1e-9 - lo) / 400.0;
                for (int i = 1; i <= 400; ++i) {
                    double x = lo + step * static_cast<double>(i);
                    double cur = ktree_rhs(l0, x);
                    if (std::isfinite(prev) && std::isfinite(cur) &&
                        (prev - tau) * (cur - tau) <= 0.0) {
                        double l1 = bisect([&](double y) { return ktree_rhs(l0, y) - tau; },
                                           x - step, x);
                        out.push_back({"ktree_feasibility", l0, l1});
                        break;
                    }
                    prev = cur;
                }
            }
        }
    }
    return out;
}

std::string diagram_csv(const DiagramGrid& grid) {
    std::ostringstream os;
    os << "lambda0,lambda1,test,t,type1,type2,risk,R,seed\n";
    for (const auto& cell : grid.cells) {
        if (cell.valid) {
            for (const auto& tr : cell.tests)
                os << format_double(cell.lambda0) << "," << format_double(cell.lambda1) << ","
                   << tr.test << "," << format_double(tr.t) << "," << format_double(tr.type1)
                   << "," << format_double(tr.type2) << "," << format_double(tr.risk) << ","
                   << tr.replicates << "," << tr.seed << "\n";
        } else {
            // Invalid cells (p1 < p0 or probabilities out of range) are
            // marked, not computed.
            os << format_double(cell.lambda0) << "," << format_double(cell.lambda1)
               << ",invalid,nan,nan,nan,nan," << grid.replicates << ",0\n";
        }
    }
    return os.str();
}

std::string curves_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream os;
    os << "curve_name,lambda0,lambda1\n";
    for (const auto& p : points)
        os << p.curve << "," << format_double(p.lambda0) << "," << format_double(p.lambda1)
           << "\n";
    return os.str();
}

}  // namespace commdet
