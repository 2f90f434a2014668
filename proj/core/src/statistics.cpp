#include "commdet/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "commdet/errors.hpp"
#include "commdet/generate.hpp"
#include "commdet/rng.hpp"

namespace commdet {

long long total_degree(const Graph& g) { return g.num_edges(); }

long long edges_within(const Graph& g, const std::vector<int>& S) {
    std::vector<int> sorted = S;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "edges_within: duplicate vertex in S");
    for (int v : sorted)
        require(v >= 0 && v < g.num_vertices(), "edges_within: vertex out of range");
    long long count = 0;
    for (int v : sorted)
        for (int w : g.neighbors(v))
            if (w > v && std::binary_search(sorted.begin(), sorted.end(), w)) ++count;
    return count;
}

namespace {

// ---------------------------------------------------------------------------
// Hill climbing on k-subsets: best single swap until no improvement.
// ---------------------------------------------------------------------------

struct Climber {
    const Graph& g;
    int k;
    std::vector<int> cnt;        // neighbors inside current set, for all vertices
    std::vector<char> in_set;
    std::vector<int> set;        // current subset
    long long value = 0;

    Climber(const Graph& gg, int kk)
        : g(gg), k(kk), cnt(gg.num_vertices(), 0), in_set(gg.num_vertices(), 0) {}

    void init(const std::vector<int>& start) {
        std::fill(cnt.begin(), cnt.end(), 0);
        std::fill(in_set.begin(), in_set.end(), 0);
        set = start;
        value = 0;
        for (int v : set) in_set[v] = 1;
        for (int v : set)
            for (int w : g.neighbors(v)) {
                ++cnt[w];
                if (in_set[w] && w > v) ++value;
            }
    }

    void apply_swap(int out, int in) {
        value += cnt[in] - cnt[out] - (g.has_edge(out, in) ? 1 : 0);
        in_set[out] = 0;
        for (int w : g.neighbors(out)) --cnt[w];
        in_set[in] = 1;
        for (int w : g.neighbors(in)) ++cnt[w];
        *std::find(set.begin(), set.end(), out) = in;
    }

    // The best swap has cnt[in] >= max-1 and cnt[out] <= min+1 (the adjacency
    // correction costs at most one edge), so it suffices to scan those two
    // candidate sets.  Ties resolve to smallest labels; candidate sets are
    // truncated at a fixed width to bound the work, which can only make the
    // climb stop earlier (the result stays a valid lower bound).
    bool step() {
        static constexpr std::size_t kMaxCandidates = 64;
        int max_cnt = 0;
        for (int v : set)
            for (int w : g.neighbors(v))
                if (!in_set[w]) max_cnt = std::max(max_cnt, cnt[w]);
        if (max_cnt == 0) return false;

        std::vector<int> ins;
        for (int v : set)
            for (int w : g.neighbors(v))
                if (!in_set[w] && cnt[w] >= max_cnt - 1) ins.push_back(w);
        std::sort(ins.begin(), ins.end());
        ins.erase(std::unique(ins.begin(), ins.end()), ins.end());
        if (ins.size() > kMaxCandidates) ins.resize(kMaxCandidates);

        int min_cnt = cnt[set[0]];
        for (int v : set) min_cnt = std::min(min_cnt, cnt[v]);
        std::vector<int> outs;
        for (int v : set)
            if (cnt[v] <= min_cnt + 1) outs.push_back(v);
        std::sort(outs.begin(), outs.end());
        if (outs.size() > kMaxCandidates) outs.resize(kMaxCandidates);

        int best_gain = 0, best_out = -1, best_in = -1;
        for (int v : ins)
            for (int u : outs) {
                int gain = cnt[v] - cnt[u] - (g.has_edge(u, v) ? 1 : 0);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_out = u;
                    best_in = v;
                }
            }
        if (best_gain <= 0) return false;
        apply_swap(best_out, best_in);
        return true;
    }

    ScanResult run(const std::vector<int>& start) {
        init(start);
        while (step()) {
        }
        ScanResult r;
        r.value = value;
        r.witness = set;
        std::sort(r.witness.begin(), r.witness.end());
        r.exact = false;
        return r;
    }
};

// k vertices ordered by (degree desc, label asc), drawn first from the
// component with the highest edge density, then from the rest of the graph.
std::vector<int> component_seed(const Graph& g, int k) {
    auto part = components(g);
    std::vector<long long> comp_edges(part.sizes.size(), 0);
    for (const auto& [i, j] : g.edges()) ++comp_edges[part.label[i]];
    int densest = 0;
    double best_density = -1.0;
    for (std::size_t c = 0; c < part.sizes.size(); ++c) {
        double d = static_cast<double>(comp_edges[c]) / static_cast<double>(part.sizes[c]);
        if (d > best_density + 1e-12) {
            best_density = d;
            densest = static_cast<int>(c);
        }
    }
    std::vector<int> order(g.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        bool ina = part.label[a] == densest, inb = part.label[b] == densest;
        if (ina != inb) return ina;
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    return {order.begin(), order.begin() + k};
}

ScanResult scan_heuristic(const Graph& g, int k, ScanMode mode, const ScanOptions& opts) {
    Climber climber(g, k);
    ScanResult best = climber.run(component_seed(g, k));
    if (mode == ScanMode::greedy) {
        for (int r = 1; r <= opts.restarts; ++r) {
            auto start = sample_subset(g.num_vertices(), k, derive_seed(opts.seed, r));
            ScanResult cand = climber.run(start);
            if (cand.value > best.value) best = cand;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Exact scan: branch and bound over vertex inclusion, degree ordering.
// ---------------------------------------------------------------------------

struct BranchAndBound {
    const Graph& g;
    int k;
    long long budget;
    std::vector<int> order;      // candidates by degree desc
    std::vector<int> cnt;        // neighbors among currently chosen
    std::vector<int> chosen;
    std::vector<int> best_witness;
    long long best_value;
    long long nodes = 0;
    std::vector<double> scores;  // scratch

    BranchAndBound(const Graph& gg, int kk, const ScanResult& incumbent, long long nb)
        : g(gg), k(kk), budget(nb), cnt(gg.num_vertices(), 0),
          best_witness(incumbent.witness), best_value(incumbent.value) {
        order.resize(g.num_vertices());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
            return a < b;
        });
    }

    // Admissible completion bound: each of the r vertices still to pick adds
    // its edges into the chosen set plus at most min(deg, r-1)/2 edges among
    // the new vertices.
    double upper_bound(std::size_t idx, int r, long long cur) {
        scores.clear();
        for (std::size_t t = idx; t < order.size(); ++t) {
            int v = order[t];
            scores.push_back(static_cast<double>(cnt[v]) +
                             0.5 * std::min(g.degree(v), r - 1));
        }
        if (static_cast<int>(scores.size()) < r) return -1.0;
        std::nth_element(scores.begin(), scores.begin() + (r - 1), scores.end(),
                         std::greater<>());
        double s = static_cast<double>(cur);
        for (int t = 0; t < r; ++t) s += scores[static_cast<std::size_t>(t)];
        return s;
    }

    void rec(std::size_t idx, long long cur) {
        if (++nodes > budget)
            throw FeasibilityError("scan: branch-and-bound node budget exceeded");
        if (static_cast<int>(chosen.size()) == k) {
            if (cur > best_value) {
                best_value = cur;
                best_witness = chosen;
            }
            return;
        }
        int r = k - static_cast<int>(chosen.size());
        if (order.size() - idx < static_cast<std::size_t>(r)) return;
        if (upper_bound(idx, r, cur) <= static_cast<double>(best_value)) return;

        int v = order[idx];
        // include v
        chosen.push_back(v);
        long long gain = cnt[v];
        for (int w : g.neighbors(v)) ++cnt[w];
        rec(idx + 1, cur + gain);
        for (int w : g.neighbors(v)) --cnt[w];
        chosen.pop_back();
        // exclude v
        rec(idx + 1, cur);
    }

    ScanResult run() {
        rec(0, 0);
        ScanResult r;
        r.value = best_value;
        r.witness = best_witness;
        std::sort(r.witness.begin(), r.witness.end());
        r.exact = true;
        return r;
    }
};

// Closed-form exact answers for k <= 3 at any N.
ScanResult scan_exact_small_k(const Graph& g, int k) {
    const int N = g.num_vertices();
    ScanResult r;
    r.exact = true;
    if (k == 1) {
        r.value = 0;
        r.witness = {0};
        return r;
    }
    if (k == 2) {
        if (g.num_edges() > 0) {
            r.value = 1;
            r.witness = {g.edges()[0].first, g.edges()[0].second};
        } else {
            r.value = 0;
            r.witness = {0, 1};
        }
        return r;
    }
    // k == 3: triangle > path > single edge > empty.
    for (const auto& [u, v] : g.edges()) {
        auto nu = g.neighbors(u);
        auto nv = g.neighbors(v);
        std::vector<int> common;
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                              std::back_inserter(common));
        if (!common.empty()) {
            r.value = 3;
            r.witness = {u, v, common.front()};
            std::sort(r.witness.begin(), r.witness.end());
            return r;
        }
    }
    for (int v = 0; v < N; ++v)
        if (g.degree(v) >= 2) {
            auto nb = g.neighbors(v);
            r.value = 2;
            r.witness = {v, nb[0], nb[1]};
            std::sort(r.witness.begin(), r.witness.end());
            return r;
        }
    if (g.num_edges() > 0) {
        auto [u, v] = g.edges()[0];
        int other = 0;
        while (other == u || other == v) ++other;
        r.value = 1;
        r.witness = {u, v, other};
        std::sort(r.witness.begin(), r.witness.end());
        return r;
    }
    r.value = 0;
    r.witness = {0, 1, 2};
    return r;
}

}  // namespace

ScanResult scan(const Graph& g, int k, ScanMode mode, const ScanOptions& opts) {
    require(k >= 1 && k <= g.num_vertices(), "scan: need 1 <= k <= N");
    if (mode == ScanMode::greedy || mode == ScanMode::component)
        return scan_heuristic(g, k, mode, opts);

    if (k <= 3) return scan_exact_small_k(g, k);
    if (g.num_vertices() > opts.exact_vertex_cap)
        throw FeasibilityError("scan: exact mode needs N <= cap or k <= 3");
    ScanResult incumbent = scan_heuristic(g, k, ScanMode::greedy, opts);
    BranchAndBound bb(g, k, incumbent, opts.node_budget);
    return bb.run();
}

std::pair<int, int> broad_scan_range(int N, int n) {
    // u_N = log log(N/n) of the asymptotic definition is < 1 (or undefined) at
    // desk scale; floor it at 2 so the range [n/u, n] is always sensible.
    double ratio = static_cast<double>(N) / static_cast<double>(n);
    double u = 2.0;
    if (ratio > 1.0) {
        double ll = std::log(std::log(ratio));
        if (std::isfinite(ll)) u = std::max(ll, 2.0);
    }
    int k_lo = std::max(2, static_cast<int>(std::ceil(static_cast<double>(n) / u)));
    return {std::min(k_lo, n), n};
}

BroadScanResult broad_scan(const Graph& g, int n, ScanMode mode, const ScanOptions& opts) {
    require(n >= 2 && n <= g.num_vertices(), "broad_scan: need 2 <= n <= N");
    auto [k_lo, k_hi] = broad_scan_range(g.num_vertices(), n);
    BroadScanResult out;
    for (int k = k_lo; k <= k_hi; ++k) {
        ScanResult r = scan(g, k, mode, opts);
        double density = static_cast<double>(r.value) / static_cast<double>(k);
        if (k == k_lo || density > out.value) {
            out.value = density;
            out.best_k = k;
            out.best = std::move(r);
        }
    }
    return out;
}

long long triangles(const Graph& g) {
    const int N = g.num_vertices();
    // Rank vertices by (degree, label); orient every edge toward the higher
    // rank and intersect out-neighborhoods.
    std::vector<int> rank(N);
    {
        std::vector<int> order(N);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
            return a < b;
        });
        for (int i = 0; i < N; ++i) rank[order[i]] = i;
    }
    std::vector<std::vector<int>> out(N);
    for (const auto& [i, j] : g.edges()) {
        if (rank[i] < rank[j])
            out[i].push_back(j);
        else
            out[j].push_back(i);
    }
    for (auto& nb : out)
        std::sort(nb.begin(), nb.end(),
                  [&](int a, int b) { return rank[a] < rank[b]; });
    long long total = 0;
    for (int u = 0; u < N; ++u)
        for (int v : out[u]) {
            auto it = out[u].begin();
            auto itv = out[v].begin();
            while (it != out[u].end() && itv != out[v].end()) {
                if (rank[*it] < rank[*itv])
                    ++it;
                else if (rank[*itv] < rank[*it])
                    ++itv;
                else {
                    ++total;
                    ++it;
                    ++itv;
                }
            }
        }
    return total;
}

namespace {

// Connected-induced-subgraph enumeration (vertex extension with exclusion
// sets); each connected induced subgraph with minimum vertex v is produced
// exactly once.  Intermediate sets are induced-connected, so on the way to an
// induced k-tree every prefix is itself a tree; branches whose edge count
// exceeds |S|-1 can never reach a tree and are cut.
struct KTreeEnumerator {
    const Graph& g;
    int k;
    long long budget;
    long long nodes = 0;
    long long trees = 0;
    std::vector<char> in_sub, seen;
    std::vector<int> sub;

    KTreeEnumerator(const Graph& gg, int kk, long long nb)
        : g(gg), k(kk), budget(nb), in_sub(gg.num_vertices(), 0), seen(gg.num_vertices(), 0) {}

    void extend(std::vector<int>& ext, int root, long long edges_in) {
        if (++nodes > budget)
            throw FeasibilityError("ktree_count: enumeration node budget exceeded");
        if (static_cast<int>(sub.size()) == k) {
            if (edges_in == k - 1) ++trees;
            return;
        }
        while (!ext.empty()) {
            int w = ext.back();
            ext.pop_back();
            long long new_edges = 0;
            for (int u : g.neighbors(w))
                if (in_sub[u]) ++new_edges;
            long long total = edges_in + new_edges;
            if (total > static_cast<long long>(sub.size())) continue;  // cycle, not a tree

            std::vector<int> next_ext = ext;
            std::vector<int> newly_seen;
            for (int u : g.neighbors(w))
                if (u > root && !in_sub[u] && !seen[u]) {
                    seen[u] = 1;
                    newly_seen.push_back(u);
                    next_ext.push_back(u);
                }
            sub.push_back(w);
            in_sub[w] = 1;
            extend(next_ext, root, total);
            in_sub[w] = 0;
            sub.pop_back();
            for (int u : newly_seen) seen[u] = 0;
        }
    }

    long long run() {
        for (int v = 0; v < g.num_vertices(); ++v) {
            sub.assign(1, v);
            in_sub[v] = 1;
            seen[v] = 1;
            std::vector<int> ext;
            std::vector<int> marked;
            for (int u : g.neighbors(v))
                if (u > v) {
                    ext.push_back(u);
                    seen[u] = 1;
                    marked.push_back(u);
                }
            extend(ext, v, 0);
            in_sub[v] = 0;
            seen[v] = 0;
            for (int u : marked) seen[u] = 0;
        }
        return trees;
    }
};

}  // namespace

long long ktree_count(const Graph& g, int k, long long node_budget) {
    require(k >= 1, "ktree_count: k must be >= 1");
    if (k == 1) return g.num_vertices();
    if (k > g.num_vertices()) return 0;
    KTreeEnumerator e(g, k, node_budget);
    return e.run();
}

}  // namespace commdet
