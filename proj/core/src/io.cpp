#include "commdet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "commdet/errors.hpp"

namespace commdet {

void write_edge_list(const Graph& g, std::ostream& os) {
    os << g.num_vertices() << " " << g.num_edges() << "\n";
    for (const auto& [i, j] : g.edges()) os << i << " " << j << "\n";
}

// Malformed content is a parse error (std::invalid_argument); stream-level
// failures surface as IoError from the load/save wrappers.
Graph read_edge_list(std::istream& is) {
    long long N = -1, m = -1;
    if (!(is >> N >> m)) throw std::invalid_argument("edge list: missing 'N m' header");
    if (N < 0 || m < 0) throw std::invalid_argument("edge list: negative header fields");
    std::vector<Graph::Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long e = 0; e < m; ++e) {
        long long i, j;
        if (!(is >> i >> j)) throw std::invalid_argument("edge list: truncated edge lines");
        if (i < 0 || j < 0 || i >= N || j >= N)
            throw std::invalid_argument("edge list: vertex out of range");
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    return Graph::from_edges(static_cast<int>(N), std::move(edges));
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    return read_edge_list(in);
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_edge_list(g, out);
    if (!out) throw IoError("write failed: " + path);
}

std::map<std::string, std::string> parse_config(std::istream& is) {
    std::map<std::string, std::string> cfg;
    std::string line;
    while (std::getline(is, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got: " + line);
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(start, eq - start));
        std::string value = trim(line.substr(eq + 1));
        require(!key.empty(), "config: empty key");
        cfg[key] = value;
    }
    return cfg;
}

std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    return parse_config(in);
}

const std::string& config_get(const std::map<std::string, std::string>& cfg,
                              const std::string& key) {
    auto it = cfg.find(key);
    if (it == cfg.end()) throw std::invalid_argument("config: missing required key: " + key);
    return it->second;
}

std::string config_get_or(const std::map<std::string, std::string>& cfg,
                          const std::string& key, const std::string& fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << contents;
    if (!out) throw IoError("write failed: " + path);
}

std::uint64_t fnv1a64_file(const std::string& path) { return fnv1a64(read_file(path)); }

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace commdet
