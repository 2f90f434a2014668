#pragma once

// File formats: the "N m" / "i j" edge-list text format, flat key=value
// config files, deterministic number formatting for CSV, and the FNV-1a
// digest recorded in run manifests.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "commdet/graph.hpp"

namespace commdet {

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Header line "N m", then one "i j" line per edge in sorted order.
void write_edge_list(const Graph& g, std::ostream& os);
Graph read_edge_list(std::istream& is);

Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

// key=value per line; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> parse_config(std::istream& is);
std::map<std::string, std::string> load_config(const std::string& path);

// Required-key accessors; missing keys raise std::invalid_argument.
const std::string& config_get(const std::map<std::string, std::string>& cfg,
                              const std::string& key);
std::string config_get_or(const std::map<std::string, std::string>& cfg,
                          const std::string& key, const std::string& fallback);

// Comma-separated doubles (grid axes).
std::vector<double> parse_double_list(const std::string& text);

// Fixed deterministic rendering used in every CSV cell ("%.10g", with nan
// spelled "nan").
std::string format_double(double v);

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace commdet
