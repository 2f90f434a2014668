#include <doctest.h>

#include <sstream>

#include "commdet/generate.hpp"
#include "commdet/io.hpp"
#include "commdet/rng.hpp"

using namespace commdet;

TEST_CASE("edge list round trip preserves the graph") {
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = gen_er(50, 0.08, derive_seed(7, rep));
        std::ostringstream os;
        write_edge_list(g, os);
        std::istringstream is(os.str());
        Graph back = read_edge_list(is);
        CHECK(back.num_vertices() == g.num_vertices());
        CHECK(back.edges() == g.edges());
    }
}

TEST_CASE("edge list rejects malformed input as parse errors") {
    std::istringstream missing("5");
    CHECK_THROWS_AS(read_edge_list(missing), std::invalid_argument);
    std::istringstream out_of_range("3 1\n0 9\n");
    CHECK_THROWS_AS(read_edge_list(out_of_range), std::invalid_argument);
    std::istringstream truncated("4 2\n0 1\n");
    CHECK_THROWS_AS(read_edge_list(truncated), std::invalid_argument);
    std::istringstream self_loop("4 1\n2 2\n");
    CHECK_THROWS_AS(read_edge_list(self_loop), std::invalid_argument);
}

TEST_CASE("config parsing: comments, whitespace, required keys") {
    std::istringstream is("# run setup\n  N = 300 \nseed=5\n\nlevel=0.05\n");
    auto cfg = parse_config(is);
    CHECK(cfg.at("N") == "300");
    CHECK(cfg.at("seed") == "5");
    CHECK(config_get(cfg, "level") == "0.05");
    CHECK(config_get_or(cfg, "missing", "x") == "x");
    CHECK_THROWS_AS(config_get(cfg, "R"), std::invalid_argument);
    std::istringstream bad("just words\n");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
}

TEST_CASE("deterministic double formatting and digests") {
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(parse_double_list("0.5, 1.0,2") == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}
