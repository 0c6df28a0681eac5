#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <sstream>
#include <string>

#include "stat_util.hpp"
#include "treembed/io.hpp"

using namespace treembed;

TEST_CASE("format_double round-trips exactly", "[io]") {
  for (double x : {0.1, 1.0 / 3.0, 0.19, 1e-300, 1e300, 0.0, -2.5, 0.046051701859880914}) {
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  // shortest form: no trailing digits of noise on clean values
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("graph edge lists round-trip bit-exactly", "[io]") {
  const Graph g = gnp(40, 0.2, 9);
  std::ostringstream os;
  write_graph(os, g);
  const std::string text = os.str();

  // header is "n m"
  std::istringstream header(text);
  int n;
  std::size_t m;
  header >> n >> m;
  CHECK(n == 40);
  CHECK(m == g.edge_count);

  std::istringstream is(text);
  const Graph back = read_graph(is);
  CHECK(back.n == g.n);
  CHECK(back.edges() == g.edges());

  // rewriting the parsed graph reproduces the same bytes
  std::ostringstream os2;
  write_graph(os2, back);
  CHECK(os2.str() == text);
}

TEST_CASE("tree round-trip validates tree-ness on read", "[io]") {
  const Tree t = random_tree(30, 4);
  std::ostringstream os;
  write_tree(os, t);
  std::istringstream is(os.str());
  const Tree back = read_tree(is);
  CHECK(back.edges() == t.edges());

  // wrong edge count
  std::istringstream bad1("3 1\n0 1\n");
  CHECK_THROWS_AS(read_tree(bad1), std::invalid_argument);
  // right count, disconnected (cycle + isolated vertex)
  std::istringstream bad2("4 3\n0 1\n1 2\n0 2\n");
  CHECK_THROWS_AS(read_tree(bad2), std::invalid_argument);
  // graphs accept what trees reject
  std::istringstream ok("4 3\n0 1\n1 2\n0 2\n");
  CHECK_NOTHROW(read_graph(ok));
}

TEST_CASE("edge list read errors are loud", "[io]") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_graph(empty), std::runtime_error);
  std::istringstream neg("-1 0\n");
  CHECK_THROWS_AS(read_graph(neg), std::runtime_error);
  std::istringstream truncated("5 3\n0 1\n");
  CHECK_THROWS_AS(read_graph(truncated), std::runtime_error);
  std::istringstream garbage("5 x\n");
  CHECK_THROWS_AS(read_graph(garbage), std::runtime_error);
}

TEST_CASE("two-round graphs round-trip with exact probabilities", "[io]") {
  const TwoRoundGraph tr = gnp_two_round(25, 0.19, 3);
  std::ostringstream os;
  write_two_round(os, tr);
  const std::string text = os.str();

  // header carries n, p, p' and the section tags are G1/G2
  CHECK(text.rfind("25 0.19 ", 0) == 0);
  CHECK(text.find("G1 ") != std::string::npos);
  CHECK(text.find("G2 ") != std::string::npos);

  std::istringstream is(text);
  const TwoRoundGraph back = read_two_round(is);
  CHECK(back.n() == 25);
  CHECK(back.p == tr.p);              // format_double is lossless
  CHECK(back.p_prime == tr.p_prime);  // even for non-representable decimals
  CHECK(back.g1.edges() == tr.g1.edges());
  CHECK(back.g2.edges() == tr.g2.edges());

  std::ostringstream os2;
  write_two_round(os2, back);
  CHECK(os2.str() == text);
}

TEST_CASE("two-round read rejects malformed sections", "[io]") {
  std::istringstream wrong_tag("4 0.5 0.3\nGX 0\nG2 0\n");
  CHECK_THROWS_AS(read_two_round(wrong_tag), std::runtime_error);
  std::istringstream missing_g2("4 0.5 0.3\nG1 0\n");
  CHECK_THROWS_AS(read_two_round(missing_g2), std::runtime_error);
  std::istringstream truncated_edges("4 0.5 0.3\nG1 2\n0 1\n");
  CHECK_THROWS_AS(read_two_round(truncated_edges), std::runtime_error);
  std::istringstream bad_header("4 0.5\n");
  CHECK_THROWS_AS(read_two_round(bad_header), std::runtime_error);
}

TEST_CASE("embedding lines write only mapped vertices, sorted", "[io]") {
  std::vector<int> map{5, -1, 3, 0};
  std::ostringstream os;
  write_embedding_lines(os, map);
  CHECK(os.str() == "0 5\n2 3\n3 0\n");

  std::istringstream is(os.str());
  const auto pairs = read_embedding_lines(is);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<int, int>{0, 5});
  CHECK(pairs[1] == std::pair<int, int>{2, 3});
  CHECK(pairs[2] == std::pair<int, int>{3, 0});
}

TEST_CASE("slurp_file and write_file round-trip binary-exactly", "[io]") {
  const std::string path = "/tmp/treembed_io_test.txt";
  const std::string payload = "line one\nline two\n\x01\x02 binary bytes\n";
  write_file(path, [&](std::ostream& os) { os << payload; });
  CHECK(slurp_file(path) == payload);
  CHECK_THROWS_AS(slurp_file("/nonexistent/path/file"), std::runtime_error);
}
