#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "refocus/graph.hpp"
#include "test_util.hpp"

using namespace refocus;
using testutil::thrown_code;

TEST_CASE("construction collapses duplicate edges and rejects bad input") {
  const CouplingGraph g({"a", "b", "c"}, {{0, 1}, {1, 0}, {1, 2}});
  CHECK(g.spin_count() == 3);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(max_degree(g) == 2);

  CHECK(thrown_code([] { CouplingGraph({"a"}, {{0, 0}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { CouplingGraph({"a", "a"}, {}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { CouplingGraph({"a", ""}, {}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { CouplingGraph({"a", "b:c"}, {}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { CouplingGraph({"a", "b"}, {{0, 2}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { CouplingGraph({}, {}); }) == ErrorCode::InvalidArgument);
  CHECK(thrown_code([] {
          std::vector<std::string> names;
          for (int i = 0; i < 65; ++i) names.push_back("s" + std::to_string(i));
          CouplingGraph(names, {});
        }) == ErrorCode::SizeLimit);
}

TEST_CASE("complete and path factories") {
  const CouplingGraph k4 = CouplingGraph::complete(4);
  CHECK(k4.spin_count() == 4);
  CHECK(k4.edges().size() == 6);
  CHECK(max_degree(k4) == 3);

  const CouplingGraph p5 = CouplingGraph::path(5);
  CHECK(p5.spin_count() == 5);
  CHECK(p5.edges().size() == 4);
  CHECK(p5.degree(0) == 1);
  CHECK(p5.degree(2) == 2);
}

TEST_CASE("without_edge and index_of") {
  const CouplingGraph k3 = CouplingGraph::complete(3);
  const CouplingGraph g = k3.without_edge(0, 1);
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(g.has_edge(0, 2));
  CHECK(g.edges().size() == 2);
  CHECK(thrown_code([&] { g.without_edge(0, 1); }) == ErrorCode::InvalidArgument);

  CHECK(k3.index_of("s2") == 2);
  CHECK(thrown_code([&] { k3.index_of("nope"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("graph document parsing") {
  const auto doc = parse_graph_document(R"({
    "spins": ["a", "b", "c"],
    "couplings": [["a", "b"], ["b", "c"]],
    "shifts": {"a": 1.5, "c": -2.0},
    "j": {"a:b": 3.5, "b:c": -0.75}
  })");
  CHECK(doc.graph.spin_count() == 3);
  CHECK(doc.graph.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  REQUIRE(doc.shifts.size() == 3);
  CHECK(doc.shifts[0] == 1.5);
  CHECK_FALSE(doc.shifts[1].has_value());
  CHECK(doc.shifts[2] == -2.0);
  REQUIRE(doc.couplings.size() == 2);
  CHECK(doc.couplings[0] == 3.5);
  CHECK(doc.couplings[1] == -0.75);

  CHECK(parse_graph(R"({"spins": ["x"]})").spin_count() == 1);
}

TEST_CASE("graph document errors map to Parse") {
  auto parse_code = [](const char* text) {
    return thrown_code([&] { parse_graph_document(text); });
  };
  CHECK(parse_code("{") == ErrorCode::Parse);
  CHECK(parse_code(R"([1, 2])") == ErrorCode::Parse);
  CHECK(parse_code(R"({"couplings": []})") == ErrorCode::Parse);
  CHECK(parse_code(R"({"spins": [1]})") == ErrorCode::Parse);
  CHECK(parse_code(R"({"spins": ["a"], "couplings": [["a"]]})") ==
        ErrorCode::Parse);
  CHECK(parse_code(R"({"spins": ["a", "b"], "couplings": [["a", "x"]]})") ==
        ErrorCode::Parse);
  CHECK(parse_code(R"({"spins": ["a"], "shifts": {"x": 1.0}})") ==
        ErrorCode::Parse);
  CHECK(parse_code(R"({"spins": ["a"], "shifts": {"a": "fast"}})") ==
        ErrorCode::Parse);
  // j entries must point at declared couplings and be nonzero.
  CHECK(parse_code(R"({"spins": ["a", "b"], "j": {"a:b": 1.0}})") ==
        ErrorCode::Parse);
  CHECK(parse_code(
            R"({"spins": ["a", "b"], "couplings": [["a", "b"]], "j": {"ab": 1}})") ==
        ErrorCode::Parse);
  CHECK(parse_code(
            R"({"spins": ["a", "b"], "couplings": [["a", "b"]], "j": {"a:b": 0}})") ==
        ErrorCode::Parse);
}

TEST_CASE("greedy coloring is proper and within the degree bound") {
  auto rng = testutil::make_rng(611);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const CouplingGraph g = testutil::random_graph(rng, n);
    const Coloring c = greedy_coloring(g);
    CAPTURE(trial);
    CHECK(is_proper(g, c));
    CHECK(c.color_count <= max_degree(g) + 1);
    CHECK(c.color_count >= 1);
    // Colors are contiguous from 0.
    for (int v = 0; v < n; ++v) {
      CHECK(c.assignment[v] >= 0);
      CHECK(c.assignment[v] < c.color_count);
    }
  }
}

TEST_CASE("pinned groups take the leading colors exclusively") {
  const CouplingGraph p4 = CouplingGraph::path(4);
  const Coloring c = greedy_coloring(p4, {{0, 3}});
  CHECK(c.assignment[0] == 0);
  CHECK(c.assignment[3] == 0);
  CHECK(is_proper(p4, c));
  // Unpinned spins never reuse a pinned color.
  CHECK(c.assignment[1] >= 1);
  CHECK(c.assignment[2] >= 1);

  const Coloring two = greedy_coloring(CouplingGraph::complete(3), {{0}, {1}});
  CHECK(two.assignment[0] == 0);
  CHECK(two.assignment[1] == 1);
  CHECK(two.assignment[2] == 2);

  CHECK(thrown_code([&] { greedy_coloring(p4, {{}}); }) == ErrorCode::InvalidPin);
  CHECK(thrown_code([&] { greedy_coloring(p4, {{0}, {0}}); }) ==
        ErrorCode::InvalidPin);
  CHECK(thrown_code([&] { greedy_coloring(p4, {{0, 1}}); }) ==
        ErrorCode::InvalidPin);
  CHECK(thrown_code([&] { greedy_coloring(p4, {{-1}}); }) == ErrorCode::InvalidPin);
}

TEST_CASE("coloring groups partition the spins") {
  const CouplingGraph g = CouplingGraph::complete(4);
  const Coloring c = greedy_coloring(g, {{0}});
  const auto groups = c.groups();
  CHECK(static_cast<int>(groups.size()) == c.color_count);
  int seen = 0;
  for (const auto& group : groups) seen += static_cast<int>(group.size());
  CHECK(seen == g.spin_count());
}

TEST_CASE("chromatic number on known graphs") {
  CHECK(chromatic_number(CouplingGraph({"a"}, {})) == 1);
  CHECK(chromatic_number(CouplingGraph({"a", "b", "c"}, {})) == 1);
  CHECK(chromatic_number(CouplingGraph::path(5)) == 2);
  CHECK(chromatic_number(CouplingGraph::complete(4)) == 4);
  // Odd cycle.
  CHECK(chromatic_number(CouplingGraph(
            {"a", "b", "c", "d", "e"},
            {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})) == 3);
  // Petersen graph.
  CHECK(chromatic_number(CouplingGraph(
            {"o0", "o1", "o2", "o3", "o4", "i0", "i1", "i2", "i3", "i4"},
            {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
             {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
             {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}})) == 3);
  CHECK(thrown_code([] { chromatic_number(CouplingGraph::path(13)); }) ==
        ErrorCode::SizeLimit);
}

TEST_CASE("greedy never beats the chromatic number") {
  auto rng = testutil::make_rng(612);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const CouplingGraph g = testutil::random_graph(rng, n);
    CAPTURE(trial);
    CHECK(greedy_coloring(g).color_count >= chromatic_number(g));
  }
}

TEST_CASE("is_proper flags conflicts") {
  const CouplingGraph p3 = CouplingGraph::path(3);
  CHECK(is_proper(p3, Coloring{{0, 1, 0}, 2}));
  CHECK_FALSE(is_proper(p3, Coloring{{0, 0, 1}, 2}));
}
