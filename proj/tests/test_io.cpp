#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netgame/io.hpp"
#include "netgame/verify.hpp"

#include "helpers.hpp"

using namespace netgame;
using namespace netgame::test;

namespace {

const char* kEx1Json = R"({
  "n": 4,
  "edges": [[0,2],[1,2],[1,4],[2,3],[3,4]],
  "b": [1.0, 2.0, 3.0, 4.0],
  "d": [1.0, 1.0, 1.0, 1.0],
  "cost": 1.0
})";

std::filesystem::path temp_file(const std::string& name,
                                const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "netgame_io_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("parse_game reads the fixture document") {
  GameInstance g = parse_game(kEx1Json);
  CHECK(g.n == 4);
  CHECK(g.graph.edges() == ex1_instance().graph.edges());
  CHECK(g.b == std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0});
  CHECK(g.costs[3].gamma() == 1.0);
}

TEST_CASE("parse_game rejects malformed documents") {
  CHECK(code_of([] { parse_game("{"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_game("[1,2]"); }) == Errc::parse_error);
  CHECK(code_of([] {
          parse_game(R"({"n":4,"edges":[[0,1]],"b":[1,2,3],"d":[1,1,1,1]})");
        }) == Errc::parse_error);  // b length mismatch
  CHECK(code_of([] {
          parse_game(
              R"({"n":4,"edges":[[0,5]],"b":[1,2,3,4],"d":[1,1,1,1]})");
        }) == Errc::parse_error);  // label out of range
  CHECK(code_of([] {
          parse_game(
              R"({"n":1,"edges":[[0,0],[0,1]],"b":[1],"d":[0.5]})");
        }) == Errc::parse_error);  // self-loop
  CHECK(code_of([] {
          parse_game(
              R"({"n":1,"edges":[[0,1]],"b":[1],"d":[0.5],"extra":1})");
        }) == Errc::parse_error);  // unknown field
  CHECK(code_of([] {
          parse_game(R"({"n":1,"edges":[[0,1]],"b":[1]})");
        }) == Errc::parse_error);  // missing field
  CHECK(code_of([] {
          parse_game(
              R"({"n":2,"edges":[[0,1],[0,2]],"b":[1,2],"d":[1,1],"cost":[1]})");
        }) == Errc::parse_error);  // cost list length
}

TEST_CASE("parse_game surfaces validation failures") {
  CHECK(code_of([] {
          parse_game(
              R"({"n":2,"edges":[[0,1],[0,2]],"b":[1,1],"d":[1,1]})");
        }) == Errc::duplicate_valuation);
  CHECK(code_of([] {
          parse_game(R"({"n":2,"edges":[[0,1]],"b":[1,2],"d":[1,1]})");
        }) == Errc::disconnected_graph);
}

TEST_CASE("cost field accepts scalar and per-defender lists") {
  GameInstance scalar = parse_game(
      R"({"n":2,"edges":[[0,1],[0,2]],"b":[1,2],"d":[1,1],"cost":2.0})");
  CHECK(scalar.costs[1].gamma() == 2.0);
  CHECK(scalar.costs[2].gamma() == 2.0);

  GameInstance list = parse_game(
      R"({"n":2,"edges":[[0,1],[0,2]],"b":[1,2],"d":[1,1],"cost":[2.0,3.0]})");
  CHECK(list.costs[1].gamma() == 2.0);
  CHECK(list.costs[2].gamma() == 3.0);

  GameInstance implicit = parse_game(
      R"({"n":2,"edges":[[0,1],[0,2]],"b":[1,2],"d":[1,1]})");
  CHECK(implicit.costs[1].gamma() == 1.0);
}

TEST_CASE("game serialization round-trips") {
  GameInstance g = generate_instance(9, 0.4, 17);
  GameInstance back = parse_game(serialize_game(g));
  CHECK(back.graph == g.graph);
  CHECK(back.b == g.b);
  CHECK(back.d == g.d);
}

TEST_CASE("equilibrium documents round-trip bit-exactly") {
  GameInstance g = parse_game(kEx1Json);
  EquilibriumDoc doc = make_doc(solve(g), g.n);
  EquilibriumDoc back = parse_equilibrium(serialize_equilibrium(doc));
  CHECK(back.pure == doc.pure);
  CHECK(back.utility == doc.utility);
  CHECK(back.support == doc.support);
  CHECK(back.defense == doc.defense);
  REQUIRE(back.attacker.size() == doc.attacker.size());
  for (std::size_t i = 0; i < doc.attacker.size(); ++i) {
    CHECK(back.attacker[i].first == doc.attacker[i].first);
    CHECK(back.attacker[i].second == doc.attacker[i].second);
  }
  CHECK(back.tree == doc.tree);

  VerificationReport report =
      verify_equilibrium(g, doc_profile(back), 1e-9);
  CHECK(report.is_epsilon_ne);
}

TEST_CASE("pure equilibria serialize with a singleton tree") {
  GameInstance g = star_instance();
  EquilibriumDoc doc = make_doc(solve(g), g.n);
  CHECK(doc.pure);
  CHECK(doc.support == std::vector<int>{2});
  CHECK(doc.tree == std::vector<std::pair<int, int>>{{2, 0}});
  EquilibriumDoc back = parse_equilibrium(serialize_equilibrium(doc));
  CHECK(back.pure);
  CHECK(back.utility == doc.utility);
}

TEST_CASE("parse_equilibrium rejects malformed documents") {
  CHECK(code_of([] { parse_equilibrium("nonsense"); }) == Errc::parse_error);
  CHECK(code_of([] {
          parse_equilibrium(R"({"type":"odd","utility":1,"support":[],
                                "defense":[],"attacker":[]})");
        }) == Errc::parse_error);
  CHECK(code_of([] {
          parse_equilibrium(R"({"type":"mixed","utility":1,"support":[]})");
        }) == Errc::parse_error);
}

TEST_CASE("dot export lists one edge per support node") {
  GameInstance g = parse_game(kEx1Json);
  EquilibriumDoc doc = make_doc(solve(g), g.n);
  const std::string dot = to_dot(doc, g);
  CHECK(dot.find("digraph attack_tree {") == 0);
  CHECK(dot.find("0 [label=\"0 (attacker)\"]") != std::string::npos);
  CHECK(dot.find("2 [label=\"2 (b=2)\"]") != std::string::npos);
  CHECK(dot.find("0 -> 2;") != std::string::npos);
  CHECK(dot.find("2 -> 3;") != std::string::npos);
  CHECK(dot.find("2 -> 4;") != std::string::npos);
  std::size_t arrows = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos;
       at = dot.find("->", at + 1))
    ++arrows;
  CHECK(arrows == doc.support.size());
}

TEST_CASE("generator is deterministic and honors its flags") {
  GameInstance a = generate_instance(12, 0.3, 1);
  GameInstance b = generate_instance(12, 0.3, 1);
  CHECK(serialize_game(a) == serialize_game(b));
  CHECK(is_connected(a.graph));
  for (int j = 2; j <= a.n; ++j) CHECK(a.b[j] > a.b[j - 1]);

  GameInstance single = generate_instance(1, 1.0, 7);
  CHECK(single.n == 1);
  CHECK(single.graph.edges() ==
        std::vector<std::pair<int, int>>{{0, 1}});

  CHECK(code_of([] { generate_instance(0, 0.5, 1); }) == Errc::invalid_flag);
  CHECK(code_of([] { generate_instance(3, 0.0, 1); }) == Errc::invalid_flag);
  CHECK(code_of([] { generate_instance(3, 1.5, 1); }) == Errc::invalid_flag);

  bool saw_unsorted = false;
  for (std::uint64_t seed = 1; seed <= 10 && !saw_unsorted; ++seed) {
    GameInstance shuffled = generate_instance(8, 0.4, seed, false);
    for (int j = 2; j <= shuffled.n; ++j)
      if (shuffled.b[j] < shuffled.b[j - 1]) saw_unsorted = true;
    CHECK_NOTHROW(solve(shuffled));
  }
  CHECK(saw_unsorted);
}

TEST_CASE("generated instances parse back through the game schema") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GameInstance g = generate_instance(2 + static_cast<int>(seed % 11),
                                       0.3, seed);
    GameInstance back = parse_game(serialize_game(g));
    CHECK(back.graph == g.graph);
    CHECK(back.b == g.b);
  }
}

TEST_CASE("run_solve drives the full pipeline") {
  auto game_path = temp_file("ex1.json", kEx1Json);
  auto out_path =
      std::filesystem::temp_directory_path() / "netgame_io_tests" / "eq.json";

  SolveOptions opts;
  opts.input = game_path.string();
  opts.verify = true;
  opts.tolerance = 1e-9;
  opts.output_file = out_path.string();
  std::ostringstream out, err;
  CHECK(run_solve(opts, out, err) == 0);

  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  EquilibriumDoc doc = parse_equilibrium(buf.str());
  CHECK(doc.utility ==
        doctest::Approx(std::sqrt(10.0 / 3.0)).epsilon(1e-12));

  SolveOptions bad;
  bad.input = temp_file("dup.json",
                        R"({"n":2,"edges":[[0,1],[0,2]],"b":[1,1],
                            "d":[1,1]})")
                  .string();
  std::ostringstream out2, err2;
  CHECK(run_solve(bad, out2, err2) == 2);
  CHECK(err2.str().find("duplicate_valuation") != std::string::npos);

  SolveOptions star;
  star.input = temp_file("star.json",
                         R"({"n":2,"edges":[[0,1],[0,2]],"b":[1,2],
                             "d":[0.3,0.4]})")
                   .string();
  star.verify = true;
  star.tolerance = 1e-12;
  std::ostringstream out3, err3;
  CHECK(run_solve(star, out3, err3) == 0);
  EquilibriumDoc star_doc = parse_equilibrium(out3.str());
  CHECK(star_doc.pure);
  CHECK(star_doc.defense == std::vector<double>{0.0, 0.4});
}

TEST_CASE("run_verify distinguishes pass, breach and garbage") {
  auto game_path = temp_file("ex1v.json", kEx1Json);
  GameInstance g = parse_game(kEx1Json);
  EquilibriumDoc doc = make_doc(solve(g), g.n);
  auto eq_path = temp_file("eq_ok.json", serialize_equilibrium(doc));

  VerifyOptions opts;
  opts.game_file = game_path.string();
  opts.eq_file = eq_path.string();
  opts.tolerance = 1e-9;
  std::ostringstream out, err;
  CHECK(run_verify(opts, out, err) == 0);
  CHECK(out.str().find("is_epsilon_ne: true") != std::string::npos);

  // Swapping two attack probabilities breaks the indifference conditions.
  EquilibriumDoc swapped = doc;
  std::swap(swapped.attacker[1].second, swapped.attacker[2].second);
  VerifyOptions bad = opts;
  bad.eq_file = temp_file("eq_swapped.json", serialize_equilibrium(swapped))
                    .string();
  bad.tolerance = 1e-6;
  std::ostringstream out2, err2;
  CHECK(run_verify(bad, out2, err2) == 4);

  VerifyOptions garbage = opts;
  garbage.eq_file = temp_file("eq_bad.json", "{{{").string();
  std::ostringstream out3, err3;
  CHECK(run_verify(garbage, out3, err3) == 2);
}

TEST_CASE("run_gen writes a parseable deterministic document") {
  GenOptions opts;
  opts.nodes = 12;
  opts.edge_prob = 0.3;
  opts.seed = 1;
  std::ostringstream a, b, err;
  CHECK(run_gen(opts, a, err) == 0);
  CHECK(run_gen(opts, b, err) == 0);
  CHECK(a.str() == b.str());
  GameInstance g = parse_game(a.str());
  CHECK(g.n == 12);

  GenOptions bad;
  bad.nodes = 0;
  bad.edge_prob = 0.5;
  std::ostringstream out2, err2;
  CHECK(run_gen(bad, out2, err2) == 2);
}
