#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef NETGAME_BIN
#error "NETGAME_BIN must point at the CLI executable"
#endif

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  auto dir = fs::temp_directory_path() / "netgame_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& stdout_file = {}) {
  std::string cmd = std::string(NETGAME_BIN) + " " + args;
  if (!stdout_file.empty()) cmd += " > " + stdout_file.string();
  cmd += " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path write(const std::string& name, const std::string& content) {
  auto path = work_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

const char* kEx1Json = R"({
  "n": 4,
  "edges": [[0,2],[1,2],[1,4],[2,3],[3,4]],
  "b": [1.0, 2.0, 3.0, 4.0],
  "d": [1.0, 1.0, 1.0, 1.0]
})";

}  // namespace

TEST_CASE("gen output is byte-identical per seed") {
  auto a = work_dir() / "gen_a.json";
  auto b = work_dir() / "gen_b.json";
  CHECK(run("gen --nodes 5 --edge-prob 0.5 --seed 3", a) == 0);
  CHECK(run("gen --nodes 5 --edge-prob 0.5 --seed 3", b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(run("gen --nodes 0 --edge-prob 0.5 --seed 3") == 2);
  CHECK(run("gen --nodes 5 --edge-prob 0.5") == 2);  // missing --seed
}

TEST_CASE("solve exit codes and artifacts") {
  auto game = write("cli_ex1.json", kEx1Json);
  auto eq = work_dir() / "cli_eq.json";
  auto dot = work_dir() / "cli_tree.dot";

  CHECK(run("solve " + game.string() + " --verify --tolerance 1e-9 --output " +
                eq.string() + " --dot " + dot.string()) == 0);
  CHECK(slurp(eq).find("\"utility\": 1.8257418583505538") !=
        std::string::npos);
  const std::string dot_text = slurp(dot);
  CHECK(dot_text.find("digraph attack_tree {") != std::string::npos);
  CHECK(dot_text.find("0 -> 2;") != std::string::npos);

  auto dup = write("cli_dup.json",
                   R"({"n":2,"edges":[[0,1],[0,2]],"b":[1,1],"d":[1,1]})");
  CHECK(run("solve " + dup.string()) == 2);
  CHECK(run("solve " + (work_dir() / "missing.json").string()) == 2);
  CHECK(run("solve") == 2);
  CHECK(run("bogus-subcommand") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("verify exit codes") {
  auto game = write("cli_ex1b.json", kEx1Json);
  auto eq = work_dir() / "cli_eq2.json";
  REQUIRE(run("solve " + game.string() + " --output " + eq.string()) == 0);
  CHECK(run("verify " + game.string() + " " + eq.string() +
            " --tolerance 1e-9") == 0);

  // Corrupt one investment: still structurally valid, no longer a NE.
  std::string text = slurp(eq);
  const std::string needle = "0.33333333333333337";
  auto at = text.find(needle);
  REQUIRE(at != std::string::npos);
  text.replace(at, needle.size(), "0.40000000000000000");
  auto broken = write("cli_eq_broken.json", text);
  CHECK(run("verify " + game.string() + " " + broken.string() +
            " --tolerance 1e-6") == 4);

  auto garbage = write("cli_eq_garbage.json", "not json");
  CHECK(run("verify " + game.string() + " " + garbage.string()) == 2);
}
