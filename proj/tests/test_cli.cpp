#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Run {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path();
  const std::string tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
  const fs::path out = dir / ("qloop_out_" + tag);
  const fs::path err = dir / ("qloop_err_" + tag);
  const std::string cmd =
      std::string(QLOOP_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  Run r{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
  fs::remove(out);
  fs::remove(err);
  return r;
}

std::string data(const char* name) { return std::string(QLOOP_DATA_DIR) + "/" + name; }

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / (std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("compute prints the A3 series") {
  const Run r = run("compute " + data("a3.json") + " --cutoff 3");
  CHECK(r.status == 0);
  CHECK(r.out == "1 + 2 * q^(3/4) + 1 * q^(4/4) + 2 * q^(7/4) + 2 * q^(8/4) + 4 * q^(11/4) + 5 * q^(12/4)\n");
  CHECK(r.err.empty());
}

TEST_CASE("compute --verbose writes diagnostics to stderr only") {
  const Run quiet = run("compute " + data("a3.json") + " --cutoff 3 --format json");
  const Run loud = run("compute " + data("a3.json") + " --cutoff 3 --format json --verbose");
  CHECK(loud.status == 0);
  CHECK(loud.out == quiet.out);
  CHECK(loud.err.find("delta: 4") != std::string::npos);
  CHECK(loud.err.find("positive-definite") != std::string::npos);
  CHECK(quiet.out.rfind(R"({"delta":4,"cutoff":"3/1","terms":[[0,1],[3,2])", 0) == 0);
}

TEST_CASE("output is identical across thread counts and strategies") {
  const Run one = run("compute " + data("four_vertex.json") + " --cutoff 6 --format json");
  const Run many = run("compute " + data("four_vertex.json") + " --cutoff 6 --format json --jobs 4");
  const Run simplex = run("compute " + data("four_vertex.json") + " --cutoff 6 --format json --strategy simplex");
  CHECK(one.status == 0);
  CHECK(one.out == many.out);
  CHECK(one.out == simplex.out);
}

TEST_CASE("exit codes") {
  CHECK(run("compute " + data("not_a_loop.json")).status == 3);
  CHECK(run("compute " + data("not_a_loop.json")).err.find("[[0,1,0],[-1,0,1],[0,-1,0]]") != std::string::npos);
  CHECK(run("compute /nonexistent/loop.json").status == 2);
  CHECK(run("compute " + data("a3.json") + " --cutoff x").status == 2);
  CHECK(run("compute " + data("a3.json") + " --cutoff -1").status == 2);
  CHECK(run("compute " + data("a3.json") + " --format yaml").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("compute " + data("a3.json") + " --cutoff 40 --max-terms 10").status == 7);

  const auto garbage = write_temp("garbage.json", "{not json");
  CHECK(run("compute " + garbage.string()).status == 2);

  const auto degenerate = write_temp("degenerate.json",
                                     R"({"quiver": {"n": 2, "b": [[0, 0], [0, 0]]}, "steps": [{"mutate": 1}]})");
  CHECK(run("compute " + degenerate.string()).status == 4);

  // The (x, y, x) pattern across a double arrow: nondegenerate, but F has a zero on the simplex.
  const auto flat = write_temp(
      "flat.json",
      R"({"quiver": {"n": 2, "b": [[0, 2], [-2, 0]]}, "steps": [{"mutate": 1}, {"mutate": 2}, {"mutate": 1}, {"relabel": [2, 1]}]})");
  CHECK(run("compute " + flat.string()).status == 5);

  const auto kronecker = write_temp("kronecker.json",
                                    R"({"quiver": {"n": 2, "b": [[0, 2], [-2, 0]]}, "steps": [{"mutate": 1}, {"mutate": 2}]})");
  CHECK(run("verify-pentagon " + kronecker.string() + " --pos 0").status == 6);

  for (const auto& p : {garbage, degenerate, flat, kronecker}) fs::remove(p);
}

TEST_CASE("verify-pentagon reports EQUAL") {
  const Run a2 = run("verify-pentagon " + data("a2.json") + " --pos 0 --cutoff 10");
  CHECK(a2.status == 0);
  CHECK(a2.out.find("EQUAL") != std::string::npos);
  const Run four = run("verify-pentagon " + data("four_vertex.json") + " --pos 1 --cutoff 8 --format json");
  CHECK(four.status == 0);
  CHECK(four.out.find(R"("equal":true)") != std::string::npos);
  const Run back = run("verify-pentagon " + data("a2_pentagon.json") + " --pos 0 --contract --cutoff 6");
  CHECK(back.status == 0);
}

TEST_CASE("dynkin and square subcommands") {
  const Run d5 = run("dynkin d5 --both --cutoff 4");
  CHECK(d5.status == 0);
  CHECK(d5.out.find("EQUAL") != std::string::npos);
  CHECK(run("dynkin B2").status == 2);
  CHECK(run("dynkin A3 --direct --closed-form").status == 2);
  const Run sq = run("square A3 A2 --order minus --both --cutoff 3");
  CHECK(sq.status == 0);
  CHECK(sq.out.find("EQUAL") != std::string::npos);
  CHECK(run("square A3 A2 --order sideways").status == 2);
  CHECK(run("square A1 A2").status == 2);
}

TEST_CASE("check-identities") {
  const Run r = run("check-identities --cutoff 25/2");
  CHECK(r.status == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS  A3 theta") != std::string::npos);
  CHECK(run("check-identities --cutoff 0").status == 0);
  CHECK(run("check-identities --cutoff 4 --format json").out.find(R"("all_pass":true)") != std::string::npos);
}

TEST_CASE("info") {
  const Run r = run("info " + data("four_vertex.json"));
  CHECK(r.status == 0);
  CHECK(r.out.find("mutations: [4,1,2,3,2,4,1]") != std::string::npos);
  CHECK(r.out.find("copositive-certified") != std::string::npos);
  const Run j = run("info " + data("a3.json") + " --format json");
  CHECK(j.out.find(R"("normal_form":{"mutations":[2,1,3],"phi":[1,2,3]})") != std::string::npos);
}
