#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

// run the installed binary with stderr silenced, capture stdout and status
CliResult run_cli(const std::string& args) {
  const std::string command = std::string(GRAPHLIFT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, std::move(out)};
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("graphlift-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_k4() {
  const fs::path file = scratch_dir() / "k4.txt";
  std::ofstream out(file);
  out << "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
  return file;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace

TEST_CASE("exact subcommand prints the counts") {
  const auto k4 = write_k4();
  auto r = run_cli("exact --graph " + k4.string() + " --k 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("# graphlift-results v1\n") == 0);
  CHECK(r.out.find("k4,3,triangle,exact,,0,0,0,4,,,,") != std::string::npos);
  CHECK(r.out.find("k4,3,wedge,exact,,0,0,0,0,,,,") != std::string::npos);
}

TEST_CASE("estimate subcommand recovers the K4 triangle count") {
  const auto k4 = write_k4();
  auto r = run_cli("estimate --graph " + k4.string() +
                   " --k 3 --target triangle --estimator unordered --n 2000 --seed 7");
  CHECK(r.exit_code == 0);
  const std::string prefix = "k4,3,triangle,unordered,uniform,3,2000,6000,";
  const auto pos = r.out.find(prefix);
  REQUIRE(pos != std::string::npos);
  const double est = std::strtod(r.out.c_str() + pos + prefix.size(), nullptr);
  CHECK(est == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("runs with the same seed emit identical bytes") {
  const auto k4 = write_k4();
  const fs::path a = scratch_dir() / "a.csv";
  const fs::path b = scratch_dir() / "b.csv";
  const std::string common = "estimate --graph " + k4.string() +
                             " --k 3 --estimator shotgun --start rw --n 5000 --seed 99 "
                             "--workers 2 --out ";
  CHECK(run_cli(common + a.string()).exit_code == 0);
  CHECK(run_cli(common + b.string()).exit_code == 0);
  const std::string ca = read_file(a);
  CHECK_FALSE(ca.empty());
  CHECK(ca == read_file(b));
  CHECK(fs::exists(a.string() + ".manifest.json"));
}

TEST_CASE("json output mirrors the csv rows") {
  const auto k4 = write_k4();
  auto r = run_cli("exact --graph " + k4.string() + " --k 3 --json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"schema\": \"graphlift-results v1\"") != std::string::npos);
  CHECK(r.out.find("\"type\": \"triangle\"") != std::string::npos);
}

TEST_CASE("validate subcommand passes on a healthy graph") {
  const auto k4 = write_k4();
  auto r = run_cli("validate --graph " + k4.string() + " --k 3 --k 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("all checks passed") != std::string::npos);
}

TEST_CASE("stats subcommand sweeps spacings") {
  const auto k4 = write_k4();
  auto r = run_cli("stats --graph " + k4.string() +
                   " --k 3 --target triangle --estimator ordered --start rw"
                   " --spacing 1 --spacing 4 --n 2000 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find(",rw,1,2000,") != std::string::npos);
  CHECK(r.out.find(",rw,4,2000,") != std::string::npos);
}

TEST_CASE("usage problems exit with code one") {
  const auto k4 = write_k4();
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("estimate --graph " + k4.string()).exit_code == 1);  // --k missing
  CHECK(run_cli("estimate --graph " + k4.string() + " --k 3 --estimator nope").exit_code == 1);
  CHECK(run_cli("estimate --graph " + k4.string() + " --k 3 --target pentagon").exit_code == 1);
  CHECK(run_cli("estimate --graph " + k4.string() + " --k 3 --n 5 --budget 5").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("data problems exit with code two") {
  CHECK(run_cli("exact --graph /nonexistent/g.txt --k 3").exit_code == 2);
  const fs::path garbage = scratch_dir() / "garbage.txt";
  std::ofstream(garbage) << "this is not\nan edge list\n";
  CHECK(run_cli("exact --graph " + garbage.string() + " --k 3").exit_code == 2);
  CHECK(run_cli("estimate --graph bio-celegansneural --cache-dir " +
                (scratch_dir() / "empty-cache").string() + " --k 3")
            .exit_code == 2);
}

TEST_CASE("infeasible requests exit with code three") {
  const auto k4 = write_k4();
  CHECK(run_cli("estimate --graph " + k4.string() + " --k 5 --n 10").exit_code == 3);
  CHECK(run_cli("exact --graph " + k4.string() + " --k 4 --cap 0").exit_code == 3);
}

TEST_CASE("fetch --list names the known datasets") {
  auto r = run_cli("fetch --list");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("bio-celegansneural") != std::string::npos);
  CHECK(r.out.find("misc-fullb") != std::string::npos);
}
