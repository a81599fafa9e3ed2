// Exercises the installed command surface through the real binary: exit
// codes, determinism-adjacent plumbing, the budget environment variable and
// the on-disk Gram cache. The binary path arrives in QFOCK_CLI.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

std::string cli() {
  const char* path = std::getenv("QFOCK_CLI");
  REQUIRE_MESSAGE(path != nullptr, "QFOCK_CLI must point at the qfock binary");
  return path;
}

int run(const std::string& args) {
  const std::string cmd = "\"" + cli() + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path sandbox() {
  const fs::path dir = fs::temp_directory_path() / "qfock-cli-test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path path = sandbox() / name;
  std::ofstream os(path);
  os << text;
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

const char* kSmall = R"({
  "q_matrix": [[0.5, 0.3], [0.3, 0.4]],
  "max_degree": 6,
  "xi0": 1,
  "seed": 99,
  "experiments": [
    {"name": "m", "mode": "mixing_sum", "x_word": [2], "y_word": [2], "n_min": 0, "n_max": 4},
    {"name": "z", "mode": "zeta_probe", "ladder": "l2* r2", "n_min": 0, "n_max": 4}
  ]
})";

}  // namespace

TEST_CASE("verify exits 0 on a sound config") {
  const fs::path cfg = write_config("ok.json", kSmall);
  CHECK(run("verify --config " + cfg.string()) == 0);
  CHECK(run("verify") == 0);  // built-in free-case default
}

TEST_CASE("config errors exit 3") {
  CHECK(run("verify --config /no/such/file.json") == 3);

  const fs::path bad = write_config("bad_field.json", R"({
    "q_matrix": [[0.0]], "max_degree": 2, "xi0": 1, "mystery": 1})");
  CHECK(run("verify --config " + bad.string()) == 3);

  const fs::path asym = write_config("asym.json", R"({
    "q_matrix": [[0.1, 0.2], [0.3, 0.1]], "max_degree": 2, "xi0": 1})");
  CHECK(run("verify --config " + asym.string()) == 3);

  const fs::path too_big = write_config("qmax.json", R"({
    "q_matrix": [[1.0]], "max_degree": 2, "xi0": 1})");
  CHECK(run("verify --config " + too_big.string()) == 3);

  const fs::path domain = write_config("domain.json", R"({
    "q_matrix": [[0.0, 0.0], [0.0, 0.0]], "max_degree": 4, "xi0": 1,
    "experiments": [{"mode": "mixing_sum", "x_word": [2], "y_word": [2], "n_max": 4}]})");
  CHECK(run("mixing --config " + domain.string()) == 3);
  // lenient mode runs the same config, dropping mass instead
  CHECK(run("mixing --config " + domain.string() + " --lenient") == 0);
}

TEST_CASE("invariant failures exit 2") {
  // an absurd tolerance forces a red invariant without breaking the math
  const fs::path cfg = write_config("tight.json", R"({
    "q_matrix": [[0.5, 0.3], [0.3, 0.4]], "max_degree": 6, "xi0": 1,
    "tolerances": {"symmetrizer_oracle": 1e-30}})");
  CHECK(run("verify --config " + cfg.string()) == 2);
}

TEST_CASE("capability errors exit 4") {
  const fs::path cfg = write_config("budget.json", kSmall);
  CHECK(run("gram --config " + cfg.string() + " -n 6 --budget 1000") == 4);

  // the environment variable sets the default budget
  const std::string cmd = "QFOCK_MEMORY_BUDGET=1000 \"" + cli() + "\" gram --config " +
                          cfg.string() + " -n 6 > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 4);
}

TEST_CASE("mode filters reject empty selections") {
  const fs::path cfg = write_config("no_decay.json", R"({
    "q_matrix": [[0.5]], "max_degree": 4, "xi0": 1,
    "experiments": [{"mode": "mixing_sum", "n_max": 4}]})");
  CHECK(run("decay --config " + cfg.string()) == 3);
}

TEST_CASE("gram cache file is reused across runs") {
  const fs::path cfg = write_config("cache.json", kSmall);
  const fs::path cache = sandbox() / "gram.bin";
  fs::remove(cache);
  CHECK(run("gram --config " + cfg.string() + " -n 5 --gram-cache " + cache.string()) == 0);
  CHECK(fs::exists(cache));
  const std::string cmd = "\"" + cli() + "\" gram --config " + cfg.string() +
                          " -n 5 --gram-cache " + cache.string() + " 2>" +
                          (sandbox() / "stderr.txt").string() + " > /dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(slurp(sandbox() / "stderr.txt").find("restored 6 degree(s)") != std::string::npos);
}

TEST_CASE("reports embed the resolved config") {
  const fs::path cfg = write_config("report.json", kSmall);
  const fs::path out = sandbox() / "mix.csv";
  const fs::path rep = sandbox() / "report_out.json";
  CHECK(run("mixing --config " + cfg.string() + " --out " + out.string() + " --report " +
            rep.string()) == 0);

  const fs::path vrep = sandbox() / "verify_report.json";
  CHECK(run("verify --config " + cfg.string() + " --report " + vrep.string()) == 0);
  const std::string verify_report = slurp(vrep);
  CHECK(verify_report.find("\"invariants\"") != std::string::npos);
  CHECK(verify_report.find("\"braid_relation\"") != std::string::npos);
  const std::string report = slurp(rep);
  CHECK(report.find("\"q_matrix\"") != std::string::npos);
  CHECK(report.find("\"seed\": 99") != std::string::npos);
  CHECK(report.find("\"precision\": \"ieee754-binary64\"") != std::string::npos);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("n,term,partial_sum,ratio\n", 0) == 0);
}
