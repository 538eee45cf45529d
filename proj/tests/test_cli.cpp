#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() /
           ("slopecert_cli_test_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  RunResult run(const std::string& args) const {
    return run_raw(std::string(SLOPECERT_CLI_PATH) + " " + args);
  }

  RunResult run_raw(const std::string& command) const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = command + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

 private:
  fs::path dir_;
};

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("certify writes a verifiable certificate") {
  Workspace ws;
  const auto cert_path = ws.path("cert.json");
  const RunResult certify = ws.run("certify --m 1 --n 1 --slope 3/1 --out " + cert_path.string());
  CAPTURE(certify.err);
  CHECK(certify.exit_code == 0);
  CHECK(fs::exists(cert_path));
  CHECK(contains(certify.out, "certified"));

  const RunResult verify = ws.run("verify --in " + cert_path.string());
  CAPTURE(verify.out);
  CHECK(verify.exit_code == 0);
  CHECK(contains(verify.out, "certificate valid"));
}

TEST_CASE("identical runs produce byte-identical certificates") {
  Workspace ws;
  const auto a = ws.path("a.json");
  const auto b = ws.path("b.json");
  CHECK(ws.run("certify --m -2 --n -3 --slope 7/3 --out " + a.string()).exit_code == 0);
  CHECK(ws.run("certify --m -2 --n -3 --slope 7/3 --out " + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("trefoil is invalid input") {
  Workspace ws;
  const RunResult r = ws.run("certify --m 1 --n -1 --slope 1/1");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "not hyperbolic"));
}

TEST_CASE("out-of-range slope fails with exit 1") {
  Workspace ws;
  const RunResult r = ws.run("certify --m 1 --n 1 --slope 4/1");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "outside certified interval"));
}

TEST_CASE("decimal slopes are invalid input") {
  Workspace ws;
  const RunResult r = ws.run("certify --m 1 --n 1 --slope 1.5");
  CHECK(r.exit_code == 2);
}

TEST_CASE("unknown flags exit 2 with usage text") {
  Workspace ws;
  const RunResult r = ws.run("certify --m 1 --n 1 --slope 1/1 --frobnicate");
  CHECK(r.exit_code == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("verify rejects a tampered certificate") {
  Workspace ws;
  const auto cert_path = ws.path("cert.json");
  CHECK(ws.run("certify --m 1 --n 1 --slope 2/1 --out " + cert_path.string()).exit_code == 0);
  std::string text = slurp(cert_path);
  // flip a digit of t
  const auto pos = text.find("\"t\": \"");
  REQUIRE(pos != std::string::npos);
  const auto digit = pos + 9;
  text[digit] = text[digit] == '5' ? '6' : '5';
  std::ofstream(cert_path, std::ios::binary) << text;
  const RunResult r = ws.run("verify --in " + cert_path.string());
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "REJECTED"));
}

TEST_CASE("verify on malformed input exits 2") {
  Workspace ws;
  const auto bad = ws.path("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(ws.run("verify --in " + bad.string()).exit_code == 2);
  CHECK(ws.run("verify --in " + ws.path("missing.json").string()).exit_code == 2);
}

TEST_CASE("curve emits the documented CSV") {
  Workspace ws;
  const auto csv_path = ws.path("curve.csv");
  const RunResult r = ws.run("curve --m 1 --n 1 --s-min 0.01 --s-max 100 --points 40 --out " +
                             csv_path.string());
  CAPTURE(r.err);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(csv_path);
  std::istringstream lines(csv);
  std::string line;
  CHECK(std::getline(lines, line));
  CHECK(line == "s,T,t,A,B,g");
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
    int commas = 0;
    for (char c : line) commas += c == ',';
    CHECK(commas == 5);
  }
  CHECK(rows == 40);
}

TEST_CASE("identities subcommand reports pass counts") {
  Workspace ws;
  const RunResult r = ws.run("identities --m-range -12..12");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "25 pass"));
  CHECK(contains(r.out, "0 fail"));
  CHECK(ws.run("identities --m-range 12..-12").exit_code == 2);
}

TEST_CASE("riley subcommand prints the solved root") {
  Workspace ws;
  const RunResult r = ws.run("riley --m 2 --n 3 --s 1");
  CAPTURE(r.err);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "solved T"));
  CHECK(contains(r.out, "bracket"));
  const RunResult invalid = ws.run("riley --m -2 --n 1 --s 1");
  CHECK(invalid.exit_code == 2);
}

TEST_CASE("curve input validation") {
  Workspace ws;
  const auto out = ws.path("x.csv").string();
  CHECK(ws.run("curve --m 1 --n 1 --s-min 10 --s-max 1 --points 5 --out " + out).exit_code == 2);
  CHECK(ws.run("curve --m 1 --n 1 --s-min 1 --s-max 10 --points 1 --out " + out).exit_code == 2);
}

TEST_CASE("precision can come from the flag or the environment") {
  Workspace ws;
  const auto a = ws.path("a.json");
  const RunResult flag =
      ws.run("certify --m 1 --n 1 --slope 2/1 --precision-bits 106 --out " + a.string());
  CHECK(flag.exit_code == 0);
  CHECK(contains(slurp(a), "\"precision_bits\": 106"));

  const auto b = ws.path("b.json");
  const RunResult env = ws.run_raw("RILEY_PRECISION_BITS=106 " SLOPECERT_CLI_PATH
                                   " certify --m 1 --n 1 --slope 2/1 --out " +
                                   b.string());
  CHECK(env.exit_code == 0);
  CHECK(contains(slurp(b), "\"precision_bits\": 106"));
}

TEST_CASE("betti-zero certificate round trips through files") {
  Workspace ws;
  const auto cert_path = ws.path("betti.json");
  const RunResult r = ws.run("certify --m 2 --n -3 --slope 0/1 --out " + cert_path.string());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "betti"));
  CHECK(ws.run("verify --in " + cert_path.string()).exit_code == 0);
}

}  // TEST_SUITE
