#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

CommandResult run_cli(const std::string& args) {
  std::string out_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                         "/tmlab_cli_test_out.txt";
  std::string cmd = std::string(TMLAB_CLI_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  std::remove(out_file.c_str());
  return r;
}

std::string with_machines(const std::string& args) {
  return args + " --machines " + TMLAB_MACHINES_FILE;
}

std::string write_temp_tm(const std::string& content) {
  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/tmlab_cli_test_machines.tm";
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("simulate prints name, steps, ones, status") {
  CommandResult r = run_cli(with_machines("simulate --name ones26"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "ones26 264 26 halted\n");

  CommandResult rules = run_cli(with_machines("simulate --name ones26 --step-convention rules"));
  CHECK(rules.output == "ones26 263 26 halted\n");
}

TEST_CASE("simulate rejects unknown names before computing") {
  CommandResult r = run_cli(with_machines("simulate --name nope"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("missing machine file is a usage error") {
  CommandResult r = run_cli("simulate /does/not/exist.tm");
  CHECK(r.exit_code == 2);
}

TEST_CASE("a bound overrun exits with the bound code") {
  std::string path = write_temp_tm("looper: 1, 0, 0\n");
  CommandResult r = run_cli("simulate " + path + " --max-steps 100");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("bound-exceeded") != std::string::npos);
}

TEST_CASE("ccstar prints the benchmark value and continues past irreducible rows") {
  CommandResult r = run_cli(with_machines("ccstar --name ones14"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "ones14 7\n");

  // A machine that blanks its tape is reported and the batch continues.
  std::string path = write_temp_tm("blanker: 1, 0, 7\nmover: 1, 2, 17\n");
  CommandResult batch = run_cli("ccstar " + path);
  CHECK(batch.exit_code == 5);
  CHECK(batch.output.find("blanker irreducible") != std::string::npos);
  CHECK(batch.output.find("mover") != std::string::npos);
}

TEST_CASE("ccstar emits the figure CSV in file order") {
  std::string fig5 = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/tmlab_cli_test_fig5.csv";
  CommandResult r =
      run_cli(with_machines("ccstar --name ones14 --name ones21 --emit-fig5 " + fig5));
  CHECK(r.exit_code == 0);
  std::ifstream in(fig5);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "name,cc_star\nones14,7\nones21,12\n");
  std::remove(fig5.c_str());
}

TEST_CASE("learn round-trips a machine from its own trace") {
  CommandResult full = run_cli(with_machines("learn --name ones26"));
  CHECK(full.exit_code == 0);
  CHECK(full.output.find("result: ok") != std::string::npos);

  CommandResult at = run_cli(with_machines("learn --name ones26 --radius 24"));
  CHECK(at.exit_code == 0);

  // Reconstruction pools evidence across the whole trace, so it can succeed
  // well below the strict per-step radius; radius 0 hides every write made
  // by a moving head and always stays ambiguous.
  CommandResult below = run_cli(with_machines("learn --name ones26 --radius 0"));
  CHECK(below.exit_code == 4);
  CHECK(below.output.find("result: ambiguous") != std::string::npos);
  CHECK(below.output.find("ambiguous keys:") != std::string::npos);
}

TEST_CASE("table output is byte-identical across runs") {
  std::string args = with_machines("table --tier fast --name ones26 --name ones14");
  CommandResult a = run_cli(args);
  CommandResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output ==
        "name,t_T,ones,cc,cc_star\n"
        "ones26,264,26,,24\n"
        "ones14,314,14,,7\n");
}

TEST_CASE("fast tier skips long machines instead of running them") {
  CommandResult r = run_cli(with_machines("table --tier fast --name bb5"));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "name,t_T,ones,cc,cc_star\n"
        "# bb5: skipped (extended tier)\n");
}

TEST_CASE("cc runs the learner end to end") {
  CommandResult r = run_cli(with_machines("cc --name ones26 --seed 7"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("ones26 264 ") == 0);
  CHECK(r.output.find("converged") != std::string::npos);

  CommandResult again = run_cli(with_machines("cc --name ones26 --seed 7"));
  CHECK(again.output == r.output);

  std::string fig2 = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/tmlab_cli_test_fig2.csv";
  CommandResult emit = run_cli(with_machines("cc --name ones26 --seed 7 --emit-fig2 " + fig2));
  CHECK(emit.exit_code == 0);
  std::ifstream in(fig2);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().rfind("name,t_T,cc\nones26,264,", 0) == 0);
  std::remove(fig2.c_str());
}

TEST_CASE("the learning column is seeded and deterministic") {
  std::string args = with_machines("table --tier fast --with-cc --seed 7 --name ones26");
  CommandResult a = run_cli(args);
  CommandResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("ones26,264,26,") != std::string::npos);
  // the cc column is filled in
  CHECK(a.output.find(",,24") == std::string::npos);
}

TEST_CASE("the thread cap does not change results") {
  CommandResult one = run_cli("ccstar --name ones14 --machines " +
                              std::string(TMLAB_MACHINES_FILE) + " 2>/dev/null");
  std::string cmd = std::string("TMLAB_THREADS=3 ") + TMLAB_CLI_BIN + " ccstar --name ones14 " +
                    "--machines " + TMLAB_MACHINES_FILE + " > /tmp/tmlab_threads_out.txt";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream in("/tmp/tmlab_threads_out.txt");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::remove("/tmp/tmlab_threads_out.txt");
  CHECK(buf.str() == one.output);
}
