// End-to-end checks of the command-line surface: spawns the real binary,
// captures stdout and exit codes. The binary path arrives as argv[1].

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string g_binary;
std::filesystem::path g_tmp;
int g_failures = 0;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult result;
  if (!pipe) {
    return result;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::printf("ok   %s\n", what.c_str());
  } else {
    std::printf("FAIL %s\n", what.c_str());
    ++g_failures;
  }
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) {
    lines += c == '\n';
  }
  return lines;
}

std::string path_of(const std::string& name) { return (g_tmp / name).string(); }

void test_generate_detect_eval_roundtrip() {
  const std::string prefix = path_of("planted");
  auto gen = run("generate planted --zout 3 --seed 7 --out " + prefix);
  expect(gen.exit_code == 0, "generate planted exits 0");
  expect(std::filesystem::exists(prefix + ".edges"), "edges file written");
  expect(std::filesystem::exists(prefix + ".truth"), "truth file written");

  auto self = run("eval --pred " + prefix + ".truth --truth " + prefix + ".truth");
  expect(self.exit_code == 0, "eval truth vs truth exits 0");
  expect(self.out == "ARI=1.000000 NMI=1.000000\n", "eval truth vs truth prints exact ones");

  const std::string pred = path_of("planted.pred");
  auto det = run("detect --in " + prefix + ".edges --seed 5 --out " + pred);
  expect(det.exit_code == 0, "detect on generated graph exits 0");
  auto eval = run("eval --pred " + pred + " --truth " + prefix + ".truth");
  expect(eval.exit_code == 0, "eval detect output exits 0");
  expect(eval.out.rfind("ARI=", 0) == 0 && eval.out.find("NMI=") != std::string::npos,
         "eval prints the ARI/NMI line");
}

void test_generate_rejects_bad_config() {
  auto bad = run("generate planted --zout 20 --out " + path_of("bad"));
  expect(bad.exit_code == 2, "z_out > z exits 2");
}

void test_lfr_truth_covers_all_vertices() {
  const std::string prefix = path_of("lfr");
  auto gen = run("generate lfr-like --mu 0.3 --n 300 --seed 2 --out " + prefix);
  expect(gen.exit_code == 0, "generate lfr-like exits 0");
  std::ifstream truth(prefix + ".truth");
  std::string text((std::istreambuf_iterator<char>(truth)), std::istreambuf_iterator<char>());
  expect(count_lines(text) == 300, "lfr truth has one label per vertex");
}

void test_karate_detect() {
  auto det = run("detect --in @karate --seed 3");
  expect(det.exit_code == 0, "detect @karate exits 0");
  expect(count_lines(det.out) == 34, "detect @karate prints 34 lines");

  auto again = run("detect --in @karate --seed 3");
  expect(det.out == again.out, "same seed gives byte-identical output");

  auto actors = run("detect --in @karate --seed 3 --engine actors");
  expect(det.out == actors.out, "actor engine matches the pipeline");

  auto pollers = run("detect --in @karate --seed 3 --pollers 4 --poll-plan random");
  expect(det.out == pollers.out, "poller plans do not change the partition");

  auto threads = run("detect --in @karate --seed 3 --threads 4");
  expect(det.out == threads.out, "thread count does not change the partition");

  const std::string pred = path_of("karate.pred");
  auto to_file = run("detect --in @karate --seed 3 --out " + pred);
  expect(to_file.exit_code == 0, "detect writes to --out");
  auto eval = run("eval --pred " + pred + " --truth @karate");
  expect(eval.exit_code == 0, "eval against @karate truth exits 0");
}

void test_detect_rejects_bad_input() {
  const std::string bad = path_of("bad.edges");
  std::ofstream(bad) << "0 1\nnot an edge\n";
  auto det = run("detect --in " + bad);
  expect(det.exit_code == 1, "malformed edge list exits 1");
  auto missing = run("detect --in " + path_of("does-not-exist.edges"));
  expect(missing.exit_code == 1, "missing edge list exits 1");
}

void test_eval_disjoint_carriers() {
  const std::string a = path_of("a.part");
  const std::string b = path_of("b.part");
  std::ofstream(a) << "0 1\n1 1\n";
  std::ofstream(b) << "2 1\n3 1\n";
  auto eval = run("eval --pred " + a + " --truth " + b);
  expect(eval.exit_code == 1, "disjoint carriers exit 1");
}

void test_bench_csv() {
  auto bench = run("bench --suite planted --sweep 1:3 --repeats 2 --seed 9");
  expect(bench.exit_code == 0, "bench exits 0");
  std::istringstream rows(bench.out);
  std::string header;
  std::getline(rows, header);
  expect(header == "sweep,tau,repeats,nmi_mean,nmi_std,ari_mean,ari_std,ms_mean",
         "bench CSV header is stable");
  expect(count_lines(bench.out) == 4, "bench emits one row per sweep value");

  auto again = run("bench --suite planted --sweep 1:3 --repeats 2 --seed 9");
  auto strip_ms = [](const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string kept;
    while (std::getline(in, line)) {
      kept += line.substr(0, line.rfind(','));
      kept += '\n';
    }
    return kept;
  };
  expect(strip_ms(bench.out) == strip_ms(again.out),
         "bench metric columns are deterministic under a fixed seed");

  auto bad = run("bench --suite planted --sweep 5:1");
  expect(bad.exit_code == 2, "invalid sweep range exits 2");

  auto planted_default = run("bench --suite planted --repeats 1 --seed 3");
  expect(count_lines(planted_default.out) == 9, "default planted sweep is z_out 1..8");
  auto lfr_default = run("bench --suite lfr-like --repeats 1 --seed 3 --n 300");
  expect(count_lines(lfr_default.out) == 9, "default lfr-like sweep is mu 0.1..0.8");
}

void test_amazon_missing_files() {
  auto amazon = run("amazon --edges " + path_of("nope.txt") + " --truth " + path_of("nope2.txt"));
  expect(amazon.exit_code == 1, "missing amazon files exit 1");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-veco-binary>\n");
    return 2;
  }
  g_binary = argv[1];
  g_tmp = std::filesystem::temp_directory_path() / "veco-cli-tests";
  std::filesystem::create_directories(g_tmp);

  test_generate_detect_eval_roundtrip();
  test_generate_rejects_bad_config();
  test_lfr_truth_covers_all_vertices();
  test_karate_detect();
  test_detect_rejects_bad_input();
  test_eval_disjoint_carriers();
  test_bench_csv();
  test_amazon_missing_files();

  std::filesystem::remove_all(g_tmp);
  if (g_failures > 0) {
    std::printf("%d CLI check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all CLI checks passed\n");
  return 0;
}
