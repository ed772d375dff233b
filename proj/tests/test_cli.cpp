#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string g_cli_path;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const fs::path log = fs::absolute("cli_test_log.txt");
  const std::string cmd = "\"" + g_cli_path + "\" " + args + " > \"" + log.string() +
                          "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  int code = -1;
  if (status != -1) code = WEXITSTATUS(status);
  return RunResult{code, ss.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> parse_kv(const fs::path& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::absolute(name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("spectrum conventional eavesdropper reproduces the true vital peaks") {
  const fs::path out = fresh_dir("cli_out_spectrum");
  const auto result =
      run_cli("spectrum --scheme conventional --receiver eaves --seed 7 --out-dir \"" +
              out.string() + "\"");
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(out / "manifest.txt"));
  CHECK(fs::exists(out / "phase_series.csv"));
  CHECK(fs::exists(out / "spectrum.csv"));
  CHECK(fs::exists(out / "peaks.txt"));

  const auto peaks = parse_kv(out / "peaks.txt");
  const auto manifest = parse_kv(out / "manifest.txt");
  CHECK(std::stod(peaks.at("top_freq_1_hz")) == doctest::Approx(0.4));
  CHECK(std::stod(peaks.at("top_freq_2_hz")) == doctest::Approx(1.3));
  CHECK(manifest.at("subcommand") == "spectrum");
  CHECK(manifest.at("fc-hz") == "2200000000");
  CHECK(manifest.at("fc-hz.source") == "default");
  CHECK(manifest.at("seed") == "7");
  CHECK(manifest.at("seed.source") == "flag");
}

TEST_CASE("spectrum authorized mpv2 recovers the vitals") {
  const fs::path out = fresh_dir("cli_out_spectrum_auth");
  const auto result =
      run_cli("spectrum --scheme mpv2 --receiver authorized --seed 7 --out-dir \"" +
              out.string() + "\"");
  CHECK(result.exit_code == 0);
  const auto peaks = parse_kv(out / "peaks.txt");
  CHECK(std::stod(peaks.at("top_freq_1_hz")) == doctest::Approx(0.4));
  CHECK(std::stod(peaks.at("top_freq_2_hz")) == doctest::Approx(1.3));
}

TEST_CASE("spectrum rejects out-of-range angles with a usage error") {
  const auto result = run_cli("spectrum --theta0-deg 200 --out-dir cli_out_invalid");
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("--theta0-deg") != std::string::npos);
}

TEST_CASE("unknown flags are rejected and named") {
  const auto result = run_cli("spectrum --no-such-flag 3");
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("--no-such-flag") != std::string::npos);
}

TEST_CASE("optimize mpv2 writes the closed-form record for the reference instance") {
  const fs::path out = fresh_dir("cli_out_opt2");
  const auto result = run_cli(
      "optimize --scheme mpv2 --l 12 --theta-c-deg 41 --oracle-samples 2000 --seed 3 "
      "--out-dir \"" + out.string() + "\"");
  CHECK(result.exit_code == 0);
  const auto record = parse_kv(out / "mpv2_solution.txt");
  CHECK(record.at("l") == "12");
  CHECK(record.at("phase_set_m") == "1820");
  const double variance = std::stod(record.at("variance_rad2"));
  const double oracle = std::stod(record.at("oracle_max_rad2"));
  CHECK(oracle <= variance + 1e-9);
  CHECK(std::abs(std::stod(record.at("oracle_gap_rad2"))) < 1e-9);
}

TEST_CASE("optimize mpv1 writes a solution bounded by its Popoviciu record") {
  const fs::path out = fresh_dir("cli_out_opt1");
  const auto result = run_cli("optimize --scheme mpv1 --anneal-iters 600 --seed 1 --out-dir \"" +
                              out.string() + "\"");
  CHECK(result.exit_code == 0);
  const auto record = parse_kv(out / "mpv1_solution.txt");
  const int l_star = std::stoi(record.at("l_star"));
  CHECK(l_star >= 1);
  CHECK(l_star <= 15);
  CHECK(std::stod(record.at("variance_rad2")) <=
        std::stod(record.at("popoviciu_bound_rad2")) + 1e-12);
  CHECK(fs::exists(out / "anneal_trace.csv"));
  std::ifstream trace(out / "anneal_trace.csv");
  std::string header;
  std::getline(trace, header);
  CHECK(header == "iteration,objective");
}

TEST_CASE("optimize rejects l outside [1, N-1]") {
  const auto result = run_cli("optimize --scheme mpv2 --l 0 --out-dir cli_out_badl");
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("--l") != std::string::npos);
}

TEST_CASE("pod emits one row per scheme and SNR point, deterministically") {
  const fs::path out_a = fresh_dir("cli_out_pod_a");
  const fs::path out_b = fresh_dir("cli_out_pod_b");
  const std::string args =
      "pod --snr-db -30:25:20 --trials 6 --anneal-iters 120 --seed 3 --threads ";
  CHECK(run_cli(args + "1 --out-dir \"" + out_a.string() + "\"").exit_code == 0);
  CHECK(run_cli(args + "2 --out-dir \"" + out_b.string() + "\"").exit_code == 0);

  const std::string table_a = slurp(out_a / "pod.csv");
  const std::string table_b = slurp(out_b / "pod.csv");
  CHECK(table_a == table_b);  // thread count must not leak into results

  std::stringstream ss(table_a);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "scheme,snr_db,trials,successes,pod,ci_low,ci_high");
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 9);  // 3 schemes x 3 SNR points
}

TEST_CASE("pod with a bad trial count fails fast") {
  const auto result = run_cli("pod --trials 0 --out-dir cli_out_badtrials");
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("--trials") != std::string::npos);
}

TEST_CASE("config file fills unset flags; flags win; manifest records sources") {
  const fs::path out = fresh_dir("cli_out_config");
  const fs::path cfg = fs::absolute("cli_test_config.txt");
  {
    std::ofstream c(cfg);
    c << "theta0-deg = 25\n";
    c << "snr-db = 5\n";
  }
  const auto result =
      run_cli("spectrum --theta0-deg 30 --seed 2 --config \"" + cfg.string() +
              "\" --out-dir \"" + out.string() + "\"");
  CHECK(result.exit_code == 0);
  const auto manifest = parse_kv(out / "manifest.txt");
  CHECK(manifest.at("theta0-deg") == "30");
  CHECK(manifest.at("theta0-deg.source") == "flag");
  CHECK(manifest.at("snr-db") == "5");
  CHECK(manifest.at("snr-db.source") == "config");
  CHECK(manifest.at("fs-hz.source") == "default");
}

TEST_CASE("unknown config keys are rejected by name") {
  const fs::path cfg = fs::absolute("cli_test_bad_config.txt");
  {
    std::ofstream c(cfg);
    c << "not-a-key = 1\n";
  }
  const auto result = run_cli("spectrum --config \"" + cfg.string() + "\"");
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("not-a-key") != std::string::npos);
}

TEST_CASE("spectrum dump flags export the schedule and trace surfaces") {
  const fs::path out = fresh_dir("cli_out_dump");
  const auto result = run_cli(
      "spectrum --scheme mpv2 --receiver eaves --seed 5 --dump-trace --dump-schedule "
      "--out-dir \"" + out.string() + "\"");
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(out / "schedule.txt"));
  CHECK(fs::exists(out / "trace.csv"));
  const std::string schedule = slurp(out / "schedule.txt");
  CHECK(schedule.rfind("# scheme mpv2", 0) == 0);
}

int main_impl(int argc, char** argv) {
  doctest::Context context;
  context.applyCommandLine(argc > 1 ? 1 : argc, argv);
  if (argc > 1) g_cli_path = argv[1];
  if (g_cli_path.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-vsmpriv-binary>\n");
    return 1;
  }
  return context.run();
}

int main(int argc, char** argv) { return main_impl(argc, argv); }
