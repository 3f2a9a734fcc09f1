#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

#ifdef CRSIM_CLI_PATH

namespace {

namespace fs = std::filesystem;

const fs::path kWorkRoot = fs::temp_directory_path() / "crsim_cli_tests";

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  fs::create_directories(kWorkRoot);
  const fs::path out_log = kWorkRoot / ("out" + std::to_string(counter) + ".log");
  const fs::path err_log = kWorkRoot / ("err" + std::to_string(counter) + ".log");
  ++counter;
  const std::string command = env_prefix + std::string(CRSIM_CLI_PATH) + " " + args + " >" +
                              out_log.string() + " 2>" + err_log.string();
  const int raw = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.out = slurp(out_log);
  result.err = slurp(err_log);
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = kWorkRoot / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::create_directories(kWorkRoot);
  const fs::path path = kWorkRoot / name;
  std::ofstream out(path);
  out << text;
  return path;
}

int line_count(const std::string& text) {
  int lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

const std::string kDataDir = CRSIM_DATA_DIR;

}  // namespace

TEST_CASE("cli entry points and exit codes") {
  CHECK(run_cli("--version").exit_code == 0);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);              // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 2);    // unknown subcommand
  CHECK(run_cli("expr --no-such-flag").exit_code == 2);
}

TEST_CASE("expr command writes a deterministic CSV") {
  const fs::path dir_a = fresh_dir("expr_a");
  const fs::path dir_b = fresh_dir("expr_b");
  const std::string common =
      "expr --qubits 2 --layers 1..2 --samples 1000 --bins 20 --seed 3 --out ";

  CHECK(run_cli(common + dir_a.string() + " --threads 1").exit_code == 0);
  CHECK(run_cli(common + dir_b.string() + " --threads 4").exit_code == 0);

  const std::string csv_a = slurp(dir_a / "expr.csv");
  const std::string csv_b = slurp(dir_b / "expr.csv");
  CHECK(csv_a == csv_b);  // byte-identical across thread counts
  CHECK(line_count(csv_a) == 3);
  CHECK(csv_a.rfind("n_qubits,n_layers,entangler,rotations,samples,bins,expr_nats\n", 0) == 0);
  CHECK(csv_a.find("2,1,cnot,ry,1000,20,") != std::string::npos);

  const auto manifest = nlohmann::json::parse(slurp(dir_a / "manifest.json"));
  CHECK(manifest.at("command") == "expr");
  CHECK(manifest.at("flags").at("seed") == "3");
  CHECK(manifest.at("version") == "0.1.0");

  CHECK(run_cli("expr --qubits 2 --layers 1..2 --samples 10 --out " +
                fresh_dir("expr_bad").string())
            .exit_code == 2);  // undersampled histogram is refused
}

TEST_CASE("tomo command fits the bundled coefficients") {
  const fs::path dir = fresh_dir("tomo_a");
  const auto run = run_cli("tomo --synthetic --durations 64 --out " + dir.string());
  CHECK(run.exit_code == 0);
  CHECK(fs::exists(dir / "series.csv"));
  CHECK(fs::exists(dir / "ramsey.csv"));

  const auto fit = nlohmann::json::parse(slurp(dir / "fit.json"));
  const double f_zx = fit.at("fitted").at("f_zx").get<double>();
  const double f_zi = fit.at("fitted").at("f_zi").get<double>();
  CHECK(std::abs(f_zx - 0.69645487) < 0.01 * 0.69645487);
  CHECK(std::abs(f_zi - 14.5783) < 0.01 * 14.5783);
  CHECK(fit.at("in_plane").at("converged").get<bool>());
  CHECK(fit.at("ramsey").at("converged").get<bool>());

  // Reruns are byte-identical (manifest carries the only timing field).
  const fs::path dir_b = fresh_dir("tomo_b");
  CHECK(run_cli("tomo --synthetic --durations 64 --out " + dir_b.string()).exit_code == 0);
  CHECK(slurp(dir / "series.csv") == slurp(dir_b / "series.csv"));
  CHECK(slurp(dir / "ramsey.csv") == slurp(dir_b / "ramsey.csv"));
  CHECK(slurp(dir / "fit.json") == slurp(dir_b / "fit.json"));

  // A four-point grid cannot resolve the tone: rejected before any fit runs.
  CHECK(run_cli("tomo --synthetic --durations 4 --out " + fresh_dir("tomo_bad").string())
            .exit_code == 2);
}

TEST_CASE("entropy command emits one row per layer count") {
  const fs::path dir_a = fresh_dir("entropy_a");
  const fs::path dir_b = fresh_dir("entropy_b");
  const std::string common =
      "entropy --qubits 3 --layers 1..2 --samples 4 --seed 1 --out ";
  CHECK(run_cli(common + dir_a.string() + " --threads 1").exit_code == 0);
  CHECK(run_cli(common + dir_b.string() + " --threads 4").exit_code == 0);

  const std::string csv = slurp(dir_a / "entropy.csv");
  CHECK(csv == slurp(dir_b / "entropy.csv"));
  CHECK(line_count(csv) == 3);
  CHECK(csv.rfind("n_qubits,n_layers,entangler,split_size,samples,mean_entropy_bits\n", 0) == 0);
  CHECK(csv.find("3,1,cnot,1,4,") != std::string::npos);

  CHECK(run_cli("entropy --qubits 2 --out " + fresh_dir("entropy_bad").string()).exit_code ==
        2);  // scans need >= 3 qubits
}

TEST_CASE("variance command scans entangler kinds") {
  const fs::path dir_a = fresh_dir("variance_a");
  const fs::path dir_b = fresh_dir("variance_b");
  const std::string common =
      "variance --qubits 2..3 --entangler cnot --entangler cr-ang --depth shallow "
      "--cost local:1 --samples 10 --seed 2 --out ";
  CHECK(run_cli(common + dir_a.string() + " --threads 1").exit_code == 0);
  CHECK(run_cli(common + dir_b.string() + " --threads 4").exit_code == 0);

  const std::string csv = slurp(dir_a / "variance.csv");
  CHECK(csv == slurp(dir_b / "variance.csv"));
  CHECK(line_count(csv) == 5);  // header + 2 kinds x 2 sizes
  CHECK(csv.rfind("entangler,n_qubits,n_layers,cost,samples,variance\n", 0) == 0);
  CHECK(csv.find("cnot,2,1,local1,10,") != std::string::npos);
  CHECK(csv.find("cr-ang,3,2,local1,10,") != std::string::npos);

  CHECK(run_cli("variance --depth sideways --out " + fresh_dir("variance_bad").string())
            .exit_code == 2);
  CHECK(run_cli("variance --cost local:0 --out " + fresh_dir("variance_bad2").string())
            .exit_code == 2);
}

TEST_CASE("vqe command solves a bundled triangle") {
  const fs::path graph = write_file("triangle.txt", "0 1 1.0\n1 2 1.0\n0 2 1.0\n");
  const fs::path dir_a = fresh_dir("vqe_a");
  const fs::path dir_b = fresh_dir("vqe_b");
  const std::string common = "vqe --problem maxcut --graph " + graph.string() +
                             " --layers 2 --iters 5 --seed 4 --out ";
  CHECK(run_cli(common + dir_a.string()).exit_code == 0);
  CHECK(run_cli(common + dir_b.string()).exit_code == 0);

  CHECK(slurp(dir_a / "trace.csv") == slurp(dir_b / "trace.csv"));
  CHECK(slurp(dir_a / "summary.json") == slurp(dir_b / "summary.json"));
  CHECK(line_count(slurp(dir_a / "trace.csv")) == 1 + 2 * 5 + 1);

  const auto summary = nlohmann::json::parse(slurp(dir_a / "summary.json"));
  CHECK(summary.at("n_qubits") == 3);
  CHECK(summary.at("exact_reference").get<double>() == doctest::Approx(-2.0));
  CHECK(summary.at("max_cut").get<double>() == doctest::Approx(2.0));
  CHECK(summary.at("optimal_bitstrings").size() == 6);
  CHECK(summary.at("top_k").size() == 5);

  CHECK(run_cli("vqe --problem maxcut --out " + fresh_dir("vqe_bad").string()).exit_code ==
        2);  // --graph is mandatory for maxcut
  const auto missing =
      run_cli("vqe --problem maxcut --graph /nonexistent/graph.txt --out " +
              fresh_dir("vqe_bad2").string());
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("/nonexistent/graph.txt") != std::string::npos);
}

TEST_CASE("vqe command reports the exact reference for molecular input") {
  const fs::path dir = fresh_dir("vqe_ham");
  const auto run = run_cli("vqe --problem hamiltonian --ham " + kDataDir +
                           "/hamiltonians/h2.txt --rotations ryrz --layers 2 --iters 5 "
                           "--seed 0 --out " + dir.string());
  CHECK(run.exit_code == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("n_qubits") == 2);
  CHECK(summary.at("exact_reference").get<double>() ==
        doctest::Approx(-1.8572750302).epsilon(1e-9));
  CHECK(summary.at("abs_error").get<double>() >= 0.0);
}

TEST_CASE("calibration resolves from flag or environment identically") {
  const std::string cal = kDataDir + "/calibration.json";
  const fs::path dir_flag = fresh_dir("cal_flag");
  const fs::path dir_env = fresh_dir("cal_env");
  const std::string common = "expr --qubits 2 --layers 1 --samples 1000 --bins 20 "
                             "--entangler cr-dur --out ";

  CHECK(run_cli(common + dir_flag.string() + " --calibration " + cal).exit_code == 0);
  CHECK(run_cli(common + dir_env.string(), "CRSIM_CALIBRATION=" + cal + " ").exit_code == 0);

  CHECK(slurp(dir_flag / "expr.csv") == slurp(dir_env / "expr.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir_env / "manifest.json"));
  CHECK(manifest.at("flags").at("calibration") == cal);
  CHECK(manifest.at("inputs").contains(cal));

  CHECK(run_cli(common + fresh_dir("cal_bad").string() + " --calibration /nonexistent.json")
            .exit_code == 2);
}

#endif  // CRSIM_CLI_PATH
