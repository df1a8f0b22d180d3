#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("cellscale_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path);
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(CLI_BIN) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    rows.push_back(std::move(fields));
  }
  return rows;
}

// exponent-table lookup: (protocol, direction) -> row
std::map<std::pair<std::string, std::string>, std::vector<std::string>>
exponent_map(const std::vector<std::vector<std::string>>& rows) {
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> m;
  for (std::size_t i = 1; i < rows.size(); ++i)
    m[{rows[i][0], rows[i][1]}] = rows[i];
  return m;
}

}  // namespace

TEST_CASE("exponent table: defaults and a bandwidth-rich point") {
  const RunResult def = run_cli("exponent");
  REQUIRE(def.code == 0);
  const auto rows = parse_csv(def.out);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == std::vector<std::string>{"protocol", "direction",
                                            "exponent", "active_branch",
                                            "rn_used"});
  auto table = exponent_map(rows);
  CHECK(std::stod(table[{"ish", "dl"}][2]) == doctest::Approx(-0.25));
  CHECK(std::stod(table[{"imh", "dl"}][2]) == doctest::Approx(-0.25));
  CHECK(std::stod(table[{"ub", "ul"}][2]) == doctest::Approx(0.0));
  CHECK(table[{"ish", "dl"}][3] == "psi");
  CHECK(table[{"ub", "dl"}][4] == "false");

  const RunResult rich = run_cli("exponent --psi 3");
  REQUIRE(rich.code == 0);
  auto rich_table = exponent_map(parse_csv(rich.out));
  CHECK(std::stod(rich_table[{"imh", "dl"}][2]) == doctest::Approx(1.75));
  CHECK(std::stod(rich_table[{"ish", "dl"}][2]) == doctest::Approx(0.75));
  CHECK(rich_table[{"imh", "dl"}][3] == "cap");
}

TEST_CASE("exponent table: JSON carries the same values as CSV") {
  const RunResult csv = run_cli("exponent --psi 3");
  const RunResult js = run_cli("exponent --psi 3 --format json");
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  const auto rows = parse_csv(csv.out);
  const json arr = json::parse(js.out);
  REQUIRE(arr.size() == 8);
  REQUIRE(rows.size() == 9);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& row = rows[i + 1];
    CHECK(arr[i]["protocol"] == row[0]);
    CHECK(arr[i]["direction"] == row[1]);
    CHECK(arr[i]["exponent"].get<double>() == std::stod(row[2]));
    CHECK(arr[i]["active_branch"] == row[3]);
    CHECK(arr[i]["rn_used"].get<bool>() == (row[4] == "true"));
  }
}

TEST_CASE("regime labels across the psi axis") {
  auto label_of = [](const std::string& args) {
    const RunResult r = run_cli("regime " + args);
    REQUIRE(r.code == 0);
    for (const auto& row : parse_csv(r.out))
      if (row[0] == "label") return row[1];
    return std::string();
  };
  CHECK(label_of("") == "bandwidth-limited-I");
  CHECK(label_of("--psi 1.5") == "bandwidth-limited-II");
  CHECK(label_of("--psi 3") == "power-limited");

  const RunResult r = run_cli("regime --psi 3 --format json");
  REQUIRE(r.code == 0);
  const json obj = json::parse(r.out);
  CHECK(obj["label"] == "power-limited");
  CHECK(obj["bandwidth_limited_I_below"].get<double>() ==
        doctest::Approx(1.0));
  CHECK(obj["power_limited_above"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("simulate: deterministic summary that respects the ceiling") {
  const fs::path a = scratch() / "sim_a.csv";
  const fs::path b = scratch() / "sim_b.csv";
  const std::string args =
      "simulate --n 256 --seed 9 --proto imh --direction dl --out ";
  REQUIRE(run_cli(args + a.string()).code == 0);
  REQUIRE(run_cli(args + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));

  const auto rows = parse_csv(slurp(a));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] ==
        std::vector<std::string>{"n", "seed", "proto", "direction", "mode",
                                 "min_rate", "failures", "ub_dl", "ub_ul",
                                 "rn_used"});
  const auto& row = rows[1];
  CHECK(row[0] == "256");
  CHECK(row[1] == "9");
  CHECK(row[2] == "imh");
  CHECK(row[3] == "dl");
  CHECK(row[4] == "paper");
  CHECK(std::stod(row[5]) > 0.0);
  CHECK(row[6] == "0");
  CHECK(std::stod(row[5]) <= std::stod(row[7]) + 1e-9);  // min rate vs ub_dl
  CHECK(row[9] == "false");
}

TEST_CASE("simulate: relay usage surfaces in the summary") {
  // rho at the DL threshold floor: relays do not pay, IRH falls back.
  const RunResult off = run_cli(
      "simulate --n 256 --seed 4 --protocol irh --direction dl "
      "--nu 0.5 --rho 0.5");
  REQUIRE(off.code == 0);
  const auto off_rows = parse_csv(off.out);
  CHECK(off_rows[1][2] == "irh");
  CHECK(off_rows[1][9] == "false");

  // Uplink at defaults: the relay lattice carries traffic.
  const RunResult on = run_cli(
      "simulate --n 256 --seed 4 --proto irh --direction ul");
  REQUIRE(on.code == 0);
  CHECK(parse_csv(on.out)[1][9] == "true");
}

TEST_CASE("simulate: JSON mirrors the summary and dumps geometry") {
  const fs::path dump = scratch() / "realization.json";
  const RunResult r = run_cli(
      "simulate --n 256 --seed 12 --proto ish --direction ul --format json "
      "--dump-realization " + dump.string());
  REQUIRE(r.code == 0);
  const json obj = json::parse(r.out);
  CHECK(obj["n"] == 256);
  CHECK(obj["proto"] == "ish");
  CHECK(obj["min_rate"].get<double>() > 0.0);
  CHECK(obj["per_node_rate"].size() == 256);
  CHECK(obj["diag"].size() == 256);
  CHECK(obj["min_rate"].get<double>() <= obj["ub_ul"].get<double>() + 1e-9);

  const json geo = json::parse(slurp(dump));
  CHECK(geo["seed"] == 12);
  CHECK(geo["nodes"].size() == 256);
  CHECK(geo["base_stations"].size() == 16);   // n^0.5 stations
  CHECK(geo["relay_stations"].size() == 64);  // n^0.75 relays
  CHECK(geo["cell_of_node"].size() == 256);
  for (const auto& p : geo["nodes"]) {
    REQUIRE(p.size() == 2);
    CHECK(p[0].get<double>() >= 0.0);
    CHECK(p[0].get<double>() <= 1.0);
    CHECK(p[1].get<double>() >= 0.0);
    CHECK(p[1].get<double>() <= 1.0);
  }
}

TEST_CASE("sweep: schema, ladder order, and verdict") {
  const fs::path out = scratch() / "sweep.csv";
  const RunResult r = run_cli(
      "sweep --proto ub --direction dl --n-min 1024 --n-max 4096 "
      "--trials 2 --seed 5 --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verdict=") != std::string::npos);
  CHECK(r.out.find("slope=") != std::string::npos);

  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"n", "trial", "seed", "proto",
                                            "direction", "mode", "min_rate",
                                            "failures"});
  const std::vector<std::string> want_n = {"1024", "1024", "2048",
                                           "2048", "4096", "4096"};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(rows[i + 1][0] == want_n[i]);
    CHECK(rows[i + 1][1] == std::to_string(i % 2));
    CHECK(rows[i + 1][3] == "ub");
    CHECK(rows[i + 1][4] == "dl");
    CHECK(rows[i + 1][5] == "paper");
    CHECK(std::stod(rows[i + 1][6]) > 0.0);
  }

  // An impossible tolerance flips the verdict but not the exit code.
  const RunResult tight = run_cli(
      "sweep --proto ub --direction dl --n-min 1024 --n-max 4096 "
      "--trials 2 --seed 5 --tolerance 1e-9 --out " + out.string());
  REQUIRE(tight.code == 0);
  CHECK(tight.out.find("verdict=FAIL") != std::string::npos);
}

TEST_CASE("sweep: single-stream single-hop pipeline passes its verdict") {
  const fs::path out = scratch() / "ish_sweep.csv";
  const RunResult r = run_cli(
      "sweep --proto ish --direction dl --gamma 0 --n-min 1024 "
      "--n-max 16384 --trials 3 --seed 11 --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("theory=-0.500000") != std::string::npos);
  CHECK(r.out.find("verdict=PASS") != std::string::npos);
}

TEST_CASE("sweep: config file fills in flags, flags win") {
  const fs::path cfg = scratch() / "sweep.cfg";
  {
    std::ofstream file(cfg);
    file << "proto=ish\n";
    file << "direction=dl\n";
    file << "gamma=0\n";
    file << "n-min=1024\n";
    file << "n-max=4096\n";
    file << "trials=2\n";
    file << "seed=21\n";
  }
  const fs::path out = scratch() / "cfg_sweep.csv";
  const RunResult file_only =
      run_cli("sweep --config " + cfg.string() + " --out " + out.string());
  REQUIRE(file_only.code == 0);
  CHECK(file_only.out.find("theory=-0.500000") != std::string::npos);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 7);
  CHECK(rows[1][3] == "ish");

  // gamma on the command line overrides gamma from the file.
  const RunResult flag_wins = run_cli("sweep --config " + cfg.string() +
                                      " --gamma 0.25 --out " + out.string());
  REQUIRE(flag_wins.code == 0);
  CHECK(flag_wins.out.find("theory=-0.250000") != std::string::npos);
}

TEST_CASE("sweep: configuration errors exit nonzero") {
  CHECK(run_cli("sweep --alpha 2 --n-min 1024 --n-max 4096").code != 0);
  CHECK(run_cli("sweep --n-min 4096 --n-max 1024").code != 0);
  CHECK(run_cli("sweep --n-min 1024 --n-max 2048").code != 0);  // two sizes
  CHECK(run_cli("sweep --proto capacity --n-min 1024 --n-max 4096").code !=
        0);  // not a simulable protocol name
  CHECK(run_cli("exponent --format svg").code != 0);
  CHECK(run_cli("frobnicate").code != 0);
  CHECK(run_cli("").code != 0);  // a subcommand is required
}

TEST_CASE("figure: curve table and SVG emission") {
  const fs::path csv = scratch() / "figure.csv";
  REQUIRE(run_cli("figure --format csv --out " + csv.string()).code == 0);
  const auto rows = parse_csv(slurp(csv));
  REQUIRE(rows.size() >= 202);  // 201 grid points + header, plus knees
  CHECK(rows[0] ==
        std::vector<std::string>{"psi", "ub", "ish", "imh", "irh"});
  CHECK(std::stod(rows[1][0]) == 0.0);
  CHECK(std::stod(rows.back()[0]) == doctest::Approx(3.0));  // (1-nu)a/2 + 1
  double prev = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double psi = std::stod(rows[i][0]);
    CHECK(psi > prev);
    prev = psi;
    const double ub = std::stod(rows[i][1]);
    const double ish = std::stod(rows[i][2]);
    const double imh = std::stod(rows[i][3]);
    CHECK(ub == imh);  // downlink ceiling is met by multihop
    CHECK(ish <= imh + 1e-12);
  }

  const fs::path ul = scratch() / "figure_ul.csv";
  REQUIRE(run_cli("figure --direction ul --format csv --out " +
                  ul.string()).code == 0);
  const auto ul_rows = parse_csv(slurp(ul));
  for (std::size_t i = 1; i < ul_rows.size(); ++i) {
    const double gap =
        std::stod(ul_rows[i][1]) - std::stod(ul_rows[i][3]);
    CHECK(gap == doctest::Approx(0.25));  // 1 - beta - gamma at defaults
  }

  const fs::path svg = scratch() / "figure.svg";
  REQUIRE(run_cli("figure --format svg --out " + svg.string()).code == 0);
  const std::string body = slurp(svg);
  CHECK(body.rfind("<?xml", 0) == 0);
  CHECK(body.find("<svg") != std::string::npos);
  CHECK(body.find("<polyline") != std::string::npos);
  CHECK(body.find("</svg>") != std::string::npos);
}
