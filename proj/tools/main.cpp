#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cellscale/bounds.hpp"
#include "cellscale/channel.hpp"
#include "cellscale/experiments.hpp"
#include "cellscale/geometry.hpp"
#include "cellscale/params.hpp"
#include "cellscale/protocols.hpp"
#include "cellscale/theory.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace cellscale;

namespace {

// Shortest round-trippable decimal form.
std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

const char* yesno(bool b) { return b ? "true" : "false"; }

struct RunConfig {
  ScalingExponents e;
  ModelConstants c;
  std::uint64_t n = 4096;
  std::uint64_t seed = 1;
  std::uint32_t trials = 3;
  std::uint64_t n_min = 1024;
  std::uint64_t n_max = 16384;
  std::string proto = "ish";
  std::string direction = "dl";
  std::string mode = "paper";
  bool wrap = false;
  std::string out;  // stdout when empty
  std::string format = "csv";
  double tolerance = 0.15;
  std::string config_path;
  // figure / simulate extras
  double psi_max = 0.0;  // 0: use the default (1 - nu) alpha / 2 + 1
  std::string dump_realization;
};

// Flat key=value configuration: keys are the long option names without the
// leading dashes, values go through the same conversion and validation as
// the flags.  Options given on the command line keep their values.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file " + path);
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string entry = trim(line);
    if (entry.empty()) continue;
    const auto where = path + ":" + std::to_string(lineno);
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(where + ": expected key=value");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    CLI::Option* opt =
        key == "config" ? nullptr : cmd->get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw std::runtime_error(where + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;  // explicit flags win
    opt->add_result(value);
    opt->run_callback();
  }
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool figure) {
  cmd->add_option("--alpha", cfg.e.alpha, "path-loss exponent (> 2)");
  cmd->add_option("--psi", cfg.e.psi, "bandwidth scaling exponent");
  cmd->add_option("--nu", cfg.e.nu, "area scaling exponent");
  cmd->add_option("--beta", cfg.e.beta, "base-station scaling exponent");
  cmd->add_option("--gamma", cfg.e.gamma, "stream-count scaling exponent");
  cmd->add_option("--rho", cfg.e.rho, "relay-station scaling exponent");
  cmd->add_option("--n", cfg.n, "node count");
  cmd->add_option("--seed", cfg.seed, "master RNG seed");
  cmd->add_option("--trials", cfg.trials, "trials per network size");
  cmd->add_option("--n-min", cfg.n_min, "smallest sweep size");
  cmd->add_option("--n-max", cfg.n_max, "largest sweep size (ladder doubles)");
  cmd->add_option("--proto,--protocol", cfg.proto, "protocol")
      ->check(CLI::IsMember({"ub", "ish", "imh", "irh"}));
  cmd->add_option("--direction", cfg.direction, "traffic direction")
      ->check(CLI::IsMember({"dl", "ul"}));
  cmd->add_option("--mode", cfg.mode, "hop time-share model")
      ->check(CLI::IsMember({"paper", "exact"}));
  cmd->add_flag("--wrap", cfg.wrap, "torus distances (no region boundary)");
  cmd->add_option("--out", cfg.out, "output path (stdout when omitted)");
  if (figure)
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
  else
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--tolerance", cfg.tolerance,
                  "verdict tolerance on the fitted slope");
  // Dimensionful prefactors, mostly left at 1; settable here and from the
  // config file alike.
  cmd->add_option("--W0", cfg.c.W0, "bandwidth prefactor");
  cmd->add_option("--A0", cfg.c.A0, "area prefactor");
  cmd->add_option("--m0", cfg.c.m0, "base-station count prefactor");
  cmd->add_option("--l0", cfg.c.l0, "stream count prefactor");
  cmd->add_option("--k0", cfg.c.k0, "relay-station count prefactor");
  cmd->add_option("--P", cfg.c.P, "per-node transmit power");
  cmd->add_option("--P_BS", cfg.c.P_BS, "per-base-station transmit power");
  cmd->add_option("--P_RN", cfg.c.P_RN, "per-relay-station transmit power");
  cmd->add_option("--N0", cfg.c.N0, "noise power spectral density");
  cmd->add_option("--config", cfg.config_path,
                  "flat key=value config file; flags win");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
  file << text;
}

// ---------------------------------------------------------------- exponent

int cmd_exponent(const RunConfig& cfg) {
  validate(cfg.e);
  constexpr Protocol kProtos[] = {Protocol::UB, Protocol::ISH, Protocol::IMH,
                                  Protocol::IRH};
  constexpr Direction kDirs[] = {Direction::DL, Direction::UL};

  std::vector<ExponentResult> rows;
  for (const Protocol p : kProtos)
    for (const Direction d : kDirs)
      rows.push_back(theoretical_exponent(p, d, cfg.e));

  if (cfg.format == "json") {
    json arr = json::array();
    for (const ExponentResult& r : rows)
      arr.push_back({{"protocol", to_string(r.protocol)},
                     {"direction", to_string(r.direction)},
                     {"exponent", r.exponent},
                     {"active_branch", r.active_branch},
                     {"rn_used", r.rn_used}});
    emit(cfg, arr.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "protocol,direction,exponent,active_branch,rn_used\n";
    for (const ExponentResult& r : rows)
      csv << to_string(r.protocol) << ',' << to_string(r.direction) << ','
          << g17(r.exponent) << ',' << r.active_branch << ','
          << yesno(r.rn_used) << '\n';
    emit(cfg, csv.str());
  }
  return 0;
}

// ------------------------------------------------------------------ regime

int cmd_regime(const RunConfig& cfg) {
  validate(cfg.e);
  validate(cfg.c);
  const InstanceParams p = instantiate(cfg.n, cfg.e, cfg.c);
  const RegimeLabel label = classify_regime(cfg.e);
  const CharacteristicRadii radii = characteristic_radii(cfg.e, cfg.n, p.W);
  const double bw1_below = (cfg.e.beta - cfg.e.nu) * cfg.e.alpha / 2.0;
  const double power_above = (1.0 - cfg.e.nu) * cfg.e.alpha / 2.0;

  if (cfg.format == "json") {
    const json obj = {{"label", to_string(label)},
                      {"psi", cfg.e.psi},
                      {"bandwidth_limited_I_below", bw1_below},
                      {"power_limited_above", power_above},
                      {"r_cell_exponent", radii.r_cell_exponent},
                      {"r_s_exponent", radii.r_s_exponent},
                      {"r_v", radii.r_v},
                      {"n", cfg.n},
                      {"W", p.W}};
    emit(cfg, obj.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "key,value\n";
    csv << "label," << to_string(label) << '\n';
    csv << "psi," << g17(cfg.e.psi) << '\n';
    csv << "bandwidth_limited_I_below," << g17(bw1_below) << '\n';
    csv << "power_limited_above," << g17(power_above) << '\n';
    csv << "r_cell_exponent," << g17(radii.r_cell_exponent) << '\n';
    csv << "r_s_exponent," << g17(radii.r_s_exponent) << '\n';
    csv << "r_v," << g17(radii.r_v) << '\n';
    csv << "n," << cfg.n << '\n';
    csv << "W," << g17(p.W) << '\n';
    emit(cfg, csv.str());
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

json diag_json(const NodeDiag& d) {
  return {{"duty", d.duty},
          {"bandwidth", d.bandwidth},
          {"head_sinr", d.head_sinr},
          {"worst_hop_sinr", d.worst_hop_sinr},
          {"hops", d.hops},
          {"failed", d.failed}};
}

void dump_realization(const NetworkRealization& real, const std::string& path) {
  json nodes = json::array();
  for (const Point2D& p : real.nodes) nodes.push_back({p.x, p.y});
  json bss = json::array();
  for (const Point2D& p : real.layout.centers) bss.push_back({p.x, p.y});
  json rns = json::array();
  for (const Point2D& p : real.rns.positions) rns.push_back({p.x, p.y});
  const json obj = {{"seed", real.seed},
                    {"n", real.params.n},
                    {"m", real.params.m},
                    {"k", real.params.k},
                    {"min_link_distance", real.min_link_distance},
                    {"nodes", nodes},
                    {"base_stations", bss},
                    {"relay_stations", rns},
                    {"cell_of_node", real.cell_of_node}};
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  file << obj.dump(2) << '\n';
}

int cmd_simulate(const RunConfig& cfg) {
  validate(cfg.e);
  validate(cfg.c);
  const Protocol proto = parse_protocol(cfg.proto);
  const Direction dir = parse_direction(cfg.direction);
  const LoadMode mode = parse_load_mode(cfg.mode);

  const NetworkRealization real =
      build_realization(cfg.n, cfg.e, cfg.c, cfg.seed, cfg.wrap);
  const CutsetReport dl = cutset_dl(real);
  const CutsetReport ul = cutset_ul(real);
  const double ub_for_dir =
      dir == Direction::DL ? dl.ub_per_node_dl : ul.ub_per_node_ul;

  RateReport rep;
  rep.protocol = proto;
  rep.direction = dir;
  rep.mode = mode;
  switch (proto) {
    case Protocol::UB:
      rep.min_rate = ub_for_dir;
      break;
    case Protocol::ISH:
      rep = ish_rates(real, dir);
      break;
    case Protocol::IMH:
      rep = imh_rates(real, dir, mode);
      break;
    case Protocol::IRH:
      rep = irh_rates(real, dir);
      break;
    case Protocol::CAPACITY:
      throw std::invalid_argument(
          "capacity has no simulation; use ub, ish, imh, or irh");
  }
  if (proto != Protocol::UB && rep.min_rate > ub_for_dir + 1e-9)
    throw std::runtime_error("dominance violation: " + std::string(
        to_string(proto)) + " min rate " + g17(rep.min_rate) +
        " exceeds cut-set ceiling " + g17(ub_for_dir));

  if (!cfg.dump_realization.empty())
    dump_realization(real, cfg.dump_realization);

  if (cfg.format == "json") {
    json diag = json::array();
    for (const NodeDiag& d : rep.diag) diag.push_back(diag_json(d));
    const json obj = {
        {"n", cfg.n},
        {"seed", cfg.seed},
        {"proto", to_string(proto)},
        {"direction", to_string(dir)},
        {"mode", to_string(mode)},
        {"min_rate", rep.min_rate},
        {"failures", rep.failures},
        {"ub_dl", dl.ub_per_node_dl},
        {"ub_ul", ul.ub_per_node_ul},
        {"rn_used", rep.rn_used},
        {"worst_case_interferer_power", rep.worst_case_interferer_power},
        {"clamped_pairs", dl.clamped_pairs + ul.clamped_pairs},
        {"per_node_rate", rep.per_node_rate},
        {"diag", diag}};
    emit(cfg, obj.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "n,seed,proto,direction,mode,min_rate,failures,ub_dl,ub_ul,"
           "rn_used\n";
    csv << cfg.n << ',' << cfg.seed << ',' << to_string(proto) << ','
        << to_string(dir) << ',' << to_string(mode) << ','
        << g17(rep.min_rate) << ',' << rep.failures << ','
        << g17(dl.ub_per_node_dl) << ',' << g17(ul.ub_per_node_ul) << ','
        << yesno(rep.rn_used) << '\n';
    emit(cfg, csv.str());
  }
  return 0;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const RunConfig& cfg) {
  SweepPlan plan;
  if (cfg.n_min < 1) throw std::invalid_argument("n-min must be >= 1");
  if (cfg.n_max < cfg.n_min)
    throw std::invalid_argument("n-max must be >= n-min");
  for (std::uint64_t v = cfg.n_min; v <= cfg.n_max; v *= 2)
    plan.n_values.push_back(v);
  plan.trials_per_n = cfg.trials;
  plan.master_seed = cfg.seed;
  plan.proto = parse_protocol(cfg.proto);
  plan.direction = parse_direction(cfg.direction);
  plan.mode = parse_load_mode(cfg.mode);
  plan.exponents = cfg.e;
  plan.constants = cfg.c;
  plan.wrap = cfg.wrap;

  const SweepResult res = run_sweep(plan);
  for (const std::string& w : res.warnings)
    std::cerr << "warning: " << w << '\n';

  if (cfg.format == "json") {
    json arr = json::array();
    for (const SweepRow& row : res.rows)
      arr.push_back({{"n", row.n},
                     {"trial", row.trial},
                     {"seed", row.seed},
                     {"proto", to_string(plan.proto)},
                     {"direction", to_string(plan.direction)},
                     {"mode", to_string(plan.mode)},
                     {"min_rate", row.min_rate},
                     {"failures", row.failures}});
    emit(cfg, arr.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "n,trial,seed,proto,direction,mode,min_rate,failures\n";
    for (const SweepRow& row : res.rows)
      csv << row.n << ',' << row.trial << ',' << row.seed << ','
          << to_string(plan.proto) << ',' << to_string(plan.direction) << ','
          << to_string(plan.mode) << ',' << g17(row.min_rate) << ','
          << row.failures << '\n';
    emit(cfg, csv.str());
  }

  const ExponentEstimate est = fit_exponent(res.rows);
  const TheoryComparison cmp = compare_to_theory(
      est, plan.proto, plan.direction, plan.exponents, cfg.tolerance);
  std::cout << "rows=" << res.rows.size() << " sizes=" << est.points.size()
            << " warnings=" << res.warnings.size() << '\n';
  std::cout << "slope=" << f6(est.slope) << " stderr=" << f6(est.slope_stderr)
            << " r2=" << f6(est.r2) << " intercept=" << f6(est.intercept)
            << '\n';
  std::cout << "theory=" << f6(cmp.theory) << " branch=" << cmp.active_branch
            << " rn_used=" << yesno(cmp.rn_used)
            << " delta=" << f6(cmp.abs_delta)
            << " tolerance=" << f6(cmp.tolerance)
            << " verdict=" << (cmp.pass ? "PASS" : "FAIL") << '\n';
  return 0;  // a FAIL verdict is a result, not an error
}

// ------------------------------------------------------------------ figure

struct FigureTable {
  std::vector<double> psi;
  // curves indexed [proto][sample] in the order ub, ish, imh, irh
  std::vector<std::vector<double>> curve;
};

FigureTable figure_table(const ScalingExponents& e, Direction dir,
                         double psi_max) {
  constexpr Protocol kProtos[] = {Protocol::UB, Protocol::ISH, Protocol::IMH,
                                  Protocol::IRH};
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(psi_max * i / 200.0);
  for (const Protocol p : kProtos)
    for (const double b : breakpoints(p, dir, e))
      if (b > 0.0 && b < psi_max) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a < 1e-12; }),
             grid.end());

  FigureTable table;
  table.psi = grid;
  table.curve.resize(4);
  for (int p = 0; p < 4; ++p) {
    table.curve[p].reserve(grid.size());
    for (const double psi : grid)
      table.curve[p].push_back(exponent_vs_psi(kProtos[p], dir, e, psi));
  }
  return table;
}

std::string figure_svg(const FigureTable& t, Direction dir) {
  constexpr double kW = 720, kH = 480;
  constexpr double kL = 70, kR = 590, kT = 40, kB = 430;
  const char* names[4] = {"ub", "ish", "imh", "irh"};
  const char* colors[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  const char* dashes[4] = {"8,4", "", "", "2,3"};

  double ymin = 0.0, ymax = 0.0;
  for (const auto& c : t.curve)
    for (const double v : c) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (ymax - ymin < 1e-9) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;
  const double xmax = t.psi.back() > 0.0 ? t.psi.back() : 1.0;

  auto sx = [&](double psi) { return kL + (kR - kL) * psi / xmax; };
  auto sy = [&](double v) {
    return kB - (kB - kT) * (v - ymin) / (ymax - ymin);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
      << "\">\n";
  svg << "  <title>per-node rate exponent vs psi (" << to_string(dir)
      << ")</title>\n";
  svg << "  <rect width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";

  // Axes with five ticks per side.
  svg << "  <g stroke=\"black\" fill=\"none\" stroke-width=\"1\">\n";
  svg << "    <line x1=\"" << kL << "\" y1=\"" << kB << "\" x2=\"" << kR
      << "\" y2=\"" << kB << "\"/>\n";
  svg << "    <line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL
      << "\" y2=\"" << kB << "\"/>\n";
  svg << "  </g>\n";
  svg << "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double psi = xmax * i / 4.0;
    const double v = ymin + (ymax - ymin) * i / 4.0;
    svg << "    <line x1=\"" << sx(psi) << "\" y1=\"" << kB << "\" x2=\""
        << sx(psi) << "\" y2=\"" << kB + 5 << "\" stroke=\"black\"/>\n";
    svg << "    <text x=\"" << sx(psi) << "\" y=\"" << kB + 18
        << "\" text-anchor=\"middle\">" << f6(psi).substr(0, 5) << "</text>\n";
    svg << "    <line x1=\"" << kL - 5 << "\" y1=\"" << sy(v) << "\" x2=\""
        << kL << "\" y2=\"" << sy(v) << "\" stroke=\"black\"/>\n";
    svg << "    <text x=\"" << kL - 8 << "\" y=\"" << sy(v) + 4
        << "\" text-anchor=\"end\">" << f6(v).substr(0, 5) << "</text>\n";
  }
  svg << "    <text x=\"" << (kL + kR) / 2 << "\" y=\"" << kH - 10
      << "\" text-anchor=\"middle\">psi (bandwidth exponent)</text>\n";
  svg << "    <text x=\"18\" y=\"" << (kT + kB) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (kT + kB) / 2 << ")\">per-node rate exponent</text>\n";
  svg << "  </g>\n";

  for (int p = 0; p < 4; ++p) {
    svg << "  <polyline fill=\"none\" stroke=\"" << colors[p]
        << "\" stroke-width=\"2\"";
    if (dashes[p][0] != '\0')
      svg << " stroke-dasharray=\"" << dashes[p] << "\"";
    svg << " points=\"";
    for (std::size_t i = 0; i < t.psi.size(); ++i) {
      if (i) svg << ' ';
      svg << sx(t.psi[i]) << ',' << sy(t.curve[p][i]);
    }
    svg << "\"/>\n";
  }

  svg << "  <g font-family=\"sans-serif\" font-size=\"13\">\n";
  for (int p = 0; p < 4; ++p) {
    const double y = kT + 20 + 22 * p;
    svg << "    <line x1=\"" << kR + 15 << "\" y1=\"" << y << "\" x2=\""
        << kR + 45 << "\" y2=\"" << y << "\" stroke=\"" << colors[p]
        << "\" stroke-width=\"2\"";
    if (dashes[p][0] != '\0')
      svg << " stroke-dasharray=\"" << dashes[p] << "\"";
    svg << "/>\n";
    svg << "    <text x=\"" << kR + 52 << "\" y=\"" << y + 4 << "\">"
        << names[p] << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

int cmd_figure(const RunConfig& cfg) {
  validate(cfg.e);
  const Direction dir = parse_direction(cfg.direction);
  double psi_max = cfg.psi_max;
  if (psi_max <= 0.0)
    psi_max = (1.0 - cfg.e.nu) * cfg.e.alpha / 2.0 + 1.0;
  const FigureTable table = figure_table(cfg.e, dir, psi_max);

  if (cfg.format == "svg") {
    emit(cfg, figure_svg(table, dir));
  } else if (cfg.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < table.psi.size(); ++i)
      arr.push_back({{"psi", table.psi[i]},
                     {"ub", table.curve[0][i]},
                     {"ish", table.curve[1][i]},
                     {"imh", table.curve[2][i]},
                     {"irh", table.curve[3][i]}});
    emit(cfg, arr.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "psi,ub,ish,imh,irh\n";
    for (std::size_t i = 0; i < table.psi.size(); ++i)
      csv << g17(table.psi[i]) << ',' << g17(table.curve[0][i]) << ','
          << g17(table.curve[1][i]) << ',' << g17(table.curve[2][i]) << ','
          << g17(table.curve[3][i]) << '\n';
    emit(cfg, csv.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity scaling workbench for large cellular networks"};
  app.require_subcommand(1);

  RunConfig cfg;
  CLI::App* exponent =
      app.add_subcommand("exponent", "closed-form scaling exponent table");
  add_common(exponent, cfg, false);
  CLI::App* regime =
      app.add_subcommand("regime", "operating regime and thresholds");
  add_common(regime, cfg, false);
  CLI::App* simulate =
      app.add_subcommand("simulate", "one seeded network realization");
  add_common(simulate, cfg, false);
  simulate->add_option("--dump-realization", cfg.dump_realization,
                       "write node/station geometry to this JSON file");
  CLI::App* sweep =
      app.add_subcommand("sweep", "Monte Carlo scaling sweep and slope fit");
  add_common(sweep, cfg, false);
  CLI::App* figure =
      app.add_subcommand("figure", "exponent-vs-psi curves (csv/json/svg)");
  add_common(figure, cfg, true);
  figure->add_option("--psi-max", cfg.psi_max,
                     "right edge of the psi axis (default: saturation + 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    for (CLI::App* cmd : {exponent, regime, simulate, sweep, figure})
      if (cmd->parsed() && !cfg.config_path.empty())
        apply_config_file(cmd, cfg.config_path);
    if (exponent->parsed()) return cmd_exponent(cfg);
    if (regime->parsed()) return cmd_regime(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (figure->parsed()) return cmd_figure(cfg);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
