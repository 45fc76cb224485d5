#include "platoon/cli.hpp"

#include "platoon/allocation.hpp"
#include "platoon/formation.hpp"
#include "platoon/oracle.hpp"
#include "platoon/rational.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace platoon::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Every option is kept as raw text so that values coming from flags and
// from the JSON config file go through the same exact parsing.
struct RawOptions {
  std::string ne, nf, eps_e, eps_f, max_size, m_range, lambdas, schemes;
  std::string format, out_dir, precision, v_total, payoffs_file, config_file;
  std::string partition_guard, subset_guard;
  bool exact = false;
  bool allow_infeasible_skip = false;
};

struct OptionBinding {
  CLI::Option* option;
  std::string* value;
  const char* config_key;
};

struct FlagBinding {
  CLI::Option* option;
  bool* value;
  const char* config_key;
};

struct SubcommandState {
  CLI::App* app = nullptr;
  RawOptions raw;
  std::vector<OptionBinding> options;
  std::vector<FlagBinding> flags;
};

void add_common_options(SubcommandState& state) {
  CLI::App* cmd = state.app;
  RawOptions& raw = state.raw;
  auto opt = [&](const char* flag, std::string& target, const char* key, const char* help) {
    state.options.push_back({cmd->add_option(flag, target, help), &target, key});
  };
  opt("--ne", raw.ne, "ne", "number of electric trucks");
  opt("--nf", raw.nf, "nf", "number of fuel trucks");
  opt("--eps-e", raw.eps_e, "eps_e", "benefit rate of an electric follower");
  opt("--eps-f", raw.eps_f, "eps_f", "benefit rate of a fuel follower");
  opt("--max-size", raw.max_size, "max_size", "platoon size limit M");
  opt("--m-range", raw.m_range, "m_range", "inclusive size-limit sweep, e.g. 3..9");
  opt("--lambda", raw.lambdas, "lambda", "comma-separated LS subsidy fractions");
  opt("--scheme", raw.schemes, "schemes", "comma-separated scheme names");
  opt("--format", raw.format, "format", "output format: csv or json");
  opt("--out", raw.out_dir, "out", "output directory for emitted files");
  opt("--precision", raw.precision, "precision", "decimal places in output");
  opt("--v-total", raw.v_total, "v_total", "override the distributed total benefit");
  opt("--payoffs", raw.payoffs_file, "payoffs", "JSON file holding a payoff vector");
  opt("--partition-guard", raw.partition_guard, "partition_guard",
      "fleet size cap for partition enumeration");
  opt("--subset-guard", raw.subset_guard, "subset_guard",
      "fleet size cap for subset enumeration");
  cmd->add_option("--config", raw.config_file, "JSON config file; flags take precedence");
  state.flags.push_back(
      {cmd->add_flag("--exact", raw.exact, "emit exact fractions instead of decimals"),
       &raw.exact, "exact"});
  state.flags.push_back({cmd->add_flag("--allow-infeasible-skip", raw.allow_infeasible_skip,
                                       "report infeasible settings and exit 0"),
                         &raw.allow_infeasible_skip, "allow_infeasible_skip"});
}

std::string json_scalar_to_string(const ordered_json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();  // shortest round-trip text for numbers and bools
}

void merge_config(SubcommandState& state) {
  if (state.raw.config_file.empty()) return;
  std::ifstream in(state.raw.config_file);
  if (!in) throw std::domain_error("cannot open config file: " + state.raw.config_file);
  ordered_json config;
  try {
    in >> config;
  } catch (const std::exception& e) {
    throw std::domain_error("malformed config file: " + std::string(e.what()));
  }
  if (!config.is_object()) throw std::domain_error("config file must hold a JSON object");
  for (const OptionBinding& binding : state.options) {
    if (binding.option->count() > 0) continue;
    if (auto it = config.find(binding.config_key); it != config.end())
      *binding.value = json_scalar_to_string(*it);
  }
  for (const FlagBinding& binding : state.flags) {
    if (binding.option->count() > 0) continue;
    if (auto it = config.find(binding.config_key); it != config.end()) {
      if (!it->is_boolean()) throw std::domain_error(std::string("config key '") +
                                                     binding.config_key + "' must be boolean");
      *binding.value = it->get<bool>();
    }
  }

  // A size-limit flag overrides the config's alternative key, so a config
  // max_size and a command-line --m-range (or vice versa) do not clash.
  auto binding_for = [&state](const std::string& key) -> OptionBinding* {
    for (OptionBinding& binding : state.options)
      if (key == binding.config_key) return &binding;
    return nullptr;
  };
  OptionBinding* max_size = binding_for("max_size");
  OptionBinding* m_range = binding_for("m_range");
  if (max_size != nullptr && m_range != nullptr) {
    if (max_size->option->count() > 0 && m_range->option->count() == 0)
      m_range->value->clear();
    if (m_range->option->count() > 0 && max_size->option->count() == 0)
      max_size->value->clear();
  }
}

struct RunConfig {
  int n_e = 0;
  int n_f = 0;
  Rational eps_e;
  Rational eps_f;
  std::vector<int> m_values;
  std::vector<Rational> lambdas;
  std::vector<BaselineScheme> schemes;
  std::string out_dir = ".";
  bool json_format = false;
  int precision = 6;
  bool exact = false;
  bool allow_infeasible_skip = false;
  int partition_guard = oracle::kDefaultPartitionGuard;
  int subset_guard = oracle::kDefaultSubsetGuard;
  std::optional<Rational> v_total;
  std::string payoffs_file;
};

int parse_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::domain_error(std::string("cannot parse ") + what + ": '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

RunConfig materialize(const RawOptions& raw) {
  RunConfig cfg;
  auto require = [](const std::string& value, const char* flag, const char* key) {
    if (value.empty())
      throw std::domain_error(std::string("missing required option ") + flag +
                              " (config key '" + key + "')");
    return value;
  };
  cfg.n_e = parse_int(require(raw.ne, "--ne", "ne"), "--ne");
  cfg.n_f = parse_int(require(raw.nf, "--nf", "nf"), "--nf");
  cfg.eps_e = parse_rational(require(raw.eps_e, "--eps-e", "eps_e"));
  cfg.eps_f = parse_rational(require(raw.eps_f, "--eps-f", "eps_f"));

  if (!raw.max_size.empty() && !raw.m_range.empty())
    throw std::domain_error("--max-size and --m-range are mutually exclusive");
  if (!raw.max_size.empty()) {
    cfg.m_values = {parse_int(raw.max_size, "--max-size")};
  } else if (!raw.m_range.empty()) {
    const auto dots = raw.m_range.find("..");
    if (dots == std::string::npos)
      throw std::domain_error("--m-range expects the form A..B, got '" + raw.m_range + "'");
    const int from = parse_int(raw.m_range.substr(0, dots), "--m-range");
    const int to = parse_int(raw.m_range.substr(dots + 2), "--m-range");
    if (from > to) throw std::domain_error("--m-range bounds are reversed");
    for (int m = from; m <= to; ++m) cfg.m_values.push_back(m);
  }

  const std::string lambdas = raw.lambdas.empty() ? "0.2" : raw.lambdas;
  for (const std::string& item : split(lambdas, ',')) cfg.lambdas.push_back(parse_rational(item));

  const std::string schemes = raw.schemes.empty() ? "F-ES,P-ES,FO,TP,LS" : raw.schemes;
  for (const std::string& item : split(schemes, ',')) {
    auto scheme = parse_scheme(item);
    if (!scheme) throw std::domain_error("unknown scheme: '" + item + "'");
    cfg.schemes.push_back(*scheme);
  }

  const std::string format = raw.format.empty() ? "csv" : raw.format;
  if (format == "json") cfg.json_format = true;
  else if (format != "csv") throw std::domain_error("unknown format: '" + format + "'");

  if (!raw.out_dir.empty()) cfg.out_dir = raw.out_dir;
  if (!raw.precision.empty()) {
    cfg.precision = parse_int(raw.precision, "--precision");
    if (cfg.precision < 0) throw std::domain_error("--precision must be nonnegative");
  }
  if (!raw.partition_guard.empty())
    cfg.partition_guard = parse_int(raw.partition_guard, "--partition-guard");
  if (!raw.subset_guard.empty())
    cfg.subset_guard = parse_int(raw.subset_guard, "--subset-guard");
  if (!raw.v_total.empty()) cfg.v_total = parse_rational(raw.v_total);
  cfg.payoffs_file = raw.payoffs_file;
  cfg.exact = raw.exact;
  cfg.allow_infeasible_skip = raw.allow_infeasible_skip;
  return cfg;
}

int single_m(const RunConfig& cfg) {
  if (cfg.m_values.size() != 1)
    throw std::domain_error("this subcommand needs exactly one size limit (--max-size)");
  return cfg.m_values.front();
}

std::vector<int> sweep_ms(const RunConfig& cfg) {
  if (cfg.m_values.empty())
    throw std::domain_error("no size limits given (--max-size or --m-range)");
  return cfg.m_values;
}

FleetSpec fleet_for(const RunConfig& cfg, int m) {
  return FleetSpec(cfg.n_e, cfg.n_f, cfg.eps_e, cfg.eps_f, m);
}

std::string money(const RunConfig& cfg, const Rational& value) {
  return cfg.exact ? format_fraction(value) : format_fixed(value, cfg.precision);
}

std::string signature_list(const std::vector<CoalitionSignature>& sigs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    if (i > 0) os << ' ';
    os << '(' << sigs[i].c_e << ',' << sigs[i].c_f << ')';
  }
  return os.str();
}

ordered_json signature_json(const std::vector<CoalitionSignature>& sigs) {
  ordered_json out = ordered_json::array();
  for (const CoalitionSignature& sig : sigs) out.push_back({sig.c_e, sig.c_f});
  return out;
}

void write_file(const fs::path& path, const std::string& content, std::ostream& out) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::domain_error("cannot write output file: " + path.string());
  file << content;
  out << "wrote " << path.string() << "\n";
}

fs::path output_path(const RunConfig& cfg, const char* stem) {
  fs::create_directories(cfg.out_dir);
  return fs::path(cfg.out_dir) / (std::string(stem) + (cfg.json_format ? ".json" : ".csv"));
}

std::string dump_json(const ordered_json& value) { return value.dump(2) + "\n"; }

// ---- emitters ------------------------------------------------------------

struct Table1Row {
  int m = 0;
  bool ok = false;
  Rational index, eps, v, x_e, x_f;
};

void emit_table1(const RunConfig& cfg, const std::vector<Table1Row>& rows, std::ostream& out) {
  if (cfg.json_format) {
    ordered_json doc = ordered_json::array();
    for (const Table1Row& row : rows) {
      ordered_json item;
      item["M"] = row.m;
      item["I_stable"] = row.ok ? ordered_json(money(cfg, row.index)) : ordered_json(nullptr);
      item["eps_star"] = row.ok ? ordered_json(money(cfg, row.eps)) : ordered_json(nullptr);
      item["V"] = row.ok ? ordered_json(money(cfg, row.v)) : ordered_json(nullptr);
      item["x_e"] = row.ok ? ordered_json(money(cfg, row.x_e)) : ordered_json(nullptr);
      item["x_f"] = row.ok ? ordered_json(money(cfg, row.x_f)) : ordered_json(nullptr);
      item["status"] = row.ok ? "ok" : "infeasible";
      doc.push_back(std::move(item));
    }
    write_file(output_path(cfg, "table1"), dump_json(doc), out);
    return;
  }
  std::ostringstream os;
  os << "M,I_stable,eps_star,V,x_e,x_f,status\n";
  for (const Table1Row& row : rows) {
    os << row.m << ',';
    if (row.ok) {
      os << money(cfg, row.index) << ',' << money(cfg, row.eps) << ',' << money(cfg, row.v)
         << ',' << money(cfg, row.x_e) << ',' << money(cfg, row.x_f) << ",ok\n";
    } else {
      os << ",,,,,infeasible\n";
    }
  }
  write_file(output_path(cfg, "table1"), os.str(), out);
}

struct BaselineRow {
  int m = 0;
  std::string scheme;
  std::optional<Rational> lambda;
  Rational eps;
  Rational index;
  PayoffVector payoffs;
};

void emit_baselines(const RunConfig& cfg, const std::vector<BaselineRow>& rows,
                    std::ostream& out) {
  if (cfg.json_format) {
    ordered_json doc = ordered_json::array();
    for (const BaselineRow& row : rows) {
      ordered_json item;
      item["M"] = row.m;
      item["scheme"] = row.scheme;
      item["lambda"] = row.lambda ? ordered_json(money(cfg, *row.lambda)) : ordered_json(nullptr);
      item["eps_of_x"] = money(cfg, row.eps);
      item["stability_index"] = money(cfg, row.index);
      ordered_json payoffs = ordered_json::array();
      for (const Rational& p : row.payoffs) payoffs.push_back(format_fraction(p));
      item["payoffs"] = std::move(payoffs);
      doc.push_back(std::move(item));
    }
    write_file(output_path(cfg, "baselines"), dump_json(doc), out);
    return;
  }
  std::ostringstream os;
  os << "M,scheme,lambda,eps_of_x,stability_index\n";
  for (const BaselineRow& row : rows) {
    os << row.m << ',' << row.scheme << ',';
    if (row.lambda) os << money(cfg, *row.lambda);
    os << ',' << money(cfg, row.eps) << ',' << money(cfg, row.index) << '\n';
  }
  write_file(output_path(cfg, "baselines"), os.str(), out);
}

struct HistogramRow {
  Rational benefit;
  long count = 0;
  Rational index;
};

void emit_histogram(const RunConfig& cfg, const std::vector<HistogramRow>& rows,
                    std::ostream& out) {
  if (cfg.json_format) {
    ordered_json doc = ordered_json::array();
    for (const HistogramRow& row : rows) {
      ordered_json item;
      item["benefit"] = money(cfg, row.benefit);
      item["class_count"] = row.count;
      item["stability_index"] = money(cfg, row.index);
      doc.push_back(std::move(item));
    }
    write_file(output_path(cfg, "histogram"), dump_json(doc), out);
    return;
  }
  std::ostringstream os;
  os << "benefit,class_count,stability_index\n";
  for (const HistogramRow& row : rows)
    os << money(cfg, row.benefit) << ',' << row.count << ',' << money(cfg, row.index) << '\n';
  write_file(output_path(cfg, "histogram"), os.str(), out);
}

// ---- subcommand bodies ----------------------------------------------------

int cmd_form(const RunConfig& cfg, std::ostream& out) {
  const int m = single_m(cfg);
  const FleetSpec fleet = fleet_for(cfg, m);
  const FeasibilityReport report = feasibility(fleet);
  const FormationCounts counts = optimal_counts(fleet);
  const CoalitionStructure structure = build_optimal_structure(fleet);

  if (cfg.json_format) {
    ordered_json doc;
    doc["feasible"] = true;
    doc["p_min"] = report.p_min;
    doc["p_max"] = report.p_max;
    doc["p_star"] = counts.p_star;
    doc["l_e_star"] = counts.l_e_star;
    doc["l_f_star"] = counts.l_f_star;
    doc["f_e"] = counts.f_e;
    doc["f_f"] = counts.f_f;
    doc["v_star"] = money(cfg, counts.v_star);
    ordered_json platoons = ordered_json::array();
    for (const Platoon& p : structure.platoons)
      platoons.push_back({{"leader", p.leader}, {"members", p.members}});
    doc["platoons"] = std::move(platoons);
    out << dump_json(doc);
    return kExitOk;
  }

  out << "feasible: p_min=" << report.p_min << " p_max=" << report.p_max << "\n";
  out << "p_star=" << counts.p_star << " l_e_star=" << counts.l_e_star
      << " l_f_star=" << counts.l_f_star << " f_e=" << counts.f_e << " f_f=" << counts.f_f
      << "\n";
  out << "v_star=" << money(cfg, counts.v_star) << "\n";
  out << "structure=" << format_structure(structure) << "\n";
  out << "leaders=";
  for (std::size_t i = 0; i < structure.platoons.size(); ++i) {
    if (i > 0) out << ',';
    out << structure.platoons[i].leader;
  }
  out << "\n";
  return kExitOk;
}

int cmd_least_core(const RunConfig& cfg, std::ostream& out) {
  const int m = single_m(cfg);
  const FleetSpec fleet = fleet_for(cfg, m);
  const Rational v_total = cfg.v_total ? *cfg.v_total : optimal_counts(fleet).v_star;
  const LeastCoreSolution solution = solve_type_least_core(fleet, v_total);
  const bool has_index = v_total > 0;  // the index is undefined at zero total
  const Rational index = has_index ? stability_index(solution.epsilon_star, v_total)
                                   : Rational(0);

  if (cfg.json_format) {
    ordered_json doc;
    doc["M"] = m;
    doc["v_total"] = money(cfg, v_total);
    doc["x_e"] = money(cfg, solution.allocation.x_e);
    doc["x_f"] = money(cfg, solution.allocation.x_f);
    doc["eps_star"] = money(cfg, solution.epsilon_star);
    doc["x_e_interval"] = {money(cfg, solution.x_e_low), money(cfg, solution.x_e_high)};
    doc["stability_index"] = has_index ? ordered_json(money(cfg, index)) : ordered_json(nullptr);
    doc["binding"] = signature_json(solution.binding);
    out << dump_json(doc);
    return kExitOk;
  }

  out << "m=" << m << " v_total=" << money(cfg, v_total) << "\n";
  out << "x_e=" << money(cfg, solution.allocation.x_e) << "\n";
  out << "x_f=" << money(cfg, solution.allocation.x_f) << "\n";
  out << "eps_star=" << money(cfg, solution.epsilon_star) << "\n";
  out << "x_e_interval=[" << money(cfg, solution.x_e_low) << ","
      << money(cfg, solution.x_e_high) << "]\n";
  out << "stability_index=" << (has_index ? money(cfg, index) : "undefined") << "\n";
  out << "binding=" << signature_list(solution.binding) << "\n";
  return kExitOk;
}

std::vector<BaselineRow> baseline_rows(const RunConfig& cfg, const FleetSpec& fleet) {
  const CoalitionStructure structure = build_optimal_structure(fleet);
  const Rational v_total = structure_value(structure);
  std::vector<BaselineRow> rows;
  for (BaselineScheme scheme : cfg.schemes) {
    std::vector<std::optional<Rational>> lambdas{std::nullopt};
    if (scheme == BaselineScheme::LeaderSubsidy) {
      lambdas.clear();
      for (const Rational& lambda : cfg.lambdas) lambdas.push_back(lambda);
    }
    for (const std::optional<Rational>& lambda : lambdas) {
      BaselineRow row;
      row.m = fleet.max_size;
      row.scheme = std::string(scheme_name(scheme));
      row.lambda = lambda;
      row.payoffs = baseline_allocate(scheme, lambda, structure);
      const ExcessReport excess = epsilon_of(row.payoffs, fleet);
      row.eps = excess.epsilon;
      row.index = stability_index(excess.epsilon, v_total);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

int cmd_baselines(const RunConfig& cfg, std::ostream& out) {
  const int m = single_m(cfg);
  const FleetSpec fleet = fleet_for(cfg, m);
  const std::vector<BaselineRow> rows = baseline_rows(cfg, fleet);
  for (const BaselineRow& row : rows) {
    out << "m=" << row.m << " scheme=" << row.scheme;
    if (row.lambda) out << " lambda=" << money(cfg, *row.lambda);
    out << " eps_of_x=" << money(cfg, row.eps) << " index=" << money(cfg, row.index) << "\n";
  }
  emit_baselines(cfg, rows, out);
  return kExitOk;
}

PayoffVector read_payoffs(const std::string& path) {
  if (path.empty()) throw std::domain_error("missing required option --payoffs");
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open payoff file: " + path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw std::domain_error("malformed payoff file: " + std::string(e.what()));
  }
  if (doc.is_object() && doc.contains("payoffs")) doc = doc["payoffs"];
  if (!doc.is_array()) throw std::domain_error("payoff file must hold an array of values");
  PayoffVector payoffs;
  for (const ordered_json& item : doc) payoffs.push_back(parse_rational(json_scalar_to_string(item)));
  return payoffs;
}

int cmd_stability(const RunConfig& cfg, std::ostream& out) {
  const int m = single_m(cfg);
  const FleetSpec fleet = fleet_for(cfg, m);
  const PayoffVector payoffs = read_payoffs(cfg.payoffs_file);
  const Rational v_total = cfg.v_total ? *cfg.v_total : optimal_counts(fleet).v_star;
  const StabilityReport report = stability_report(payoffs, fleet, v_total);

  if (cfg.json_format) {
    ordered_json doc;
    doc["epsilon_of_x"] = money(cfg, report.epsilon_of_x);
    doc["v_total"] = money(cfg, report.v_total);
    doc["index_percent"] = money(cfg, report.index_percent);
    doc["worst"] = signature_json(report.worst);
    out << dump_json(doc);
    return kExitOk;
  }
  out << "epsilon_of_x=" << money(cfg, report.epsilon_of_x) << "\n";
  out << "v_total=" << money(cfg, report.v_total) << "\n";
  out << "index_percent=" << money(cfg, report.index_percent) << "\n";
  out << "worst=" << signature_list(report.worst) << "\n";
  return kExitOk;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const int m = single_m(cfg);
  const FleetSpec fleet = fleet_for(cfg, m);
  const oracle::BenefitHistogram histogram =
      oracle::benefit_distribution(fleet, cfg.partition_guard);
  if (histogram.entries.empty()) {
    throw InfeasibleError(feasibility(fleet));
  }
  std::vector<HistogramRow> rows;
  for (const auto& [benefit, count] : histogram.entries) {
    HistogramRow row;
    row.benefit = benefit;
    row.count = count;
    row.index = stability_index(solve_type_least_core(fleet, benefit).epsilon_star, benefit);
    rows.push_back(std::move(row));
  }
  for (const HistogramRow& row : rows)
    out << "benefit=" << money(cfg, row.benefit) << " count=" << row.count
        << " index=" << money(cfg, row.index) << "\n";
  emit_histogram(cfg, rows, out);
  return kExitOk;
}

Table1Row table1_row(const RunConfig& cfg, int m) {
  Table1Row row;
  row.m = m;
  try {
    const FleetSpec fleet = fleet_for(cfg, m);
    const FormationCounts counts = optimal_counts(fleet);
    const LeastCoreSolution solution = solve_type_least_core(fleet, counts.v_star);
    row.ok = true;
    row.index = stability_index(solution.epsilon_star, counts.v_star);
    row.eps = solution.epsilon_star;
    row.v = counts.v_star;
    row.x_e = solution.allocation.x_e;
    row.x_f = solution.allocation.x_f;
  } catch (const InfeasibleError&) {
    row.ok = false;  // sweeps keep going and record the status instead
  }
  return row;
}

int cmd_report_table1(const RunConfig& cfg, std::ostream& out) {
  std::vector<Table1Row> rows;
  for (int m : sweep_ms(cfg)) rows.push_back(table1_row(cfg, m));
  emit_table1(cfg, rows, out);
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  std::vector<Table1Row> rows;
  std::vector<BaselineRow> baselines;
  for (int m : sweep_ms(cfg)) {
    Table1Row row = table1_row(cfg, m);
    if (row.ok) {
      const FleetSpec fleet = fleet_for(cfg, m);
      std::vector<BaselineRow> more = baseline_rows(cfg, fleet);
      baselines.insert(baselines.end(), std::make_move_iterator(more.begin()),
                       std::make_move_iterator(more.end()));
    }
    rows.push_back(std::move(row));
  }
  emit_table1(cfg, rows, out);
  emit_baselines(cfg, baselines, out);
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

void check(std::vector<std::string>& mismatches, bool ok, int m, const std::string& what) {
  if (!ok) mismatches.push_back("M=" + std::to_string(m) + ": " + what);
}

PayoffVector random_payoffs(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> dist(0, 120);
  PayoffVector payoffs;
  payoffs.reserve(n);
  for (int i = 0; i < n; ++i) payoffs.push_back(Rational(dist(rng), 1000));
  return payoffs;
}

void verify_one_m(const RunConfig& cfg, int m, std::vector<std::string>& mismatches,
                  std::ostream& out) {
  const FleetSpec fleet = fleet_for(cfg, m);
  const FeasibilityReport report = feasibility(fleet);
  const auto partitions = oracle::enumerate_signature_partitions(fleet, cfg.partition_guard);

  check(mismatches, report.feasible == !partitions.empty(), m,
        "feasibility test disagrees with exhaustive enumeration");
  if (!report.feasible) {
    bool threw = false;
    try {
      optimal_counts(fleet);
    } catch (const InfeasibleError&) {
      threw = true;
    }
    check(mismatches, threw, m, "optimal_counts accepted an infeasible fleet");
    out << "m=" << m << ": consistent (infeasible)\n";
    return;
  }

  const FormationCounts counts = optimal_counts(fleet);
  const CoalitionStructure built = build_optimal_structure(fleet);
  check(mismatches, validate_structure(built).empty(), m, "built structure is invalid");
  check(mismatches, structure_value(built) == counts.v_star, m,
        "built structure misses the closed-form benefit");

  const oracle::BruteForceBest best = oracle::brute_force_best(fleet, cfg.partition_guard);
  check(mismatches, best.feasible && best.max_benefit == counts.v_star, m,
        "closed-form optimum disagrees with brute force");

  if (m < fleet.total()) {
    for (const auto& partition : partitions) {
      const int parts = static_cast<int>(partition.parts.size());
      check(mismatches, report.p_min <= parts && parts <= report.p_max, m,
            "enumerated partition breaks the platoon count bounds");
    }
  }
  for (const auto& partition : partitions) {
    int with_electric = 0;
    for (const CoalitionSignature& part : partition.parts)
      if (part.c_e > 0) ++with_electric;
    const int p = static_cast<int>(partition.parts.size());
    const Rational expected = fleet.eps_e * (fleet.n_e - with_electric) +
                              fleet.eps_f * (fleet.n_f - (p - with_electric));
    check(mismatches, oracle::partition_benefit(partition, fleet) == expected, m,
          "partition benefit does not decompose by leader counts");
  }

  const LeastCoreSolution solution = solve_type_least_core(fleet, counts.v_star);
  check(mismatches,
        solution.allocation.x_e * fleet.n_e + solution.allocation.x_f * fleet.n_f ==
            counts.v_star,
        m, "least-core solution breaks the efficiency constraint");
  for (const CoalitionSignature& sig : deviation_signatures(fleet)) {
    check(mismatches,
          solution.allocation.x_e * sig.c_e + solution.allocation.x_f * sig.c_f >=
              coalition_value(sig, fleet) - solution.epsilon_star,
          m, "least-core solution violates a deviation constraint");
  }
  const PayoffVector induced = induced_payoffs(solution.allocation, fleet);
  check(mismatches, epsilon_of(induced, fleet).epsilon == solution.epsilon_star, m,
        "reported radius disagrees with the relaxation of the returned allocation");

  std::vector<PayoffVector> vectors{induced};
  for (BaselineScheme scheme : cfg.schemes) {
    if (scheme == BaselineScheme::LeaderSubsidy) {
      for (const Rational& lambda : cfg.lambdas)
        vectors.push_back(baseline_allocate(scheme, lambda, built));
    } else {
      vectors.push_back(baseline_allocate(scheme, std::nullopt, built));
    }
  }
  std::mt19937 rng(1234u + static_cast<unsigned>(m));
  for (int i = 0; i < 20; ++i) vectors.push_back(random_payoffs(rng, fleet.total()));

  if (fleet.total() <= cfg.subset_guard) {
    for (const PayoffVector& payoffs : vectors) {
      check(mismatches,
            epsilon_of(payoffs, fleet).epsilon ==
                oracle::brute_force_epsilon(payoffs, fleet, cfg.subset_guard),
            m, "type-signature relaxation disagrees with subset enumeration");
    }
  }

  out << "m=" << m << ": ok (partitions=" << partitions.size() << ")\n";
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> mismatches;
  for (int m : sweep_ms(cfg)) verify_one_m(cfg, m, mismatches, out);
  if (!mismatches.empty()) {
    for (const std::string& line : mismatches) err << "mismatch: " << line << "\n";
    return kExitVerifyMismatch;
  }
  out << "verify: all checks passed\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"optimal platoon formation and stable benefit allocation "
               "for mixed-energy truck fleets"};
  app.name("platoon");
  app.require_subcommand(1);

  struct CommandSpec {
    const char* name;
    const char* help;
  };
  const CommandSpec specs[] = {
      {"form", "print the optimal formation counts and structure"},
      {"least-core", "solve the type-based least-core allocation"},
      {"baselines", "evaluate the reference allocation schemes"},
      {"stability", "score a payoff vector read from a file"},
      {"enumerate", "exhaustive benefit histogram with per-class stability"},
      {"sweep", "least-core plus baselines over a range of size limits"},
      {"verify", "cross-check closed forms against brute force"},
      {"report-table1", "one summary row per size limit"},
  };

  std::vector<SubcommandState> states(std::size(specs));
  for (std::size_t i = 0; i < std::size(specs); ++i) {
    states[i].app = app.add_subcommand(specs[i].name, specs[i].help);
    add_common_options(states[i]);
  }

  std::vector<std::string> argv_storage{"platoon"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitDomainError;
  }

  SubcommandState* active = nullptr;
  for (SubcommandState& state : states)
    if (state.app->parsed()) active = &state;
  if (active == nullptr) {
    err << "error: no subcommand selected\n";
    return kExitDomainError;
  }

  try {
    merge_config(*active);
    const RunConfig cfg = materialize(active->raw);
    const std::string name = active->app->get_name();
    if (name == "form") return cmd_form(cfg, out);
    if (name == "least-core") return cmd_least_core(cfg, out);
    if (name == "baselines") return cmd_baselines(cfg, out);
    if (name == "stability") return cmd_stability(cfg, out);
    if (name == "enumerate") return cmd_enumerate(cfg, out);
    if (name == "sweep") return cmd_sweep(cfg, out);
    if (name == "verify") return cmd_verify(cfg, out, err);
    if (name == "report-table1") return cmd_report_table1(cfg, out);
    err << "error: unknown subcommand\n";
    return kExitDomainError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.report().reason << "\n";
    const RawOptions& raw = active->raw;
    return raw.allow_infeasible_skip ? kExitOk : kExitInfeasible;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    for (const Violation& violation : e.violations())
      err << "  " << violation_text(violation) << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace platoon::cli
