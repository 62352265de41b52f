#include "frogcrit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "frogcrit/critical.hpp"
#include "frogcrit/errors.hpp"
#include "frogcrit/renewal.hpp"
#include "frogcrit/simulator.hpp"
#include "render.hpp"

namespace frogcrit::cli {
namespace {

constexpr std::int64_t kDefaultReplicates = 100'000;
constexpr std::int64_t kDefaultHorizon = 400;

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(fmt::format("bad integer '{}' in d list", s));
  return v;
}

Cell opt(const std::optional<double> &v) {
  return v ? Cell(*v) : Cell(std::monostate{});
}

Table qc_table(int d, double c, double tol) {
  const CriticalResult r = solve_qc(d, c, tol);
  Table t{"qc.v1", {}, {"d", "c", "q_c", "residual", "lower_c2", "upper_c2", "lower_c3", "upper_c3"}, {}};
  t.rows.push_back({std::int64_t{r.d}, r.c, r.q_c, r.residual, r.lower_c2, r.upper_c2, r.lower_c3,
                    opt(r.upper_c3)});
  return t;
}

Table model_table(const std::string &model, const std::vector<int> &ds) {
  Table t;
  if (model == "cone") {
    t.schema = "table.cone.v1";
    t.columns = {"d", "lower_c2", "lower_prop", "lower_known", "upper_c2", "upper_prop", "upper_known"};
    for (const auto &r : table_cone(ds))
      t.rows.push_back({std::int64_t{r.d}, r.lower_c2, r.lower_prop, r.lower_known, r.upper_c2,
                        r.upper_prop, r.upper_known});
  } else if (model == "original" || model == "selfavoiding") {
    const bool original = model == "original";
    t.schema = original ? "table.original.v1" : "table.selfavoiding.v1";
    t.columns = {"d", "upper_c2", "upper_prop", "upper_known"};
    for (const auto &r : table_frogs(ds)) {
      if (original)
        t.rows.push_back({std::int64_t{r.d}, r.original_c2, r.original_prop, r.original_known});
      else
        t.rows.push_back({std::int64_t{r.d}, r.self_avoiding_c2, r.self_avoiding_prop,
                          r.self_avoiding_known});
    }
  } else {
    t.schema = "table.removal.v1";
    t.columns = {"d", "lower", "upper"};
    for (const int d : ds) {
      const ModelBounds b = removal_bounds(d);
      t.rows.push_back({std::int64_t{d}, opt(b.lower), b.upper});
    }
  }
  return t;
}

Table gamma_table(double c, double q, double tol) {
  const HazardSpec spec(c, q);
  const RateResult r = convergence_rate(spec, tol);
  Table t{"gamma.v1", {}, {"c", "q", "gamma", "residual", "bracket_lo", "bracket_hi", "truncation_K"}, {}};
  t.rows.push_back({c, q, r.gamma, r.residual, r.bracket.first, r.bracket.second,
                    std::int64_t{r.truncation_K}});
  return t;
}

Table frog_table(int d, double c, double q, std::int64_t max_depth, std::int64_t replicates,
                 std::uint64_t seed, std::int64_t horizon, std::size_t cap) {
  FrogSimConfig config{TreeParams(d, c, q), max_depth, replicates, seed, cap};
  const double q_c = solve_qc(d, c).q_c;
  const Growth growth = growth_classifier(d, HazardSpec(c, q), horizon);
  const SimOutcome out = simulate_frog(config);
  Table t;
  t.schema = "simulate.frog.v1";
  t.context = {{"d", std::int64_t{d}},
               {"c", c},
               {"q", q},
               {"max_depth", max_depth},
               {"replicates", replicates},
               {"seed", std::to_string(seed)},
               {"q_c", q_c},
               {"renewal_horizon", horizon},
               {"renewal_growth", std::string(to_string(growth))}};
  t.columns = {"depth", "exactly", "at_least", "fraction_at_least"};
  for (std::int64_t k = 0; k <= max_depth; ++k) {
    const auto i = static_cast<std::size_t>(k);
    t.rows.push_back({k, out.reached_depth[i], out.branch_hits[i], out.fraction_reaching(k)});
  }
  return t;
}

Table firework_table(double c, double q, std::int64_t n, std::int64_t replicates, std::uint64_t seed) {
  const HazardSpec spec(c, q);
  const SimOutcome out = simulate_firework(spec, n, replicates, seed);
  const RenewalProbs u = renewal_probabilities(spec, n);
  Table t;
  t.schema = "simulate.firework.v1";
  t.context = {{"c", c},
               {"q", q},
               {"n", n},
               {"replicates", replicates},
               {"seed", std::to_string(seed)}};
  t.columns = {"site", "hits", "p_hat", "se", "u_n", "z"};
  const auto reps = static_cast<double>(replicates);
  for (std::int64_t k = 1; k <= n; ++k) {
    const double p = out.fraction_reaching(k);
    const double un = u[k];
    const double se = std::sqrt(un * (1.0 - un) / reps);
    const double z = se > 0.0 ? (p - un) / se : (p == un ? 0.0 : std::copysign(INFINITY, p - un));
    t.rows.push_back({k, out.branch_hits[static_cast<std::size_t>(k)], p, se, un, z});
  }
  return t;
}

const std::map<std::string, OutputFormat> kFormats{
    {"plain", OutputFormat::PlainTable}, {"csv", OutputFormat::CSV}, {"jsonl", OutputFormat::JSONLines}};

void add_format(CLI::App *cmd, OutputFormat &format) {
  cmd->add_option("--format", format, "Output format: plain, csv or jsonl")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

} // namespace

std::vector<int> parse_d_list(const std::string &text) {
  std::vector<int> ds;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view token = rest.substr(0, comma);
    if (token.empty())
      throw std::invalid_argument("empty entry in d list");
    if (const auto dots = token.find(".."); dots != std::string_view::npos) {
      const int a = parse_int(token.substr(0, dots));
      const int b = parse_int(token.substr(dots + 2));
      if (b < a)
        throw std::invalid_argument(fmt::format("descending range '{}' in d list", token));
      for (int d = a; d <= b; ++d)
        ds.push_back(d);
    } else {
      ds.push_back(parse_int(token));
    }
    if (comma == std::string_view::npos)
      break;
    rest.remove_prefix(comma + 1);
  }
  return ds;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Critical parameters of frog models and cone percolation on directed trees", "frogcrit"};
  app.require_subcommand(1);

  OutputFormat format = OutputFormat::PlainTable;
  int d = 0;
  double c = 1.0;
  double q = 0.0;
  double tol = kDefaultTol;
  std::string model;
  std::string d_list;
  std::int64_t replicates = kDefaultReplicates;
  std::int64_t max_depth = 0;
  std::int64_t n = 0;
  std::int64_t horizon = kDefaultHorizon;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultActivationCap;

  auto *qc = app.add_subcommand("qc", "Solve for the critical parameter q_c(d, c)");
  qc->add_option("--d", d, "Tree degree")->required();
  qc->add_option("--c", c, "Hazard scale")->required();
  qc->add_option("--tol", tol, "Series truncation tolerance")->capture_default_str();
  add_format(qc, format);

  auto *table = app.add_subcommand("table", "Bound tables for one model");
  table->add_option("--model", model, "cone, original, selfavoiding or removal")
      ->required()
      ->check(CLI::IsMember({"cone", "original", "selfavoiding", "removal"}));
  table->add_option("--d", d_list, "Degrees, e.g. 2..10,15,20")->required();
  add_format(table, format);

  auto *gamma = app.add_subcommand("gamma", "Exponential growth rate of the renewal sequence");
  gamma->add_option("--c", c, "Hazard scale")->required();
  gamma->add_option("--q", q, "Hazard ratio")->required();
  gamma->add_option("--tol", tol, "Series truncation tolerance")->capture_default_str();
  add_format(gamma, format);

  auto *simulate = app.add_subcommand("simulate", "Seeded Monte Carlo runs");
  simulate->require_subcommand(1);
  auto *frog = simulate->add_subcommand("frog", "Frog model on the directed tree");
  frog->add_option("--d", d, "Tree degree")->required();
  frog->add_option("--c", c, "Hazard scale")->required();
  frog->add_option("--q", q, "Hazard ratio")->required();
  frog->add_option("--max-depth", max_depth, "Deepest level tracked")->required();
  frog->add_option("--replicates", replicates)->capture_default_str();
  frog->add_option("--seed", seed)->capture_default_str();
  frog->add_option("--horizon", horizon, "Renewal horizon for the growth classification")
      ->capture_default_str();
  frog->add_option("--activation-cap", cap, "Abort a replicate past this many activations")
      ->capture_default_str();
  add_format(frog, format);
  auto *firework = simulate->add_subcommand("firework", "Firework process on the half-line");
  firework->add_option("--c", c, "Hazard scale")->required();
  firework->add_option("--q", q, "Hazard ratio")->required();
  firework->add_option("--n", n, "Last site observed")->required();
  firework->add_option("--replicates", replicates)->capture_default_str();
  firework->add_option("--seed", seed)->capture_default_str();
  add_format(firework, format);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    Table result;
    if (*qc) {
      result = qc_table(d, c, tol);
    } else if (*table) {
      result = model_table(model, parse_d_list(d_list));
    } else if (*gamma) {
      result = gamma_table(c, q, tol);
    } else if (*frog) {
      result = frog_table(d, c, q, max_depth, replicates, seed, horizon, cap);
    } else {
      result = firework_table(c, q, n, replicates, seed);
    }
    render(result, format, out);
    return kExitOk;
  } catch (const BracketError &e) {
    err << "error: " << e.what() << '\n';
    return kExitBracket;
  } catch (const MemoryCapError &e) {
    err << "error: " << e.what() << '\n';
    return kExitBracket;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

} // namespace frogcrit::cli
