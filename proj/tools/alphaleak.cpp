// Command-line front end: file-driven distributions and channels in, CSV or
// JSON measures out. See README.md for the schemas and subcommand list.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "alphaleak/errors.hpp"
#include "alphaleak/io.hpp"
#include "alphaleak/leakage.hpp"
#include "alphaleak/measures.hpp"
#include "alphaleak/oracle.hpp"

namespace {

using namespace alphaleak;

constexpr double kLn2 = 0.6931471805599453;

// nats cells are base-converted on request; plain cells (probabilities,
// multiplicative losses, indices) never are.
struct Cell {
  enum Kind { Text, Nats, Plain } kind = Text;
  std::string text;
  double num = 0.0;

  static Cell text_cell(std::string s) { return {Text, std::move(s), 0.0}; }
  static Cell nats(double v) { return {Nats, {}, v}; }
  static Cell plain(double v) { return {Plain, {}, v}; }
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

struct OutputOptions {
  std::string base = "nats";
  std::string format = "csv";
  std::string output_path;  // empty = stdout
};

double converted(const Cell& c, const OutputOptions& opts) {
  return c.kind == Cell::Nats && opts.base == "bits" ? c.num / kLn2 : c.num;
}

void emit(const Table& table, const OutputOptions& opts) {
  std::string out;
  if (opts.format == "csv") {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      out += (i ? "," : "") + table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i].kind == Cell::Text ? row[i].text
                                         : format_value(converted(row[i], opts));
      }
      out += '\n';
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json obj;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].kind == Cell::Text) {
          obj[table.header[i]] = row[i].text;
        } else {
          const double v = converted(row[i], opts);
          if (std::isinf(v)) {
            obj[table.header[i]] = "inf";
          } else {
            // Round through the 15-digit form so CSV and JSON agree.
            obj[table.header[i]] = std::strtod(format_value(v).c_str(), nullptr);
          }
        }
      }
      rows.push_back(std::move(obj));
    }
    out = rows.dump() + "\n";
  }
  if (opts.output_path.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(opts.output_path);
    if (!f) throw InvalidInput("OutputFile", "cannot write '" + opts.output_path + "'");
    f << out;
  }
}

ProbVec parse_binomial(const std::string& token) {
  const auto comma = token.find(',');
  if (comma == std::string::npos) {
    throw InvalidInput("InvalidParameter", "--binomial expects n,p");
  }
  try {
    const int n = std::stoi(token.substr(0, comma));
    const double p = std::stod(token.substr(comma + 1));
    return binomial_pmf(n, p);
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidInput("InvalidParameter", "--binomial expects n,p");
  }
}

ProbVec load_dist_input(const std::string& path, const std::string& binomial) {
  if (!binomial.empty()) return parse_binomial(binomial);
  if (path.empty()) {
    throw InvalidInput("InputFile", "need a distribution file or --binomial");
  }
  return load_distribution(path);
}

ChannelFile load_channel_any(const std::string& path) {
  {
    std::ifstream in(path);
    if (!in) throw InvalidInput("InputFile", "cannot open '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidInput("ParseError", std::string(e.what()));
    }
    if (j.contains("joint")) return load_joint(path);
  }
  ChannelFile cf = load_channel(path);
  if (cf.input_pmf_defaulted) {
    std::cerr << "notice: no input_pmf in '" << path
              << "', defaulting to the uniform prior\n";
  }
  return cf;
}

std::vector<Order> parse_orders(const std::vector<std::string>& tokens) {
  std::vector<Order> orders;
  orders.reserve(tokens.size());
  for (const auto& t : tokens) {
    Order o = Order::parse(t);
    if (o.is_finite() && std::abs(o.alpha() - 1.0) < 1e-6) {
      std::cerr << "warning: alpha = " << t
                << " is within 1e-6 of 1; the finite branch is evaluated as "
                   "written, not switched to the limit\n";
    }
    orders.push_back(o);
  }
  return orders;
}

std::uint64_t oracle_budget() {
  if (const char* env = std::getenv("ALPHALEAK_BUDGET")) {
    return std::strtoull(env, nullptr, 10);
  }
  return GridSpec{}.budget;
}

int run_verify(const OutputOptions& opts) {
  (void)opts;
  int failures = 0;
  auto report = [&](bool ok, const std::string& name) {
    std::cout << (ok ? "ok:   " : "FAIL: ") << name << "\n";
    if (!ok) ++failures;
  };

  const std::vector<ProbVec> pmfs = {
      ProbVec::validate({0.75, 0.25}),
      ProbVec::validate({0.5, 0.25, 0.25}),
      ProbVec::validate({0.4, 0.3, 0.2, 0.1}),
      ProbVec::validate({0.7, 0.1, 0.1, 0.05, 0.05}),
  };
  const std::vector<Order> orders = {Order::zero(),        Order::finite(0.25),
                                     Order::finite(0.5),   Order::one(),
                                     Order::finite(2),     Order::finite(5),
                                     Order::finite(10),    Order::infinity()};

  const std::uint64_t budget = oracle_budget();
  for (const auto& p : pmfs) {
    // Largest power-of-two-refined resolution that fits the budget.
    std::size_t steps = 400;
    while (steps > 8 && grid_point_count(p.size(), steps) > budget) {
      steps /= 2;
    }
    for (const auto& a : orders) {
      const double entropy = renyi_entropy(p, a);
      const std::string tag = "pmf(n=" + std::to_string(p.size()) +
                              "), alpha=" + a.str();
      GridSpec grid{p.size(), steps, budget};
      const GridMin gm = simplex_grid_min(p, a, grid);
      // The admissible gap scales with the grid granularity.
      report(gm.min >= entropy - 1e-12 && gm.min - entropy <= 8.0 / steps,
             "grid minimum matches closed form at " + tag);
      if (a.is_finite()) {
        const GridMin pg = projected_gradient_min(p, a, 1e-10);
        const ProbVec t = tilt(p, a);
        double dist = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
          dist = std::max(dist, std::abs(pg.argmin[i] - t[i]));
        }
        report(std::abs(pg.min - entropy) <= 1e-7 && dist <= 1e-6,
               "gradient minimum matches tilt at " + tag);
      }
    }
  }

  const Channel bsc = Channel::validate({{0.9, 0.1}, {0.1, 0.9}});
  const ProbVec uniform2 = ProbVec::uniform(2);
  for (const auto& a : orders) {
    const LeakageReport rep = alpha_leakage(uniform2, bsc, a);
    report(rep.leakage >= -1e-10, "leakage nonnegative at alpha=" + a.str());
  }
  report(std::abs(maximal_leakage(uniform2, bsc) - std::log(1.8)) <= 1e-12,
         "maximal leakage of the binary symmetric channel");
  const SupLeakageResult sup = sup_leakage_search(
      uniform2, bsc, Order::infinity(), 2, 2000);
  report(std::abs(sup.best_value - std::log(1.8)) <= 1e-3,
         "attribute search reaches maximal leakage at alpha=inf");
  std::cout << (failures == 0 ? "verify: all checks passed\n"
                              : "verify: FAILURES\n");
  return failures == 0 ? 0 : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"Renyi information and alpha-leakage measures on finite "
               "distributions and channels"};
  app.require_subcommand(1);

  OutputOptions out;
  app.add_option("--base", out.base, "output units")
      ->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", out.output_path, "output path (default stdout)");

  std::vector<std::string> alpha_tokens;
  std::string dist_path, dist2_path, channel_path, binomial_spec;
  std::size_t y_index = 0;
  bool elementary_loss = false;
  int fig_n = 20;
  double fig_p = 0.5;
  std::vector<std::string> fig_alphas = {"0.01", "0.5", "1", "5", "10"};
  std::vector<std::string> sweep_measures = {"leakage", "sibson"};

  auto add_alpha = [&](CLI::App* cmd, bool multi = true) {
    auto* opt = cmd->add_option("--alpha", alpha_tokens,
                                "Renyi order: 0, 1, inf, or a positive decimal")
                    ->required();
    if (!multi) opt->expected(1);
  };

  auto* c_entropy = app.add_subcommand("entropy", "Renyi entropy of a pmf");
  c_entropy->add_option("dist", dist_path, "distribution file");
  c_entropy->add_option("--binomial", binomial_spec, "n,p binomial pmf");
  add_alpha(c_entropy);

  auto* c_tilt = app.add_subcommand("tilt", "scaled distribution P_{X_alpha}");
  c_tilt->add_option("dist", dist_path, "distribution file");
  c_tilt->add_option("--binomial", binomial_spec, "n,p binomial pmf");
  add_alpha(c_tilt, false);

  auto* c_xent = app.add_subcommand("cross-entropy", "alpha-cross entropy");
  c_xent->add_option("dist", dist_path, "distribution file (P)")->required();
  c_xent->add_option("decision", dist2_path, "decision file (P^)")->required();
  add_alpha(c_xent);

  auto* c_div = app.add_subcommand("divergence", "Renyi divergence");
  c_div->add_option("dist", dist_path, "distribution file (P)")->required();
  c_div->add_option("ref", dist2_path, "reference file (Q)")->required();
  add_alpha(c_div);

  auto* c_loss = app.add_subcommand("loss", "alpha-loss of a decision");
  c_loss->add_option("dist", dist_path, "distribution file")->required();
  c_loss->add_option("decision", dist2_path, "decision file")->required();
  c_loss->add_flag("--elementary", elementary_loss,
                   "expected elementary loss instead of the exp form");
  add_alpha(c_loss);

  auto* c_arimoto = app.add_subcommand("arimoto-cond",
                                       "Arimoto conditional entropy");
  c_arimoto->add_option("channel", channel_path, "channel or joint file")
      ->required();
  add_alpha(c_arimoto);

  auto* c_leak = app.add_subcommand("leakage", "alpha-leakage report");
  c_leak->add_option("channel", channel_path, "channel or joint file")
      ->required();
  add_alpha(c_leak);

  auto* c_sibson = app.add_subcommand("sibson", "Sibson mutual information");
  c_sibson->add_option("channel", channel_path, "channel or joint file")
      ->required();
  add_alpha(c_sibson);

  auto* c_elem = app.add_subcommand("elementary", "Y-elementary leakage");
  c_elem->add_option("channel", channel_path, "channel or joint file")
      ->required();
  c_elem->add_option("--y", y_index, "output symbol index")->required();
  add_alpha(c_elem);

  auto* c_pml = app.add_subcommand("pml", "pointwise maximal leakage");
  c_pml->add_option("channel", channel_path, "channel or joint file")
      ->required();
  c_pml->add_option("--y", y_index, "output symbol index")->required();

  auto* c_lift = app.add_subcommand("lift", "alpha-lift of an outcome");
  c_lift->add_option("channel", channel_path, "channel or joint file")
      ->required();
  c_lift->add_option("--y", y_index, "output symbol index")->required();
  add_alpha(c_lift);

  auto* c_maxleak = app.add_subcommand("maxleak", "maximal leakage");
  c_maxleak->add_option("channel", channel_path, "channel or joint file")
      ->required();

  auto* c_capacity = app.add_subcommand("capacity",
                                        "channel capacity of order alpha");
  c_capacity->add_option("channel", channel_path, "channel or joint file")
      ->required();
  add_alpha(c_capacity, false);

  auto* c_estimator = app.add_subcommand("estimator",
                                         "optimal decision P_{X^|Y}");
  c_estimator->add_option("channel", channel_path, "channel or joint file")
      ->required();
  add_alpha(c_estimator, false);

  auto* c_sweep = app.add_subcommand("sweep", "alpha grid x measure table");
  c_sweep->add_option("channel", channel_path, "channel or joint file")
      ->required();
  c_sweep->add_option("--alphas", alpha_tokens, "order grid")->required();
  c_sweep->add_option("--measures", sweep_measures,
                      "leakage, sibson, arimoto-cond, prior-entropy");

  auto* c_fig1 = app.add_subcommand(
      "fig1", "tilted binomial table (alpha, x, mass)");
  c_fig1->add_option("--n", fig_n, "binomial n");
  c_fig1->add_option("--p", fig_p, "binomial p");
  c_fig1->add_option("--alphas", fig_alphas, "order list");

  auto* c_verify = app.add_subcommand("verify", "run the oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // flag/argument problems are input errors
  }

  if (c_verify->parsed()) return run_verify(out);

  Table table;
  const std::vector<Order> orders = parse_orders(alpha_tokens);

  auto alpha_value_rows = [&](const std::vector<std::string>& tokens,
                              auto&& fn, Cell::Kind kind = Cell::Nats) {
    table.header = {"alpha", "value"};
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const double v = fn(orders[i]);
      table.rows.push_back({Cell::text_cell(Order::parse(tokens[i]).str()),
                            kind == Cell::Nats ? Cell::nats(v) : Cell::plain(v)});
    }
  };

  if (c_entropy->parsed()) {
    const ProbVec p = load_dist_input(dist_path, binomial_spec);
    alpha_value_rows(alpha_tokens,
                     [&](const Order& a) { return renyi_entropy(p, a); });
  } else if (c_tilt->parsed()) {
    const ProbVec p = load_dist_input(dist_path, binomial_spec);
    const ProbVec t = tilt(p, orders.front());
    table.header = {"x", "mass"};
    for (std::size_t x = 0; x < t.size(); ++x) {
      table.rows.push_back({Cell::text_cell(std::to_string(x)),
                            Cell::plain(t[x])});
    }
  } else if (c_xent->parsed()) {
    const ProbVec p = load_distribution(dist_path);
    const ProbVec q = load_distribution(dist2_path);
    alpha_value_rows(alpha_tokens,
                     [&](const Order& a) { return cross_entropy(p, q, a); });
  } else if (c_div->parsed()) {
    const ProbVec p = load_distribution(dist_path);
    const ProbVec q = load_distribution(dist2_path);
    alpha_value_rows(alpha_tokens,
                     [&](const Order& a) { return renyi_divergence(p, q, a); });
  } else if (c_loss->parsed()) {
    const ProbVec p = load_distribution(dist_path);
    const ProbVec q = load_distribution(dist2_path);
    alpha_value_rows(
        alpha_tokens,
        [&](const Order& a) {
          return elementary_loss ? liao_loss(p, q, a) : alpha_loss(p, q, a);
        },
        Cell::Plain);
  } else if (c_arimoto->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    const JointView jv(cf.input_pmf, cf.channel);
    alpha_value_rows(alpha_tokens, [&](const Order& a) {
      return arimoto_conditional_entropy(jv, a);
    });
  } else if (c_leak->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    table.header = {"alpha", "prior_uncertainty", "posterior_uncertainty",
                    "leakage"};
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const LeakageReport rep = alpha_leakage(cf.input_pmf, cf.channel,
                                              orders[i]);
      table.rows.push_back({Cell::text_cell(orders[i].str()),
                            Cell::nats(rep.prior_uncertainty),
                            Cell::nats(rep.posterior_uncertainty),
                            Cell::nats(rep.leakage)});
    }
  } else if (c_sibson->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    alpha_value_rows(alpha_tokens, [&](const Order& a) {
      return sibson_mi(cf.input_pmf, cf.channel, a);
    });
  } else if (c_elem->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    table.header = {"alpha", "y", "value"};
    for (const Order& a : orders) {
      table.rows.push_back(
          {Cell::text_cell(a.str()), Cell::text_cell(std::to_string(y_index)),
           Cell::nats(elementary_leakage(cf.input_pmf, cf.channel, y_index, a))});
    }
  } else if (c_pml->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    table.header = {"y", "value"};
    table.rows.push_back({Cell::text_cell(std::to_string(y_index)),
                          Cell::nats(pml(cf.input_pmf, cf.channel, y_index))});
  } else if (c_lift->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    table.header = {"alpha", "y", "value"};
    for (const Order& a : orders) {
      table.rows.push_back(
          {Cell::text_cell(a.str()), Cell::text_cell(std::to_string(y_index)),
           Cell::plain(alpha_lift(cf.input_pmf, cf.channel, y_index, a))});
    }
  } else if (c_maxleak->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    table.header = {"value"};
    table.rows.push_back({Cell::nats(maximal_leakage(cf.input_pmf, cf.channel))});
  } else if (c_capacity->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    const CapacityResult res = renyi_capacity(cf.channel, orders.front());
    if (out.format == "json") {
      table.header = {"alpha", "value"};
      table.rows.push_back({Cell::text_cell(orders.front().str()),
                            Cell::nats(res.value)});
      // best prior appended as extra columns below
      for (std::size_t x = 0; x < res.best_prior.size(); ++x) {
        table.header.push_back("p" + std::to_string(x));
        table.rows.back().push_back(Cell::plain(res.best_prior[x]));
      }
    } else {
      table.header = {"alpha", "value"};
      table.rows.push_back({Cell::text_cell(orders.front().str()),
                            Cell::nats(res.value)});
      for (std::size_t x = 0; x < res.best_prior.size(); ++x) {
        table.header.push_back("p" + std::to_string(x));
        table.rows.back().push_back(Cell::plain(res.best_prior[x]));
      }
    }
  } else if (c_estimator->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    const Channel est =
        optimal_estimator(JointView(cf.input_pmf, cf.channel), orders.front());
    table.header = {"y", "x", "prob"};
    for (std::size_t y = 0; y < est.input_size(); ++y) {
      for (std::size_t x = 0; x < est.output_size(); ++x) {
        table.rows.push_back({Cell::text_cell(std::to_string(y)),
                              Cell::text_cell(std::to_string(x)),
                              Cell::plain(est.at(y, x))});
      }
    }
  } else if (c_sweep->parsed()) {
    const ChannelFile cf = load_channel_any(channel_path);
    table.header = {"alpha", "measure", "value"};
    for (const Order& a : orders) {
      for (const std::string& m : sweep_measures) {
        double v = 0.0;
        if (m == "leakage") {
          v = alpha_leakage(cf.input_pmf, cf.channel, a).leakage;
        } else if (m == "sibson") {
          v = sibson_mi(cf.input_pmf, cf.channel, a);
        } else if (m == "arimoto-cond") {
          v = arimoto_conditional_entropy(JointView(cf.input_pmf, cf.channel), a);
        } else if (m == "prior-entropy") {
          v = renyi_entropy(cf.input_pmf, a);
        } else {
          throw InvalidInput("InvalidParameter", "unknown measure '" + m + "'");
        }
        table.rows.push_back({Cell::text_cell(a.str()), Cell::text_cell(m),
                              Cell::nats(v)});
      }
    }
  } else if (c_fig1->parsed()) {
    const ProbVec pmf = binomial_pmf(fig_n, fig_p);
    table.header = {"alpha", "x", "mass"};
    for (const std::string& tok : fig_alphas) {
      const Order a = Order::parse(tok);
      const ProbVec t = tilt(pmf, a);
      for (std::size_t x = 0; x < t.size(); ++x) {
        table.rows.push_back({Cell::text_cell(a.str()),
                              Cell::text_cell(std::to_string(x)),
                              Cell::plain(t[x])});
      }
    }
  }

  emit(table, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InvalidInput& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ComputeFailure& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
