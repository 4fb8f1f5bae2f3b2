#include "cbn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cbn/algebra.hpp"
#include "cbn/errors.hpp"
#include "cbn/genotype_model.hpp"
#include "cbn/selection.hpp"

namespace cbn {

namespace {

constexpr const char* kVersion = "0.1.0";

struct FitOptions {
  std::string data;
  std::string format = "auto";
  double epsilon = 0.0;
  bool merge = false;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct ScanOptions {
  std::string data;
  std::string format = "auto";
  std::string epsilons = "auto";
  bool merge = false;
  int bootstrap = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string csv;
  std::string plot;
};

struct PosetOptions {
  std::string events;
  std::string poset;
};

struct SimulateOptions {
  PosetOptions model;
  std::string theta;
  std::uint64_t count = 0;
  std::uint64_t seed = 1;
  std::string out;
};

struct VerifyOptions {
  PosetOptions model;
  std::string theta = "random";
  int trials = 10;
  std::uint64_t seed = 1;
  bool negative_control = false;
};

DataFormat parse_format(const std::string& s) {
  if (s == "auto") return DataFormat::automatic;
  if (s == "matrix") return DataFormat::matrix;
  if (s == "counts") return DataFormat::counts;
  throw ParseError("unknown format '" + s + "' (auto, matrix, counts)");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParseError(what + ": '" + item + "' is not a number");
    }
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
}

std::vector<std::string> event_names(const PosetOptions& opts, std::size_t n) {
  if (opts.events.empty()) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));
    return names;
  }
  auto names = split_list(opts.events);
  for (const auto& name : names) validate_event_name(name);
  if (names.size() != n)
    throw DimensionMismatch(std::to_string(names.size()) + " event names for " + std::to_string(n) + " events");
  return names;
}

Poset load_poset(const PosetOptions& opts, const std::vector<std::string>& names) {
  const std::string text = !opts.poset.empty() && opts.poset.front() == '@' ? slurp(opts.poset.substr(1)) : opts.poset;
  return parse_poset(text, names);
}

std::string relations_line(const FitReport& r) {
  std::string s;
  for (const auto& [a, b] : r.cover_relations) s += (s.empty() ? "" : ", ") + a + "<" + b;
  return s.empty() ? "(none)" : s;
}

void print_summary(std::ostream& out, const FitReport& r) {
  out << "epsilon: " << format_double(r.epsilon) << '\n';
  out << "cover relations: " << relations_line(r) << '\n';
  out << "theta_hat:";
  for (std::size_t i = 0; i < r.event_names.size(); ++i)
    out << ' ' << r.event_names[i] << '=' << format_double(r.theta_hat[i]);
  out << '\n';
  out << "lambda_hat: " << format_double(r.lambda_hat) << " (" << format_double(r.n_compatible) << " of "
      << format_double(r.n_total) << " compatible)\n";
  out << "log_lik: " << format_double(r.log_lik) << '\n';
  if (!r.unidentified_events.empty()) {
    out << "unidentified:";
    for (const auto& e : r.unidentified_events) out << ' ' << e;
    out << '\n';
  }
}

int cmd_fit(const FitOptions& o, std::ostream& out) {
  const auto table = read_genotype_data(o.data, parse_format(o.format));
  const auto u = table.to_counts();
  if (!o.merge && !separates_events(u).separated)
    throw CallerMustMerge("some events are never observed apart; re-run with --merge");
  const auto report = make_report(fit(u, o.epsilon, o.merge), table.event_names, o.seed);
  if (!o.out.empty()) write_file(o.out, to_json(report).dump(2) + "\n");
  print_summary(out, report);
  return kExitOk;
}

int cmd_scan(const ScanOptions& o, std::ostream& out) {
  const auto table = read_genotype_data(o.data, parse_format(o.format));
  const auto u = table.to_counts();
  if (!o.merge && !separates_events(u).separated)
    throw CallerMustMerge("some events are never observed apart; re-run with --merge");
  if (o.bootstrap < 0) throw DomainError("--bootstrap must be non-negative");

  const CountVector data = merge_events(u).reduced;
  const auto grid = o.epsilons == "auto" ? auto_epsilon_grid(data) : parse_doubles(o.epsilons, "--epsilons");
  const auto result = scan(u, grid, o.merge);

  std::vector<FitReport> reports;
  for (const auto& entry : result.entries) {
    auto report = make_report(entry.fit, table.event_names, o.seed);
    report.epsilon_max = entry.epsilon_max;
    if (o.bootstrap > 0) report.bootstrap = bootstrap_loglik(result.data, entry.fit.poset, o.bootstrap, o.seed);
    reports.push_back(std::move(report));
  }

  auto array = nlohmann::ordered_json::array();
  for (const auto& r : reports) array.push_back(to_json(r));
  std::string csv = "fraction_incompatible,log_lik\n";
  for (const auto& r : reports) csv += format_double(r.fraction_incompatible) + "," + format_double(r.log_lik) + "\n";

  if (!o.out.empty()) write_file(o.out, array.dump(2) + "\n");
  std::string csv_path = o.csv;
  if (csv_path.empty() && !o.out.empty()) csv_path = std::filesystem::path(o.out).replace_extension(".csv").string();
  if (!csv_path.empty()) write_file(csv_path, csv);
  if (!o.plot.empty()) write_file(o.plot, scan_svg(reports));

  const std::size_t best = best_entry(result);
  out << "epsilon range | incompatible | log_lik | relations\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << (i == best ? "* " : "  ") << '[' << format_double(r.epsilon) << ", " << format_double(r.epsilon_max)
        << "] | " << format_double(r.fraction_incompatible) << " | " << format_double(r.log_lik) << " | "
        << relations_line(r) << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const auto theta = parse_doubles(o.theta, "--theta");
  if (theta.empty()) throw ParseError("--theta needs at least one value");
  const auto names = event_names(o.model, theta.size());
  const CbnModel model(load_poset(o.model, names), theta);
  const auto counts = sample(model, o.count, o.seed);
  std::ostringstream text;
  write_counts(text, names, counts);
  if (o.out.empty())
    out << text.str();
  else
    write_file(o.out, text.str());
  return kExitOk;
}

/// Probability 1/3 on g ∩ h, g and h for the first incomparable pair, which
/// leaves q_g q_h - q_{g∪h} q_{g∩h} = 1/9; otherwise breaks normalization.
std::vector<mpq_class> corrupted_distribution(const GenotypeLattice& lattice, std::vector<mpq_class> p) {
  const auto pairs = incomparable_pairs(lattice);
  if (pairs.empty()) {
    p.front() += mpq_class(1, 8);
    return p;
  }
  const auto [i, j] = pairs.front();
  std::fill(p.begin(), p.end(), mpq_class(0));
  p[i] = p[j] = p[lattice.require_index(lattice[i] & lattice[j])] = mpq_class(1, 3);
  return p;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  // The poset fixes the event count when names are not given.
  std::vector<double> fixed_theta;
  if (o.theta != "random") fixed_theta = parse_doubles(o.theta, "--theta");
  std::size_t n = fixed_theta.size();
  if (n == 0) n = o.model.events.empty() ? 0 : split_list(o.model.events).size();
  if (n == 0) throw ParseError("give --events or an explicit --theta list");
  const auto names = event_names(o.model, n);
  const Poset poset = load_poset(o.model, names);
  const auto lattice = enumerate_order_ideals(poset);
  const InvariantSet invariants(lattice);

  bool pass = true;
  const auto sum = symbolic_sum_check(poset);
  const bool sum_ok = sum.as_constant() == mpq_class(1);
  pass &= sum_ok;
  out << "lattice: " << lattice.size() << " genotypes, " << invariants.q_binomials.size() << " Hibi binomials, "
      << invariants.p_invariants.size() << " p-coordinate invariants\n";
  out << "sum of genotype polynomials: " << sum.to_string([](std::uint32_t v) { return "t" + std::to_string(v + 1); })
      << (sum_ok ? " [ok]" : " [FAIL]") << '\n';

  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> numerator(0, 1000);
  const int trials = fixed_theta.empty() ? std::max(1, o.trials) : 1;
  mpq_class worst_rational = 0;
  double worst_float = 0.0;
  double worst_subsum = 0.0;
  bool roundtrip_ok = true;
  for (int t = 0; t < trials; ++t) {
    std::vector<mpq_class> theta_q;
    std::vector<double> theta_d;
    for (std::size_t e = 0; e < n; ++e) {
      mpq_class v = fixed_theta.empty() ? mpq_class(numerator(rng), 1000) : mpq_class(fixed_theta[e]);
      v.canonicalize();
      theta_q.push_back(v);
      theta_d.push_back(v.get_d());
    }
    auto exact = exact_distribution(lattice, theta_q);
    if (o.negative_control) exact = corrupted_distribution(lattice, exact);
    std::vector<double> approx;
    for (const auto& v : exact) approx.push_back(v.get_d());

    worst_rational = std::max(worst_rational, verify_invariants<mpq_class>(lattice, invariants, exact));
    worst_float = std::max(worst_float, verify_invariants<double>(lattice, invariants, approx));
    const auto q = moebius_transform<mpq_class>(lattice, exact);
    roundtrip_ok &= moebius_inverse<mpq_class>(lattice, q) == exact;

    const CbnModel model(poset, theta_d);
    const auto probs = distribution(model, lattice);
    for (std::size_t h = 0; h < lattice.size(); ++h) {
      double product = 1.0;
      for (int e : lattice[h].events()) product *= theta_d[static_cast<std::size_t>(e)];
      double subsum = 0.0;
      for (std::size_t g = 0; g < lattice.size(); ++g)
        if (lattice[h].subset_of(lattice[g])) subsum += probs[g];
      worst_subsum = std::max(worst_subsum, std::fabs(subsum - product));
    }
  }
  pass &= roundtrip_ok && worst_rational == 0 && worst_float <= 1e-12 && worst_subsum <= 1e-12;
  out << "trials: " << trials << (o.negative_control ? " (negative control)" : "") << '\n';
  out << "subsum identity max residual: " << format_double(worst_subsum) << '\n';
  out << "moebius roundtrip: " << (roundtrip_ok ? "exact" : "MISMATCH") << '\n';
  out << "invariants max residual (rational): " << worst_rational.get_str() << '\n';
  out << "invariants max residual (float): " << format_double(worst_float) << '\n';
  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitOk : kExitFail;
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::model:
      return kExitModel;
    case ErrorCategory::cap:
      return kExitCap;
    default:
      return kExitData;
  }
}

void add_poset_options(CLI::App* cmd, PosetOptions& o) {
  cmd->add_option("--events", o.events, "Comma-separated event names (default 1..n)");
  cmd->add_option("--poset", o.poset, "Relations 'A<B;C<B' by event name, or @file");
}

}  // namespace

std::string scan_svg(const std::vector<FitReport>& reports) {
  constexpr double width = 640, height = 420, left = 70, right = 20, top = 20, bottom = 50;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (const auto& r : reports) {
    const double lo = r.bootstrap ? std::min(r.bootstrap->min, r.log_lik) : r.log_lik;
    const double hi = r.bootstrap ? std::max(r.bootstrap->max, r.log_lik) : r.log_lik;
    if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
    xmin = first ? r.fraction_incompatible : std::min(xmin, r.fraction_incompatible);
    xmax = first ? r.fraction_incompatible : std::max(xmax, r.fraction_incompatible);
    ymin = first ? lo : std::min(ymin, lo);
    ymax = first ? hi : std::max(ymax, hi);
    first = false;
  }
  if (xmax - xmin < 1e-9) xmax = xmin + 0.01;
  if (ymax - ymin < 1e-9) ymax = ymin + 1.0;
  const double padx = 0.05 * (xmax - xmin), pady = 0.05 * (ymax - ymin);
  xmin -= padx;
  xmax += padx;
  ymin -= pady;
  ymax += pady;
  const auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (width - left - right); };
  const auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * (height - top - bottom); };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  s << "<!-- cbn " << kVersion << " -->\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
    << height - bottom << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    s << "<text x=\"" << num(sx(xv)) << "\" y=\"" << height - bottom + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
      << num(xv) << "</text>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << num(sy(yv) + 4) << "\" font-size=\"11\" text-anchor=\"end\">" << num(yv)
      << "</text>\n";
  }
  s << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10
    << "\" font-size=\"13\" text-anchor=\"middle\">fraction of incompatible genotypes</text>\n";
  s << "<text x=\"16\" y=\"" << (top + height - bottom) / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << (top + height - bottom) / 2 << ")\">log-likelihood</text>\n";
  for (const auto& r : reports) {
    if (!std::isfinite(r.log_lik)) continue;
    const double x = sx(r.fraction_incompatible);
    if (r.bootstrap) {
      s << "<line x1=\"" << num(x) << "\" y1=\"" << num(sy(r.bootstrap->min)) << "\" x2=\"" << num(x) << "\" y2=\""
        << num(sy(r.bootstrap->max)) << "\" stroke=\"gray\"/>\n";
      s << "<rect x=\"" << num(x - 4) << "\" y=\"" << num(sy(r.bootstrap->q3)) << "\" width=\"8\" height=\""
        << num(sy(r.bootstrap->q1) - sy(r.bootstrap->q3)) << "\" fill=\"none\" stroke=\"gray\"/>\n";
    }
    s << "<circle cx=\"" << num(x) << "\" cy=\"" << num(sy(r.log_lik)) << "\" r=\"4\" fill=\"black\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conjunctive Bayesian networks: fit, scan, simulate and verify", "cbn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  FitOptions fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the maximum-likelihood poset and parameters");
  fit_cmd->add_option("data", fit_opts.data, "Genotype data file")->required();
  fit_cmd->add_option("--format", fit_opts.format, "auto, matrix or counts");
  fit_cmd->add_option("--epsilon", fit_opts.epsilon, "Error tolerance in [0, 1]");
  fit_cmd->add_flag("--merge", fit_opts.merge, "Merge events the data never separate");
  fit_cmd->add_option("--seed", fit_opts.seed, "Seed recorded in the report");
  fit_cmd->add_option("--out", fit_opts.out, "JSON report path");

  ScanOptions scan_opts;
  auto* scan_cmd = app.add_subcommand("scan", "Fit the epsilon posets over a tolerance grid");
  scan_cmd->add_option("data", scan_opts.data, "Genotype data file")->required();
  scan_cmd->add_option("--format", scan_opts.format, "auto, matrix or counts");
  scan_cmd->add_option("--epsilons", scan_opts.epsilons, "Comma-separated increasing list, or auto");
  scan_cmd->add_flag("--merge", scan_opts.merge, "Merge events the data never separate");
  scan_cmd->add_option("--bootstrap", scan_opts.bootstrap, "Bootstrap replicates per poset");
  scan_cmd->add_option("--seed", scan_opts.seed, "Bootstrap seed");
  scan_cmd->add_option("--out", scan_opts.out, "JSON array of fit reports");
  scan_cmd->add_option("--csv", scan_opts.csv, "fraction_incompatible,log_lik table (default: --out with .csv)");
  scan_cmd->add_option("--plot", scan_opts.plot, "SVG scatter path");

  SimulateOptions sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "Sample genotype counts from a model");
  add_poset_options(sim_cmd, sim_opts.model);
  sim_cmd->add_option("--theta", sim_opts.theta, "Comma-separated event probabilities")->required();
  sim_cmd->add_option("--n", sim_opts.count, "Number of observations")->required();
  sim_cmd->add_option("--seed", sim_opts.seed, "Sampling seed");
  sim_cmd->add_option("--out", sim_opts.out, "Counts file path (default stdout)");

  VerifyOptions ver_opts;
  auto* ver_cmd = app.add_subcommand("verify", "Check the model's algebraic invariants");
  add_poset_options(ver_cmd, ver_opts.model);
  ver_cmd->add_option("--theta", ver_opts.theta, "random, or comma-separated probabilities");
  ver_cmd->add_option("--trials", ver_opts.trials, "Random parameter draws");
  ver_cmd->add_option("--seed", ver_opts.seed, "Seed for random parameters");
  ver_cmd->add_flag("--negative-control", ver_opts.negative_control, "Evaluate a corrupted distribution");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : app.help());
      return kExitOk;
    }
    err << e.what() << '\n';
    return kExitData;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_opts, out);
    if (*scan_cmd) return cmd_scan(scan_opts, out);
    if (*sim_cmd) return cmd_simulate(sim_opts, out);
    if (*ver_cmd) return cmd_verify(ver_opts, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }
  return kExitFail;
}

}  // namespace cbn
