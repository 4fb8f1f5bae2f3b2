#include "cbn/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cbn/errors.hpp"

namespace cbn {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_binary(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::uint64_t parse_count(const std::string& s, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(at_line(line) + "invalid count '" + s + "'");
  return value;
}

Genotype bits_to_genotype(const std::string& bits) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1') mask |= std::uint64_t{1} << i;
  return Genotype(mask);
}

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

double read_number(const nlohmann::ordered_json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -INFINITY;
    if (s == "inf") return INFINITY;
    if (s == "nan") return NAN;
    throw ParseError("unexpected number string '" + s + "'");
  }
  return j.get<double>();
}

}  // namespace

CountVector GenotypeTable::to_counts() const {
  CountVector u(static_cast<int>(event_names.size()));
  for (const auto& [bits, count] : rows) u.add(bits_to_genotype(bits), static_cast<double>(count));
  return u;
}

void validate_event_name(const std::string& name) {
  const bool ok = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
  if (!ok) throw ParseError("event name '" + name + "' must be non-empty [A-Za-z0-9_]");
}

GenotypeTable parse_genotype_data(std::istream& in, DataFormat format) {
  GenotypeTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::map<Genotype, std::uint64_t, CanonicalLess> counts;
  DataFormat kind = format;

  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    auto fields = split(line, ',');
    for (auto& f : fields) f = trim(f);

    if (!have_header) {
      for (const auto& name : fields) {
        try {
          validate_event_name(name);
        } catch (const ParseError& e) {
          throw ParseError(at_line(line_no) + e.what());
        }
      }
      std::vector<std::string> sorted = fields;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError(at_line(line_no) + "duplicate event name");
      if (static_cast<int>(fields.size()) > kMaxEvents)
        throw ParseError(at_line(line_no) + "more than " + std::to_string(kMaxEvents) + " events");
      table.event_names = std::move(fields);
      have_header = true;
      continue;
    }

    const std::size_t n = table.event_names.size();
    if (kind == DataFormat::automatic) {
      const bool matrix_shaped = fields.size() == n && std::all_of(fields.begin(), fields.end(), [](const std::string& f) {
                                   return f == "0" || f == "1";
                                 });
      kind = matrix_shaped ? DataFormat::matrix : DataFormat::counts;
    }

    if (kind == DataFormat::matrix) {
      if (fields.size() != n)
        throw InconsistentWidth(at_line(line_no) + "expected " + std::to_string(n) + " entries, got " +
                                std::to_string(fields.size()));
      std::string bits;
      for (const auto& f : fields) {
        if (f != "0" && f != "1") throw ParseError(at_line(line_no) + "non-binary entry '" + f + "'");
        bits += f;
      }
      ++counts[bits_to_genotype(bits)];
    } else {
      if (fields.size() != 2) throw ParseError(at_line(line_no) + "expected 'bitstring,count'");
      if (!is_binary(fields[0])) throw ParseError(at_line(line_no) + "non-binary genotype '" + fields[0] + "'");
      if (fields[0].size() != n)
        throw InconsistentWidth(at_line(line_no) + "genotype of length " + std::to_string(fields[0].size()) +
                                " for " + std::to_string(n) + " events");
      const std::uint64_t c = parse_count(fields[1], line_no);
      if (c > 0) counts[bits_to_genotype(fields[0])] += c;
    }
  }

  if (!have_header) throw EmptyData("no header line");
  if (counts.empty()) throw EmptyData("no observations after the header");
  table.source_kind = kind;
  for (const auto& [g, c] : counts)
    table.rows.emplace_back(to_bitstring(g, static_cast<int>(table.event_names.size())), c);
  return table;
}

GenotypeTable read_genotype_data(const std::filesystem::path& path, DataFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_genotype_data(in, format);
}

void write_counts(std::ostream& out, const std::vector<std::string>& names, const CountVector& u) {
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  for (const auto& [g, c] : u.entries()) out << to_bitstring(g, u.events()) << ',' << format_double(c) << '\n';
}

Poset parse_poset(const std::string& text, const std::vector<std::string>& names) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], static_cast<int>(i));
  std::vector<Relation> pairs;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), '\n', ';');
  for (const auto& raw : split(normalized, ';')) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    const auto parts = split(item, '<');
    if (parts.size() != 2) throw ParseError("relation '" + item + "' must look like 'A<B'");
    const auto lower = index.find(trim(parts[0]));
    const auto upper = index.find(trim(parts[1]));
    if (lower == index.end() || upper == index.end()) throw ParseError("relation '" + item + "' names an unknown event");
    pairs.push_back({lower->second, upper->second});
  }
  return Poset::from_relations(static_cast<int>(names.size()), pairs, names);
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

FitReport make_report(const MixtureFit& fit, const std::vector<std::string>& original_names,
                      std::optional<std::uint64_t> seed) {
  FitReport r;
  for (const auto& group : fit.groups) {
    std::string name;
    std::vector<std::string> members;
    for (int e : group) {
      const auto& orig = original_names.at(static_cast<std::size_t>(e));
      name += (name.empty() ? "" : "+") + orig;
      members.push_back(orig);
    }
    r.event_names.push_back(name);
    r.merge_groups.push_back(std::move(members));
  }
  for (const auto& rel : fit.poset.cover_relations())
    r.cover_relations.emplace_back(r.event_names[static_cast<std::size_t>(rel.lower)],
                                   r.event_names[static_cast<std::size_t>(rel.upper)]);
  r.theta_hat = fit.theta_hat;
  r.lambda_hat = fit.lambda_hat;
  r.epsilon = fit.epsilon;
  r.epsilon_max = fit.epsilon;
  r.log_lik = fit.log_lik;
  r.lattice_size = fit.lattice_size;
  r.n_compatible = fit.n_compatible;
  r.n_total = fit.n_total;
  r.fraction_incompatible = 1.0 - fit.lambda_hat;
  for (int e : fit.unidentified_events) r.unidentified_events.push_back(r.event_names[static_cast<std::size_t>(e)]);
  r.seed = seed;
  return r;
}

nlohmann::ordered_json to_json(const FitReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["event_names"] = r.event_names;
  auto covers = nlohmann::ordered_json::array();
  for (const auto& [a, b] : r.cover_relations) covers.push_back({a, b});
  j["cover_relations"] = covers;
  auto theta = nlohmann::ordered_json::array();
  for (double t : r.theta_hat) theta.push_back(number(t));
  j["theta_hat"] = theta;
  j["lambda_hat"] = number(r.lambda_hat);
  j["epsilon"] = number(r.epsilon);
  j["epsilon_max"] = number(r.epsilon_max);
  j["log_lik"] = number(r.log_lik);
  j["lattice_size"] = r.lattice_size;
  j["n_compatible"] = number(r.n_compatible);
  j["n_total"] = number(r.n_total);
  j["fraction_incompatible"] = number(r.fraction_incompatible);
  j["unidentified_events"] = r.unidentified_events;
  j["merge_groups"] = r.merge_groups;
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
  if (r.bootstrap) {
    j["bootstrap"] = {{"min", number(r.bootstrap->min)},
                      {"q1", number(r.bootstrap->q1)},
                      {"median", number(r.bootstrap->median)},
                      {"q3", number(r.bootstrap->q3)},
                      {"max", number(r.bootstrap->max)}};
  }
  return j;
}

FitReport fit_report_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw ParseError("unsupported schema_version");
    FitReport r;
    r.event_names = j.at("event_names").get<std::vector<std::string>>();
    for (const auto& pair : j.at("cover_relations"))
      r.cover_relations.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    for (const auto& t : j.at("theta_hat")) r.theta_hat.push_back(read_number(t));
    r.lambda_hat = read_number(j.at("lambda_hat"));
    r.epsilon = read_number(j.at("epsilon"));
    r.epsilon_max = read_number(j.at("epsilon_max"));
    r.log_lik = read_number(j.at("log_lik"));
    r.lattice_size = j.at("lattice_size").get<std::uint64_t>();
    r.n_compatible = read_number(j.at("n_compatible"));
    r.n_total = read_number(j.at("n_total"));
    r.fraction_incompatible = read_number(j.at("fraction_incompatible"));
    r.unidentified_events = j.at("unidentified_events").get<std::vector<std::string>>();
    r.merge_groups = j.at("merge_groups").get<std::vector<std::vector<std::string>>>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("bootstrap")) {
      const auto& b = j.at("bootstrap");
      r.bootstrap = Quartiles{read_number(b.at("min")), read_number(b.at("q1")), read_number(b.at("median")),
                              read_number(b.at("q3")), read_number(b.at("max"))};
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed fit report: ") + e.what());
  }
}

}  // namespace cbn
