#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "cbn/count_vector.hpp"
#include "cbn/estimation.hpp"
#include "cbn/poset.hpp"
#include "cbn/selection.hpp"

namespace cbn {

enum class DataFormat { automatic, matrix, counts };

/// Observed genotypes at the file boundary, aggregated.
struct GenotypeTable {
  std::vector<std::string> event_names;
  std::vector<std::pair<std::string, std::uint64_t>> rows;  // canonical order, counts > 0
  DataFormat source_kind = DataFormat::matrix;

  CountVector to_counts() const;
};

/// Matrix: header of event names, then one 0/1 row per observation.
/// Counts: header of event names, then "bitstring,count" lines.
/// Throws ParseError (with line number), InconsistentWidth, EmptyData.
GenotypeTable parse_genotype_data(std::istream& in, DataFormat format = DataFormat::automatic);
GenotypeTable read_genotype_data(const std::filesystem::path& path, DataFormat format = DataFormat::automatic);

/// Header line, then one "bitstring,count" line per genotype in canonical order.
void write_counts(std::ostream& out, const std::vector<std::string>& names, const CountVector& u);

/// Names restricted to [A-Za-z0-9_]. Throws ParseError.
void validate_event_name(const std::string& name);

/// "A<B;C<B" with event names. Throws ParseError, CycleError.
Poset parse_poset(const std::string& text, const std::vector<std::string>& names);

struct FitReport {
  std::vector<std::string> event_names;
  std::vector<std::pair<std::string, std::string>> cover_relations;
  std::vector<double> theta_hat;
  double lambda_hat = 0.0;
  double epsilon = 0.0;
  double epsilon_max = 0.0;
  double log_lik = 0.0;
  std::uint64_t lattice_size = 0;
  double n_compatible = 0.0;
  double n_total = 0.0;
  double fraction_incompatible = 0.0;
  std::vector<std::string> unidentified_events;
  std::vector<std::vector<std::string>> merge_groups;
  std::optional<std::uint64_t> seed;
  std::optional<Quartiles> bootstrap;

  friend bool operator==(const FitReport&, const FitReport&) = default;
};

inline constexpr int kSchemaVersion = 1;

/// Names each fitted event after its merge group ("A+B" for merged events).
FitReport make_report(const MixtureFit& fit, const std::vector<std::string>& original_names,
                      std::optional<std::uint64_t> seed = std::nullopt);

nlohmann::ordered_json to_json(const FitReport& report);
/// Throws ParseError on schema mismatch.
FitReport fit_report_from_json(const nlohmann::ordered_json& j);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace cbn
