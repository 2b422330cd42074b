#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradeband/corpus.hpp"
#include "gradeband/grade_band.hpp"
#include "gradeband/metrics.hpp"

namespace gradeband {

/// One classified model output paired with the band it was meant to hit.
struct EvalItem {
  std::string id;
  GradeBand target;
  GradeBand final_band;
  double ari_raw = 0.0;
  std::array<GradeBand, 7> metric_bands{};  // kIntegratedMetrics order

  bool operator==(const EvalItem&) const = default;
};

/// Counts; rows are targeted bands, columns classified bands.
using ConfusionMatrix = std::array<std::array<std::size_t, GradeBand::kCount>, GradeBand::kCount>;
using PercentMatrix = std::array<std::array<double, GradeBand::kCount>, GradeBand::kCount>;

ConfusionMatrix confusion_matrix(std::span<const EvalItem> items);
/// Each nonempty row scaled to sum to 100; empty rows stay zero.
PercentMatrix row_normalized(const ConfusionMatrix& m);

/// Percentage of items targeted at `band` whose final band equals it.
/// Throws NoData when nothing targets `band`.
double target_success(std::span<const EvalItem> items, GradeBand band);
/// Per band; empty where no item targets the band.
std::array<std::optional<double>, GradeBand::kCount> target_success(std::span<const EvalItem> items);

struct AriLevel {
  double mean_raw = 0.0;
  GradeBand level;
};

/// Mean raw ARI over items targeted at `band`, discretized with the ARI
/// table of `cfg`. Throws NoData.
AriLevel mean_ari_level(std::span<const EvalItem> items, GradeBand band, const BandMappingConfig& cfg);

/// Mean band index of each of the seven integrated metrics over items
/// targeted at `band`, keyed by metric. Throws NoData.
std::map<MetricId, double> per_metric_mean_band(std::span<const EvalItem> items, GradeBand band);

struct BandEvaluation {
  std::size_t count = 0;
  double target_pct = 0.0;
  AriLevel ari;
  std::map<MetricId, double> mean_metric_band;
};

struct EvalReport {
  std::size_t total = 0;
  ConfusionMatrix confusion{};
  std::array<std::optional<BandEvaluation>, GradeBand::kCount> bands;
};

EvalReport evaluate(std::span<const EvalItem> items, const BandMappingConfig& cfg);
nlohmann::ordered_json to_json(const EvalReport& report);

/// CSV with header "target,1,2,3,4,5,6" and one row per targeted band.
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& m);
void write_confusion_csv(std::ostream& out, const PercentMatrix& m);

/// Parses a line written by to_json(ClassifiedRecord). Throws ParseError or
/// MissingField.
struct ClassifiedLine {
  CorpusRecord record;
  GradeBand band;
  std::array<GradeBand, 7> metric_bands{};
  std::array<double, 7> scores{};
  double ari = 0.0;
  GradeBand ari_band;
};
ClassifiedLine parse_classified_line(std::string_view line, std::size_t line_no);

/// id -> target band, from JSON Lines {"id": ..., "target_band": k}.
std::map<std::string, GradeBand> load_targets(const std::filesystem::path& path);

struct EvalInput {
  std::vector<EvalItem> items;
  std::vector<RecordIssue> skipped;  // lines without a known target band
};

/// Reads a classified JSON Lines file. The target band comes from `targets`
/// when it has the id, otherwise from the record's own "target_band".
EvalInput load_eval_items(const std::filesystem::path& classified,
                          const std::map<std::string, GradeBand>& targets, bool lenient);

}  // namespace gradeband
