#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gradeband/grade_band.hpp"
#include "gradeband/text_stats.hpp"

namespace gradeband {

enum class MetricId : std::uint8_t { FRES, FKGL, CLI, LW, FOG, DC, SPACHE, ARI };

inline constexpr std::size_t kMetricCount = 8;

inline constexpr std::array<MetricId, kMetricCount> kAllMetrics{
    MetricId::FRES, MetricId::FKGL, MetricId::CLI,    MetricId::LW,
    MetricId::FOG,  MetricId::DC,   MetricId::SPACHE, MetricId::ARI};

/// The seven metrics that take part in grade integration.
inline constexpr std::array<MetricId, 7> kIntegratedMetrics{
    MetricId::FRES, MetricId::FKGL, MetricId::CLI, MetricId::LW,
    MetricId::FOG,  MetricId::DC,   MetricId::SPACHE};

/// ARI is computed and reported but never voted.
constexpr bool is_held_out(MetricId id) noexcept { return id == MetricId::ARI; }

constexpr std::size_t index_of(MetricId id) noexcept { return static_cast<std::size_t>(id); }

std::string_view name(MetricId id) noexcept;
std::optional<MetricId> metric_from_name(std::string_view name) noexcept;

// Closed-form readability formulas. All throw InvalidStats when the word or
// sentence count is zero.
double flesch_reading_ease(const TextStats& s);
double flesch_kincaid_grade(const TextStats& s);
double coleman_liau(const TextStats& s);
double linsear_write(const TextStats& s);
double gunning_fog(const TextStats& s);
double dale_chall(const TextStats& s);
double spache(const TextStats& s);
double automated_readability(const TextStats& s);

double raw_score(MetricId id, const TextStats& s);

/// Dale-Chall raw score before the +3.6365 adjustment.
double dale_chall_raw(const TextStats& s);
inline constexpr double kDaleChallAdjustment = 3.6365;

enum class Direction { Ascending, Descending };

/// Which band receives a raw score that sits exactly on a cut point.
enum class CutOwner { EasierBand, HarderBand };

/// Five cut points splitting the real line into six bands. Ascending tables
/// assign higher bands to larger scores (grade-like metrics); descending
/// tables the opposite (reading-ease metrics). Scores beyond the outer cuts
/// clamp to band 1 or 6.
struct BandTable {
  Direction direction = Direction::Ascending;
  std::array<double, GradeBand::kCount - 1> cuts{};
  CutOwner at_cut = CutOwner::EasierBand;

  /// Throws BadConfig unless the cuts are finite and strictly monotone in the
  /// table's direction.
  void validate() const;
  GradeBand band_of(double raw) const;

  bool operator==(const BandTable&) const = default;
};

class BandMappingConfig {
 public:
  /// Grade-number metrics cut at 2.5/4.5/6.5/9.5/12.5, FRES at
  /// 100/90/80/60/50, Dale-Chall at 4.0/5.0/6.0/7.5/9.0.
  static BandMappingConfig defaults();

  /// Reads {"metrics": {"FKGL": {"direction": "ascending", "cuts": [...],
  /// "at_cut": "easier"}, ...}}. Metrics not listed keep their defaults.
  static BandMappingConfig from_json(const nlohmann::json& j);
  static BandMappingConfig load(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;

  const BandTable& table(MetricId id) const noexcept { return tables_[index_of(id)]; }
  void set_table(MetricId id, const BandTable& table);

  bool operator==(const BandMappingConfig&) const = default;

 private:
  std::array<BandTable, kMetricCount> tables_{};
};

GradeBand map_to_band(MetricId id, double raw, const BandMappingConfig& cfg);

struct MetricScore {
  MetricId metric = MetricId::FRES;
  double raw = 0.0;
  GradeBand band;

  bool operator==(const MetricScore&) const = default;
};

struct MetricReport {
  std::array<MetricScore, kMetricCount> scores{};
  TextStats stats;

  const MetricScore& operator[](MetricId id) const noexcept { return scores[index_of(id)]; }

  bool operator==(const MetricReport&) const = default;
};

MetricReport score_stats(const TextStats& stats, const BandMappingConfig& cfg);
MetricReport score_all(std::string_view text, const WordLists& lists, const BandMappingConfig& cfg);

}  // namespace gradeband
