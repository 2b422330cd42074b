#include "gradeband/metrics.hpp"

#include <cmath>
#include <fstream>

#include "gradeband/error.hpp"

namespace gradeband {

namespace {

constexpr std::array<std::string_view, kMetricCount> kNames{
    "FRES", "FKGL", "CLI", "LW", "FOG", "DC", "SPACHE", "ARI"};

void require_counts(const TextStats& s) {
  if (s.words == 0 || s.sentences == 0) {
    throw Error(ErrorKind::InvalidStats, "word and sentence counts must be positive");
  }
}

double words_per_sentence(const TextStats& s) {
  return static_cast<double>(s.words) / static_cast<double>(s.sentences);
}

double per_word(std::size_t count, const TextStats& s) {
  return static_cast<double>(count) / static_cast<double>(s.words);
}

BandTable grade_table() {
  return {Direction::Ascending, {2.5, 4.5, 6.5, 9.5, 12.5}, CutOwner::EasierBand};
}

std::string_view direction_name(Direction d) {
  return d == Direction::Ascending ? "ascending" : "descending";
}

std::string_view owner_name(CutOwner o) {
  return o == CutOwner::EasierBand ? "easier" : "harder";
}

BandTable table_from_json(const nlohmann::json& j, const BandTable& fallback, std::string_view metric) {
  const auto where = std::string(" for ") + std::string(metric);
  if (!j.is_object()) throw Error(ErrorKind::BadConfig, "table must be an object" + where);
  BandTable t = fallback;
  if (j.contains("direction")) {
    const auto d = j.at("direction");
    if (d == "ascending") {
      t.direction = Direction::Ascending;
    } else if (d == "descending") {
      t.direction = Direction::Descending;
    } else {
      throw Error(ErrorKind::BadConfig, "direction must be ascending or descending" + where);
    }
  }
  if (j.contains("at_cut")) {
    const auto o = j.at("at_cut");
    if (o == "easier") {
      t.at_cut = CutOwner::EasierBand;
    } else if (o == "harder") {
      t.at_cut = CutOwner::HarderBand;
    } else {
      throw Error(ErrorKind::BadConfig, "at_cut must be easier or harder" + where);
    }
  }
  if (j.contains("cuts")) {
    const auto& cuts = j.at("cuts");
    if (!cuts.is_array() || cuts.size() != t.cuts.size()) {
      throw Error(ErrorKind::BadConfig, "cuts must be an array of 5 numbers" + where);
    }
    for (std::size_t k = 0; k < t.cuts.size(); ++k) {
      if (!cuts[k].is_number()) throw Error(ErrorKind::BadConfig, "cuts must be numbers" + where);
      t.cuts[k] = cuts[k].get<double>();
    }
  }
  try {
    t.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::BadConfig, std::string(e.what()) + where);
  }
  return t;
}

}  // namespace

std::string_view name(MetricId id) noexcept { return kNames[index_of(id)]; }

std::optional<MetricId> metric_from_name(std::string_view n) noexcept {
  for (auto id : kAllMetrics) {
    if (kNames[index_of(id)] == n) return id;
  }
  return std::nullopt;
}

double flesch_reading_ease(const TextStats& s) {
  require_counts(s);
  return 206.835 - 1.015 * words_per_sentence(s) - 84.6 * per_word(s.syllables, s);
}

double flesch_kincaid_grade(const TextStats& s) {
  require_counts(s);
  return 0.39 * words_per_sentence(s) + 11.8 * per_word(s.syllables, s) - 15.59;
}

double coleman_liau(const TextStats& s) {
  require_counts(s);
  const double letters_per_100 = 100.0 * per_word(s.letters, s);
  const double sentences_per_100 = 100.0 * per_word(s.sentences, s);
  return 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
}

double linsear_write(const TextStats& s) {
  require_counts(s);
  const double i = (static_cast<double>(s.easy_words) + 3.0 * static_cast<double>(s.hard_words)) /
                   static_cast<double>(s.sentences);
  return i > 20.0 ? i / 2.0 : (i - 2.0) / 2.0;
}

double gunning_fog(const TextStats& s) {
  require_counts(s);
  return 0.4 * (words_per_sentence(s) + 100.0 * per_word(s.complex_words, s));
}

double dale_chall_raw(const TextStats& s) {
  require_counts(s);
  return 0.1579 * s.dc_difficult_pct + 0.0496 * words_per_sentence(s);
}

double dale_chall(const TextStats& s) {
  const double raw = dale_chall_raw(s);
  return s.dc_difficult_pct > 5.0 ? raw + kDaleChallAdjustment : raw;
}

double spache(const TextStats& s) {
  require_counts(s);
  return 0.141 * words_per_sentence(s) + 0.086 * s.spache_unfamiliar_pct + 0.839;
}

double automated_readability(const TextStats& s) {
  require_counts(s);
  return 4.71 * per_word(s.characters, s) + 0.5 * words_per_sentence(s) - 21.43;
}

double raw_score(MetricId id, const TextStats& s) {
  switch (id) {
    case MetricId::FRES: return flesch_reading_ease(s);
    case MetricId::FKGL: return flesch_kincaid_grade(s);
    case MetricId::CLI: return coleman_liau(s);
    case MetricId::LW: return linsear_write(s);
    case MetricId::FOG: return gunning_fog(s);
    case MetricId::DC: return dale_chall(s);
    case MetricId::SPACHE: return spache(s);
    case MetricId::ARI: return automated_readability(s);
  }
  throw Error(ErrorKind::MissingMetric, "unknown metric id");
}

void BandTable::validate() const {
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    if (!std::isfinite(cuts[k])) throw Error(ErrorKind::BadConfig, "cut points must be finite");
    if (k == 0) continue;
    const bool ordered = direction == Direction::Ascending ? cuts[k - 1] < cuts[k] : cuts[k - 1] > cuts[k];
    if (!ordered) throw Error(ErrorKind::BadConfig, "cut points must be strictly monotone");
  }
}

GradeBand BandTable::band_of(double raw) const {
  if (std::isnan(raw)) throw Error(ErrorKind::InvalidStats, "score is NaN");
  int band = 1;
  for (double cut : cuts) {
    bool past;
    if (direction == Direction::Ascending) {
      past = at_cut == CutOwner::EasierBand ? raw > cut : raw >= cut;
    } else {
      past = at_cut == CutOwner::EasierBand ? raw < cut : raw <= cut;
    }
    if (!past) break;
    ++band;
  }
  return GradeBand(band);
}

BandMappingConfig BandMappingConfig::defaults() {
  BandMappingConfig cfg;
  for (auto id : kAllMetrics) cfg.tables_[index_of(id)] = grade_table();
  cfg.tables_[index_of(MetricId::FRES)] = {Direction::Descending, {100.0, 90.0, 80.0, 60.0, 50.0},
                                           CutOwner::EasierBand};
  cfg.tables_[index_of(MetricId::DC)] = {Direction::Ascending, {4.0, 5.0, 6.0, 7.5, 9.0},
                                         CutOwner::HarderBand};
  return cfg;
}

BandMappingConfig BandMappingConfig::from_json(const nlohmann::json& j) {
  BandMappingConfig cfg = defaults();
  if (!j.is_object()) throw Error(ErrorKind::BadConfig, "band mapping config must be a JSON object");
  if (!j.contains("metrics")) return cfg;
  const auto& metrics = j.at("metrics");
  if (!metrics.is_object()) throw Error(ErrorKind::BadConfig, "\"metrics\" must be an object");
  for (const auto& [key, value] : metrics.items()) {
    const auto id = metric_from_name(key);
    if (!id) throw Error(ErrorKind::BadConfig, "unknown metric '" + key + "'");
    cfg.tables_[index_of(*id)] = table_from_json(value, cfg.table(*id), key);
  }
  return cfg;
}

BandMappingConfig BandMappingConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open band mapping config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadConfig, path.string() + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::ordered_json BandMappingConfig::to_json() const {
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (auto id : kAllMetrics) {
    const auto& t = table(id);
    metrics[std::string(name(id))] = {{"direction", direction_name(t.direction)},
                                      {"cuts", t.cuts},
                                      {"at_cut", owner_name(t.at_cut)}};
  }
  return nlohmann::ordered_json{{"metrics", metrics}};
}

void BandMappingConfig::set_table(MetricId id, const BandTable& table) {
  table.validate();
  tables_[index_of(id)] = table;
}

GradeBand map_to_band(MetricId id, double raw, const BandMappingConfig& cfg) {
  return cfg.table(id).band_of(raw);
}

MetricReport score_stats(const TextStats& stats, const BandMappingConfig& cfg) {
  MetricReport report;
  report.stats = stats;
  for (auto id : kAllMetrics) {
    const double raw = raw_score(id, stats);
    report.scores[index_of(id)] = {id, raw, map_to_band(id, raw, cfg)};
  }
  return report;
}

MetricReport score_all(std::string_view text, const WordLists& lists, const BandMappingConfig& cfg) {
  return score_stats(compute_text_stats(text, lists), cfg);
}

}  // namespace gradeband
