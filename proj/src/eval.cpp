#include "gradeband/eval.hpp"

#include <fstream>
#include <iomanip>
#include <limits>

namespace gradeband {

namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t row_of(GradeBand b) { return static_cast<std::size_t>(b.index() - 1); }

std::vector<const EvalItem*> targeting(std::span<const EvalItem> items, GradeBand band) {
  std::vector<const EvalItem*> out;
  for (const auto& item : items) {
    if (item.target == band) out.push_back(&item);
  }
  if (out.empty()) {
    throw Error(ErrorKind::NoData, "no items target band " + std::to_string(band.index()));
  }
  return out;
}

GradeBand band_field(const nlohmann::json& j, const char* key, std::size_t line_no) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    throw Error(ErrorKind::MissingField, std::string("missing field \"") + key + "\"", line_no);
  }
  if (!it->is_number_integer() || it->get<long long>() < 1 || it->get<long long>() > GradeBand::kCount) {
    throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be an integer in 1..6", line_no);
  }
  return GradeBand(it->get<int>());
}

const nlohmann::json& object_field(const nlohmann::json& j, const char* key, std::size_t line_no) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_object()) {
    throw Error(ErrorKind::MissingField, std::string("missing object \"") + key + "\"", line_no);
  }
  return *it;
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const EvalItem> items) {
  ConfusionMatrix m{};
  for (const auto& item : items) ++m[row_of(item.target)][row_of(item.final_band)];
  return m;
}

PercentMatrix row_normalized(const ConfusionMatrix& m) {
  PercentMatrix out{};
  for (std::size_t r = 0; r < m.size(); ++r) {
    std::size_t total = 0;
    for (auto c : m[r]) total += c;
    if (total == 0) continue;
    for (std::size_t c = 0; c < m[r].size(); ++c) {
      out[r][c] = 100.0 * static_cast<double>(m[r][c]) / static_cast<double>(total);
    }
  }
  return out;
}

double target_success(std::span<const EvalItem> items, GradeBand band) {
  const auto selected = targeting(items, band);
  std::size_t hits = 0;
  for (const auto* item : selected) hits += item->final_band == band ? 1 : 0;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(selected.size());
}

std::array<std::optional<double>, GradeBand::kCount> target_success(std::span<const EvalItem> items) {
  std::array<std::optional<double>, GradeBand::kCount> out;
  const auto m = confusion_matrix(items);
  for (auto band : GradeBand::all()) {
    const auto& row = m[row_of(band)];
    std::size_t total = 0;
    for (auto c : row) total += c;
    if (total > 0) out[row_of(band)] = 100.0 * static_cast<double>(row[row_of(band)]) / static_cast<double>(total);
  }
  return out;
}

AriLevel mean_ari_level(std::span<const EvalItem> items, GradeBand band, const BandMappingConfig& cfg) {
  const auto selected = targeting(items, band);
  double sum = 0.0;
  for (const auto* item : selected) sum += item->ari_raw;
  const double mean = sum / static_cast<double>(selected.size());
  return {mean, map_to_band(MetricId::ARI, mean, cfg)};
}

std::map<MetricId, double> per_metric_mean_band(std::span<const EvalItem> items, GradeBand band) {
  const auto selected = targeting(items, band);
  std::map<MetricId, double> out;
  for (std::size_t k = 0; k < kIntegratedMetrics.size(); ++k) {
    double sum = 0.0;
    for (const auto* item : selected) sum += item->metric_bands[k].index();
    out[kIntegratedMetrics[k]] = sum / static_cast<double>(selected.size());
  }
  return out;
}

EvalReport evaluate(std::span<const EvalItem> items, const BandMappingConfig& cfg) {
  EvalReport report;
  report.total = items.size();
  report.confusion = confusion_matrix(items);
  for (auto band : GradeBand::all()) {
    std::size_t count = 0;
    for (auto c : report.confusion[row_of(band)]) count += c;
    if (count == 0) continue;
    report.bands[row_of(band)] = BandEvaluation{count, target_success(items, band), mean_ari_level(items, band, cfg),
                                                per_metric_mean_band(items, band)};
  }
  return report;
}

ordered_json to_json(const EvalReport& report) {
  ordered_json bands = ordered_json::array();
  for (auto band : GradeBand::all()) {
    const auto& b = report.bands[row_of(band)];
    ordered_json row{{"band", band.index()}, {"label", band.short_label()}};
    if (!b) {
      row["count"] = 0;
      row["target_pct"] = nullptr;
    } else {
      row["count"] = b->count;
      row["target_pct"] = b->target_pct;
      row["ari_mean"] = b->ari.mean_raw;
      row["ari_level"] = b->ari.level.index();
      ordered_json means = ordered_json::object();
      for (auto id : kIntegratedMetrics) means[std::string(name(id))] = b->mean_metric_band.at(id);
      row["mean_metric_band"] = std::move(means);
    }
    bands.push_back(std::move(row));
  }
  ordered_json confusion = ordered_json::array();
  for (const auto& r : report.confusion) confusion.push_back(r);
  ordered_json pct = ordered_json::array();
  for (const auto& r : row_normalized(report.confusion)) pct.push_back(r);
  return {{"total", report.total}, {"bands", std::move(bands)}, {"confusion", std::move(confusion)},
          {"confusion_pct", std::move(pct)}};
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& m) {
  out << "target,1,2,3,4,5,6\n";
  for (std::size_t r = 0; r < m.size(); ++r) {
    out << r + 1;
    for (auto c : m[r]) out << ',' << c;
    out << '\n';
  }
}

void write_confusion_csv(std::ostream& out, const PercentMatrix& m) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "target,1,2,3,4,5,6\n" << std::fixed << std::setprecision(4);
  for (std::size_t r = 0; r < m.size(); ++r) {
    out << r + 1;
    for (auto c : m[r]) out << ',' << c;
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

ClassifiedLine parse_classified_line(std::string_view line, std::size_t line_no) {
  ClassifiedLine out;
  out.record = parse_record(line, line_no);
  const auto j = nlohmann::json::parse(line);
  out.band = band_field(j, "band", line_no);
  out.ari_band = band_field(j, "ari_band", line_no);
  const auto ari = j.find("ari");
  if (ari == j.end() || !ari->is_number()) throw Error(ErrorKind::MissingField, "missing field \"ari\"", line_no);
  out.ari = ari->get<double>();
  const auto& bands = object_field(j, "metric_bands", line_no);
  const auto& scores = object_field(j, "scores", line_no);
  for (std::size_t k = 0; k < kIntegratedMetrics.size(); ++k) {
    const std::string key(name(kIntegratedMetrics[k]));
    out.metric_bands[k] = band_field(bands, key.c_str(), line_no);
    const auto s = scores.find(key);
    if (s == scores.end() || !s->is_number()) {
      throw Error(ErrorKind::MissingField, "missing score \"" + key + "\"", line_no);
    }
    out.scores[k] = s->get<double>();
  }
  return out;
}

std::map<std::string, GradeBand> load_targets(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open targets file " + path.string());
  std::map<std::string, GradeBand> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("id") || !j.at("id").is_string()) {
      throw Error(ErrorKind::MissingField, "missing field \"id\"", line_no);
    }
    out[j.at("id").get<std::string>()] = band_field(j, "target_band", line_no);
  }
  return out;
}

EvalInput load_eval_items(const std::filesystem::path& classified, const std::map<std::string, GradeBand>& targets,
                          bool lenient) {
  std::ifstream in(classified, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + classified.string());
  EvalInput input;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto c = parse_classified_line(line, line_no);
      std::optional<GradeBand> target = c.record.target_band;
      if (const auto it = targets.find(c.record.id); it != targets.end()) target = it->second;
      if (!target) throw Error(ErrorKind::MissingField, "no target band for id \"" + c.record.id + "\"", line_no);
      input.items.push_back({c.record.id, *target, c.band, c.ari, c.metric_bands});
    } catch (const Error& e) {
      if (!lenient) throw;
      input.skipped.push_back({line_no, {}, e.kind(), e.what()});
    }
  }
  return input;
}

}  // namespace gradeband
