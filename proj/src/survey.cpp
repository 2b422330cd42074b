#include "gradeband/survey.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numeric>

#include "gradeband/error.hpp"

namespace gradeband {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct CsvTable {
  std::map<std::string, std::size_t> columns;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;  // (line, fields)
};

CsvTable read_csv(std::istream& in, std::initializer_list<const char*> required) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    for (auto& f : fields) f = trim(f);
    if (header) {
      if (!fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
      for (std::size_t i = 0; i < fields.size(); ++i) t.columns[fields[i]] = i;
      for (const char* name : required) {
        if (!t.columns.contains(name)) {
          throw Error(ErrorKind::MissingField, std::string("missing column \"") + name + "\"", line_no);
        }
      }
      header = false;
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw Error(ErrorKind::ParseError,
                  "expected " + std::to_string(t.columns.size()) + " fields, got " + std::to_string(fields.size()),
                  line_no);
    }
    t.rows.emplace_back(line_no, std::move(fields));
  }
  if (header) throw Error(ErrorKind::NoData, "CSV input has no header");
  return t;
}

template <class T>
T parse_number(const std::string& s, const char* column, std::size_t line_no) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorKind::ParseError, std::string("bad number in column \"") + column + "\": " + s, line_no);
  }
  return value;
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

void require_permutation(std::span<const int> ranking) {
  const auto n = static_cast<int>(ranking.size());
  std::vector<bool> seen(ranking.size(), false);
  for (int r : ranking) {
    if (r < 1 || r > n || seen[static_cast<std::size_t>(r - 1)]) {
      throw Error(ErrorKind::NotAPermutation, "ranking is not a permutation of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(r - 1)] = true;
  }
  if (n < 2) throw Error(ErrorKind::NotAPermutation, "ranking needs at least two positions");
}

PairCounts count_pairs(std::span<const int> ranking) {
  require_permutation(ranking);
  PairCounts c;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    for (std::size_t j = i + 1; j < ranking.size(); ++j) {
      (ranking[i] < ranking[j] ? c.concordant : c.discordant) += 1;
    }
  }
  return c;
}

double kendall_tau(std::span<const int> ranking) {
  const auto c = count_pairs(ranking);
  return static_cast<double>(c.concordant - c.discordant) / static_cast<double>(c.concordant + c.discordant);
}

std::vector<int> l1_rank_distance(std::span<const int> ranking) {
  require_permutation(ranking);
  std::vector<int> out(ranking.size());
  for (std::size_t k = 0; k < ranking.size(); ++k) out[k] = std::abs(ranking[k] - static_cast<int>(k + 1));
  return out;
}

RankingSummary summarize_rankings(std::span<const RankingObservation> obs) {
  if (obs.empty()) throw Error(ErrorKind::NoData, "no ranking observations");
  const std::size_t n = obs.front().ranking.size();
  RankingSummary s;
  s.observations = obs.size();
  s.mean_l1_per_position.assign(n, 0.0);
  PairCounts total;
  std::map<std::string, PairCounts> per_rater;
  for (const auto& o : obs) {
    if (o.ranking.size() != n) throw Error(ErrorKind::DimensionMismatch, "rankings differ in length");
    const auto c = count_pairs(o.ranking);
    total.concordant += c.concordant;
    total.discordant += c.discordant;
    auto& r = per_rater[o.rater_id];
    r.concordant += c.concordant;
    r.discordant += c.discordant;
    const auto l1 = l1_rank_distance(o.ranking);
    for (std::size_t k = 0; k < n; ++k) s.mean_l1_per_position[k] += l1[k];
  }
  for (auto& v : s.mean_l1_per_position) v /= static_cast<double>(obs.size());
  auto tau = [](const PairCounts& c) {
    return static_cast<double>(c.concordant - c.discordant) / static_cast<double>(c.concordant + c.discordant);
  };
  s.tau_pooled = tau(total);
  s.raters = per_rater.size();
  double sum = 0.0;
  for (const auto& [_, c] : per_rater) sum += tau(c);
  s.tau_per_rater = sum / static_cast<double>(per_rater.size());
  return s;
}

std::vector<RankingObservation> read_ranking_csv(std::istream& in) {
  const auto t = read_csv(in, {"rater_id", "position", "assigned_rank"});
  const auto item_col = t.columns.find("item_id");
  std::map<std::pair<std::string, std::string>, std::map<int, std::pair<int, std::size_t>>> grouped;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& [line_no, f] : t.rows) {
    std::pair key{f[t.columns.at("rater_id")], item_col == t.columns.end() ? std::string{} : f[item_col->second]};
    const int pos = parse_number<int>(f[t.columns.at("position")], "position", line_no);
    const int rank = parse_number<int>(f[t.columns.at("assigned_rank")], "assigned_rank", line_no);
    auto [it, fresh] = grouped.try_emplace(key);
    if (fresh) order.push_back(key);
    if (!it->second.emplace(pos, std::pair{rank, line_no}).second) {
      throw Error(ErrorKind::ParseError, "duplicate position " + std::to_string(pos), line_no);
    }
  }
  std::vector<RankingObservation> out;
  for (const auto& key : order) {
    const auto& positions = grouped.at(key);
    RankingObservation o{key.first, key.second, {}};
    int expected = 1;
    for (const auto& [pos, entry] : positions) {
      if (pos != expected++) {
        throw Error(ErrorKind::NotAPermutation, "positions of rater \"" + key.first + "\" are not 1..n",
                    entry.second);
      }
      o.ranking.push_back(entry.first);
    }
    require_permutation(o.ranking);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<LikertResponse> read_likert_csv(std::istream& in) {
  const auto t = read_csv(in, {"rater_id", "band", "q1", "q2", "q3"});
  std::vector<LikertResponse> out;
  for (const auto& [line_no, f] : t.rows) {
    LikertResponse r;
    r.rater_id = f[t.columns.at("rater_id")];
    r.band = parse_number<int>(f[t.columns.at("band")], "band", line_no);
    if (r.band < 1 || r.band > 6) throw Error(ErrorKind::BadGrade, "band must be in 1..6", line_no);
    const char* names[] = {"q1", "q2", "q3"};
    for (std::size_t q = 0; q < 3; ++q) r.scores[q] = parse_number<double>(f[t.columns.at(names[q])], names[q], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::NoData, "no values");
  std::sort(values.begin(), values.end());
  BoxStats b;
  b.count = values.size();
  b.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  b.min = values.front();
  b.max = values.back();
  b.q1 = quantile(values, 0.25);
  b.median = quantile(values, 0.5);
  b.q3 = quantile(values, 0.75);
  return b;
}

std::map<std::pair<int, int>, BoxStats> summarize_likert(std::span<const LikertResponse> responses) {
  std::map<std::pair<int, int>, std::vector<double>> values;
  for (const auto& r : responses) {
    for (int q = 0; q < 3; ++q) values[{r.band, q}].push_back(r.scores[static_cast<std::size_t>(q)]);
  }
  std::map<std::pair<int, int>, BoxStats> out;
  for (auto& [key, v] : values) out[key] = box_stats(std::move(v));
  return out;
}

void write_box_csv(std::ostream& out, const std::map<std::pair<int, int>, BoxStats>& stats) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "band,question,count,mean,min,q1,median,q3,max\n" << std::setprecision(10);
  for (const auto& [key, b] : stats) {
    out << key.first << ",q" << key.second + 1 << ',' << b.count << ',' << b.mean << ',' << b.min << ',' << b.q1
        << ',' << b.median << ',' << b.q3 << ',' << b.max << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

nlohmann::ordered_json to_json(const RankingSummary& s) {
  return {{"observations", s.observations},
          {"raters", s.raters},
          {"tau_pooled", s.tau_pooled},
          {"tau_per_rater", s.tau_per_rater},
          {"mean_l1_per_position", s.mean_l1_per_position}};
}

}  // namespace gradeband
