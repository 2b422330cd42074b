#include "gradeband/integration.hpp"

#include <algorithm>

#include "gradeband/error.hpp"

namespace gradeband {

namespace {

constexpr std::array<MetricId, 2> kWordList{MetricId::DC, MetricId::SPACHE};
constexpr std::array<MetricId, 3> kLength{MetricId::FRES, MetricId::FKGL, MetricId::CLI};
constexpr std::array<MetricId, 2> kSyllable{MetricId::LW, MetricId::FOG};

std::size_t position_in_integrated(MetricId id) {
  const auto it = std::find(kIntegratedMetrics.begin(), kIntegratedMetrics.end(), id);
  return static_cast<std::size_t>(it - kIntegratedMetrics.begin());
}

}  // namespace

std::span<const MetricId> members(MetricGroup group) noexcept {
  switch (group) {
    case MetricGroup::WordList: return kWordList;
    case MetricGroup::Length: return kLength;
    case MetricGroup::Syllable: return kSyllable;
  }
  return {};
}

std::string_view name(MetricGroup group) noexcept {
  switch (group) {
    case MetricGroup::WordList: return "G1";
    case MetricGroup::Length: return "G2";
    case MetricGroup::Syllable: return "G3";
  }
  return "?";
}

std::string_view name(Decision d) noexcept {
  switch (d) {
    case Decision::Unanimous: return "unanimous";
    case Decision::Mode: return "mode";
    case Decision::Median: return "median";
  }
  return "?";
}

GradeBand group_vote(std::span<const GradeBand> member_bands) {
  if (member_bands.size() != 2 && member_bands.size() != 3) {
    throw Error(ErrorKind::WrongArity, "a metric group has 2 or 3 members, got " +
                                           std::to_string(member_bands.size()));
  }
  // Bands are disjoint, so the intersection is nonempty only when all agree;
  // either way the answer is the smallest member band.
  return *std::min_element(member_bands.begin(), member_bands.end());
}

IntegrationResult combine_votes(const std::array<GradeBand, 3>& votes) {
  IntegrationResult result;
  result.group_votes = votes;
  const auto [a, b, c] = votes;
  if (a == b && b == c) {
    result.final_band = a;
    result.decided_by = Decision::Unanimous;
  } else if (a == b || a == c) {
    result.final_band = a;
    result.decided_by = Decision::Mode;
  } else if (b == c) {
    result.final_band = b;
    result.decided_by = Decision::Mode;
  } else {
    auto sorted = votes;
    std::sort(sorted.begin(), sorted.end());
    result.final_band = sorted[1];
    result.decided_by = Decision::Median;
  }
  return result;
}

IntegrationResult integrate(const std::array<GradeBand, 7>& bands) {
  std::array<GradeBand, 3> votes{};
  for (std::size_t g = 0; g < kGroups.size(); ++g) {
    const auto ids = members(kGroups[g]);
    std::array<GradeBand, 3> member_bands{};
    for (std::size_t k = 0; k < ids.size(); ++k) member_bands[k] = bands[position_in_integrated(ids[k])];
    votes[g] = group_vote(std::span<const GradeBand>(member_bands.data(), ids.size()));
  }
  return combine_votes(votes);
}

IntegrationResult integrate(const MetricReport& report) {
  std::array<GradeBand, 7> bands{};
  for (std::size_t k = 0; k < kIntegratedMetrics.size(); ++k) bands[k] = report[kIntegratedMetrics[k]].band;
  return integrate(bands);
}

IntegrationResult integrate(const std::map<MetricId, GradeBand>& bands) {
  std::array<GradeBand, 7> ordered{};
  for (std::size_t k = 0; k < kIntegratedMetrics.size(); ++k) {
    const auto it = bands.find(kIntegratedMetrics[k]);
    if (it == bands.end()) {
      throw Error(ErrorKind::MissingMetric,
                  "no band for metric " + std::string(name(kIntegratedMetrics[k])));
    }
    ordered[k] = it->second;
  }
  return integrate(ordered);
}

GradeBand band_of_grade(int grade) {
  if (grade < 1) throw Error(ErrorKind::BadGrade, "grade must be >= 1, got " + std::to_string(grade));
  for (auto band : GradeBand::all()) {
    if (band.contains_grade(grade)) return band;
  }
  return GradeBand(GradeBand::kCount);
}

}  // namespace gradeband
