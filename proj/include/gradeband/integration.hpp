#pragma once

#include <array>
#include <map>
#include <span>
#include <string_view>

#include "gradeband/grade_band.hpp"
#include "gradeband/metrics.hpp"

namespace gradeband {

/// Metric families voted on as a unit:
///   WordList  = {DC, SPACHE}         (familiar-word lists)
///   Length    = {FRES, FKGL, CLI}    (sentence and word length)
///   Syllable  = {LW, FOG}            (syllables per word)
enum class MetricGroup { WordList, Length, Syllable };

inline constexpr std::array<MetricGroup, 3> kGroups{MetricGroup::WordList, MetricGroup::Length,
                                                    MetricGroup::Syllable};

std::span<const MetricId> members(MetricGroup group) noexcept;
std::string_view name(MetricGroup group) noexcept;

enum class Decision { Unanimous, Mode, Median };

std::string_view name(Decision d) noexcept;

struct IntegrationResult {
  std::array<GradeBand, 3> group_votes{};  // indexed like kGroups
  GradeBand final_band;
  Decision decided_by = Decision::Unanimous;

  bool operator==(const IntegrationResult&) const = default;
};

/// Agreed band when every member lands in the same band, otherwise the
/// easiest member band. Accepts two or three bands; throws WrongArity
/// otherwise.
GradeBand group_vote(std::span<const GradeBand> member_bands);

/// Mode of the three votes when two or more agree, median otherwise.
IntegrationResult combine_votes(const std::array<GradeBand, 3>& votes);

/// Bands of the seven integrated metrics, in kIntegratedMetrics order.
IntegrationResult integrate(const std::array<GradeBand, 7>& bands);
IntegrationResult integrate(const MetricReport& report);
/// Throws MissingMetric if any of the seven integrated metrics is absent.
/// An ARI entry, if present, is ignored.
IntegrationResult integrate(const std::map<MetricId, GradeBand>& bands);

/// Band containing a school grade; any grade >= 13 maps to band 6.
/// Throws BadGrade for grade < 1.
GradeBand band_of_grade(int grade);

}  // namespace gradeband
