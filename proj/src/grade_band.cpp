#include "gradeband/grade_band.hpp"

namespace gradeband {

namespace {

constexpr std::array<std::string_view, GradeBand::kCount> kLabels{
    "lower elementary", "middle elementary", "upper elementary", "middle school", "high school", "adult"};

constexpr std::array<std::string_view, GradeBand::kCount> kShortLabels{
    "L-Elem", "M-Elem", "H-Elem", "Middle", "High", "Adult"};

}  // namespace

std::string_view GradeBand::label() const noexcept { return kLabels[index_ - 1]; }

std::string_view GradeBand::short_label() const noexcept { return kShortLabels[index_ - 1]; }

}  // namespace gradeband
