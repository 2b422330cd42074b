#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string_view>

#include "gradeband/error.hpp"

namespace gradeband {

/// One of the six school-level bands: [1,2], [3,4], [5,6], [7,8,9],
/// [10,11,12], [13+]. Index 1 is the easiest band.
class GradeBand {
 public:
  static constexpr int kCount = 6;

  constexpr GradeBand() = default;
  constexpr explicit GradeBand(int index) : index_(checked(index)) {}

  constexpr int index() const noexcept { return index_; }

  /// Lowest school grade inside the band.
  constexpr int first_grade() const noexcept { return kFirstGrade[index_ - 1]; }
  /// Highest school grade inside the band; empty for the open 13+ band.
  constexpr std::optional<int> last_grade() const noexcept {
    if (index_ == kCount) return std::nullopt;
    return kFirstGrade[index_] - 1;
  }

  constexpr bool contains_grade(int grade) const noexcept {
    const auto last = last_grade();
    return grade >= first_grade() && (!last || grade <= *last);
  }

  /// "lower elementary", ..., "adult".
  std::string_view label() const noexcept;
  /// "L-Elem", ..., "Adult".
  std::string_view short_label() const noexcept;

  friend constexpr auto operator<=>(GradeBand, GradeBand) = default;

  static constexpr std::array<GradeBand, kCount> all() {
    return {GradeBand(1), GradeBand(2), GradeBand(3),
            GradeBand(4), GradeBand(5), GradeBand(6)};
  }

 private:
  static constexpr std::array<int, kCount> kFirstGrade{1, 3, 5, 7, 10, 13};

  static constexpr int checked(int index) {
    if (index < 1 || index > kCount) {
      throw Error(ErrorKind::BadGrade, "band index must be in 1..6");
    }
    return index;
  }

  int index_ = 1;
};

}  // namespace gradeband
