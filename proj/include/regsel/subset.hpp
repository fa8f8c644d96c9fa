#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace regsel {

/// Sorted, duplicate-free set of column indices into the augmented design
/// matrix. Column j (j < m) is an original variable and j + m its log
/// partner.
class CandidateSubset {
 public:
  CandidateSubset() = default;
  explicit CandidateSubset(std::vector<int> indices);
  CandidateSubset(std::initializer_list<int> indices)
      : CandidateSubset(std::vector<int>(indices)) {}

  [[nodiscard]] const std::vector<int>& indices() const noexcept { return indices_; }
  [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
  [[nodiscard]] bool empty() const noexcept { return indices_.empty(); }
  [[nodiscard]] int operator[](std::size_t i) const { return indices_[i]; }
  [[nodiscard]] auto begin() const noexcept { return indices_.begin(); }
  [[nodiscard]] auto end() const noexcept { return indices_.end(); }

  [[nodiscard]] bool contains(int column) const;

  /// True when no column appears together with its log partner and every
  /// index lies in [0, 2m).
  [[nodiscard]] bool pair_legal(int m) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const CandidateSubset&, const CandidateSubset&) = default;
  friend auto operator<=>(const CandidateSubset&, const CandidateSubset&) = default;

 private:
  std::vector<int> indices_;
};

struct CandidateSubsetHash {
  std::size_t operator()(const CandidateSubset& s) const noexcept;
};

/// Partner column of `column` in a design with `m` original variables.
[[nodiscard]] constexpr int paired_column(int column, int m) noexcept {
  return column < m ? column + m : column - m;
}

}  // namespace regsel
