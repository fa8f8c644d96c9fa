#include "regsel/subset.hpp"

#include <algorithm>
#include <sstream>

namespace regsel {

CandidateSubset::CandidateSubset(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool CandidateSubset::contains(int column) const {
  return std::binary_search(indices_.begin(), indices_.end(), column);
}

bool CandidateSubset::pair_legal(int m) const {
  for (int j : indices_) {
    if (j < 0 || j >= 2 * m) return false;
    if (j < m && contains(j + m)) return false;
  }
  return true;
}

std::string CandidateSubset::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out << ',';
    out << indices_[i];
  }
  out << '}';
  return out.str();
}

std::size_t CandidateSubsetHash::operator()(const CandidateSubset& s) const noexcept {
  // FNV-1a over the index sequence.
  std::size_t h = 1469598103934665603ULL;
  for (int j : s) {
    h ^= static_cast<std::size_t>(j) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace regsel
