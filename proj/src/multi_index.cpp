#include "torcx/multi_index.hpp"

#include "torcx/error.hpp"

#include <algorithm>

namespace torcx {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 1) throw DomainError("multi-index entries must be >= 1");
    if (i > 0 && entries_[i] <= entries_[i - 1])
      throw DomainError("multi-index entries must be strictly increasing");
  }
}

bool MultiIndex::contains(int mu) const {
  return std::binary_search(entries_.begin(), entries_.end(), mu);
}

std::optional<std::size_t> MultiIndex::position(int mu) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), mu);
  if (it == entries_.end() || *it != mu) return std::nullopt;
  return static_cast<std::size_t>(it - entries_.begin()) + 1;
}

MultiIndex MultiIndex::without(int mu) const {
  if (!contains(mu)) throw DomainError("index " + std::to_string(mu) + " not in " + to_string());
  std::vector<int> out;
  out.reserve(entries_.size() - 1);
  for (int e : entries_)
    if (e != mu) out.push_back(e);
  MultiIndex r;
  r.entries_ = std::move(out);
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

int wedge_sign(int mu, const MultiIndex& J) {
  const auto pos = J.position(mu);
  if (!pos) throw DomainError("wedge_sign: " + std::to_string(mu) + " not in " + J.to_string());
  return (*pos % 2 == 1) ? 1 : -1;
}

std::pair<int, MultiIndex> merge_sign(const MultiIndex& a, const MultiIndex& b) {
  // parity of inversions between the concatenation a|b and its sorted order
  std::size_t inversions = 0;
  for (int x : a)
    for (int y : b) {
      if (x == y) return {0, MultiIndex{}};
      if (x > y) ++inversions;
    }
  std::vector<int> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  return {inversions % 2 == 0 ? 1 : -1, MultiIndex(std::move(merged))};
}

std::vector<MultiIndex> all_multi_indices(int n, int p) {
  std::vector<MultiIndex> out;
  if (p < 0 || p > n) return out;
  std::vector<int> cur(p);
  for (int i = 0; i < p; ++i) cur[i] = i + 1;
  while (true) {
    out.emplace_back(cur);
    int i = p - 1;
    while (i >= 0 && cur[i] == n - p + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int k = i + 1; k < p; ++k) cur[k] = cur[k - 1] + 1;
  }
  return out;
}

}  // namespace torcx
