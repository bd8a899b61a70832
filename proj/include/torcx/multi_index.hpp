#pragma once

#include <compare>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torcx {

/// Strictly increasing sequence of 1-based coordinate indices, K = (k_1 < ... < k_p).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<int>& entries() const { return entries_; }
  int max_entry() const { return entries_.empty() ? 0 : entries_.back(); }

  bool contains(int mu) const;
  /// 1-based position of mu, if present.
  std::optional<std::size_t> position(int mu) const;
  /// K with mu removed; mu must be present.
  MultiIndex without(int mu) const;

  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

/// Sign s with dt_mu ^ dt_{J\mu} = s dt_J, i.e. (-1)^(pos-1) for the 1-based
/// position of mu in J. Throws DomainError when mu is not in J.
int wedge_sign(int mu, const MultiIndex& J);

/// dt_A ^ dt_B = sign * dt_{A u B}; sign is 0 when A and B intersect.
std::pair<int, MultiIndex> merge_sign(const MultiIndex& a, const MultiIndex& b);

/// All increasing multi-indices of length p drawn from 1..n, lexicographic.
std::vector<MultiIndex> all_multi_indices(int n, int p);

}  // namespace torcx
