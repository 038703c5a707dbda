#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace setaut {

// A bijection on {0..n-1}, stored as its full image sequence.
// Composition is right-to-left: (p * q)(i) = p(q(i)).
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int domain_size);

  int domain_size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm operator*(const Perm& other) const;

  bool operator==(const Perm& other) const { return images_ == other.images_; }
  auto operator<=>(const Perm& other) const { return images_ <=> other.images_; }

  // Smallest point i with p(i) != i, or -1 for the identity.
  int first_moved_point() const;

  // Disjoint cycles, smallest element first in each cycle, cycles sorted by
  // smallest element, fixed points omitted. Identity renders as "()".
  std::string cycle_string() const;

private:
  std::vector<int> images_;
};

}  // namespace setaut
