#include "setaut/perm.hpp"

#include <numeric>

#include "setaut/errors.hpp"

namespace setaut {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= domain_size() || seen[static_cast<std::size_t>(v)])
      throw DomainMismatch("image sequence is not a bijection");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Perm Perm::identity(int domain_size) {
  std::vector<int> im(static_cast<std::size_t>(domain_size));
  std::iota(im.begin(), im.end(), 0);
  Perm p;
  p.images_ = std::move(im);
  return p;
}

bool Perm::is_identity() const {
  for (int i = 0; i < domain_size(); ++i)
    if (images_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (int i = 0; i < domain_size(); ++i)
    out.images_[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
  return out;
}

Perm Perm::operator*(const Perm& other) const {
  if (domain_size() != other.domain_size())
    throw DomainMismatch("composing permutations of different domains");
  Perm out;
  out.images_.resize(images_.size());
  for (int i = 0; i < domain_size(); ++i)
    out.images_[static_cast<std::size_t>(i)] =
        images_[static_cast<std::size_t>(other.images_[static_cast<std::size_t>(i)])];
  return out;
}

int Perm::first_moved_point() const {
  for (int i = 0; i < domain_size(); ++i)
    if (images_[static_cast<std::size_t>(i)] != i) return i;
  return -1;
}

std::string Perm::cycle_string() const {
  std::string out;
  std::vector<char> done(images_.size(), 0);
  for (int i = 0; i < domain_size(); ++i) {
    if (done[static_cast<std::size_t>(i)] || images_[static_cast<std::size_t>(i)] == i)
      continue;
    out += '(';
    int j = i;
    bool first = true;
    while (!done[static_cast<std::size_t>(j)]) {
      done[static_cast<std::size_t>(j)] = 1;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
      j = images_[static_cast<std::size_t>(j)];
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace setaut
