#pragma once

#include <cstdint>
#include <vector>

#include "guesswork/distribution.hpp"
#include "guesswork/rational.hpp"

namespace guesswork {

/// Calls `visit(counts)` for every vector of `parts` non-negative integers
/// summing to `total`, in lexicographic order of counts.
template <typename Visit>
void for_each_composition(int total, int parts, Visit&& visit) {
  if (parts <= 0) return;
  std::vector<int> counts(static_cast<std::size_t>(parts), 0);
  auto recurse = [&](auto& self, int index, int remaining) -> void {
    if (index == parts - 1) {
      counts[static_cast<std::size_t>(index)] = remaining;
      visit(static_cast<const std::vector<int>&>(counts));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[static_cast<std::size_t>(index)] = c;
      self(self, index + 1, remaining - c);
    }
  };
  recurse(recurse, 0, total);
}

/// The distribution (counts[0]/total, ..., counts[n-1]/total).
inline Distribution lattice_point(const std::vector<int>& counts, int total) {
  std::vector<Rational> probs;
  probs.reserve(counts.size());
  for (int c : counts) probs.emplace_back(c, total);
  return Distribution(std::move(probs));
}

/// Number of lattice points on the simplex with n coordinates and the given
/// subdivision: C(resolution + n - 1, n - 1).
inline Integer lattice_size(int resolution, int n) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(resolution + n - 1),
               static_cast<unsigned long>(n - 1));
  return out;
}

}  // namespace guesswork
