#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "freelat/elemset.hpp"
#include "freelat/lattice.hpp"
#include "freelat/partition.hpp"
#include "freelat/skolem.hpp"

namespace freelat {

// S split into a prime ideal and the complementary prime filter, i.e. a PDL
// homomorphism onto the two-element lattice.
struct TwoQuotient {
  ElemSet ideal;
  ElemSet filter;
};

// All two-quotients, ordered by ideal mask.
std::vector<TwoQuotient> two_quotients(const Pdl& s);

// PDL homomorphism from S into a finite lattice, with its kernel.
struct Realization {
  FiniteLattice target;
  std::vector<int> map;
  Partition kernel;
};

// Empty when `map` preserves the order of S and every defined join and meet;
// otherwise the first defect found.
std::optional<std::string> homomorphism_defect(const Pdl& s, const FiniteLattice& l, const std::vector<int>& map);

// Restricts the target to the sublattice generated by the image and fills in
// the kernel.
Realization make_realization(const FiniteLattice& l, const std::vector<int>& map);

struct ReflectOptions {
  // Above this many elements the image of S in 2^l is regenerated from a
  // subset of coordinates that still separates the classes of delta.
  std::size_t full_product_cap = 512;
};

struct DistributiveReflection {
  Partition delta;
  Realization r;
  std::vector<TwoQuotient> splits;
  std::vector<int> coordinates;  // splits used as coordinates of the target
};

DistributiveReflection distributive_reflection(const Pdl& s, const ReflectOptions& opts = {});

// Entry i is false when negation pair i collapses mod `kernel`, i.e. u|v and
// v share a block.
std::vector<bool> negs_satisfied(const Partition& kernel, const Pdl& s);

// Bracket notation over the elements named by a declared variable, e.g.
// `[x|y|z|m|st]`, and over all elements.
std::string bracket(const Pdl& s, const Partition& p);
std::string bracket_all(const Pdl& s, const Partition& p);

}  // namespace freelat
