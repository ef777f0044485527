#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "freelat/formula.hpp"
#include "freelat/skolem.hpp"

namespace freelat {

struct StandardizeOptions {
  std::size_t max_branches = 4096;
  CloseOptions close;
};

// An inclusion meet <= join derived in S+ with no inclusion that resolves it
// the way (W) requires.
struct WFailure {
  Term meet;
  Term join;
};

std::optional<WFailure> find_w_failure(const Pdl& s);

// Standardization rules:
//   (1) a derived meet <= join with no resolving inclusion branches into
//       "some meetand <= join" or "meet <= some joinand";
//   (2) u1|..|un !<= v branches into some ui !<= v;
//   (3) u !<= v1&..&vn branches into u !<= some vi.

// Rules (2) and (3), plus the (W) expansion of a non-inclusion
// meet !<= join into the meetands and joinands. Returns the
// disjunction, each entry a conjunction of literals of shape (gen, gen),
// (meet, gen) or (gen, join).
std::vector<std::vector<Literal>> expand_negation(const Literal& l, std::size_t cap = 4096);

// Disjunction of standardized presentations that occurs in a (W)-lattice iff
// `p` does. Inconsistent branches are dropped, so an inconsistent `p` gives
// an empty list. Throws ResourceError past `max_branches`.
std::vector<Presentation> standardize(const Presentation& p, const StandardizeOptions& opts = {});

// Direct check of the three standardization conditions.
bool is_standardized(const Pdl& s);

}  // namespace freelat
