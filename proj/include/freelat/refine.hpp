#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freelat/elemset.hpp"
#include "freelat/lattice.hpp"
#include "freelat/partition.hpp"
#include "freelat/reflect.hpp"
#include "freelat/skolem.hpp"

namespace freelat {

// Data of one doubling refinement: filter G, ideal J, the coloring of G & J
// as A0/A1, and the interval [b, a] of the current target.
struct SplitCandidate {
  ElemSet g = 0;
  ElemSet j = 0;
  ElemSet a0 = 0;
  ElemSet a1 = 0;
  Interval interval{0, 0};
};

struct RefineOptions {
  std::size_t max_elements = 4096;
  // Permutes the class and interval search order; any order must reach the
  // same bounded reflection.
  std::optional<std::uint64_t> shuffle_seed;
};

// Literal check of the split conditions for a candidate against r, with
// C = G & J and I = [b, a] the tight interval of r(C):
//   (1) G = {s : b <= r(s)}          (2) J = {s : r(s) <= a}
//   (3) A0 is an ideal of C          (4) A0 is meet prime in G
//   (5) A1 is a filter of C          (6) A1 is join prime in J
//   (7) A0, A1 partition C, and C is a union of kernel classes
//   (8) some kernel class meets both A0 and A1
bool split_conditions_hold(const Realization& r, const Pdl& s, const SplitCandidate& c);
bool split_conditions_hold(const Realization& r, const Pdl& s, const SplitCandidate& c);

// First candidate in search order, or nullopt when none exists.
std::optional<SplitCandidate> find_split(const Realization& r, const Pdl& s, const RefineOptions& opts = {});

// Throws InvariantViolation when the refined map is not a PDL homomorphism
// or fails to refine the kernel, ResourceError past max_elements.
Realization apply_split(const Realization& r, const SplitCandidate& c, const Pdl& s,
                        const RefineOptions& opts = {});

struct RefineStep {
  Partition kernel;   // after the step
  Interval interval;  // doubled interval of the previous target
  ElemSet a0;
  ElemSet a1;
  int target_size;
};

struct BoundedReflection {
  Partition delta;
  Partition beta;
  Realization initial;
  Realization final;
  std::vector<RefineStep> steps;
};

// Refines `start` until no split exists.
BoundedReflection refine_to_bounded(const Realization& start, const Pdl& s, const RefineOptions& opts = {});
BoundedReflection bounded_reflection(const Pdl& s, const RefineOptions& opts = {});

enum class Verdict { Yes, No };

struct Certificate {
  FiniteLattice lattice;
  std::vector<int> map;
};

struct Decision {
  Verdict verdict = Verdict::No;
  Partition delta;
  std::optional<Partition> beta;  // unset on an early YES at delta
  std::vector<RefineStep> steps;
  std::optional<Certificate> certificate;
  std::optional<NegPair> violated;
};

Decision decide_standardized(const Pdl& s, const RefineOptions& opts = {});

struct LiftResult {
  DoublingResult doubling;
  std::vector<int> map;  // into doubling.doubled
  ElemSet gm = 0;        // forced to bit 1
  ElemSet lj = 0;        // forced to bit 0
};

// Lift of r0 through lambda: L[I] -> L. Throws InvariantViolation when the
// forced sets meet, which standardization rules out.
LiftResult lift_realization(const Realization& r0, Interval i, const Pdl& s);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Independent check: lattice axioms, boundedness, homomorphism, negations.
VerifyReport verify_certificate(const Pdl& s, const Certificate& c);
VerifyReport verify_certificate(const Pdl& s, const FiniteLattice& l, const std::vector<int>& map);

// Parses and verifies a certificate document; parse failures are reported
// as failed checks.
VerifyReport verify_certificate_json(const Pdl& s, const nlohmann::json& j);

nlohmann::json certificate_to_json(const Pdl& s, const Decision& d);
// Throws InvalidLattice or std::invalid_argument on malformed input.
Certificate certificate_from_json(const Pdl& s, const nlohmann::json& j);

}  // namespace freelat
