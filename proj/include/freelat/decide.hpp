#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freelat/formula.hpp"
#include "freelat/refine.hpp"
#include "freelat/skolem.hpp"

namespace freelat {

struct DecideOptions {
  std::size_t max_disjuncts = 4096;
  std::size_t max_branches = 4096;
  std::size_t max_elements = 4096;
  unsigned threads = 0;  // 0: hardware concurrency
};

// One standardized presentation and its decision.
struct BranchRecord {
  Presentation presentation;
  std::shared_ptr<const Pdl> pdl;
  Decision decision;
};

struct DisjunctRecord {
  Presentation presentation;
  bool consistent = true;
  std::optional<Literal> inconsistency;  // the R- literal the closure forces
  std::vector<BranchRecord> branches;
  bool occurs = false;  // some branch decided YES
};

struct Report {
  Sentence input;
  Sentence existential;  // the sentence actually decided
  std::vector<DisjunctRecord> disjuncts;
  bool occurs = false;  // the existential sentence holds
  bool truth = false;   // the input sentence holds
};

// Decides the sentence in infinite free lattices. Throws ResourceError when
// a cap is exceeded.
Report decide(const Sentence& s, const DecideOptions& opts = {});

// Branch-level pipeline for one presentation: Skolem consistency,
// standardization, and a decision per standardized branch.
DisjunctRecord decide_presentation(const Presentation& p, const DecideOptions& opts = {});

nlohmann::json report_to_json(const Report& r, bool with_trace);
std::string report_to_text(const Report& r, bool with_trace);

// The first YES branch's certificate, if any.
std::optional<nlohmann::json> first_certificate(const Report& r);

const char* verdict_name(Verdict v);

}  // namespace freelat
