#include "freelat/decide.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "freelat/reflect.hpp"
#include "freelat/standardize.hpp"

namespace freelat {

namespace {

// Runs f(0..n-1) on a small pool; rethrows the exception of the lowest
// failing index so errors do not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            f(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

RefineOptions refine_options(const DecideOptions& opts) {
  RefineOptions r;
  r.max_elements = opts.max_elements;
  return r;
}

// Consistency and standardization; branch decisions are left empty.
DisjunctRecord prepare(const Presentation& p, const DecideOptions& opts) {
  DisjunctRecord rec;
  rec.presentation = p;
  const auto check = consistent(close(subterm_universe(p), p.rplus, p.rminus), p.rminus);
  if (!check.consistent) {
    rec.consistent = false;
    rec.inconsistency = check.violated;
    return rec;
  }
  StandardizeOptions so;
  so.max_branches = opts.max_branches;
  for (auto& b : standardize(p, so)) {
    BranchRecord br;
    br.pdl = std::make_shared<const Pdl>(build_pdl(b));
    br.presentation = std::move(b);
    rec.branches.push_back(std::move(br));
  }
  return rec;
}

void settle(DisjunctRecord& d) {
  d.occurs = std::any_of(d.branches.begin(), d.branches.end(),
                         [](const BranchRecord& b) { return b.decision.verdict == Verdict::Yes; });
}

}  // namespace

const char* verdict_name(Verdict v) { return v == Verdict::Yes ? "YES" : "NO"; }

DisjunctRecord decide_presentation(const Presentation& p, const DecideOptions& opts) {
  DisjunctRecord rec = prepare(p, opts);
  for (auto& br : rec.branches) br.decision = decide_standardized(*br.pdl, refine_options(opts));
  settle(rec);
  return rec;
}

Report decide(const Sentence& s, const DecideOptions& opts) {
  Report r;
  r.input = s;
  r.existential = s.quantifier == Quantifier::Exists ? s : dualize(s);
  const auto disjuncts = to_dnf(r.existential, opts.max_disjuncts);

  // Phase one: consistency and standardization per disjunct.
  r.disjuncts.resize(disjuncts.size());
  parallel_for(disjuncts.size(), opts.threads, [&](std::size_t i) { r.disjuncts[i] = prepare(disjuncts[i], opts); });

  // Phase two: one task per standardized branch.
  std::vector<BranchRecord*> tasks;
  for (auto& d : r.disjuncts) {
    for (auto& b : d.branches) tasks.push_back(&b);
  }
  const RefineOptions ro = refine_options(opts);
  parallel_for(tasks.size(), opts.threads,
               [&](std::size_t i) { tasks[i]->decision = decide_standardized(*tasks[i]->pdl, ro); });

  for (auto& d : r.disjuncts) {
    settle(d);
    r.occurs = r.occurs || d.occurs;
  }
  r.truth = s.quantifier == Quantifier::Exists ? r.occurs : !r.occurs;
  return r;
}

nlohmann::json report_to_json(const Report& r, bool with_trace) {
  using nlohmann::json;
  json out;
  out["input"] = to_string(r.input);
  out["mode"] = r.input.quantifier == Quantifier::Exists ? "exists" : "forall";
  out["decided"] = to_string(r.existential);
  out["occurs"] = r.occurs ? "YES" : "NO";
  out["answer"] = r.truth ? "TRUE" : "FALSE";
  json ds = json::array();
  for (const auto& d : r.disjuncts) {
    json dj;
    dj["presentation"] = to_string(d.presentation);
    dj["consistent"] = d.consistent;
    dj["inconsistency"] = d.inconsistency ? json(to_string(*d.inconsistency)) : json(nullptr);
    dj["verdict"] = d.occurs ? "YES" : "NO";
    json bs = json::array();
    for (const auto& b : d.branches) {
      const Pdl& s = *b.pdl;
      const Decision& dec = b.decision;
      json bj;
      bj["presentation"] = to_string(b.presentation);
      bj["elements"] = s.names();
      bj["delta"] = bracket(s, dec.delta);
      bj["delta_all"] = bracket_all(s, dec.delta);
      bj["beta"] = dec.beta ? json(bracket(s, *dec.beta)) : json(nullptr);
      bj["steps"] = dec.steps.size();
      bj["verdict"] = verdict_name(dec.verdict);
      bj["violated"] = dec.violated ? json(to_string(dec.violated->source)) : json(nullptr);
      if (dec.certificate) bj["certificate_size"] = dec.certificate->lattice.size();
      if (with_trace) {
        json tr = json::array();
        for (const auto& st : dec.steps) {
          tr.push_back({{"partition", bracket(s, st.kernel)},
                        {"partition_all", bracket_all(s, st.kernel)},
                        {"interval", {st.interval.bottom, st.interval.top}},
                        {"target_size", st.target_size}});
        }
        bj["trace"] = tr;
      }
      bs.push_back(std::move(bj));
    }
    dj["branches"] = std::move(bs);
    ds.push_back(std::move(dj));
  }
  out["disjuncts"] = std::move(ds);
  return out;
}

std::string report_to_text(const Report& r, bool with_trace) {
  std::ostringstream os;
  os << (r.truth ? "TRUE" : "FALSE") << '\n';
  if (r.input.quantifier == Quantifier::Forall) os << "decided as: " << to_string(r.existential) << '\n';
  for (std::size_t i = 0; i < r.disjuncts.size(); ++i) {
    const auto& d = r.disjuncts[i];
    os << "disjunct " << i + 1 << ": " << to_string(d.presentation) << '\n';
    if (!d.consistent) {
      os << "  inconsistent: " << to_string(*d.inconsistency) << " is forced\n";
      continue;
    }
    for (const auto& b : d.branches) {
      const Pdl& s = *b.pdl;
      const Decision& dec = b.decision;
      os << "  branch: " << to_string(b.presentation) << '\n';
      os << "    delta " << bracket(s, dec.delta);
      if (dec.beta) os << "  beta " << bracket(s, *dec.beta) << "  steps " << dec.steps.size();
      os << "  " << verdict_name(dec.verdict);
      if (dec.violated) os << "  (" << to_string(dec.violated->source) << " fails)";
      os << '\n';
      if (with_trace) {
        for (const auto& st : dec.steps) {
          os << "      double [" << st.interval.bottom << ", " << st.interval.top << "] -> "
             << bracket(s, st.kernel) << " (" << st.target_size << " elements)\n";
        }
      }
    }
  }
  return os.str();
}

std::optional<nlohmann::json> first_certificate(const Report& r) {
  for (const auto& d : r.disjuncts) {
    for (const auto& b : d.branches) {
      if (b.decision.verdict == Verdict::Yes) {
        auto j = certificate_to_json(*b.pdl, b.decision);
        j["presentation"] = to_string(b.presentation);
        return j;
      }
    }
  }
  return std::nullopt;
}

}  // namespace freelat
