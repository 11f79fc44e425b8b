#pragma once

#include "mwkt/gp.hpp"

namespace mwkt {

// one executed check inside a verification suite
struct SuiteCheck {
  std::string ring;     // ring spec, or "" for ring-independent checks
  std::string name;     // stable check identifier
  std::string verdict;  // "pass" | "fail" | "finding" | "skipped"
  std::string note;     // reason for skipped/finding, structures, witnesses
  long instances = 0;   // quantified instances evaluated
};

// report for one suite run; the JSON form is deterministic (no wall times),
// timings appear only in the text rendering.
struct SuiteReport {
  std::string suite;
  std::string anchor;  // the citable claim this suite certifies
  std::vector<std::string> rings;
  std::vector<SuiteCheck> checks;
  double seconds = 0.0;
  json artifacts;  // content hashes of consulted structures

  long count(const std::string& verdict) const;
  bool failed() const { return count("fail") > 0; }
  json to_json() const;
  std::string text() const;
};

struct SuiteOptions {
  std::vector<std::string> rings;  // empty = suite-specific default set
  int degree = -1;                 // -1 = suite default degree range
  int max_eta = 2;
  bool heavy = false;
};

// registry order is the canonical report order
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// UnknownSuite for unregistered names; resource-cap errors propagate.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

// runs the named suites (all registered ones when names is empty) on up to
// `jobs` worker threads; the returned order follows the registry, not
// completion order, so reports are deterministic for fixed inputs.
std::vector<SuiteReport> run_suites(std::vector<std::string> names,
                                    const SuiteOptions& opt, int jobs);

}  // namespace mwkt
