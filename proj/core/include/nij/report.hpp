#pragma once

#include <string>
#include <vector>

namespace nij {

// FINDING marks a discrepancy in the source tables (an erratum, a relabeling,
// a completeness gap over F_p) that is recorded but does not fail the run.
enum class Status { Pass, Fail, Finding };

std::string to_string(Status s);

struct CheckRecord {
  int section = 0;
  std::string check;    // "nijenhuis", "oracle.soundness", ...
  std::string id;       // object under test
  Status status = Status::Pass;
  std::string detail;
  std::string witness;  // always set for FAIL
  double seconds = 0;
};

struct Report {
  std::string command;
  std::vector<CheckRecord> records;

  std::size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }
};

// Plain text for people. Timing is optional so output can be diffed.
std::string format_text(const Report& r, bool timing = true);
// One "key=value ..." record per line, no timing; stable across runs.
std::string format_machine(const Report& r);
// Single JSON document.
std::string format_json(const Report& r, bool timing = true);

}  // namespace nij
