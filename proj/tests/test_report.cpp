#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "nij/catalog.hpp"
#include "nij/report.hpp"
#include "nij/verify.hpp"

using namespace nij;

namespace {

Report sample() {
  Report r;
  r.command = "verify-paper";
  r.records.push_back({2, "catalog.integrity", "catalog", Status::Pass, "", "", 0.5});
  r.records.push_back({3, "nijenhuis", "N_X^1", Status::Fail, "nonzero residual", "(e1, e1) -> 2 e2", 0.1});
  r.records.push_back({4, "nijenhuis", "N_Y^2", Status::Finding, "corrected by N_Y^2c", "x y", 0.1});
  return r;
}

}  // namespace

TEST_CASE("report formats agree on statuses") {
  Report r = sample();
  CHECK_FALSE(r.ok());
  CHECK(r.count(Status::Finding) == 1);

  std::string machine = format_machine(r);
  CHECK(machine.find("status=FAIL") != std::string::npos);
  CHECK(machine.find("witness=\"(e1, e1) -> 2 e2\"") != std::string::npos);
  CHECK(machine.find("summary pass=1 fail=1 finding=1") != std::string::npos);
  CHECK(machine.find("0.5") == std::string::npos);

  auto j = nlohmann::json::parse(format_json(r, false));
  REQUIRE(j["records"].size() == 3);
  std::istringstream lines(machine);
  std::string line;
  for (const auto& rec : j["records"]) {
    std::getline(lines, line);
    CHECK(line.find("status=" + rec["status"].get<std::string>()) != std::string::npos);
  }
  CHECK(j["summary"]["fail"] == 1);

  std::string text = format_text(r, false);
  CHECK(text.find("FAIL    nijenhuis N_X^1") != std::string::npos);
  CHECK(text.find("[section 4]") != std::string::npos);
  CHECK(text.find("1 passed, 1 failed, 1 findings") != std::string::npos);
}

TEST_CASE("verify-paper section 2 is deterministic and green") {
  VerifyOptions o;
  o.section = 2;
  Report a = run_verify_paper(Catalog::builtin(), o);
  Report b = run_verify_paper(Catalog::builtin(), o);
  CHECK(a.ok());
  CHECK(format_machine(a) == format_machine(b));
  for (const auto& r : a.records) {
    CHECK(r.section == 2);
    if (r.status == Status::Fail) CHECK_FALSE(r.witness.empty());
  }
}

TEST_CASE("section filter and option checks") {
  VerifyOptions o;
  o.section = 7;
  CHECK_THROWS(run_verify_paper(Catalog::builtin(), o));
  o.section = 5;
  o.prime = 7;  // no square root of -1 mod 7
  CHECK_THROWS(run_verify_paper(Catalog::builtin(), o));
}
