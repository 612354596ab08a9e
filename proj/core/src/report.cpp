#include "nij/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace nij {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Finding:
      return "FINDING";
  }
  return "?";
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const CheckRecord& c) { return c.status == s; }));
}

namespace {

// Values go out quoted when they contain anything beyond a bare token.
std::string machine_value(const std::string& v) {
  bool bare = !v.empty() && std::all_of(v.begin(), v.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' || c == '.' || c == '-' || c == '+' ||
           c == '/' || c == '(' || c == ')' || c == '*';
  });
  if (bare) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string seconds_str(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

}  // namespace

std::string format_text(const Report& r, bool timing) {
  std::ostringstream out;
  if (!r.command.empty()) out << "# " << r.command << "\n";
  int section = -1;
  double total = 0;
  for (const auto& c : r.records) {
    if (c.section != section) {
      section = c.section;
      if (section > 0) out << "\n[section " << section << "]\n";
    }
    out << to_string(c.status);
    out << std::string(8 - to_string(c.status).size(), ' ');
    out << c.check << " " << c.id;
    if (!c.detail.empty()) out << ": " << c.detail;
    if (timing) out << " (" << seconds_str(c.seconds) << ")";
    out << "\n";
    if (!c.witness.empty()) out << "        witness: " << c.witness << "\n";
    total += c.seconds;
  }
  out << "\n" << r.count(Status::Pass) << " passed, " << r.count(Status::Fail) << " failed, "
      << r.count(Status::Finding) << " findings";
  if (timing) out << " in " << seconds_str(total);
  out << "\n";
  return out.str();
}

std::string format_machine(const Report& r) {
  std::ostringstream out;
  for (const auto& c : r.records) {
    out << "section=" << c.section << " check=" << machine_value(c.check) << " id=" << machine_value(c.id)
        << " status=" << to_string(c.status);
    if (!c.detail.empty()) out << " detail=" << machine_value(c.detail);
    if (!c.witness.empty()) out << " witness=" << machine_value(c.witness);
    out << "\n";
  }
  out << "summary pass=" << r.count(Status::Pass) << " fail=" << r.count(Status::Fail)
      << " finding=" << r.count(Status::Finding) << "\n";
  return out.str();
}

std::string format_json(const Report& r, bool timing) {
  nlohmann::ordered_json doc;
  doc["command"] = r.command;
  auto& items = doc["records"] = nlohmann::ordered_json::array();
  for (const auto& c : r.records) {
    nlohmann::ordered_json j;
    j["section"] = c.section;
    j["check"] = c.check;
    j["id"] = c.id;
    j["status"] = to_string(c.status);
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (!c.witness.empty()) j["witness"] = c.witness;
    if (timing) j["seconds"] = c.seconds;
    items.push_back(std::move(j));
  }
  doc["summary"] = {{"pass", r.count(Status::Pass)},
                    {"fail", r.count(Status::Fail)},
                    {"finding", r.count(Status::Finding)}};
  return doc.dump(2) + "\n";
}

}  // namespace nij
