#include "frobscan/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace frobscan {

std::string fmt_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_g12(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

namespace {

std::string csv_cell(const std::string& s) {
  bool needs_quote = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out = "# " + t.command + "\n";
  for (const auto& c : t.comments) out += "# " + c + "\n";
  for (size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ",";
    out += csv_cell(t.header[i]);
  }
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += csv_cell(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["command"] = t.command;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (size_t i = 0; i < t.header.size() && i < row.size(); ++i)
      obj[t.header[i]] = row[i];
    j["rows"].push_back(obj);
  }
  return j.dump(2) + "\n";
}

}  // namespace frobscan
