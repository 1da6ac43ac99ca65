#pragma once

// Deterministic table output: CSV with a '# frobscan <subcommand> <args>'
// header line, RFC 4180 quoting, and a JSON mirror (array of row objects).
// Floats are always formatted with 12 significant digits; run metadata
// stays in comment lines so data rows are byte-stable across runs.

#include <string>
#include <vector>

namespace frobscan {

struct Table {
  std::string command;                 // canonicalized invocation
  std::vector<std::string> comments;   // extra '#' lines (CSV only)
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string fmt_g12(double v);
std::string fmt_g12(long double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

}  // namespace frobscan
