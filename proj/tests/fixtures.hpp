#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "lincx/partitions.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(LINCX_TEST_DATA) + "/" + name; }

inline lincx::LinePartition partition(const std::string& name, const lincx::Field& f) {
  std::ifstream in(path(name));
  if (!in) throw lincx::Error("missing fixture " + name);
  return lincx::read_partition(in, f);
}

inline std::vector<lincx::Subspace> lines(const std::string& name, const lincx::Field& f, int n) {
  std::ifstream in(path(name));
  if (!in) throw lincx::Error("missing fixture " + name);
  std::vector<lincx::Subspace> out;
  std::string row;
  while (std::getline(in, row))
    if (!row.empty() && row[0] != '#') out.push_back(lincx::parse_subspace(f, row, n));
  return out;
}

}  // namespace fixtures
