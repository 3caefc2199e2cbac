#pragma once

#include <string>
#include <vector>

#include "fccfold/chain.hpp"

namespace fccfold {

struct BenchmarkEntry {
  std::string id;
  std::string sequence;
  int length = 0;
  int h_count = 0;
  std::string reference_path;  // optional native-structure file

  Sequence parse() const { return Sequence(id, sequence); }
};

// The 12 bundled benchmark proteins.  Lengths and H counts are part of the
// contract and are self-checked at startup.
const std::vector<BenchmarkEntry>& builtin_suite();

/// Entry by id; throws FoldError when the id is unknown.
const BenchmarkEntry& suite_entry(const std::string& id);

/// Validates every entry's length and H count against its sequence.
void self_check_suite();

}  // namespace fccfold
