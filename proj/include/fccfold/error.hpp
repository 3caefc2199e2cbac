#pragma once

#include <stdexcept>
#include <string>

namespace fccfold {

/// Thrown on malformed inputs (sequences, matrices, structure files, configs).
struct FoldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fccfold
