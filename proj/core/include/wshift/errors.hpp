#pragma once

#include <stdexcept>
#include <string>

namespace wshift {

/// Malformed user input: documents, word text, parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A node, step or size cap was hit before the computation finished.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A branching structure is not in the winning set of the language it was
/// played against.
class NotWinning : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wshift
