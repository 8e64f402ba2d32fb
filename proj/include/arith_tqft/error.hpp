#ifndef ARITH_TQFT_ERROR_HPP
#define ARITH_TQFT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace arith_tqft {

/// Library-wide exception. `kind()` is a stable machine-readable tag such as
/// "incompatible-units" or "budget-exceeded"; `what()` carries the detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

}  // namespace arith_tqft

#endif  // ARITH_TQFT_ERROR_HPP
