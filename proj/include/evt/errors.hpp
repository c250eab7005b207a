#pragma once

#include <stdexcept>
#include <string>

namespace evt {

// An asymptotic formula was asked for outside its region of validity
// (e.g. n too small for an expansion whose guard condition fails).
class validity_error : public std::runtime_error {
 public:
  explicit validity_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative scheme failed to converge within its budget.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evt
