#pragma once

#include <stdexcept>
#include <string>

namespace polyagamma {

// Argument outside an operation's domain (nonpositive shape, x <= 0, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Base for failures of a numerical procedure on valid input.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A series or root solve did not converge within its iteration budget.
class convergence_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// A rejection loop exceeded its proposal cap.
class iteration_cap_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// A bounding kernel failed to dominate the target density.
class domination_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw domain_error(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw domain_error(what);
}

}  // namespace detail
}  // namespace polyagamma
