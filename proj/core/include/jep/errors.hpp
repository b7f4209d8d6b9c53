#ifndef JEP_ERRORS_HPP
#define JEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jep {

// Probability mass leaked past a height truncation exceeded the caller's bound.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// A solver or summation failed to converge within its budget.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jep

#endif
