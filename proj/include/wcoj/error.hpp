#pragma once

#include <stdexcept>
#include <string>

namespace wcoj {

/// Malformed input: bad headers, unknown variables, unparsable spec files.
class InvalidInput : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// The dependency graph of a constraint set has a cycle, or a requested
/// variable order is not a topological sort of it.
class OrderError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// The cover LP has no feasible point (some variable is never covered).
class InfeasibleCover : public std::runtime_error
{
  public:
    InfeasibleCover(std::string variable)
        : std::runtime_error("variable '" + variable + "' is not covered by any constraint")
        , variable_(std::move(variable))
    { }

    const std::string & variable() const { return variable_; }

  private:
    std::string variable_;
};

/// The instance exceeds a size guard (LP vertex enumeration, brute-force oracle).
class TooLarge : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}
