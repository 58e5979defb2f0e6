#pragma once

#include <stdexcept>
#include <string>

namespace coreshell {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// An iterative evaluation (series, quadrature, root refinement) did not converge.
class convergence_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A quantity that must be real came out with a non-negligible imaginary part.
class realness_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user configuration.
class config_error : public std::runtime_error
{
  public:
    config_error(std::string const& what, int line = 0)
        : std::runtime_error(what)
        , line_(line)
    {
    }

    /// 1-based line of the offending entry, 0 when not tied to a line.
    int line() const noexcept
    {
        return line_;
    }

  private:
    int line_;
};

} // namespace coreshell
