#ifndef UNIVINT_ERRORS_HPP
#define UNIVINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace univint {

/* Bad input: malformed field spec, zero where a unit is required, a
 * precondition the caller could have checked. CLI exit code 1. */
class domain_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/* A bounded search ran out of room. Existence is usually guaranteed by a
 * theorem, so this never means "no such object". CLI exit code 2. */
class search_exhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* Something that must always hold did not (reciprocity product -1, a
 * witness that fails re-verification, ...). CLI exit code 3. */
class invariant_violation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace univint

#endif
