#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcimf {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text or serialized data.
struct parse_error : error {
  using error::error;
};

// Operation outside its domain: division by zero, singular matrix where an
// inverse is required, mismatched contexts, nonprime modulus.
struct domain_error : error {
  using error::error;
};

// A structurally well-formed object violates one of its defining identities.
// Carries the identity name and the offending entry when one exists.
struct axiom_error : error {
  std::string identity;
  std::size_t row = 0;
  std::size_t col = 0;
  bool has_entry = false;

  explicit axiom_error(const std::string& msg) : error(msg) {}
  axiom_error(const std::string& msg, std::string id, std::size_t i, std::size_t j)
      : error(msg), identity(std::move(id)), row(i), col(j), has_entry(true) {}
};

}  // namespace qcimf
