#pragma once

#include <stdexcept>
#include <string>

namespace blockstein {

// Unknown names, malformed input, bad indices.  CLI exit code 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Configured budget exceeded.  CLI exit code 3.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation not defined for the given value (Galois-ring rref, non-injective
// restriction map, duplicate double-coset labels in a source-algebra
// decomposition, iso search that ends undecided, ...).
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// An identity that is a theorem failed to hold in an exact computation.
// Never caught internally; reaching this means a bug (or a falsified theorem).
struct ConsistencyError : std::logic_error {
    explicit ConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

// The coefficient field is not a splitting field for the algebra at hand;
// the caller must enlarge the extension degree.
struct SplittingError : std::runtime_error {
    explicit SplittingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace blockstein
