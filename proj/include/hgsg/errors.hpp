#pragma once

#include <stdexcept>
#include <string>

namespace hgsg {

/// Inserting a point whose hierarchical parents are all missing.
struct admissibility_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Inserting or re-evaluating a point that is already stored.
struct duplicate_point_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Querying grid state that does not exist (e.g. an index never created).
struct state_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Invalid experiment or CLI configuration; message names the offending field.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A user-supplied evaluator threw; message carries the offending point.
struct evaluator_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hgsg
