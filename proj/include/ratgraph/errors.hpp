#pragma once

#include <stdexcept>
#include <string>

namespace ratg {

/// A word or letter fell outside the declared alphabet, or a value was malformed.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was applied to a transducer/graph outside its class
/// (e.g. unambiguization of a non-synchronized transducer).
struct class_error : std::runtime_error {
    explicit class_error(const std::string& what) : std::runtime_error(what) {}
};

/// A conversion precondition does not hold on the given input.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

/// A construction needs a fresh symbol but the requested one is taken.
struct fresh_symbol_error : precondition_error {
    explicit fresh_symbol_error(const std::string& what) : precondition_error(what) {}
};

/// Malformed serialized object.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ratg
