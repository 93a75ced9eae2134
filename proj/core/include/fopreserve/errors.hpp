#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fopreserve {

// Input text violating a grammar; offset is a byte position into the text.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// Well-formed input violating a semantic precondition (arity mismatch,
// unbound variable, vocabulary mismatch, ...).
class semantic_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A sweep or construction would exceed the configured enumeration budget.
class budget_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An operation's documented precondition does not hold (e.g. asking for the
// cores of a structure that is not a model of the sentence).
class precondition_error : public semantic_error {
public:
  using semantic_error::semantic_error;
};

}  // namespace fopreserve
