#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fopreserve {

// Relational vocabulary: predicate symbols with arity >= 1 plus constant
// symbols. Declaration order is significant: it fixes enumeration packing
// and the 1-type encoding.
struct Vocabulary {
  std::vector<std::pair<std::string, int>> predicates;
  std::vector<std::string> constants;

  int pred_index(const std::string& name) const;
  int const_index(const std::string& name) const;
  bool has_symbol(const std::string& name) const;

  // Symbol-set equality: same name->arity pairs and the same constant names,
  // declaration order ignored.
  bool same_symbols(const Vocabulary& other) const;

  // Throws semantic_error unless every name is identifier-shaped, not a
  // quantifier keyword, unique across both kinds, and every arity is >= 1.
  void validate() const;
};

std::string print_vocab(const Vocabulary& v);

}  // namespace fopreserve
