#pragma once

#include <string>

#include "fopreserve/formula.hpp"
#include "fopreserve/structure.hpp"
#include "fopreserve/vocabulary.hpp"

namespace fopreserve {

// Grammar (whitespace-insensitive):
//   formula := quant | iff
//   quant   := ("forall"|"exists") var {"," var} "." formula
//            | ("Forall"|"Exists") SETVAR "." formula
//   iff     := imp {"<->" imp}          (left-associative)
//   imp     := or ["->" imp]            (right-associative)
//   or      := and {"|" and}
//   and     := un {"&" un}
//   un      := "~" un | "(" formula ")" | atom
//   atom    := NAME "(" term {"," term} ")" | term "=" term | SETVAR "(" term ")"
// Variables start lowercase, set variables uppercase; declared predicate
// names win over set-variable readings; terms resolve declared constants.
FormulaPtr parse_formula(const std::string& text, const Vocabulary& vocab);

// A `vocab { E/2; P/1; c }` block.
Vocabulary parse_vocab(const std::string& text);

// A vocab block followed by a `structure over n { ... }` block.
Structure parse_structure(const std::string& text);

struct FormulaFile {
  Vocabulary vocab;
  FormulaPtr formula;
};

// A vocab block followed by formula text (the CLI's formula-file format).
FormulaFile parse_formula_file(const std::string& text);

}  // namespace fopreserve
