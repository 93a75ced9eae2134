#include "fopreserve/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "fopreserve/errors.hpp"

namespace fopreserve {

namespace {

std::uint64_t g_budget = 0;
bool g_budgetInit = false;

std::uint64_t default_budget() {
  if (const char* s = std::getenv("FOPRESERVE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t(1) << 28;
}

// a * b, or nullopt on overflow.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

using EncodingKey = std::pair<std::vector<std::uint64_t>, std::vector<int>>;

EncodingKey encode_under(const Structure& M, const std::vector<int>& perm) {
  EncodingKey key;
  key.first.reserve(M.relations.size());
  for (std::size_t p = 0; p < M.relations.size(); ++p) {
    const int arity = M.vocab.predicates[p].second;
    std::uint64_t bitmap = 0;
    for (std::uint64_t i = 0; i < M.relations[p].size(); ++i) {
      if (!M.relations[p][i]) continue;
      auto tuple = index_tuple(M.n, arity, i);
      for (int& e : tuple) e = perm[e];
      bitmap |= std::uint64_t(1) << tuple_index(M.n, tuple);
    }
    key.first.push_back(bitmap);
  }
  key.second.reserve(M.constantMap.size());
  for (const int c : M.constantMap) key.second.push_back(perm[c]);
  return key;
}

}  // namespace

std::uint64_t enumeration_budget() {
  if (!g_budgetInit) {
    g_budget = default_budget();
    g_budgetInit = true;
  }
  return g_budget;
}

void set_enumeration_budget(std::uint64_t budget) {
  g_budget = budget ? budget : default_budget();
  g_budgetInit = true;
}

StructureEnumerator::StructureEnumerator(const Vocabulary& vocab, int size, bool upToIso)
    : vocab_(vocab), size_(size), upToIso_(upToIso) {
  vocab_.validate();
  if (size_ < 1) throw semantic_error("enumeration size must be positive");
  for (const auto& [name, arity] : vocab_.predicates) {
    (void)name;
    const std::uint64_t tc = tuple_count(size_, arity);
    if (tc > 62) throw budget_error("enumeration budget exceeded");
    tupleCounts_.push_back(tc);
    const auto scaled = checked_mul(totalRaw_, std::uint64_t(1) << tc);
    if (!scaled || *scaled > enumeration_budget())
      throw budget_error("enumeration budget exceeded");
    totalRaw_ = *scaled;
  }
  for (std::size_t c = 0; c < vocab_.constants.size(); ++c) {
    const auto scaled = checked_mul(totalRaw_, static_cast<std::uint64_t>(size_));
    if (!scaled || *scaled > enumeration_budget())
      throw budget_error("enumeration budget exceeded");
    totalRaw_ = *scaled;
  }
  bitmaps_.assign(vocab_.predicates.size(), 0);
  consts_.assign(vocab_.constants.size(), 0);
}

Structure StructureEnumerator::materialize() const {
  Structure M = make_empty_structure(vocab_, size_);
  for (std::size_t p = 0; p < bitmaps_.size(); ++p)
    for (std::uint64_t i = 0; i < tupleCounts_[p]; ++i)
      if ((bitmaps_[p] >> i) & 1) M.relations[p][i] = true;
  M.constantMap = consts_;
  return M;
}

void StructureEnumerator::advance() {
  // Constants are the least significant digits, the last one fastest.
  for (std::size_t c = consts_.size(); c-- > 0;) {
    if (++consts_[c] < size_) return;
    consts_[c] = 0;
  }
  for (std::size_t p = bitmaps_.size(); p-- > 0;) {
    if (++bitmaps_[p] < (std::uint64_t(1) << tupleCounts_[p])) return;
    bitmaps_[p] = 0;
  }
  done_ = true;
}

std::optional<Structure> StructureEnumerator::next() {
  while (!done_) {
    Structure M = materialize();
    advance();
    if (!upToIso_ || is_least_in_iso_class(M)) return M;
  }
  return std::nullopt;
}

std::vector<Structure> enum_structures(const Vocabulary& vocab, int size, bool upToIso) {
  StructureEnumerator en(vocab, size, upToIso);
  std::vector<Structure> out;
  while (auto M = en.next()) out.push_back(std::move(*M));
  return out;
}

bool is_least_in_iso_class(const Structure& M) {
  validate_structure(M);
  for (const auto& rel : M.relations)
    if (rel.size() > 62) throw budget_error("relation too large for encoding comparison");
  std::vector<int> perm(M.n);
  std::iota(perm.begin(), perm.end(), 0);
  const EncodingKey key = encode_under(M, perm);
  while (std::next_permutation(perm.begin(), perm.end()))
    if (encode_under(M, perm) < key) return false;
  return true;
}

}  // namespace fopreserve
