#pragma once

#include <optional>
#include <span>
#include <vector>

#include "surfree/word.hpp"

namespace surfree {

// Data for the words u^{n1}·a1 · u^{n2}·a2 ··· u^{nk}·ak. Construction
// enforces that u is nontrivial and commutes with none of the a_i.
class BaumslagInstance {
 public:
  BaumslagInstance(Word u, std::vector<Word> a_list);

  const Word& u() const noexcept { return u_; }
  const std::vector<Word>& a_list() const noexcept { return a_; }
  std::size_t arity() const noexcept { return a_.size(); }

 private:
  Word u_;
  std::vector<Word> a_;
};

Word baumslag_word(const BaumslagInstance& inst, std::span<const long> exponents);

struct BoxOutcome {
  bool ok = true;
  std::vector<long> failing;  // exponent vector of the first trivial word
};

// Exhaustive check over all exponent vectors with n0 <= |n_i| <= N. The box
// degrees of freedom are resolved exactly: interior exponents are enumerated
// and the last one is solved for, since u^n = Q has at most one solution n.
BoxOutcome check_box(const BaumslagInstance& inst, long n0, long N,
                     unsigned long long budget);

// Smallest n0 <= N_max with check_box(inst, n0, N_max) passing.
long find_n0(const BaumslagInstance& inst, long N_max, unsigned long long budget);

}  // namespace surfree
