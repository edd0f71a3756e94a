#include "surfree/baumslag.hpp"

#include <cmath>
#include <string>

#include "surfree/errors.hpp"

namespace surfree {

namespace {

// Powers of u assembled from the cyclic decomposition; core repetitions never
// cancel internally, so u^n is built in O(|u^n|).
class PowerCache {
 public:
  explicit PowerCache(const Word& u) : dec_(cyclic_reduce(u)) {
    core_inv_ = invert(dec_.core);
  }

  const Word& get(long n) {
    auto& side = n >= 0 ? pos_ : neg_;
    const std::size_t idx = static_cast<std::size_t>(n >= 0 ? n : -n);
    while (side.size() <= idx) {
      if (side.empty()) {
        side.push_back(Word{});
        continue;
      }
      WordBuilder b;
      b.append(dec_.conjugator);
      const Word& block = (n >= 0) ? dec_.core : core_inv_;
      for (std::size_t i = 0; i < side.size(); ++i) b.append(block);
      b.append_inverse(dec_.conjugator);
      side.push_back(b.take());
    }
    return side[idx];
  }

  // The unique n with u^n == q, if any.
  std::optional<long> power_solve(const Word& q) const {
    if (q.empty()) return 0;
    const auto& c = dec_.conjugator;
    const auto& v = dec_.core;
    const std::size_t nc = c.length(), nv = v.length();
    if (q.length() < 2 * nc + nv) return std::nullopt;
    if ((q.length() - 2 * nc) % nv != 0) return std::nullopt;
    const long reps = static_cast<long>((q.length() - 2 * nc) / nv);
    for (std::size_t i = 0; i < nc; ++i) {
      if (q.code(i) != c.code(i)) return std::nullopt;
      if (q.code(q.length() - 1 - i) != -c.code(i)) return std::nullopt;
    }
    auto block_matches = [&](const Word& block) {
      for (long r = 0; r < reps; ++r)
        for (std::size_t i = 0; i < nv; ++i)
          if (q.code(nc + static_cast<std::size_t>(r) * nv + i) != block.code(i))
            return false;
      return true;
    };
    if (block_matches(v)) return reps;
    if (block_matches(core_inv_)) return -reps;
    return std::nullopt;
  }

 private:
  CyclicDecomposition dec_;
  Word core_inv_;
  std::vector<Word> pos_, neg_;
};

void guard_box(std::size_t k, long n0, long N, unsigned long long budget) {
  if (n0 < 1) fail("BadIndex", "n0 must be >= 1");
  if (N < n0) fail("BadIndex", "N must be >= n0");
  const double width = 2.0 * static_cast<double>(N - n0 + 1);
  if (std::pow(width, static_cast<double>(k)) > static_cast<double>(budget))
    fail("BoxTooLarge", "box of " + std::to_string(width) + "^" +
                            std::to_string(k) + " exponent vectors exceeds budget " +
                            std::to_string(budget));
}

}  // namespace

BaumslagInstance::BaumslagInstance(Word u, std::vector<Word> a_list)
    : u_(std::move(u)), a_(std::move(a_list)) {
  if (a_.empty()) fail("LengthMismatch", "a_list must be nonempty");
  if (u_.empty()) fail("CommutingPair", "u must be nontrivial");
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (commutes(u_, a_[i]))
      fail("CommutingPair",
           "u commutes with a_" + std::to_string(i + 1) + " = '" + format_word(a_[i]) + "'");
}

Word baumslag_word(const BaumslagInstance& inst, std::span<const long> exponents) {
  if (exponents.size() != inst.arity())
    fail("LengthMismatch", "expected " + std::to_string(inst.arity()) + " exponents");
  WordBuilder b;
  for (std::size_t i = 0; i < inst.arity(); ++i) {
    b.append(power(inst.u(), exponents[i]));
    b.append(inst.a_list()[i]);
  }
  return b.take();
}

BoxOutcome check_box(const BaumslagInstance& inst, long n0, long N,
                     unsigned long long budget) {
  guard_box(inst.arity(), n0, N, budget);
  PowerCache powers(inst.u());
  const std::size_t k = inst.arity();

  // |n| ascending, + before -, per coordinate.
  std::vector<long> values;
  for (long a = n0; a <= N; ++a) {
    values.push_back(a);
    values.push_back(-a);
  }

  BoxOutcome out;
  std::vector<long> path(k, 0);
  auto rec = [&](auto&& self, const Word& prefix, std::size_t level) -> bool {
    if (level + 1 == k) {
      // prefix·u^n·a_k trivial  <=>  u^n = prefix^-1·a_k^-1
      Word q = multiply(invert(prefix), invert(inst.a_list()[level]));
      if (auto m = powers.power_solve(q)) {
        long mm = *m;
        if (mm != 0 && std::labs(mm) >= n0 && std::labs(mm) <= N) {
          path[level] = mm;
          out.ok = false;
          out.failing = path;
          return false;
        }
      }
      return true;
    }
    for (long n : values) {
      path[level] = n;
      Word next = multiply(multiply(prefix, powers.get(n)), inst.a_list()[level]);
      if (!self(self, next, level + 1)) return false;
    }
    return true;
  };
  rec(rec, Word{}, 0);
  return out;
}

long find_n0(const BaumslagInstance& inst, long N_max, unsigned long long budget) {
  guard_box(inst.arity(), 1, N_max, budget);
  PowerCache powers(inst.u());
  const std::size_t k = inst.arity();

  // A box [n0, N_max] passes iff no trivial word has all |n_i| >= n0, so the
  // answer is one more than the largest min_i |n_i| over trivial words.
  long best_min = 0;
  std::vector<long> values;
  for (long a = 1; a <= N_max; ++a) {
    values.push_back(a);
    values.push_back(-a);
  }

  auto rec = [&](auto&& self, const Word& prefix, std::size_t level,
                 long prefix_min) -> void {
    if (level + 1 == k) {
      Word q = multiply(invert(prefix), invert(inst.a_list()[level]));
      if (auto m = powers.power_solve(q)) {
        long mm = std::labs(*m);
        if (*m != 0 && mm <= N_max)
          best_min = std::max(best_min, std::min(prefix_min, mm));
      }
      return;
    }
    for (long n : values) {
      // a deeper kill through this value cannot raise best_min
      if (std::min(prefix_min, std::labs(n)) <= best_min) continue;
      Word next = multiply(multiply(prefix, powers.get(n)), inst.a_list()[level]);
      self(self, next, level + 1, std::min(prefix_min, std::labs(n)));
    }
  };
  rec(rec, Word{}, 0, N_max + 1);

  const long n0 = best_min + 1;
  if (n0 > N_max)
    fail("NotFoundWithin",
         "no n0 <= " + std::to_string(N_max) + " clears the exponent box");
  return n0;
}

}  // namespace surfree
