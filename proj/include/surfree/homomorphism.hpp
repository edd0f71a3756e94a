#pragma once

#include <map>
#include <vector>

#include "surfree/presentation.hpp"
#include "surfree/word.hpp"

namespace surfree {

// Generator-image homomorphism between presented groups. Construction checks
// well-definedness exactly: the relator image must be trivial in the target
// (free reduction for a free target, Dehn's algorithm for a surface target).
class Homomorphism {
 public:
  const Presentation& source() const noexcept { return source_; }
  const Presentation& target() const noexcept { return target_; }
  const Word& image_of(Gen g) const;
  const std::vector<Word>& images() const noexcept { return images_; }

 private:
  friend Homomorphism make_hom(const Presentation&, const Presentation&,
                               const std::map<Gen, Word>&);
  friend Homomorphism compose(const Homomorphism&, const Homomorphism&);

  Presentation source_;
  Presentation target_;
  std::vector<Word> images_;  // aligned with source_.generators()
};

Homomorphism make_hom(const Presentation& source, const Presentation& target,
                      const std::map<Gen, Word>& images);

Word apply_hom(const Homomorphism& h, const Word& w);

// g∘h; requires h.target == g.source.
Homomorphism compose(const Homomorphism& g, const Homomorphism& h);

enum class FamilyKind { cor22, cor24, cor25 };

// The three eventually faithful families.
//
//   cor22(r):        Γ_2r (mirrored) -> F_2r. member(n) fixes a_i, a_i' and
//                    sends b_i to γ̄^n x_i γ̄^-n (γ̄ the product of the first
//                    r commutators); member(0) is the folding map f, and
//                    member(n) equals f composed with n Dehn twists.
//   cor24(rank,a,b): F_(rank+1) -> F_rank; x_i fixed, x_(rank+1) -> b^n a b^-n.
//                    Requires a, b noncommuting.
//   cor25(r):        F_2r -> Γ_r (standard); x1 -> a1·(a1')^n, all other
//                    generators map straight across.
class HomFamily {
 public:
  static HomFamily cor22(int r);
  static HomFamily cor24(int rank, Word a, Word b);
  static HomFamily cor25(int r);

  FamilyKind family_kind() const noexcept { return kind_; }
  int parameter() const noexcept { return r_; }  // r for cor22/cor25, rank for cor24
  const Word& word_a() const noexcept { return a_; }
  const Word& word_b() const noexcept { return b_; }
  const Presentation& source() const noexcept { return source_; }
  const Presentation& target() const noexcept { return target_; }

  Homomorphism member(long n) const;

 private:
  HomFamily() = default;
  FamilyKind kind_ = FamilyKind::cor22;
  int r_ = 0;
  Word a_, b_;
  Word twist_;  // γ̄ for cor22
  Presentation source_ = Presentation::free_group(1);
  Presentation target_ = Presentation::free_group(1);
};

// The Dehn twist σ of the mirrored genus-2r presentation (a_i fixed,
// b_i -> γ b_i γ^-1), as an endomorphism; member(n) of cor22 equals
// member(0)∘σ^n.
Homomorphism cor22_twist(int r);

struct SeparationResult {
  long n;
  Homomorphism hom;
};

// Smallest n <= horizon such that every w in K has a nontrivial image under
// member(m) for all m in [n, n+window]. K members must be nontrivial in the
// source group.
SeparationResult separate(const HomFamily& fam, const std::vector<Word>& K,
                          long horizon, long window);

}  // namespace surfree
