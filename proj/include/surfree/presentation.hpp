#pragma once

#include <functional>
#include <vector>

#include "surfree/word.hpp"

namespace surfree {

enum class PresentationKind { free_group, surface };
enum class SurfaceForm { standard, mirrored };

// A free group of finite rank, or a one-relator surface-group presentation.
//
// Standard genus g:  generators a1,a1',...,ag,ag';
//                    relator [a1,a1']···[ag,ag'] (length 4g).
// Mirrored genus 2r: generators a1,a1',...,ar,ar',b1,b1',...,br,br';
//                    relator [a1,a1']···[ar,ar']·[br',br]···[b1',b1]
//                    (length 8r, splits along a separating curve).
//
// Surface constructors verify at build time that the relator is cyclically
// reduced, mentions every generator exactly twice, and satisfies C'(1/6)
// (longest piece between distinct cyclic shifts of relator^±1 shorter than
// |relator|/6), which is what licenses Dehn's algorithm below.
class Presentation {
 public:
  static Presentation free_group(int rank);  // generators x1..xk
  static Presentation free_group(std::vector<Gen> generators);
  static Presentation surface(int genus, SurfaceForm form);

  PresentationKind kind() const noexcept { return kind_; }
  int rank() const noexcept { return static_cast<int>(gens_.size()); }
  int genus() const noexcept { return genus_; }
  SurfaceForm form() const noexcept { return form_; }
  const std::vector<Gen>& generators() const noexcept { return gens_; }
  const Word& relator() const noexcept { return relator_; }
  int piece_length() const noexcept { return piece_length_; }

  // Position of g in the generator list, -1 if absent.
  int generator_position(Gen g) const;
  bool owns_word(const Word& w) const;
  void require_alphabet(const Word& w) const;  // AlphabetMismatch

  // Signed-letter index: position*2 for a generator, position*2+1 for its
  // inverse. This is the enumeration (lexicographic) order everywhere.
  int signed_letter_index(std::int32_t code) const;
  std::int32_t code_for_signed_letter(int s) const;

  const std::vector<std::int32_t>& relator_doubled(bool inverse) const {
    return inverse ? doubled_inv_ : doubled_;
  }

  bool operator==(const Presentation& other) const {
    return kind_ == other.kind_ && genus_ == other.genus_ &&
           form_ == other.form_ && gens_ == other.gens_;
  }

 private:
  Presentation() = default;

  PresentationKind kind_ = PresentationKind::free_group;
  int genus_ = 0;
  SurfaceForm form_ = SurfaceForm::standard;
  std::vector<Gen> gens_;
  Word relator_;
  int piece_length_ = 0;
  std::vector<std::int32_t> doubled_, doubled_inv_;
};

// Dehn's algorithm for the word problem. True iff w represents the identity.
// Repeatedly replaces a cyclic subword matching more than half of a cyclic
// shift of relator^±1 by the inverse of its complement; each replacement is
// strictly length-decreasing. On free presentations this degenerates to
// emptiness of the reduced word.
bool dehn_trivial(const Presentation& p, const Word& w);

bool equal_in_group(const Presentation& p, const Word& u, const Word& v);

// All reduced words of length 1..L in (length, lex) order.
void for_each_reduced_word(const Presentation& p, int L,
                           const std::function<void(const Word&)>& visit);

// One representative per reduced word of length <= L that is nontrivial in
// the group, in (length, lex) order.
std::vector<Word> nontrivial_ball(const Presentation& p, int L);

// Flat prefix-tree of the reduced-word ball; nodes in (length, lex) order,
// parents before children. countable marks group-nontrivial words.
struct BallTable {
  int L = 0;
  int letter_count = 0;
  std::vector<std::int32_t> parent;  // -1 for length-1 words
  std::vector<std::int16_t> letter;
  std::vector<std::uint8_t> countable;
};
BallTable build_ball_table(const Presentation& p, int L);

// Number of nonempty reduced words of length <= L over `letters` signed
// letters, saturating at 2^63-1.
unsigned long long reduced_ball_count(int letters, int L);

}  // namespace surfree
