#include "surfree/presentation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "surfree/errors.hpp"

namespace surfree {

namespace {

std::vector<std::int32_t> doubled(const Word& w) {
  std::vector<std::int32_t> d;
  d.reserve(2 * w.length());
  for (auto c : w.codes()) d.push_back(c);
  for (auto c : w.codes()) d.push_back(c);
  return d;
}

// Longest common prefix between distinct cyclic shifts of R and R^-1.
int max_piece_length(const Word& relator) {
  const Word rinv = invert(relator);
  const std::size_t n = relator.length();
  std::vector<std::vector<std::int32_t>> shifts;
  for (const Word* w : {&relator, &rinv}) {
    auto d = doubled(*w);
    for (std::size_t i = 0; i < n; ++i)
      shifts.emplace_back(d.begin() + i, d.begin() + i + n);
  }
  int best = 0;
  for (std::size_t i = 0; i < shifts.size(); ++i)
    for (std::size_t j = i + 1; j < shifts.size(); ++j) {
      if (shifts[i] == shifts[j]) continue;
      int l = 0;
      while (l < static_cast<int>(n) && shifts[i][l] == shifts[j][l]) ++l;
      best = std::max(best, l);
    }
  return best;
}

}  // namespace

Presentation Presentation::free_group(int rank) {
  if (rank < 1) fail("BadRank", "free rank must be >= 1");
  std::vector<Gen> gens;
  gens.reserve(rank);
  for (int i = 1; i <= rank; ++i)
    gens.push_back(symbols::intern("x" + std::to_string(i)));
  return free_group(std::move(gens));
}

Presentation Presentation::free_group(std::vector<Gen> generators) {
  if (generators.empty()) fail("BadRank", "free rank must be >= 1");
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (generators[i] == generators[j])
        fail("ParseError", "duplicate generator '" + symbols::name(generators[i]) + "'");
  Presentation p;
  p.kind_ = PresentationKind::free_group;
  p.gens_ = std::move(generators);
  return p;
}

Presentation Presentation::surface(int genus, SurfaceForm form) {
  if (genus < 2) fail("GenusTooSmall", "surface genus must be >= 2");
  if (form == SurfaceForm::mirrored && genus % 2 != 0)
    fail("MirroredOddGenus", "mirrored form requires even genus");

  Presentation p;
  p.kind_ = PresentationKind::surface;
  p.genus_ = genus;
  p.form_ = form;

  WordBuilder rb;
  auto push_commutator = [&rb](Gen u, Gen v) {
    rb.push(code_of(u, +1));
    rb.push(code_of(v, +1));
    rb.push(code_of(u, -1));
    rb.push(code_of(v, -1));
  };

  if (form == SurfaceForm::standard) {
    std::vector<Gen> a(genus), ap(genus);
    for (int i = 0; i < genus; ++i) {
      a[i] = symbols::intern("a" + std::to_string(i + 1));
      ap[i] = symbols::intern("a" + std::to_string(i + 1) + "'");
      p.gens_.push_back(a[i]);
      p.gens_.push_back(ap[i]);
    }
    for (int i = 0; i < genus; ++i) push_commutator(a[i], ap[i]);
  } else {
    const int r = genus / 2;
    std::vector<Gen> a(r), ap(r), b(r), bp(r);
    for (int i = 0; i < r; ++i) {
      a[i] = symbols::intern("a" + std::to_string(i + 1));
      ap[i] = symbols::intern("a" + std::to_string(i + 1) + "'");
      p.gens_.push_back(a[i]);
      p.gens_.push_back(ap[i]);
    }
    for (int i = 0; i < r; ++i) {
      b[i] = symbols::intern("b" + std::to_string(i + 1));
      bp[i] = symbols::intern("b" + std::to_string(i + 1) + "'");
      p.gens_.push_back(b[i]);
      p.gens_.push_back(bp[i]);
    }
    for (int i = 0; i < r; ++i) push_commutator(a[i], ap[i]);
    for (int i = r - 1; i >= 0; --i) push_commutator(bp[i], b[i]);
  }
  p.relator_ = rb.take();

  const std::size_t n = p.relator_.length();
  if (n != static_cast<std::size_t>(4 * genus))
    fail("SmallCancellationViolation", "relator length mismatch");
  if (p.relator_.code(0) == -p.relator_.code(n - 1))
    fail("SmallCancellationViolation", "relator not cyclically reduced");
  std::map<Gen, int> uses;
  for (auto c : p.relator_.codes()) uses[gen_of_code(c)]++;
  for (Gen g : p.gens_)
    if (uses[g] != 2)
      fail("SmallCancellationViolation",
           "generator '" + symbols::name(g) + "' must appear exactly twice in the relator");

  p.piece_length_ = max_piece_length(p.relator_);
  if (6 * p.piece_length_ >= static_cast<int>(n))
    fail("SmallCancellationViolation", "C'(1/6) witness failed");

  p.doubled_ = doubled(p.relator_);
  p.doubled_inv_ = doubled(invert(p.relator_));
  return p;
}

int Presentation::generator_position(Gen g) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i] == g) return static_cast<int>(i);
  return -1;
}

bool Presentation::owns_word(const Word& w) const {
  for (auto c : w.codes())
    if (generator_position(gen_of_code(c)) < 0) return false;
  return true;
}

void Presentation::require_alphabet(const Word& w) const {
  for (auto c : w.codes())
    if (generator_position(gen_of_code(c)) < 0)
      fail("AlphabetMismatch",
           "word uses generator '" + symbols::name(gen_of_code(c)) +
               "' not in the presentation");
}

int Presentation::signed_letter_index(std::int32_t code) const {
  int pos = generator_position(gen_of_code(code));
  if (pos < 0) fail("AlphabetMismatch", "letter outside presentation alphabet");
  return 2 * pos + (code < 0 ? 1 : 0);
}

std::int32_t Presentation::code_for_signed_letter(int s) const {
  return code_of(gens_[static_cast<std::size_t>(s / 2)], (s % 2) ? -1 : +1);
}

namespace {

std::vector<std::int32_t> cyclic_core(std::span<const std::int32_t> codes) {
  std::size_t i = 0, j = codes.size();
  while (j - i >= 2 && codes[i] == -codes[j - 1]) {
    ++i;
    --j;
  }
  return {codes.begin() + i, codes.begin() + j};
}

}  // namespace

bool dehn_trivial(const Presentation& p, const Word& w) {
  p.require_alphabet(w);
  if (p.kind() == PresentationKind::free_group) return w.empty();

  const int nr = static_cast<int>(p.relator().length());
  const int threshold = nr / 2 + 1;

  std::vector<std::int32_t> core = cyclic_core(w.codes());
  while (!core.empty()) {
    const int n = static_cast<int>(core.size());
    std::vector<std::int32_t> dbl(core);
    dbl.insert(dbl.end(), core.begin(), core.end());

    int best_len = 0, best_rot = 0, best_pos = 0;
    bool best_inv = false;
    const int cap = std::min(n, nr);
    for (int rot = 0; rot < n && best_len < cap; ++rot) {
      for (int variant = 0; variant < 2 && best_len < cap; ++variant) {
        const auto& rr = p.relator_doubled(variant == 1);
        for (int pos = 0; pos < nr; ++pos) {
          int l = 0;
          while (l < cap && dbl[rot + l] == rr[pos + l]) ++l;
          if (l > best_len) {
            best_len = l;
            best_rot = rot;
            best_pos = pos;
            best_inv = (variant == 1);
            if (best_len == cap) break;
          }
        }
      }
    }
    if (best_len < threshold) return false;

    // Rotate so the match is an initial segment, then substitute the inverse
    // of the complement; strictly shorter since best_len > |R|/2.
    const auto& rr = p.relator_doubled(best_inv);
    WordBuilder b;
    for (int idx = best_pos + nr - 1; idx >= best_pos + best_len; --idx)
      b.push(-rr[idx]);
    for (int l = best_len; l < n; ++l) b.push(dbl[best_rot + l]);
    Word next = b.take();
    core = cyclic_core(next.codes());
  }
  return true;
}

bool equal_in_group(const Presentation& p, const Word& u, const Word& v) {
  p.require_alphabet(u);
  p.require_alphabet(v);
  return dehn_trivial(p, multiply(u, invert(v)));
}

void for_each_reduced_word(const Presentation& p, int L,
                           const std::function<void(const Word&)>& visit) {
  if (L < 0) fail("BadIndex", "ball radius must be >= 0");
  const int m = 2 * p.rank();
  std::vector<std::int32_t> stack;
  auto rec = [&](auto&& self, int depth, int target, int last) -> void {
    for (int s = 0; s < m; ++s) {
      if (last >= 0 && (s ^ 1) == last) continue;
      stack.push_back(p.code_for_signed_letter(s));
      if (depth == target)
        visit(Word::from_codes(stack));
      else
        self(self, depth + 1, target, s);
      stack.pop_back();
    }
  };
  for (int len = 1; len <= L; ++len) rec(rec, 1, len, -1);
}

std::vector<Word> nontrivial_ball(const Presentation& p, int L) {
  std::vector<Word> out;
  for_each_reduced_word(p, L, [&](const Word& w) {
    if (p.kind() == PresentationKind::free_group || !dehn_trivial(p, w))
      out.push_back(w);
  });
  return out;
}

BallTable build_ball_table(const Presentation& p, int L) {
  BallTable t;
  t.L = L;
  t.letter_count = 2 * p.rank();
  if (L < 1) return t;

  const int m = t.letter_count;
  std::vector<std::int32_t> level_begin;  // first node index of each level
  level_begin.push_back(0);
  for (int s = 0; s < m; ++s) {
    t.parent.push_back(-1);
    t.letter.push_back(static_cast<std::int16_t>(s));
  }
  std::vector<std::int32_t> word_buf(L);
  auto reconstruct = [&](std::int32_t node) {
    int len = 0;
    for (std::int32_t i = node; i >= 0; i = t.parent[i])
      word_buf[len++] = p.code_for_signed_letter(t.letter[i]);
    std::reverse(word_buf.begin(), word_buf.begin() + len);
    return Word::from_codes(std::span<const std::int32_t>(word_buf.data(), len));
  };

  for (int len = 2; len <= L; ++len) {
    level_begin.push_back(static_cast<std::int32_t>(t.parent.size()));
    const std::int32_t from = level_begin[len - 2];
    const std::int32_t to = level_begin[len - 1];
    for (std::int32_t node = from; node < to; ++node) {
      const int last = t.letter[node];
      for (int s = 0; s < m; ++s) {
        if ((s ^ 1) == last) continue;
        t.parent.push_back(node);
        t.letter.push_back(static_cast<std::int16_t>(s));
      }
    }
  }

  t.countable.resize(t.parent.size(), 1);
  if (p.kind() == PresentationKind::surface) {
    for (std::size_t i = 0; i < t.parent.size(); ++i)
      if (dehn_trivial(p, reconstruct(static_cast<std::int32_t>(i))))
        t.countable[i] = 0;
  }
  return t;
}

unsigned long long reduced_ball_count(int letters, int L) {
  const unsigned long long cap = std::numeric_limits<long long>::max();
  unsigned long long total = 0, level = static_cast<unsigned long long>(letters);
  for (int l = 1; l <= L; ++l) {
    if (total > cap - level) return cap;
    total += level;
    if (letters > 1 && level > cap / static_cast<unsigned long long>(letters - 1))
      return cap;
    level *= static_cast<unsigned long long>(letters - 1);
  }
  return total;
}

}  // namespace surfree
