#include "surfree/homomorphism.hpp"

#include <string>

#include "surfree/errors.hpp"

namespace surfree {

namespace {

bool trivial_in(const Presentation& p, const Word& w) {
  if (p.kind() == PresentationKind::free_group) return w.empty();
  return dehn_trivial(p, w);
}

Presentation cor22_free_target(int r) {
  std::vector<Gen> gens;
  for (int i = 1; i <= r; ++i) {
    gens.push_back(symbols::intern("x" + std::to_string(i)));
    gens.push_back(symbols::intern("x" + std::to_string(i) + "'"));
  }
  return Presentation::free_group(std::move(gens));
}

// [g1,g2]·[g3,g4]··· over the given generator list, pairs in order.
Word commutator_chain(const std::vector<Gen>& gens, int pairs) {
  WordBuilder b;
  for (int i = 0; i < pairs; ++i) {
    b.push(code_of(gens[2 * i], +1));
    b.push(code_of(gens[2 * i + 1], +1));
    b.push(code_of(gens[2 * i], -1));
    b.push(code_of(gens[2 * i + 1], -1));
  }
  return b.take();
}

}  // namespace

const Word& Homomorphism::image_of(Gen g) const {
  int pos = source_.generator_position(g);
  if (pos < 0)
    fail("AlphabetMismatch", "generator '" + symbols::name(g) + "' not in source");
  return images_[static_cast<std::size_t>(pos)];
}

Homomorphism make_hom(const Presentation& source, const Presentation& target,
                      const std::map<Gen, Word>& images) {
  Homomorphism h;
  h.source_ = source;
  h.target_ = target;
  h.images_.reserve(source.generators().size());
  for (Gen g : source.generators()) {
    auto it = images.find(g);
    if (it == images.end())
      fail("AlphabetMismatch",
           "no image given for generator '" + symbols::name(g) + "'");
    target.require_alphabet(it->second);
    h.images_.push_back(it->second);
  }
  if (source.kind() == PresentationKind::surface) {
    Word image = apply_hom(h, source.relator());
    if (!trivial_in(target, image))
      fail("NotWellDefined", "relator image is nontrivial in the target group");
  }
  return h;
}

Word apply_hom(const Homomorphism& h, const Word& w) {
  h.source().require_alphabet(w);
  WordBuilder b;
  for (auto c : w.codes()) {
    const Word& img =
        h.images()[static_cast<std::size_t>(h.source().generator_position(gen_of_code(c)))];
    if (c > 0)
      b.append(img);
    else
      b.append_inverse(img);
  }
  return b.take();
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& h) {
  if (!(h.target() == g.source()))
    fail("ChainMismatch", "inner target does not match outer source");
  std::map<Gen, Word> images;
  for (std::size_t i = 0; i < h.source().generators().size(); ++i)
    images[h.source().generators()[i]] = apply_hom(g, h.images()[i]);
  return make_hom(h.source(), g.target(), images);
}

HomFamily HomFamily::cor22(int r) {
  if (r < 1) fail("BadIndex", "cor22 requires r >= 1");
  HomFamily f;
  f.kind_ = FamilyKind::cor22;
  f.r_ = r;
  f.source_ = Presentation::surface(2 * r, SurfaceForm::mirrored);
  f.target_ = cor22_free_target(r);
  f.twist_ = commutator_chain(f.target_.generators(), r);
  return f;
}

HomFamily HomFamily::cor24(int rank, Word a, Word b) {
  if (rank < 2) fail("BadRank", "cor24 requires rank >= 2");
  HomFamily f;
  f.kind_ = FamilyKind::cor24;
  f.r_ = rank;
  f.source_ = Presentation::free_group(rank + 1);
  f.target_ = Presentation::free_group(rank);
  f.target_.require_alphabet(a);
  f.target_.require_alphabet(b);
  if (commutes(a, b)) fail("CommutingPair", "cor24 requires noncommuting a, b");
  f.a_ = std::move(a);
  f.b_ = std::move(b);
  return f;
}

HomFamily HomFamily::cor25(int r) {
  HomFamily f;
  f.kind_ = FamilyKind::cor25;
  f.r_ = r;
  f.target_ = Presentation::surface(r, SurfaceForm::standard);
  f.source_ = cor22_free_target(r);
  return f;
}

Homomorphism HomFamily::member(long n) const {
  if (n < 0) fail("BadIndex", "family index must be >= 0");
  std::map<Gen, Word> images;
  switch (kind_) {
    case FamilyKind::cor22: {
      const auto& sg = source_.generators();  // a1,a1',..,ar,ar',b1,b1',..,br,br'
      const auto& tg = target_.generators();  // x1,x1',..,xr,xr'
      const Word gn = power(twist_, n);
      for (int i = 0; i < 2 * r_; ++i) {
        Word x = Word::from_codes(std::array<std::int32_t, 1>{code_of(tg[i], +1)});
        images[sg[i]] = x;
        images[sg[2 * r_ + i]] = conjugate(x, gn);
      }
      break;
    }
    case FamilyKind::cor24: {
      const auto& sg = source_.generators();
      const auto& tg = target_.generators();
      for (int i = 0; i < r_; ++i)
        images[sg[i]] =
            Word::from_codes(std::array<std::int32_t, 1>{code_of(tg[i], +1)});
      images[sg[r_]] = conjugate(a_, power(b_, n));
      break;
    }
    case FamilyKind::cor25: {
      const auto& sg = source_.generators();  // x1,x1',..,xr,xr'
      const auto& tg = target_.generators();  // a1,a1',..,ar,ar'
      for (int i = 0; i < 2 * r_; ++i)
        images[sg[i]] =
            Word::from_codes(std::array<std::int32_t, 1>{code_of(tg[i], +1)});
      Word a1 = images[sg[0]];
      Word a1p = images[sg[1]];
      images[sg[0]] = multiply(a1, power(a1p, n));
      break;
    }
  }
  return make_hom(source_, target_, images);
}

Homomorphism cor22_twist(int r) {
  Presentation gamma = Presentation::surface(2 * r, SurfaceForm::mirrored);
  const auto& g = gamma.generators();
  Word sep = commutator_chain(g, r);  // γ, the separating curve
  std::map<Gen, Word> images;
  for (int i = 0; i < 2 * r; ++i) {
    Word x = Word::from_codes(std::array<std::int32_t, 1>{code_of(g[i], +1)});
    Word y = Word::from_codes(std::array<std::int32_t, 1>{code_of(g[2 * r + i], +1)});
    images[g[i]] = x;
    images[g[2 * r + i]] = conjugate(y, sep);
  }
  return make_hom(gamma, gamma, images);
}

SeparationResult separate(const HomFamily& fam, const std::vector<Word>& K,
                          long horizon, long window) {
  if (horizon < 0 || window < 0)
    fail("BadIndex", "horizon and window must be >= 0");
  for (const Word& w : K) {
    fam.source().require_alphabet(w);
    if (trivial_in(fam.source(), w))
      fail("TrivialElementInK",
           "element '" + format_word(w) + "' is trivial in the source group");
  }

  // memo[m]: 0 unknown, 1 all of K survives member(m), 2 some element dies
  std::vector<char> memo(static_cast<std::size_t>(horizon + window) + 1, 0);
  auto good = [&](long m) -> bool {
    char& slot = memo[static_cast<std::size_t>(m)];
    if (slot == 0) {
      Homomorphism h = fam.member(m);
      slot = 1;
      for (const Word& w : K) {
        if (trivial_in(fam.target(), apply_hom(h, w))) {
          slot = 2;
          break;
        }
      }
    }
    return slot == 1;
  };

  for (long n = 0; n <= horizon; ++n) {
    bool ok = true;
    for (long m = n; m <= n + window; ++m) {
      if (!good(m)) {
        ok = false;
        n = m;  // no window starting at <= m can avoid the bad index
        break;
      }
    }
    if (ok) return {n, fam.member(n)};
  }
  fail("HorizonExhausted",
       "no index n <= " + std::to_string(horizon) +
           " separates K over a window of " + std::to_string(window));
}

}  // namespace surfree
