#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace surfree {

using Gen = std::int32_t;

struct Letter {
  Gen gen;
  int sign;  // +1 or -1
};

// Global generator symbol table. Valid names match [A-Za-z][A-Za-z0-9']*.
// Interned ids are stable for the lifetime of the process.
namespace symbols {
bool valid_name(std::string_view name);
Gen intern(std::string_view name);
std::optional<Gen> lookup(std::string_view name);
const std::string& name(Gen g);
}  // namespace symbols

// Letters are stored as nonzero codes: +(gen+1) for a generator, -(gen+1)
// for its inverse. Adjacent inverse pairs never survive construction.
constexpr std::int32_t code_of(Gen g, int sign) {
  return sign >= 0 ? g + 1 : -(g + 1);
}
constexpr Gen gen_of_code(std::int32_t c) { return (c > 0 ? c : -c) - 1; }
constexpr int sign_of_code(std::int32_t c) { return c > 0 ? +1 : -1; }

// A freely reduced word. Immutable value type; the empty word is the identity.
class Word {
 public:
  Word() = default;

  static Word from_letters(std::span<const Letter> letters);
  static Word from_codes(std::span<const std::int32_t> codes);

  std::size_t length() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }
  std::int32_t code(std::size_t i) const { return codes_[i]; }
  Letter letter(std::size_t i) const {
    return {gen_of_code(codes_[i]), sign_of_code(codes_[i])};
  }
  std::span<const std::int32_t> codes() const noexcept { return codes_; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  friend class WordBuilder;
  std::vector<std::int32_t> codes_;
};

// Append-only builder with on-the-fly cancellation at the top of the stack.
class WordBuilder {
 public:
  WordBuilder() = default;
  explicit WordBuilder(std::size_t reserve) { codes_.reserve(reserve); }

  void push(std::int32_t code) {
    if (!codes_.empty() && codes_.back() == -code)
      codes_.pop_back();
    else
      codes_.push_back(code);
  }
  void append(const Word& w) {
    for (auto c : w.codes()) push(c);
  }
  void append_inverse(const Word& w) {
    auto cs = w.codes();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) push(-*it);
  }
  std::size_t size() const noexcept { return codes_.size(); }

  Word take() {
    Word w;
    w.codes_ = std::move(codes_);
    codes_.clear();
    return w;
  }

 private:
  std::vector<std::int32_t> codes_;
};

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
Word conjugate(const Word& u, const Word& g);   // g·u·g^-1
Word commutator(const Word& u, const Word& v);  // u·v·u^-1·v^-1

// u^n via cyclic decomposition, so the cost is linear in the output length.
Word power(const Word& u, long n);

// u = conjugator · core · conjugator^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word core;
  Word conjugator;
};
CyclicDecomposition cyclic_reduce(const Word& u);

bool commutes(const Word& u, const Word& v);

// Text format: whitespace-separated tokens, `name` or `name-` for the
// inverse (an apostrophe is part of the name, so a1'- inverts a1').
// Compact mode (single lowercase letter = generator, uppercase = inverse)
// applies when an alphabet of at most 26 single-letter lowercase names is
// given and the text contains neither whitespace nor '-'.
Word parse_word(std::string_view text);
Word parse_word(std::string_view text, std::span<const Gen> alphabet);

std::string format_word(const Word& w);
std::vector<std::string> word_tokens(const Word& w);
Word word_from_tokens(std::span<const std::string> tokens);

}  // namespace surfree
