#include "surfree/word.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <shared_mutex>
#include <unordered_map>

#include "surfree/errors.hpp"

namespace surfree {

namespace symbols {
namespace {

struct Table {
  std::shared_mutex mu;
  std::deque<std::string> names;  // deque: stable references across growth
  std::unordered_map<std::string, Gen> index;
};

Table& table() {
  static Table t;
  return t;
}

}  // namespace

bool valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front())))
    return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
  });
}

Gen intern(std::string_view name) {
  if (!valid_name(name))
    fail("ParseError", "invalid generator name '" + std::string(name) + "'");
  auto& t = table();
  std::string key(name);
  {
    std::shared_lock lock(t.mu);
    auto it = t.index.find(key);
    if (it != t.index.end()) return it->second;
  }
  std::unique_lock lock(t.mu);
  auto [it, fresh] = t.index.try_emplace(key, static_cast<Gen>(t.names.size()));
  if (fresh) t.names.push_back(key);
  return it->second;
}

std::optional<Gen> lookup(std::string_view name) {
  auto& t = table();
  std::shared_lock lock(t.mu);
  auto it = t.index.find(std::string(name));
  if (it == t.index.end()) return std::nullopt;
  return it->second;
}

const std::string& name(Gen g) {
  auto& t = table();
  std::shared_lock lock(t.mu);
  return t.names.at(static_cast<std::size_t>(g));
}

}  // namespace symbols

Word Word::from_letters(std::span<const Letter> letters) {
  WordBuilder b(letters.size());
  for (const auto& l : letters) {
    if (l.sign != 1 && l.sign != -1) fail("ParseError", "letter sign must be +1 or -1");
    b.push(code_of(l.gen, l.sign));
  }
  return b.take();
}

Word Word::from_codes(std::span<const std::int32_t> codes) {
  WordBuilder b(codes.size());
  for (auto c : codes) b.push(c);
  return b.take();
}

Word multiply(const Word& u, const Word& v) {
  WordBuilder b(u.length() + v.length());
  b.append(u);
  b.append(v);
  return b.take();
}

Word invert(const Word& u) {
  WordBuilder b(u.length());
  b.append_inverse(u);
  return b.take();
}

Word conjugate(const Word& u, const Word& g) {
  WordBuilder b(u.length() + 2 * g.length());
  b.append(g);
  b.append(u);
  b.append_inverse(g);
  return b.take();
}

Word commutator(const Word& u, const Word& v) {
  WordBuilder b(2 * (u.length() + v.length()));
  b.append(u);
  b.append(v);
  b.append_inverse(u);
  b.append_inverse(v);
  return b.take();
}

Word power(const Word& u, long n) {
  if (n == 0 || u.empty()) return Word{};
  auto dec = cyclic_reduce(u);
  const Word core = n > 0 ? dec.core : invert(dec.core);
  const unsigned long reps = n > 0 ? static_cast<unsigned long>(n)
                                   : static_cast<unsigned long>(-(n + 1)) + 1ul;
  WordBuilder b(2 * dec.conjugator.length() + reps * core.length());
  b.append(dec.conjugator);
  for (unsigned long i = 0; i < reps; ++i) b.append(core);
  b.append_inverse(dec.conjugator);
  return b.take();
}

CyclicDecomposition cyclic_reduce(const Word& u) {
  auto cs = u.codes();
  std::size_t i = 0, j = cs.size();
  while (j - i >= 2 && cs[i] == -cs[j - 1]) {
    ++i;
    --j;
  }
  CyclicDecomposition d;
  d.core = Word::from_codes(cs.subspan(i, j - i));
  d.conjugator = Word::from_codes(cs.subspan(0, i));
  return d;
}

bool commutes(const Word& u, const Word& v) {
  return multiply(u, v) == multiply(v, u);
}

namespace {

bool compact_eligible(std::span<const Gen> alphabet) {
  if (alphabet.empty() || alphabet.size() > 26) return false;
  for (Gen g : alphabet) {
    const std::string& n = symbols::name(g);
    if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0])))
      return false;
  }
  return true;
}

Gen require_in_alphabet(std::string_view name, std::span<const Gen> alphabet) {
  auto g = symbols::lookup(name);
  if (g) {
    for (Gen a : alphabet)
      if (a == *g) return *g;
  }
  fail("UnknownGenerator", "generator '" + std::string(name) + "' not in alphabet");
}

Word parse_impl(std::string_view text, const std::span<const Gen>* alphabet) {
  WordBuilder b;
  const bool compact = alphabet && compact_eligible(*alphabet) && !text.empty() &&
                       text.find_first_of(" \t\r\n-") == std::string_view::npos;
  if (compact) {
    for (char ch : text) {
      if (!std::isalpha(static_cast<unsigned char>(ch)))
        fail("ParseError", std::string("bad compact letter '") + ch + "'");
      const char low = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      Gen g = require_in_alphabet(std::string_view(&low, 1), *alphabet);
      b.push(code_of(g, std::islower(static_cast<unsigned char>(ch)) ? +1 : -1));
    }
    return b.take();
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    int sign = +1;
    if (token.back() == '-') {
      sign = -1;
      token.remove_suffix(1);
    }
    if (!symbols::valid_name(token))
      fail("ParseError", "malformed token '" + std::string(token) + "'");
    Gen g = alphabet ? require_in_alphabet(token, *alphabet) : symbols::intern(token);
    b.push(code_of(g, sign));
  }
  return b.take();
}

}  // namespace

Word parse_word(std::string_view text) { return parse_impl(text, nullptr); }

Word parse_word(std::string_view text, std::span<const Gen> alphabet) {
  return parse_impl(text, &alphabet);
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += ' ';
    auto l = w.letter(i);
    out += symbols::name(l.gen);
    if (l.sign < 0) out += '-';
  }
  return out;
}

std::vector<std::string> word_tokens(const Word& w) {
  std::vector<std::string> out;
  out.reserve(w.length());
  for (std::size_t i = 0; i < w.length(); ++i) {
    auto l = w.letter(i);
    std::string t = symbols::name(l.gen);
    if (l.sign < 0) t += '-';
    out.push_back(std::move(t));
  }
  return out;
}

Word word_from_tokens(std::span<const std::string> tokens) {
  WordBuilder b(tokens.size());
  for (const auto& token : tokens) {
    std::string_view tv = token;
    int sign = +1;
    if (!tv.empty() && tv.back() == '-') {
      sign = -1;
      tv.remove_suffix(1);
    }
    if (!symbols::valid_name(tv))
      fail("ParseError", "malformed token '" + token + "'");
    b.push(code_of(symbols::intern(tv), sign));
  }
  return b.take();
}

}  // namespace surfree
