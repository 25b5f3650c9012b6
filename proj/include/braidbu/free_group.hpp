#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "braidbu/error.hpp"

namespace braidbu {

struct Letter {
  int generator = 0;
  int exponent = 1;  // +1 or -1

  Letter inverse() const { return Letter{generator, -exponent}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A freely reduced word over generators 0, 1, 2, ... of a free group.
///
/// Every mutating operation keeps the word reduced, so two words represent
/// the same group element iff they compare equal.
class FreeWord {
 public:
  FreeWord() = default;

  static FreeWord generator(int g, int exponent = 1) {
    FreeWord w;
    const Letter step{g, exponent < 0 ? -1 : 1};
    for (int i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) w.push(step);
    return w;
  }

  static FreeWord from_letters(const std::vector<Letter>& letters) {
    FreeWord w;
    for (const auto& l : letters) w.push(l);
    return w;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Appends a letter, cancelling against the last one when possible.
  void push(const Letter& l) {
    if (l.exponent != 1 && l.exponent != -1) throw InvalidInput("letters carry exponent +1 or -1");
    if (!letters_.empty() && letters_.back().generator == l.generator && letters_.back().exponent == -l.exponent) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  FreeWord& operator*=(const FreeWord& rhs) {
    for (const auto& l : rhs.letters_) push(l);
    return *this;
  }

  friend FreeWord operator*(FreeWord lhs, const FreeWord& rhs) { return lhs *= rhs; }

  FreeWord inverse() const {
    FreeWord w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push(it->inverse());
    return w;
  }

  FreeWord pow(long k) const {
    const FreeWord base = k < 0 ? inverse() : *this;
    FreeWord out;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
    return out;
  }

  /// Applies a homomorphism given by the images of the generators.
  FreeWord substitute(const std::function<FreeWord(int)>& image) const {
    FreeWord out;
    for (const auto& l : letters_) {
      FreeWord g = image(l.generator);
      out *= l.exponent > 0 ? g : g.inverse();
    }
    return out;
  }

  /// Evaluates an abelian-valued homomorphism (e.g. into Z or Z_n).
  long evaluate(const std::function<long(int)>& value) const {
    long total = 0;
    for (const auto& l : letters_) total += l.exponent * value(l.generator);
    return total;
  }

  /// Renders as "g0 g1^-1 ..." using the supplied generator names; the empty
  /// word renders as "1".
  std::string to_string(const std::function<std::string(int)>& name) const {
    if (letters_.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < letters_.size()) {
      std::size_t j = i;
      while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
      const long power = static_cast<long>(j - i) * letters_[i].exponent;
      if (!out.empty()) out += ' ';
      out += name(letters_[i].generator);
      if (power != 1) out += "^" + std::to_string(power);
      i = j;
    }
    return out;
  }

  std::string to_string() const {
    return to_string([](int g) { return "x" + std::to_string(g); });
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord& a, const FreeWord& b) { return a.letters_ <=> b.letters_; }

 private:
  std::vector<Letter> letters_;
};

inline long positive_mod(long value, long n) { return ((value % n) + n) % n; }

}  // namespace braidbu
