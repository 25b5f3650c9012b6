#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "braidbu/error.hpp"

namespace braidbu {

/// A permutation of {1, ..., m}.
///
/// The public interface is 1-based, matching the usual cycle notation.
/// Products follow the "first factor acts first" convention:
///
///     (alpha * beta)(x) == beta(alpha(x))
///
/// With this convention the coordinate action on tuples,
/// (sigma . y)_i = y_{sigma(i)}, is a left action.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int m) {
    if (m < 0) throw InvalidParameter("permutation size must be non-negative");
    std::vector<int> images(static_cast<std::size_t>(m));
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
  }

  /// Builds a permutation from its 1-based images (sigma(1), ..., sigma(m)).
  static Permutation from_images(const std::vector<int>& one_based) {
    std::vector<int> images;
    images.reserve(one_based.size());
    for (int v : one_based) images.push_back(v - 1);
    return from_zero_based(std::move(images));
  }

  static Permutation from_zero_based(std::vector<int> images) {
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
      if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[static_cast<std::size_t>(v)]) {
        throw InvalidInput("images do not form a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
    return Permutation(std::move(images));
  }

  /// The cycle (c_1 c_2 ... c_k) on {1..m}: c_1 -> c_2 -> ... -> c_k -> c_1.
  static Permutation cycle(int m, const std::vector<int>& one_based_cycle) {
    Permutation p = identity(m);
    for (std::size_t i = 0; i < one_based_cycle.size(); ++i) {
      int from = one_based_cycle[i];
      int to = one_based_cycle[(i + 1) % one_based_cycle.size()];
      if (from < 1 || from > m || to < 1 || to > m) throw InvalidInput("cycle entry out of range");
      p.images_[static_cast<std::size_t>(from - 1)] = to - 1;
    }
    return from_zero_based(p.images_);
  }

  /// Parses cycle notation such as "(153462)", "(1 5 3)(2 4)" or "()".
  /// Single-digit entries may be written without separators.
  static Permutation parse_cycles(int m, std::string_view text) {
    Permutation result = identity(m);
    std::size_t i = 0;
    while (i < text.size()) {
      if (text[i] == ' ') {
        ++i;
        continue;
      }
      if (text[i] != '(') throw InvalidInput("expected '(' in cycle notation");
      std::size_t close = text.find(')', i);
      if (close == std::string_view::npos) throw InvalidInput("unterminated cycle");
      std::string_view body = text.substr(i + 1, close - i - 1);
      std::vector<int> entries;
      bool separated = body.find_first_of(" ,") != std::string_view::npos;
      if (separated) {
        std::string token;
        for (char ch : body) {
          if (ch == ' ' || ch == ',') {
            if (!token.empty()) entries.push_back(std::stoi(token));
            token.clear();
          } else {
            token.push_back(ch);
          }
        }
        if (!token.empty()) entries.push_back(std::stoi(token));
      } else {
        for (char ch : body) {
          if (ch < '0' || ch > '9') throw InvalidInput("bad character in cycle notation");
          entries.push_back(ch - '0');
        }
      }
      if (!entries.empty()) result = result * cycle(m, entries);
      i = close + 1;
    }
    return result;
  }

  /// All permutations of {1..m} in lexicographic order of their image lists.
  static std::vector<Permutation> all(int m) {
    std::vector<Permutation> out;
    std::vector<int> images(static_cast<std::size_t>(m));
    std::iota(images.begin(), images.end(), 0);
    do {
      out.push_back(Permutation(images));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
  }

  int size() const { return static_cast<int>(images_.size()); }

  /// 1-based image sigma(i).
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)] + 1; }

  /// 0-based image, for indexing into tuples.
  int map0(int i) const { return images_[static_cast<std::size_t>(i)]; }

  const std::vector<int>& zero_based_images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
  }

  /// Product with the first factor acting first: (a * b)(x) = b(a(x)).
  friend Permutation operator*(const Permutation& first, const Permutation& second) {
    if (first.size() != second.size()) throw InvalidInput("permutation sizes differ");
    std::vector<int> out(first.images_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = second.images_[static_cast<std::size_t>(first.images_[i])];
    }
    return Permutation(std::move(out));
  }

  Permutation pow(int k) const {
    Permutation base = k < 0 ? inverse() : *this;
    Permutation result = identity(size());
    for (int i = 0; i < (k < 0 ? -k : k); ++i) result = result * base;
    return result;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != static_cast<int>(i)) return false;
    }
    return true;
  }

  /// Cycle notation with fixed points omitted, e.g. "(153462)"; "()" for the
  /// identity. Entries are comma separated once m exceeds 9.
  std::string to_cycle_string() const {
    std::ostringstream out;
    std::vector<bool> seen(images_.size(), false);
    const bool wide = images_.size() > 9;
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start] || images_[start] == static_cast<int>(start)) continue;
      out << '(';
      std::size_t cur = start;
      bool first = true;
      while (!seen[cur]) {
        seen[cur] = true;
        if (!first && wide) out << ',';
        out << cur + 1;
        first = false;
        cur = static_cast<std::size_t>(images_[cur]);
      }
      out << ')';
    }
    std::string s = out.str();
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}

  std::vector<int> images_;
};

/// The cycle c_b = (b b+1 ... m) in Sigma_m; c_1 = (1 2 ... m) generates the
/// cyclic subgroup acting on configurations and c_m is the identity.
inline Permutation rotation_cycle(int m, int b) {
  if (b < 1 || b > m) throw InvalidParameter("rotation_cycle: b must lie in 1..m");
  std::vector<int> entries;
  for (int i = b; i <= m; ++i) entries.push_back(i);
  return entries.size() < 2 ? Permutation::identity(m) : Permutation::cycle(m, entries);
}

/// Representative of the coset [sigma] = { c_1^i sigma } with sigma(1) = 1.
inline Permutation canonical_coset_representative(const Permutation& sigma) {
  const int m = sigma.size();
  // (c_1^k sigma)(1) = sigma(1 + k), so k = sigma^{-1}(1) - 1.
  const int k = sigma.inverse()(1) - 1;
  return rotation_cycle(m, 1).pow(k) * sigma;
}

}  // namespace braidbu
