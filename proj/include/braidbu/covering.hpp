#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "braidbu/config_space.hpp"
#include "braidbu/error.hpp"
#include "braidbu/free_group.hpp"
#include "braidbu/two_complex.hpp"

namespace braidbu {

/// The regular m-sheeted covering DF_m(G) -> DF_m(G)/Z_m together with free
/// presentations of both fundamental groups. Provides the oracle versions of
/// the inclusion iota and of the classifying map theta, and rewriting of
/// words of the quotient group that lie in the image of iota.
///
/// Deck convention: a loop whose lift from the base vertex ends at
/// c_1^t . base has theta = -t mod m.
class CoveringPair {
 public:
  CoveringPair(const CubeComplex& up, const QuotientComplex& down, Pi1Presentation up_presentation,
               Pi1Presentation down_presentation)
      : up_(&up),
        down_(&down),
        up_pres_(std::move(up_presentation)),
        down_pres_(std::move(down_presentation)),
        sheets_(down.particles()) {
    if (down_pres_.base() != down.orbit_of(0, up_pres_.base())) {
      throw InvalidInput("CoveringPair: base vertices do not correspond");
    }
    const int n = down_pres_.rank();
    theta_of_generator_.resize(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g) theta_of_generator_[static_cast<std::size_t>(g)] = theta(FreeWord::generator(g));
    transversal_ = find_unit_word();
  }

  const Pi1Presentation& up() const { return up_pres_; }
  const Pi1Presentation& down() const { return down_pres_; }
  int sheets() const { return sheets_; }

  /// Cell-wise projection of an upstairs edge path.
  EdgePath project(const EdgePath& path) const {
    EdgePath out{down_->orbit_of(0, path.start), {}};
    for (const auto& s : path.steps) out.steps.push_back({down_->orbit_of(1, s.edge), s.sign});
    return out;
  }

  /// Unique lift of a quotient edge path starting at an upstairs vertex.
  EdgePath lift(const EdgePath& path, int start) const {
    if (down_->orbit_of(0, start) != path.start) throw InvalidInput("lift: start vertex is not over the path start");
    EdgePath out{start, {}};
    int v = start;
    for (const auto& s : path.steps) {
      int found = -1;
      for (int k = 0; k < sheets_ && found < 0; ++k) {
        const int e = down_->member(1, s.edge, k);
        const Facet& f = up_->facets(1, e).front();
        if ((s.sign > 0 ? f.low : f.high) == v) found = e;
      }
      if (found < 0) throw StructuralError("lift: no edge over the path step");
      out.steps.push_back({found, s.sign});
      const Facet& f = up_->facets(1, found).front();
      v = s.sign > 0 ? f.high : f.low;
    }
    return out;
  }

  /// t with to = c_1^t . from, for two vertices in one orbit.
  int deck_offset(int from, int to) const {
    const int orbit = down_->orbit_of(0, from);
    if (down_->orbit_of(0, to) != orbit) throw StructuralError("lift endpoint left the orbit of its start");
    int kf = -1;
    int kt = -1;
    for (int k = 0; k < sheets_; ++k) {
      if (down_->member(0, orbit, k) == from) kf = k;
      if (down_->member(0, orbit, k) == to) kt = k;
    }
    return static_cast<int>(positive_mod(kt - kf, sheets_));
  }

  /// Oracle for theta on a word in the quotient generators.
  long theta(const FreeWord& w) const {
    const EdgePath loop = down_pres_.loop_of(w);
    const EdgePath up_path = lift(loop, up_pres_.base());
    return positive_mod(-deck_offset(up_pres_.base(), up_path.end(up_pres_.complex())), sheets_);
  }

  long theta_of_generator(int g) const { return theta_of_generator_.at(static_cast<std::size_t>(g)); }

  /// Oracle for iota: project the upstairs loop and read it in the quotient.
  FreeWord iota(const FreeWord& w) const {
    const EdgePath down_path = project(up_pres_.loop_of(w));
    if (down_path.end(down_pres_.complex()) != down_pres_.base()) throw StructuralError("projected path is not closed");
    return down_pres_.express_loop(down_path);
  }

  /// Word z with theta(z) = 1 used as the Schreier transversal {z^t}.
  const FreeWord& transversal() const { return transversal_; }

  void set_transversal(FreeWord z) {
    if (theta(z) != 1 % sheets_) throw InvalidInput("transversal word must have theta equal to 1");
    transversal_ = std::move(z);
    schreier_cache_.clear();
  }

  /// Reidemeister-Schreier rewriting: the unique upstairs word u with
  /// iota(u) = w, or nullopt when theta(w) != 0.
  std::optional<FreeWord> rs_rewrite(const FreeWord& w) const {
    if (theta(w) != 0) return std::nullopt;
    if (sheets_ > 1 && transversal_.empty()) throw StructuralError("rs_rewrite: theta is not surjective");
    FreeWord out;
    long coset = 0;
    for (const auto& l : w.letters()) {
      const long step = l.exponent > 0 ? theta_of_generator(l.generator) : -theta_of_generator(l.generator);
      if (l.exponent > 0) {
        out *= schreier_generator(coset, l.generator);
      } else {
        // z^t g^-1 z^-(t-th) = (z^(t-th) g z^-t)^-1
        out *= schreier_generator(positive_mod(coset + step, sheets_), l.generator).inverse();
      }
      coset = positive_mod(coset + step, sheets_);
    }
    if (coset != 0) throw StructuralError("rs_rewrite: coset walk did not return to the subgroup");
    return out;
  }

 private:
  /// Upstairs word of z^t g z^-(t + theta(g)).
  const FreeWord& schreier_generator(long t, int g) const {
    const auto key = std::make_pair(t, g);
    auto it = schreier_cache_.find(key);
    if (it != schreier_cache_.end()) return it->second;
    const long after = positive_mod(t + theta_of_generator(g), sheets_);
    const FreeWord word = transversal_.pow(t) * FreeWord::generator(g) * transversal_.pow(after).inverse();
    const EdgePath up_path = lift(down_pres_.loop_of(word), up_pres_.base());
    if (up_path.end(up_pres_.complex()) != up_pres_.base()) throw StructuralError("Schreier generator does not lift to a loop");
    return schreier_cache_.emplace(key, up_pres_.express_loop(up_path)).first->second;
  }

  FreeWord find_unit_word() const {
    // Extended Euclid over the theta values of the generators.
    long d = sheets_;
    std::vector<long> coeff(theta_of_generator_.size(), 0);
    for (std::size_t i = 0; i < theta_of_generator_.size(); ++i) {
      long a = d;
      long b = theta_of_generator_[i];
      long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
      while (b != 0) {
        const long q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
      }
      for (auto& c : coeff) c *= x0;
      coeff[i] = y0;
      d = a;
    }
    if (d != 1) return FreeWord{};
    FreeWord z;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      long c = positive_mod(coeff[i], sheets_);
      if (c > sheets_ / 2) c -= sheets_;
      z *= FreeWord::generator(static_cast<int>(i), static_cast<int>(c));
    }
    if (theta(z) != 1 % sheets_) return FreeWord{};
    return z;
  }

  const CubeComplex* up_;
  const QuotientComplex* down_;
  Pi1Presentation up_pres_;
  Pi1Presentation down_pres_;
  int sheets_;
  std::vector<long> theta_of_generator_;
  FreeWord transversal_;
  mutable std::map<std::pair<long, int>, FreeWord> schreier_cache_;
};

}  // namespace braidbu
