#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "braidbu/braid_pi1.hpp"
#include "braidbu/config_space.hpp"
#include "braidbu/covering.hpp"
#include "braidbu/error.hpp"
#include "braidbu/free_group.hpp"
#include "braidbu/graph.hpp"
#include "braidbu/two_complex.hpp"

namespace braidbu {

/// A free Z_n action on a graph Gamma, through its classifying map
/// theta_tau: pi_1(Gamma / tau) = F(x_1..x_r) -> Z_n.
struct ActionData {
  int n = 2;
  int r = 1;
  std::vector<long> theta_tau;

  void validate() const {
    if (n < 2) throw InvalidInput("action order must be at least 2");
    if (r < 1 || static_cast<int>(theta_tau.size()) != r) throw InvalidInput("theta_tau must have one value per generator");
    long g = n;
    for (long v : theta_tau) g = std::gcd(g, positive_mod(v, n));
    if (g != 1) throw InvalidInput("theta_tau is not surjective onto Z_n");
  }

  long theta(const FreeWord& w) const {
    return positive_mod(w.evaluate([&](int i) { return theta_tau.at(static_cast<std::size_t>(i)); }), n);
  }

  /// chi(Gamma) = n * chi(Gamma / tau) = n (1 - r).
  long chi() const { return static_cast<long>(n) * (1 - r); }
};

/// New free basis y_1..y_r of F(x_1..x_r), as words in x, with theta(y_1) a
/// generator of Z_n and theta(y_i) = 0 for i > 1.
///
/// Euclid's algorithm on the theta values, realised by the Nielsen moves
/// y_i <- y_i y_j^-q and a final swap.
inline std::vector<FreeWord> adapt_basis(const ActionData& action) {
  action.validate();
  const auto r = static_cast<std::size_t>(action.r);
  std::vector<FreeWord> basis;
  std::vector<long> value(r);
  for (std::size_t i = 0; i < r; ++i) {
    basis.push_back(FreeWord::generator(static_cast<int>(i)));
    value[i] = positive_mod(action.theta_tau[i], action.n);
  }
  while (true) {
    std::size_t pivot = r;
    int nonzero = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (value[i] == 0) continue;
      ++nonzero;
      if (pivot == r || value[i] < value[pivot]) pivot = i;
    }
    if (nonzero <= 1) {
      if (pivot != r && pivot != 0) {
        std::swap(basis[0], basis[pivot]);
        std::swap(value[0], value[pivot]);
      }
      break;
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (i == pivot || value[i] == 0) continue;
      const long q = value[i] / value[pivot];
      basis[i] *= basis[pivot].pow(-q);
      value[i] -= q * value[pivot];
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    const long t = action.theta(basis[i]);
    const bool good = i == 0 ? std::gcd(t, static_cast<long>(action.n)) == 1 : t == 0;
    if (!good) throw StructuralError("adapt_basis: postcondition failed");
  }
  return basis;
}

/// Free basis of ker(theta_tau) = pi_1(Gamma) from an adapted basis:
/// y_1^n, then y_1^i y_j y_1^-i for j = 2..r and i = 0..n-1 (in that order).
inline std::vector<FreeWord> kernel_basis(const std::vector<FreeWord>& adapted, int n) {
  if (adapted.empty()) throw InvalidInput("kernel_basis: empty basis");
  std::vector<FreeWord> out{adapted[0].pow(n)};
  for (std::size_t j = 1; j < adapted.size(); ++j) {
    for (int i = 0; i < n; ++i) out.push_back(adapted[0].pow(i) * adapted[j] * adapted[0].pow(-i));
  }
  return out;
}

/// The homomorphisms of the target side of the diagram.
struct TargetMaps {
  int sheets = 2;
  std::function<FreeWord(const FreeWord&)> iota;  // upstairs word -> quotient word
  std::function<long(const FreeWord&)> theta;     // quotient word -> Z_sheets
  std::function<long(const FreeWord&)> p1;        // upstairs word -> Z (0 for trees)
  std::function<std::string(const FreeWord&)> format_up;
  std::function<std::string(const FreeWord&)> format_down;
};

/// (phi, psi) on bases: psi on the generators x_i of pi_1(Gamma / tau), phi on
/// the kernel basis of pi_1(Gamma) (words in x), and the target class alpha
/// on that kernel basis.
struct Witness {
  std::vector<FreeWord> psi;
  std::vector<FreeWord> kernel;
  std::vector<FreeWord> phi;
  std::vector<long> alpha;
};

struct DiagramCheck {
  bool ok = true;
  std::string face;
  std::string location;
};

/// Checks the three faces: theta(psi(x)) = theta_tau(x), iota(phi(e)) =
/// psi(e) and p1(phi(e)) = alpha(e), on every basis element.
inline DiagramCheck verify_diagram(const Witness& w, const ActionData& action, const TargetMaps& maps) {
  DiagramCheck out;
  auto fail = [&](std::string face, std::string where) {
    out.ok = false;
    out.face = std::move(face);
    out.location = std::move(where);
    return out;
  };
  if (static_cast<int>(w.psi.size()) != action.r) return fail("shape", "psi is not given on every generator");
  if (w.phi.size() != w.kernel.size() || w.alpha.size() != w.kernel.size()) return fail("shape", "phi or alpha incomplete");
  for (int i = 0; i < action.r; ++i) {
    const long got = positive_mod(maps.theta(w.psi[static_cast<std::size_t>(i)]), action.n);
    if (got != positive_mod(action.theta_tau[static_cast<std::size_t>(i)], action.n)) {
      return fail("theta", "x" + std::to_string(i + 1));
    }
  }
  auto psi_of = [&](const FreeWord& e) { return e.substitute([&](int i) { return w.psi.at(static_cast<std::size_t>(i)); }); };
  for (std::size_t k = 0; k < w.kernel.size(); ++k) {
    if (maps.iota(w.phi[k]) != psi_of(w.kernel[k])) return fail("iota", "kernel element " + std::to_string(k + 1));
    if (maps.p1(w.phi[k]) != w.alpha[k]) return fail("p1", "kernel element " + std::to_string(k + 1));
  }
  return out;
}

struct BUVerdict {
  std::string target;
  bool holds = true;
  std::optional<Witness> witness;
  bool witness_verified = false;
  std::vector<std::pair<std::string, std::string>> details;
};

// Interval

inline BUVerdict decide_interval() {
  BUVerdict v;
  v.target = "interval";
  v.holds = true;
  v.details.push_back({"reason", "configuration space is a disjoint union of contractible pieces"});
  return v;
}

// Circle

/// Maps for the circle target with the identification pi_1 of a component of
/// the ordered configuration space = Z, included with index n.
inline TargetMaps circle_maps(int n) {
  TargetMaps maps;
  maps.sheets = n;
  auto sum = [](const FreeWord& w) { return w.evaluate([](int) { return 1L; }); };
  maps.iota = [n, sum](const FreeWord& w) { return FreeWord::generator(0, static_cast<int>(n * sum(w))); };
  maps.theta = [n, sum](const FreeWord& w) { return positive_mod(sum(w), n); };
  maps.p1 = sum;
  maps.format_up = [sum](const FreeWord& w) { return std::to_string(sum(w)); };
  maps.format_down = maps.format_up;
  return maps;
}

/// The action data for the circle decision: r = m + 1 with theta_tau(y_1) = 1
/// and theta_tau(y_j) = 0.
inline ActionData circle_action(int n, int m) {
  ActionData a{n, m + 1, std::vector<long>(static_cast<std::size_t>(m + 1), 0)};
  a.theta_tau[0] = 1;
  return a;
}

/// `cls` lists the class on the kernel basis: (p, then per j the n values on
/// y_1^i y_j y_1^-i). BU fails iff every block is constant and p = 1 mod n.
inline BUVerdict decide_circle(const std::vector<long>& cls, int n, int m) {
  if (n < 2 || m < 0) throw InvalidInput("decide_circle: need n >= 2 and m >= 0");
  if (static_cast<long>(cls.size()) != static_cast<long>(n) * m + 1) {
    throw InvalidInput("decide_circle: class must have n*m+1 entries");
  }
  BUVerdict v;
  v.target = "circle";
  bool blocks_constant = true;
  for (int j = 0; j < m; ++j) {
    for (int i = 1; i < n; ++i) {
      if (cls[static_cast<std::size_t>(1 + j * n + i)] != cls[static_cast<std::size_t>(1 + j * n)]) blocks_constant = false;
    }
  }
  const bool congruent = positive_mod(cls[0], n) == 1 % n;
  v.details.push_back({"blocks_constant", blocks_constant ? "true" : "false"});
  v.details.push_back({"p_mod_n", std::to_string(positive_mod(cls[0], n))});
  v.holds = !(blocks_constant && congruent);
  if (v.holds) return v;

  const ActionData action = circle_action(n, m);
  Witness w;
  w.psi.push_back(FreeWord::generator(0, static_cast<int>(cls[0])));
  for (int j = 0; j < m; ++j) {
    w.psi.push_back(FreeWord::generator(0, static_cast<int>(n * cls[static_cast<std::size_t>(1 + j * n)])));
  }
  w.kernel = kernel_basis(adapt_basis(action), n);
  w.alpha = cls;
  const TargetMaps maps = circle_maps(n);
  for (const auto& e : w.kernel) {
    const long value = e.substitute([&](int i) { return w.psi[static_cast<std::size_t>(i)]; }).evaluate([](int) { return 1L; });
    w.phi.push_back(FreeWord::generator(0, static_cast<int>(value / n)));
  }
  v.witness_verified = verify_diagram(w, action, maps).ok;
  v.witness = std::move(w);
  return v;
}

// Wedge S^1 v I

inline TargetMaps wedge_maps(const LollipopBraids& braids) {
  TargetMaps maps;
  maps.sheets = braids.m();
  maps.iota = [&braids](const FreeWord& w) { return braids.iota(w); };
  maps.theta = [&braids](const FreeWord& w) { return braids.theta(w); };
  maps.p1 = [&braids](const FreeWord& w) { return braids.p1(w); };
  maps.format_up = [&braids](const FreeWord& w) { return braids.format_word(Space::fm, w); };
  maps.format_down = [&braids](const FreeWord& w) { return braids.format_word(Space::quotient, w); };
  return maps;
}

/// Gamma with chi = 0 and a free Z_m action, mapped to the lollipop with
/// degree k on the circle. BU always fails; the witness is
/// psi(g) = z^u iota(w_1^l) with z = [O_1], w_1 = c_1^-1 . O_m, u = theta_tau(g)
/// and l chosen so that p_1(phi(g^m)) = k.
inline BUVerdict decide_wedge(long k, const LollipopBraids& braids, const ActionData& action) {
  action.validate();
  if (action.chi() != 0) throw InvalidInput("decide_wedge: Gamma must have Euler characteristic 0");
  const int m = braids.m();
  if (action.n != m) throw InvalidInput("decide_wedge: action order must equal the number of particles");
  const long u = positive_mod(action.theta_tau[0], m);

  const FreeWord z = FreeWord::generator(braids.z_generator());
  const auto w1 = braids.fm_generator_of(rotation_cycle(m, 1).inverse(), m);
  if (!w1) throw StructuralError("c_1^-1 . O_m is not a basis element");
  const FreeWord iota_w1 = braids.iota(FreeWord::generator(*w1));

  auto psi_for = [&](long ell) { return z.pow(u) * iota_w1.pow(ell); };
  auto phi_for = [&](long ell) {
    const auto rewritten = braids.rs_rewrite(psi_for(ell).pow(m));
    if (!rewritten) throw StructuralError("decide_wedge: psi(g)^m is not in the image of iota");
    return *rewritten;
  };
  const long j = braids.p1(phi_for(0));
  const long slope = braids.p1(phi_for(1)) - j;
  if (slope != 1 && slope != -1) throw StructuralError("decide_wedge: p1 does not move by a unit in l");
  const long ell = (k - j) * slope;

  BUVerdict v;
  v.target = "wedge";
  v.holds = false;
  v.details.push_back({"j", std::to_string(j)});
  v.details.push_back({"l", std::to_string(ell)});
  Witness w;
  w.psi.push_back(psi_for(ell));
  w.kernel = kernel_basis(adapt_basis(action), m);
  for (const auto& e : w.kernel) {
    const auto rewritten = braids.rs_rewrite(e.substitute([&](int) { return w.psi[0]; }));
    if (!rewritten) throw StructuralError("decide_wedge: kernel image is not in the image of iota");
    w.phi.push_back(*rewritten);
  }
  w.alpha = {k};
  v.witness_verified = verify_diagram(w, action, wedge_maps(braids)).ok;
  v.witness = std::move(w);
  return v;
}

// Trees

/// DF_n of a tree and its Z_n quotient, with presentations by collapsing.
class TreeTarget {
 public:
  TreeTarget(const Graph& tree, int n) : n_(n) {
    if (!tree.is_tree()) throw InvalidInput("decide_tree: target graph is not a tree");
    if (tree.essential_vertices().empty()) throw InvalidInput("decide_tree: a path is an interval target");
    up_ = build_dconf(tree, n);
    if (components(up_) != 1) throw StructuralError("decide_tree: configuration space is disconnected");
    down_ = build_quotient(up_);
    pair_ = std::make_unique<CoveringPair>(up_, down_, collapse_presentation(up_, up_.base_vertex()),
                                           collapse_presentation(down_, down_.base_vertex()));
  }

  TreeTarget(const TreeTarget&) = delete;
  TreeTarget& operator=(const TreeTarget&) = delete;

  int n() const { return n_; }
  const CubeComplex& fm() const { return up_; }
  const QuotientComplex& quotient() const { return down_; }
  const CoveringPair& covering() const { return *pair_; }

  TargetMaps maps() const {
    TargetMaps maps;
    maps.sheets = n_;
    maps.iota = [this](const FreeWord& w) { return pair_->iota(w); };
    maps.theta = [this](const FreeWord& w) { return pair_->theta(w); };
    maps.p1 = [](const FreeWord&) { return 0L; };
    maps.format_up = [](const FreeWord& w) { return w.to_string([](int g) { return "u" + std::to_string(g + 1); }); };
    maps.format_down = [](const FreeWord& w) { return w.to_string([](int g) { return "q" + std::to_string(g + 1); }); };
    return maps;
  }

 private:
  int n_;
  CubeComplex up_;
  QuotientComplex down_;
  std::unique_ptr<CoveringPair> pair_;
};

/// A tree target other than an interval: the single homotopy class fails BU.
/// psi(x_i) = z^theta_tau(x_i) lifts theta_tau through theta, phi is the
/// Reidemeister-Schreier restriction and alpha is trivial.
inline BUVerdict decide_tree(const TreeTarget& target, const ActionData& action) {
  action.validate();
  if (action.n != target.n()) throw InvalidInput("decide_tree: action order must equal the number of particles");
  const CoveringPair& pair = target.covering();
  BUVerdict v;
  v.target = "tree";
  v.holds = false;
  Witness w;
  for (long t : action.theta_tau) w.psi.push_back(pair.transversal().pow(positive_mod(t, action.n)));
  w.kernel = kernel_basis(adapt_basis(action), action.n);
  for (const auto& e : w.kernel) {
    const auto rewritten = pair.rs_rewrite(e.substitute([&](int i) { return w.psi[static_cast<std::size_t>(i)]; }));
    if (!rewritten) throw StructuralError("decide_tree: kernel image is not in the image of iota");
    w.phi.push_back(*rewritten);
  }
  w.alpha.assign(w.kernel.size(), 0);
  v.witness_verified = verify_diagram(w, action, target.maps()).ok;
  v.details.push_back({"quotient_rank", std::to_string(pair.down().rank())});
  v.witness = std::move(w);
  return v;
}

}  // namespace braidbu
