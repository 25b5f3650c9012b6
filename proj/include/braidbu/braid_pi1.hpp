#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "braidbu/config_space.hpp"
#include "braidbu/covering.hpp"
#include "braidbu/error.hpp"
#include "braidbu/free_group.hpp"
#include "braidbu/graph.hpp"
#include "braidbu/morse.hpp"
#include "braidbu/permutation.hpp"
#include "braidbu/two_complex.hpp"

namespace braidbu {

enum class Space { fm, quotient };

inline const char* to_string(Space s) { return s == Space::fm ? "fm" : "quotient"; }

/// A critical edge sigma . O_b, named by its source permutation and type.
/// In the quotient, sigma is the canonical coset representative.
struct GeneratorId {
  Space space = Space::fm;
  Permutation sigma;
  int type = 0;
  ConfCell cell;

  std::string label() const {
    const std::string body = sigma.to_cycle_string() + "·O" + std::to_string(type);
    return space == Space::fm ? body : "[" + body + "]";
  }
};

/// Outcome of a structural check: passes, or names the first offending item.
struct Check {
  bool ok = true;
  int checked = 0;
  std::string failure;

  void fail(std::string why) {
    if (ok) failure = std::move(why);
    ok = false;
  }
};

/// Everything about B_m = pi_1 of the ordered and Z_m-unordered discrete
/// configuration spaces of the m-subdivided lollipop: gradient fields, maximal
/// trees, free bases, and the maps iota, p_1, theta (closed forms and oracles).
///
/// Not copyable: the covering pair refers to the complexes held here.
class LollipopBraids {
 public:
  using BlockingRule = std::function<bool(const Graph&, const ConfCell&, int)>;

  explicit LollipopBraids(int m, const BlockingRule& blocked = FarleySabalkaBlocking{})
      : m_(m), graph_(make_lollipop(m)) {
    up_ = build_dconf(graph_, m);
    down_ = build_quotient(up_);
    up_field_ = build_field(up_, blocked);
    down_field_ = build_quotient_field(up_, up_field_, down_);
    up_forest_ = build_forest(up_, up_field_);
    down_forest_ = build_forest(up_, down_, down_field_);
    up_critical_ = critical_edges(up_, up_field_);
    loop_cell_ = graph_.cell_of_edge(*graph_.find_edge("a"));
    select_edges();
    build_presentations();
  }

  LollipopBraids(const LollipopBraids&) = delete;
  LollipopBraids& operator=(const LollipopBraids&) = delete;

  int m() const { return m_; }
  const Graph& graph() const { return graph_; }
  const CubeComplex& fm() const { return up_; }
  const QuotientComplex& quotient() const { return down_; }
  const GradientField& fm_field() const { return up_field_; }
  const GradientField& quotient_field() const { return down_field_; }
  const Forest& fm_forest() const { return up_forest_; }
  const Forest& quotient_forest() const { return down_forest_; }
  const std::vector<CriticalEdge>& fm_critical_edges() const { return up_critical_; }
  const CoveringPair& covering() const { return *pair_; }
  int loop_cell() const { return loop_cell_; }

  /// Selected critical edges (1-cell indices in F_m, orbit ids in the quotient).
  const std::vector<int>& selected(Space s) const { return s == Space::fm ? up_selected_ : down_selected_; }

  /// Selected edges per type b (index b - 1).
  std::vector<int> selected_by_type(Space s) const {
    std::vector<int> out(static_cast<std::size_t>(m_), 0);
    for (int e : selected(s)) ++out[static_cast<std::size_t>(type_of(s, e) - 1)];
    return out;
  }

  const Pi1Presentation& presentation(Space s) const { return s == Space::fm ? pair_->up() : pair_->down(); }
  int rank(Space s) const { return presentation(s).rank(); }

  /// Free basis, in generator order.
  std::vector<GeneratorId> basis(Space s) const {
    std::vector<GeneratorId> out;
    for (int g = 0; g < rank(s); ++g) out.push_back(generator(s, g));
    return out;
  }

  GeneratorId generator(Space s, int g) const {
    const int e = presentation(s).generator_edge(g);
    const ConfCell& cell = s == Space::fm ? up_.cell(1, e) : up_.cell(1, down_.representative(1, e));
    GeneratorId id{s, source_permutation(cell), edge_type(graph_, cell), cell};
    return id;
  }

  /// Generator index of sigma . O_b in F_m, if that edge is a basis element.
  std::optional<int> fm_generator_of(const Permutation& sigma, int b) const {
    const int e = up_.index_of(act(sigma, standard_critical_edge(graph_, m_, b)));
    const int g = pair_->up().generator_of_edge(e);
    return g < 0 ? std::nullopt : std::optional<int>(g);
  }

  /// Quotient generator of the orbit [tau . O_b]; throws if that orbit is a
  /// selected (tree) edge.
  int bracket(const Permutation& tau, int b) const {
    const int e = up_.index_of(act(tau, standard_critical_edge(graph_, m_, b)));
    const int g = pair_->down().generator_of_edge(down_.orbit_of(1, e));
    if (g < 0) {
      throw StructuralError("bracket [" + tau.to_cycle_string() + "·O" + std::to_string(b) +
                            "] resolves to a selected edge");
    }
    return g;
  }

  /// [tau . O_b] as a quotient word. A selected orbit lies in the maximal
  /// tree and so stands for the trivial element.
  FreeWord bracket_word(const Permutation& tau, int b) const {
    const int e = up_.index_of(act(tau, standard_critical_edge(graph_, m_, b)));
    const int orbit = down_.orbit_of(1, e);
    if (down_is_selected_[static_cast<std::size_t>(orbit)]) return FreeWord{};
    return FreeWord::generator(bracket(tau, b));
  }

  /// The maximal tree of a space: forest plus selected edges spans and is
  /// acyclic.
  Check maximal_tree_check(Space s) const {
    Check c;
    const auto& forest = s == Space::fm ? up_forest_ : down_forest_;
    const int vertices = s == Space::fm ? up_.count(0) : down_.count(0);
    DisjointSets sets(vertices);
    auto add = [&](int low, int high) {
      ++c.checked;
      if (!sets.unite(low, high)) c.fail("cycle through edge " + std::to_string(c.checked));
    };
    for (int e : forest.edges) {
      const Facet& f = s == Space::fm ? up_.facets(1, e).front() : down_.facets(1, e).front();
      add(f.low, f.high);
    }
    for (int e : selected(s)) {
      const Facet& f = s == Space::fm ? up_.facets(1, e).front() : down_.facets(1, e).front();
      add(f.low, f.high);
    }
    if (sets.sets() != 1) c.fail("tree leaves " + std::to_string(sets.sets()) + " components");
    if (c.checked != vertices - 1) c.fail("edge count differs from vertices - 1");
    if (!presentation(s).tree_is_spanning()) c.fail("presentation tree does not span");
    return c;
  }

  // iota

  FreeWord iota_closed_form(int g) const {
    const GeneratorId id = generator(Space::fm, g);
    const Permutation& sigma = id.sigma;
    const int b = id.type;
    const Permutation c1 = rotation_cycle(m_, 1);
    const Permutation cb_inv = rotation_cycle(m_, b).inverse();
    auto product = [&](const Permutation& prefix, int upto) {
      FreeWord w;
      for (int i = 1; i <= upto; ++i) w *= bracket_word(prefix * c1.pow(-i + 1), 1);
      return w;
    };
    const int s1 = sigma(1);
    if (b == 1) return product(sigma, m_);
    if (s1 == 1) return bracket_word(sigma, b);
    int tail = 0;
    if (s1 < b) {
      tail = s1 - 1;
    } else if (s1 == b) {
      tail = m_ - 1;
    } else {
      tail = s1 - 2;
    }
    return product(sigma, s1 - 1).inverse() * bracket_word(sigma, b) * product(sigma * cb_inv, tail);
  }

  FreeWord iota_oracle(int g) const { return pair_->iota(FreeWord::generator(g)); }

  /// iota on an F_m word, by substitution of the closed form.
  FreeWord iota(const FreeWord& w) const {
    return w.substitute([&](int g) { return iota_closed_form(g); });
  }

  // p_1

  int p1_closed_form(int g) const { return generator(Space::fm, g).cell.front() == loop_cell_ ? 1 : 0; }

  /// Signed number of times the first particle runs along the loop edge in
  /// the basis loop.
  int p1_oracle(int g) const { return p1_of_path(pair_->up().basis_loop(g)); }

  int p1_of_path(const EdgePath& path) const {
    int total = 0;
    for (const auto& s : path.steps) {
      if (up_.cell(1, s.edge).front() == loop_cell_) total += s.sign;
    }
    return total;
  }

  long p1(const FreeWord& w) const {
    return w.evaluate([&](int g) { return static_cast<long>(p1_closed_form(g)); });
  }

  // theta, normalized by theta([O_1]) = 1

  long theta_closed_form(int g) const {
    const GeneratorId id = generator(Space::quotient, g);
    if (id.type != 1) return 0;
    return positive_mod(id.sigma.inverse()(2) - 1, m_);
  }

  long theta_oracle(const FreeWord& w) const { return pair_->theta(w); }

  long theta(const FreeWord& w) const {
    return positive_mod(w.evaluate([&](int g) { return theta_closed_form(g); }), m_);
  }

  /// theta of the type-1 bracket [tau . O_1], via the oracle.
  long theta_bracket(const Permutation& tau) const { return pair_->theta(bracket_word(tau, 1)); }

  /// theta<tau> for a canonical tau (tau(1) = 1), via the closed form.
  long theta_canonical(const Permutation& tau) const {
    if (tau(1) != 1) throw InvalidInput("theta<" + tau.to_cycle_string() + ">: argument is not canonical");
    return positive_mod(tau.inverse()(2) - 1, m_);
  }

  std::optional<FreeWord> rs_rewrite(const FreeWord& w) const { return pair_->rs_rewrite(w); }

  /// Quotient generator index of [O_1], the transversal generator z.
  int z_generator() const { return bracket(Permutation::identity(m_), 1); }

  std::string name(Space s, int g) const { return generator(s, g).label(); }

  std::string format_word(Space s, const FreeWord& w) const {
    return w.to_string([&](int g) { return name(s, g); });
  }

  // Relation checks on the computed maps.

  /// Sum over i of theta[sigma c_1^(-i+1)] vanishes for every sigma.
  Check theta_cycle_relation() const {
    Check c;
    const Permutation c1 = rotation_cycle(m_, 1);
    for (const auto& sigma : Permutation::all(m_)) {
      long sum = 0;
      for (int i = 1; i <= m_; ++i) sum += theta_bracket(sigma * c1.pow(-i + 1));
      ++c.checked;
      if (positive_mod(sum, m_) != 0) c.fail("cycle relation fails for " + sigma.to_cycle_string());
    }
    return c;
  }

  /// The three-branch relations for sigma(1) > 1 and 2 <= b <= m, both with
  /// possibly non-canonical brackets (oracle theta) and rewritten through
  /// canonical representatives (closed-form theta).
  Check theta_branch_relations() const {
    Check c;
    const Permutation c1 = rotation_cycle(m_, 1);
    for (const auto& sigma : Permutation::all(m_)) {
      const int s1 = sigma(1);
      if (s1 == 1) continue;
      const Permutation inv = sigma.inverse();
      for (int b = 2; b <= m_; ++b) {
        const Permutation cb_inv = rotation_cycle(m_, b).inverse();
        const int upper = s1 < b ? s1 - 1 : (s1 == b ? m_ - 1 : s1 - 2);
        long lhs = 0;
        long rhs = 0;
        long lhs_canonical = 0;
        long rhs_canonical = 0;
        for (int i = 1; i <= s1 - 1; ++i) {
          lhs += theta_bracket(sigma * c1.pow(-i + 1));
          lhs_canonical += theta_canonical(c1.pow(inv(i) - 1) * sigma * c1.pow(-i + 1));
        }
        for (int i = 1; i <= upper; ++i) {
          rhs += theta_bracket(sigma * cb_inv * c1.pow(-i + 1));
          const int shift = i < b ? inv(i) - 1 : inv(i + 1) - 1;
          rhs_canonical += theta_canonical(c1.pow(shift) * sigma * cb_inv * c1.pow(-i + 1));
        }
        ++c.checked;
        const std::string where = " for sigma=" + sigma.to_cycle_string() + ", b=" + std::to_string(b);
        if (positive_mod(lhs - rhs, m_) != 0) c.fail("bracket relation fails" + where);
        if (positive_mod(lhs_canonical - rhs_canonical, m_) != 0) c.fail("canonical relation fails" + where);
      }
    }
    return c;
  }

  /// iota(c_1^r O_m) = [O_1]^-r [O_m] [O_1]^r and the conjugation identity
  /// [O_1] iota(c_1^r O_m) [O_1]^-1 = iota(c_1^(r-1) O_m).
  Check conjugation_identities() const {
    Check c;
    const Permutation c1 = rotation_cycle(m_, 1);
    const FreeWord z = FreeWord::generator(z_generator());
    const FreeWord top = bracket_word(Permutation::identity(m_), m_);
    auto image = [&](int r) {
      const auto g = fm_generator_of(c1.pow(r), m_);
      if (!g) throw StructuralError("c_1^r . O_m is not a basis element");
      return std::make_pair(iota_closed_form(*g), iota_oracle(*g));
    };
    for (int r = 0; r < m_; ++r) {
      const auto [closed, oracle] = image(r);
      const FreeWord expected = z.pow(-r) * top * z.pow(r);
      ++c.checked;
      if (closed != expected || oracle != expected) c.fail("iota(c_1^" + std::to_string(r) + " O_m) differs");
      if (r >= 1) {
        const auto [prev_closed, prev_oracle] = image(r - 1);
        ++c.checked;
        if (z * closed * z.inverse() != prev_closed || z * oracle * z.inverse() != prev_oracle) {
          c.fail("conjugation identity fails at r=" + std::to_string(r));
        }
      }
    }
    return c;
  }

 private:
  Permutation source_permutation(const ConfCell& edge) const {
    return associated_permutation(graph_, low_corner(graph_, edge));
  }

  int type_of(Space s, int e) const {
    return edge_type(graph_, s == Space::fm ? up_.cell(1, e) : up_.cell(1, down_.representative(1, e)));
  }

  static bool selection_rule(const Permutation& sigma, int b, int m) {
    if (b > m - 1) return false;
    for (int i = 1; i < b; ++i) {
      if (sigma(i) != i) return false;
    }
    return sigma(b) != b;
  }

  void select_edges() {
    up_is_selected_.assign(static_cast<std::size_t>(up_.count(1)), false);
    for (const auto& x : up_critical_) {
      if (selection_rule(x.sigma_source, x.type, m_)) {
        up_selected_.push_back(x.index);
        up_is_selected_[static_cast<std::size_t>(x.index)] = true;
      }
    }
    down_is_selected_.assign(static_cast<std::size_t>(down_.count(1)), false);
    for (int o : down_field_.critical(1)) {
      const ConfCell& rep = up_.cell(1, down_.representative(1, o));
      const Permutation sigma = source_permutation(rep);
      if (sigma(1) != 1) throw StructuralError("orbit representative of a critical edge is not canonical");
      const int b = edge_type(graph_, rep);
      if (b >= 2 && selection_rule(sigma, b, m_)) {
        down_selected_.push_back(o);
        down_is_selected_[static_cast<std::size_t>(o)] = true;
      }
    }
  }

  static Pi1Presentation presentation_from_field(const TwoComplex& k, int base, const GradientField& field,
                                                 const std::vector<bool>& is_selected) {
    const std::size_t n = k.edges.size();
    std::vector<EdgeRole> roles(n, EdgeRole::tree);
    std::vector<int> rewrite(n, -1);
    std::vector<int> generators;
    for (std::size_t e = 0; e < n; ++e) {
      const CellClass& cls = field.at(1, static_cast<int>(e));
      switch (cls.kind) {
        case CellKind::collapsible:
          roles[e] = EdgeRole::tree;
          break;
        case CellKind::redundant:
          roles[e] = EdgeRole::rewritten;
          rewrite[e] = cls.partner;
          break;
        case CellKind::critical:
          roles[e] = is_selected[e] ? EdgeRole::tree : EdgeRole::generator;
          if (!is_selected[e]) generators.push_back(static_cast<int>(e));
          break;
      }
    }
    return Pi1Presentation(k, base, std::move(roles), std::move(rewrite), std::move(generators));
  }

  void build_presentations() {
    Pi1Presentation up = presentation_from_field(two_skeleton(up_), up_.base_vertex(), up_field_, up_is_selected_);
    Pi1Presentation down =
        presentation_from_field(two_skeleton(down_), down_.base_vertex(), down_field_, down_is_selected_);
    pair_ = std::make_unique<CoveringPair>(up_, down_, std::move(up), std::move(down));
    pair_->set_transversal(FreeWord::generator(z_generator()));
  }

  int m_;
  Graph graph_;
  CubeComplex up_;
  QuotientComplex down_;
  GradientField up_field_;
  GradientField down_field_;
  Forest up_forest_;
  Forest down_forest_;
  std::vector<CriticalEdge> up_critical_;
  int loop_cell_ = -1;
  std::vector<int> up_selected_;
  std::vector<int> down_selected_;
  std::vector<bool> up_is_selected_;
  std::vector<bool> down_is_selected_;
  std::unique_ptr<CoveringPair> pair_;
};

}  // namespace braidbu
