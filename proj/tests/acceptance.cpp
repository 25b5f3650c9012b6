// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "braidbu/braidbu.hpp"
#include "circle_solver.hpp"

using namespace braidbu;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const LollipopBraids& braids(int m) {
  static std::map<int, std::unique_ptr<LollipopBraids>> cache;
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<LollipopBraids>(m);
  return *slot;
}

// Union-find used by the tree and component oracles.
struct Sets {
  explicit Sets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
  std::vector<int> parent;
};

template <class C>
long alternating_count(const C& c) {
  long total = 0;
  for (int d = 0; d <= c.dimension(); ++d) total += (d % 2 ? -1L : 1L) * c.count(d);
  return total;
}

// Sorted multiset of graph cells of the type-b standard edge, built from names.
std::vector<int> type_signature(const Graph& g, int m, int b) {
  std::vector<int> cells;
  for (int v = 0; v <= b - 2; ++v) cells.push_back(v);
  cells.push_back(*g.parse_cell("a"));
  for (int v = m; v <= 2 * m - b - 1; ++v) cells.push_back(v);
  std::sort(cells.begin(), cells.end());
  return cells;
}

int type_by_signature(const Graph& g, int m, ConfCell cell) {
  std::sort(cell.begin(), cell.end());
  for (int b = 1; b <= m; ++b) {
    if (type_signature(g, m, b) == cell) return b;
  }
  return 0;
}

// sigma(i) = rank of the i-th vertex coordinate (vertex ids are ordinals here).
Permutation sorting_permutation(const ConfCell& vertex) {
  std::vector<int> images;
  for (int v : vertex) {
    images.push_back(1 + static_cast<int>(std::count_if(vertex.begin(), vertex.end(), [v](int w) { return w < v; })));
  }
  return Permutation::from_images(images);
}

// ---- criteria ------------------------------------------------------------

Outcome criterion_census() {
  Outcome out;
  for (int m = 2; m <= 4; ++m) {
    const auto& b = braids(m);
    const Graph& g = b.graph();
    const long per = factorial(m);
    if (static_cast<long>(b.fm_field().critical(0).size()) != per) out.fail("m=" + std::to_string(m) + " F critical vertices");
    std::vector<long> by_type(static_cast<std::size_t>(m + 1), 0);
    for (int e : b.fm_field().critical(1)) ++by_type[static_cast<std::size_t>(type_by_signature(g, m, b.fm().cell(1, e)))];
    if (by_type[0] != 0) out.fail("m=" + std::to_string(m) + " critical edge of no type");
    for (int t = 1; t <= m; ++t) {
      if (by_type[static_cast<std::size_t>(t)] != per) out.fail("m=" + std::to_string(m) + " type " + std::to_string(t) + " count");
    }
    for (int d = 2; d <= b.fm().dimension(); ++d) {
      if (!b.fm_field().critical(d).empty()) out.fail("m=" + std::to_string(m) + " critical cell in F of dim " + std::to_string(d));
      if (!b.quotient_field().critical(d).empty()) out.fail("m=" + std::to_string(m) + " critical cell in quotient of dim " + std::to_string(d));
    }
    const long down = factorial(m - 1);
    if (static_cast<long>(b.quotient_field().critical(0).size()) != down) out.fail("m=" + std::to_string(m) + " quotient critical vertices");
    std::vector<long> down_by_type(static_cast<std::size_t>(m + 1), 0);
    for (int o : b.quotient_field().critical(1)) {
      ++down_by_type[static_cast<std::size_t>(type_by_signature(g, m, b.fm().cell(1, b.quotient().representative(1, o))))];
    }
    for (int t = 1; t <= m; ++t) {
      if (down_by_type[static_cast<std::size_t>(t)] != down) out.fail("m=" + std::to_string(m) + " quotient type " + std::to_string(t));
    }
  }
  return out;
}

Outcome criterion_selection() {
  Outcome out;
  for (int m = 2; m <= 4; ++m) {
    const auto& b = braids(m);
    const Graph& g = b.graph();
    std::vector<long> up(static_cast<std::size_t>(m + 1), 0);
    for (int e : b.selected(Space::fm)) ++up[static_cast<std::size_t>(type_by_signature(g, m, b.fm().cell(1, e)))];
    std::vector<long> down(static_cast<std::size_t>(m + 1), 0);
    for (int o : b.selected(Space::quotient)) {
      ++down[static_cast<std::size_t>(type_by_signature(g, m, b.fm().cell(1, b.quotient().representative(1, o))))];
    }
    long up_total = 0;
    long down_total = 0;
    for (int t = 1; t <= m; ++t) {
      const long expected = t <= m - 1 ? factorial(m - t) * (m - t) : 0;
      if (up[static_cast<std::size_t>(t)] != expected) out.fail("m=" + std::to_string(m) + " F type " + std::to_string(t));
      const long expected_down = t >= 2 && t <= m - 1 ? factorial(m - t) * (m - t) : 0;
      if (down[static_cast<std::size_t>(t)] != expected_down) out.fail("m=" + std::to_string(m) + " quotient type " + std::to_string(t));
      up_total += up[static_cast<std::size_t>(t)];
      down_total += down[static_cast<std::size_t>(t)];
    }
    if (up_total != factorial(m) - 1) out.fail("m=" + std::to_string(m) + " F total");
    if (down_total != factorial(m - 1) - 1) out.fail("m=" + std::to_string(m) + " quotient total");
  }
  return out;
}

Outcome criterion_target_permutations() {
  Outcome out;
  for (int m = 2; m <= 4; ++m) {
    const auto& b = braids(m);
    const Graph& g = b.graph();
    const CubeComplex& c = b.fm();
    int checked = 0;
    for (int e : b.fm_field().critical(1)) {
      const ConfCell& edge = c.cell(1, e);
      const int type = type_by_signature(g, m, edge);
      const ConfCell source = c.cell(0, c.facets(1, e).front().low);
      const ConfCell target = c.cell(0, c.facets(1, e).front().high);
      const Permutation expected = sorting_permutation(source) * rotation_cycle(m, type).inverse();
      if (sorting_permutation(target) != expected) out.fail("m=" + std::to_string(m) + " edge " + c.describe(1, e));
      ++checked;
    }
    if (checked != m * factorial(m)) out.fail("m=" + std::to_string(m) + " checked " + std::to_string(checked) + " edges");

    const QuotientComplex& q = b.quotient();
    int orbits = 0;
    for (int o : b.quotient_field().critical(1)) {
      const int e = q.representative(1, o);
      const ConfCell& edge = c.cell(1, e);
      const int type = type_by_signature(g, m, edge);
      const ConfCell source = c.cell(0, c.facets(1, e).front().low);
      const ConfCell target = c.cell(0, c.facets(1, e).front().high);
      const Permutation expected = sorting_permutation(source) * rotation_cycle(m, type).inverse();
      if (canonical_coset_representative(sorting_permutation(target)) != canonical_coset_representative(expected)) {
        out.fail("m=" + std::to_string(m) + " orbit of " + c.describe(1, e));
      }
      ++orbits;
    }
    if (orbits != m * factorial(m - 1)) out.fail("m=" + std::to_string(m) + " checked " + std::to_string(orbits) + " orbits");
  }
  return out;
}

template <class C>
bool spanning_tree(const C& complex, const std::vector<int>& edges) {
  Sets sets(complex.count(0));
  for (int e : edges) {
    const Facet& f = complex.facets(1, e).front();
    if (!sets.unite(f.low, f.high)) return false;
  }
  return static_cast<int>(edges.size()) == complex.count(0) - 1;
}

Outcome criterion_maximal_trees() {
  Outcome out;
  for (int m = 2; m <= 4; ++m) {
    const auto& b = braids(m);
    std::vector<int> up = b.fm_forest().edges;
    up.insert(up.end(), b.selected(Space::fm).begin(), b.selected(Space::fm).end());
    if (!spanning_tree(b.fm(), up)) out.fail("m=" + std::to_string(m) + " F");
    std::vector<int> down = b.quotient_forest().edges;
    down.insert(down.end(), b.selected(Space::quotient).begin(), b.selected(Space::quotient).end());
    if (!spanning_tree(b.quotient(), down)) out.fail("m=" + std::to_string(m) + " quotient");
  }
  return out;
}

Outcome criterion_rank_chi() {
  Outcome out;
  for (int m = 2; m <= 4; ++m) {
    const auto& b = braids(m);
    if (b.rank(Space::fm) != 1 - alternating_count(b.fm())) out.fail("m=" + std::to_string(m) + " F");
    if (b.rank(Space::quotient) != 1 - alternating_count(b.quotient())) out.fail("m=" + std::to_string(m) + " quotient");
    if (static_cast<long>(b.basis(Space::fm).size()) != 1 - chi_oracle(b.fm())) out.fail("m=" + std::to_string(m) + " F oracle");
  }
  return out;
}

Outcome criterion_homomorphisms() {
  Outcome out;
  for (int m = 2; m <= 3; ++m) {
    const auto& b = braids(m);
    for (int g = 0; g < b.rank(Space::fm); ++g) {
      if (b.iota_closed_form(g) != b.iota_oracle(g)) out.fail("iota at " + b.name(Space::fm, g));
      if (b.p1_closed_form(g) != b.p1_oracle(g)) out.fail("p1 at " + b.name(Space::fm, g));
    }
  }
  for (int m = 2; m <= 4; ++m) {
    const auto& b = braids(m);
    for (int g = 0; g < b.rank(Space::quotient); ++g) {
      if (b.theta_closed_form(g) != b.theta_oracle(FreeWord::generator(g))) {
        out.fail("theta at m=" + std::to_string(m) + " " + b.name(Space::quotient, g));
      }
    }
  }
  return out;
}

Outcome criterion_relations() {
  Outcome out;
  int checked = 0;
  for (int m = 3; m <= 4; ++m) {
    const auto& b = braids(m);
    for (const Check& c : {b.theta_cycle_relation(), b.theta_branch_relations(), b.conjugation_identities()}) {
      if (!c.ok) out.fail("m=" + std::to_string(m) + ": " + c.failure);
      if (c.checked == 0) out.fail("m=" + std::to_string(m) + ": empty relation family");
      checked += c.checked;
    }
  }
  if (out.pass) out.detail = std::to_string(checked) + " instances";
  return out;
}

Outcome criterion_circle() {
  Outcome out;
  long tuples = 0;
  for (int n = 2; n <= 3; ++n) {
    std::vector<long> cls(static_cast<std::size_t>(n + 1), -5);
    while (true) {
      const bool fails = !decide_circle(cls, n, 1).holds;
      if (fails != circle_oracle::witness_exists(cls, n, 1)) {
        std::string t;
        for (long v : cls) t += std::to_string(v) + ",";
        out.fail("n=" + std::to_string(n) + " tuple " + t);
      }
      ++tuples;
      std::size_t i = 0;
      while (i < cls.size() && ++cls[i] > 5) cls[i++] = -5;
      if (i == cls.size()) break;
    }
  }
  if (tuples != 11L * 11 * 11 + 11L * 11 * 11 * 11) out.fail("enumerated " + std::to_string(tuples) + " tuples");
  if (out.pass) out.detail = std::to_string(tuples) + " tuples";
  return out;
}

Outcome criterion_wedge() {
  Outcome out;
  for (int m = 2; m <= 3; ++m) {
    const auto& b = braids(m);
    const ActionData a{m, 1, {1}};
    const TargetMaps maps = wedge_maps(b);
    const FreeWord perturbation = FreeWord::generator(b.bracket(Permutation::identity(m), 2));
    for (long k = -5; k <= 5; ++k) {
      const BUVerdict v = decide_wedge(k, b, a);
      const std::string where = "m=" + std::to_string(m) + " k=" + std::to_string(k);
      if (v.holds || !v.witness) {
        out.fail(where + ": no witness");
        continue;
      }
      if (!verify_diagram(*v.witness, a, maps).ok) out.fail(where + ": witness rejected");
      Witness bad = *v.witness;
      bad.psi[0] *= perturbation;
      if (verify_diagram(bad, a, maps).ok) out.fail(where + ": perturbed witness accepted");
    }
  }
  return out;
}

int components_by_union_find(const CubeComplex& c) {
  Sets sets(c.count(0));
  int parts = c.count(0);
  for (int e = 0; e < c.count(1); ++e) {
    const Facet& f = c.facets(1, e).front();
    if (sets.unite(f.low, f.high)) --parts;
  }
  return parts;
}

Outcome criterion_trees() {
  Outcome out;
  if (!decide_interval().holds) out.fail("interval does not hold");
  const TreeTarget star(make_star(3, 2), 2);
  const ActionData a{2, 1, {1}};
  const BUVerdict v = decide_tree(star, a);
  if (v.holds || !v.witness) {
    out.fail("star: no witness");
  } else if (!verify_diagram(*v.witness, a, star.maps()).ok) {
    out.fail("star: witness rejected");
  }
  for (int m = 2; m <= 3; ++m) {
    const int parts = components_by_union_find(build_dconf(make_path(m + 2), m));
    if (parts != factorial(m)) out.fail("path m=" + std::to_string(m) + " has " + std::to_string(parts) + " components");
  }
  return out;
}

Outcome criterion_adapt_basis() {
  Outcome out;
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 12)(rng);
    const int r = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<long> values(static_cast<std::size_t>(r));
    long g = 0;
    do {
      for (auto& v : values) v = std::uniform_int_distribution<long>(0, n - 1)(rng);
      g = n;
      for (long v : values) g = std::gcd(g, v);
    } while (g != 1);
    auto theta = [&](const FreeWord& w) {
      long s = 0;
      for (const Letter& l : w.letters()) s += l.exponent * values[static_cast<std::size_t>(l.generator)];
      return ((s % n) + n) % n;
    };
    const auto y = adapt_basis(ActionData{n, r, values});
    const std::string where = "trial " + std::to_string(trial);
    if (static_cast<int>(y.size()) != r) {
      out.fail(where + ": wrong basis size");
      continue;
    }
    if (std::gcd(theta(y[0]), static_cast<long>(n)) != 1) out.fail(where + ": first element is not a generator");
    for (int i = 1; i < r; ++i) {
      if (theta(y[static_cast<std::size_t>(i)]) != 0) out.fail(where + ": element " + std::to_string(i + 1) + " not in kernel");
    }
    if (static_cast<int>(kernel_basis(y, n).size()) != n * (r - 1) + 1) out.fail(where + ": kernel basis size");
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
    double time_limit;
  };
  const std::vector<Criterion> criteria = {
      {1, "critical census, m=2..4", criterion_census, 60.0},
      {2, "selection counts, m=2..4", criterion_selection, 0},
      {3, "target permutations on critical edges, m=2..4", criterion_target_permutations, 0},
      {4, "maximal trees span, m=2..4", criterion_maximal_trees, 0},
      {5, "rank = 1 - chi in both spaces, m=2..4", criterion_rank_chi, 0},
      {6, "closed forms equal oracles for iota, p1, theta", criterion_homomorphisms, 0},
      {7, "theta relations and conjugation identities, m=3..4", criterion_relations, 0},
      {8, "circle decision agrees with brute-force solver", criterion_circle, 60.0},
      {9, "wedge witnesses verify, perturbations fail", criterion_wedge, 0},
      {10, "interval holds, star fails, path components", criterion_trees, 0},
      {11, "adapt_basis postcondition on 100 random surjections", criterion_adapt_basis, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(t0);
    if (c.time_limit > 0 && elapsed >= c.time_limit) o.fail("took " + std::to_string(elapsed) + " s");
    if (!o.pass) ++failures;
    std::printf("%s criterion %2d: %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, elapsed,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
