#pragma once

#include <exception>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "braidbu/braid_pi1.hpp"
#include "braidbu/bu_decision.hpp"
#include "braidbu/morse.hpp"
#include "braidbu/report.hpp"

namespace braidbu {

enum class SuiteLevel { quick, full };

inline long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// #critical_0 - #critical_1 = chi and rank = 1 - chi, in both spaces.
inline Verdict morse_rank_check(const LollipopBraids& braids) {
  Verdict v{"m" + std::to_string(braids.m()) + ".rank_chi", true, {}};
  auto compare = [&](const char* what, long got, long want) {
    if (got != want && v.pass) {
      v.pass = false;
      v.detail = std::string(what) + ": " + std::to_string(got) + " != " + std::to_string(want);
    }
  };
  const long chi_up = chi_oracle(braids.fm());
  const long chi_down = chi_oracle(braids.quotient());
  const auto& uf = braids.fm_field();
  const auto& df = braids.quotient_field();
  compare("fm critical alternating sum", uf.count(0, CellKind::critical) - uf.count(1, CellKind::critical), chi_up);
  compare("quotient critical alternating sum", df.count(0, CellKind::critical) - df.count(1, CellKind::critical),
          chi_down);
  compare("fm rank", braids.rank(Space::fm), 1 - chi_up);
  compare("quotient rank", braids.rank(Space::quotient), 1 - chi_down);
  compare("free action", chi_up, chi_down * braids.m());
  return v;
}

namespace detail {

inline Verdict guarded(const std::string& id, const std::function<Verdict()>& body) {
  try {
    Verdict v = body();
    v.id = id;
    return v;
  } catch (const std::exception& e) {
    return {id, false, std::string("exception: ") + e.what()};
  }
}

inline Verdict from_check(const Check& c) { return {"", c.ok, c.failure}; }

inline Verdict census_verdict(const LollipopBraids& b) {
  const int m = b.m();
  const long all = factorial(m);
  const long orbits = factorial(m - 1);
  const auto up = critical_census(b.fm(), b.fm_field());
  const auto down = critical_census(b.fm(), b.quotient(), b.quotient_field());
  auto expect = [&](const CriticalCensus& c, long per, const char* space) -> std::string {
    if (c.by_dimension.at(0) != per) return std::string(space) + " critical vertices " + std::to_string(c.by_dimension[0]);
    for (int t = 0; t < m; ++t) {
      if (c.edges_by_type[static_cast<std::size_t>(t)] != per) {
        return std::string(space) + " type " + std::to_string(t + 1) + " edges " +
               std::to_string(c.edges_by_type[static_cast<std::size_t>(t)]);
      }
    }
    for (std::size_t d = 2; d < c.by_dimension.size(); ++d) {
      if (c.by_dimension[d] != 0) return std::string(space) + " critical cells in dimension " + std::to_string(d);
    }
    return {};
  };
  std::string why = expect(up, all, "fm");
  if (why.empty()) why = expect(down, orbits, "quotient");
  return {"", why.empty(), why};
}

inline Verdict target_permutation_verdict(const LollipopBraids& b) {
  const auto up = check_target_permutations(b.fm(), b.fm_field());
  const auto down = check_target_permutations(b.fm(), b.quotient(), b.quotient_field());
  const long expected = b.m() * factorial(b.m());
  if (!up.ok) return {"", false, up.failure};
  if (!down.ok) return {"", false, down.failure};
  if (up.checked != expected) return {"", false, "checked " + std::to_string(up.checked) + " critical edges"};
  if (down.checked != expected / b.m()) return {"", false, "checked " + std::to_string(down.checked) + " orbits"};
  return {};
}

inline Verdict selection_verdict(const LollipopBraids& b) {
  const int m = b.m();
  const auto up = b.selected_by_type(Space::fm);
  const auto down = b.selected_by_type(Space::quotient);
  long up_total = 0;
  long down_total = 0;
  for (int t = 1; t <= m; ++t) {
    const long want = t < m ? factorial(m - t) * (m - t) : 0;
    if (up[static_cast<std::size_t>(t - 1)] != want) return {"", false, "fm type " + std::to_string(t)};
    if (down[static_cast<std::size_t>(t - 1)] != (t >= 2 ? want : 0)) return {"", false, "quotient type " + std::to_string(t)};
    up_total += up[static_cast<std::size_t>(t - 1)];
    down_total += down[static_cast<std::size_t>(t - 1)];
  }
  if (up_total != factorial(m) - 1) return {"", false, "fm total " + std::to_string(up_total)};
  if (down_total != factorial(m - 1) - 1) return {"", false, "quotient total " + std::to_string(down_total)};
  return {};
}

inline Verdict forest_verdict(const LollipopBraids& b) {
  if (b.fm_forest().size() != factorial(b.m())) return {"", false, "fm forest has " + std::to_string(b.fm_forest().size()) + " trees"};
  if (b.quotient_forest().size() != factorial(b.m() - 1)) {
    return {"", false, "quotient forest has " + std::to_string(b.quotient_forest().size()) + " trees"};
  }
  return {};
}

inline Verdict tree_verdict(const LollipopBraids& b) {
  const auto up = b.maximal_tree_check(Space::fm);
  if (!up.ok) return {"", false, "fm: " + up.failure};
  const auto down = b.maximal_tree_check(Space::quotient);
  if (!down.ok) return {"", false, "quotient: " + down.failure};
  return {};
}

inline Verdict iota_verdict(const LollipopBraids& b) {
  for (int g = 0; g < b.rank(Space::fm); ++g) {
    if (b.iota_closed_form(g) != b.iota_oracle(g)) return {"", false, "iota differs on " + b.name(Space::fm, g)};
  }
  return {};
}

inline Verdict p1_verdict(const LollipopBraids& b) {
  for (int g = 0; g < b.rank(Space::fm); ++g) {
    if (b.p1_closed_form(g) != b.p1_oracle(g)) return {"", false, "p1 differs on " + b.name(Space::fm, g)};
  }
  return {};
}

inline Verdict theta_verdict(const LollipopBraids& b) {
  for (int g = 0; g < b.rank(Space::quotient); ++g) {
    if (b.theta_closed_form(g) != b.theta_oracle(FreeWord::generator(g))) {
      return {"", false, "theta differs on " + b.name(Space::quotient, g)};
    }
  }
  for (int g = 0; g < b.rank(Space::fm); ++g) {
    if (b.theta(b.iota_closed_form(g)) != 0) return {"", false, "theta(iota) nonzero on " + b.name(Space::fm, g)};
  }
  return {};
}

inline Verdict rs_verdict(const LollipopBraids& b) {
  for (int g = 0; g < b.rank(Space::fm); ++g) {
    const auto back = b.rs_rewrite(b.iota_closed_form(g));
    if (!back || *back != FreeWord::generator(g)) return {"", false, "rs_rewrite does not invert iota on " + b.name(Space::fm, g)};
  }
  if (b.rs_rewrite(FreeWord::generator(b.z_generator()))) return {"", false, "[O1] reported inside the subgroup"};
  return {};
}

inline Verdict wedge_verdict(const LollipopBraids& b) {
  const ActionData action{b.m(), 1, {1}};
  for (long k = -5; k <= 5; ++k) {
    const BUVerdict v = decide_wedge(k, b, action);
    if (v.holds || !v.witness || !verify_diagram(*v.witness, action, wedge_maps(b)).ok) {
      return {"", false, "witness fails for k=" + std::to_string(k)};
    }
    Witness bent = *v.witness;
    bent.psi[0] *= b.bracket_word(Permutation::identity(b.m()), 2);
    if (verify_diagram(bent, action, wedge_maps(b)).ok) return {"", false, "perturbed witness accepted for k=" + std::to_string(k)};
  }
  return {};
}

}  // namespace detail

/// Property suite. `blocked` replaces the blocking rule of the gradient field
/// (used to check that the suite notices a broken rule).
inline Report run_suite(SuiteLevel level, const LollipopBraids::BlockingRule& blocked = FarleySabalkaBlocking{}) {
  Report report(std::string("suite --level ") + (level == SuiteLevel::full ? "full" : "quick"));
  const std::vector<int> sizes = level == SuiteLevel::full ? std::vector<int>{2, 3, 4} : std::vector<int>{2, 3};
  for (int m : sizes) {
    const std::string p = "m" + std::to_string(m) + ".";
    std::unique_ptr<LollipopBraids> braids;
    std::string failure;
    try {
      braids = std::make_unique<LollipopBraids>(m, blocked);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    auto run = [&](const std::string& name, auto body) {
      if (!braids) {
        report.check(p + name, false, failure);
        return;
      }
      report.check(detail::guarded(p + name, [&] { return body(*braids); }));
    };
    run("census", detail::census_verdict);
    run("target_permutation", detail::target_permutation_verdict);
    run("selection", detail::selection_verdict);
    run("forest", detail::forest_verdict);
    run("maximal_tree", detail::tree_verdict);
    run("rank_chi", [](const LollipopBraids& b) { return morse_rank_check(b); });
    run("iota_oracle", detail::iota_verdict);
    run("p1_oracle", detail::p1_verdict);
    run("theta_oracle", detail::theta_verdict);
    run("rs_rewrite", detail::rs_verdict);
    run("wedge_witness", detail::wedge_verdict);
    if (level == SuiteLevel::full && m >= 3) {
      run("theta_relations", [](const LollipopBraids& b) {
        Verdict v = detail::from_check(b.theta_cycle_relation());
        if (v.pass) v = detail::from_check(b.theta_branch_relations());
        return v;
      });
      run("conjugation_identities", [](const LollipopBraids& b) { return detail::from_check(b.conjugation_identities()); });
    }
  }
  report.check(detail::guarded("decide.interval", [] { return Verdict{"", decide_interval().holds, "interval must hold"}; }));
  report.check(detail::guarded("decide.tree_star", [] {
    const TreeTarget target(make_star(3, 2), 2);
    const ActionData action{2, 2, {1, 0}};
    const BUVerdict v = decide_tree(target, action);
    const bool ok = !v.holds && v.witness && verify_diagram(*v.witness, action, target.maps()).ok;
    return Verdict{"", ok, "star witness does not verify"};
  }));
  report.check(detail::guarded("decide.path_components", [] {
    for (int m : {2, 3}) {
      if (components(build_dconf(make_path(m + 1), m)) != factorial(m)) return Verdict{"", false, "m=" + std::to_string(m)};
    }
    return Verdict{};
  }));
  report.check(detail::guarded("decide.circle", [] {
    const bool ok = !decide_circle({3, 5, 5}, 2, 1).holds && decide_circle({2, 5, 5}, 2, 1).holds &&
                    decide_circle({4, 1, 2, 1}, 3, 1).holds && decide_circle({4, 1, 1, 1}, 3, 1).witness_verified;
    return Verdict{"", ok, "circle examples"};
  }));
  report.check(detail::guarded("adapt_basis", [] {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = std::uniform_int_distribution<int>(2, 12)(rng);
      const int r = std::uniform_int_distribution<int>(1, 4)(rng);
      ActionData a{n, r, std::vector<long>(static_cast<std::size_t>(r))};
      do {
        for (auto& t : a.theta_tau) t = std::uniform_int_distribution<int>(0, n - 1)(rng);
      } while ([&] {
        long g = n;
        for (long t : a.theta_tau) g = std::gcd(g, t);
        return g != 1;
      }());
      const auto y = adapt_basis(a);
      if (std::gcd(a.theta(y[0]), static_cast<long>(n)) != 1) return Verdict{"", false, "theta(y1) not a generator"};
      for (std::size_t i = 1; i < y.size(); ++i) {
        if (a.theta(y[i]) != 0) return Verdict{"", false, "theta(y_i) nonzero"};
      }
      if (static_cast<long>(kernel_basis(y, n).size()) != static_cast<long>(n) * (r - 1) + 1) {
        return Verdict{"", false, "kernel basis size"};
      }
    }
    return Verdict{};
  }));
  return report;
}

}  // namespace braidbu
