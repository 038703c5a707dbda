#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "setaut/errors.hpp"
#include "setaut/oracle.hpp"
#include "setaut/set_family.hpp"
#include "test_util.hpp"

using namespace setaut;
using testutil::Rng;

namespace {

ColoredSetFamily one_color(int ground, std::vector<std::vector<int>> sets) {
  std::vector<FamilyEntry> entries;
  for (auto& s : sets) entries.push_back(FamilyEntry{std::move(s), 0, 1});
  return ColoredSetFamily(ground, std::move(entries));
}

// a 3-set family whose only symmetry swaps the two disjoint pairs:
// S1={0,1}, S2={2,3}, S3={1,2}
ColoredSetFamily path_family() { return one_color(4, {{0, 1}, {2, 3}, {1, 2}}); }

}  // namespace

TEST_CASE("family normalization and validation") {
  auto fam = one_color(4, {{2, 3}, {0, 1}});
  CHECK(fam.entries()[0].set == std::vector<int>{0, 1});
  CHECK_THROWS_AS(one_color(4, {{}}), ValidationError);
  CHECK_THROWS_AS(one_color(2, {{0, 2}}), ValidationError);
  CHECK_THROWS_AS(one_color(4, {{1, 0}}), ValidationError);
  CHECK_THROWS_AS(
      ColoredSetFamily(4, {FamilyEntry{{0, 1}, 0, 1}, FamilyEntry{{0, 1}, 0, 2}}),
      ValidationError);
}

TEST_CASE("simplify refines colors by multiplicity vectors") {
  // already-simple family keeps one color class per vector
  auto simple0 = simplify(path_family());
  CHECK(simple0.size() == 3);
  CHECK(simple0.refined_color[0] == simple0.refined_color[1]);
  CHECK(simple0.refined_color[1] == simple0.refined_color[2]);

  // S x2 and T x1 split by vector (2) vs (1)
  auto fam = ColoredSetFamily(4, {FamilyEntry{{0, 1}, 0, 2}, FamilyEntry{{2, 3}, 0, 1}});
  auto simple = simplify(fam);
  REQUIRE(simple.size() == 2);
  CHECK(simple.refined_color[0] != simple.refined_color[1]);

  // same set in two colors: a single simple entry keyed by vector (1,1)
  auto two = ColoredSetFamily(4, {FamilyEntry{{0, 1}, 0, 1}, FamilyEntry{{0, 1}, 1, 1},
                                  FamilyEntry{{2, 3}, 0, 1}});
  auto s2 = simplify(two);
  REQUIRE(s2.size() == 2);
  CHECK(s2.mult_by_color[0] == std::vector<int>{1, 1});  // {0,1}
  CHECK(s2.mult_by_color[1] == std::vector<int>{1, 0});  // {2,3}
  CHECK(s2.refined_color[0] != s2.refined_color[1]);
}

TEST_CASE("expand_solution lifts through multiplicities") {
  // all multiplicities one: isomorphic group
  {
    auto fam = path_family();
    auto simple = simplify(fam);
    auto grp = symmetric_product({{0, 1, 2}}, 3);
    CHECK(expand_solution(grp, fam, simple).order() == grp.order());
  }
  // one set with multiplicity 3, trivial simple group: order 6
  {
    auto fam = ColoredSetFamily(3, {FamilyEntry{{0, 1}, 0, 3}});
    auto simple = simplify(fam);
    auto lifted = expand_solution(PermGroup(1), fam, simple);
    CHECK(lifted.order() == BigUint(6));
    CHECK(lifted.domain_size() == 3);
  }
  // order-2 simple group swapping S,T with multiplicity 2 each: 2*2!*2! = 8
  {
    auto fam = ColoredSetFamily(4, {FamilyEntry{{0, 1}, 0, 2}, FamilyEntry{{2, 3}, 0, 2}});
    auto simple = simplify(fam);
    auto swap2 = symmetric_product({{0, 1}}, 2);
    auto lifted = expand_solution(swap2, fam, simple);
    CHECK(lifted.order() == BigUint(8));
    CHECK(lifted.order() == BigUint(testutil::closure(lifted.generators(), 4).size()));
  }
}

TEST_CASE("venn_diagram cell counts") {
  // single set of size 5: one cell
  auto single = simplify(one_color(6, {{0, 1, 2, 3, 4}}));
  auto cells = venn_diagram(single, {0});
  REQUIRE(cells.size() == 1);
  CHECK(cells.at({0}) == 5);

  // two overlapping pairs
  auto pair = simplify(one_color(3, {{0, 1}, {1, 2}}));
  auto c2 = venn_diagram(pair, {0, 1});
  CHECK(c2.at({0}) == 1);
  CHECK(c2.at({1}) == 1);
  CHECK((c2.at({0, 1})) == 1);
  CHECK(c2.size() == 3);

  // the four-set Venn family: ten nonzero cells with the fixture counts
  auto fig = simplify(fixtures::venn4_family());
  auto fc = venn_diagram(fig, {0, 1, 2, 3});
  using fixtures::kVennA;
  using fixtures::kVennB;
  using fixtures::kVennC;
  using fixtures::kVennD;
  auto key = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(fc.at(key({kVennD})) == 3);
  CHECK(fc.at(key({kVennC})) == 1);
  CHECK(fc.at(key({kVennB})) == 2);
  CHECK(fc.at(key({kVennA})) == 3);
  CHECK(fc.at(key({kVennD, kVennC})) == 2);
  CHECK(fc.at(key({kVennC, kVennA})) == 2);
  CHECK(fc.at(key({kVennD, kVennC, kVennB})) == 2);
  CHECK(fc.at(key({kVennD, kVennC, kVennA})) == 1);
  CHECK(fc.at(key({kVennD, kVennB, kVennA})) == 2);
  CHECK(fc.at(key({kVennC, kVennB, kVennA})) == 2);
  CHECK(fc.size() == 10);
}

TEST_CASE("venn_good accepts (A,B,C,D)->(D,B,C,A) and rejects (A,B,C,D)->(A,C,B,D)") {
  auto fig = simplify(fixtures::venn4_family());
  std::vector<int> all{0, 1, 2, 3};
  CHECK(venn_good(fig, all, Perm::identity(4)));

  std::vector<int> swap_ad(4);
  for (int i = 0; i < 4; ++i) swap_ad[static_cast<std::size_t>(i)] = i;
  std::swap(swap_ad[fixtures::kVennA], swap_ad[fixtures::kVennD]);
  CHECK(venn_good(fig, all, Perm(swap_ad)));

  std::vector<int> swap_bc(4);
  for (int i = 0; i < 4; ++i) swap_bc[static_cast<std::size_t>(i)] = i;
  std::swap(swap_bc[fixtures::kVennB], swap_bc[fixtures::kVennC]);
  CHECK_FALSE(venn_good(fig, all, Perm(swap_bc)));

  // rho must stabilize the subfamily
  CHECK_THROWS_AS(venn_good(fig, {0, 1}, Perm(swap_ad)), NonStabilizedSubfamily);
}

TEST_CASE("venn_good holds iff a realizing ground permutation exists") {
  Rng rng(2024);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    auto fam = oracle::gen_set_family(1000 + static_cast<std::uint64_t>(it), 6, 5, 1, 1);
    auto simple = simplify(fam);
    const int m = simple.size();
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;

    // candidate rho: random permutation of the family (half of them
    // cardinality-preserving to get interesting positives)
    Perm rho = testutil::random_perm(rng, m);
    if (it % 2 == 0) {
      // shuffle within cardinality classes only
      std::vector<int> im(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) im[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          if (simple.sets[static_cast<std::size_t>(i)].size() ==
                  simple.sets[static_cast<std::size_t>(j)].size() &&
              rng.below(2) == 0)
            std::swap(im[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(j)]);
        }
      }
      rho = Perm(im);
    }

    // oracle: exhaustive search for sigma with sigma(B) = rho(B) for all B
    bool realizable = false;
    std::vector<int> sigma(static_cast<std::size_t>(simple.ground_size));
    for (int i = 0; i < simple.ground_size; ++i) sigma[static_cast<std::size_t>(i)] = i;
    do {
      bool ok = true;
      for (int b = 0; b < m && ok; ++b) {
        std::vector<int> image;
        for (int x : simple.sets[static_cast<std::size_t>(b)])
          image.push_back(sigma[static_cast<std::size_t>(x)]);
        std::sort(image.begin(), image.end());
        ok = image == simple.sets[static_cast<std::size_t>(rho(b))];
      }
      if (ok) realizable = true;
    } while (!realizable && std::next_permutation(sigma.begin(), sigma.end()));

    CHECK(venn_good(simple, all, rho) == realizable);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("venn_good monotonicity on stabilized subfamilies") {
  Rng rng(77);
  for (int it = 0; it < 40; ++it) {
    auto fam = oracle::gen_set_family(4000 + static_cast<std::uint64_t>(it), 6, 6, 1, 1);
    auto simple = simplify(fam);
    const int m = simple.size();
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    Perm rho = testutil::random_perm(rng, m);
    if (!venn_good(simple, all, rho)) continue;
    // any rho-stable subfamily must be venn-good too
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<int> sub;
      for (int i = 0; i < m; ++i)
        if (mask & (1 << i)) sub.push_back(i);
      bool stable = true;
      for (int i : sub)
        if (!((mask >> rho(i)) & 1)) stable = false;
      if (stable) CHECK(venn_good(simple, sub, rho));
    }
  }
}

TEST_CASE("tower_step on the 3-set path family") {
  auto fam = path_family();
  auto simple = simplify(fam);
  auto w = cardinality_partition(simple);
  REQUIRE(w.parts.size() == 1);  // one color, one cardinality
  REQUIRE(w.parts[0].size() == 3);
  int a = max_antichain(simple.sets);
  CHECK(a == 3);

  auto gamma0 = symmetric_product(w.parts, 3);
  CHECK(gamma0.order() == BigUint(6));

  auto step = tower_step(simple, w, gamma0, a);
  REQUIRE_FALSE(step.all_good);
  CHECK(step.part_indices == std::vector<int>{0});
  CHECK(step.gamma_next.order() == BigUint(2));

  // the order-2 group is already venn-good everywhere
  auto step2 = tower_step(simple, w, step.gamma_next, a);
  CHECK(step2.all_good);
}

TEST_CASE("tower_step all-good on singleton parts") {
  auto fam = one_color(5, {{0}, {0, 1}, {0, 1, 2}});  // chain, distinct cardinalities
  auto simple = simplify(fam);
  auto w = cardinality_partition(simple);
  CHECK(w.parts.size() == 3);
  auto gamma0 = symmetric_product(w.parts, 3);
  CHECK(gamma0.order() == BigUint(1));
  CHECK(tower_step(simple, w, gamma0, 1).all_good);
}

TEST_CASE("autom_set matches the spec's worked examples") {
  // degenerate: no member sets at all
  auto empty = autom_set(ColoredSetFamily(3, {}));
  CHECK(empty.group.domain_size() == 0);
  CHECK(empty.group.order() == BigUint(1));

  CHECK(autom_set(one_color(4, {{0, 1, 2}})).group.order() == BigUint(1));

  auto disjoint = autom_set(one_color(6, {{0, 1}, {2, 3}, {4, 5}}));
  CHECK(disjoint.group.order() == BigUint(6));

  CHECK(autom_set(path_family()).group.order() == BigUint(2));

  // colors separate: {0,1} and {2,3} in different colors cannot swap
  auto colored = ColoredSetFamily(4, {FamilyEntry{{0, 1}, 0, 1}, FamilyEntry{{2, 3}, 1, 1}});
  CHECK(autom_set(colored).group.order() == BigUint(1));

  // the four-set Venn family: only the A<->D swap survives
  auto venn = autom_set(fixtures::venn4_family());
  CHECK(venn.group.order() == BigUint(2));
  std::vector<int> im{0, 3, 2, 1};  // swap entries D and A in canonical order
  CHECK(venn.group.contains(Perm(im)));
}

TEST_CASE("autom_set equals the brute-force oracle on random families") {
  int tested = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto fam = oracle::gen_set_family(seed, 6, 6, 3, 3);
    auto brute = oracle::brute_autom_set(fam);
    auto result = autom_set(fam);
    CHECK(oracle::action_groups_equal(result.group, brute));
    ++tested;
  }
  CHECK(tested == 60);
}

TEST_CASE("autom_set vs oracle on dense families over larger grounds") {
  // bias toward the oracle's ceiling: ground 7..8, up to 10 entries
  oracle::OracleBudget budget;
  int tested = 0;
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    auto fam = oracle::gen_set_family(seed, 8, 10, 3, 3);
    if (fam.ground_size() < 7) continue;
    auto brute = oracle::brute_autom_set(fam, budget);
    auto result = autom_set(fam);
    CHECK(oracle::action_groups_equal(result.group, brute));
    ++tested;
  }
  CHECK(tested >= 20);
}

TEST_CASE("tower bounds hold on random families") {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    auto fam = oracle::gen_set_family(seed, 7, 8, 2, 2);
    auto result = autom_set(fam);
    const auto& trace = result.trace;
    // h <= log2 |Gamma_0|
    CHECK(BigUint(trace.steps.size()) <= BigUint(trace.initial_order.bit_length()));
    // every index ratio <= (a!)^a, via order_{i} * (a!)^a >= order_{i-1}
    BigUint fact(1);
    for (int i = 2; i <= result.antichain; ++i) fact *= static_cast<std::uint32_t>(i);
    BigUint bound(1);
    for (int i = 0; i < result.antichain; ++i) bound *= fact;
    BigUint prev = trace.initial_order;
    for (const auto& step : trace.steps) {
      CHECK(step.order * bound >= prev);
      CHECK(BigUint(step.index) <= bound);
      CHECK(step.order < prev);  // strict refinement
      prev = step.order;
    }
  }
}

TEST_CASE("venn-good members of gamma0 form a subgroup") {
  for (std::uint64_t seed = 300; seed < 312; ++seed) {
    auto fam = oracle::gen_set_family(seed, 5, 4, 1, 1);
    auto simple = simplify(fam);
    const int m = simple.size();
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    auto w = cardinality_partition(simple);
    auto gamma0 = symmetric_product(w.parts, m);
    auto members = testutil::closure(gamma0.generators(), m);
    std::set<Perm> good;
    for (const Perm& p : members)
      if (venn_good(simple, all, p)) good.insert(p);
    for (const Perm& p : good) {
      CHECK(good.count(p.inverse()) == 1);
      for (const Perm& q : good) CHECK(good.count(p * q) == 1);
    }
  }
}

TEST_CASE("max_antichain") {
  CHECK(max_antichain({{0}, {0, 1}, {0, 1, 2}}) == 1);
  CHECK(max_antichain({{0}, {1}, {2}, {3}}) == 4);
  CHECK(max_antichain({}) == 0);

  // the four-set Venn family is an antichain of size 4
  auto venn4 = fixtures::venn4_family();
  std::vector<std::vector<int>> venn_sets;
  for (const auto& e : venn4.entries()) venn_sets.push_back(e.set);
  CHECK(max_antichain(venn_sets) == 4);
  CHECK(oracle::max_antichain_of_family(venn4) == 4);

  // random families vs exhaustive subset check
  for (std::uint64_t seed = 50; seed < 80; ++seed) {
    auto fam = oracle::gen_set_family(seed, 6, 7, 1, 1);
    std::vector<std::vector<int>> sets;
    for (const auto& e : fam.entries()) sets.push_back(e.set);
    std::set<std::vector<int>> uniq(sets.begin(), sets.end());
    std::vector<std::vector<int>> d(uniq.begin(), uniq.end());
    int best = 0;
    for (int mask = 1; mask < (1 << d.size()); ++mask) {
      std::vector<int> chosen;
      for (std::size_t i = 0; i < d.size(); ++i)
        if (mask & (1 << i)) chosen.push_back(static_cast<int>(i));
      bool antichain = true;
      for (std::size_t i = 0; i < chosen.size() && antichain; ++i)
        for (std::size_t j = i + 1; j < chosen.size() && antichain; ++j) {
          const auto& x = d[static_cast<std::size_t>(chosen[i])];
          const auto& y = d[static_cast<std::size_t>(chosen[j])];
          if (std::includes(x.begin(), x.end(), y.begin(), y.end()) ||
              std::includes(y.begin(), y.end(), x.begin(), x.end()))
            antichain = false;
        }
      if (antichain) best = std::max(best, static_cast<int>(chosen.size()));
    }
    CHECK(max_antichain(sets) == best);
  }
}

TEST_CASE("oracle groups are closed and relabel-invariant") {
  Rng rng(11);
  for (std::uint64_t seed = 400; seed < 415; ++seed) {
    auto fam = oracle::gen_set_family(seed, 5, 5, 2, 2);
    auto brute = oracle::brute_autom_set(fam);
    // closure of entry maps under composition and inverse
    for (const auto& em : brute.entry_maps) {
      Perm p(em);
      CHECK(brute.entry_maps.count(p.inverse().images()) == 1);
      for (const auto& em2 : brute.entry_maps)
        CHECK(brute.entry_maps.count((p * Perm(em2)).images()) == 1);
    }
    // relabeling the ground set keeps the order
    Perm pi = testutil::random_perm(rng, fam.ground_size());
    std::vector<FamilyEntry> relabeled;
    for (const auto& e : fam.entries()) {
      std::vector<int> s;
      for (int x : e.set) s.push_back(pi(x));
      std::sort(s.begin(), s.end());
      relabeled.push_back(FamilyEntry{s, e.color, e.multiplicity});
    }
    auto fam2 = ColoredSetFamily(fam.ground_size(), relabeled);
    CHECK(oracle::brute_autom_set(fam2).order == brute.order);
  }
}
