#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "setaut/bigint.hpp"
#include "setaut/errors.hpp"
#include "setaut/perm.hpp"
#include "setaut/perm_group.hpp"
#include "test_util.hpp"

using namespace setaut;
using testutil::Rng;
using testutil::closure;

namespace {

Perm transposition(int n, int a, int b) {
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
  std::swap(im[static_cast<std::size_t>(a)], im[static_cast<std::size_t>(b)]);
  return Perm(im);
}

Perm cycle(int n, const std::vector<int>& pts) {
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    im[static_cast<std::size_t>(pts[i])] = pts[i + 1];
  im[static_cast<std::size_t>(pts.back())] = pts[0];
  return Perm(im);
}

bool is_even(const Perm& p) {
  int transpositions = 0;
  std::vector<char> done(static_cast<std::size_t>(p.domain_size()), 0);
  for (int i = 0; i < p.domain_size(); ++i) {
    if (done[static_cast<std::size_t>(i)]) continue;
    int len = 0, j = i;
    while (!done[static_cast<std::size_t>(j)]) {
      done[static_cast<std::size_t>(j)] = 1;
      j = p(j);
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

}  // namespace

TEST_CASE("biguint arithmetic") {
  CHECK(BigUint::factorial(20).to_string() == "2432902008176640000");
  CHECK(BigUint::factorial(0).to_string() == "1");
  CHECK(BigUint::factorial(25).to_string() == "15511210043330985984000000");
  CHECK(BigUint::from_string("15511210043330985984000000") == BigUint::factorial(25));
  CHECK(BigUint(1000000007ull) * BigUint(998244353ull) ==
        BigUint(1000000007ull * 998244353ull));
  CHECK(BigUint::pow2(100).bit_length() == 101);
  CHECK(BigUint(24) >= BigUint::pow2(4));
  CHECK_FALSE(BigUint(15) >= BigUint::pow2(4));
  CHECK(BigUint(7).fits_u64());
  CHECK_FALSE(BigUint::pow2(70).fits_u64());
}

TEST_CASE("perm basics and cycle notation") {
  CHECK(Perm::identity(4).cycle_string() == "()");
  CHECK(transposition(4, 0, 1).cycle_string() == "(0 1)");
  Perm p = cycle(5, {0, 2, 4}) * transposition(5, 1, 3);
  CHECK(p.cycle_string() == "(0 2 4)(1 3)");
  CHECK((p * p.inverse()).is_identity());
  CHECK_THROWS_AS(Perm({0, 0, 1}), DomainMismatch);
  // associativity spot check
  Rng rng(7);
  for (int it = 0; it < 50; ++it) {
    Perm a = testutil::random_perm(rng, 6);
    Perm b = testutil::random_perm(rng, 6);
    Perm c = testutil::random_perm(rng, 6);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("schreier_sims on small named groups") {
  CHECK(PermGroup(4).order() == BigUint(1));  // empty generating set
  CHECK(schreier_sims(5, {Perm::identity(5)}).order() == BigUint(1));

  // {(0 1), (0 1 2 3)} generates S4
  auto s4 = schreier_sims(4, {transposition(4, 0, 1), cycle(4, {0, 1, 2, 3})});
  CHECK(s4.order() == BigUint(24));
  CHECK(s4.order() == BigUint(closure(s4.generators(), 4).size()));

  // S2 x S3 on parts {0,1} and {2,3,4}
  auto prod = schreier_sims(5, {transposition(5, 0, 1), transposition(5, 2, 3),
                                cycle(5, {2, 3, 4})});
  CHECK(prod.order() == BigUint(12));

  CHECK_THROWS_AS(schreier_sims(4, {Perm::identity(5)}), DomainMismatch);
}

TEST_CASE("membership against closure oracle") {
  auto c3 = schreier_sims(3, {cycle(3, {0, 1, 2})});
  CHECK(c3.contains(Perm::identity(3)));
  CHECK_FALSE(c3.contains(transposition(3, 0, 1)));
  CHECK(c3.contains(cycle(3, {0, 2, 1})));

  // all of Sym(5) vs. brute-force closure, for a handful of random groups
  Rng rng(1234);
  auto sym5 = testutil::all_perms(5);
  for (int it = 0; it < 6; ++it) {
    std::vector<Perm> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(testutil::random_perm(rng, 5));
    auto grp = schreier_sims(5, gens);
    auto cl = closure(gens, 5);
    CHECK(grp.order() == BigUint(cl.size()));
    for (const Perm& p : sym5) CHECK(grp.contains(p) == (cl.count(p) > 0));
  }
}

TEST_CASE("order equals closure size for random generator sets") {
  Rng rng(99);
  for (int it = 0; it < 12; ++it) {
    int n = 3 + static_cast<int>(rng.below(6));  // up to 8 points
    std::vector<Perm> gens;
    int k = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < k; ++i) gens.push_back(testutil::random_perm(rng, n));
    auto grp = schreier_sims(n, gens);
    CHECK(grp.order() == BigUint(closure(gens, n).size()));
  }
}

TEST_CASE("symmetric_product") {
  CHECK(symmetric_product({{0}, {1}, {2}}, 3).order() == BigUint(1));
  auto g = symmetric_product({{0, 1}, {2, 3, 4}}, 5);
  CHECK(g.order() == BigUint(12));
  CHECK(g.order() == BigUint(closure(g.generators(), 5).size()));
  CHECK(symmetric_product({{0, 1, 2, 3}}, 4).order() == BigUint(24));
  CHECK_THROWS_AS(symmetric_product({{0, 1}, {1, 2}}, 3), InvalidPartition);
}

TEST_CASE("subgroup_by_membership") {
  // always-true predicate: same group, index 1
  auto s4 = schreier_sims(4, {transposition(4, 0, 1), cycle(4, {0, 1, 2, 3})});
  auto same = subgroup_by_membership(s4, [](const Perm&) { return true; }, 10);
  CHECK(same.index == 1);
  CHECK(same.group.order() == s4.order());

  // S3, stabilizer of point 0 -> order 2
  auto s3 = schreier_sims(3, {transposition(3, 0, 1), cycle(3, {0, 1, 2})});
  auto stab = subgroup_by_membership(s3, [](const Perm& p) { return p(0) == 0; }, 3);
  CHECK(stab.index == 3);
  CHECK(stab.group.order() == BigUint(2));
  for (const Perm& g : stab.group.generators()) CHECK(g(0) == 0);

  // S4, even permutations -> A4 of order 12
  auto a4 = subgroup_by_membership(s4, [](const Perm& p) { return is_even(p); }, 2);
  CHECK(a4.index == 2);
  CHECK(a4.group.order() == BigUint(12));

  // element-set equality against closure enumeration
  auto cl_a4 = closure(a4.group.generators(), 4);
  int even_count = 0;
  for (const Perm& p : testutil::all_perms(4)) {
    bool in_a4 = cl_a4.count(p) > 0;
    CHECK(in_a4 == (s4.contains(p) && is_even(p)));
    if (in_a4) ++even_count;
  }
  CHECK(even_count == 12);

  // violated precondition: non-subgroup predicate hits the bound
  CHECK_THROWS_AS(
      subgroup_by_membership(s4, [](const Perm& p) { return p(0) == 1; }, 24),
      IndexBoundExceeded);
}

TEST_CASE("restrict_group") {
  auto g = schreier_sims(4, {transposition(4, 0, 1) * transposition(4, 2, 3)});
  auto full = restrict_group(g, {0, 1, 2, 3});
  CHECK(full.order() == g.order());

  auto half = restrict_group(g, {0, 1});
  CHECK(half.order() == BigUint(2));
  CHECK(half.domain_size() == 2);

  auto fixed = restrict_group(schreier_sims(4, {transposition(4, 0, 1)}), {2, 3});
  CHECK(fixed.order() == BigUint(1));

  CHECK_THROWS_AS(restrict_group(schreier_sims(3, {cycle(3, {0, 1, 2})}), {0, 1}),
                  NonInvariantSubdomain);

  // restriction is a homomorphism image: |G| = |image| * |kernel|, so the
  // restricted order divides the group order
  Rng rng(5);
  for (int it = 0; it < 10; ++it) {
    int n = 5 + static_cast<int>(rng.below(3));
    std::vector<Perm> gens{testutil::random_perm(rng, n), testutil::random_perm(rng, n)};
    auto grp = schreier_sims(n, gens);
    // invariant subdomain: closure of point 0 under the generators
    std::vector<char> in_orbit(static_cast<std::size_t>(n), 0);
    in_orbit[0] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int v = 0; v < n; ++v)
        if (in_orbit[static_cast<std::size_t>(v)])
          for (const Perm& g : gens)
            if (!in_orbit[static_cast<std::size_t>(g(v))]) {
              in_orbit[static_cast<std::size_t>(g(v))] = 1;
              grew = true;
            }
    }
    std::vector<int> sub;
    for (int v = 0; v < n; ++v)
      if (in_orbit[static_cast<std::size_t>(v)]) sub.push_back(v);

    auto image = restrict_group(grp, sub);
    auto kernel = subgroup_by_membership(
        grp,
        [&](const Perm& p) {
          for (int v : sub)
            if (p(v) != v) return false;
          return true;
        },
        1 << 30);
    CHECK(image.order() * kernel.group.order() == grp.order());
  }
}
