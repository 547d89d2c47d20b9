#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"

using namespace wreath;

namespace {

KPartialPermutation worked_example()
{ return KPartialPermutation(3, {1, 2, 4, 6}, {12, 10, 11, 4, 5, 6, 16, 18, 17, 1, 2, 3}); }

std::vector<KPartialPermutation> all_partials(int k, int n)
{
  std::vector<KPartialPermutation> out;
  for_each_partial_permutation(k, n, [&](KPartialPermutation const &p) { out.push_back(p); });
  return out;
}

} // namespace

TEST_CASE("k-partial validation", "[kpartial]")
{
  CHECK_NOTHROW(worked_example());
  CHECK_THROWS_AS(KPartialPermutation(2, {2, 1}, {1, 2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(KPartialPermutation(2, {1}, {3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(KPartialPermutation(2, {1, 2}, {1, 3, 2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(KPartialPermutation(2, {1}, {1}), std::invalid_argument);
}

TEST_CASE("support, extension and type of the worked example", "[kpartial]")
{
  auto p = worked_example();
  CHECK(support(p) == std::vector<int>{1, 4, 6});
  CHECK(extend(p, 6) ==
        BlockPermutation(3, {12, 10, 11, 4, 5, 6, 7, 8, 9, 16, 18, 17, 13, 14, 15, 1, 2, 3}));
  auto t = kp_type(p);
  CHECK(t.at(Partition{2, 1}) == Partition{3});
  CHECK(t.at(Partition{1, 1, 1}) == Partition{1});
  CHECK(t.size() == p.domain_size());
  CHECK_THROWS_AS(extend(p, 5), DomainNotCovered);
  CHECK(support(KPartialPermutation(2, {1, 3}, {1, 2, 5, 6})).empty());
}

TEST_CASE("product", "[kpartial]")
{
  KPartialPermutation a(2, {1, 2}, {3, 4, 2, 1});
  CHECK(product(a, a) == KPartialPermutation(2, {1, 2}, {2, 1, 4, 3}));
  KPartialPermutation e(2);
  CHECK(product(e, a) == a);
  CHECK(product(a, e) == a);

  // Disjoint domains: types combine componentwise.
  KPartialPermutation b(2, {3, 5}, {9, 10, 6, 5});
  auto ab = product(a, b);
  CHECK(ab.blocks() == std::vector<int>{1, 2, 3, 5});
  auto ta = kp_type(a), tb = kp_type(b), tab = kp_type(ab);
  for (std::size_t i = 0; i < family_keys(2).size(); ++i)
    CHECK(tab.component(i) == union_of(ta.component(i), tb.component(i)));
  CHECK(product(a, b) == product(b, a));
}

TEST_CASE("action and extension", "[kpartial]")
{
  auto p = worked_example();
  CHECK(act(BlockPermutation(3, 6), p) == p);
  CHECK_THROWS_AS(act(BlockPermutation(3, 5), p), DomainNotCovered);

  // Orbit of ({1}, id) under B^2_4.
  KPartialPermutation one(2, {1}, {1, 2});
  std::set<KPartialPermutation> orbit;
  for (auto const &s : enumerate_group(2, 2))
    orbit.insert(act(s, one));
  CHECK(orbit == std::set<KPartialPermutation>{one, KPartialPermutation(2, {2}, {3, 4})});

  for (int k = 1; k <= 2; ++k) {
    for (int n = 0; n <= 3; ++n) {
      auto group = enumerate_group(k, n);
      for (auto const &q : all_partials(k, n)) {
        CHECK(type_of(extend(q, n)) == pad_family(kp_type(q), n));
        for (auto const &s : group) {
          auto moved = act(s, q);
          CHECK(moved.domain_size() == q.domain_size());
          CHECK(kp_type(moved) == kp_type(q));
          CHECK(extend(moved, n) == s * extend(q, n) * s.inverse());
        }
      }
    }
  }
}

TEST_CASE("extension is multiplicative", "[kpartial]")
{
  for (int k = 1; k <= 2; ++k) {
    for (int n = 0; n <= 3; ++n) {
      auto all = all_partials(k, n);
      for (auto const &p : all) {
        for (auto const &q : all)
          CHECK(extend(product(p, q), n) == extend(p, n) * extend(q, n));
      }
    }
  }
}

TEST_CASE("partial class sizes", "[kpartial]")
{
  CHECK(count_all(1, 2) == 5);
  CHECK(count_all(2, 3) == 79);
  CHECK(partial_class_size(PartitionFamily(1), 7) == 1);
  CHECK(partial_class_size(parse_family("{[1]:[2]}", 1), 1) == 0);
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n <= 3; ++n) {
      BigInt total = 0;
      for (int s = 0; s <= n; ++s) {
        for (auto const &f : families_with_size(k, s))
          total += partial_class_size(f, n);
      }
      CHECK(total == count_all(k, n));
      for (auto const &f : families_with_size(k, n))
        CHECK(partial_class_size(f, n) == class_size(f, n));
    }
  }

  std::map<PartitionFamily, BigInt> counts;
  for (auto const &p : oracle::all_partials(2, 3))
    counts[oracle::partial_type(p, 2)] += 1;
  CHECK(counts[parse_family("{[2]:[1]}", 2)] == partial_class_size(parse_family("{[2]:[1]}", 2), 3));
  for (auto const &[f, c] : counts)
    CHECK(c == partial_class_size(f, 3));
}

TEST_CASE("universal class members", "[kpartial]")
{
  auto empty = universal_class_members(PartitionFamily(2), 3);
  REQUIRE(empty.size() == 1);
  CHECK(empty.front() == KPartialPermutation(2));
  CHECK(universal_class_members(parse_family("{[1]:[2]}", 1), 3).size() == 3);
  CHECK_THROWS_AS(universal_class_members(parse_family("{[1]:[2]}", 1), 1), SizeMismatch);
  for (int k = 1; k <= 2; ++k) {
    for (int n = 0; n <= 3; ++n) {
      for (int s = 0; s <= n; ++s) {
        for (auto const &f : families_with_size(k, s)) {
          auto members = universal_class_members(f, n);
          std::set<KPartialPermutation> distinct(members.begin(), members.end());
          CHECK(distinct.size() == members.size());
          CHECK(BigInt(members.size()) == partial_class_size(f, n));
          for (auto const &m : members)
            CHECK(kp_type(m) == f);
        }
      }
    }
  }
}

TEST_CASE("orbits are exactly the partial classes", "[kpartial]")
{
  for (int k = 1; k <= 2; ++k) {
    for (int n = 0; n <= 3; ++n) {
      auto group = enumerate_group(k, n);
      std::set<KPartialPermutation> seen;
      std::set<PartitionFamily> orbit_types;
      for (auto const &p : all_partials(k, n)) {
        if (seen.count(p))
          continue;
        std::set<KPartialPermutation> orbit;
        for (auto const &s : group)
          orbit.insert(act(s, p));
        CHECK(BigInt(orbit.size()) == partial_class_size(kp_type(p), n));
        CHECK(orbit_types.insert(kp_type(p)).second);
        seen.insert(orbit.begin(), orbit.end());
      }
      CHECK(BigInt(seen.size()) == count_all(k, n));
    }
  }
}

TEST_CASE("k-partial text", "[kpartial]")
{
  auto p = worked_example();
  CHECK(to_string(p) == "{blocks:[1,2,4,6]; k:3; images:(12,10,11,4,5,6,16,18,17,1,2,3)}");
  CHECK(parse_kpartial(to_string(p)) == p);
  CHECK(parse_kpartial("{blocks:[]; k:2; images:()}") == KPartialPermutation(2));
  CHECK_THROWS_AS(parse_kpartial("{blocks:[1]; k:2; images:(2,3)}"), ParseError);
  CHECK_THROWS_AS(parse_kpartial("{blocks:[1]; images:(1,2)}"), ParseError);
}
