#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace wreath;

namespace {

Bipartition bp(Partition a, Partition b) { return {std::move(a), std::move(b)}; }

std::vector<Partition> partitions_upto(int top)
{
  std::vector<Partition> out;
  for (int s = 0; s <= top; ++s) {
    auto ps = partitions_of(s);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

std::vector<Bipartition> bipartitions_upto(int top)
{
  std::vector<Bipartition> out;
  for (int s = 0; s <= top; ++s) {
    auto bs = bipartitions_of(s);
    out.insert(out.end(), bs.begin(), bs.end());
  }
  return out;
}

} // namespace

TEST_CASE("symmetric group characters", "[characters]")
{
  for (int n = 1; n <= 6; ++n) {
    auto ps = partitions_of(n);
    for (auto const &rho : ps) {
      CHECK(sym_character(rho, Partition::ones(n)) == dim_irrep(rho));
      CHECK(sym_character(Partition{n}, rho) == 1);
      for (auto const &sigma : ps) {
        Rational inner = 0;
        for (auto const &delta : ps)
          inner += Rational(sym_character(rho, delta) * sym_character(sigma, delta), z_of(delta));
        CHECK(inner == (rho == sigma ? 1 : 0));
      }
    }
  }
  CHECK(sym_character(Partition{2, 1}, Partition{3}) == -1);
  CHECK(sym_character(Partition{2, 2}, Partition{2, 2}) == 2);
  CHECK(sym_character(Partition{3, 1}, Partition{2, 1, 1}) == 1);
  CHECK_THROWS_AS(sym_character(Partition{2}, Partition{1}), SizeMismatch);
}

TEST_CASE("dimensions", "[characters]")
{
  CHECK(dim_irrep(Partition{4}) == 1);
  CHECK(dim_irrep(Partition{2, 1}) == 2);
  CHECK(dim_irrep(Partition{}) == 1);
  for (int n = 0; n <= 8; ++n) {
    BigInt total = 0;
    for (auto const &rho : partitions_of(n)) {
      total += dim_irrep(rho) * dim_irrep(rho);
      CHECK(dim_irrep(rho) == oracle::syt_by_filling(rho.parts()));
    }
    CHECK(total == factorial(n));
  }
}

TEST_CASE("skew tableaux and branching", "[characters]")
{
  CHECK(skew_syt_count(Partition{3, 1}, Partition{3, 1}) == 1);
  CHECK(skew_syt_count(Partition{3, 1}, Partition{}) == 3);
  CHECK(skew_syt_count(Partition{2}, Partition{1, 1}) == 0);
  CHECK(skew_syt_count(Partition{2, 1}, Partition{1}) == 2);
  for (int n = 0; n <= 6; ++n) {
    for (auto const &lambda : partitions_of(n)) {
      CHECK(skew_syt_count(lambda, Partition{}) == dim_irrep(lambda));
      for (int r = 0; r <= n; ++r) {
        for (auto const &rho : partitions_of(r)) {
          BigInt sum = 0;
          for (auto const &nu : partitions_of(r))
            sum += skew_syt_count(lambda, nu) * sym_character(nu, rho);
          CHECK(sym_character(lambda, pad_to(rho, n)) == sum);
        }
      }
    }
  }
}

TEST_CASE("shifted Schur and power sums", "[characters]")
{
  for (auto const &lambda : partitions_upto(6)) {
    CHECK(shifted_schur_eval(lambda, lambda) == Rational(factorial(lambda.size()), dim_irrep(lambda)));
    CHECK(shifted_power_sum_eval(Partition{1}, lambda) == lambda.size());
    if (!lambda.empty())
      CHECK(shifted_schur_eval(Partition{1}, lambda) == lambda.size());
    CHECK(shifted_power_sum_eval(Partition::ones(lambda.size() + 1), lambda) == 0);
  }
  CHECK(shifted_schur_eval(Partition{3}, Partition{2, 2}) == 0);

  // p^#_δ = Σ_ρ χ^ρ_δ s*_ρ, pointwise.
  for (int d = 0; d <= 4; ++d) {
    for (auto const &delta : partitions_of(d)) {
      for (auto const &lambda : partitions_upto(6)) {
        Rational sum = 0;
        for (auto const &rho : partitions_of(d))
          sum += Rational(sym_character(rho, delta)) * shifted_schur_eval(rho, lambda);
        CHECK(shifted_power_sum_eval(delta, lambda) == sum);
      }
    }
  }
}

TEST_CASE("hyperoctahedral characters", "[characters]")
{
  auto d = bp(Partition{1}, Partition{1});
  CHECK(hyperoct_character(bp(Partition{2}, Partition{}), d) == 1);
  CHECK(hyperoct_character(bp(Partition{1}, Partition{1}), d) == 0);
  CHECK(hyperoct_character(bp(Partition{}, Partition{2}), d) == -1);
  CHECK(hyperoct_character(bp(Partition{1, 1}, Partition{}), d) == 1);
  CHECK(hyperoct_character(bp(Partition{}, Partition{1, 1}), d) == -1);
  CHECK_THROWS_AS(hyperoct_character(bp(Partition{2}, Partition{}), bp(Partition{1}, Partition{})), SizeMismatch);

  CHECK(hyperoct_dim(bp(Partition{3}, Partition{})) == 1);
  CHECK(hyperoct_dim(bp(Partition{1}, Partition{1})) == 2);
  for (int n = 0; n <= 4; ++n) {
    BigInt total = 0;
    auto bips = bipartitions_of(n);
    for (auto const &rho : bips) {
      total += hyperoct_dim(rho) * hyperoct_dim(rho);
      CHECK(hyperoct_character(rho, bp(Partition::ones(n), Partition{})) == hyperoct_dim(rho));
    }
    CHECK(total == power(2, n) * factorial(n));
  }

  // Column orthogonality against class sizes of the k = 2 families.
  for (int n = 0; n <= 3; ++n) {
    auto bips = bipartitions_of(n);
    for (auto const &x : bips) {
      for (auto const &y : bips) {
        BigInt sum = 0;
        for (auto const &rho : bips)
          sum += hyperoct_character(rho, x) * hyperoct_character(rho, y);
        BigInt expected = x == y ? group_order(2, n) / class_size(to_family(x), n) : BigInt(0);
        CHECK(sum == expected);
      }
    }
  }
}

TEST_CASE("hyperoctahedral character values match a trace oracle", "[characters]")
{
  // Class functions from the group: the number of fixed points of ω on [2n] is
  // the character of the permutation module, which decomposes as
  // χ^{((n),∅)} + χ^{((n-1,1),∅)} + χ^{((n-1),(1))}.
  for (int n = 1; n <= 4; ++n) {
    std::map<PartitionFamily, int> fixed;
    for (auto const &img : oracle::block_perms_by_product(2, n)) {
      int count = 0;
      for (std::size_t i = 0; i < img.size(); ++i)
        count += img[i] == static_cast<int>(i) + 1;
      fixed[oracle::return_map_type(img, 2)] = count;
    }
    for (auto const &[f, c] : fixed) {
      auto cls = to_bipartition(f);
      BigInt chi = hyperoct_character(bp(Partition{n}, Partition{}), cls) +
                   hyperoct_character(bp(n > 1 ? Partition{n - 1} : Partition{}, Partition{1}), cls);
      if (n > 1)
        chi += hyperoct_character(bp(Partition{n - 1, 1}, Partition{}), cls);
      CHECK(chi == c);
    }
  }
}

TEST_CASE("two routes to p^# on bipartitions agree", "[characters]")
{
  for (auto const &delta : bipartitions_upto(2)) {
    for (auto const &rho : bipartitions_upto(4))
      CHECK(shifted_power_sum_eval2(delta, rho) == shifted_power_sum_eval2_branching(delta, rho));
  }
  for (auto const &rho : bipartitions_upto(3))
    CHECK(shifted_power_sum_eval2(bp(Partition{1}, Partition{}), rho) == rho.size());
  CHECK(shifted_power_sum_eval2(bp(Partition{2}, Partition{}), bp(Partition{1}, Partition{})) == 0);
}

TEST_CASE("isomorphism transport", "[characters]")
{
  auto pts1 = partitions_upto(6);
  auto t = parse_family("{[1]:[2]}", 1), c3 = parse_family("{[1]:[3]}", 1);
  CHECK(verify_iso(t, t, pts1));
  CHECK(verify_iso(t, c3, pts1));

  // p#_2 p#_2 = 2 p#_{1,1} + 4 p#_3 + p#_{2,2} and p#_2 p#_3 = 6 p#_{2,1} + 6 p#_4 + p#_{3,2}.
  for (auto const &lambda : pts1) {
    auto p = [&](Partition d) { return shifted_power_sum_eval(d, lambda); };
    CHECK(p({2}) * p({2}) == 2 * p({1, 1}) + 4 * p({3}) + p({2, 2}));
    CHECK(p({2}) * p({3}) == 6 * p({2, 1}) + 6 * p({4}) + p({3, 2}));
  }

  auto pts2 = bipartitions_upto(5);
  auto a = parse_family("{[1,1]:[1]}", 2), b = parse_family("{[1,1]:[1]; [2]:[1]}", 2);
  auto s = parse_family("{[2]:[2]}", 2);
  CHECK(verify_iso(a, b, pts2));
  CHECK(verify_iso(s, s, pts2));
  for (auto const &rho : pts2) {
    auto p = [&](Partition x, Partition y) { return shifted_power_sum_eval2(bp(x, y), rho); };
    CHECK(p({1}, {}) * p({1}, {1}) == 2 * p({1}, {1}) + p({1, 1}, {1}));
    CHECK(p({}, {2}) * p({}, {2}) == p({1, 1}, {}) + p({}, {1, 1}) + p({}, {2, 2}) + 4 * p({3}, {}));
  }

  for (int k = 1; k <= 2; ++k) {
    for (int x = 1; x <= 3; ++x) {
      for (int y = 1; x + y <= 4; ++y) {
        for (auto const &l : families_with_size(k, x, true)) {
          for (auto const &r : families_with_size(k, y, true))
            CHECK(verify_iso(k, l, r));
        }
      }
    }
  }
  CHECK_THROWS(verify_iso(3, parse_family("{[3]:[1]}", 3), parse_family("{[3]:[1]}", 3)));
}

TEST_CASE("verify_iso detects a wrong product", "[characters]")
{
  // A perturbed coefficient must break pointwise multiplicativity.
  auto t = parse_family("{[1]:[2]}", 1);
  auto product = multiply_universal(t, t);
  for (auto const &lambda : partitions_upto(6)) {
    Rational good = 0, bad = 0;
    for (auto const &[g, c] : product.terms()) {
      good += Rational(c) * iso_value(g, lambda);
      bad += Rational(c + (g == parse_family("{[1]:[3]}", 1) ? 1 : 0)) * iso_value(g, lambda);
    }
    CHECK(iso_value(t, lambda) * iso_value(t, lambda) == good);
    if (lambda.size() >= 3 && iso_value(parse_family("{[1]:[3]}", 1), lambda) != 0)
      CHECK(iso_value(t, lambda) * iso_value(t, lambda) != bad);
  }
}

TEST_CASE("bipartition text", "[characters]")
{
  auto b = bp(Partition{2}, Partition{1});
  CHECK(to_string(b) == "{[1,1]:[2]; [2]:[1]}");
  CHECK(parse_bipartition(to_string(b)) == b);
  CHECK(bipartitions_of(2).size() == 5);
}
