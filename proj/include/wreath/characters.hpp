#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "center.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "numeric.hpp"
#include "partition.hpp"

namespace wreath {

/// (λ₁, λ₂): λ₁ sits at the key (1²) of a k=2 family and λ₂ at (2).
struct Bipartition
{
  Partition first;
  Partition second;

  int size() const { return first.size() + second.size(); }

  friend bool operator==(Bipartition const &, Bipartition const &) = default;
  friend auto operator<=>(Bipartition const &, Bipartition const &) = default;
};

inline PartitionFamily to_family(Bipartition const &b)
{ return PartitionFamily::from_components(2, {b.first, b.second}); }

inline Bipartition to_bipartition(PartitionFamily const &f)
{
  if (f.k() != 2)
    throw DimensionMismatch("a bipartition is a family with k = 2");
  return {f.component(0), f.component(1)};
}

/// Same text as the k=2 family: `{[1,1]:[2]; [2]:[1]}`.
inline std::string to_string(Bipartition const &b) { return to_string(to_family(b)); }

inline Bipartition parse_bipartition(std::string_view s) { return to_bipartition(parse_family(s, 2)); }

inline std::vector<Bipartition> bipartitions_of(int n)
{
  std::vector<Bipartition> out;
  for (auto const &f : families_with_size(2, n))
    out.push_back(to_bipartition(f));
  return out;
}

namespace detail {

/// Thread-safe write-once memo; a value may be computed twice but is stored once.
template<typename Key, typename Value>
class Memo
{
public:
  template<typename F>
  Value get(Key const &key, F &&compute)
  {
    {
      std::lock_guard lock(_mtx);
      if (auto it = _table.find(key); it != _table.end())
        return it->second;
    }
    Value v = compute();
    std::lock_guard lock(_mtx);
    return _table.emplace(key, std::move(v)).first->second;
  }

private:
  std::mutex _mtx;
  std::map<Key, Value> _table;
};

inline Partition from_beta(std::vector<int> beta)
{
  std::sort(beta.begin(), beta.end(), std::greater<>());
  std::vector<int> parts;
  int const l = static_cast<int>(beta.size());
  for (int i = 0; i < l; ++i) {
    int p = beta[static_cast<std::size_t>(i)] - (l - 1 - i);
    if (p > 0)
      parts.push_back(p);
  }
  return Partition(std::move(parts));
}

inline BigInt mn_rec(Partition const &rho, std::vector<int> const &delta)
{
  static Memo<std::pair<Partition, std::vector<int>>, BigInt> memo;
  if (delta.empty())
    return rho.empty() ? 1 : 0;
  return memo.get({rho, delta}, [&] {
    int const r = delta.front();
    std::vector<int> rest(delta.begin() + 1, delta.end());
    int const l = rho.length();
    std::vector<int> beta(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i)
      beta[static_cast<std::size_t>(i)] = rho.part(i) + (l - 1 - i);
    BigInt total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      int const b = beta[i];
      if (b - r < 0 || std::find(beta.begin(), beta.end(), b - r) != beta.end())
        continue;
      auto between = std::count_if(beta.begin(), beta.end(), [&](int x) { return x > b - r && x < b; });
      auto next = beta;
      next[i] = b - r;
      BigInt v = mn_rec(from_beta(next), rest);
      total += (between % 2 == 0) ? v : BigInt(-v);
    }
    return total;
  });
}

} // namespace detail

/// χ^ρ_δ by the Murnaghan–Nakayama rule.
inline BigInt sym_character(Partition const &rho, Partition const &delta)
{
  if (rho.size() != delta.size())
    throw SizeMismatch("character " + to_string(rho) + " evaluated on class " + to_string(delta));
  return detail::mn_rec(rho, delta.parts());
}

/// Hook length formula.
inline BigInt dim_irrep(Partition const &rho)
{
  BigInt hooks = 1;
  for (int i = 0; i < rho.length(); ++i) {
    for (int j = 0; j < rho.part(i); ++j) {
      int legs = 0;
      while (i + legs + 1 < rho.length() && rho.part(i + legs + 1) > j)
        ++legs;
      hooks *= rho.part(i) - j + legs;
    }
  }
  return factorial(rho.size()) / hooks;
}

inline bool contains(Partition const &outer, Partition const &inner)
{
  if (inner.length() > outer.length())
    return false;
  for (int i = 0; i < inner.length(); ++i) {
    if (inner.part(i) > outer.part(i))
      return false;
  }
  return true;
}

/// f^{λ/ν}; zero unless ν ⊆ λ.
inline BigInt skew_syt_count(Partition const &lambda, Partition const &nu)
{
  static detail::Memo<std::pair<Partition, Partition>, BigInt> memo;
  if (!contains(lambda, nu))
    return 0;
  if (lambda == nu)
    return 1;
  return memo.get({lambda, nu}, [&] {
    BigInt total = 0;
    auto parts = lambda.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      bool corner = i + 1 == parts.size() || parts[i + 1] < parts[i];
      if (!corner)
        continue;
      auto smaller = parts;
      if (--smaller[i] == 0)
        smaller.pop_back();
      Partition mu(std::move(smaller));
      if (contains(mu, nu))
        total += skew_syt_count(mu, nu);
    }
    return total;
  });
}

/// s*_ρ(λ) = (|λ|↓|ρ|) f^{λ/ρ} / dim λ.
inline Rational shifted_schur_eval(Partition const &rho, Partition const &lambda)
{
  if (!contains(lambda, rho))
    return 0;
  return Rational(falling_factorial(lambda.size(), rho.size()) * skew_syt_count(lambda, rho),
                  dim_irrep(lambda));
}

/// p^#_δ(λ) = (|λ|↓|δ|) χ^λ_{δ ∪ 1^{|λ|-|δ|}} / dim λ, zero when |δ| > |λ|.
inline Rational shifted_power_sum_eval(Partition const &delta, Partition const &lambda)
{
  if (delta.size() > lambda.size())
    return 0;
  return Rational(falling_factorial(lambda.size(), delta.size()) *
                    sym_character(lambda, pad_to(delta, lambda.size())),
                  dim_irrep(lambda));
}

/// Irreducible character of the hyperoctahedral group B_n, by the signed sum
/// over u ∈ {±}^{l(δ₁)}, v ∈ {±}^{l(δ₂)}.
inline BigInt hyperoct_character(Bipartition const &rho, Bipartition const &delta)
{
  if (rho.size() != delta.size()) {
    throw SizeMismatch("character " + to_string(rho) + " evaluated on class " + to_string(delta));
  }
  auto const &d1 = delta.first.parts();
  auto const &d2 = delta.second.parts();
  auto const l1 = d1.size(), l2 = d2.size();
  BigInt total = 0;
  for (std::size_t u = 0; u < (std::size_t{1} << l1); ++u) {
    for (std::size_t v = 0; v < (std::size_t{1} << l2); ++v) {
      std::vector<int> alpha, beta;
      for (std::size_t i = 0; i < l1; ++i)
        ((u >> i) & 1 ? beta : alpha).push_back(d1[i]);
      int minus = 0;
      for (std::size_t j = 0; j < l2; ++j) {
        if ((v >> j) & 1) {
          beta.push_back(d2[j]);
          ++minus;
        } else {
          alpha.push_back(d2[j]);
        }
      }
      Partition a(std::move(alpha)), b(std::move(beta));
      if (a.size() != rho.first.size() || b.size() != rho.second.size())
        continue;
      BigInt term = sym_character(rho.first, a) * sym_character(rho.second, b);
      total += minus % 2 == 0 ? term : BigInt(-term);
    }
  }
  return total;
}

inline BigInt hyperoct_dim(Bipartition const &rho)
{
  return binomial(rho.size(), rho.first.size()) * dim_irrep(rho.first) * dim_irrep(rho.second);
}

/// p^#_{(δ₁,δ₂)}(ρ₁,ρ₂) = (n↓r) χ^ρ_{(δ₁ ∪ 1^{n-r}, δ₂)} / dim ρ, zero when r > n.
inline Rational shifted_power_sum_eval2(Bipartition const &delta, Bipartition const &rho)
{
  int const n = rho.size(), r = delta.size();
  if (r > n)
    return 0;
  Bipartition padded{pad_to(delta.first, delta.first.size() + n - r), delta.second};
  return Rational(falling_factorial(n, r) * hyperoct_character(rho, padded), hyperoct_dim(rho));
}

/// The same value through the branching rule over (ν₁,ν₂) ⊢ r.
inline Rational shifted_power_sum_eval2_branching(Bipartition const &delta, Bipartition const &rho)
{
  int const n = rho.size(), r = delta.size();
  if (r > n)
    return 0;
  BigInt chi = 0;
  for (auto const &nu : bipartitions_of(r)) {
    BigInt f1 = skew_syt_count(rho.first, nu.first);
    if (f1 == 0)
      continue;
    BigInt f2 = skew_syt_count(rho.second, nu.second);
    if (f2 == 0)
      continue;
    chi += hyperoct_character(nu, delta) * binomial(n - r, rho.first.size() - nu.first.size()) * f1 * f2;
  }
  return Rational(falling_factorial(n, r) * chi, hyperoct_dim(rho));
}

/// F¹(C_δ)(λ) = p^#_δ(λ) / z_δ.
inline Rational iso_value(PartitionFamily const &f, Partition const &lambda)
{
  if (f.k() != 1)
    throw DimensionMismatch("partition evaluation points need k = 1");
  auto const &delta = f.identity_component();
  return shifted_power_sum_eval(delta, lambda) / Rational(z_of(delta));
}

/// F²(C_δ)(ρ) = 2^{|δ|} p^#_δ(ρ) / z_δ.
inline Rational iso_value(PartitionFamily const &f, Bipartition const &rho)
{
  if (f.k() != 2)
    throw DimensionMismatch("bipartition evaluation points need k = 2");
  return Rational(power(BigInt(2), f.size()), big_z(f)) * shifted_power_sum_eval2(to_bipartition(f), rho);
}

namespace detail {

template<typename Point>
bool verify_iso_at(PartitionFamily const &left, PartitionFamily const &right,
                   std::vector<Point> const &points, ComputeOptions const &opts)
{
  auto const product = multiply_universal(left, right, opts);
  for (auto const &pt : points) {
    Rational expected = 0;
    for (auto const &[g, c] : product.terms())
      expected += Rational(c) * iso_value(g, pt);
    if (iso_value(left, pt) * iso_value(right, pt) != expected)
      return false;
  }
  return true;
}

} // namespace detail

/// Checks F¹(C_Λ)F¹(C_Δ) = Σ c_{ΛΔ}^Γ F¹(C_Γ) at each partition.
inline bool verify_iso(PartitionFamily const &left, PartitionFamily const &right,
                       std::vector<Partition> const &points, ComputeOptions const &opts = {})
{
  if (left.k() != 1 || right.k() != 1)
    throw DimensionMismatch("partition evaluation points need k = 1");
  return detail::verify_iso_at(left, right, points, opts);
}

/// Checks F²(C_Λ)F²(C_Δ) = Σ c_{ΛΔ}^Γ F²(C_Γ) at each bipartition.
inline bool verify_iso(PartitionFamily const &left, PartitionFamily const &right,
                       std::vector<Bipartition> const &points, ComputeOptions const &opts = {})
{
  if (left.k() != 2 || right.k() != 2)
    throw DimensionMismatch("bipartition evaluation points need k = 2");
  return detail::verify_iso_at(left, right, points, opts);
}

/// Default points: every (bi)partition of size at most |Λ|+|Δ|+2.
inline bool verify_iso(int k, PartitionFamily const &left, PartitionFamily const &right,
                       ComputeOptions const &opts = {})
{
  int const top = left.size() + right.size() + 2;
  if (k == 1) {
    std::vector<Partition> pts;
    for (int s = 0; s <= top; ++s) {
      auto ps = partitions_of(s);
      pts.insert(pts.end(), ps.begin(), ps.end());
    }
    return verify_iso(left, right, pts, opts);
  }
  if (k == 2) {
    std::vector<Bipartition> pts;
    for (int s = 0; s <= top; ++s) {
      auto bs = bipartitions_of(s);
      pts.insert(pts.end(), bs.begin(), bs.end());
    }
    return verify_iso(left, right, pts, opts);
  }
  throw std::invalid_argument("isomorphism check is available for k = 1 and k = 2 only");
}

} // namespace wreath
