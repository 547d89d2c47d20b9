#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "blockperm.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "numeric.hpp"

namespace wreath {

/// A k-partial permutation (d, ω): d is a finite union of blocks p_k(a) and
/// ω permutes the blocks of d.
///
/// The domain is stored as the sorted list of block indices (1-based) and ω
/// as the images of the domain points in increasing point order.
class KPartialPermutation
{
public:
  /// The identity (∅, 1_∅).
  explicit KPartialPermutation(int k) : _k(k)
  {
    if (k <= 0)
      throw std::invalid_argument("k must be positive");
  }

  KPartialPermutation(int k, std::vector<int> blocks, std::vector<int> images)
    : _k(k), _blocks(std::move(blocks)), _img(std::move(images))
  {
    if (k <= 0)
      throw std::invalid_argument("k must be positive");
    if (!std::is_sorted(_blocks.begin(), _blocks.end()) ||
        std::adjacent_find(_blocks.begin(), _blocks.end()) != _blocks.end() ||
        (!_blocks.empty() && _blocks.front() < 1))
      throw std::invalid_argument("domain blocks must be distinct, sorted and positive");
    if (_img.size() != _blocks.size() * static_cast<std::size_t>(k))
      throw std::invalid_argument("image count does not match the domain");
    std::vector<int> local(_img.size());
    for (std::size_t i = 0; i < _img.size(); ++i) {
      if (!in_domain(_img[i]))
        throw std::invalid_argument("image " + std::to_string(_img[i]) + " leaves the domain");
      local[i] = local_index(_img[i]) + 1;
    }
    if (!is_permutation(local) || !is_block_permutation(local, k))
      throw std::invalid_argument("images are not a block permutation of the domain");
  }

  static KPartialPermutation unchecked(int k, std::vector<int> blocks, std::vector<int> images)
  {
    KPartialPermutation p(k);
    p._blocks = std::move(blocks);
    p._img = std::move(images);
    return p;
  }

  /// Embeds w ∈ B^k_{kr} on the given r blocks, relabelling block i to blocks[i-1].
  static KPartialPermutation embed(BlockPermutation const &w, std::vector<int> blocks)
  {
    int const k = w.k();
    std::vector<int> img(w.images().size());
    for (std::size_t i = 0; i < img.size(); ++i) {
      int v = w.images()[i] - 1;
      img[i] = (blocks[static_cast<std::size_t>(v / k)] - 1) * k + v % k + 1;
    }
    return unchecked(k, std::move(blocks), std::move(img));
  }

  int k() const { return _k; }
  std::vector<int> const &blocks() const { return _blocks; }
  std::vector<int> const &images() const { return _img; }

  /// Number of blocks in the domain.
  int domain_size() const { return static_cast<int>(_blocks.size()); }

  bool in_domain(int point) const
  {
    int b = (point - 1) / _k + 1;
    return point >= 1 && std::binary_search(_blocks.begin(), _blocks.end(), b);
  }

  /// ω extended by the identity outside d.
  int operator()(int point) const
  {
    if (!in_domain(point))
      return point;
    return _img[static_cast<std::size_t>(local_index(point))];
  }

  /// ω relabelled as an element of B^k_{kr}, r = |d|/k.
  BlockPermutation compressed() const
  {
    std::vector<int> local(_img.size());
    for (std::size_t i = 0; i < _img.size(); ++i)
      local[i] = local_index(_img[i]) + 1;
    return BlockPermutation::unchecked(_k, std::move(local));
  }

  friend bool operator==(KPartialPermutation const &, KPartialPermutation const &) = default;
  friend auto operator<=>(KPartialPermutation const &, KPartialPermutation const &) = default;

private:
  int local_index(int point) const
  {
    int b = (point - 1) / _k + 1;
    auto it = std::lower_bound(_blocks.begin(), _blocks.end(), b);
    return static_cast<int>(it - _blocks.begin()) * _k + (point - 1) % _k;
  }

  int _k;
  std::vector<int> _blocks;
  std::vector<int> _img;
};

/// (d₁ ∪ d₂, ω₁ω₂) with both factors extended by the identity to d₁ ∪ d₂.
inline KPartialPermutation product(KPartialPermutation const &p, KPartialPermutation const &q)
{
  if (p.k() != q.k())
    throw DimensionMismatch("k-partial permutations with different k");
  int const k = p.k();
  std::vector<int> blocks;
  std::set_union(p.blocks().begin(), p.blocks().end(), q.blocks().begin(), q.blocks().end(),
                 std::back_inserter(blocks));
  std::vector<int> img;
  img.reserve(blocks.size() * static_cast<std::size_t>(k));
  for (int b : blocks) {
    for (int x = 0; x < k; ++x)
      img.push_back(p(q((b - 1) * k + x + 1)));
  }
  return KPartialPermutation::unchecked(k, std::move(blocks), std::move(img));
}

/// Blocks of d on which ω is not the identity.
inline std::vector<int> support(KPartialPermutation const &p)
{
  std::vector<int> out;
  int const k = p.k();
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    int const b = p.blocks()[i];
    for (int x = 0; x < k; ++x) {
      if (p.images()[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(x)] != (b - 1) * k + x + 1) {
        out.push_back(b);
        break;
      }
    }
  }
  return out;
}

/// σ.(d, ω) = (σ(d), σωσ⁻¹).
inline KPartialPermutation act(BlockPermutation const &sigma, KPartialPermutation const &p)
{
  if (sigma.k() != p.k())
    throw DimensionMismatch("acting element has a different k");
  if (!p.blocks().empty() && p.blocks().back() > sigma.n())
    throw DomainNotCovered("acting element does not cover block " +
                           std::to_string(p.blocks().back()));
  int const k = p.k();
  auto const quot = quotient(sigma);
  std::vector<int> blocks;
  for (int b : p.blocks())
    blocks.push_back(quot[static_cast<std::size_t>(b - 1)]);
  std::sort(blocks.begin(), blocks.end());
  std::vector<int> img(p.images().size());
  for (int b : p.blocks()) {
    for (int x = 0; x < k; ++x) {
      int const point = (b - 1) * k + x + 1;
      int const moved = sigma(point);
      // position of σ(point) among the new domain points
      int nb = (moved - 1) / k + 1;
      auto pos = static_cast<std::size_t>(std::lower_bound(blocks.begin(), blocks.end(), nb) - blocks.begin()) *
                   static_cast<std::size_t>(k) + static_cast<std::size_t>((moved - 1) % k);
      img[pos] = sigma(p(point));
    }
  }
  return KPartialPermutation::unchecked(k, std::move(blocks), std::move(img));
}

/// ψ: the permutation of [kn] agreeing with ω on d and fixing everything else.
inline BlockPermutation extend(KPartialPermutation const &p, int n)
{
  if (!p.blocks().empty() && p.blocks().back() > n)
    throw DomainNotCovered("domain block " + std::to_string(p.blocks().back()) +
                           " lies outside [" + std::to_string(n) + "]");
  BlockPermutation id(p.k(), n);
  std::vector<int> img = id.images();
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    for (int x = 0; x < p.k(); ++x) {
      auto idx = i * static_cast<std::size_t>(p.k()) + static_cast<std::size_t>(x);
      img[static_cast<std::size_t>((p.blocks()[i] - 1) * p.k() + x)] = p.images()[idx];
    }
  }
  return BlockPermutation::unchecked(p.k(), std::move(img));
}

/// Type of ω as a block permutation of d; its size is the number of blocks of d.
inline PartitionFamily kp_type(KPartialPermutation const &p)
{ return type_of(p.compressed()); }

/// |C_{Λ;n}| = binom(n-|Λ|+m₁, m₁) |C_{Λ̲_n}|, m₁ = m_1(Λ(1^k)); zero when |Λ| > n.
inline BigInt partial_class_size(PartitionFamily const &f, int n)
{
  if (f.size() > n)
    return 0;
  int const m1 = f.identity_component().multiplicity(1);
  return binomial(n - f.size() + m1, m1) * class_size(pad_family(f, n), n);
}

/// |P^k_{kn}| = Σ_r (n↓r)(k!)^r.
inline BigInt count_all(int k, int n)
{
  BigInt total = 0;
  for (int r = 0; r <= n; ++r)
    total += falling_factorial(n, r) * power(factorial(k), r);
  return total;
}

namespace detail {

/// Calls visit(blocks) for every r-subset of {1..n} in lexicographic order.
template<typename F>
bool for_each_subset(int n, int r, F &&visit)
{
  if (r < 0 || r > n)
    return true;
  std::vector<int> sub(static_cast<std::size_t>(r));
  std::iota(sub.begin(), sub.end(), 1);
  for (;;) {
    if (!visit(std::as_const(sub)))
      return false;
    int i = r - 1;
    while (i >= 0 && sub[static_cast<std::size_t>(i)] == n - r + i + 1)
      --i;
    if (i < 0)
      return true;
    ++sub[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j)
      sub[static_cast<std::size_t>(j)] = sub[static_cast<std::size_t>(j - 1)] + 1;
  }
}

template<typename F>
bool visit_partial(F &f, KPartialPermutation const &p)
{
  if constexpr (std::is_same_v<std::invoke_result_t<F &, KPartialPermutation const &>, bool>)
    return f(p);
  else {
    f(p);
    return true;
  }
}

} // namespace detail

/// Visits the members of C_Λ whose domain lies in [n], i.e. Proj_n(C_Λ) = C_{Λ;n}.
template<typename F>
void for_each_universal_class_member(PartitionFamily const &f, int n, F &&visit,
                                     Budget const &budget = {})
{
  if (f.size() > n) {
    throw SizeMismatch("family of size " + std::to_string(f.size()) +
                       " has no members inside [" + std::to_string(n) + "]");
  }
  budget.check("partial class " + to_string(f), partial_class_size(f, n));
  auto const members = enumerate_class(f, f.size(), budget);
  detail::for_each_subset(n, f.size(), [&](std::vector<int> const &blocks) {
    for (auto const &w : members) {
      if (!detail::visit_partial(visit, KPartialPermutation::embed(w, blocks)))
        return false;
    }
    return true;
  });
}

inline std::vector<KPartialPermutation> universal_class_members(PartitionFamily const &f, int n,
                                                               Budget const &budget = {})
{
  std::vector<KPartialPermutation> out;
  for_each_universal_class_member(f, n, [&](KPartialPermutation const &p) { out.push_back(p); },
                                  budget);
  return out;
}

/// Visits every element of P^k_{kn}.
template<typename F>
void for_each_partial_permutation(int k, int n, F &&visit, Budget const &budget = {})
{
  budget.check("P^" + std::to_string(k) + "_" + std::to_string(k * n), count_all(k, n));
  for (int r = 0; r <= n; ++r) {
    auto const members = enumerate_group(k, r, budget);
    bool go = detail::for_each_subset(n, r, [&](std::vector<int> const &blocks) {
      for (auto const &w : members) {
        if (!detail::visit_partial(visit, KPartialPermutation::embed(w, blocks)))
          return false;
      }
      return true;
    });
    if (!go)
      return;
  }
}

/// `{blocks:[1,2,4,6]; k:3; images:(12,10,11,...)}`.
inline std::string to_string(KPartialPermutation const &p)
{
  std::string s = "{blocks:[";
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(p.blocks()[i]);
  }
  s += "]; k:" + std::to_string(p.k()) + "; images:(";
  for (std::size_t i = 0; i < p.images().size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(p.images()[i]);
  }
  return s + ")}";
}

inline std::ostream &operator<<(std::ostream &os, KPartialPermutation const &p)
{ return os << to_string(p); }

inline KPartialPermutation parse_kpartial(std::string_view s)
{
  using namespace detail;
  std::size_t pos = 0;
  auto keyword = [&](std::string_view word) {
    skip_ws(s, pos);
    if (s.substr(pos, word.size()) != word)
      throw ParseError("expected '" + std::string(word) + "' in \"" + std::string(s) + "\"");
    pos += word.size();
    expect(s, pos, ':');
  };
  expect(s, pos, '{');
  keyword("blocks");
  auto blocks_ll = parse_int_list(s, pos, '[', ']');
  expect(s, pos, ';');
  keyword("k");
  auto k = parse_int(s, pos);
  expect(s, pos, ';');
  keyword("images");
  auto images_ll = parse_int_list(s, pos, '(', ')');
  expect(s, pos, '}');
  expect_end(s, pos);
  if (k <= 0 || k > 64)
    throw ParseError("k out of range");
  std::vector<int> blocks(blocks_ll.begin(), blocks_ll.end());
  std::vector<int> images(images_ll.begin(), images_ll.end());
  try {
    return KPartialPermutation(static_cast<int>(k), std::move(blocks), std::move(images));
  } catch (std::invalid_argument const &e) {
    throw ParseError(e.what());
  }
}

} // namespace wreath
