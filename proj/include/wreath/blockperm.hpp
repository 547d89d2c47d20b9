#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "family.hpp"
#include "numeric.hpp"
#include "partition.hpp"

namespace wreath {

/// Upper bound on the number of group elements any single enumeration may visit.
struct Budget
{
  std::uint64_t max_group_size = 10'000'000;

  void check(std::string const &what, BigInt const &required) const
  {
    if (required > BigInt(max_group_size))
      throw BudgetExceeded(what, required.str(), std::to_string(max_group_size));
  }
};

/// True when images (1-based) is a bijection of [m].
inline bool is_permutation(std::span<int const> images)
{
  std::vector<bool> seen(images.size() + 1, false);
  for (int v : images) {
    if (v < 1 || v > static_cast<int>(images.size()) || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

/// True when the bijection images of [kn] maps every k-block p_k(i) onto some k-block.
inline bool is_block_permutation(std::span<int const> images, int k)
{
  if (k <= 0 || images.size() % static_cast<std::size_t>(k) != 0)
    return false;
  std::size_t const n = images.size() / static_cast<std::size_t>(k);
  for (std::size_t b = 0; b < n; ++b) {
    int target = (images[b * k] - 1) / k;
    for (int j = 1; j < k; ++j) {
      if ((images[b * k + j] - 1) / k != target)
        return false;
    }
  }
  return true;
}

/// An element of B^k_{kn}: a permutation of [kn] that permutes the blocks
/// p_k(i) = {(i-1)k+1, ..., ik}.
///
/// Images are 1-based; products compose right to left, (σω)(x) = σ(ω(x)).
class BlockPermutation
{
public:
  /// Identity of B^k_{kn}.
  BlockPermutation(int k, int n) : _k(k), _n(n), _img(static_cast<std::size_t>(k * n))
  {
    if (k <= 0 || n < 0)
      throw std::invalid_argument("block permutation needs k > 0 and n >= 0");
    std::iota(_img.begin(), _img.end(), 1);
  }

  BlockPermutation(int k, std::vector<int> images) : _k(k), _img(std::move(images))
  {
    if (k <= 0 || _img.size() % static_cast<std::size_t>(k) != 0)
      throw std::invalid_argument("image length is not a multiple of k");
    _n = static_cast<int>(_img.size()) / k;
    if (!is_permutation(_img))
      throw std::invalid_argument("images do not form a bijection");
    if (!is_block_permutation(_img, k))
      throw std::invalid_argument("permutation does not map blocks to blocks");
  }

  /// Skips validation; callers guarantee the block condition.
  static BlockPermutation unchecked(int k, std::vector<int> images)
  {
    BlockPermutation p(k, 0);
    p._n = static_cast<int>(images.size()) / k;
    p._img = std::move(images);
    return p;
  }

  int k() const { return _k; }
  int n() const { return _n; }
  int degree() const { return _k * _n; }

  std::vector<int> const &images() const { return _img; }

  int operator()(int point) const { return _img[static_cast<std::size_t>(point - 1)]; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < _img.size(); ++i) {
      if (_img[i] != static_cast<int>(i) + 1)
        return false;
    }
    return true;
  }

  BlockPermutation inverse() const
  {
    std::vector<int> inv(_img.size());
    for (std::size_t i = 0; i < _img.size(); ++i)
      inv[static_cast<std::size_t>(_img[i] - 1)] = static_cast<int>(i) + 1;
    return unchecked(_k, std::move(inv));
  }

  friend BlockPermutation operator*(BlockPermutation const &lhs, BlockPermutation const &rhs)
  {
    if (lhs._k != rhs._k || lhs._n != rhs._n)
      throw DimensionMismatch("cannot compose block permutations of different shapes");
    std::vector<int> out(lhs._img.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = lhs._img[static_cast<std::size_t>(rhs._img[i] - 1)];
    return unchecked(lhs._k, std::move(out));
  }

  friend bool operator==(BlockPermutation const &, BlockPermutation const &) = default;
  friend auto operator<=>(BlockPermutation const &, BlockPermutation const &) = default;

private:
  int _k;
  int _n;
  std::vector<int> _img;
};

/// Cycle type of a 1-based permutation of [m].
inline Partition cycle_type(std::span<int const> perm)
{
  std::vector<bool> seen(perm.size(), false);
  std::vector<int> lengths;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i])
      continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j] - 1)) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition(std::move(lengths));
}

/// p_ω: block i goes to block j when ω(p_k(i)) = p_k(j). 1-based images of [n].
inline std::vector<int> quotient(BlockPermutation const &w)
{
  std::vector<int> q(static_cast<std::size_t>(w.n()));
  for (int i = 0; i < w.n(); ++i)
    q[static_cast<std::size_t>(i)] = (w.images()[static_cast<std::size_t>(i * w.k())] - 1) / w.k() + 1;
  return q;
}

/// Type of a block permutation given by its raw images.
///
/// Cycles of ω are grouped into clusters: the cycles meeting a block in ρ_1,
/// ρ_2, ... points together cover m whole blocks, and contribute the part m
/// to ω(ρ).
inline PartitionFamily type_of_images(std::span<int const> img, int k)
{
  auto const degree = img.size();
  auto const n = degree / static_cast<std::size_t>(k);
  auto const &keys = family_keys(k);

  std::vector<int> cycle_of(degree, -1);
  std::vector<int> cycle_len;
  for (std::size_t i = 0; i < degree; ++i) {
    if (cycle_of[i] >= 0)
      continue;
    int id = static_cast<int>(cycle_len.size());
    int len = 0;
    for (std::size_t j = i; cycle_of[j] < 0; j = static_cast<std::size_t>(img[j] - 1)) {
      cycle_of[j] = id;
      ++len;
    }
    cycle_len.push_back(len);
  }

  std::vector<std::vector<int>> parts(keys.size());
  std::vector<bool> consumed(n, false);
  std::vector<int> meet(cycle_len.size(), 0);
  std::vector<int> touched;
  for (std::size_t b = 0; b < n; ++b) {
    if (consumed[b])
      continue;
    touched.clear();
    for (int j = 0; j < k; ++j) {
      int c = cycle_of[b * k + static_cast<std::size_t>(j)];
      if (meet[static_cast<std::size_t>(c)]++ == 0)
        touched.push_back(c);
    }
    std::vector<int> rho;
    int points = 0;
    for (int c : touched) {
      rho.push_back(meet[static_cast<std::size_t>(c)]);
      points += cycle_len[static_cast<std::size_t>(c)];
      meet[static_cast<std::size_t>(c)] = 0;
    }
    int m = points / k;
    // Every block of the cluster lies on the quotient cycle through b.
    std::size_t blk = b;
    for (int step = 0; step < m; ++step) {
      consumed[blk] = true;
      blk = static_cast<std::size_t>((img[blk * k] - 1) / k);
    }
    auto slot = std::find(keys.begin(), keys.end(), Partition(std::move(rho)));
    parts[static_cast<std::size_t>(slot - keys.begin())].push_back(m);
  }

  std::vector<Partition> comps;
  comps.reserve(parts.size());
  for (auto &p : parts)
    comps.emplace_back(std::move(p));
  return PartitionFamily::from_components(k, std::move(comps));
}

inline PartitionFamily type_of(BlockPermutation const &w)
{ return type_of_images(w.images(), w.k()); }

/// σωσ⁻¹.
inline BlockPermutation conjugate(BlockPermutation const &sigma, BlockPermutation const &w)
{
  if (sigma.k() != w.k() || sigma.n() != w.n())
    throw DimensionMismatch("conjugating element has a different shape");
  std::vector<int> out(w.images().size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    // (σωσ⁻¹)(σ(x)) = σ(ω(x))
    out[static_cast<std::size_t>(sigma.images()[x] - 1)] =
      sigma(w.images()[x]);
  }
  return BlockPermutation::unchecked(w.k(), std::move(out));
}

namespace detail {

/// All of S_k as 0-based image vectors, grouped by cycle type (family key index).
struct SymmetricGroupTable
{
  int k;
  std::vector<std::vector<int>> elements;
  std::vector<std::vector<std::size_t>> by_class;

  explicit SymmetricGroupTable(int k_) : k(k_), by_class(family_keys(k_).size())
  {
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    do {
      std::vector<int> one_based(p.begin(), p.end());
      for (int &v : one_based)
        ++v;
      by_class[key_index(k, cycle_type(one_based))].push_back(elements.size());
      elements.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
};

inline SymmetricGroupTable const &symmetric_group_table(int k)
{
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<SymmetricGroupTable const>> cache;
  std::lock_guard lock(mtx);
  auto &slot = cache[k];
  if (!slot)
    slot = std::make_unique<SymmetricGroupTable const>(k);
  return *slot;
}

template<typename F>
bool invoke_visitor(F &f, BlockPermutation const &w)
{
  if constexpr (std::is_same_v<std::invoke_result_t<F &, BlockPermutation const &>, bool>)
    return f(w);
  else {
    f(w);
    return true;
  }
}

/// Builds every element of a class directly: quotient cycles are chosen with
/// their smallest block first, the first m-1 block bijections of a cluster are
/// free and the last one is fixed by the required return map on the start block.
template<typename F>
class ClassBuilder
{
public:
  ClassBuilder(PartitionFamily const &f, F &visit)
    : _k(f.k()), _n(f.size()), _table(symmetric_group_table(f.k())), _visit(visit),
      _img(static_cast<std::size_t>(_k * _n)), _used(static_cast<std::size_t>(_n), false)
  {
    for (std::size_t key = 0; key < f.components().size(); ++key) {
      auto const &c = f.component(key);
      for (int m : c.parts()) {
        auto it = std::find_if(_clusters.begin(), _clusters.end(), [&](Cluster const &cl) {
          return cl.length == m && cl.key == key;
        });
        if (it == _clusters.end())
          _clusters.push_back({m, key, 1});
        else
          ++it->count;
      }
    }
  }

  void run() { place_next(); }

private:
  struct Cluster
  {
    int length;
    std::size_t key;
    int count;
  };

  void place_next()
  {
    if (_stopped)
      return;
    int start = -1;
    for (int b = 0; b < _n; ++b) {
      if (!_used[static_cast<std::size_t>(b)]) {
        start = b;
        break;
      }
    }
    if (start < 0) {
      if (!invoke_visitor(_visit, BlockPermutation::unchecked(_k, _img)))
        _stopped = true;
      return;
    }
    for (auto &cl : _clusters) {
      if (cl.count == 0)
        continue;
      --cl.count;
      _used[static_cast<std::size_t>(start)] = true;
      std::vector<int> seq{start};
      choose_blocks(cl, seq);
      _used[static_cast<std::size_t>(start)] = false;
      ++cl.count;
      if (_stopped)
        return;
    }
  }

  void choose_blocks(Cluster const &cl, std::vector<int> &seq)
  {
    if (static_cast<int>(seq.size()) == cl.length) {
      std::vector<int> acc(static_cast<std::size_t>(_k));
      std::iota(acc.begin(), acc.end(), 0);
      assign_labels(cl, seq, 0, acc);
      return;
    }
    for (int b = 0; b < _n && !_stopped; ++b) {
      if (_used[static_cast<std::size_t>(b)])
        continue;
      _used[static_cast<std::size_t>(b)] = true;
      seq.push_back(b);
      choose_blocks(cl, seq);
      seq.pop_back();
      _used[static_cast<std::size_t>(b)] = false;
    }
  }

  // acc maps positions of the start block to positions of block seq[j].
  void assign_labels(Cluster const &cl, std::vector<int> const &seq, std::size_t j,
                     std::vector<int> const &acc)
  {
    auto const m = static_cast<std::size_t>(cl.length);
    int const from = seq[j];
    if (j + 1 == m) {
      std::vector<int> acc_inv(acc.size());
      for (std::size_t x = 0; x < acc.size(); ++x)
        acc_inv[static_cast<std::size_t>(acc[x])] = static_cast<int>(x);
      int const to = seq[0];
      for (std::size_t r_idx : _table.by_class[cl.key]) {
        auto const &r = _table.elements[r_idx];
        for (int x = 0; x < _k; ++x) {
          // last label is r ∘ acc⁻¹
          int y = r[static_cast<std::size_t>(acc_inv[static_cast<std::size_t>(x)])];
          _img[static_cast<std::size_t>(from * _k + x)] = to * _k + y + 1;
        }
        place_next();
        if (_stopped)
          return;
      }
      return;
    }
    int const to = seq[j + 1];
    std::vector<int> next(acc.size());
    for (auto const &sigma : _table.elements) {
      for (int x = 0; x < _k; ++x)
        _img[static_cast<std::size_t>(from * _k + x)] = to * _k + sigma[static_cast<std::size_t>(x)] + 1;
      for (std::size_t x = 0; x < acc.size(); ++x)
        next[x] = sigma[static_cast<std::size_t>(acc[x])];
      assign_labels(cl, seq, j + 1, next);
      if (_stopped)
        return;
    }
  }

  int _k;
  int _n;
  SymmetricGroupTable const &_table;
  F &_visit;
  std::vector<int> _img;
  std::vector<bool> _used;
  std::vector<Cluster> _clusters;
  bool _stopped = false;
};

} // namespace detail

/// Visits each element of B^k_{kn} once. The visitor may return false to stop.
template<typename F>
void for_each_group_element(int k, int n, F &&visit, Budget const &budget = {})
{
  budget.check("group B^" + std::to_string(k) + "_" + std::to_string(k * n),
               group_order(k, n));
  auto const &table = detail::symmetric_group_table(k);
  auto const labels = table.elements.size();
  std::vector<int> quot(static_cast<std::size_t>(n));
  std::iota(quot.begin(), quot.end(), 0);
  std::vector<std::size_t> odometer(static_cast<std::size_t>(n));
  std::vector<int> img(static_cast<std::size_t>(k * n));
  do {
    std::fill(odometer.begin(), odometer.end(), 0);
    for (;;) {
      for (int b = 0; b < n; ++b) {
        auto const &sigma = table.elements[odometer[static_cast<std::size_t>(b)]];
        for (int x = 0; x < k; ++x)
          img[static_cast<std::size_t>(b * k + x)] =
            quot[static_cast<std::size_t>(b)] * k + sigma[static_cast<std::size_t>(x)] + 1;
      }
      if (!detail::invoke_visitor(visit, BlockPermutation::unchecked(k, img)))
        return;
      std::size_t pos = 0;
      while (pos < odometer.size() && ++odometer[pos] == labels)
        odometer[pos++] = 0;
      if (pos == odometer.size())
        break;
    }
  } while (std::next_permutation(quot.begin(), quot.end()));
}

inline std::vector<BlockPermutation> enumerate_group(int k, int n, Budget const &budget = {})
{
  std::vector<BlockPermutation> out;
  for_each_group_element(k, n, [&](BlockPermutation const &w) { out.push_back(w); }, budget);
  return out;
}

/// Visits each element of the class C_Λ ⊂ B^k_{kn} once (n = |Λ|).
template<typename F>
void for_each_class_element(PartitionFamily const &f, int n, F &&visit, Budget const &budget = {})
{
  if (f.size() != n) {
    throw SizeMismatch("family has size " + std::to_string(f.size()) +
                       ", expected " + std::to_string(n));
  }
  budget.check("class " + to_string(f), class_size(f, n));
  detail::ClassBuilder<std::remove_reference_t<F>> builder(f, visit);
  builder.run();
}

inline std::vector<BlockPermutation> enumerate_class(PartitionFamily const &f, int n,
                                                     Budget const &budget = {})
{
  std::vector<BlockPermutation> out;
  for_each_class_element(f, n, [&](BlockPermutation const &w) { out.push_back(w); }, budget);
  return out;
}

/// The first element produced by the class enumeration; needs no budget.
inline BlockPermutation class_representative(PartitionFamily const &f)
{
  std::optional<BlockPermutation> rep;
  auto take = [&](BlockPermutation const &w) {
    rep = w;
    return false;
  };
  detail::ClassBuilder<decltype(take)> builder(f, take);
  builder.run();
  return *rep;
}

/// A fixed element mixing every block: quotient is the n-cycle i -> i+1 and
/// each block bijection is the k-cycle x -> x+1.
inline BlockPermutation mixing_element(int k, int n)
{
  std::vector<int> img(static_cast<std::size_t>(k * n));
  for (int b = 0; b < n; ++b) {
    for (int x = 0; x < k; ++x)
      img[static_cast<std::size_t>(b * k + x)] = ((b + 1) % n) * k + (x + 1) % k + 1;
  }
  return BlockPermutation::unchecked(k, std::move(img));
}

/// Formats as the image list `(12,10,11,...)`.
inline std::string to_string(BlockPermutation const &w)
{
  std::string s = "(";
  for (std::size_t i = 0; i < w.images().size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(w.images()[i]);
  }
  return s + ")";
}

inline std::ostream &operator<<(std::ostream &os, BlockPermutation const &w)
{ return os << to_string(w); }

inline BlockPermutation parse_block_permutation(std::string_view s, int k)
{
  std::size_t pos = 0;
  auto values = detail::parse_int_list(s, pos, '(', ')');
  detail::expect_end(s, pos);
  std::vector<int> img;
  for (long long v : values) {
    if (v < 1 || v > static_cast<long long>(values.size()))
      throw ParseError("image out of range in \"" + std::string(s) + "\"");
    img.push_back(static_cast<int>(v));
  }
  if (k <= 0 || img.size() % static_cast<std::size_t>(k) != 0)
    throw ParseError("image length is not a multiple of k");
  if (!is_permutation(img))
    throw ParseError("images do not form a bijection: \"" + std::string(s) + "\"");
  if (!is_block_permutation(img, k))
    throw ParseError("not a block permutation for k=" + std::to_string(k));
  return BlockPermutation(k, std::move(img));
}

} // namespace wreath
