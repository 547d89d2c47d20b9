#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "blockperm.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "kpartial.hpp"
#include "numeric.hpp"

namespace wreath {

struct ComputeOptions
{
  Budget budget;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// Recount every coefficient against a second representative of the target class.
  bool verify_representative = false;
};

/// Sparse integer combination of class sums C_Γ, either in I_∞^k (universal)
/// or in the center of C[B^k_{kn}] (group context, every key of size n).
class ClassSumVector
{
public:
  explicit ClassSumVector(int k) : _k(k) {}

  static ClassSumVector group(int k, int n)
  {
    ClassSumVector v(k);
    v._n = n;
    return v;
  }

  int k() const { return _k; }
  bool is_universal() const { return !_n.has_value(); }
  std::optional<int> n() const { return _n; }

  std::map<PartitionFamily, BigInt> const &terms() const { return _terms; }
  bool empty() const { return _terms.empty(); }

  BigInt coefficient(PartitionFamily const &f) const
  {
    auto it = _terms.find(f);
    return it == _terms.end() ? BigInt(0) : it->second;
  }

  void add(PartitionFamily const &f, BigInt const &c)
  {
    if (f.k() != _k)
      throw DimensionMismatch("class label has the wrong k");
    if (_n && f.size() != *_n)
      throw SizeMismatch("class label " + to_string(f) + " does not have size " + std::to_string(*_n));
    if (c == 0)
      return;
    auto &slot = _terms[f];
    slot += c;
    if (slot == 0)
      _terms.erase(f);
  }

  friend bool operator==(ClassSumVector const &, ClassSumVector const &) = default;

private:
  int _k;
  std::optional<int> _n;
  std::map<PartitionFamily, BigInt> _terms;
};

/// `3*{[1]:[3]} + 2*{[1]:[2,2]}`; terms in canonical family order.
inline std::string to_string(ClassSumVector const &v)
{
  if (v.empty())
    return "0";
  std::string s;
  for (auto const &[f, c] : v.terms()) {
    if (!s.empty())
      s += " + ";
    s += c.str() + "*" + to_string(f);
  }
  return s;
}

inline std::ostream &operator<<(std::ostream &os, ClassSumVector const &v)
{ return os << to_string(v); }

inline int deg(PartitionFamily const &f) { return f.size(); }

inline int deg1(PartitionFamily const &f)
{ return f.size() + f.identity_component().multiplicity(1); }

/// binom(n-|Λ|+m₁, m₁): the multiplicity of C_{Λ̲_n} in ψ(C_{Λ;n}); zero when |Λ| > n.
inline BigInt projection_factor(PartitionFamily const &f, int n)
{
  if (f.size() > n)
    return 0;
  int const m1 = f.identity_component().multiplicity(1);
  return binomial(n - f.size() + m1, m1);
}

namespace detail {

inline unsigned resolve_threads(unsigned requested)
{
  if (requested == 0)
    requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers; rethrows the first error.
template<typename F>
void parallel_for(std::size_t count, unsigned threads, F &&body)
{
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mtx;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next++;
        if (i >= count)
          return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mtx);
          if (!failure)
            failure = std::current_exception();
          next = count;
          return;
        }
      }
    });
  }
  for (auto &th : pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
}

/// A conjugate of w different from w, if one of a few fixed conjugators moves it.
inline std::optional<BlockPermutation> second_representative(BlockPermutation const &w)
{
  int const k = w.k(), n = w.n();
  std::vector<BlockPermutation> conjugators{mixing_element(k, n)};
  if (n >= 2) {
    std::vector<int> swap(static_cast<std::size_t>(k * n));
    std::iota(swap.begin(), swap.end(), 1);
    for (int x = 0; x < k; ++x)
      std::swap(swap[static_cast<std::size_t>(x)], swap[static_cast<std::size_t>(k + x)]);
    conjugators.push_back(BlockPermutation::unchecked(k, swap));
  }
  if (k >= 2 && n >= 1) {
    std::vector<int> swap(static_cast<std::size_t>(k * n));
    std::iota(swap.begin(), swap.end(), 1);
    std::swap(swap[0], swap[1]);
    conjugators.push_back(BlockPermutation::unchecked(k, swap));
  }
  for (auto const &c : conjugators) {
    auto other = conjugate(c, w);
    if (other != w)
      return other;
  }
  return std::nullopt;
}

inline std::uint64_t count_group_factorizations(std::vector<int> const &members, int k, int degree,
                                                BlockPermutation const &z,
                                                PartitionFamily const &right)
{
  std::uint64_t count = 0;
  auto const d = static_cast<std::size_t>(degree);
  std::vector<int> inv(d), y(d);
  for (std::size_t off = 0; off < members.size(); off += d) {
    for (std::size_t i = 0; i < d; ++i)
      inv[static_cast<std::size_t>(members[off + i] - 1)] = static_cast<int>(i) + 1;
    for (std::size_t i = 0; i < d; ++i)
      y[i] = inv[static_cast<std::size_t>(z.images()[i] - 1)];
    if (type_of_images(y, k) == right)
      ++count;
  }
  return count;
}

} // namespace detail

/// C_Λ C_Δ in the center of C[B^k_{kn}] by direct counting: for a fixed z in
/// each class C_Γ, the coefficient is #{x ∈ C_Λ : x⁻¹z ∈ C_Δ}.
inline ClassSumVector multiply_group(PartitionFamily const &left, PartitionFamily const &right,
                                     int n, ComputeOptions const &opts = {})
{
  if (left.k() != right.k())
    throw DimensionMismatch("factors have different k");
  if (left.size() != n || right.size() != n)
    throw SizeMismatch("group product needs both factors of size " + std::to_string(n));
  int const k = left.k();
  opts.budget.check("group B^" + std::to_string(k) + "_" + std::to_string(k * n), group_order(k, n));

  std::vector<int> members;
  for_each_class_element(left, n, [&](BlockPermutation const &x) {
    members.insert(members.end(), x.images().begin(), x.images().end());
  }, opts.budget);

  auto const targets = families_with_size(k, n);
  std::vector<std::uint64_t> coeffs(targets.size(), 0);
  detail::parallel_for(targets.size(), opts.threads, [&](std::size_t i) {
    auto const z = class_representative(targets[i]);
    coeffs[i] = detail::count_group_factorizations(members, k, k * n, z, right);
    if (opts.verify_representative) {
      if (auto z2 = detail::second_representative(z)) {
        auto again = detail::count_group_factorizations(members, k, k * n, *z2, right);
        if (again != coeffs[i]) {
          throw InvariantViolation("coefficient of " + to_string(targets[i]) +
                                   " depends on the representative");
        }
      }
    }
  });

  auto out = ClassSumVector::group(k, n);
  for (std::size_t i = 0; i < targets.size(); ++i)
    out.add(targets[i], coeffs[i]);
  return out;
}

namespace detail {

/// Number of pairs (p₁, p₂) ∈ C_Λ × C_Δ with p₁p₂ equal to the target.
///
/// p₁ runs over the members of C_Λ with domain inside d (given as elements of
/// B^k_{k|Λ|} to be embedded). The quotient μ = ω₁⁻¹ω on d then fixes p₂ up to
/// which μ-fixed blocks of d₁ it also contains.
inline std::uint64_t count_universal_factorizations(std::vector<BlockPermutation> const &left_members,
                                                    int left_size, PartitionFamily const &right,
                                                    KPartialPermutation const &target)
{
  int const k = target.k();
  int const r = target.domain_size();
  auto const t = target.compressed();
  auto const &timg = t.images();
  std::uint64_t count = 0;
  std::vector<int> x(static_cast<std::size_t>(k * r)), xinv(x.size()), mu(x.size());
  std::vector<bool> in_left(static_cast<std::size_t>(r));

  for_each_subset(r, left_size, [&](std::vector<int> const &chosen) {
    std::fill(in_left.begin(), in_left.end(), false);
    for (int b : chosen)
      in_left[static_cast<std::size_t>(b - 1)] = true;
    for (auto const &w : left_members) {
      std::iota(x.begin(), x.end(), 1);
      for (std::size_t i = 0; i < w.images().size(); ++i) {
        int const v = w.images()[i] - 1;
        int const src = (chosen[i / static_cast<std::size_t>(k)] - 1) * k + static_cast<int>(i) % k;
        x[static_cast<std::size_t>(src)] = (chosen[static_cast<std::size_t>(v / k)] - 1) * k + v % k + 1;
      }
      for (std::size_t i = 0; i < x.size(); ++i)
        xinv[static_cast<std::size_t>(x[i] - 1)] = static_cast<int>(i) + 1;
      for (std::size_t i = 0; i < x.size(); ++i)
        mu[i] = xinv[static_cast<std::size_t>(timg[i] - 1)];

      int forced = 0, free_blocks = 0;
      for (int b = 0; b < r; ++b) {
        bool trivial = true;
        for (int j = 0; j < k; ++j) {
          if (mu[static_cast<std::size_t>(b * k + j)] != b * k + j + 1) {
            trivial = false;
            break;
          }
        }
        if (trivial && in_left[static_cast<std::size_t>(b)])
          ++free_blocks;
        else
          ++forced;
      }
      int const extra = right.size() - forced;
      if (extra < 0 || extra > free_blocks)
        continue;
      auto mu_type = type_of_images(mu, k);
      int const drop = free_blocks - extra;
      auto const &ones = mu_type.identity_component();
      if (ones.multiplicity(1) < drop)
        continue;
      mu_type.set_component(0, subtract(ones, Partition::ones(drop)));
      if (mu_type == right)
        count += to_u64(binomial(free_blocks, extra));
    }
    return true;
  });
  return count;
}

inline KPartialPermutation universal_representative(PartitionFamily const &f, std::vector<int> blocks)
{ return KPartialPermutation::embed(class_representative(f), std::move(blocks)); }

} // namespace detail

/// C_Λ C_Δ in I_∞^k, computed at the finite stage N = |Λ| + |Δ|.
///
/// Only Γ with max(|Λ|,|Δ|) ≤ |Γ| ≤ |Λ|+|Δ| can occur; for each, the
/// coefficient counts factorizations of one fixed member of C_{Γ;N}.
inline ClassSumVector multiply_universal(PartitionFamily const &left, PartitionFamily const &right,
                                         ComputeOptions const &opts = {})
{
  if (left.k() != right.k())
    throw DimensionMismatch("factors have different k");
  int const k = left.k();
  int const stage = left.size() + right.size();
  opts.budget.check("partial class " + to_string(left), partial_class_size(left, stage));
  opts.budget.check("partial class " + to_string(right), partial_class_size(right, stage));

  auto const left_members = enumerate_class(left, left.size(), opts.budget);
  std::vector<PartitionFamily> targets;
  for (int s = std::max(left.size(), right.size()); s <= stage; ++s) {
    auto fams = families_with_size(k, s);
    targets.insert(targets.end(), fams.begin(), fams.end());
  }

  std::vector<std::uint64_t> coeffs(targets.size(), 0);
  detail::parallel_for(targets.size(), opts.threads, [&](std::size_t i) {
    int const size = targets[i].size();
    std::vector<int> blocks(static_cast<std::size_t>(size));
    std::iota(blocks.begin(), blocks.end(), 1);
    auto const rep = detail::universal_representative(targets[i], blocks);
    coeffs[i] = detail::count_universal_factorizations(left_members, left.size(), right, rep);
    if (opts.verify_representative) {
      // Shift the domain to the top of [N] and conjugate ω.
      std::iota(blocks.begin(), blocks.end(), stage - size + 1);
      auto w = class_representative(targets[i]);
      auto moved = detail::second_representative(w).value_or(w);
      auto const rep2 = KPartialPermutation::embed(moved, blocks);
      auto again = detail::count_universal_factorizations(left_members, left.size(), right, rep2);
      if (again != coeffs[i]) {
        throw InvariantViolation("universal coefficient of " + to_string(targets[i]) +
                                 " depends on the representative");
      }
    }
  });

  ClassSumVector out(k);
  for (std::size_t i = 0; i < targets.size(); ++i)
    out.add(targets[i], coeffs[i]);
  return out;
}

/// ψ ∘ Proj_n: C_Γ ↦ binom(n-|Γ|+m₁, m₁) C_{Γ̲_n}, dropping |Γ| > n.
inline ClassSumVector project(ClassSumVector const &v, int n)
{
  if (!v.is_universal())
    throw std::invalid_argument("project expects a universal class-sum vector");
  auto out = ClassSumVector::group(v.k(), n);
  for (auto const &[f, c] : v.terms()) {
    if (f.size() > n)
      continue;
    out.add(pad_family(f, n), c * projection_factor(f, n));
  }
  return out;
}

/// Structure coefficients of C_{Λ̲_n} C_{Δ̲_n} as polynomials in n, in the
/// binomial basis: coeff of C_{Γ̲_n} = Σ_r rows[(Γ, r)] binom(n-|Γ|, r).
class PolynomialStructure
{
public:
  using Key = std::pair<PartitionFamily, int>;

  PolynomialStructure(PartitionFamily left, PartitionFamily right)
    : _left(std::move(left)), _right(std::move(right))
  {}

  /// Reads the rows off a universal product C_Λ C_Δ.
  static PolynomialStructure from_universal(PartitionFamily left, PartitionFamily right,
                                            ClassSumVector const &product)
  {
    PolynomialStructure out(std::move(left), std::move(right));
    for (auto const &[f, c] : product.terms()) {
      auto [gamma, r] = proper_reduction(f);
      out.add_row(gamma, r, c);
    }
    return out;
  }

  PartitionFamily const &left() const { return _left; }
  PartitionFamily const &right() const { return _right; }
  std::map<Key, BigInt> const &rows() const { return _rows; }

  void add_row(PartitionFamily const &gamma, int r, BigInt const &c)
  {
    if (c != 0)
      _rows[{gamma, r}] += c;
  }

  BigInt row(PartitionFamily const &gamma, int r) const
  {
    auto it = _rows.find({gamma, r});
    return it == _rows.end() ? BigInt(0) : it->second;
  }

  /// Proper families Γ that have at least one row.
  std::vector<PartitionFamily> gammas() const
  {
    std::vector<PartitionFamily> out;
    for (auto const &[key, c] : _rows) {
      if (out.empty() || out.back() != key.first)
        out.push_back(key.first);
    }
    return out;
  }

  BigInt evaluate(PartitionFamily const &gamma, int n) const
  {
    if (n < gamma.size()) {
      throw TooSmall("cannot evaluate at n=" + std::to_string(n) + " below |Γ|=" +
                     std::to_string(gamma.size()));
    }
    BigInt total = 0;
    for (auto it = _rows.lower_bound({gamma, 0}); it != _rows.end() && it->first.first == gamma; ++it)
      total += it->second * binomial(n - gamma.size(), it->first.second);
    return total;
  }

  /// Every coefficient at a given n, as a group-context vector.
  ClassSumVector evaluate_all(int n) const
  {
    auto out = ClassSumVector::group(_left.k(), n);
    for (auto const &g : gammas()) {
      if (g.size() <= n)
        out.add(pad_family(g, n), evaluate(g, n));
    }
    return out;
  }

private:
  PartitionFamily _left;
  PartitionFamily _right;
  std::map<Key, BigInt> _rows;
};

inline PolynomialStructure polynomial_structure(PartitionFamily const &left,
                                                PartitionFamily const &right,
                                                ComputeOptions const &opts = {})
{
  if (!is_proper_family(left) || !is_proper_family(right))
    throw NotProper("polynomial structure needs proper families");
  return PolynomialStructure::from_universal(left, right, multiply_universal(left, right, opts));
}

/// max(|Λ|,|Δ|) ≤ |Γ|, deg(Γ) ≤ deg(Λ)+deg(Δ) and deg₁(Γ) ≤ deg₁(Λ)+deg₁(Δ)
/// for every key Γ of a universal product.
inline bool respects_filtrations(PartitionFamily const &left, PartitionFamily const &right,
                                 ClassSumVector const &product)
{
  for (auto const &[g, c] : product.terms()) {
    if (deg(g) > deg(left) + deg(right) || deg1(g) > deg1(left) + deg1(right))
      return false;
    if (g.size() < std::max(left.size(), right.size()))
      return false;
  }
  return true;
}

} // namespace wreath
