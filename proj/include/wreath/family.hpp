#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "partition.hpp"

namespace wreath {

/// The partitions of k used as family keys, (1^k) first and (k) last.
///
/// This is the order of the tuple notation (Λ(1^k), ..., Λ(k)) and of the
/// text format. The table for each k is built once and never modified.
inline std::vector<Partition> const &family_keys(int k)
{
  if (k <= 0)
    throw std::invalid_argument("k must be positive");
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<std::vector<Partition> const>> table;
  std::lock_guard lock(mtx);
  auto &slot = table[k];
  if (!slot) {
    auto keys = partitions_of(k);
    std::reverse(keys.begin(), keys.end());
    slot = std::make_unique<std::vector<Partition> const>(std::move(keys));
  }
  return *slot;
}

/// Index of rho among family_keys(k); throws if rho is not a partition of k.
inline std::size_t key_index(int k, Partition const &rho)
{
  auto const &keys = family_keys(k);
  auto it = std::find(keys.begin(), keys.end(), rho);
  if (it == keys.end()) {
    throw std::invalid_argument(to_string(rho) + " is not a partition of " +
                                std::to_string(k));
  }
  return static_cast<std::size_t>(it - keys.begin());
}

/// A family of partitions (Λ(λ))_{λ ⊢ k}; indexes conjugacy classes of S_k ≀ S_n.
///
/// Every key is always present; missing assignments are the empty partition,
/// so equality and ordering compare normalized values.
class PartitionFamily
{
public:
  explicit PartitionFamily(int k = 1)
    : _k(k), _comps(family_keys(k).size())
  {}

  PartitionFamily(int k, std::vector<std::pair<Partition, Partition>> const &assignment)
    : PartitionFamily(k)
  {
    for (auto const &[key, value] : assignment)
      set(key, value);
  }

  /// Builds a family from components listed in family_keys(k) order.
  static PartitionFamily from_components(int k, std::vector<Partition> comps)
  {
    PartitionFamily f(k);
    if (comps.size() != f._comps.size())
      throw std::invalid_argument("wrong number of family components");
    f._comps = std::move(comps);
    return f;
  }

  int k() const { return _k; }

  std::vector<Partition> const &components() const { return _comps; }
  Partition const &component(std::size_t idx) const { return _comps.at(idx); }
  Partition const &at(Partition const &key) const { return _comps[key_index(_k, key)]; }

  /// Λ(1^k).
  Partition const &identity_component() const { return _comps.front(); }

  void set(Partition const &key, Partition value)
  { _comps[key_index(_k, key)] = std::move(value); }

  void set_component(std::size_t idx, Partition value)
  { _comps.at(idx) = std::move(value); }

  int size() const
  {
    int s = 0;
    for (auto const &c : _comps)
      s += c.size();
    return s;
  }

  friend bool operator==(PartitionFamily const &, PartitionFamily const &) = default;

  /// Canonical order: by k, then size, then components in key order.
  friend std::strong_ordering operator<=>(PartitionFamily const &a, PartitionFamily const &b)
  {
    if (auto c = a._k <=> b._k; c != 0)
      return c;
    if (auto c = a.size() <=> b.size(); c != 0)
      return c;
    return a._comps <=> b._comps;
  }

private:
  int _k;
  std::vector<Partition> _comps;
};

inline int family_size(PartitionFamily const &f) { return f.size(); }

/// Proper when Λ(1^k) has no part equal to one.
inline bool is_proper_family(PartitionFamily const &f)
{ return is_proper(f.identity_component()); }

/// Λ(1^k) replaced by Λ(1^k) ∪ (1^{n-|Λ|}); other components unchanged.
inline PartitionFamily pad_family(PartitionFamily const &f, int n)
{
  if (n < f.size()) {
    throw TooSmall("cannot pad family of size " + std::to_string(f.size()) +
                   " to " + std::to_string(n));
  }
  PartitionFamily out = f;
  out.set_component(0, union_of(f.identity_component(), Partition::ones(n - f.size())));
  return out;
}

/// Splits Λ into its proper reduction Γ (ones removed from Λ(1^k)) and r = m_1(Λ(1^k)).
inline std::pair<PartitionFamily, int> proper_reduction(PartitionFamily const &f)
{
  PartitionFamily g = f;
  g.set_component(0, f.identity_component().proper_part());
  return {g, f.identity_component().multiplicity(1)};
}

/// Family with Λ(1^k) = (1^n) and every other component empty.
inline PartitionFamily identity_family(int k, int n)
{
  PartitionFamily f(k);
  f.set_component(0, Partition::ones(n));
  return f;
}

/// Z_Λ = Π_{λ ⊢ k} z_{Λ(λ)} z_λ^{l(Λ(λ))}.
inline BigInt big_z(PartitionFamily const &f)
{
  auto const &keys = family_keys(f.k());
  BigInt z = 1;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto const &c = f.component(i);
    z *= z_of(c) * power(z_of(keys[i]), c.length());
  }
  return z;
}

/// |B^k_{kn}| = (k!)^n n!.
inline BigInt group_order(int k, int n)
{ return power(factorial(k), n) * factorial(n); }

/// |C_Λ| = n!(k!)^n / Z_Λ.
inline BigInt class_size(PartitionFamily const &f, int n)
{
  if (f.size() != n) {
    throw SizeMismatch("family has size " + std::to_string(f.size()) +
                       ", expected " + std::to_string(n));
  }
  BigInt q, r;
  boost::multiprecision::divide_qr(group_order(f.k(), n), big_z(f), q, r);
  if (r != 0)
    throw InvariantViolation("class size formula is not integral");
  return q;
}

namespace detail {

inline void families_rec(std::size_t slot, int remaining, bool proper_only,
                         std::vector<Partition> &cur, int k,
                         std::vector<PartitionFamily> &out)
{
  auto const nkeys = family_keys(k).size();
  if (slot + 1 == nkeys) {
    for (auto const &p : partitions_of(remaining)) {
      if (proper_only && slot == 0 && !is_proper(p))
        continue;
      cur[slot] = p;
      out.push_back(PartitionFamily::from_components(k, cur));
    }
    return;
  }
  for (int s = 0; s <= remaining; ++s) {
    for (auto const &p : partitions_of(s)) {
      if (proper_only && slot == 0 && !is_proper(p))
        continue;
      cur[slot] = p;
      families_rec(slot + 1, remaining - s, proper_only, cur, k, out);
    }
  }
  cur[slot] = Partition();
}

} // namespace detail

/// Every family with |Λ| = n (only proper ones if requested), in canonical order.
inline std::vector<PartitionFamily> families_with_size(int k, int n, bool proper_only = false)
{
  std::vector<PartitionFamily> out;
  if (n < 0)
    return out;
  std::vector<Partition> cur(family_keys(k).size());
  detail::families_rec(0, n, proper_only, cur, k, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// `{[1,1]:[3,1]; [2]:[2]}`; empty components omitted, keys in family_keys order.
inline std::string to_string(PartitionFamily const &f)
{
  auto const &keys = family_keys(f.k());
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (f.component(i).empty())
      continue;
    if (!first)
      s += "; ";
    first = false;
    s += to_string(keys[i]) + ":" + to_string(f.component(i));
  }
  s += "}";
  return s;
}

inline std::ostream &operator<<(std::ostream &os, PartitionFamily const &f)
{ return os << to_string(f); }

namespace detail {

inline PartitionFamily parse_family_at(std::string_view s, std::size_t &pos, int k)
{
  PartitionFamily f(k);
  std::vector<bool> seen(family_keys(k).size(), false);
  expect(s, pos, '{');
  if (peek(s, pos, '}')) {
    ++pos;
    return f;
  }
  for (;;) {
    Partition key = parse_partition_at(s, pos);
    if (key.size() != k) {
      throw ParseError("family key " + to_string(key) + " is not a partition of " +
                       std::to_string(k));
    }
    auto idx = key_index(k, key);
    if (seen[idx])
      throw ParseError("duplicate family key " + to_string(key));
    seen[idx] = true;
    expect(s, pos, ':');
    f.set_component(idx, parse_partition_at(s, pos));
    if (peek(s, pos, ';')) {
      ++pos;
      continue;
    }
    expect(s, pos, '}');
    return f;
  }
}

} // namespace detail

/// Parses the family text format; keys must be partitions of k.
inline PartitionFamily parse_family(std::string_view s, int k)
{
  std::size_t pos = 0;
  auto f = detail::parse_family_at(s, pos, k);
  detail::expect_end(s, pos);
  return f;
}

} // namespace wreath
