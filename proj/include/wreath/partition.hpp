#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace wreath {

/// Integer partition stored as its weakly decreasing list of parts.
///
/// The part list is the only stored state; multiplicities, size and length
/// are computed from it on demand.
class Partition
{
public:
  Partition() = default;

  /// Accepts parts in any order; they are sorted into decreasing order.
  explicit Partition(std::vector<int> parts) : _parts(std::move(parts))
  {
    for (int p : _parts) {
      if (p <= 0)
        throw std::invalid_argument("partition parts must be positive");
    }
    std::sort(_parts.begin(), _parts.end(), std::greater<>());
  }

  Partition(std::initializer_list<int> parts)
    : Partition(std::vector<int>(parts))
  {}

  /// Partition (1^m).
  static Partition ones(int m)
  { return m <= 0 ? Partition() : Partition(std::vector<int>(m, 1)); }

  std::vector<int> const &parts() const { return _parts; }

  int size() const { return std::accumulate(_parts.begin(), _parts.end(), 0); }
  int length() const { return static_cast<int>(_parts.size()); }
  bool empty() const { return _parts.empty(); }

  int multiplicity(int i) const
  { return static_cast<int>(std::count(_parts.begin(), _parts.end(), i)); }

  int largest() const { return _parts.empty() ? 0 : _parts.front(); }

  /// Part i (0-based) or 0 past the end; handy for diagram arithmetic.
  int part(int i) const
  { return i < length() ? _parts[static_cast<std::size_t>(i)] : 0; }

  /// The partition with all parts equal to one removed.
  Partition proper_part() const
  {
    Partition out;
    for (int p : _parts) {
      if (p > 1)
        out._parts.push_back(p);
    }
    return out;
  }

  friend bool operator==(Partition const &, Partition const &) = default;
  friend auto operator<=>(Partition const &, Partition const &) = default;

private:
  std::vector<int> _parts;
};

/// Multiset union: multiplicities add.
inline Partition union_of(Partition const &a, Partition const &b)
{
  std::vector<int> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return Partition(std::move(parts));
}

/// Multiset difference a \ b; throws NotContained when b is not a sub-multiset.
inline Partition subtract(Partition const &a, Partition const &b)
{
  std::vector<int> rest = a.parts();
  for (int p : b.parts()) {
    auto it = std::find(rest.begin(), rest.end(), p);
    if (it == rest.end())
      throw NotContained("partition does not contain part " + std::to_string(p));
    rest.erase(it);
  }
  return Partition(std::move(rest));
}

inline bool is_proper(Partition const &a) { return a.multiplicity(1) == 0; }

/// a ∪ (1^{n-|a|}).
inline Partition pad_to(Partition const &a, int n)
{
  if (n < a.size()) {
    throw TooSmall("cannot pad partition of size " + std::to_string(a.size()) +
                   " to " + std::to_string(n));
  }
  return union_of(a, Partition::ones(n - a.size()));
}

/// z_λ = Π_r r^{m_r} m_r!, the centralizer order of cycle type λ in S_|λ|.
inline BigInt z_of(Partition const &a)
{
  BigInt z = 1;
  auto const &parts = a.parts();
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i])
      ++j;
    auto m = static_cast<std::int64_t>(j - i);
    z *= power(parts[i], m) * factorial(m);
    i = j;
  }
  return z;
}

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int> &cur,
                           std::vector<Partition> &out)
{
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

} // namespace detail

/// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> partitions_of(int n)
{
  std::vector<Partition> out;
  if (n < 0)
    return out;
  std::vector<int> cur;
  detail::partitions_rec(n, n, cur, out);
  return out;
}

/// Formats as `[3,1,1]`; the empty partition is `[]`.
inline std::string to_string(Partition const &a)
{
  std::string s = "[";
  for (std::size_t i = 0; i < a.parts().size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(a.parts()[i]);
  }
  s += ']';
  return s;
}

inline std::ostream &operator<<(std::ostream &os, Partition const &a)
{ return os << to_string(a); }

namespace detail {

inline void skip_ws(std::string_view s, std::size_t &pos)
{
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
    ++pos;
}

inline void expect(std::string_view s, std::size_t &pos, char c)
{
  skip_ws(s, pos);
  if (pos >= s.size() || s[pos] != c) {
    throw ParseError(std::string("expected '") + c + "' at offset " +
                     std::to_string(pos) + " in \"" + std::string(s) + "\"");
  }
  ++pos;
}

inline bool peek(std::string_view s, std::size_t &pos, char c)
{
  skip_ws(s, pos);
  return pos < s.size() && s[pos] == c;
}

inline long long parse_int(std::string_view s, std::size_t &pos)
{
  skip_ws(s, pos);
  std::size_t start = pos;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))
    ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (start == pos || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) {
    throw ParseError("expected integer at offset " + std::to_string(start) +
                     " in \"" + std::string(s) + "\"");
  }
  try {
    return std::stoll(std::string(s.substr(start, pos - start)));
  } catch (std::out_of_range const &) {
    throw ParseError("integer out of range in \"" + std::string(s) + "\"");
  }
}

/// Parses `[a,b,...]` starting at pos (a list of integers in brackets).
inline std::vector<long long> parse_int_list(std::string_view s, std::size_t &pos,
                                             char open, char close)
{
  std::vector<long long> out;
  expect(s, pos, open);
  if (peek(s, pos, close)) {
    ++pos;
    return out;
  }
  for (;;) {
    out.push_back(parse_int(s, pos));
    if (peek(s, pos, ',')) {
      ++pos;
      continue;
    }
    expect(s, pos, close);
    return out;
  }
}

inline Partition parse_partition_at(std::string_view s, std::size_t &pos)
{
  auto values = parse_int_list(s, pos, '[', ']');
  std::vector<int> parts;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0 || values[i] > 1'000'000)
      throw ParseError("partition parts must be positive: \"" + std::string(s) + "\"");
    if (i && values[i] > values[i - 1])
      throw ParseError("partition parts must be weakly decreasing: \"" +
                       std::string(s) + "\"");
    parts.push_back(static_cast<int>(values[i]));
  }
  return Partition(std::move(parts));
}

inline void expect_end(std::string_view s, std::size_t &pos)
{
  skip_ws(s, pos);
  if (pos != s.size())
    throw ParseError("trailing characters in \"" + std::string(s) + "\"");
}

} // namespace detail

inline Partition parse_partition(std::string_view s)
{
  std::size_t pos = 0;
  Partition p = detail::parse_partition_at(s, pos);
  detail::expect_end(s, pos);
  return p;
}

} // namespace wreath
