#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "center.hpp"
#include "errors.hpp"
#include "family.hpp"

namespace wreath {

/// `k; Λ; Δ; Γ; r; coeff`, with Γ proper: one row of a universal product.
struct PolyRecord
{
  int k;
  PartitionFamily left, right, gamma;
  int r;
  BigInt coeff;
};

/// `k; n; Λ; Δ; Γ; coeff`: one coefficient of a product in the center at n.
struct GroupRecord
{
  int k;
  int n;
  PartitionFamily left, right, gamma;
  BigInt coeff;
};

using Record = std::variant<PolyRecord, GroupRecord>;

inline std::string format_record(PolyRecord const &r)
{
  return std::to_string(r.k) + "; " + to_string(r.left) + "; " + to_string(r.right) + "; " +
         to_string(r.gamma) + "; " + std::to_string(r.r) + "; " + r.coeff.str();
}

inline std::string format_record(GroupRecord const &r)
{
  return std::to_string(r.k) + "; " + std::to_string(r.n) + "; " + to_string(r.left) + "; " +
         to_string(r.right) + "; " + to_string(r.gamma) + "; " + r.coeff.str();
}

/// Splits on ';' outside braces; fields are trimmed.
inline std::vector<std::string> split_fields(std::string_view line)
{
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '{')
      ++depth;
    else if (c == '}')
      --depth;
    if (c == ';' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto &f : out) {
    auto b = f.find_first_not_of(" \t\r");
    auto e = f.find_last_not_of(" \t\r");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

namespace detail {

inline long long parse_whole(std::string const &s)
{
  std::size_t pos = 0;
  long long v = parse_int(s, pos);
  expect_end(s, pos);
  return v;
}

inline BigInt parse_bigint(std::string const &s)
{
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
    throw ParseError("bad integer \"" + s + "\"");
  try {
    return BigInt(s);
  } catch (std::exception const &) {
    throw ParseError("bad integer \"" + s + "\"");
  }
}

} // namespace detail

inline Record parse_record(std::string_view line)
{
  auto f = split_fields(line);
  if (f.size() != 6)
    throw ParseError("record needs 6 fields: \"" + std::string(line) + "\"");
  long long k = detail::parse_whole(f[0]);
  if (k <= 0 || k > 64)
    throw ParseError("bad k in record: \"" + std::string(line) + "\"");
  int const ki = static_cast<int>(k);
  if (!f[1].empty() && f[1].front() == '{') {
    PolyRecord r{ki, parse_family(f[1], ki), parse_family(f[2], ki), parse_family(f[3], ki),
                 static_cast<int>(detail::parse_whole(f[4])), detail::parse_bigint(f[5])};
    if (!is_proper_family(r.gamma) || r.r < 0)
      throw ParseError("row key must be a proper family and r >= 0: \"" + std::string(line) + "\"");
    return r;
  }
  long long n = detail::parse_whole(f[1]);
  if (n < 0)
    throw ParseError("bad n in record: \"" + std::string(line) + "\"");
  return GroupRecord{ki, static_cast<int>(n), parse_family(f[2], ki), parse_family(f[3], ki),
                     parse_family(f[4], ki), detail::parse_bigint(f[5])};
}

/// Universal product as rows (Γ proper, r).
inline std::vector<PolyRecord> poly_records(PartitionFamily const &left, PartitionFamily const &right,
                                            ClassSumVector const &product)
{
  std::map<std::pair<PartitionFamily, int>, BigInt> rows;
  for (auto const &[g, c] : product.terms()) {
    auto [gamma, r] = proper_reduction(g);
    rows[{gamma, r}] += c;
  }
  std::vector<PolyRecord> out;
  for (auto const &[key, c] : rows)
    out.push_back({left.k(), left, right, key.first, key.second, c});
  return out;
}

inline std::vector<GroupRecord> group_records(PartitionFamily const &left, PartitionFamily const &right,
                                              ClassSumVector const &product)
{
  std::vector<GroupRecord> out;
  for (auto const &[g, c] : product.terms())
    out.push_back({left.k(), *product.n(), left, right, g, c});
  return out;
}

/// Append-only file of records. Lines are deduplicated on load; two records
/// for the same coefficient with different values are an error.
class CoefficientCache
{
public:
  explicit CoefficientCache(std::filesystem::path path) : _path(std::move(path))
  {
    std::ifstream in(_path);
    if (!in)
      return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      try {
        insert(parse_record(line));
      } catch (ParseError const &e) {
        throw ParseError(_path.string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
  }

  std::filesystem::path const &path() const { return _path; }

  std::optional<ClassSumVector> universal(PartitionFamily const &left, PartitionFamily const &right) const
  {
    auto it = _universal.find({left, right});
    if (it == _universal.end())
      return std::nullopt;
    ClassSumVector v(left.k());
    for (auto const &[key, c] : it->second)
      v.add(pad_family(key.first, key.first.size() + key.second), c);
    return v;
  }

  std::optional<ClassSumVector> group(int n, PartitionFamily const &left, PartitionFamily const &right) const
  {
    auto it = _group.find({n, left, right});
    if (it == _group.end())
      return std::nullopt;
    auto v = ClassSumVector::group(left.k(), n);
    for (auto const &[g, c] : it->second)
      v.add(g, c);
    return v;
  }

  void store_universal(PartitionFamily const &left, PartitionFamily const &right, ClassSumVector const &product)
  {
    std::vector<Record> recs;
    for (auto &r : poly_records(left, right, product))
      recs.emplace_back(std::move(r));
    append(recs);
  }

  void store_group(PartitionFamily const &left, PartitionFamily const &right, ClassSumVector const &product)
  {
    std::vector<Record> recs;
    for (auto &r : group_records(left, right, product))
      recs.emplace_back(std::move(r));
    append(recs);
  }

private:
  using UniversalKey = std::pair<PartitionFamily, PartitionFamily>;
  using GroupKey = std::tuple<int, PartitionFamily, PartitionFamily>;

  template<typename Map, typename Key>
  static void put(Map &table, Key const &key, typename Map::mapped_type::key_type const &slot, BigInt const &c)
  {
    auto [it, fresh] = table[key].emplace(slot, c);
    if (!fresh && it->second != c)
      throw InvariantViolation("cache holds two values for one coefficient");
  }

  void insert(Record const &rec)
  {
    if (auto const *p = std::get_if<PolyRecord>(&rec))
      put(_universal, UniversalKey{p->left, p->right}, std::pair{p->gamma, p->r}, p->coeff);
    else {
      auto const &g = std::get<GroupRecord>(rec);
      if (g.gamma.size() != g.n || g.left.size() != g.n || g.right.size() != g.n)
        throw ParseError("group record families must have size n");
      put(_group, GroupKey{g.n, g.left, g.right}, g.gamma, g.coeff);
    }
  }

  void append(std::vector<Record> const &recs)
  {
    std::string block;
    for (auto const &r : recs) {
      insert(r);
      block += std::visit([](auto const &x) { return format_record(x); }, r) + "\n";
    }
    std::ofstream out(_path, std::ios::app);
    if (!out)
      throw std::runtime_error("cannot open cache file " + _path.string());
    out << block;
  }

  std::filesystem::path _path;
  std::map<UniversalKey, std::map<std::pair<PartitionFamily, int>, BigInt>> _universal;
  std::map<GroupKey, std::map<PartitionFamily, BigInt>> _group;
};

} // namespace wreath
