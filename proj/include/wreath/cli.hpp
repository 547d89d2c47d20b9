#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cache.hpp"
#include "center.hpp"
#include "characters.hpp"
#include "errors.hpp"
#include "family.hpp"

namespace wreath::cli {

enum ExitCode : int
{
  ok = 0,
  invalid_input = 1,
  budget_exceeded = 2,
  invariant_violation = 3,
};

/// One invocation of the command-line tool. Families stay as text here and
/// are parsed by run(), so malformed input maps to exit code 1.
struct JobSpec
{
  std::string command;
  int k = 1;
  std::optional<int> n;
  std::optional<std::string> left;
  std::optional<std::string> right;
  std::optional<std::string> gamma;
  bool json = false;
  std::optional<std::string> cache;
  unsigned threads = 0;
  std::uint64_t max_group_size = 10'000'000;
  bool verify_representative = false;
};

inline std::vector<std::string> const &commands()
{
  static std::vector<std::string> const names{"classes", "multiply", "universal", "poly", "chartable", "verify"};
  return names;
}

namespace detail {

using nlohmann::json;

class UsageError : public Error
{
public:
  using Error::Error;
};

inline json number(BigInt const &v)
{
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline PartitionFamily family_arg(std::optional<std::string> const &text, char const *flag, int k)
{
  if (!text)
    throw UsageError(std::string("missing --") + flag);
  return parse_family(*text, k);
}

inline int n_arg(JobSpec const &job)
{
  if (!job.n)
    throw UsageError("missing --n");
  if (*job.n < 0)
    throw UsageError("--n must be nonnegative");
  return *job.n;
}

inline ComputeOptions options(JobSpec const &job)
{
  ComputeOptions o;
  o.budget.max_group_size = job.max_group_size;
  o.threads = job.threads;
  o.verify_representative = job.verify_representative;
  return o;
}

inline std::optional<CoefficientCache> open_cache(JobSpec const &job)
{
  if (job.cache && !job.cache->empty())
    return CoefficientCache(*job.cache);
  return std::nullopt;
}

inline ClassSumVector universal_product(JobSpec const &job, PartitionFamily const &left,
                                        PartitionFamily const &right)
{
  auto cache = open_cache(job);
  if (cache) {
    if (auto hit = cache->universal(left, right))
      return *hit;
  }
  auto v = multiply_universal(left, right, options(job));
  if (cache)
    cache->store_universal(left, right, v);
  return v;
}

inline void run_classes(JobSpec const &job, std::ostream &out)
{
  int const n = n_arg(job);
  json arr = json::array();
  for (auto const &f : families_with_size(job.k, n)) {
    auto size = class_size(f, n);
    if (job.json)
      arr.push_back({{"family", to_string(f)}, {"size", number(size)}});
    else
      out << job.k << "; " << n << "; " << to_string(f) << "; " << size << "\n";
  }
  if (job.json)
    out << arr.dump(2) << "\n";
}

inline void run_multiply(JobSpec const &job, std::ostream &out)
{
  int const n = n_arg(job);
  auto left = family_arg(job.left, "left", job.k);
  auto right = family_arg(job.right, "right", job.k);
  left = pad_family(left, n);
  right = pad_family(right, n);

  auto cache = open_cache(job);
  std::optional<ClassSumVector> product;
  if (cache)
    product = cache->group(n, left, right);
  if (!product) {
    product = multiply_group(left, right, n, options(job));
    if (cache)
      cache->store_group(left, right, *product);
  }

  json arr = json::array();
  for (auto const &r : group_records(left, right, *product)) {
    if (job.json)
      arr.push_back({{"gamma", to_string(r.gamma)}, {"coeff", number(r.coeff)}});
    else
      out << format_record(r) << "\n";
  }
  if (job.json)
    out << arr.dump(2) << "\n";
}

inline void run_universal(JobSpec const &job, std::ostream &out)
{
  auto left = family_arg(job.left, "left", job.k);
  auto right = family_arg(job.right, "right", job.k);
  auto product = universal_product(job, left, right);
  json arr = json::array();
  for (auto const &[g, c] : product.terms()) {
    if (job.json) {
      arr.push_back({{"gamma", to_string(g)}, {"coeff", number(c)}});
    } else {
      out << job.k << "; " << to_string(left) << "; " << to_string(right) << "; " << to_string(g) << "; " << c
          << "\n";
    }
  }
  if (job.json)
    out << arr.dump(2) << "\n";
}

inline void run_poly(JobSpec const &job, std::ostream &out)
{
  auto left = family_arg(job.left, "left", job.k);
  auto right = family_arg(job.right, "right", job.k);
  if (!is_proper_family(left) || !is_proper_family(right))
    throw NotProper("poly needs proper families (no part 1 at the key [1,...,1])");
  std::optional<PartitionFamily> gamma;
  if (job.gamma) {
    gamma = parse_family(*job.gamma, job.k);
    if (!is_proper_family(*gamma))
      throw NotProper("--gamma must be a proper family");
  }
  auto structure = PolynomialStructure::from_universal(left, right, universal_product(job, left, right));

  json arr = json::array();
  if (job.n) {
    // Evaluate at n: the coefficients of the padded product.
    int const n = n_arg(job);
    auto lp = pad_family(left, n), rp = pad_family(right, n);
    auto values = structure.evaluate_all(n);
    for (auto const &[padded, c] : values.terms()) {
      if (gamma && proper_reduction(padded).first != *gamma)
        continue;
      GroupRecord r{job.k, n, lp, rp, padded, c};
      if (job.json)
        arr.push_back({{"gamma", to_string(r.gamma)}, {"coeff", number(r.coeff)}});
      else
        out << format_record(r) << "\n";
    }
  } else {
    for (auto const &[key, c] : structure.rows()) {
      if (gamma && key.first != *gamma)
        continue;
      if (job.json)
        arr.push_back({{"gamma", to_string(key.first)}, {"r", key.second}, {"coeff", number(c)}});
      else
        out << format_record(PolyRecord{job.k, left, right, key.first, key.second, c}) << "\n";
    }
  }
  if (job.json)
    out << arr.dump(2) << "\n";
}

inline void run_chartable(JobSpec const &job, std::ostream &out)
{
  int const n = n_arg(job);
  json arr = json::array();
  auto emit = [&](std::string const &rho, std::string const &delta, BigInt const &v) {
    if (job.json)
      arr.push_back({{"rho", rho}, {"delta", delta}, {"value", number(v)}});
    else
      out << n << "; " << rho << "; " << delta << "; " << v << "\n";
  };
  if (job.k == 1) {
    auto parts = partitions_of(n);
    std::reverse(parts.begin(), parts.end());
    for (auto const &rho : parts) {
      for (auto const &delta : parts)
        emit(to_string(rho), to_string(delta), sym_character(rho, delta));
    }
  } else if (job.k == 2) {
    auto bips = bipartitions_of(n);
    for (auto const &rho : bips) {
      for (auto const &delta : bips)
        emit(to_string(rho), to_string(delta), hyperoct_character(rho, delta));
    }
  } else {
    throw UsageError("chartable supports --k 1 and --k 2");
  }
  if (job.json)
    out << arr.dump(2) << "\n";
}

/// Returns false when the transported identity fails at some point.
inline bool run_verify(JobSpec const &job, std::ostream &out)
{
  if (job.k != 1 && job.k != 2)
    throw UsageError("verify supports --k 1 and --k 2");
  auto left = family_arg(job.left, "left", job.k);
  auto right = family_arg(job.right, "right", job.k);
  bool good = verify_iso(job.k, left, right, options(job));
  int const top = left.size() + right.size() + 2;
  if (job.json) {
    json arr = json::array();
    arr.push_back({{"left", to_string(left)}, {"right", to_string(right)}, {"max_size", top}, {"ok", good}});
    out << arr.dump(2) << "\n";
  } else {
    out << job.k << "; " << to_string(left) << "; " << to_string(right) << "; " << top << "; "
        << (good ? "ok" : "FAILED") << "\n";
  }
  return good;
}

} // namespace detail

/// Executes one job. Results go to out, diagnostics to err; returns the exit code.
inline int run(JobSpec const &job, std::ostream &out, std::ostream &err)
{
  try {
    if (job.k <= 0)
      throw detail::UsageError("--k must be positive");
    if (job.command == "classes")
      detail::run_classes(job, out);
    else if (job.command == "multiply")
      detail::run_multiply(job, out);
    else if (job.command == "universal")
      detail::run_universal(job, out);
    else if (job.command == "poly")
      detail::run_poly(job, out);
    else if (job.command == "chartable")
      detail::run_chartable(job, out);
    else if (job.command == "verify") {
      if (!detail::run_verify(job, out)) {
        err << "error: isomorphism check failed\n";
        return invariant_violation;
      }
    } else {
      throw detail::UsageError("unknown command \"" + job.command + "\"");
    }
    return ok;
  } catch (BudgetExceeded const &e) {
    err << "budget-exceeded kind=\"" << e.kind << "\" required=" << e.required << " limit=" << e.limit << "\n";
    return budget_exceeded;
  } catch (InvariantViolation const &e) {
    err << "error: invariant violation: " << e.what() << "\n";
    return invariant_violation;
  } catch (Error const &e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  } catch (std::invalid_argument const &e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  }
}

} // namespace wreath::cli
