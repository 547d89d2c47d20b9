#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "wreath/cli.hpp"

int main(int argc, char **argv)
{
  using namespace wreath::cli;
  JobSpec job;
  CLI::App app{"Class sums of S_k wreath S_n: products, polynomial structure constants, characters"};
  app.require_subcommand(1);

  int k = 1;
  int n = -1;
  std::string left, right, gamma, cache;
  bool json = false, verify = false;
  unsigned threads = 0;
  std::uint64_t budget = 10'000'000;

  auto common = [&](CLI::App *sub, bool wants_n, bool wants_pair) {
    sub->add_option("--k", k, "block size k")->required()->check(CLI::PositiveNumber);
    if (wants_n)
      sub->add_option("--n", n, "number of blocks")->check(CLI::NonNegativeNumber);
    if (wants_pair) {
      sub->add_option("--left", left, "left family, e.g. \"{[1]:[2]}\"")->required();
      sub->add_option("--right", right, "right family")->required();
    }
    sub->add_flag("--json", json, "print a JSON array instead of records");
    sub->add_option("--cache", cache, "coefficient cache file (default: $WREATH_CACHE)");
    sub->add_option("--threads", threads, "worker threads, 0 for all cores");
    sub->add_option("--max-group-size", budget, "largest set the tool may enumerate");
    sub->add_flag("--verify-representative", verify, "recount every coefficient with a second representative");
  };

  auto *classes = app.add_subcommand("classes", "conjugacy classes of B^k_kn with their sizes");
  common(classes, true, false);
  classes->get_option("--n")->required();
  auto *multiply = app.add_subcommand("multiply", "product of two class sums in the center at n");
  common(multiply, true, true);
  multiply->get_option("--n")->required();
  auto *universal = app.add_subcommand("universal", "product of two class sums of k-partial permutations");
  common(universal, false, true);
  auto *poly = app.add_subcommand("poly", "structure constants as polynomials in n (binomial basis)");
  common(poly, true, true);
  poly->add_option("--gamma", gamma, "only rows for this proper family");
  auto *chartable = app.add_subcommand("chartable", "irreducible character table for k = 1 or 2");
  common(chartable, true, false);
  chartable->get_option("--n")->required();
  auto *verify_cmd = app.add_subcommand("verify", "check the shifted symmetric function isomorphism");
  common(verify_cmd, false, true);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : invalid_input;
  }

  job.command = app.get_subcommands().front()->get_name();
  job.k = k;
  if (n >= 0)
    job.n = n;
  if (!left.empty())
    job.left = left;
  if (!right.empty())
    job.right = right;
  if (!gamma.empty())
    job.gamma = gamma;
  if (!cache.empty())
    job.cache = cache;
  else if (char const *env = std::getenv("WREATH_CACHE"))
    job.cache = std::string(env);
  job.json = json;
  job.threads = threads;
  job.max_group_size = budget;
  job.verify_representative = verify;
  return run(job, std::cout, std::cerr);
}
