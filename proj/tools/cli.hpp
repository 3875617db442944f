#pragma once

// Command-line front end.  run_cli() is the whole program minus process
// plumbing so the integration tests can drive it in-process.
//
// Exit codes: 0 success or verified, 1 violation found, 2 usage error,
// 3 inconclusive (precision or depth cap reached).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "binpart/binomial_sums.hpp"
#include "binpart/certified_bounds.hpp"
#include "binpart/lie_bounds.hpp"
#include "binpart/nat.hpp"
#include "binpart/partitions.hpp"
#include "binpart/verify.hpp"

namespace binpart::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kInconclusive = 3 };

struct RunResult {
  int exit_code = kOk;
  std::string document;
};

namespace detail {

inline std::size_t to_index(const std::string& s) {
  const Nat v = parse_nat(s);
  if (!v.fits_ulong_p()) throw usage_error("number too large: " + s);
  return v.get_ui();
}

inline json margin_json(double m) { return std::isfinite(m) ? json(m) : json(nullptr); }

inline json report_json(const VerificationReport& r) {
  json j;
  j["claim"] = r.claim;
  j["range"] = {r.n_min, r.n_max};
  j["outcome"] = to_string(r.outcome);
  j["checks"] = r.checks;
  j["min_margin"] = margin_json(r.min_margin);
  j["max_precision_bits"] = static_cast<long>(r.max_precision);
  if (r.bad_n) {
    json c;
    c["n"] = *r.bad_n;
    c["k"] = r.bad_k ? json(*r.bad_k) : json(nullptr);
    j["counterexample"] = c;
  } else {
    j["counterexample"] = nullptr;
  }
  j["note"] = r.note;
  return j;
}

inline RunResult compute(const std::string& kind, const std::vector<std::string>& args, const std::string& format) {
  Nat value;
  if (kind == "p") {
    if (args.size() != 1) throw usage_error("usage: compute p N");
    const std::size_t n = to_index(args[0]);
    value = PartitionTable(n)[n];
  } else if (kind == "pk") {
    if (args.size() != 2) throw usage_error("usage: compute pk K N");
    const std::size_t k = to_index(args[0]);
    const std::size_t n = to_index(args[1]);
    if (k == 0) throw usage_error("pk needs K >= 1");
    value = RestrictedTable(k, n)[n];
  } else if (kind == "pnk") {
    if (args.size() != 2) throw usage_error("usage: compute pnk N K");
    const std::size_t n = to_index(args[0]);
    const std::size_t k = to_index(args[1]);
    if (k > n) throw usage_error("pnk needs K <= N");
    value = pnk_direct(n, k, PartitionTable(k));
  } else {
    throw usage_error("compute kind must be p, pk or pnk");
  }
  if (format == "json") {
    json j;
    j["kind"] = kind;
    j["args"] = args;
    j["value"] = to_decimal(value);
    return {kOk, j.dump(2) + "\n"};
  }
  return {kOk, to_decimal(value) + "\n"};
}

inline RunResult table(std::size_t n, const std::string& format) {
  if (n < 1) throw usage_error("table needs N >= 1");
  const PartitionTable parts(n);
  PnkRowStream rows(parts);
  while (rows.n() < n) rows.advance();
  const auto& row = rows.row();
  std::ostringstream out;
  if (format == "csv") {
    out << "k,p_k,p_n_k\n";
    for (std::size_t k = 1; k <= n; ++k) out << k << ',' << to_decimal(parts[k]) << ',' << to_decimal(row[k]) << '\n';
  } else if (format == "markdown") {
    out << "| k | p(k) | p(" << n << ",k) |\n|---:|---:|---:|\n";
    for (std::size_t k = 1; k <= n; ++k) {
      out << "| " << k << " | " << to_decimal(parts[k]) << " | " << to_decimal(row[k]) << " |\n";
    }
  } else {
    json j;
    j["n"] = n;
    j["rows"] = json::array();
    for (std::size_t k = 1; k <= n; ++k) {
      json r;
      r["k"] = k;
      r["p_k"] = to_decimal(parts[k]);
      r["p_n_k"] = to_decimal(row[k]);
      j["rows"].push_back(r);
    }
    out << j.dump(2) << '\n';
  }
  return {kOk, out.str()};
}

inline RunResult verify(const std::string& claim, const std::vector<std::string>& range, unsigned threads,
                        bool below_min) {
  if (range.size() != 0 && range.size() != 2) throw usage_error("usage: verify CLAIM [NMIN NMAX]");
  std::optional<std::pair<std::size_t, std::size_t>> r;
  if (range.size() == 2) r = std::pair{to_index(range[0]), to_index(range[1])};
  if (r && r->first > r->second) throw usage_error("NMIN must not exceed NMAX");
  SweepContext ctx;
  std::vector<VerificationReport> reports;
  if (claim == "all") {
    if (below_min) throw usage_error("--below-min needs a single claim");
    reports = run_all(r, ctx, threads);
  } else {
    const ClaimInfo* info = find_claim(claim);
    if (!info) throw usage_error("unknown claim id: " + claim);
    const auto [lo, hi] = r.value_or(std::pair{info->default_min, info->default_max});
    reports.push_back(run_claim(claim, lo, hi, ctx, threads, below_min ? RangePolicy::BelowMin : RangePolicy::Strict));
  }
  const int code = exit_code(reports);
  json j;
  j["claim"] = claim;
  j["precision_cap_bits"] = static_cast<long>(precision_cap_bits());
  j["claims"] = json::array();
  for (const auto& rep : reports) j["claims"].push_back(report_json(rep));
  j["exit_code"] = code;
  return {code, j.dump(2) + "\n"};
}

inline RunResult product(const std::string& qnum, const std::string& qden, const std::string& tol_text) {
  const Nat num = parse_nat(qnum);
  const Nat den = parse_nat(qden);
  if (den == 0 || !(num > 0) || !(num < den)) throw usage_error("product needs 0 < QNUM/QDEN < 1");
  double tol = 0;
  try {
    std::size_t used = 0;
    tol = std::stod(tol_text, &used);
    if (used != tol_text.size()) throw std::invalid_argument(tol_text);
  } catch (const std::exception&) {
    throw usage_error("TOL must be a positive number");
  }
  if (!(tol > 0) || !std::isfinite(tol)) throw usage_error("TOL must be a positive number");
  const Rational q = make_rational(num, den);
  const ProductEnclosure e = euler_product_enclosure(q, tol);
  json j;
  j["q"] = to_decimal(q);
  j["tol"] = tol;
  j["ell"] = e.ell;
  j["lower"] = e.value.lower_string(25);
  j["upper"] = e.value.upper_string(25);
  j["width"] = e.value.width();
  j["reached"] = e.reached;
  return {e.reached ? kOk : kInconclusive, j.dump(2) + "\n"};
}

inline RunResult mu(std::size_t n, std::size_t k, bool filiform_flag) {
  if (k < 1 || k >= n) throw usage_error("mu needs 1 <= K <= N-1");
  const NilpotentProfile profile(n, k);
  if (filiform_flag && !profile.filiform()) throw usage_error("--filiform needs K = N-1");
  const PnkTriangle tri(n);
  const MuBoundReport r = best_bound(profile, tri, filiform_flag);
  json j;
  j["n"] = n;
  j["k"] = k;
  j["filiform"] = profile.filiform();
  json b;
  b["birkhoff"] = to_decimal(r.birkhoff);
  b["reed"] = to_decimal(r.reed);
  b["pnk"] = to_decimal(r.pnk);
  b["filiform"] = r.filiform ? json(to_decimal(*r.filiform)) : json(nullptr);
  j["bounds"] = b;
  json c;
  c["lower"] = r.corollary.lower_string(20);
  c["upper"] = r.corollary.upper_string(20);
  j["corollary"] = c;
  j["best"] = to_string(r.best);
  j["best_value"] = to_decimal(r.best_value());
  j["pnk_beats_reed"] = r.pnk_beats_reed;
  j["pnk_below_corollary"] = corollary_holds(n, tri);
  return {kOk, j.dump(2) + "\n"};
}

}  // namespace detail

inline int run_cli(std::vector<std::string> argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact binomial partition sums p(n,k), bound verification and Ado-type bounds"};
  app.require_subcommand(1);

  std::string format;

  auto* compute = app.add_subcommand("compute", "exact value of p(N), p_K(N) or p(N,K)");
  std::string kind;
  std::vector<std::string> compute_args;
  compute->add_option("kind", kind, "p | pk | pnk")->required();
  compute->add_option("args", compute_args, "N | K N | N K")->required();
  compute->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* table = app.add_subcommand("table", "rows k, p(k), p(N,k) for 1 <= k <= N");
  std::string table_n;
  table->add_option("N", table_n)->required();
  table->add_option("--format", format, "csv | json | markdown")->check(CLI::IsMember({"csv", "json", "markdown"}));

  auto* verify = app.add_subcommand("verify", "run a verification sweep");
  std::string claim;
  std::vector<std::string> range;
  unsigned threads = default_threads();
  verify->add_option("claim", claim, "claim id or 'all'")->required();
  verify->add_option("range", range, "NMIN NMAX")->expected(0, 2);
  verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  bool below_min = false;
  verify->add_flag("--below-min", below_min, "allow NMIN below the claim's stated minimum");

  auto* product = app.add_subcommand("product", "enclosure of prod 1/(1-q^j) for q = QNUM/QDEN");
  std::string qnum, qden, tol;
  product->add_option("QNUM", qnum)->required();
  product->add_option("QDEN", qden)->required();
  product->add_option("TOL", tol)->required();

  auto* mu = app.add_subcommand("mu", "upper bounds on mu(g) for dimension N, class K");
  std::string mu_n, mu_k;
  bool filiform = false;
  mu->add_option("N", mu_n)->required();
  mu->add_option("K", mu_k)->required();
  mu->add_flag("--filiform", filiform, "require K = N-1 and report 1 + p(N-2,N-2)");

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    RunResult result;
    if (*compute) {
      result = detail::compute(kind, compute_args, format.empty() ? "text" : format);
    } else if (*table) {
      result = detail::table(detail::to_index(table_n), format.empty() ? "csv" : format);
    } else if (*verify) {
      result = detail::verify(claim, range, threads, below_min);
    } else if (*product) {
      result = detail::product(qnum, qden, tol);
    } else {
      result = detail::mu(detail::to_index(mu_n), detail::to_index(mu_k), filiform);
    }
    out << result.document;
    return result.exit_code;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace binpart::cli
