#include "circrank/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "circrank/algebra.hpp"
#include "circrank/certificate.hpp"
#include "circrank/construct.hpp"
#include "circrank/error.hpp"
#include "circrank/graph.hpp"
#include "circrank/polycert.hpp"
#include "circrank/search.hpp"
#include "circrank/verify.hpp"

namespace circrank::cli {

using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  int jobs = 1;
};

json info_json(const CirculantGraph& g) {
  json known = json::object();
  const int s = g.degree();
  if (const auto k = is_consecutive(g)) {
    known["mscr"] = g.n() - s;
    known["mr"] = g.n() - s;
    known["msr"] = g.n() - s;
    known["zero_forcing"] = zero_forcing_consecutive(g);
    known["mr_lower_bound"] = mr_lower_bound(g);
    if (g.n() % 2 == 1) known["mscr_real"] = g.n() - s;
  }
  if (is_prime(g.n())) known["mscr"] = g.n() - s;
  if (g.is_complete()) known["mscr"] = 1;
  if (g.is_edgeless()) known["mscr"] = g.n();
  json out = {{"graph", g.to_string()},
              {"n", g.n()},
              {"degree", s},
              {"consecutive", nullptr},
              {"prime", is_prime(g.n())},
              {"complete", g.is_complete()},
              {"edgeless", g.is_edgeless()},
              {"known", known}};
  if (const auto k = is_consecutive(g)) out["consecutive"] = *k;
  if (!g.connection().added_by_closure().empty()) out["added_by_closure"] = g.connection().added_by_closure();
  return out;
}

void emit(const json& j, std::ostream& out, const std::string& path) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << j.dump(2) << '\n';
}

int cmd_construct(const std::string& method, const CirculantGraph& g, const Globals& globals, const std::string& out_path,
                  std::ostream& out) {
  json result;
  if (method == "consecutive") result = to_json(consecutive_certificate(g));
  else if (method == "real-consecutive") result = to_json(real_consecutive_certificate(g));
  else if (method == "caratheodory") result = to_json(caratheodory_certificate(g, globals.seed));
  else if (method == "prime") result = to_json(prime_certificate(g, globals.seed));
  else if (method == "spectrum") {
    result = json::array();
    for (const auto& b : rank_spectrum_consecutive(g)) result.push_back(to_json(b));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown method " + method);
  }
  emit(result, out, out_path);
  return kOk;
}

int cmd_verify(const std::string& path, const Tolerance& tol, std::ostream& out) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  json input;
  try {
    input = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  bool pass = true;
  json result;
  if (input.is_array()) {
    result = json::array();
    for (const auto& item : input) {
      const VerificationReport r = verify_certificate_json(item, tol);
      pass = pass && r.verdict();
      result.push_back(to_json(r));
    }
    if (input.empty()) pass = false;
  } else {
    const VerificationReport r = verify_certificate_json(input, tol);
    pass = r.verdict();
    result = to_json(r);
  }
  out << result.dump(2) << '\n';
  return pass ? kOk : kVerificationFailed;
}

SearchOptions search_options(const Globals& g, int cap) {
  SearchOptions o;
  o.seed = g.seed;
  o.jobs = g.jobs;
  o.cap = cap;
  return o;
}

std::string render_table(const json& rows, const std::vector<std::string>& columns) {
  std::vector<std::size_t> width(columns.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& v = row.contains(columns[c]) ? row.at(columns[c]) : json();
      std::string s = v.is_string() ? v.get<std::string>() : (v.is_null() ? "-" : v.dump());
      width[c] = std::max(width[c], s.size());
      line.push_back(std::move(s));
    }
    cells.push_back(std::move(line));
  }
  std::ostringstream os;
  auto put = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) os << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << line[c];
    os << '\n';
  };
  put(columns);
  for (const auto& line : cells) put(line);
  return os.str();
}

int cmd_table(const std::string& family, int n_max, int p_max, bool text, const Globals& globals, std::ostream& out,
              std::ostream& err) {
  json rows = json::array();
  bool consistent = true;
  const SearchOptions opts = search_options(globals, std::max(20, std::max(n_max, p_max)));
  if (family == "consecutive") {
    for (int n = 3; n <= n_max; ++n)
      for (const auto& g : consecutive_circulants(n)) {
        const int formula = g.n() - g.degree();
        const SearchResult complex = min_terms_search(g, Mode::Complex, opts);
        const CertificateBundle cert = consecutive_certificate(g);
        const bool cert_ok = verify_certificate(cert).verdict() && cert.claimed_rank == formula;
        json row = {{"graph", g.to_string()}, {"n", n}, {"k", *is_consecutive(g)}, {"formula", formula},
                    {"mscr_search", complex.k}, {"certificate_verified", cert_ok}};
        bool ok = complex.k == formula && cert_ok;
        if (n % 2 == 1) {
          const SearchResult real = min_terms_search(g, Mode::RealBalanced, opts);
          row["mscr_real_search"] = real.k;
          ok = ok && real.k == formula;
        }
        row["agree"] = ok;
        consistent = consistent && ok;
        rows.push_back(row);
      }
  } else if (family == "prime") {
    for (int p = 2; p <= p_max; ++p) {
      if (!is_prime(p)) continue;
      for (const auto& g : all_circulants(p)) {
        const int formula = p - g.degree();
        const SearchResult complex = min_terms_search(g, Mode::Complex, opts);
        const CertificateBundle cert = prime_certificate(g, globals.seed);
        const bool cert_ok = verify_certificate(cert).verdict() && cert.claimed_rank == formula;
        const bool ok = complex.k == formula && cert_ok;
        rows.push_back({{"graph", g.to_string()}, {"p", p}, {"formula", formula}, {"mscr_search", complex.k},
                        {"certificate_verified", cert_ok}, {"agree", ok}});
        consistent = consistent && ok;
      }
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown family " + family);
  }
  if (text) {
    const std::vector<std::string> cols =
        family == "prime" ? std::vector<std::string>{"graph", "formula", "mscr_search", "certificate_verified", "agree"}
                          : std::vector<std::string>{"graph", "formula", "mscr_search", "mscr_real_search",
                                                     "certificate_verified", "agree"};
    out << render_table(rows, cols);
  } else {
    out << rows.dump(2) << '\n';
  }
  if (!consistent) {
    err << "table: closed form and search disagree on at least one row\n";
    return kInconsistent;
  }
  return kOk;
}

struct Fixture {
  std::string name;
  std::function<std::string()> run;  // empty string on success, else the failure reason
};

std::vector<Fixture> fixtures(const Globals& globals) {
  SearchOptions opts;
  opts.seed = globals.seed;
  opts.jobs = globals.jobs;
  auto expect_search = [opts](std::string text, Mode mode, int expected) {
    return [=]() -> std::string {
      const SearchResult r = min_terms_search(CirculantGraph::parse(text), mode, opts);
      if (r.k != expected) return "k = " + std::to_string(r.k) + ", expected " + std::to_string(expected);
      if (!verify_certificate(r.certificate).verdict()) return "search certificate does not verify";
      return {};
    };
  };
  std::vector<Fixture> out;
  out.push_back({"mscr(C(4,{1,3})) = 2", expect_search("C(4,{1,3})", Mode::Complex, 2)});
  out.push_back({"mscrREAL(C(4,{1,3})) = 3", expect_search("C(4,{1,3})", Mode::RealBalanced, 3)});
  out.push_back({"mscr(C(5,{1,4})) = 3", expect_search("C(5,{1,4})", Mode::Complex, 3)});
  out.push_back({"mscrREAL(C(5,{1,4})) = 3", expect_search("C(5,{1,4})", Mode::RealBalanced, 3)});
  out.push_back({"mscr(C(6,{2,3,4})) = 4", expect_search("C(6,{2,3,4})", Mode::Complex, 4)});
  out.push_back({"mscrREAL(C(6,{2,3,4})) = 4", expect_search("C(6,{2,3,4})", Mode::RealBalanced, 4)});
  out.push_back({"rank-3 non-PSD circulant with graph C(6,{2,3,4}), eigenvalues {6,6,-6}", [] {
                   const auto c = CirculantMatrix<double>::from_real_row(Eigen::Vector<double, 6>(1, 0, -2, 3, -2, 0));
                   MatrixClaims claims;
                   claims.circulant = true;
                   claims.rank = 3;
                   claims.psd = false;
                   const auto r = verify_matrix_claim(c.realize(), CirculantGraph::parse("C(6,{2,3,4})"), claims);
                   if (!r.verdict()) return std::string("claim check failed: ") + r.first_failure()->name;
                   std::vector<double> ev;
                   for (double e : hermitian_eigenvalues(c.realize()))
                     if (std::abs(e) > 1e-8) ev.push_back(e);
                   std::sort(ev.begin(), ev.end());
                   if (ev.size() != 3 || std::abs(ev[0] + 6) > 1e-8 || std::abs(ev[1] - 6) > 1e-8 || std::abs(ev[2] - 6) > 1e-8)
                     return std::string("nonzero eigenvalues are not {6,6,-6}");
                   return std::string{};
                 }});
  out.push_back({"consecutive certificate for C(10,{1,2,3,7,8,9}) has rank 4", [] {
                   const auto b = consecutive_certificate(CirculantGraph::parse("C(10,{1,2,3,7,8,9})"));
                   if (b.claimed_rank != 4) return std::string("claimed rank ") + std::to_string(b.claimed_rank);
                   const auto r = verify_certificate(b);
                   if (!r.verdict()) return std::string("verification failed at ") + r.first_failure()->name;
                   return std::string{};
                 }});
  out.push_back({"real consecutive certificate for C(5,{1,4}) is (2cos(pi/5),1,0,0,1)", [] {
                   const auto b = real_consecutive_certificate(CirculantGraph::parse("C(5,{1,4})"));
                   const Eigen::Vector<double, 5> want(2 * std::cos(std::numbers::pi / 5), 1, 0, 0, 1);
                   if ((b.polynomial.coeffs() - want).cwiseAbs().maxCoeff() > 1e-12) return std::string("coefficients differ");
                   if (!verify_certificate(b).verdict()) return std::string("verification failed");
                   return std::string{};
                 }});
  out.push_back({"z^4+z^2+1 is rejected for C(6,{2,3,4}) at j=2", [] {
                   CertificateBundle b;
                   b.graph = CirculantGraph::parse("C(6,{2,3,4})");
                   b.polynomial = NonnegPolynomial(Eigen::Vector<double, 6>(1, 0, 1, 0, 1, 0));
                   b.claimed_rank = 3;
                   const auto r = verify_certificate(b);
                   const auto* f = r.first_failure();
                   if (!f || f->name != "condition" || f->detail.find("j=2") == std::string::npos)
                     return std::string("expected a condition failure at j=2");
                   return std::string{};
                 }});
  return out;
}

int cmd_fixtures(const Globals& globals, std::ostream& out) {
  int failed = 0;
  json results = json::array();
  for (const auto& f : fixtures(globals)) {
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = f.run();
    } catch (const std::exception& e) {
      reason = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << (reason.empty() ? "PASS  " : "FAIL  ") << f.name;
    if (!reason.empty()) out << "  (" << reason << ")";
    out << '\n';
    if (!reason.empty()) ++failed;
    results.push_back({{"name", f.name}, {"pass", reason.empty()}, {"seconds", seconds}});
  }
  out << (failed ? "FAILED " : "OK ") << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
      << " fixtures passed\n";
  return failed ? kVerificationFailed : kOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::CapExceeded: return kCapExceeded;
    case ErrorKind::Internal: return kInconsistent;
    case ErrorKind::ConstructionFailed: return kVerificationFailed;
    default: return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum semidefinite circulant rank: constructions, search and verification", "circrank"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for randomized steps")->capture_default_str();
  app.add_option("--jobs", globals.jobs, "Worker threads for the support search")->check(CLI::PositiveNumber);

  std::string graph_text;
  auto* info = app.add_subcommand("info", "Degree, family membership and known bounds of a circulant graph");
  info->add_option("graph", graph_text, "C(n,{r1,r2,...})")->required();

  std::string method, out_path;
  auto* construct = app.add_subcommand("construct", "Emit certificate bundle(s) from an explicit construction");
  construct->add_option("--method", method)
      ->required()
      ->check(CLI::IsMember({"consecutive", "real-consecutive", "caratheodory", "prime", "spectrum"}));
  construct->add_option("graph", graph_text, "C(n,{r1,r2,...})")->required();
  construct->add_option("--out", out_path, "Write JSON here instead of stdout");

  std::string mode_text = "complex";
  int cap = 20;
  bool progress = false;
  auto* search = app.add_subcommand("search", "Minimum-term certificate search");
  search->add_option("--mode", mode_text)->check(CLI::IsMember({"complex", "balanced", "weight"}))->capture_default_str();
  search->add_option("graph", graph_text, "C(n,{r1,r2,...})")->required();
  search->add_option("--cap", cap, "Largest n the search accepts")->capture_default_str();
  search->add_flag("--progress", progress, "Report per-level progress on stderr");

  std::string verify_path;
  Tolerance tol;
  auto* verify = app.add_subcommand("verify", "Independently re-validate certificate bundle(s)");
  verify->add_option("file", verify_path, "Bundle JSON (object or array)")->required();
  verify->add_option("--tol-zero", tol.zero_eps)->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--tol-rank", tol.rank_eps)->check(CLI::NonNegativeNumber)->capture_default_str();

  std::string family;
  int n_max = 0, p_max = 0;
  bool text = false;
  auto* table = app.add_subcommand("table", "Closed-form values versus search results");
  table->add_option("--family", family)->required()->check(CLI::IsMember({"consecutive", "prime"}));
  table->add_option("--n-max", n_max);
  table->add_option("--p-max", p_max);
  table->add_flag("--text", text, "Render a text table instead of JSON");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Run the built-in worked-example suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*info) {
      out << info_json(CirculantGraph::parse(graph_text)).dump(2) << '\n';
      return kOk;
    }
    if (*construct) return cmd_construct(method, CirculantGraph::parse(graph_text), globals, out_path, out);
    if (*search) {
      SearchOptions opts = search_options(globals, cap);
      if (progress)
        opts.progress = [&err](const SearchProgress& p) {
          err << "k=" << p.k << " supports_examined=" << p.supports_examined << (p.found ? " found" : "") << '\n';
        };
      const SearchResult r = min_terms_search(CirculantGraph::parse(graph_text), parse_mode(mode_text), opts);
      out << to_json(r).dump(2) << '\n';
      return kOk;
    }
    if (*verify) return cmd_verify(verify_path, tol, out);
    if (*table) {
      if (family == "consecutive" && n_max < 3) throw Error(ErrorKind::InvalidArgument, "--n-max must be >= 3");
      if (family == "prime" && p_max < 2) throw Error(ErrorKind::InvalidArgument, "--p-max must be >= 2");
      return cmd_table(family, n_max, p_max, text, globals, out, err);
    }
    if (*fixtures_cmd) return cmd_fixtures(globals, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsage;
}

}  // namespace circrank::cli
