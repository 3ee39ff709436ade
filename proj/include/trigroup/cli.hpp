#pragma once

// Command-line front end: index, table, split, witness, image and snapshot
// commands. Exit codes: 0 ok, 1 usage, 2 cap exceeded, 3 mismatch or failed
// verification, 4 precondition violated, 5 witness not found.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trigroup/index.hpp"
#include "trigroup/invariants.hpp"

namespace trigroup {

enum ExitCode : int { kOk = 0, kUsage = 1, kCap = 2, kMismatch = 3, kPrecondition = 4, kNotFound = 5 };

struct RunConfig {
  std::string command;
  int n = 0;
  std::uint64_t cap = kDefaultCap;
  std::string format = "json";
  bool timing = true;
};

namespace cli_detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

inline int cmd_index(const RunConfig& cfg, std::ostream& out) {
  const auto rep = index_report(cfg.n, cfg.cap);
  if (cfg.format == "text") {
    out << "n=" << rep.n << " predicted=" << rep.predicted
        << " computed=" << (rep.computed ? rep.computed->str() : std::string("?")) << " match=" << rep.match
        << " checks_ok=" << rep.checks_ok << " levels=" << levels_summary(rep) << "\n";
    if (!rep.error.empty()) out << "error: " << rep.error << "\n";
  } else {
    emit(out, to_json(rep, cfg.timing));
  }
  if (!rep.error.empty()) return kCap;
  return rep.match && rep.checks_ok ? kOk : kMismatch;
}

inline int cmd_table(const RunConfig& cfg, int from, int to, std::ostream& out) {
  bool mismatch = false;
  bool capped = false;
  auto rows = nlohmann::json::array();
  if (cfg.format == "csv") out << "n,predicted,computed,match,levels,seconds\n";
  for (int n = from; n <= to; ++n) {
    const auto rep = index_report(n, cfg.cap);
    capped = capped || !rep.error.empty();
    mismatch = mismatch || (rep.error.empty() && !(rep.match && rep.checks_ok));
    if (cfg.format == "csv") {
      std::ostringstream secs;
      secs << std::fixed << std::setprecision(3) << (cfg.timing ? rep.seconds : 0.0);
      out << n << "," << rep.predicted << "," << (rep.computed ? rep.computed->str() : std::string("cap")) << ","
          << (rep.match ? "true" : "false") << "," << levels_summary(rep) << "," << secs.str() << "\n";
      out.flush();
    } else {
      rows.push_back(to_json(rep, cfg.timing));
    }
  }
  if (cfg.format != "csv") emit(out, {{"from", from}, {"to", to}, {"rows", rows}});
  if (mismatch) return kMismatch;
  return capped ? kCap : kOk;
}

inline int cmd_split(const RunConfig& cfg, std::uint64_t p, std::ostream& out) {
  if (!is_prime(p)) throw PreconditionViolated("split: p must be prime");
  const auto s = splitting_data(cfg.n, p);
  auto j = to_json(s);
  j["n"] = cfg.n;
  j["residue_card"] = residue_card(cfg.n, p).str();
  j["order"] = sl2_order(cfg.n, p).value.str();
  if (cfg.format == "text")
    out << "n=" << cfg.n << " p=" << p << " e=" << s.e << " f=" << s.f << " r=" << s.r << " d=" << s.d << "\n";
  else
    emit(out, j);
  return kOk;
}

inline int cmd_witness(const RunConfig& cfg, const std::string& kind, std::optional<unsigned> level,
                       std::optional<std::uint64_t> mod, const std::string& path, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  WitnessCertificate cert = [&] {
    if (kind == "delta") {
      unsigned a = 0;
      if (level) {
        a = *level;
      } else if (mod) {
        if (*mod < 2 || (*mod & (*mod - 1)) != 0) throw PreconditionViolated("delta witness: --mod must be a power of 2");
        while ((std::uint64_t{1} << a) < *mod) ++a;
      } else {
        throw PreconditionViolated("delta witness: give --level a (modulus 2^a) or --mod N");
      }
      return delta_witness(cfg.n, a, cfg.cap);
    }
    if (kind == "kappa") {
      if (!mod) throw PreconditionViolated("kappa witness: give --mod N");
      return kappa_witness(cfg.n, *mod, cfg.cap);
    }
    throw PreconditionViolated("witness kind must be delta or kappa");
  }();
  const auto check = verify_certificate_detailed(cert);
  const auto j = to_json(cert);
  if (!path.empty()) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << "\n";
  }
  nlohmann::json summary{{"kind", cert.kind}, {"n", cert.n}, {"N", cert.N}, {"word_length", cert.word.size()},
                         {"verified", check.ok}};
  if (!path.empty()) summary["certificate"] = path;
  else summary["certificate"] = j;
  if (cfg.timing) summary["timing"] = {{"seconds", seconds_since(t0)}};
  emit(out, summary);
  return check.ok ? kOk : kMismatch;
}

inline int cmd_verify(const RunConfig& cfg, const std::string& path, std::ostream& out) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  const auto cert = certificate_from_json(nlohmann::json::parse(f));
  const auto check = verify_certificate_detailed(cert);
  nlohmann::json j{{"certificate", path}, {"kind", cert.kind}, {"n", cert.n}, {"N", cert.N},
                   {"verified", check.ok}, {"problems", check.problems}};
  if (cfg.format == "text")
    out << (check.ok ? "verified" : "FAILED") << " " << path << "\n";
  else
    emit(out, j);
  return check.ok ? kOk : kMismatch;
}

inline std::uint64_t matrix_order(const ModMat& m, std::uint64_t bound) {
  const auto I = ModMat::identity(m.a.ring());
  ModMat p = m;
  std::uint64_t k = 1;
  while (!(p == I)) {
    if (++k > bound) return 0;
    p = p * m;
  }
  return k;
}

inline int cmd_image(const RunConfig& cfg, std::uint64_t N, const std::string& snapshot, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto gens = generators(cfg.n);
  const auto ring = QuotientRing::over(gens.ring, N);
  ClosureOptions opt;
  opt.cap = cfg.cap;
  const auto closure = close_image(gens, ring, opt);
  const BigInt group = sl2_order(cfg.n, N).value;
  nlohmann::json j{{"n", cfg.n},
                   {"N", N},
                   {"ring", ring->describe()},
                   {"order", closure.order()},
                   {"group_order", group.str()},
                   {"index", exact_quotient(group, BigInt(closure.order()), ring->describe()).str()}};

  const auto u_order = matrix_order(reduce_mat(gens.U, ring), closure.order());
  j["U_order"] = u_order;
  j["generated_by_U"] = u_order == closure.order();

  if (N % 2 == 0) {
    bool pass = true;
    try {
      const DihedralTable table(cfg.n);
      pass = table.order() == 2 * n_prime(cfg.n);
    } catch (const std::logic_error&) {
      pass = false;
    }
    j["dihedral_mod2"] = {{"expected_order", 2 * n_prime(cfg.n)}, {"pass", pass}};
  }

  if (N >= 2 && (N & (N - 1)) == 0) {
    auto layers = nlohmann::json::array();
    std::uint64_t prev = 0;
    for (std::uint64_t level = 2; level <= N; level *= 2) {
      const std::uint64_t ord = level == N ? closure.order() : close_image(gens, QuotientRing::over(gens.ring, level), opt).order();
      nlohmann::json row{{"level", level}, {"order", ord}};
      if (prev) row["kernel"] = ord / prev;
      layers.push_back(row);
      prev = ord;
    }
    j["levels"] = layers;
    j["expected_kernel"] = big_pow(BigInt(2), static_cast<unsigned>(2 * gens.ring->degree() + 1)).str();
    if (N == 4) {
      const auto st = two_adic_structure(cfg.n, cfg.cap);
      auto diag = nlohmann::json::array();
      for (const auto& m : st.diagonal) diag.push_back(mat_to_json(m));
      j["diagonal_kernel"] = {{"elements", diag}, {"is_plus_minus_identity", st.diagonal_is_pm_identity}};
    }
  }

  if (!snapshot.empty()) {
    save_snapshot(closure, snapshot);
    j["snapshot"] = snapshot;
  }
  if (cfg.timing) j["timing"] = {{"seconds", seconds_since(t0)}};
  emit(out, j);
  return kOk;
}

inline int cmd_load_snapshot(const RunConfig& cfg, const std::string& path, std::ostream& out) {
  const auto c = load_snapshot(path);
  nlohmann::json j{{"snapshot", path}, {"ring", c.ring()->describe()}, {"order", c.order()}, {"verified", true}};
  if (cfg.format == "text")
    out << path << ": " << c.ring()->describe() << " order " << c.order() << "\n";
  else
    emit(out, j);
  return kOk;
}

}  // namespace cli_detail

/// Parses arguments and runs one command; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Finite-level closures of the triangle groups <T, U> over Z[zeta + 1/zeta]"};
  app.require_subcommand(1);
  // global options may follow the subcommand
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--cap", cfg.cap, "Element limit for each closure")
      ->envname("TRIGROUP_CAP")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "Omit timing fields");

  auto* index = app.add_subcommand("index", "Predicted and computed index for one n");
  index->add_option("n", cfg.n)->required()->check(CLI::Range(3, 1 << 20));

  int from = 3, to = 16;
  auto* table = app.add_subcommand("table", "Index table for from <= n <= to");
  table->alias("verify-table");
  table->add_option("from", from)->check(CLI::Range(3, 1 << 20));
  table->add_option("to", to)->check(CLI::Range(3, 1 << 20));

  std::uint64_t p = 0;
  auto* split = app.add_subcommand("split", "Splitting data (e, f, r) of p in O");
  split->add_option("n", cfg.n)->required()->check(CLI::Range(3, 1 << 20));
  split->add_option("p", p)->required();

  std::string kind, out_path, verify_path;
  std::optional<unsigned> level;
  std::optional<std::uint64_t> mod;
  auto* witness = app.add_subcommand("witness", "Search for and certify a non-congruence witness");
  witness->add_option("kind", kind)->check(CLI::IsMember({"delta", "kappa"}));
  witness->add_option("n", cfg.n)->check(CLI::Range(3, 1 << 20));
  witness->add_option("--level", level, "Modulus 2^a for delta witnesses");
  witness->add_option("--mod", mod, "Modulus N");
  witness->add_option("-o,--output", out_path, "Certificate path");
  witness->add_option("--verify", verify_path, "Verify an existing certificate");

  std::uint64_t image_mod = 2;
  std::string snapshot;
  auto* image = app.add_subcommand("image", "Structure of the image mod N");
  image->add_option("n", cfg.n)->required()->check(CLI::Range(3, 1 << 20));
  image->add_option("--mod", image_mod)->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 31));
  image->add_option("--snapshot", snapshot, "Write the closure to this path");

  std::string load_path;
  auto* load = app.add_subcommand("load-snapshot", "Load and verify a closure snapshot");
  load->add_option("path", load_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  cfg.timing = !no_timing;
  if (table->parsed() && from > to) {
    err << "table: from must not exceed to\n";
    return kUsage;
  }
  if (witness->parsed() && verify_path.empty() && (kind.empty() || cfg.n == 0)) {
    err << "witness: give kind and n, or --verify path\n";
    return kUsage;
  }
  if (witness->parsed() && level && mod) {
    err << "witness: --level and --mod are exclusive\n";
    return kUsage;
  }

  try {
    if (index->parsed()) return cli_detail::cmd_index(cfg, out);
    if (table->parsed()) {
      if (cfg.format == "text") cfg.format = "csv";
      return cli_detail::cmd_table(cfg, from, to, out);
    }
    if (split->parsed()) return cli_detail::cmd_split(cfg, p, out);
    if (witness->parsed()) {
      if (!verify_path.empty() && kind.empty()) return cli_detail::cmd_verify(cfg, verify_path, out);
      const int rc = cli_detail::cmd_witness(cfg, kind, level, mod, out_path, out);
      if (rc != kOk || verify_path.empty()) return rc;
      return cli_detail::cmd_verify(cfg, verify_path, out);
    }
    if (image->parsed()) return cli_detail::cmd_image(cfg, image_mod, snapshot, out);
    if (load->parsed()) return cli_detail::cmd_load_snapshot(cfg, load_path, out);
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const PreconditionViolated& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const NotFound& e) {
    err << "not found: " << e.what() << "\n";
    return kNotFound;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace trigroup
