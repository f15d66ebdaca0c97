// Command-line front end: certificate suites (JSON lines), family sweeps
// (CSV), and extremal searches (JSON). Exit codes: 0 success / all pass,
// 1 failed certificate or violated bound, 2 invalid flags or request.
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "frdm/frdm.hpp"

namespace {

using namespace frdm;

int resolve_threads(int flag_value) {
  if (const char* env = std::getenv("FERMI_RDM_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end && *end == '\0' && parsed > 0 && parsed <= 256) return static_cast<int>(parsed);
  }
  return flag_value > 0 ? flag_value : 1;
}

SectorVector build_state(const std::string& family, int modes, int particles,
                         std::uint64_t seed, double t) {
  if (family == "slater") {
    std::set<int> occ;
    for (int k = 0; k < particles; ++k) occ.insert(k);
    return slater(modes, occ);
  }
  if (family == "pairing") return yang_pairing(modes, particles);
  if (family == "random") return random_state(modes, particles, seed);
  if (family == "near_slater") return near_slater(modes, particles, t, seed);
  throw std::invalid_argument("unknown family: " + family);
}

void validate_request(const std::string& family, int modes, int particles,
                      std::int64_t cap_dim) {
  if (modes < 0 || particles < 0 || particles > modes)
    throw std::invalid_argument("need 0 <= N <= M");
  if (family == "pairing" && (modes % 2 != 0 || particles % 2 != 0))
    throw std::invalid_argument("pairing family needs even M and even N");
  enumerate_sector(modes, particles, cap_dim);  // throws over the cap
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

std::vector<CertificateReport> certificate_suite(const SectorVector& psi,
                                                 std::uint64_t seed) {
  const int modes = psi.modes;
  std::vector<CertificateReport> reports;
  reports.push_back(check_hs_norm_bound(psi));
  reports.push_back(check_truncated_hs_bound(psi));
  reports.push_back(check_op_norm_bounds(psi));
  if (psi.particles >= 2) reports.push_back(check_entropy_lower_bound(psi));
  reports.push_back(check_truncated_bilinear_identity(psi));
  reports.push_back(check_trace_duality(psi, random_tensor4(modes, seed + 1000)));
  reports.push_back(check_bach_lower_bound(
      psi, random_projection(modes, std::max(1, modes / 2), seed + 2000)));
  if (modes <= 4) {
    const CoefficientTensor4 anti = antisymmetrize(random_tensor4(modes, seed + 3000));
    for (int n = 0; n < modes; ++n)
      reports.push_back(check_anticommutator_identity(anti, n));
  }
  if (modes <= 8)
    reports.push_back(check_sector_anticommutator_bound(random_tensor4(modes, seed + 3000),
                                                        psi.particles));
  return reports;
}

int run_certify(const std::string& family, int modes, int particles, std::uint64_t seed,
                double t, std::int64_t cap_dim) {
  validate_request(family, modes, particles, cap_dim);
  const SectorVector psi = build_state(family, modes, particles, seed, t);
  bool all_pass = true;
  for (const CertificateReport& r : certificate_suite(psi, seed)) {
    std::cout << to_json_line(r) << '\n';
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepRow {
  std::string family;
  int modes = 0;
  int particles = 0;
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool has_t = false;
  double t = 0.0;
};

const char* kSweepHeader =
    "schema_version,family,M,N,seed,t,hs_gamma2,op_gamma2,tr_gamma2,hs_gamma2T,"
    "tr_g1_1mg1,entropy,margin_hs_bound,margin_truncated_bound,margin_op_bound,"
    "margin_entropy_bound";

std::string sweep_row_csv(const SweepRow& row) {
  const SectorVector psi =
      build_state(row.family, row.modes, row.particles, row.seed, row.t);
  const CertificateReport hs = check_hs_norm_bound(psi);
  const CertificateReport tr = check_truncated_hs_bound(psi);
  const CertificateReport op = check_op_norm_bounds(psi);
  const double tr_gamma2 = gamma2(psi).trace().real();

  std::string line = "1," + row.family + ',' + std::to_string(row.modes) + ',' +
                     std::to_string(row.particles) + ',';
  if (row.has_seed) line += std::to_string(row.seed);
  line += ',';
  if (row.has_t) line += format_double(row.t);
  line += ',' + format_double(hs.lhs);
  line += ',' + format_double(op.lhs);
  line += ',' + format_double(tr_gamma2);
  line += ',' + format_double(tr.lhs);
  line += ',' + format_double(tr.context.at("tr_g1_1mg1"));
  if (psi.particles >= 2) {
    const CertificateReport ent = check_entropy_lower_bound(psi);
    line += ',' + format_double(ent.rhs);
    line += ',' + format_double(hs.margin);
    line += ',' + format_double(tr.margin);
    line += ',' + format_double(op.margin);
    line += ',' + format_double(ent.margin);
  } else {
    line += ",";
    line += ',' + format_double(hs.margin);
    line += ',' + format_double(tr.margin);
    line += ',' + format_double(op.margin);
    line += ",";
  }
  return line;
}

int run_sweep(std::vector<std::string> families, std::vector<int> modes_list,
              std::vector<int> particles_list, std::vector<std::uint64_t> seeds,
              std::vector<double> t_values, const std::string& out_path, int threads,
              std::int64_t cap_dim) {
  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(families);
  sort_unique(modes_list);
  sort_unique(particles_list);
  sort_unique(seeds);
  sort_unique(t_values);
  for (const std::string& f : families)
    if (f != "slater" && f != "pairing" && f != "random" && f != "near_slater")
      throw std::invalid_argument("unknown family: " + f);

  std::vector<SweepRow> rows;
  for (const std::string& family : families)
    for (int modes : modes_list)
      for (int particles : particles_list) {
        if (particles > modes) continue;
        if (family == "pairing" && (modes % 2 != 0 || particles % 2 != 0)) continue;
        validate_request(family, modes, particles, cap_dim);
        if (family == "random") {
          for (std::uint64_t seed : seeds)
            rows.push_back({family, modes, particles, true, seed, false, 0.0});
        } else if (family == "near_slater") {
          for (std::uint64_t seed : seeds)
            for (double t : t_values)
              rows.push_back({family, modes, particles, true, seed, true, t});
        } else {
          rows.push_back({family, modes, particles, false, 0, false, 0.0});
        }
      }

  // rows are independent; compute possibly in parallel, emit in order
  std::vector<std::string> lines(rows.size());
  const std::size_t workers =
      std::min(static_cast<std::size_t>(threads), std::max<std::size_t>(rows.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) lines[i] = sweep_row_csv(rows[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
        lines[i] = sweep_row_csv(rows[i]);
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
    out = &file;
  }
  *out << kSweepHeader << '\n';
  for (const std::string& line : lines) *out << line << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// extremal
// ---------------------------------------------------------------------------

int run_extremal(int modes, int particles, const OptimizerConfig& cfg,
                 const std::string& out_path, std::int64_t cap_dim) {
  if (modes < 0 || particles < 0 || particles > modes)
    throw std::invalid_argument("need 0 <= N <= M");
  enumerate_sector(modes, particles, cap_dim);
  const ExtremalResult res = maximize(modes, particles, cfg);
  const std::string json = to_json(res, cfg);
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
    file << json << '\n';
  } else {
    std::cout << json << '\n';
  }
  const double budget = std::sqrt(5.0) * particles;
  std::printf("best_value=%s ratio=%s budget=%s converged=%s\n",
              format_double(res.best_value).c_str(),
              format_double(particles > 0 ? res.best_value / particles : 0.0).c_str(),
              format_double(budget).c_str(), res.converged ? "true" : "false");
  if (res.bound_violated) {
    std::fprintf(stderr,
                 "BOUND VIOLATION: best_value %s exceeds sqrt(5) N = %s; "
                 "this falsifies a certified bound and needs investigation\n",
                 format_double(res.best_value).c_str(), format_double(budget).c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact reduced-density-matrix certificates for fermionic states"};
  app.require_subcommand(1);

  std::string family = "random";
  int modes = 4, particles = 2;
  std::uint64_t seed = 1;
  double t = 0.1;
  int threads = 1;
  std::int64_t cap_dim = kDefaultSectorCap;
  std::string out_path;

  CLI::App* certify = app.add_subcommand("certify", "run all applicable certificates");
  certify->add_option("--family", family, "slater|pairing|random|near_slater")
      ->required()
      ->check(CLI::IsMember({"slater", "pairing", "random", "near_slater"}));
  certify->add_option("--M", modes, "number of modes")->required();
  certify->add_option("--N", particles, "number of particles")->required();
  certify->add_option("--seed", seed, "random seed (default 1)");
  certify->add_option("--t", t, "near-slater mixing parameter (default 0.1)");
  certify->add_option("--threads", threads, "worker threads (default 1)");
  certify->add_option("--cap-dim", cap_dim, "sector dimension cap");

  std::vector<std::string> families;
  std::vector<int> modes_list, particles_list;
  std::vector<std::uint64_t> seeds{1};
  std::vector<double> t_values{0.1};
  CLI::App* sweep = app.add_subcommand("sweep", "tabulate families into CSV");
  sweep->add_option("--family", families, "families to sweep (repeatable)")->required();
  sweep->add_option("--M", modes_list, "mode counts (repeatable)")->required();
  sweep->add_option("--N", particles_list, "particle counts (repeatable)")->required();
  sweep->add_option("--seed", seeds, "seeds for seeded families (default 1)");
  sweep->add_option("--t", t_values, "near-slater mixing values (default 0.1)");
  sweep->add_option("--out", out_path, "output CSV path (default stdout)");
  sweep->add_option("--threads", threads, "worker threads (default 1)");
  sweep->add_option("--cap-dim", cap_dim, "sector dimension cap");

  OptimizerConfig cfg;
  CLI::App* extremal = app.add_subcommand("extremal", "search for the largest pair norm");
  extremal->add_option("--M", modes, "number of modes")->required();
  extremal->add_option("--N", particles, "number of particles")->required();
  extremal->add_option("--seed", cfg.seed, "base seed for restarts (default 1)");
  extremal->add_option("--restarts", cfg.restarts, "random restarts (default 8)");
  extremal->add_option("--max-iters", cfg.max_iters, "iteration budget (default 2000)");
  extremal->add_option("--step", cfg.step_size, "initial step size (default 0.1)");
  extremal->add_option("--tol-grad", cfg.tol_grad, "convergence threshold (default 1e-8)");
  extremal->add_option("--out", out_path, "output JSON path (default stdout)");
  extremal->add_option("--threads", threads, "worker threads (default 1)");
  extremal->add_option("--cap-dim", cap_dim, "sector dimension cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  threads = resolve_threads(threads);
  try {
    if (certify->parsed()) return run_certify(family, modes, particles, seed, t, cap_dim);
    if (sweep->parsed())
      return run_sweep(families, modes_list, particles_list, seeds, t_values, out_path,
                       threads, cap_dim);
    return run_extremal(modes, particles, cfg, out_path, cap_dim);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
