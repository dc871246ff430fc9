#include "heckeq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heckeq/character.hpp"
#include "heckeq/chebyshev.hpp"
#include "heckeq/config.hpp"
#include "heckeq/dataset.hpp"
#include "heckeq/equidist.hpp"
#include "heckeq/errors.hpp"
#include "heckeq/measures.hpp"
#include "heckeq/numtheory.hpp"
#include "heckeq/remote.hpp"

namespace heckeq::cli {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

cheb::Measure measure_from_arg(const std::string& p_arg) {
  if (p_arg == "inf" || p_arg == "infinity")
    return cheb::Measure::mu_infinity();
  return cheb::Measure::mu_p(std::stoull(p_arg));
}

void write_text(const std::string& path, const std::string& text,
                std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << text;
}

struct AnalyzeArgs {
  std::string in_path;
  std::uint64_t p = 2;
  unsigned n_max = 10;
  int r_max = 6;
  std::string out_path;
  std::string csv_path;
  double im_tol = spectra::kDefaultImTol;
  double edge_tol = spectra::kDefaultEdgeTol;
  double tol = 1e-10;
};

int run_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  auto ds = ingest::parse_dataset(a.in_path);
  for (const auto& w : ds.warnings) err << "warning: " << w << "\n";

  auto groups = ingest::group_multisets(ds, a.im_tol, a.edge_tol);
  std::vector<spectra::EigenMultiset> family;
  for (auto& ms : groups)
    if (ms.p == a.p) family.push_back(std::move(ms));
  if (family.empty())
    throw DomainError("dataset has no records at p = " + std::to_string(a.p));

  auto report = equidist::build_report(family, a.p, a.n_max, a.tol);

  // attach per-space degree histograms where any record carries a degree
  for (auto& space : report.family) {
    std::vector<spectra::EigenRecord> recs;
    for (const auto& rec : ds.records)
      if (rec.level == space.level && rec.weight == space.weight &&
          rec.char_label == space.char_label && rec.p == space.p)
        recs.push_back(rec);
    bool any = std::any_of(recs.begin(), recs.end(),
                           [](const auto& r) { return r.field_degree.has_value(); });
    if (any)
      space.degrees = spectra::degree_histogram(
          std::span<const spectra::EigenRecord>(recs), a.r_max);
  }

  auto j = equidist::report_to_json(report);
  if (!a.csv_path.empty())
    write_text(a.csv_path, equidist::report_to_csv(report), out);
  if (a.out_path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    write_text(a.out_path, j.dump(2) + "\n", out);
    out << "family of " << report.family.size() << " space(s) at p = " << a.p
        << "\n";
    for (const auto& s : report.family)
      out << "  N=" << s.level << " k=" << s.weight << " chi=" << s.char_label
          << " dim=" << s.dimension << " ks=" << fmt17(s.ks)
          << " max_moment_err=" << fmt17(s.moments.max_abs_error) << "\n";
    out << "trend: first_ks=" << fmt17(report.first_ks)
        << " last_ks=" << fmt17(report.last_ks) << " strictly_decreasing="
        << (report.ks_strictly_decreasing ? "yes" : "no") << "\n";
  }
  return 0;
}

// --- `check`: quick self-test over the library's core identities ---------

int run_check(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, auto&& fn) {
    try {
      std::string detail = fn();
      if (detail.empty()) {
        out << "ok   " << name << "\n";
      } else {
        ++failures;
        out << "FAIL " << name << ": " << detail << "\n";
      }
    } catch (const std::exception& e) {
      ++failures;
      out << "FAIL " << name << ": " << e.what() << "\n";
    }
  };

  check("moment identity (n <= 10, p in {2,3,5})", [] {
    for (std::uint64_t p : {2, 3, 5})
      for (unsigned n = 0; n <= 10; ++n) {
        auto mu = cheb::Measure::mu_p(p);
        double q = cheb::integrate(
            [n](double x) { return cheb::cheb_eval(n, x); }, mu, 1e-12);
        double c = rat_double(cheb::moment_closed_form(n, p));
        if (std::abs(q - c) > 1e-10)
          return "n=" + std::to_string(n) + " p=" + std::to_string(p) +
                 " err=" + fmt17(std::abs(q - c));
      }
    return std::string{};
  });

  check("mu_inf orthonormality (n,k <= 8)", [] {
    auto mu = cheb::Measure::mu_infinity();
    for (unsigned n = 0; n <= 8; ++n)
      for (unsigned k = 0; k <= 8; ++k) {
        double q = cheb::integrate(
            [n, k](double x) {
              return cheb::cheb_eval(n, x) * cheb::cheb_eval(k, x);
            },
            mu, 1e-12);
        double want = n == k ? 1.0 : 0.0;
        if (std::abs(q - want) > 1e-10)
          return "n=" + std::to_string(n) + " k=" + std::to_string(k);
      }
    return std::string{};
  });

  check("recurrence boundary X_n(2) = n + 1 (n <= 30)", [] {
    for (unsigned n = 0; n <= 30; ++n)
      if (std::abs(cheb::cheb_eval(n, 2.0) - (n + 1.0)) > 1e-9)
        return "n=" + std::to_string(n);
    return std::string{};
  });

  check("psi_new lower bound and vanishing (N <= 1000)", [] {
    for (std::uint64_t N = 1; N <= 1000; ++N) {
      auto facN = nt::factorize(N);
      Rat bound = Rat(BigInt(N), pow_big(4, nt::omega(facN)));
      for (std::uint64_t f : nt::divisors(facN)) {
        auto facF = nt::factorize(f);
        Rat v = nt::psi_new(facN, facF);
        bool exc = nt::is_exceptional(facN, facF);
        if ((v == 0) != exc) return "vanishing mismatch at N=" +
                                    std::to_string(N) + " f=" + std::to_string(f);
        if (!exc && v < bound)
          return "bound fails at N=" + std::to_string(N) +
                 " f=" + std::to_string(f);
      }
    }
    return std::string{};
  });

  check("two-route prediction agreement (n <= 20, p <= 11)", [] {
    for (std::uint64_t p : {2, 5, 7, 11})
      for (unsigned n = 0; n <= 20; ++n) {
        auto tr = equidist::trace_ratio_prediction(12, 3, 4, p, n);
        if (tr.predicted != cheb::moment_closed_form(n, p))
          return "n=" + std::to_string(n) + " p=" + std::to_string(p);
      }
    return std::string{};
  });

  check("branch: (chi(p)^{-1/2})^2 * chi(p) = 1 (orders <= 50)", [] {
    for (std::uint64_t m = 1; m <= 50; ++m)
      for (std::uint64_t a = 0; a < m; ++a) {
        auto z = chars::RootOfUnity::make(a, m);
        auto r = chars::principal_inv_sqrt(z);
        auto v = r * r * z.value();
        if (std::abs(v.real() - 1.0) > 1e-13 || std::abs(v.imag()) > 1e-13)
          return "a/m=" + std::to_string(a) + "/" + std::to_string(m);
      }
    return std::string{};
  });

  check("restrict/induce round-trip (N <= 50)", [] {
    for (std::uint64_t N = 1; N <= 50; ++N)
      for (const auto& chi : chars::all_characters(N)) {
        auto prim = chars::restrict_to(chi, chi.conductor());
        auto back = chars::induce(prim, N);
        for (std::uint64_t a = 0; a < N; ++a)
          if (chi.evaluate(a) != back.evaluate(a))
            return "N=" + std::to_string(N) + " chi=" + chi.label();
        if (N == 1 && chi.evaluate(0) != back.evaluate(0))
          return std::string("N=1");
      }
    return std::string{};
  });

  check("sampler sanity (2000 draws of mu_2)", [] {
    auto xs = cheb::sample(cheb::Measure::mu_p(2), 2000, 42);
    double mean = 0.0, x2 = 0.0;
    for (double x : xs) {
      mean += x;
      x2 += cheb::cheb_eval(2, x);
    }
    mean /= static_cast<double>(xs.size());
    x2 /= static_cast<double>(xs.size());
    if (std::abs(mean) > 0.1) return "mean = " + fmt17(mean);
    if (std::abs(x2 - 0.5) > 0.1) return "X_2 mean = " + fmt17(x2);
    return std::string{};
  });

  out << (failures == 0 ? "all checks passed\n"
                        : std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hecke eigenvalue statistics: exact psi-family arithmetic, "
               "mu_p moments, and equidistribution diagnostics"};
  app.require_subcommand(1);

  // psi
  std::uint64_t psi_N = 1, psi_f = 0;
  auto* cmd_psi = app.add_subcommand(
      "psi", "psi(N), or psi_f^new(N) when --f is given");
  cmd_psi->add_option("--N", psi_N, "level N")->required();
  cmd_psi->add_option("--f", psi_f, "conductor f (must divide N)");

  // predict
  std::uint64_t pr_p = 2, pr_N = 0, pr_f = 0;
  std::int64_t pr_k = 0;
  unsigned pr_n = 0;
  auto* cmd_predict = app.add_subcommand(
      "predict", "limit moment [2|n] p^{-n/2}; with --N/--f/--k also the "
                 "finite main-term quotient");
  cmd_predict->add_option("--p", pr_p, "prime p")->required();
  cmd_predict->add_option("--n", pr_n, "moment index n")->required();
  cmd_predict->add_option("--N", pr_N, "level N");
  cmd_predict->add_option("--f", pr_f, "conductor f");
  cmd_predict->add_option("--k", pr_k, "weight k");

  // moments
  std::string mo_p = "2";
  unsigned mo_nmax = 20;
  double mo_tol = 1e-12;
  std::string mo_out;
  auto* cmd_moments = app.add_subcommand(
      "moments", "quadrature vs closed-form moment table (CSV)");
  cmd_moments->add_option("--p", mo_p, "prime p")->required();
  cmd_moments->add_option("--nmax", mo_nmax, "largest moment index");
  cmd_moments->add_option("--tol", mo_tol, "quadrature tolerance");
  cmd_moments->add_option("--out", mo_out, "output file (default stdout)");

  // density / cdf
  std::string de_p = "2", de_out;
  unsigned de_points = 201;
  auto* cmd_density =
      app.add_subcommand("density", "density table of mu_p or mu_inf (CSV)");
  cmd_density->add_option("--p", de_p, "prime p, or 'inf'")->required();
  cmd_density->add_option("--points", de_points, "grid size");
  cmd_density->add_option("--out", de_out, "output file (default stdout)");

  std::string cd_p = "2", cd_out;
  unsigned cd_points = 201;
  double cd_tol = 1e-10;
  auto* cmd_cdf =
      app.add_subcommand("cdf", "CDF table of mu_p or mu_inf (CSV)");
  cmd_cdf->add_option("--p", cd_p, "prime p, or 'inf'")->required();
  cmd_cdf->add_option("--points", cd_points, "grid size");
  cmd_cdf->add_option("--tol", cd_tol, "quadrature tolerance");
  cmd_cdf->add_option("--out", cd_out, "output file (default stdout)");

  // sample
  std::string sa_p = "2", sa_out;
  std::uint64_t sa_count = 0, sa_seed = 42;
  auto* cmd_sample =
      app.add_subcommand("sample", "deterministic synthetic draws from mu_p");
  cmd_sample->add_option("--p", sa_p, "prime p, or 'inf'")->required();
  cmd_sample->add_option("--count", sa_count, "number of draws")->required();
  cmd_sample->add_option("--seed", sa_seed, "RNG seed");
  cmd_sample->add_option("--out", sa_out, "output file (default stdout)");

  // analyze
  AnalyzeArgs an;
  auto* cmd_analyze = app.add_subcommand(
      "analyze", "dataset -> equidistribution report (KS + moments)");
  cmd_analyze->add_option("--in", an.in_path, "dataset (JSON lines)")
      ->required();
  cmd_analyze->add_option("--p", an.p, "prime p")->required();
  cmd_analyze->add_option("--nmax", an.n_max, "largest moment index");
  cmd_analyze->add_option("--rmax", an.r_max, "degree histogram cutoff");
  cmd_analyze->add_option("--out", an.out_path, "report JSON file");
  cmd_analyze->add_option("--csv", an.csv_path, "report CSV file");
  cmd_analyze->add_option("--im-tol", an.im_tol, "imaginary-residue bound");
  cmd_analyze->add_option("--edge-tol", an.edge_tol, "|lambda|-2 bound");
  cmd_analyze->add_option("--tol", an.tol, "CDF evaluation tolerance");

  // fetch
  std::string fe_char, fe_out, fe_config;
  std::string fe_url, fe_cache;
  bool fe_offline = false;
  ingest::SpaceQuery fq;
  auto* cmd_fetch = app.add_subcommand(
      "fetch", "fetch records from the configured database (with cache)");
  cmd_fetch->add_option("--level-min", fq.level_min, "smallest level");
  cmd_fetch->add_option("--level-max", fq.level_max, "largest level");
  cmd_fetch->add_option("--weight-min", fq.weight_min, "smallest weight");
  cmd_fetch->add_option("--weight-max", fq.weight_max, "largest weight");
  cmd_fetch->add_option("--p", fq.p, "prime p")->required();
  cmd_fetch->add_option("--char", fe_char,
                        "character: JSON file, inline JSON, or opaque label");
  cmd_fetch->add_option("--out", fe_out, "dataset file to write")->required();
  cmd_fetch->add_option("--config", fe_config, "config file");
  cmd_fetch->add_option("--url", fe_url, "endpoint override");
  cmd_fetch->add_option("--cache-dir", fe_cache, "cache directory override");
  cmd_fetch->add_flag("--offline", fe_offline, "serve from cache only");

  // check
  auto* cmd_check =
      app.add_subcommand("check", "run the library's invariant self-test");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return 64;
  }

  try {
    if (cmd_psi->parsed()) {
      auto facN = nt::factorize(psi_N);
      if (cmd_psi->count("--f") > 0) {
        out << rat_str(nt::psi_new(facN, nt::factorize(psi_f))) << "\n";
      } else {
        out << rat_str(nt::psi(facN)) << "\n";
      }
      return 0;
    }

    if (cmd_predict->parsed()) {
      bool finite = cmd_predict->count("--N") > 0;
      if (finite) {
        if (cmd_predict->count("--f") == 0 || cmd_predict->count("--k") == 0)
          throw DomainError("predict: --N requires --f and --k");
        auto tr = equidist::trace_ratio_prediction(pr_N, pr_f, pr_k, pr_p, pr_n);
        out << "predicted " << rat_str(tr.predicted) << "\n";
        out << "main_term_numerator " << rat_str(tr.main_term_numerator)
            << "\n";
        out << "main_term_denominator " << rat_str(tr.main_term_denominator)
            << "\n";
      } else {
        out << rat_str(nt::predicted_moment(pr_n, pr_p)) << "\n";
      }
      return 0;
    }

    if (cmd_moments->parsed()) {
      std::uint64_t p = std::stoull(mo_p);
      auto mu = cheb::Measure::mu_p(p);
      std::string csv = "n,p,quadrature,closed_form,abs_error\n";
      for (unsigned n = 0; n <= mo_nmax; ++n) {
        double q = cheb::integrate(
            [n](double x) { return cheb::cheb_eval(n, x); }, mu, mo_tol);
        Rat c = cheb::moment_closed_form(n, p);
        csv += std::to_string(n) + "," + std::to_string(p) + "," + fmt17(q) +
               "," + rat_str(c) + "," + fmt17(std::abs(q - rat_double(c))) +
               "\n";
      }
      write_text(mo_out, csv, out);
      return 0;
    }

    if (cmd_density->parsed()) {
      auto mu = measure_from_arg(de_p);
      if (de_points < 2) throw DomainError("density: need at least 2 points");
      std::string csv = "x,density\n";
      for (unsigned i = 0; i < de_points; ++i) {
        double x = -2.0 + 4.0 * i / (de_points - 1);
        csv += fmt17(x) + "," + fmt17(mu.density(x)) + "\n";
      }
      write_text(de_out, csv, out);
      return 0;
    }

    if (cmd_cdf->parsed()) {
      auto mu = measure_from_arg(cd_p);
      if (cd_points < 2) throw DomainError("cdf: need at least 2 points");
      std::string csv = "x,cdf\n";
      for (unsigned i = 0; i < cd_points; ++i) {
        double x = -2.0 + 4.0 * i / (cd_points - 1);
        csv += fmt17(x) + "," + fmt17(mu.cdf(x, cd_tol)) + "\n";
      }
      write_text(cd_out, csv, out);
      return 0;
    }

    if (cmd_sample->parsed()) {
      auto mu = measure_from_arg(sa_p);
      auto xs = cheb::sample(mu, sa_count, sa_seed);
      std::string text;
      for (double x : xs) text += fmt17(x) + "\n";
      write_text(sa_out, text, out);
      return 0;
    }

    if (cmd_analyze->parsed()) return run_analyze(an, out, err);

    if (cmd_fetch->parsed()) {
      ingest::Config cfg;
      if (!fe_config.empty()) cfg = ingest::Config::load(fe_config);
      auto opts = ingest::RemoteOptions::from_config(cfg);
      if (!fe_url.empty()) opts.url = fe_url;
      if (!fe_cache.empty()) opts.cache_dir = fe_cache;
      if (fe_offline) opts.offline = true;
      if (!fe_char.empty()) {
        std::error_code ec;
        if (std::filesystem::exists(fe_char, ec)) {
          std::ifstream in(fe_char);
          nlohmann::json j;
          in >> j;
          fq.character = chars::DirichletCharacter::from_json(j);
        } else if (!fe_char.empty() && fe_char.front() == '{') {
          fq.character = chars::DirichletCharacter::from_json(
              nlohmann::json::parse(fe_char));
        } else {
          fq.char_constraint = fe_char;
        }
      }
      if (fq.character) {
        fq.level_min = fq.level_max = fq.character->modulus();
      }
      auto ds = ingest::fetch_remote(fq, opts);
      for (const auto& w : ds.warnings) err << "advisory: " << w << "\n";
      ingest::write_dataset(ds, fe_out);
      out << "wrote " << ds.records.size() << " record(s) to " << fe_out
          << "\n";
      return 0;
    }

    if (cmd_check->parsed()) return run_check(out);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what()
        << " (last estimate " << fmt17(e.last_estimate) << ")\n";
    return 1;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return 2;
  } catch (const TransportError& e) {
    err << "transport error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace heckeq::cli
