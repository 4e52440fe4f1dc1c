// Command-line front end: HGF evaluation, tau tables, Laplace-sequence
// traces, and the verification suites, all emitting machine-readable
// reports (JSON or CSV).

#include <CLI11.hpp>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "gftoda/hgf.hpp"
#include "gftoda/lab.hpp"
#include "gftoda/laplace.hpp"
#include "gftoda/report.hpp"
#include "gftoda/toda.hpp"
#include "gftoda/verify.hpp"

using namespace gftoda;

namespace {

std::vector<double> parse_points(const std::string& csv) {
  std::vector<double> out;
  std::string cur;
  for (char ch : csv + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

// flags override config-file values override built-in defaults: any key in
// the config document not given on the command line is appended as if it
// had been typed
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  std::string path;
  for (size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") path = args[i + 1];
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file: " + path);
  Json doc = Json::parse(f);
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    args.push_back(flag);
    args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  return args;
}

Json run_config(const std::string& command, std::uint64_t seed, double tol) {
  Json j;
  j["command"] = command;
  j["seed"] = seed;
  j["tol"] = tol;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gftoda - Gelfand hypergeometric functions and Toda-Hirota tau sequences"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json";
  double tol = 1e-10;
  std::uint64_t seed = 7;
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", tol, "quadrature tolerance");
  app.add_option("--seed", seed, "seed for randomized checks");

  auto* cmd_eval = app.add_subcommand("eval-hgf", "evaluate a classical preset HGF");
  std::string preset_name = "gauss", points_csv;
  double pa = 0.4, pb = 0.5, pc = 1.7;
  cmd_eval->add_option("--preset", preset_name, "gauss|kummer|bessel|hermite-weber|airy");
  cmd_eval->add_option("--a", pa, "classical parameter a");
  cmd_eval->add_option("--b", pb, "classical parameter b");
  cmd_eval->add_option("--c", pc, "classical parameter c");
  cmd_eval->add_option("--points", points_csv, "comma-separated evaluation points");

  auto* cmd_tau = app.add_subcommand("tau", "tau sequence table with bilinear residuals");
  std::string case_name = "gauss";
  int m_min = -3, m_max = 3;
  std::string tau_points = "0.15,0.5,0.85";
  double free_a_re = 1.0, free_a_im = 0.0;
  cmd_tau->add_option("--case", case_name, "gauss|kummer|bessel");
  cmd_tau->add_option("--m-min", m_min, "lowest lattice index");
  cmd_tau->add_option("--m-max", m_max, "highest lattice index");
  cmd_tau->add_option("--points", tau_points, "slice family parameters in [0,1]");
  cmd_tau->add_option("--free-constant-re", free_a_re, "free seed constant, real part");
  cmd_tau->add_option("--free-constant-im", free_a_im, "free seed constant, imaginary part");

  auto* cmd_lap = app.add_subcommand("laplace-trace", "Laplace sequence: engine vs closed form");
  std::string family = "epd";
  int n_min = -3, n_max = 3;
  double al_re = 0.37, al_im = 0.11, be_re = 0.81, be_im = -0.07;
  double px_re = 1.5, px_im = 0.1, py_re = -0.8, py_im = -0.05;
  cmd_lap->add_option("--family", family, "epd|confluent|doubly-confluent");
  cmd_lap->add_option("--n-min", n_min, "lowest sequence index");
  cmd_lap->add_option("--n-max", n_max, "highest sequence index");
  cmd_lap->add_option("--alpha-re", al_re);
  cmd_lap->add_option("--alpha-im", al_im);
  cmd_lap->add_option("--beta-re", be_re);
  cmd_lap->add_option("--beta-im", be_im);
  cmd_lap->add_option("--x-re", px_re, "probe point x");
  cmd_lap->add_option("--x-im", px_im);
  cmd_lap->add_option("--y-re", py_re, "probe point y");
  cmd_lap->add_option("--y-im", py_im);

  auto* cmd_verify = app.add_subcommand("verify", "run the verification suites");
  std::vector<std::string> suites;
  cmd_verify->add_option("--suite", suites, "suite name or 'all' (repeatable)");

  try {
    auto args = apply_config_file(std::vector<std::string>(argv + 1, argv + argc));
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(int(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    HgfOptions opt;
    opt.quad.tol_abs = tol * 1e-2;
    opt.quad.tol_rel = tol * 1e-1;

    if (*cmd_eval) {
      const auto& preset = ClassicalPreset::by_name(preset_name);
      AlphaParams alpha = preset.alpha(pa, pb, pc);
      Report rep;
      rep.command = "eval-hgf";
      rep.config_echo = run_config("eval-hgf", seed, tol);
      rep.config_echo["preset"] = preset_name;
      rep.config_echo["a"] = pa;
      rep.config_echo["b"] = pb;
      rep.config_echo["c"] = pc;
      for (double x : parse_points(points_csv)) {
        preset.check_domain(cplx(x));
        QuadResult info;
        cplx F = hgf_eval_raw(preset.embed(cplx(x)), alpha, preset.contour(cplx(x)), opt, &info);
        Json row;
        row["point"] = complex_json(cplx(x));
        row["value"] = complex_json(F);
        row["abs_error_estimate"] = info.abs_error_estimate;
        row["threshold"] = tol;
        rep.rows.push_back(std::move(row));
      }
      write_report(rep, format, out_path);
      return 0;
    }

    if (*cmd_tau) {
      const SliceLab* lab = nullptr;
      if (case_name == "gauss")
        lab = &lab_1111();
      else if (case_name == "kummer")
        lab = &lab_211();
      else if (case_name == "bessel")
        lab = &lab_22();
      else
        throw std::invalid_argument("unknown tau case: " + case_name);
      if (m_min > m_max) throw std::invalid_argument("tau: need m-min <= m-max");

      TauSequence tau(*lab, cplx(free_a_re, free_a_im), opt);
      tau.require_admissible(m_min, m_max);
      Report rep;
      rep.command = "tau";
      rep.config_echo = run_config("tau", seed, tol);
      rep.config_echo["case"] = case_name;
      rep.config_echo["m_min"] = m_min;
      rep.config_echo["m_max"] = m_max;
      for (int m = m_min; m <= m_max; ++m) {
        for (double t : parse_points(tau_points)) {
          SlicePoint x = lab->point(t);
          auto f = tau.factors(m, x);
          Json row;
          row["m"] = m;
          row["t"] = t;
          row["tau"] = complex_json(f.tau);
          row["c_m"] = complex_json(f.c_m);
          row["t_m"] = complex_json(f.t_m);
          row["g_m"] = complex_json(f.g_m);
          row["hgf"] = complex_json(f.F);
          // the bilinear residual needs both neighbours inside the range
          if (m - 1 >= m_min && m + 1 <= m_max) {
            double r = tau.thde_residual(m, x);
            row["residual"] = r;
            row["threshold"] = 1e-6;
            row["pass"] = r <= 1e-6;
          } else {
            row["residual"] = "unavailable";
          }
          rep.rows.push_back(std::move(row));
        }
      }
      write_report(rep, format, out_path);
      return rep.all_pass() ? 0 : 1;
    }

    if (*cmd_lap) {
      auto fam = closed_family_by_name(family, cplx(al_re, al_im), cplx(be_re, be_im));
      NormalSeq seq(fam.a_m(0), fam.c_m(0), 14);
      FieldPoint pt{cplx(px_re, px_im), cplx(py_re, py_im)};
      Report rep;
      rep.command = "laplace-trace";
      rep.config_echo = run_config("laplace-trace", seed, tol);
      rep.config_echo["family"] = family;
      rep.config_echo["n_min"] = n_min;
      rep.config_echo["n_max"] = n_max;
      for (int n = n_min; n <= n_max; ++n) {
        auto e = seq.entry(n, pt, 0);  // rejects requests past the jet budget
        Json row;
        row["n"] = n;
        row["a_engine"] = complex_json(e.a.value());
        row["c_engine"] = complex_json(e.c.value());
        cplx ac = fam.a_m(n).value(pt), cc = fam.c_m(n).value(pt);
        row["a_closed"] = complex_json(ac);
        row["c_closed"] = complex_json(cc);
        double diff = std::max(std::abs(e.a.value() - ac), std::abs(e.c.value() - cc));
        row["coefficient_diff"] = diff;
        row["threshold"] = 1e-9;
        row["pass"] = diff <= 1e-9;
        if (n - 1 >= n_min && n + 1 <= n_max && std::abs(n) + 1 <= 5)
          row["toda_residual"] = toda_te_residual(seq, n, pt);
        rep.rows.push_back(std::move(row));
      }
      write_report(rep, format, out_path);
      return rep.all_pass() ? 0 : 1;
    }

    if (*cmd_verify) {
      VerifyConfig cfg{seed};
      auto results = run_suites(suites, cfg);
      Json echo = run_config("verify", seed, tol);
      echo["suites"] = suites.empty() ? Json::array({"all"}) : Json(suites);
      Report rep = report_from_suites("verify", results, echo);
      write_report(rep, format, out_path);
      return rep.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
