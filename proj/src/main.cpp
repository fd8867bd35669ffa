#include "CLI11.hpp"
#include "json.hpp"

#include "conecalib/catalog.hpp"
#include "conecalib/certify.hpp"
#include "conecalib/deform.hpp"
#include "conecalib/formulas.hpp"
#include "conecalib/odecal.hpp"
#include "conecalib/phi0.hpp"
#include "conecalib/report.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace conecalib;
using ordered_json = nlohmann::ordered_json;

void emit(const std::string& content, const std::string& path) {
  if (path.empty())
    std::cout << content;
  else
    atomic_write(path, content);
}

Shape make_shape(const std::optional<int>& r, const std::optional<int>& s,
                 const std::optional<int>& k) {
  Shape sh;
  sh.r = r;
  sh.s = s;
  sh.k = k;
  return sh;
}

std::string shape_label(const MetricParams& P) {
  std::string out;
  if (P.shape.r) out += " r=" + std::to_string(*P.shape.r);
  if (P.shape.s) out += " s=" + std::to_string(*P.shape.s);
  if (P.shape.k) out += " k=" + std::to_string(*P.shape.k);
  return out;
}

std::string angle_label(const ConeAngle& a) {
  std::string out = "pi";
  if (a.num != 1) out = std::to_string(a.num) + "*pi";
  if (a.den != 1) out += "/" + std::to_string(a.den);
  return out;
}

// Symbolic exponent summary for the parametric rows; concrete numbers for the
// rigid ones.
std::string exponent_label(const ConeEntry& e) {
  switch (e.row_id) {
    case 1: return "p=2r-2, q=2s-2, l=p+q";
    case 2: return "p=2, q=2k-4, l=2k-3";
    case 3: return "p=4, q=4k-6, l=4k-3";
    case 4: return "p=8, q=8k-10, l=8k-3";
    default: {
      const MetricParams P = derive_params(e);
      return "p=" + format_g17(P.p) + ", q=" + format_g17(P.q) +
             ", l=" + format_g17(P.l);
    }
  }
}

int cmd_catalog(bool as_json, const std::string& out) {
  const auto& rows = list_catalog();
  if (as_json) {
    ordered_json arr = ordered_json::array();
    for (const ConeEntry& e : rows) {
      ordered_json j;
      j["row_id"] = e.row_id;
      j["group"] = e.group;
      j["link"] = e.link;
      j["angle"] = angle_label(e.angle);
      j["family"] = e.family == Family::Stretched ? "stretched" : "half_disc";
      j["exponents"] = exponent_label(e);
      if (e.takes_rs) j["parameters"] = "r, s >= 2";
      if (e.takes_k) j["parameters"] = e.row_id == 2 ? "k >= 3" : "k >= 2";
      if (!e.note.empty()) j["note"] = e.note;
      arr.push_back(j);
    }
    emit(arr.dump(2) + "\n", out);
    return 0;
  }
  std::string text;
  for (const ConeEntry& e : rows) {
    text += std::to_string(e.row_id) + "  " + e.group + "  link " + e.link +
            "  angle " + angle_label(e.angle) + "  [" + exponent_label(e) +
            "]";
    if (!e.note.empty()) text += "  (" + e.note + ")";
    text += "\n";
  }
  emit(text, out);
  return 0;
}

int cmd_certify(int row, const std::optional<int>& r,
                const std::optional<int>& s, const std::optional<int>& k,
                double beta, double tol, bool as_json, bool stable,
                const std::string& expect, const std::string& out) {
  const ConeEntry& entry = catalog_row(row);
  const MetricParams P = derive_params(entry, make_shape(r, s, k));

  const auto t0 = std::chrono::steady_clock::now();
  const ComassVerdict cv = certify(P, beta, tol);
  const double ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t0)
          .count();

  CertReport rep;
  rep.params = P;
  rep.group = entry.group;
  rep.link_label = entry.link;
  rep.verdict = cv;
  rep.wall_time_ms = ms;
  rep.stable = stable;

  if (as_json) {
    emit(rep.to_json(), out);
  } else {
    std::string text = "row " + std::to_string(row) + "  " + entry.group +
                       shape_label(P) + "\n";
    text += "beta " + format_g17(beta) + "  tol " + format_g17(tol) + "\n";
    text += std::string("verdict ") + to_string(cv.verdict) + "  method " +
            to_string(cv.method) + "\n";
    text += "sup_psi " + format_g17(cv.sup_psi) + " at theta " +
            format_g17(cv.sup_location) + "\n";
    if (cv.local_interval)
      text += "local interval [" + format_g17(cv.local_interval->first) +
              ", " + format_g17(cv.local_interval->second) + "]\n";
    if (!cv.eta_roots.empty()) {
      text += "eta roots";
      for (double x : cv.eta_roots) text += " " + format_g17(x);
      text += "\n";
    }
    if (!stable) text += "wall_time_ms " + format_g17(ms) + "\n";
    emit(text, out);
  }
  if (!expect.empty() && cv.verdict != Verdict::Global) return 2;
  return 0;
}

int cmd_sweep(int row, int max, std::vector<double> betas, bool csv,
              const std::string& out) {
  if (row != 1)
    throw std::domain_error("the classification sweep covers row 1");
  if (betas.empty()) betas = {1.0, 1.2};
  const auto cells = sweep_row1(max, max, betas);

  if (csv) {
    std::string text =
        "r,s,beta,verdict,method,sup_psi,interval_lo,interval_hi\n";
    for (const SweepCell& c : cells) {
      text += std::to_string(c.r) + "," + std::to_string(c.s) + "," +
              format_g17(c.best_beta) + "," + to_string(c.best.verdict) + "," +
              to_string(c.best.method) + "," + format_g17(c.best.sup_psi);
      if (c.best.local_interval)
        text += "," + format_g17(c.best.local_interval->first) + "," +
                format_g17(c.best.local_interval->second);
      else
        text += ",,";
      text += "\n";
    }
    emit(text, out);
    return 0;
  }
  // Text grid: one row per r, G/L/. per s.
  const int rmax = max;
  std::string text = "    s:";
  for (int s = 2; s <= rmax; ++s)
    text += (s < 10 ? "  " : " ") + std::to_string(s);
  text += "\n";
  for (int r = 2; r <= rmax; ++r) {
    text += "r=" + std::to_string(r) + (r < 10 ? "  " : " ");
    for (const SweepCell& c : cells)
      if (c.r == r)
        text += std::string("  ") + (c.best.verdict == Verdict::Global ? "G"
                                     : c.best.verdict == Verdict::Local ? "L"
                                                                        : ".");
    text += "\n";
  }
  emit(text, out);
  return 0;
}

int cmd_plot(int row, const std::optional<int>& r, const std::optional<int>& s,
             const std::optional<int>& k, double beta, int samples, bool csv,
             const std::string& svg_path, const std::string& out) {
  const ConeEntry& entry = catalog_row(row);
  const MetricParams P = derive_params(entry, make_shape(r, s, k));

  std::vector<double> th(samples), ps(samples), et(samples), ph(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = P.domain_end * (i + 0.5) / samples;
    th[i] = t;
    ps[i] = psi(t, P, beta);
    et[i] = eta(t, P, beta);
    ph[i] = phi(t, P);
  }

  if (!svg_path.empty()) {
    const std::string title = "squared comass density, row " +
                              std::to_string(row) + shape_label(P) +
                              ", beta=" + format_g17(beta);
    atomic_write(svg_path,
                 svg_line_chart(th, {ps}, {"psi"}, title, true));
  }
  if (csv || svg_path.empty()) {
    emit(csv_table({{"theta", th}, {"psi", ps}, {"eta", et}, {"phi", ph}}),
         out);
  }
  return 0;
}

// Smallest admissible vanishing order above the undeformed exponent: first
// member of {e/2 + 1 + 2j} exceeding it.
int default_order(double half_exp_base, double undeformed) {
  int n = static_cast<int>(half_exp_base / 2.0) + 3;
  while (n <= undeformed) n += 2;
  return n;
}

int cmd_deform(int row, int r, int s, double beta, double x0, double eps,
               std::optional<int> n_zero, std::optional<int> n_end, bool csv,
               bool as_json, const std::string& out) {
  if (row != 1) throw std::domain_error("deformation covers row 1");
  const MetricParams P = row1_params(r, s);
  const int Nz = n_zero ? *n_zero : default_order(P.q, beta * P.q);
  const int Ne = n_end ? *n_end : default_order(P.p, beta * P.p);

  auto [profile, rep] = build_theorem_c_deformation(P, beta, Nz, Ne, x0, eps);

  std::string csv_text;
  if (csv) {
    const int n = 2001;
    std::vector<double> th(n), lam(n), dc(n);
    DeformationSpec spec_zero{beta * P.p, beta * P.q, std::pow(P.tau, -beta),
                              Nz, rep.x0, rep.eps, Side::NearZero};
    DeformationSpec spec_end = spec_zero;
    spec_end.N = Ne;
    spec_end.side = Side::NearPiOver2;
    for (int i = 0; i < n; ++i) {
      const double t = P.domain_end * (i + 0.5) / n;
      th[i] = t;
      lam[i] = profile.value_at(t);
      dc[i] = deformed_comass_sq(t, P,
                                 t < P.theta0 ? spec_zero : spec_end,
                                 lam[i], profile.deriv_at(t));
    }
    csv_text =
        csv_table({{"theta", th}, {"lambda", lam}, {"deformed_comass_sq", dc}});
  }

  std::string json_text;
  if (as_json || !csv) {
    ordered_json j;
    j["max_residual"] = rep.max_residual;
    j["x0"] = rep.x0;
    j["eps"] = rep.eps;
    j["parity_c1"] = rep.parity_c1;
    j["halvings"] = rep.halvings;
    if (!rep.note.empty()) j["note"] = rep.note;
    json_text = j.dump(2) + "\n";
  }

  if (!csv_text.empty() && !json_text.empty() && !out.empty()) {
    atomic_write(out, csv_text);
    atomic_write(out + ".json", json_text);
  } else {
    emit(csv_text + json_text, out);
  }
  return 0;
}

int cmd_ode(double start, double end, bool /*csv*/, const std::string& out) {
  const OdeSolution sol = solve_lambda1(start, end);
  const int n = 2001;
  std::vector<double> th(n), lam(n), star(n);
  for (int i = 0; i < n; ++i) {
    const double t =
        sol.theta_start + (sol.theta_end - sol.theta_start) * i / (n - 1.0);
    th[i] = t;
    lam[i] = sol.eval(t);
    star[i] = star_comass_sq(t, lam[i], sol.eval_deriv(t));
  }
  emit(csv_table({{"theta", th}, {"lambda1", lam}, {"star_comass_sq", star}}),
       out);
  return 0;
}

int cmd_phi0(int row, const std::optional<int>& r, const std::optional<int>& s,
             const std::optional<int>& k, std::optional<double> beta_opt,
             bool csv, bool report, const std::string& out) {
  const ConeEntry& entry = catalog_row(row);
  const MetricParams P = derive_params(entry, make_shape(r, s, k));

  AngularProfile seed;
  double budget = 1e-9;
  if (P.family == Family::HalfDisc) {
    seed = half_disc_seed(P);
  } else if (row == 3 && P.shape.k && *P.shape.k == 4) {
    seed = ode_calibrated_seed();
    budget = 1e-6;
  } else {
    double beta = 1.0;
    if (beta_opt) {
      beta = *beta_opt;
    } else if ((row == 1 && ((r == 2 && s == 7) || (r == 7 && s == 2))) ||
               (row == 2 && k == 9)) {
      beta = 1.2;
    }
    seed = power_seed(P, beta);
  }

  const Phi0Profile ph = build_phi0(P, seed, 0.1, 3e-6, budget);

  std::string csv_text;
  if (csv || !report) {
    const int n = 2001;
    std::vector<double> th(n), y(n), res(n);
    for (int i = 0; i < n; ++i) {
      const double t = P.domain_end * (i + 0.5) / n;
      th[i] = t;
      y[i] = ph.profile.value_at(t);
      const double d = ph.profile.deriv_at(t) / P.alpha;
      res[i] = y[i] * y[i] + d * d - envelope(t, P);
    }
    csv_text = csv_table({{"theta", th}, {"phi0", y}, {"residual", res}});
  }

  std::string json_text;
  if (report) {
    ordered_json j;
    j["support"] = {ph.support_lo, ph.support_hi};
    j["residual_max"] = ph.residual_max;
    j["theta0"] = P.theta0;
    j["value_at_theta0"] = ph.value_at_theta0;
    j["mollify_eps"] = ph.mollify_eps;
    json_text = j.dump(2) + "\n";
  }

  if (!csv_text.empty() && !json_text.empty() && !out.empty()) {
    atomic_write(out, csv_text);
    atomic_write(out + ".json", json_text);
  } else {
    emit(csv_text + json_text, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification toolkit for homogeneous area-minimizing "
               "hypercones"};
  app.require_subcommand(1);
  app.set_config("--config");

  int rc = 0;

  // catalog list
  auto* catalog_cmd = app.add_subcommand("catalog", "catalog of cone families");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "print the 13 rows");
  {
    auto as_json = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    list_cmd->add_flag("--json", *as_json, "emit JSON");
    list_cmd->add_option("-o,--output", *out, "write to file");
    list_cmd->callback(
        [&rc, as_json, out] { rc = cmd_catalog(*as_json, *out); });
  }

  // certify
  auto* certify_cmd =
      app.add_subcommand("certify", "certify the comass bound for one cone");
  {
    auto row = std::make_shared<int>(1);
    auto r = std::make_shared<std::optional<int>>();
    auto s = std::make_shared<std::optional<int>>();
    auto k = std::make_shared<std::optional<int>>();
    auto beta = std::make_shared<double>(1.0);
    auto tol = std::make_shared<double>(1e-9);
    auto as_json = std::make_shared<bool>(false);
    auto stable = std::make_shared<bool>(false);
    auto expect = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    certify_cmd->add_option("--row", *row, "catalog row")->required();
    certify_cmd->add_option("--r", *r, "first sphere parameter (row 1)");
    certify_cmd->add_option("--s", *s, "second sphere parameter (row 1)");
    certify_cmd->add_option("--k", *k, "family parameter (rows 2-4)");
    certify_cmd->add_option("--beta", *beta, "calibration exponent")
        ->required();
    certify_cmd->add_option("--tol", *tol, "certified-sup tolerance");
    certify_cmd->add_flag("--json", *as_json, "emit the JSON report");
    certify_cmd->add_flag("--stable", *stable,
                          "omit wall time for byte-identical reruns");
    certify_cmd->add_option("--expect", *expect, "exit 2 unless this verdict")
        ->check(CLI::IsMember({"global"}));
    certify_cmd->add_option("-o,--output", *out, "write to file");
    certify_cmd->callback([=, &rc] {
      if (*beta <= 0.5 || *beta > 5)
        throw std::domain_error("beta must lie in (0.5, 5]");
      rc = cmd_certify(*row, *r, *s, *k, *beta, *tol, *as_json, *stable,
                       *expect, *out);
    });
  }

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "classify the row-1 grid r, s <= max");
  {
    auto row = std::make_shared<int>(1);
    auto max = std::make_shared<int>(12);
    auto betas = std::make_shared<std::vector<double>>();
    auto csv = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    sweep_cmd->add_option("--row", *row, "catalog row (must be 1)");
    sweep_cmd->add_option("--max", *max, "grid bound")->check(CLI::Range(2, 12));
    sweep_cmd->add_option("--betas", *betas, "exponents to try")
        ->delimiter(',');
    sweep_cmd->add_flag("--csv", *csv, "emit CSV");
    sweep_cmd->add_option("-o,--output", *out, "write to file");
    sweep_cmd->callback([=, &rc] { rc = cmd_sweep(*row, *max, *betas, *csv, *out); });
  }

  // plot psi
  auto* plot_cmd = app.add_subcommand("plot", "sample profile curves");
  plot_cmd->require_subcommand(1);
  auto* psi_cmd = plot_cmd->add_subcommand("psi", "squared comass density");
  {
    auto row = std::make_shared<int>(1);
    auto r = std::make_shared<std::optional<int>>();
    auto s = std::make_shared<std::optional<int>>();
    auto k = std::make_shared<std::optional<int>>();
    auto beta = std::make_shared<double>(1.0);
    auto samples = std::make_shared<int>(2001);
    auto csv = std::make_shared<bool>(false);
    auto svg = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    psi_cmd->add_option("--row", *row, "catalog row")->required();
    psi_cmd->add_option("--r", *r, "first sphere parameter (row 1)");
    psi_cmd->add_option("--s", *s, "second sphere parameter (row 1)");
    psi_cmd->add_option("--k", *k, "family parameter (rows 2-4)");
    psi_cmd->add_option("--beta", *beta, "calibration exponent");
    psi_cmd->add_option("--samples", *samples, "grid size")
        ->check(CLI::Range(2, 10000000));
    psi_cmd->add_flag("--csv", *csv, "emit CSV even when --svg is given");
    psi_cmd->add_option("--svg", *svg, "write an SVG chart here");
    psi_cmd->add_option("-o,--output", *out, "write CSV to file");
    psi_cmd->callback([=, &rc] {
      rc = cmd_plot(*row, *r, *s, *k, *beta, *samples, *csv, *svg, *out);
    });
  }

  // deform
  auto* deform_cmd = app.add_subcommand(
      "deform", "two-ended exponent bump for a certified row-1 cone");
  {
    auto row = std::make_shared<int>(1);
    auto r = std::make_shared<int>(0);
    auto s = std::make_shared<int>(0);
    auto beta = std::make_shared<double>(1.0);
    auto x0 = std::make_shared<double>(0.1);
    auto eps = std::make_shared<double>(-1.0);
    auto nz = std::make_shared<std::optional<int>>();
    auto ne = std::make_shared<std::optional<int>>();
    auto csv = std::make_shared<bool>(false);
    auto as_json = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    deform_cmd->add_option("--row", *row, "catalog row (must be 1)");
    deform_cmd->add_option("--r", *r, "first sphere parameter")->required();
    deform_cmd->add_option("--s", *s, "second sphere parameter")->required();
    deform_cmd->add_option("--beta", *beta, "calibration exponent")
        ->required();
    deform_cmd->add_option("--x0", *x0, "initial bump radius");
    deform_cmd->add_option("--eps", *eps,
                           "mollification width (default x0/6)");
    deform_cmd->add_option("--n-zero", *nz, "vanishing order at theta = 0");
    deform_cmd->add_option("--n-end", *ne, "vanishing order at theta = pi/2");
    deform_cmd->add_flag("--csv", *csv, "emit the profile CSV");
    deform_cmd->add_flag("--json", *as_json, "emit the JSON report");
    deform_cmd->add_option("-o,--output", *out, "write to file");
    deform_cmd->callback([=, &rc] {
      rc = cmd_deform(*row, *r, *s, *beta, *x0, *eps, *nz, *ne, *csv,
                      *as_json, *out);
    });
  }

  // ode lambda1
  auto* ode_cmd = app.add_subcommand("ode", "exponent ODE constructions");
  ode_cmd->require_subcommand(1);
  auto* lam_cmd = ode_cmd->add_subcommand(
      "lambda1", "comass-saturating exponent profile (row 3, k = 4)");
  {
    auto start = std::make_shared<double>(1.007);
    auto end = std::make_shared<double>(1.2);
    auto csv = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    lam_cmd->add_option("--start", *start, "integration start");
    lam_cmd->add_option("--end", *end, "integration end");
    lam_cmd->add_flag("--csv", *csv, "emit CSV (default)");
    lam_cmd->add_option("-o,--output", *out, "write to file");
    lam_cmd->callback([=, &rc] { rc = cmd_ode(*start, *end, *csv, *out); });
  }

  // phi0
  auto* phi0_cmd = app.add_subcommand(
      "phi0", "compactly supported calibration profile");
  {
    auto row = std::make_shared<int>(1);
    auto r = std::make_shared<std::optional<int>>();
    auto s = std::make_shared<std::optional<int>>();
    auto k = std::make_shared<std::optional<int>>();
    auto beta = std::make_shared<std::optional<double>>();
    auto csv = std::make_shared<bool>(false);
    auto report = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    phi0_cmd->add_option("--row", *row, "catalog row")->required();
    phi0_cmd->add_option("--r", *r, "first sphere parameter (row 1)");
    phi0_cmd->add_option("--s", *s, "second sphere parameter (row 1)");
    phi0_cmd->add_option("--k", *k, "family parameter (rows 2-4)");
    phi0_cmd->add_option("--beta", *beta,
                         "seed exponent (default: row-dependent)");
    phi0_cmd->add_flag("--csv", *csv, "emit the profile CSV");
    phi0_cmd->add_flag("--report", *report, "emit the JSON report");
    phi0_cmd->add_option("-o,--output", *out, "write to file");
    phi0_cmd->callback([=, &rc] {
      rc = cmd_phi0(*row, *r, *s, *k, *beta, *csv, *report, *out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
