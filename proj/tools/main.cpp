// Command line front end: classification reports, the verification
// registry, region maps and retraction traces over the standard charts.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iwasawa/acs.hpp"
#include "iwasawa/dolbeault.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/metric.hpp"
#include "iwasawa/retract.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/serialization.hpp"
#include "iwasawa/spectra.hpp"
#include "iwasawa/verify.hpp"

namespace {

using iwasawa::ACS;
using iwasawa::Complex;
using iwasawa::Json;

// Bad flags, unreadable files and malformed payloads exit with 2; errors
// raised by the mathematics on well-formed input exit with 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_json(const std::string& path) {
  if (path == "-") return Json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file: " + path);
  return Json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  out << text;
}

// Accepts {"J": rows}, {"plus": coords} or {"minus": coords}.
ACS parse_structure(const std::string& path) {
  Json j = load_json(path);
  try {
    if (j.contains("J")) return iwasawa::acs_from(j);
    if (j.contains("plus"))
      return iwasawa::j_from_echelon_plus(iwasawa::echelon_plus_from(j.at("plus")));
    if (j.contains("minus"))
      return iwasawa::j_from_echelon_minus(iwasawa::echelon_minus_from(j.at("minus")));
  } catch (const iwasawa::Error& e) {
    throw UsageError(std::string("bad structure input: ") + e.what());
  }
  throw UsageError("input needs one of the keys J, plus, minus");
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_classify(const std::string& in_path, double tol, bool tol_set,
                 const std::string& out_path) {
  ACS acs = parse_structure(in_path);
  const double itol = tol_set ? tol : 1e-9;

  Json report;
  const bool integrable = iwasawa::is_integrable(acs, itol);
  report["integrable"] = integrable;
  if (!integrable) {
    report["obstruction"] = iwasawa::dbar_obstruction(acs);
    write_text(out_path, report.dump(2) + "\n");
    return 0;
  }

  report["component"] = iwasawa::component_name(iwasawa::classify(acs));
  report["orient_total"] = iwasawa::orientation_total(acs);
  report["orient_D"] = iwasawa::orientation_D(iwasawa::restrict_to_D(acs));

  const bool fin0 = iwasawa::in_c0_finite(acs);
  const bool fin1 = iwasawa::in_c1_finite(acs);
  const double p0 = iwasawa::c0_pivot(acs);
  const double p1 = iwasawa::c1_pivot(acs);
  report["in_C0_finite"] = fin0;
  report["in_C1_finite"] = fin1;
  report["c0_pivot"] = p0;
  report["c1_pivot"] = p1;
  const double warn = iwasawa::kPivotThreshold * iwasawa::kPivotWarnFactor;
  report["near_chart_threshold"] = (fin0 && p0 < warn) || (fin1 && p1 < warn);

  if (fin0) {
    iwasawa::EchelonPlus c = iwasawa::echelon_plus_from_j(acs);
    report["plus"] = iwasawa::json_of(c);
    report["spectrum"] = iwasawa::json_of(iwasawa::spectrum(c));
    report["orbit_dimension"] = iwasawa::orbit_dimension(c);
  } else {
    report["plus"] = nullptr;
    report["spectrum"] = nullptr;
    report["orbit_dimension"] = nullptr;
  }
  report["minus"] = fin1 ? iwasawa::json_of(iwasawa::echelon_minus_from_j(acs)) : Json(nullptr);
  report["h1"] = iwasawa::dolbeault_report(acs).h1;

  write_text(out_path, report.dump(2) + "\n");
  return 0;
}

int run_verify(const iwasawa::RunConfig& cfg, const std::string& out_path,
               const std::string& only) {
  try {
    cfg.validate();
  } catch (const iwasawa::Error& e) {
    throw UsageError(e.what());
  }
  std::vector<iwasawa::SuiteResult> results;
  if (only.empty()) {
    results = iwasawa::run_all_suites(cfg);
  } else {
    bool found = false;
    for (const auto& suite : iwasawa::verification_suites()) {
      if (suite.name != only) continue;
      found = true;
      results.push_back(suite.run(cfg));
    }
    if (!found) throw UsageError("unknown suite: " + only);
  }

  bool all_pass = true;
  std::printf("%-34s %-6s %9s  %s\n", "suite", "status", "time", "detail");
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%-34s %-6s %8.2fs  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                r.detail.c_str());
  }
  std::printf("%s (%zu suites, seed=%llu, samples=%lld)\n", all_pass ? "ALL PASS" : "FAILURES",
              results.size(), static_cast<unsigned long long>(cfg.seed),
              static_cast<long long>(cfg.samples));

  if (!out_path.empty()) {
    // The file report carries no timings so repeated runs are identical.
    Json out;
    out["seed"] = cfg.seed;
    out["samples"] = cfg.samples;
    out["tolerance_overridden"] = cfg.tol_overridden;
    if (cfg.tol_overridden) out["tolerance"] = cfg.tolerance;
    out["suites"] = Json::array();
    for (const auto& r : results)
      out["suites"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    out["all_pass"] = all_pass;
    write_text(out_path, out.dump(2) + "\n");
  }
  return all_pass ? 0 : 1;
}

struct MapRow {
  Complex lambda, mu;
  iwasawa::Region region;
  iwasawa::Component component;
};

std::vector<MapRow> sample_map_rows(std::uint64_t seed, std::int64_t per_chart) {
  std::vector<MapRow> rows;
  rows.reserve(static_cast<std::size_t>(2 * per_chart));
  std::mt19937_64 rng(seed);
  for (std::int64_t s = 0; s < 2 * per_chart; ++s) {
    const bool plus_chart = s < per_chart;
    ACS j = plus_chart ? iwasawa::j_from_echelon_plus(iwasawa::random_echelon_plus(rng, 1.5))
                       : iwasawa::j_from_echelon_minus(iwasawa::random_echelon_minus(rng, 1.5));
    if (!iwasawa::in_c0_finite(j)) continue;  // no root pair to place
    iwasawa::SpectrumClass sp = iwasawa::spectrum(iwasawa::echelon_plus_from_j(j));
    rows.push_back({sp.lambda, sp.mu, sp.region, iwasawa::classify(j)});
  }
  return rows;
}

std::string map_csv(const std::vector<MapRow>& rows) {
  std::ostringstream out;
  out << "lambda_re,lambda_im,mu_re,mu_im,region,component\n";
  for (const auto& r : rows) {
    out << g17(r.lambda.real()) << ',' << g17(r.lambda.imag()) << ',' << g17(r.mu.real()) << ','
        << g17(r.mu.imag()) << ',' << iwasawa::region_name(r.region) << ','
        << iwasawa::component_name(r.component) << '\n';
  }
  return out.str();
}

const char* region_color(iwasawa::Region r) {
  switch (r) {
    case iwasawa::Region::ConjugatePair: return "#1f77b4";
    case iwasawa::Region::RealTriangle: return "#2ca02c";
    case iwasawa::Region::NegativeDiagonal: return "#9467bd";
    case iwasawa::Region::Shaded: return "#d62728";
    case iwasawa::Region::Boundary: return "#7f7f7f";
  }
  return "#000000";
}

std::string map_svg(const std::vector<MapRow>& rows) {
  std::ostringstream s;
  auto lx = [](double x) { return 20.0 + (x + 3.0) / 6.0 * 400.0; };
  auto ly = [](double y) { return 20.0 + (3.0 - y) / 6.0 * 400.0; };
  auto rx = [](double x) { return 480.0 + (x + 1.5) / 3.0 * 400.0; };
  auto ry = [](double y) { return 20.0 + (1.5 - y) / 3.0 * 400.0; };

  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"460\" "
       "viewBox=\"0 0 900 460\">\n";
  s << "<rect x=\"20\" y=\"20\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"#ccc\"/>\n";
  s << "<rect x=\"480\" y=\"20\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"#ccc\"/>\n";
  s << "<text x=\"30\" y=\"445\" font-size=\"13\">real root pairs</text>\n";
  s << "<text x=\"490\" y=\"445\" font-size=\"13\">conjugate root pairs</text>\n";
  // Axes, the unit-product hyperbola and the coincidence diagonal.
  s << "<line x1=\"" << lx(-3) << "\" y1=\"" << ly(0) << "\" x2=\"" << lx(3) << "\" y2=\"" << ly(0)
    << "\" stroke=\"#999\"/>\n";
  s << "<line x1=\"" << lx(0) << "\" y1=\"" << ly(-3) << "\" x2=\"" << lx(0) << "\" y2=\"" << ly(3)
    << "\" stroke=\"#999\"/>\n";
  s << "<line x1=\"" << lx(-3) << "\" y1=\"" << ly(-3) << "\" x2=\"" << lx(3) << "\" y2=\"" << ly(3)
    << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  s << "<polyline fill=\"none\" stroke=\"#bbb\" points=\"";
  for (int k = 0; k <= 80; ++k) {
    const double x = 1.0 / 3.0 + (3.0 - 1.0 / 3.0) * k / 80.0;
    s << lx(x) << ',' << ly(1.0 / x) << ' ';
  }
  s << "\"/>\n";
  s << "<circle cx=\"" << rx(0) << "\" cy=\"" << ry(0) << "\" r=\"" << (400.0 / 3.0)
    << "\" fill=\"none\" stroke=\"#bbb\"/>\n";

  for (const auto& r : rows) {
    const bool conj = r.region == iwasawa::Region::ConjugatePair;
    const double px = conj ? rx(r.lambda.real()) : lx(r.lambda.real());
    const double py = conj ? ry(std::abs(r.lambda.imag())) : ly(r.mu.real());
    if (px < 18 || px > 882 || py < 18 || py > 422) continue;
    s << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"1.6\" fill=\""
      << region_color(r.region) << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int run_region_map(std::uint64_t seed, std::int64_t samples, const std::string& out_path,
                   const std::string& format) {
  if (samples <= 0) throw UsageError("samples must be positive");
  std::vector<MapRow> rows = sample_map_rows(seed, samples);
  write_text(out_path, format == "svg" ? map_svg(rows) : map_csv(rows));
  return 0;
}

int run_retract_trace(const std::string& in_path, int steps, const std::string& out_path) {
  if (steps < 1) throw UsageError("steps must be positive");
  ACS acs = parse_structure(in_path);
  iwasawa::Mat4d q = iwasawa::restrict_to_D(acs);

  std::ostringstream out;
  out << "t";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out << ",h" << i << j;
  out << '\n';
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    iwasawa::Mat4d h = iwasawa::homotopy_path(q, t);
    out << g17(t);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out << ',' << g17(h(i, j));
    out << '\n';
  }
  write_text(out_path, out.str());
  return 0;
}

// Entries of a constant-coefficient operator matrix are small rationals
// exactly when the frame is; report that as a diagnostic.
bool near_small_rationals(const Eigen::MatrixXcd& m) {
  auto ok = [](double v) {
    for (int q = 1; q <= 64; ++q) {
      if (std::abs(v * q - std::round(v * q)) <= 1e-9 * q) return true;
    }
    return false;
  };
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!ok(m(i, j).real()) || !ok(m(i, j).imag())) return false;
  return true;
}

iwasawa::Mat36c covector_rows(const std::array<iwasawa::KForm, 3>& forms) {
  iwasawa::Mat36c rows;
  for (int r = 0; r < 3; ++r)
    for (int i = 1; i <= 6; ++i)
      rows(r, i - 1) = forms[static_cast<std::size_t>(r)].coeff(iwasawa::MultiIndex{i});
  return rows;
}

int run_dolbeault(const std::string& in_path, const std::string& out_path) {
  ACS acs = parse_structure(in_path);
  iwasawa::DolbeaultReport rep = iwasawa::dolbeault_report(acs);
  // Chart-anchored rows keep the operator entries rational at the special
  // points; the unit frame scales them and would hide that.
  iwasawa::DbarMatrices dm;
  if (iwasawa::in_c0_finite(acs)) {
    dm = iwasawa::dbar_matrices_from_rows(
        covector_rows(iwasawa::echelon_plus_forms(iwasawa::echelon_plus_from_j(acs))));
  } else if (iwasawa::in_c1_finite(acs)) {
    dm = iwasawa::dbar_matrices_from_rows(
        covector_rows(iwasawa::echelon_minus_forms(iwasawa::echelon_minus_from_j(acs))));
  } else {
    dm = iwasawa::dbar_matrices(acs);
  }

  Json out = iwasawa::json_of(rep);
  out["composite_norms"] = {{"m1_m0", (dm.m1 * dm.m0).cwiseAbs().maxCoeff()},
                            {"m2_m1", (dm.m2 * dm.m1).cwiseAbs().maxCoeff()}};
  out["rational_coefficients"] =
      near_small_rationals(dm.m0) && near_small_rationals(dm.m1) && near_small_rationals(dm.m2);
  write_text(out_path, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant complex structures on the quotient of the complex Heisenberg group"};
  app.require_subcommand(1);

  std::string in_path, out_path, format = "json", only;
  std::uint64_t seed = 42;
  std::int64_t samples = 1000;
  double tol = 1e-9;
  int steps = 100;

  auto* c_classify = app.add_subcommand("classify", "report on one structure");
  c_classify->add_option("--in", in_path, "input JSON (J matrix or chart coordinates)")
      ->required();
  auto* classify_tol = c_classify->add_option("--tol", tol, "integrability tolerance");
  c_classify->add_option("--out", out_path, "output path (default stdout)");
  c_classify->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json"}));

  auto* c_verify = app.add_subcommand("verify", "run the verification registry");
  c_verify->add_option("--seed", seed, "base random seed");
  c_verify->add_option("--samples", samples, "sample scale (1000 keeps the stock counts)");
  auto* verify_tol = c_verify->add_option("--tol", tol, "override every pinned tolerance");
  c_verify->add_option("--out", out_path, "write a JSON report here");
  c_verify->add_option("--format", format, "report format")->check(CLI::IsMember({"json"}));
  c_verify->add_option("--only", only, "run a single suite by name");

  auto* c_map = app.add_subcommand("region-map", "sample both charts and tag root regions");
  c_map->add_option("--seed", seed, "base random seed");
  c_map->add_option("--samples", samples, "samples per chart");
  c_map->add_option("--out", out_path, "output path (default stdout)");
  c_map->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));

  auto* c_trace = app.add_subcommand("retract-trace", "tabulate the polar homotopy of one structure");
  c_trace->add_option("--in", in_path, "input JSON (J matrix or chart coordinates)")->required();
  c_trace->add_option("--steps", steps, "number of homotopy steps");
  c_trace->add_option("--out", out_path, "output path (default stdout)");

  auto* c_dolb = app.add_subcommand("dolbeault", "deformation complex report for one structure");
  c_dolb->add_option("--in", in_path, "input JSON (J matrix or chart coordinates)")->required();
  c_dolb->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_classify->parsed())
      return run_classify(in_path, tol, classify_tol->count() > 0, out_path);
    if (c_verify->parsed()) {
      iwasawa::RunConfig cfg;
      cfg.seed = seed;
      cfg.samples = samples;
      if (verify_tol->count() > 0) {
        cfg.tolerance = tol;
        cfg.tol_overridden = true;
      }
      return run_verify(cfg, out_path, only);
    }
    if (c_map->parsed()) return run_region_map(seed, samples, out_path, format);
    if (c_trace->parsed()) return run_retract_trace(in_path, steps, out_path);
    if (c_dolb->parsed()) return run_dolbeault(in_path, out_path);
  } catch (const UsageError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const iwasawa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
