#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "barypade/adversary.hpp"
#include "barypade/errors.hpp"
#include "barypade/io.hpp"
#include "barypade/pade.hpp"

namespace {

using namespace barypade;

int complain(const error& e) {
  std::cerr << "barypade: " << e.what() << "\n";
  return 1;
}

// --- approximate -----------------------------------------------------------

int run_approximate(const std::string& coeffs_path, const std::string& nodes_path, long degree,
                    long prec, const std::string& out_path) {
  try {
    const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
    std::vector<Complex> coeffs = io::parse_complex_list(io::read_file(coeffs_path), p);
    std::vector<Complex> nodes = io::parse_complex_list(io::read_file(nodes_path), p);
    if (degree != static_cast<long>(nodes.size()) - 1) {
      std::cerr << "barypade: --degree " << degree << " does not match " << nodes.size()
                << " nodes (want node count - 1)\n";
      return 1;
    }
    NodeLevel level(std::move(nodes));
    Series f(std::move(coeffs));
    BaryRational r = approximant_from_series(f, level);
    ContactReport contact = contact_check(f, r);
    std::vector<Complex> poles = q_poles(r);
    io::write_file(out_path, io::approx_report_json(r, contact, poles, prec));
    return 0;
  } catch (const error& e) {
    if (e.code() == errc::degenerate_system) {
      std::cerr << "barypade: " << e.what() << "\n";
      return 2;
    }
    return complain(e);
  }
}

// --- adversary -------------------------------------------------------------

io::GridBox parse_box(const std::string& text, mpfr_prec_t prec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4)
    fail(errc::parse_error, "--grid-box wants RE0:IM0:RE1:IM1, got '" + text + "'");
  return io::GridBox{Real::from_decimal(parts[0], prec), Real::from_decimal(parts[1], prec),
                     Real::from_decimal(parts[2], prec), Real::from_decimal(parts[3], prec)};
}

/// Without --grid-box: a square around the top-level target, wide enough
/// (4x the final coefficient bound) to show the blow-up region.
io::GridBox default_box(const CertificateBundle& bundle) {
  const mpfr_prec_t prec = bundle.precision_used;
  ResolvedPlan rp = resolve_plan(bundle.plan, prec);
  Complex center = rp.levels.back().alpha;
  for (const auto& p : bundle.perturbations)
    if (p.k == rp.K()) center = p.used;
  Real half = bundle.certs.back().eps_at_nk * Real(4.0, prec);
  return io::GridBox{center.re() - half, center.im() - half, center.re() + half,
                     center.im() + half};
}

int run_adversary(const std::string& config_path, const std::string& out_path,
                  const std::string& svg_path, const std::string& grid_path,
                  const std::string& grid_box, int grid_steps) {
  try {
    AdversaryPlan plan = io::parse_plan(io::read_file(config_path));
    CertificateBundle bundle;
    try {
      bundle = search_mu(plan);
    } catch (search_exhausted_error& e) {
      io::write_file(out_path, io::emit_certificate(e.bundle));
      std::cerr << "barypade: " << e.what() << "; failing certificate written to '" << out_path
                << "'\n";
      return 3;
    }
    io::write_file(out_path, io::emit_certificate(bundle));
    if (!svg_path.empty()) io::write_file(svg_path, io::pole_map_svg(bundle));
    if (!grid_path.empty()) {
      io::GridBox box = grid_box.empty() ? default_box(bundle)
                                         : parse_box(grid_box, bundle.precision_used);
      io::write_file(grid_path, io::grid_csv(bundle, box, grid_steps));
    }
    return 0;
  } catch (const error& e) {
    return complain(e);
  }
}

// --- verify ----------------------------------------------------------------

int run_verify(const std::string& cert_path, long prec) {
  try {
    CertificateBundle bundle = io::parse_certificate(io::read_file(cert_path), prec);
    VerifyReport rep = verify_certificate(bundle);
    std::cout << io::verify_report_json(rep, static_cast<long>(bundle.precision_used));
    return rep.pass ? 0 : 4;
  } catch (const error& e) {
    return complain(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"barycentric Pade approximants and adversarial divergence certificates"};
  app.require_subcommand(1);

  std::string coeffs_path, nodes_path, approx_out;
  long degree = 0;
  long approx_prec = static_cast<long>(barypade::kDefaultPrec);
  CLI::App* ap = app.add_subcommand(
      "approximate", "weights, contact report and poles for one series + node set");
  ap->add_option("--coeffs", coeffs_path, "JSON array of series coefficients")->required();
  ap->add_option("--nodes", nodes_path, "JSON array of interpolation nodes")->required();
  ap->add_option("--degree", degree, "approximant degree n (node count - 1)")->required();
  ap->add_option("--prec", approx_prec, "working precision in bits");
  ap->add_option("--out", approx_out, "report output path")->required();

  std::string config_path, cert_out, svg_path, grid_path, grid_box;
  int grid_steps = 40;
  CLI::App* adv = app.add_subcommand(
      "adversary", "search mu, certify the poles, emit the certificate");
  adv->add_option("--config", config_path, "plan config (JSON, schema v1)")->required();
  adv->add_option("--out", cert_out, "certificate output path")->required();
  adv->add_option("--svg", svg_path, "optional pole map (SVG)");
  adv->add_option("--grid", grid_path, "optional error grid (CSV)");
  adv->add_option("--grid-box", grid_box, "grid window RE0:IM0:RE1:IM1 (default: around the top target)");
  adv->add_option("--grid-steps", grid_steps, "grid subdivisions per axis");

  std::string cert_path;
  long verify_prec = 0;
  CLI::App* ver = app.add_subcommand(
      "verify", "independently re-derive a certificate's claims");
  ver->add_option("--cert", cert_path, "certificate file to check")->required();
  ver->add_option("--prec", verify_prec, "re-verify at this precision instead");

  CLI11_PARSE(app, argc, argv);

  if (ap->parsed()) return run_approximate(coeffs_path, nodes_path, degree, approx_prec, approx_out);
  if (adv->parsed()) return run_adversary(config_path, cert_out, svg_path, grid_path, grid_box, grid_steps);
  return run_verify(cert_path, verify_prec);
}
