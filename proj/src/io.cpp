#include "barypade/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "barypade/errors.hpp"

namespace barypade::io {
namespace {

using ojson = nlohmann::ordered_json;

// --- schema plumbing -------------------------------------------------------

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  fail(errc::parse_error, where + ": " + what);
}

const ojson& need(const ojson& o, const char* key, const std::string& where) {
  auto it = o.find(key);
  if (it == o.end()) schema_fail(where, std::string("missing key '") + key + "'");
  return *it;
}

/// Rejects unknown keys so a typo cannot silently become a default.
void check_keys(const ojson& o, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!o.is_object()) schema_fail(where, "expected an object");
  for (auto it = o.begin(); it != o.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) schema_fail(where, "unknown key '" + it.key() + "'");
  }
}

std::string need_string(const ojson& o, const char* key, const std::string& where) {
  const ojson& v = need(o, key, where);
  if (!v.is_string()) schema_fail(where, std::string("'") + key + "' must be a decimal string");
  return v.get<std::string>();
}

long need_int(const ojson& o, const char* key, const std::string& where) {
  const ojson& v = need(o, key, where);
  if (!v.is_number_integer()) schema_fail(where, std::string("'") + key + "' must be an integer");
  return v.get<long>();
}

bool need_bool(const ojson& o, const char* key, const std::string& where) {
  const ojson& v = need(o, key, where);
  if (!v.is_boolean()) schema_fail(where, std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

std::pair<std::string, std::string> parse_complex_src(const ojson& o, const std::string& where) {
  check_keys(o, {"re", "im"}, where);
  return {need_string(o, "re", where), need_string(o, "im", where)};
}

Complex parse_complex_value(const ojson& o, mpfr_prec_t prec, const std::string& where) {
  auto [re, im] = parse_complex_src(o, where);
  return Complex::from_decimal(re, im, prec);
}

ojson emit_complex(const Complex& z, size_t digits) {
  return ojson{{"re", z.re().to_decimal(digits)}, {"im", z.im().to_decimal(digits)}};
}

ojson emit_complex_src(const std::pair<std::string, std::string>& z) {
  return ojson{{"re", z.first}, {"im", z.second}};
}

ojson parse_root(const std::string& text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

// --- plan schema -----------------------------------------------------------

AdversaryPlan parse_plan_obj(const ojson& root, const std::string& where) {
  check_keys(root, {"v", "precision", "p", "levels", "epsilon", "search", "tolerances"}, where);
  if (need_int(root, "v", where) != 1) schema_fail(where, "unsupported schema version (want 1)");

  AdversaryPlan plan;
  if (root.contains("precision")) plan.precision = need_int(root, "precision", where);

  if (root.contains("p")) {
    const ojson& p = root["p"];
    if (!p.is_array()) schema_fail(where, "'p' must be an array of complex numbers");
    for (size_t i = 0; i < p.size(); ++i)
      plan.p_coeffs.push_back(parse_complex_src(p[i], where + ".p[" + std::to_string(i) + "]"));
  }

  const ojson& levels = need(root, "levels", where);
  if (!levels.is_array() || levels.empty())
    schema_fail(where, "'levels' must be a nonempty array");
  for (size_t k = 0; k < levels.size(); ++k) {
    const std::string lw = where + ".levels[" + std::to_string(k) + "]";
    check_keys(levels[k], {"nodes", "alpha"}, lw);
    PlanLevelSource lvl;
    const ojson& nodes = need(levels[k], "nodes", lw);
    if (!nodes.is_array() || nodes.empty()) schema_fail(lw, "'nodes' must be a nonempty array");
    for (size_t j = 0; j < nodes.size(); ++j)
      lvl.nodes.push_back(parse_complex_src(nodes[j], lw + ".nodes[" + std::to_string(j) + "]"));
    lvl.alpha = parse_complex_src(need(levels[k], "alpha", lw), lw + ".alpha");
    plan.levels.push_back(std::move(lvl));
  }

  if (root.contains("epsilon")) {
    const std::string ew = where + ".epsilon";
    const ojson& eps = root["epsilon"];
    check_keys(eps, {"geometric", "values"}, ew);
    if (eps.contains("geometric") == eps.contains("values"))
      schema_fail(ew, "exactly one of 'geometric' or 'values' is required");
    if (eps.contains("geometric")) {
      const ojson& g = eps["geometric"];
      check_keys(g, {"a", "ratio"}, ew + ".geometric");
      plan.epsilon.is_geometric = true;
      plan.epsilon.a = need_string(g, "a", ew + ".geometric");
      plan.epsilon.ratio = need_string(g, "ratio", ew + ".geometric");
    } else {
      plan.epsilon.is_geometric = false;
      const ojson& vals = eps["values"];
      if (!vals.is_array()) schema_fail(ew, "'values' must be an array of decimal strings");
      for (const auto& v : vals) {
        if (!v.is_string()) schema_fail(ew, "'values' entries must be decimal strings");
        plan.epsilon.values.push_back(v.get<std::string>());
      }
    }
  }

  if (root.contains("search")) {
    const std::string sw = where + ".search";
    const ojson& s = root["search"];
    check_keys(s, {"shrink", "max_retries", "max_precision_doublings"}, sw);
    if (s.contains("shrink")) plan.search.shrink = need_string(s, "shrink", sw);
    if (s.contains("max_retries")) plan.search.max_retries = need_int(s, "max_retries", sw);
    if (s.contains("max_precision_doublings"))
      plan.search.max_precision_doublings = need_int(s, "max_precision_doublings", sw);
  }

  if (root.contains("tolerances")) {
    const std::string tw = where + ".tolerances";
    const ojson& t = root["tolerances"];
    check_keys(t, {"contact", "cert", "zero_weight", "genericity"}, tw);
    if (t.contains("contact")) plan.tolerances.contact_tol = need_string(t, "contact", tw);
    if (t.contains("cert")) plan.tolerances.cert_tol = need_string(t, "cert", tw);
    if (t.contains("zero_weight"))
      plan.tolerances.zero_weight_tol = need_string(t, "zero_weight", tw);
    if (t.contains("genericity"))
      plan.tolerances.genericity_tol = need_string(t, "genericity", tw);
  }

  return plan;
}

ojson emit_plan_obj(const AdversaryPlan& plan) {
  ojson root;
  root["v"] = 1;
  root["precision"] = plan.precision;
  root["p"] = ojson::array();
  for (const auto& c : plan.p_coeffs) root["p"].push_back(emit_complex_src(c));
  root["levels"] = ojson::array();
  for (const auto& lvl : plan.levels) {
    ojson l;
    l["nodes"] = ojson::array();
    for (const auto& t : lvl.nodes) l["nodes"].push_back(emit_complex_src(t));
    l["alpha"] = emit_complex_src(lvl.alpha);
    root["levels"].push_back(std::move(l));
  }
  if (plan.epsilon.is_geometric) {
    root["epsilon"] = ojson{
        {"geometric", ojson{{"a", plan.epsilon.a}, {"ratio", plan.epsilon.ratio}}}};
  } else {
    root["epsilon"] = ojson{{"values", plan.epsilon.values}};
  }
  root["search"] = ojson{{"shrink", plan.search.shrink},
                         {"max_retries", plan.search.max_retries},
                         {"max_precision_doublings", plan.search.max_precision_doublings}};
  root["tolerances"] = ojson{{"contact", plan.tolerances.contact_tol},
                             {"cert", plan.tolerances.cert_tol},
                             {"zero_weight", plan.tolerances.zero_weight_tol},
                             {"genericity", plan.tolerances.genericity_tol}};
  return root;
}

std::string finish(const ojson& root) { return root.dump(1) + "\n"; }

}  // namespace

// --- files -----------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(errc::io_error, "read failure on '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out.good()) fail(errc::io_error, "write failure on '" + path + "'");
}

// --- plans -----------------------------------------------------------------

AdversaryPlan parse_plan(const std::string& text) {
  return parse_plan_obj(parse_root(text), "plan");
}

std::string emit_plan(const AdversaryPlan& plan) { return finish(emit_plan_obj(plan)); }

std::vector<Complex> parse_complex_list(const std::string& text, mpfr_prec_t prec) {
  ojson root = parse_root(text);
  if (!root.is_array()) fail(errc::parse_error, "expected a JSON array of complex numbers");
  std::vector<Complex> out;
  for (size_t i = 0; i < root.size(); ++i)
    out.push_back(parse_complex_value(root[i], prec, "[" + std::to_string(i) + "]"));
  return out;
}

// --- certificates ----------------------------------------------------------

std::string emit_certificate(const CertificateBundle& bundle) {
  const size_t digits = decimal_digits(bundle.precision_used);
  ojson root;
  root["v"] = 1;
  root["tool"] = kToolVersion;
  root["precision"] = static_cast<long>(bundle.precision_used);
  root["plan"] = emit_plan_obj(bundle.plan);

  root["perturbations"] = ojson::array();
  for (const auto& p : bundle.perturbations) {
    root["perturbations"].push_back(ojson{{"k", p.k},
                                          {"original", emit_complex(p.original, digits)},
                                          {"used", emit_complex(p.used, digits)},
                                          {"attempts", p.attempts}});
  }

  root["levels"] = ojson::array();
  for (const auto& cert : bundle.certs) {
    const auto& nodes = bundle.plan.levels[static_cast<size_t>(cert.k)].nodes;
    root["levels"].push_back(ojson{{"k", cert.k},
                                   {"n", static_cast<long>(nodes.size()) - 1},
                                   {"mu", cert.mu_k.to_decimal(digits)},
                                   {"pi", emit_complex(cert.pi, digits)},
                                   {"dist", cert.dist_to_alpha.to_decimal(digits)},
                                   {"eps", cert.eps_at_nk.to_decimal(digits)},
                                   {"q_residual", cert.q_residual.to_decimal(digits)},
                                   {"q_deriv", cert.q_deriv_mod.to_decimal(digits)},
                                   {"p_mod", cert.p_at_pi_mod.to_decimal(digits)},
                                   {"p_floor", cert.p_floor.to_decimal(digits)},
                                   {"contact_pass", cert.contact_pass},
                                   {"pass", cert.pass}});
  }

  root["coefficients"] = ojson::array();
  for (const Complex& c : bundle.function.coeffs.coeffs())
    root["coefficients"].push_back(emit_complex(c, digits));

  root["warnings"] = bundle.warnings;
  root["coefficient_check"] = bundle.global_coefficient_check;
  root["all_pass"] = bundle.all_pass;
  return finish(root);
}

CertificateBundle parse_certificate(const std::string& text, long prec_override) {
  ojson root = parse_root(text);
  const std::string where = "certificate";
  check_keys(root,
             {"v", "tool", "precision", "plan", "perturbations", "levels", "coefficients",
              "warnings", "coefficient_check", "all_pass"},
             where);
  if (need_int(root, "v", where) != 1) schema_fail(where, "unsupported schema version (want 1)");
  need_string(root, "tool", where);  // informational; any emitter version verifies

  const long file_prec = need_int(root, "precision", where);
  if (file_prec < kMinPrec) schema_fail(where, "precision below the supported minimum");
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(file_prec);

  CertificateBundle bundle;
  bundle.plan = parse_plan_obj(need(root, "plan", where), where + ".plan");
  bundle.precision_used = prec_override > 0 ? static_cast<mpfr_prec_t>(prec_override) : prec;

  const ojson& perts = need(root, "perturbations", where);
  if (!perts.is_array()) schema_fail(where, "'perturbations' must be an array");
  for (size_t i = 0; i < perts.size(); ++i) {
    const std::string pw = where + ".perturbations[" + std::to_string(i) + "]";
    check_keys(perts[i], {"k", "original", "used", "attempts"}, pw);
    AlphaPerturbation p;
    p.k = static_cast<int>(need_int(perts[i], "k", pw));
    p.original = parse_complex_value(need(perts[i], "original", pw), prec, pw + ".original");
    p.used = parse_complex_value(need(perts[i], "used", pw), prec, pw + ".used");
    p.attempts = static_cast<int>(need_int(perts[i], "attempts", pw));
    bundle.perturbations.push_back(std::move(p));
  }

  const ojson& levels = need(root, "levels", where);
  if (!levels.is_array()) schema_fail(where, "'levels' must be an array");
  for (size_t i = 0; i < levels.size(); ++i) {
    const std::string lw = where + ".levels[" + std::to_string(i) + "]";
    check_keys(levels[i],
               {"k", "n", "mu", "pi", "dist", "eps", "q_residual", "q_deriv", "p_mod", "p_floor",
                "contact_pass", "pass"},
               lw);
    PoleCertificate cert;
    cert.k = static_cast<int>(need_int(levels[i], "k", lw));
    if (cert.k < 0 || cert.k >= static_cast<int>(bundle.plan.levels.size()))
      schema_fail(lw, "level index outside the plan");
    const long n = need_int(levels[i], "n", lw);
    const long n_plan =
        static_cast<long>(bundle.plan.levels[static_cast<size_t>(cert.k)].nodes.size()) - 1;
    if (n != n_plan) schema_fail(lw, "degree disagrees with the plan echo");
    cert.mu_k = Real::from_decimal(need_string(levels[i], "mu", lw), prec);
    cert.pi = parse_complex_value(need(levels[i], "pi", lw), prec, lw + ".pi");
    cert.dist_to_alpha = Real::from_decimal(need_string(levels[i], "dist", lw), prec);
    cert.eps_at_nk = Real::from_decimal(need_string(levels[i], "eps", lw), prec);
    cert.q_residual = Real::from_decimal(need_string(levels[i], "q_residual", lw), prec);
    cert.q_deriv_mod = Real::from_decimal(need_string(levels[i], "q_deriv", lw), prec);
    cert.p_at_pi_mod = Real::from_decimal(need_string(levels[i], "p_mod", lw), prec);
    cert.p_floor = Real::from_decimal(need_string(levels[i], "p_floor", lw), prec);
    cert.contact_pass = need_bool(levels[i], "contact_pass", lw);
    cert.pass = need_bool(levels[i], "pass", lw);
    bundle.function.mu.push_back(cert.mu_k);
    bundle.certs.push_back(std::move(cert));
  }

  const ojson& coeffs = need(root, "coefficients", where);
  if (!coeffs.is_array() || coeffs.empty())
    schema_fail(where, "'coefficients' must be a nonempty array");
  std::vector<Complex> c;
  for (size_t i = 0; i < coeffs.size(); ++i)
    c.push_back(parse_complex_value(coeffs[i], prec, where + ".coefficients[" +
                                                        std::to_string(i) + "]"));
  bundle.function.coeffs = Series(std::move(c));

  const ojson& warnings = need(root, "warnings", where);
  if (!warnings.is_array()) schema_fail(where, "'warnings' must be an array");
  for (const auto& w : warnings) {
    if (!w.is_string()) schema_fail(where, "'warnings' entries must be strings");
    bundle.warnings.push_back(w.get<std::string>());
  }

  bundle.global_coefficient_check = need_bool(root, "coefficient_check", where);
  bundle.all_pass = need_bool(root, "all_pass", where);
  return bundle;
}

// --- reports ---------------------------------------------------------------

std::string approx_report_json(const BaryRational& r, const ContactReport& contact,
                               const std::vector<Complex>& poles, long precision) {
  const size_t digits = decimal_digits(static_cast<mpfr_prec_t>(precision));
  ojson root;
  root["v"] = 1;
  root["tool"] = kToolVersion;
  root["precision"] = precision;
  root["degree"] = r.level.n();
  root["weights"] = ojson::array();
  for (const Complex& w : r.weights) root["weights"].push_back(emit_complex(w, digits));
  root["zero_weight_indices"] = r.zero_weight_indices;
  root["contact"] = ojson{{"order", contact.order_target},
                          {"max_rel_residual", contact.max_rel_residual.to_decimal(digits)},
                          {"pass", contact.pass}};
  root["poles"] = ojson::array();
  for (const Complex& p : poles) root["poles"].push_back(emit_complex(p, digits));
  return finish(root);
}

std::string verify_report_json(const VerifyReport& rep, long precision) {
  const size_t digits = decimal_digits(static_cast<mpfr_prec_t>(precision));
  ojson root;
  root["v"] = 1;
  root["tool"] = kToolVersion;
  root["precision"] = precision;
  root["pass"] = rep.pass;
  root["coefficient_zeros_pass"] = rep.coeff_zeros_pass;
  root["coefficient_bounds_pass"] = rep.coeff_bounds_pass;
  root["levels"] = ojson::array();
  for (const auto& lvl : rep.levels) {
    root["levels"].push_back(ojson{{"k", lvl.k},
                                   {"pass", lvl.pass},
                                   {"contact_pass", lvl.contact_pass},
                                   {"dist_pass", lvl.dist_pass},
                                   {"q_pass", lvl.q_pass},
                                   {"deriv_pass", lvl.deriv_pass},
                                   {"p_pass", lvl.p_pass},
                                   {"dist", lvl.dist_to_alpha.to_decimal(digits)},
                                   {"q_residual", lvl.q_residual.to_decimal(digits)},
                                   {"q_deriv", lvl.q_deriv_mod.to_decimal(digits)},
                                   {"p_mod", lvl.p_at_pi_mod.to_decimal(digits)}});
  }
  return finish(root);
}

// --- inspection artifacts --------------------------------------------------

std::string grid_csv(const CertificateBundle& bundle, const GridBox& box, int steps) {
  if (steps < 1) fail(errc::parse_error, "grid steps must be >= 1");
  const mpfr_prec_t prec = bundle.precision_used;
  ResolvedPlan rp = resolve_plan(bundle.plan, prec);

  std::vector<BaryRational> approx;
  for (int k = 0; k <= rp.K(); ++k)
    approx.push_back(approximant_from_series(bundle.function.coeffs,
                                             rp.levels[static_cast<size_t>(k)].level,
                                             rp.zero_weight_tol));

  const Real dre = (box.re1 - box.re0) / Real(static_cast<long>(steps), prec);
  const Real dim = (box.im1 - box.im0) / Real(static_cast<long>(steps), prec);

  std::ostringstream out;
  out << "k,re,im,abs_r,abs_f\n";
  for (int k = 0; k <= rp.K(); ++k) {
    for (int iy = 0; iy <= steps; ++iy) {
      for (int ix = 0; ix <= steps; ++ix) {
        Complex z(box.re0 + dre * Real(static_cast<long>(ix), prec),
                  box.im0 + dim * Real(static_cast<long>(iy), prec));
        std::string abs_r;
        try {
          abs_r = bary_eval(approx[static_cast<size_t>(k)], z).abs().to_decimal(20);
        } catch (const error& e) {
          if (e.code() != errc::pole_hit) throw;
          abs_r = "inf";
        }
        const std::string abs_f = bundle.function.coeffs.eval(z).abs().to_decimal(20);
        out << k << ',' << z.re().to_decimal(20) << ',' << z.im().to_decimal(20) << ','
            << abs_r << ',' << abs_f << '\n';
      }
    }
  }
  return out.str();
}

namespace {

struct SvgPoint {
  double x = 0, y = 0;
};

std::string fmt2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string pole_map_svg(const CertificateBundle& bundle) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  constexpr int kNumColors = 6;
  constexpr double kSize = 640.0;

  ResolvedPlan rp = resolve_plan(bundle.plan, bundle.precision_used);
  std::vector<Complex> alphas;
  for (const auto& lvl : rp.levels) alphas.push_back(lvl.alpha);
  for (const auto& p : bundle.perturbations)
    if (p.k >= 0 && p.k < static_cast<int>(alphas.size()))
      alphas[static_cast<size_t>(p.k)] = p.used;

  // collect every finite point to size the viewport
  std::vector<std::pair<double, double>> pts;
  auto add = [&pts](const Complex& z) {
    double x = z.re().to_double(), y = z.im().to_double();
    if (std::isfinite(x) && std::isfinite(y)) pts.push_back({x, y});
  };
  for (const auto& lvl : rp.levels)
    for (const Complex& t : lvl.level.nodes()) add(t);
  for (const Complex& a : alphas) add(a);
  for (const auto& cert : bundle.certs) add(cert.pi);

  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  if (!pts.empty()) {
    minx = maxx = pts[0].first;
    miny = maxy = pts[0].second;
    for (const auto& [x, y] : pts) {
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  }
  const double cx = (minx + maxx) / 2, cy = (miny + maxy) / 2;
  double span = std::max(maxx - minx, maxy - miny);
  if (span <= 0) span = 1.0;
  const double scale = kSize / (1.2 * span);
  auto map = [&](const Complex& z) {
    return SvgPoint{kSize / 2 + (z.re().to_double() - cx) * scale,
                    kSize / 2 - (z.im().to_double() - cy) * scale};
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
      << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
  svg << " <rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
  for (int k = 0; k <= rp.K(); ++k) {
    const char* color = kPalette[k % kNumColors];
    for (const Complex& t : rp.levels[static_cast<size_t>(k)].level.nodes()) {
      SvgPoint p = map(t);
      svg << " <circle cx=\"" << fmt2(p.x) << "\" cy=\"" << fmt2(p.y)
          << "\" r=\"5\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    }
    {
      SvgPoint p = map(alphas[static_cast<size_t>(k)]);
      svg << " <line x1=\"" << fmt2(p.x - 7) << "\" y1=\"" << fmt2(p.y) << "\" x2=\""
          << fmt2(p.x + 7) << "\" y2=\"" << fmt2(p.y) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
      svg << " <line x1=\"" << fmt2(p.x) << "\" y1=\"" << fmt2(p.y - 7) << "\" x2=\""
          << fmt2(p.x) << "\" y2=\"" << fmt2(p.y + 7) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
    }
    if (k < static_cast<int>(bundle.certs.size())) {
      double px = bundle.certs[static_cast<size_t>(k)].pi.re().to_double();
      double py = bundle.certs[static_cast<size_t>(k)].pi.im().to_double();
      if (std::isfinite(px) && std::isfinite(py)) {
        SvgPoint p = map(bundle.certs[static_cast<size_t>(k)].pi);
        svg << " <circle cx=\"" << fmt2(p.x) << "\" cy=\"" << fmt2(p.y) << "\" r=\"3.5\" fill=\""
            << color << "\"/>\n";
      }
    }
    svg << " <text x=\"12\" y=\"" << fmt2(20.0 + 18.0 * k)
        << "\" font-family=\"monospace\" font-size=\"13\" fill=\"" << color << "\">level " << k
        << " (n=" << rp.n(k) << ")</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace barypade::io
