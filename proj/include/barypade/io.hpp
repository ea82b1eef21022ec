#pragma once

#include <string>
#include <vector>

#include "barypade/adversary.hpp"
#include "barypade/pade.hpp"
#include "barypade/scalar.hpp"

namespace barypade::io {

/// Version string embedded in every certificate so evidence files identify
/// the emitter. Bump on any change to the certificate layout.
inline constexpr const char* kToolVersion = "barypade 1.0.0";

/// Whole-file read/write. Both throw io_error with the offending path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// ---------------------------------------------------------------------------
// Plan configs (schema v1)
// ---------------------------------------------------------------------------
// JSON with "v": 1 at the root. Every real number is a decimal string and
// every complex number an {"re": ..., "im": ...} object, so files carry no
// platform float variance. Unknown keys are rejected at every level: a typo
// must not silently fall back to a default.

AdversaryPlan parse_plan(const std::string& text);
std::string emit_plan(const AdversaryPlan& plan);

/// A bare JSON array of complex numbers ([{"re": ..., "im": ...}, ...]),
/// the input format for series coefficients and node lists.
std::vector<Complex> parse_complex_list(const std::string& text, mpfr_prec_t prec);

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------
// The certificate file is the product: a self-contained, human-diffable
// record (plan echo, perturbations, per-level pole evidence, the full
// coefficient list) that verify can re-derive from scratch. Serialization is
// deterministic — fixed key order, no timestamps — so identical runs produce
// byte-identical files.

std::string emit_certificate(const CertificateBundle& bundle);

/// Inverse of emit_certificate. prec_override > 0 re-verifies at a different
/// precision than the file records (values are still parsed at the file's
/// precision so nothing is rounded away).
CertificateBundle parse_certificate(const std::string& text, long prec_override = 0);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::string approx_report_json(const BaryRational& r, const ContactReport& contact,
                               const std::vector<Complex>& poles, long precision);

std::string verify_report_json(const VerifyReport& rep, long precision);

// ---------------------------------------------------------------------------
// Inspection artifacts
// ---------------------------------------------------------------------------

struct GridBox {
  Real re0, im0, re1, im1;
};

/// CSV sampling of every level's approximant and the truncated series over a
/// (steps+1) x (steps+1) lattice on the box. Header `k,re,im,abs_r,abs_f`;
/// a sample landing on a pole prints "inf" for abs_r.
std::string grid_csv(const CertificateBundle& bundle, const GridBox& box, int steps);

/// Static SVG scatter of the plan geometry and the certified poles: nodes as
/// open circles, targets as crosses, poles as filled dots, one color per
/// level, viewport fit to 1.2x the hull of the plotted points.
std::string pole_map_svg(const CertificateBundle& bundle);

}  // namespace barypade::io
