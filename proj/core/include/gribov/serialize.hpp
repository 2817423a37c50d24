#pragma once

// JSON and CSV forms of the module results. Field order is fixed and
// floats are written with 17 significant digits.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gribov/analysis.hpp"
#include "gribov/operator.hpp"
#include "gribov/quadrature.hpp"
#include "gribov/spectra.hpp"

namespace gribov {

using Json = nlohmann::ordered_json;

/// Deterministic text form; indent < 0 gives a single line. Non-finite
/// floats become null.
std::string dump_json(const Json& j, int indent = 2);
/// Throws InvalidParameter on malformed text.
Json parse_json(std::string_view text);

std::string format_double(double x);

Json complex_json(Complex z);
Json complex_json(LComplex z);
Json complex_list_json(const std::vector<Complex>& zs);
/// Accepts [re, im] or a bare number.
Complex complex_from_json(const Json& j);

/// {"n", "diag", "offdiag"}.
Json to_json(const TridiagonalMatrix& m);
/// Accepts an optional "lower" band, which must equal "offdiag"
/// (ShapeMismatch otherwise). Throws InvalidParameter on missing fields.
TridiagonalMatrix matrix_from_json(const Json& j);

/// {"method", "n", "mu", "lambda", "values", "residuals", "bound"}; the
/// Gribov-only fields are null for other families.
Json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j);

/// {"N", "nodes", "weights", "construction", "defect_at_M"}.
Json to_json(const QuadratureMeasure& m, double defect_at_M);

Json to_json(const LocalizationReport& r, const BoundBox& box, double slack);
Json to_json(const SignReport& r);
Json to_json(const SmallestZeroSequence& s);
Json to_json(const GramDeterminant& g);
Json to_json(const Trajectory& t);

inline constexpr std::string_view kTrajectoryCsvHeader = "n,k,re,im,abs_err_to_kmu,match_distance";

/// Header line plus one row per entry of every trajectory, in order.
std::string trajectory_csv(const std::vector<Trajectory>& ts);
/// "n,k,re,im,residual", one row per eigenvalue of every spectrum.
std::string spectrum_csv(const std::vector<Spectrum>& ss);
/// "k,node_re,node_im,weight_re,weight_im".
std::string measure_csv(const QuadratureMeasure& m);

}  // namespace gribov
