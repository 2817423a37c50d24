#include "gribov/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gribov/error.hpp"

namespace gribov {
namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(std::string& out, const Json& j, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      return;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    case Json::value_t::string:
      out += j.dump();
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out += '[';
      bool first = true;
      for (const Json& v : j) {
        if (!first) out += !pretty ? "," : flat ? ", " : ",";
        if (!flat) newline(depth + 1);
        write(out, v, indent, depth + 1);
        first = false;
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(out, it.value(), indent, depth + 1);
        first = false;
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += "null";
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::InvalidParameter, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::vector<Complex> complex_list(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorKind::InvalidParameter, std::string("'") + key + "' must be an array");
  std::vector<Complex> out;
  out.reserve(a.size());
  for (const Json& v : a) out.push_back(complex_from_json(v));
  return out;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const std::string& c : cells) {
    if (!first) row += ',';
    row += c;
    first = false;
  }
  row += '\n';
  return row;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidParameter, std::string("malformed JSON: ") + e.what());
  }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_json(LComplex z) {
  return Json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())});
}

Json complex_list_json(const std::vector<Complex>& zs) {
  Json a = Json::array();
  for (const Complex& z : zs) a.push_back(complex_json(z));
  return a;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorKind::InvalidParameter, "expected a number or [re, im], got " + j.dump());
}

Json to_json(const TridiagonalMatrix& m) {
  Json j;
  j["n"] = m.size();
  j["diag"] = complex_list_json(m.diag());
  j["offdiag"] = complex_list_json(m.offdiag());
  return j;
}

TridiagonalMatrix matrix_from_json(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) {
    throw Error(ErrorKind::InvalidParameter, "'n' must be a positive integer");
  }
  std::vector<Complex> diag = complex_list(j, "diag");
  std::vector<Complex> off = complex_list(j, "offdiag");
  if (static_cast<long long>(diag.size()) != n.get<long long>()) {
    throw Error(ErrorKind::ShapeMismatch, "'diag' has " + std::to_string(diag.size()) +
                                              " entries, n = " + n.dump());
  }
  if (j.contains("lower")) {
    const std::vector<Complex> lower = complex_list(j, "lower");
    if (lower != off) {
      throw Error(ErrorKind::ShapeMismatch, "matrix is not complex symmetric (lower != offdiag)");
    }
  }
  return TridiagonalMatrix(std::move(diag), std::move(off));
}

Json to_json(const Spectrum& s) {
  const GribovParams* g = s.family ? s.family->gribov_params() : nullptr;
  Json j;
  j["method"] = std::string(to_string(s.method));
  j["n"] = s.n;
  j["mu"] = g ? complex_json(g->mu) : Json(nullptr);
  j["lambda"] = g ? complex_json(g->lambda) : Json(nullptr);
  j["values"] = complex_list_json(s.values);
  j["residuals"] = s.residuals;
  if (g) {
    const BoundBox b = localization_box(*g, s.n);
    j["bound"] = Json{{"re_max", b.re_max}, {"im_max", b.im_max}};
  } else {
    j["bound"] = nullptr;
  }
  return j;
}

Spectrum spectrum_from_json(const Json& j) {
  Spectrum s;
  const std::string method = field(j, "method").get<std::string>();
  if (method == "aberth") {
    s.method = SpectrumMethod::Aberth;
  } else if (method == "dense") {
    s.method = SpectrumMethod::DenseOracle;
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown method '" + method + "'");
  }
  s.n = field(j, "n").get<int>();
  s.values = complex_list(j, "values");
  for (const Json& r : field(j, "residuals")) s.residuals.push_back(r.is_null() ? NAN : r.get<double>());
  if (j.contains("mu") && !j["mu"].is_null()) {
    s.family = CoefficientFamily::gribov(complex_from_json(j["mu"]), complex_from_json(field(j, "lambda")));
  }
  if (static_cast<int>(s.values.size()) != s.n || s.residuals.size() != s.values.size()) {
    throw Error(ErrorKind::ShapeMismatch, "spectrum sizes disagree with n");
  }
  return s;
}

Json to_json(const QuadratureMeasure& m, double defect_at_M) {
  Json j;
  j["N"] = m.N;
  Json nodes = Json::array();
  Json weights = Json::array();
  for (const LComplex& z : m.nodes) nodes.push_back(complex_json(z));
  for (const LComplex& w : m.weights) weights.push_back(complex_json(w));
  j["nodes"] = std::move(nodes);
  j["weights"] = std::move(weights);
  j["construction"] = std::string(to_string(m.construction));
  j["defect_at_M"] = defect_at_M;
  return j;
}

Json to_json(const LocalizationReport& r, const BoundBox& box, double slack) {
  Json j;
  j["re_max"] = box.re_max;
  j["im_max"] = box.im_max;
  j["slack"] = slack;
  j["all_pass"] = r.all_pass;
  Json entries = Json::array();
  for (const LocalizationEntry& e : r.entries) {
    entries.push_back(Json{{"value", complex_json(e.value)}, {"re_ok", e.re_ok}, {"im_ok", e.im_ok}});
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const SignReport& r) {
  Json j;
  j["property"] = std::string(property_id(r.property));
  j["grid"] = r.grid;
  j["pass"] = r.pass;
  j["checks"] = r.checks;
  if (r.counterexample) {
    j["counterexample"] = Json{{"x", r.counterexample->x},
                               {"n", r.counterexample->n},
                               {"values", r.counterexample->values}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

Json to_json(const SmallestZeroSequence& s) {
  Json j;
  j["x2"] = s.x2;
  Json entries = Json::array();
  for (const SmallestZero& e : s.entries) {
    entries.push_back(Json{{"index", e.index}, {"value", e.value ? Json(*e.value) : Json(nullptr)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const GramDeterminant& g) {
  Json j;
  j["order"] = g.order;
  j["normalized"] = complex_json(g.normalized);
  j["abs_normalized"] = g.abs_normalized();
  j["log10_normalization"] = g.log10_normalization;
  return j;
}

Json to_json(const Trajectory& t) {
  Json j;
  j["k"] = t.k;
  j["mu"] = complex_json(t.params.mu);
  j["lambda"] = complex_json(t.params.lambda);
  Json entries = Json::array();
  for (const TrajectoryEntry& e : t.entries) {
    entries.push_back(Json{{"n", e.n},
                           {"z", complex_json(e.z)},
                           {"abs_err_to_kmu", e.abs_err_to_kmu},
                           {"match_distance", e.match_distance}});
  }
  j["entries"] = std::move(entries);
  return j;
}

std::string trajectory_csv(const std::vector<Trajectory>& ts) {
  std::string out(kTrajectoryCsvHeader);
  out += '\n';
  for (const Trajectory& t : ts) {
    for (const TrajectoryEntry& e : t.entries) {
      out += csv_row({std::to_string(e.n), std::to_string(t.k), format_double(e.z.real()),
                      format_double(e.z.imag()), format_double(e.abs_err_to_kmu),
                      format_double(e.match_distance)});
    }
  }
  return out;
}

std::string spectrum_csv(const std::vector<Spectrum>& ss) {
  std::string out = "n,k,re,im,residual\n";
  for (const Spectrum& s : ss) {
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      out += csv_row({std::to_string(s.n), std::to_string(k + 1), format_double(s.values[k].real()),
                      format_double(s.values[k].imag()),
                      format_double(k < s.residuals.size() ? s.residuals[k] : NAN)});
    }
  }
  return out;
}

std::string measure_csv(const QuadratureMeasure& m) {
  std::string out = "k,node_re,node_im,weight_re,weight_im\n";
  for (std::size_t k = 0; k < m.nodes.size(); ++k) {
    out += csv_row({std::to_string(k + 1), format_double(static_cast<double>(m.nodes[k].real())),
                    format_double(static_cast<double>(m.nodes[k].imag())),
                    format_double(static_cast<double>(m.weights[k].real())),
                    format_double(static_cast<double>(m.weights[k].imag()))});
  }
  return out;
}

}  // namespace gribov
