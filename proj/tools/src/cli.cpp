#include "gribov_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "gribov/analysis.hpp"
#include "gribov/error.hpp"
#include "gribov/operator.hpp"

namespace gribov::cli {
namespace {

struct Defaults {
  static constexpr double cross_check = 1e-7;
  static constexpr double slack = 1e-9;
  static constexpr double defect = 1e-8;
  static constexpr double gram = 1e-8;
  static constexpr double monic = 1e-10;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--n-range must look like a:b, got '" + text + "'");
  try {
    std::size_t used = 0;
    const int a = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string rest = text.substr(colon + 1);
    const int b = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    if (a < 1 || b < a) throw UsageError("--n-range needs 1 <= a <= b, got '" + text + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--n-range must look like a:b, got '" + text + "'");
  }
}

std::vector<int> parse_ks(const std::string& text) {
  std::vector<int> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size() || k < 1) throw std::invalid_argument(item);
      ks.push_back(k);
    } catch (const std::logic_error&) {
      throw UsageError("--k must be a comma-separated list of positive integers, got '" + text + "'");
    }
  }
  if (ks.empty()) throw UsageError("--k is empty");
  return ks;
}

int thread_cap() {
  const char* env = std::getenv("GRIBOV_LAB_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 64));
}

// Runs jobs on up to `threads` workers; results keep input order.
template <typename T>
std::vector<T> parallel_map(int count, int threads, const std::function<T(int)>& job) {
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  auto worker = [&](int first, int stride) {
    for (int i = first; i < count; i += stride) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(job(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w, workers);
    for (auto& t : pool) t.join();
  }
  std::vector<T> out;
  out.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

std::vector<int> sizes(const RunConfig& c) {
  std::vector<int> ns;
  if (c.n_range) {
    for (int n = c.n_range->first; n <= c.n_range->second; ++n) ns.push_back(n);
  } else {
    ns.push_back(c.n);
  }
  return ns;
}

const GribovParams& require_gribov(const RunConfig& c, const char* what) {
  const GribovParams* g = c.family.gribov_params();
  if (!g) throw Error(ErrorKind::InvalidParameter, std::string(what) + " needs a gribov family");
  return *g;
}

SolverOptions solver(const RunConfig& c) {
  SolverOptions o;
  if (c.command == Command::Spectrum && c.tolerances.tol) o.tol = *c.tolerances.tol;
  return o;
}

Spectrum compute_spectrum(const RunConfig& c, int n) {
  return c.method == SpectrumMethod::Aberth ? zeros_aberth(c.family, n, solver(c))
                                            : eigen_dense(c.family, n, solver(c));
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + '\n';
}

std::vector<Complex> box_points(const BoundBox& box, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re(-box.re_max, box.re_max);
  std::uniform_real_distribution<double> im(-box.im_max, box.im_max);
  std::vector<Complex> pts;
  for (int i = 0; i < count; ++i) {
    const double x = re(rng);
    pts.emplace_back(x, im(rng));
  }
  return pts;
}

// ---- commands ----

Report cmd_spectrum(const RunConfig& c) {
  const std::vector<int> ns = sizes(c);
  const auto spectra = parallel_map<Spectrum>(static_cast<int>(ns.size()), c.threads,
                                              [&](int i) { return compute_spectrum(c, ns[static_cast<std::size_t>(i)]); });
  Report r;
  if (c.n_range) {
    r.json = Json::object();
    r.json["family"] = c.family.to_string();
    Json list = Json::array();
    for (const Spectrum& s : spectra) list.push_back(to_json(s));
    r.json["spectra"] = std::move(list);
  } else {
    r.json = to_json(spectra.front());
  }
  r.csv = spectrum_csv(spectra);
  return r;
}

Json bounds_json(const RunConfig& c, const GribovParams& g, int n, double slack, bool& pass,
                 std::string& csv) {
  const Spectrum s = eigen_dense(c.family, n);
  const BoundBox box = localization_box(g, n);
  const LocalizationReport rep = verify_localization(s, box, slack);
  pass = pass && rep.all_pass;
  for (std::size_t k = 0; k < rep.entries.size(); ++k) {
    const auto& e = rep.entries[k];
    csv += csv_line({std::to_string(n), std::to_string(k + 1), format_double(e.value.real()),
                     format_double(e.value.imag()), e.re_ok ? "1" : "0", e.im_ok ? "1" : "0"});
  }
  Json j;
  j["n"] = n;
  j["mu"] = complex_json(g.mu);
  j["lambda"] = complex_json(g.lambda);
  j["localization"] = to_json(rep, box, slack);
  return j;
}

Report cmd_bounds(const RunConfig& c) {
  const GribovParams& g = require_gribov(c, "bounds");
  const double slack = c.tolerances.slack.value_or(Defaults::slack);
  Report r;
  r.csv = "n,k,re,im,re_ok,im_ok\n";
  const std::vector<int> ns = sizes(c);
  Json list = Json::array();
  for (int n : ns) list.push_back(bounds_json(c, g, n, slack, r.pass, r.csv));
  if (ns.size() == 1) {
    r.json = list.front();
  } else {
    r.json = Json::object();
    r.json["family"] = c.family.to_string();
    r.json["reports"] = std::move(list);
  }
  r.json["pass"] = r.pass;
  return r;
}

Report cmd_properties(const RunConfig& c) {
  const GribovParams& g = require_gribov(c, "properties");
  if (!g.is_real()) throw Error(ErrorKind::InvalidParameter, "properties needs real mu and lambda");
  const double mu = g.mu1();
  const double lambda = g.lambda1();
  const int n = std::max(c.n, 2);
  Report r;
  r.json["family"] = c.family.to_string();
  r.json["n_max"] = n;
  r.csv = "check,pass,checks,x,n\n";
  Json signs = Json::array();
  for (const SignReport& s : check_sign_properties(mu, lambda, n)) {
    r.pass = r.pass && s.pass;
    signs.push_back(to_json(s));
    r.csv += csv_line({std::string(property_id(s.property)), s.pass ? "1" : "0",
                       std::to_string(s.checks),
                       s.counterexample ? format_double(s.counterexample->x) : "",
                       s.counterexample ? std::to_string(s.counterexample->n) : ""});
  }
  r.json["sign_properties"] = std::move(signs);
  const bool hypothesis = std::abs(lambda) < mu / (2.0 * std::sqrt(2.0));
  if (hypothesis && n >= 3) {
    const SmallestZeroSequence z = smallest_zero_sequence(mu, lambda, (n - 1) / 2);
    const bool ok = z.nondecreasing() && z.within(mu);
    r.pass = r.pass && ok;
    Json j = to_json(z);
    j["nondecreasing"] = z.nondecreasing();
    j["within"] = z.within(mu);
    j["pass"] = ok;
    r.json["smallest_zeros"] = std::move(j);
    r.csv += csv_line({"vi", ok ? "1" : "0", std::to_string(z.entries.size()), "", ""});
    const auto least = least_real_eigenvalue(mu, lambda, n);
    const bool lok = least && *least >= mu - 1e-10 && *least < z.x2;
    r.pass = r.pass && lok;
    r.json["least_real_eigenvalue"] =
        Json{{"n", n}, {"value", least ? Json(*least) : Json(nullptr)}, {"x2", z.x2}, {"pass", lok}};
    r.csv += csv_line({"least_real", lok ? "1" : "0", "1", least ? format_double(*least) : "",
                       std::to_string(n)});
  } else {
    r.json["smallest_zeros"] =
        Json{{"skipped", hypothesis ? "n < 3" : "|lambda| >= mu / (2 sqrt 2)"}};
  }
  r.json["pass"] = r.pass;
  return r;
}

Report cmd_quadrature(const RunConfig& c) {
  const int N = c.n;
  const int M = c.M.value_or(N);
  if (M > N) throw UsageError("--M must not exceed --n");
  const double threshold = c.tolerances.threshold.value_or(Defaults::defect);
  const QuadratureMeasure m = discrete_measure(c.family, N, c.construction);
  const double defect = orthogonality_defect(m, c.family, M);
  Report r;
  r.json = to_json(m, defect);
  Json flags = Json::array();
  if (const GribovParams* g = c.family.gribov_params()) {
    if (g->is_real() && std::abs(g->lambda1()) >= std::abs(g->mu1()) / (2.0 * std::sqrt(2.0))) {
      flags.push_back("lambda >= mu / (2 sqrt 2): complex nodes, discrete surrogate only");
    }
  }
  r.json["M"] = M;
  r.json["threshold"] = threshold;
  r.json["flags"] = std::move(flags);
  r.pass = defect <= threshold;
  r.json["pass"] = r.pass;
  r.csv = measure_csv(m);
  return r;
}

Report cmd_trajectory(const RunConfig& c) {
  const GribovParams& g = require_gribov(c, "trajectory");
  const std::pair<int, int> range = c.n_range.value_or(std::pair<int, int>{10, 40});
  const auto ts = parallel_map<Trajectory>(static_cast<int>(c.k.size()), c.threads, [&](int i) {
    return trajectory(g, c.k[static_cast<std::size_t>(i)], range.first, range.second);
  });
  Report r;
  r.json["family"] = c.family.to_string();
  r.json["n_lo"] = range.first;
  r.json["n_hi"] = range.second;
  Json list = Json::array();
  for (const Trajectory& t : ts) {
    Json j = to_json(t);
    j["nonincreasing"] = t.nonincreasing_from(range.first, 1e-12);
    list.push_back(std::move(j));
  }
  r.json["trajectories"] = std::move(list);
  r.csv = trajectory_csv(ts);
  return r;
}

Json gram_json(const CoefficientFamily& family, int n, int order_req, double threshold, bool& pass) {
  const TridiagonalMatrix m = build_matrix(family, n);
  Json ranks = Json::array();
  bool krylov_ok = true;
  for (int d = 1; d <= n; ++d) {
    const int rank = krylov_rank(m, d);
    ranks.push_back(rank);
    krylov_ok = krylov_ok && rank == d;
  }
  Json grams = Json::array();
  bool gram_ok = true;
  const int top = order_req > 0 ? order_req : std::min(8, n - 1);
  for (int o = order_req > 0 ? order_req : 1; o <= top; ++o) {
    const GramDeterminant g = gram_determinant(m, o);
    gram_ok = gram_ok && g.abs_normalized() <= threshold;
    grams.push_back(to_json(g));
  }
  pass = pass && krylov_ok && gram_ok;
  Json j;
  j["n"] = n;
  j["krylov"] = Json{{"ranks", std::move(ranks)}, {"pass", krylov_ok}};
  j["gram"] = Json{{"threshold", threshold}, {"determinants", std::move(grams)}, {"pass", gram_ok}};
  return j;
}

Report cmd_gram(const RunConfig& c) {
  const double threshold = c.tolerances.threshold.value_or(Defaults::gram);
  Report r;
  r.json["family"] = c.family.to_string();
  Json list = Json::array();
  for (int n : sizes(c)) list.push_back(gram_json(c.family, n, c.order, threshold, r.pass));
  r.json["reports"] = std::move(list);
  r.json["pass"] = r.pass;
  r.csv = "n,order,abs_normalized,log10_normalization\n";
  for (const Json& rep : r.json["reports"]) {
    for (const Json& g : rep["gram"]["determinants"]) {
      r.csv += csv_line({std::to_string(rep["n"].get<int>()), std::to_string(g["order"].get<int>()),
                         format_double(g["abs_normalized"].get<double>()),
                         format_double(g["log10_normalization"].get<double>())});
    }
  }
  return r;
}

struct Suite {
  std::string name;
  std::string status;  // pass, fail, skipped
  double metric = 0.0;
  double threshold = 0.0;
  Json detail;
};

Suite suite(std::string name, bool ok, double metric, double threshold, Json detail = nullptr) {
  return Suite{std::move(name), ok ? "pass" : "fail", metric, threshold, std::move(detail)};
}

Suite skipped(std::string name, std::string why) {
  return Suite{std::move(name), "skipped", NAN, NAN, Json{{"reason", std::move(why)}}};
}

Report cmd_verify_all(const RunConfig& c) {
  const int n = c.n;
  const CoefficientFamily& f = c.family;
  const GribovParams* g = f.gribov_params();
  const double tol = c.tolerances.tol.value_or(Defaults::cross_check);
  const double slack = c.tolerances.slack.value_or(Defaults::slack);
  const double threshold = c.tolerances.threshold.value_or(Defaults::defect);

  std::vector<std::function<Suite()>> jobs;
  jobs.emplace_back([&]() -> Suite {
    if (!g) return skipped("localization", "not a gribov family");
    const Spectrum s = eigen_dense(f, n);
    const BoundBox box = localization_box(*g, n);
    const LocalizationReport rep = verify_localization(s, box, slack);
    double worst = 0.0;
    for (const auto& e : rep.entries) {
      worst = std::max({worst, std::abs(e.value.real()) - box.re_max, std::abs(e.value.imag()) - box.im_max});
    }
    return suite("localization", rep.all_pass, worst, slack,
                 Json{{"re_max", box.re_max}, {"im_max", box.im_max}});
  });
  jobs.emplace_back([&] {
    double worst = 0.0;
    for (int m = 1; m <= n; ++m) worst = std::max(worst, cross_check(zeros_aberth(f, m), eigen_dense(f, m)));
    return suite("cross_check", worst <= tol, worst, tol, Json{{"sizes", "1.." + std::to_string(n)}});
  });
  jobs.emplace_back([&]() -> Suite {
    const TridiagonalMatrix m = build_matrix(f, n);
    const double defect = j_symmetry_defect(m.to_dense());
    double split = 0.0;
    if (g) {
      const TridiagonalMatrix back = hermitian_split(m, *g).reconstruct();
      for (int i = 1; i <= n; ++i) {
        for (int j = std::max(1, i - 1); j <= std::min(n, i + 1); ++j) {
          split = std::max(split, std::abs(back.entry(i, j) - m.entry(i, j)));
        }
      }
    }
    return suite("j_symmetry", defect == 0.0 && split == 0.0, std::max(defect, split), 0.0,
                 Json{{"j_symmetry_defect", defect}, {"split_reconstruction", g ? Json(split) : Json(nullptr)}});
  });
  jobs.emplace_back([&] {
    const TridiagonalMatrix m = build_matrix(f, n);
    int deficit = 0;
    for (int d = 1; d <= n; ++d) deficit = std::max(deficit, d - krylov_rank(m, d));
    return suite("krylov", deficit == 0, deficit, 0.0);
  });
  jobs.emplace_back([&]() -> Suite {
    if (n < 2) return skipped("gram", "n < 2");
    const TridiagonalMatrix m = build_matrix(f, n);
    double worst = 0.0;
    for (int o = 1; o <= std::min(8, n - 1); ++o) worst = std::max(worst, gram_determinant(m, o).abs_normalized());
    return suite("gram", worst <= Defaults::gram, worst, Defaults::gram);
  });
  jobs.emplace_back([&]() -> Suite {
    if (!g || !g->is_real() || !(g->mu1() > 0.0)) return skipped("sign_properties", "needs real mu > 0 and real lambda");
    if (n < 2) return skipped("sign_properties", "n < 2");
    bool ok = true;
    Json failed = Json::array();
    for (const SignReport& s : check_sign_properties(g->mu1(), g->lambda1(), n)) {
      ok = ok && s.pass;
      if (!s.pass) failed.push_back(to_json(s));
    }
    return suite("sign_properties", ok, ok ? 0.0 : 1.0, 0.0, Json{{"failed", std::move(failed)}});
  });
  jobs.emplace_back([&] {
    const QuadratureMeasure m = discrete_measure(f, n);
    const double defect = orthogonality_defect(m, f, n);
    return suite("quadrature", defect <= threshold, defect, threshold, Json{{"N", n}, {"M", n}});
  });
  jobs.emplace_back([&]() -> Suite {
    if (!g) return skipped("monic_transform", "not a gribov family");
    const double res = monic_transform_check(f, n, box_points(localization_box(*g, n), 10, 20240601u));
    return suite("monic_transform", res <= Defaults::monic, res, Defaults::monic);
  });

  const auto suites = parallel_map<Suite>(static_cast<int>(jobs.size()), c.threads,
                                          [&](int i) { return jobs[static_cast<std::size_t>(i)](); });
  Report r;
  r.json["family"] = c.family.to_string();
  r.json["n"] = n;
  Json list = Json::array();
  r.csv = "suite,status,metric,threshold\n";
  for (const Suite& s : suites) {
    r.pass = r.pass && s.status != "fail";
    list.push_back(Json{{"name", s.name}, {"status", s.status}, {"metric", s.metric},
                        {"threshold", s.threshold}, {"detail", s.detail}});
    r.csv += csv_line({s.name, s.status, format_double(s.metric), format_double(s.threshold)});
  }
  r.json["suites"] = std::move(list);
  r.json["all_pass"] = r.pass;
  return r;
}

void error_json(std::ostream& err, std::string_view kind, const std::string& message) {
  err << dump_json(Json{{"error", std::string(kind)}, {"message", message}}, -1) << "\n";
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Bounds: return "bounds";
    case Command::Properties: return "properties";
    case Command::Quadrature: return "quadrature";
    case Command::Trajectory: return "trajectory";
    case Command::Gram: return "gram";
    case Command::VerifyAll: return "verify-all";
  }
  return "?";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::HypothesisViolated:
    case ErrorKind::SizeExceeded:
    case ErrorKind::ShapeMismatch:
      return 2;
    default:
      return 3;
  }
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Spectra, orthogonality and sign checks for Jacobi-Gribov matrices", "gribov-lab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every command");

  struct Raw {
    std::string family = kDefaultFamily;
    int n = 10;
    bool n_set = false;
    std::string n_range, k = "1", format, output, method = "dense", construction = "eigvec";
    std::optional<double> tol, slack, threshold;
    int order = 0;
    std::optional<int> M;
  } raw;

  const std::vector<std::pair<Command, std::string>> names = {
      {Command::Spectrum, "eigenvalues of H_n"},
      {Command::Bounds, "eigenvalues against the localization box"},
      {Command::Properties, "real-axis sign properties of Ptilde_n"},
      {Command::Quadrature, "discrete orthogonality measure"},
      {Command::Trajectory, "track z_{k,n} over a range of n"},
      {Command::Gram, "Krylov rank and Gram determinants"},
      {Command::VerifyAll, "every suite with default tolerances"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, desc] : names) {
    CLI::App* s = app.add_subcommand(std::string(to_string(cmd)), desc);
    s->add_option("--family", raw.family, "family spec, e.g. gribov:mu=1+0i,lambda=0.2+0i");
    s->add_option_function<int>("--n", [&](const int& v) { raw.n = v; raw.n_set = true; }, "truncation size");
    s->add_option("--n-range", raw.n_range, "range a:b of truncation sizes");
    s->add_option("--k", raw.k, "eigenvalue indices to track (comma-separated)");
    s->add_option("--format", raw.format, "json or csv");
    s->add_option("--output", raw.output, "output path (default: standard output)");
    s->add_option("--method", raw.method, "aberth or dense");
    s->add_option("--tol", raw.tol, "solver / cross-check tolerance");
    s->add_option("--slack", raw.slack, "localization slack");
    s->add_option("--threshold", raw.threshold, "defect / Gram threshold");
    s->add_option("--order", raw.order, "single Gram order (default: all orders up to 8)");
    s->add_option("--construction", raw.construction, "eigvec or moment");
    s->add_option("--M", raw.M, "orthogonality degree (default: n)");
    subs.emplace_back(cmd, s);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    RunConfig c;
    c.help = app.help();
    return c;
  } catch (const CLI::CallForAllHelp&) {
    RunConfig c;
    c.help = app.help("", CLI::AppFormatMode::All);
    return c;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig c;
  for (const auto& [cmd, s] : subs) {
    if (s->parsed()) c.command = cmd;
  }
  try {
    c.family = parse_family(raw.family);
  } catch (const Error& e) {
    throw UsageError(std::string("--family: ") + e.what());
  }
  c.family_spec = raw.family;
  if (raw.n < 1) throw UsageError("--n must be >= 1");
  c.n = raw.n;
  if (!raw.n_range.empty()) {
    c.n_range = parse_range(raw.n_range);
    if (!raw.n_set) c.n = c.n_range->first;
  }
  c.k = parse_ks(raw.k);
  if (raw.format.empty()) {
    c.format = c.command == Command::Trajectory ? Format::Csv : Format::Json;
  } else if (raw.format == "json") {
    c.format = Format::Json;
  } else if (raw.format == "csv") {
    c.format = Format::Csv;
  } else {
    throw UsageError("--format must be json or csv, got '" + raw.format + "'");
  }
  if (!raw.output.empty()) c.output = raw.output;
  if (raw.method == "aberth") {
    c.method = SpectrumMethod::Aberth;
  } else if (raw.method == "dense") {
    c.method = SpectrumMethod::DenseOracle;
  } else {
    throw UsageError("--method must be aberth or dense, got '" + raw.method + "'");
  }
  for (const auto& [name, v] : {std::pair{"--tol", raw.tol}, std::pair{"--slack", raw.slack},
                                std::pair{"--threshold", raw.threshold}}) {
    if (v && !(*v > 0.0)) throw UsageError(std::string(name) + " must be > 0");
  }
  c.tolerances = {raw.tol, raw.slack, raw.threshold};
  if (raw.order < 0) throw UsageError("--order must be >= 1");
  c.order = raw.order;
  try {
    c.construction = parse_construction(raw.construction);
  } catch (const Error& e) {
    throw UsageError(std::string("--construction: ") + e.what());
  }
  if (raw.M && *raw.M < 1) throw UsageError("--M must be >= 1");
  if (raw.M && *raw.M > c.n) throw UsageError("--M must not exceed --n");
  c.M = raw.M;
  c.threads = thread_cap();
  return c;
}

Report run_command(const RunConfig& c) {
  switch (c.command) {
    case Command::Spectrum: return cmd_spectrum(c);
    case Command::Bounds: return cmd_bounds(c);
    case Command::Properties: return cmd_properties(c);
    case Command::Quadrature: return cmd_quadrature(c);
    case Command::Trajectory: return cmd_trajectory(c);
    case Command::Gram: return cmd_gram(c);
    case Command::VerifyAll: return cmd_verify_all(c);
  }
  throw Error(ErrorKind::InvalidParameter, "unknown command");
}

std::string emit_report(const Report& report, Format format) {
  if (format == Format::Csv) return report.csv;
  return dump_json(report.json.is_null() ? Json::object() : report.json);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.help) {
    out << *config.help;
    return 0;
  }
  try {
    const Report report = run_command(config);
    const std::string text = emit_report(report, config.format);
    if (config.output) {
      std::ofstream f(*config.output, std::ios::binary);
      if (!f) throw Error(ErrorKind::IoError, "cannot open '" + *config.output + "' for writing");
      f << text;
      if (!f.flush()) throw Error(ErrorKind::IoError, "write to '" + *config.output + "' failed");
    } else {
      out << text;
    }
    return report.pass ? 0 : 1;
  } catch (const UsageError& e) {
    error_json(err, "UsageError", e.what());
    return 2;
  } catch (const Error& e) {
    error_json(err, to_string(e.kind()), e.what());
    return exit_code(e.kind());
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const UsageError& e) {
    error_json(err, "UsageError", e.what());
    return 2;
  }
  return run(config, out, err);
}

}  // namespace gribov::cli
