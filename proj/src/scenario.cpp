#include "opframe/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "opframe/bundled_scenarios.hpp"
#include "opframe/constructions.hpp"
#include "opframe/error.hpp"
#include "opframe/linalg.hpp"
#include "opframe/random.hpp"
#include "opframe/relframes.hpp"
#include "opframe/weakframes.hpp"

#ifndef OPFRAME_VERSION
#define OPFRAME_VERSION "0.0.0"
#endif

namespace opframe {

using nlohmann::json;

namespace {

const std::vector<std::string> kGenerators = {"exponential", "gabor",      "gabor_derivative", "wavelet",
                                              "wavelet_derivative", "translation", "pw_quarter", "difference",
                                              "multiplier", "diag_parseval"};
const std::vector<std::string> kOperators = {"generator", "none", "identity", "diff", "block_multiplier"};

// Check kind -> default comparison.
const std::map<std::string, Compare>& check_kinds() {
  static const std::map<std::string, Compare> kinds = {
      {"frame_ratio", Compare::Le},        {"frame_alpha", Compare::Gt},
      {"kframe_alpha", Compare::Gt},       {"aframe_alpha", Compare::Gt},
      {"weak_alpha", Compare::Gt},         {"range_inclusion", Compare::Le},
      {"weak_duality", Compare::Le},       {"adjoint_decomposition", Compare::Le},
      {"reconstruction", Compare::Le},     {"partial_sum_identity", Compare::Le},
      {"strong_expansion", Compare::Ge},   {"weak_certificate", Compare::Le},
      {"derivative_system", Compare::Le},  {"selfadjoint_defect", Compare::Le},
      {"a_dual_residual", Compare::Le},    {"k_dual_residual", Compare::Le},
      {"interchange", Compare::Le},        {"trajectory", Compare::Le},
      {"monotone", Compare::Lt}};
  return kinds;
}

Compare parse_compare(const std::string& s) {
  if (s == "le") return Compare::Le;
  if (s == "lt") return Compare::Lt;
  if (s == "ge") return Compare::Ge;
  if (s == "gt") return Compare::Gt;
  throw ScenarioError("unknown comparison '" + s + "' (expected le, lt, ge or gt)");
}

bool compare(double value, double tol, Compare c) {
  if (std::isnan(value)) return false;
  switch (c) {
    case Compare::Le: return value <= tol;
    case Compare::Lt: return value < tol;
    case Compare::Ge: return value >= tol;
    case Compare::Gt: return value > tol;
  }
  return false;
}

bool contains(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

// Parameter access that turns a missing or mistyped field into a ScenarioError.
template <class T>
T req(const json& p, const char* key, const std::string& where) {
  if (!p.is_object() || !p.contains(key)) throw ScenarioError(where + ": missing parameter '" + key + "'");
  try {
    return p.at(key).get<T>();
  } catch (const json::exception&) {
    throw ScenarioError(where + ": parameter '" + key + "' has the wrong type");
  }
}

template <class T>
T opt(const json& p, const char* key, T fallback, const std::string& where) {
  if (!p.is_object() || !p.contains(key)) return fallback;
  return req<T>(p, key, where);
}

HilbertModel parse_grid(const json& g, const std::string& where) {
  const auto kind = req<std::string>(g, "kind", where + ".grid");
  if (kind == "closed" || kind == "periodic") {
    const double lo = req<double>(g, "lower", where + ".grid");
    const double hi = req<double>(g, "upper", where + ".grid");
    const Index pts = req<Index>(g, "points", where + ".grid");
    return kind == "closed" ? HilbertModel::closed_interval(lo, hi, pts) : HilbertModel::periodic_interval(lo, hi, pts);
  }
  if (kind == "sequence") return HilbertModel::sequence(req<Index>(g, "points", where + ".grid"));
  if (kind == "block")
    return block_grid(req<Index>(g, "cells", where + ".grid"), req<Index>(g, "points_per_cell", where + ".grid"));
  throw ScenarioError(where + ".grid: unknown kind '" + kind + "'");
}

std::vector<Complex> parse_complex_list(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ScenarioError(where + ": expected a list");
  std::vector<Complex> out;
  for (const auto& v : arr) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      throw ScenarioError(where + ": entries must be numbers or [re, im] pairs");
    }
  }
  return out;
}

// Everything a construction and operator produce; checks read from here.
struct Workspace {
  std::optional<FrameSequence> seq;
  std::optional<FrameSequence> dual;
  std::optional<FrameSequence> base;      // undifferentiated system for derivative checks
  std::optional<FrameSequence> analytic;  // closed-form derivative system when seq is A applied to base
  std::optional<OperatorModel> op;
  std::optional<TruncationFamily> family;
  json notes = json::object();
};

// Finite section: D(A) and D(A*) both become the span of the truncated base
// system, and the sequence becomes the discrete A applied to the base columns
// so that {A phi_n} is exact on the section. The closed form is kept for the
// derivative check.
void section(Workspace& ws, const FrameSequence& base) {
  const Subspace span = orthonormalize(base.vectors(), base.model());
  OperatorModel& op = *ws.op;
  op.domain = span;
  op.adjoint_domain = span;
  op.name += " (finite section)";
  FrameSequence applied(base.model(), op.matrix * base.vectors(), base.labels());
  if (!base.label_pairs().empty()) applied.with_label_pairs(base.label_pairs());
  ws.analytic = std::move(ws.seq);
  ws.seq = std::move(applied);
}

Workspace build_construction(const json& c, const std::vector<Index>& sizes, unsigned long long seed) {
  const std::string where = "construction";
  const auto gen = req<std::string>(c, "generator", where);
  const json p = c.value("params", json::object());
  Workspace ws;

  if (gen == "exponential") {
    const HilbertModel grid = parse_grid(req<json>(p, "grid", where), where);
    const double b = req<double>(p, "b", where);
    const long range = req<long>(p, "range", where);
    const bool scaled = opt<bool>(p, "scaled", false, where);
    if (scaled) {
      WeakTriple t = exponential_derivative_triple(grid, b, range, opt<Index>(p, "adjoint_modes", 3, where),
                                                   opt<double>(p, "dual_scale", b, where));
      ws.seq = std::move(t.seq);
      ws.dual = std::move(t.dual);
      ws.op = std::move(t.op);
    } else {
      ws.seq = exponential_system(b, range, grid, false);
      ws.dual = FrameSequence(grid, opt<double>(p, "dual_scale", b, where) * ws.seq->vectors(), ws.seq->labels());
    }
  } else if (gen == "gabor" || gen == "gabor_derivative") {
    const HilbertModel grid = parse_grid(req<json>(p, "grid", where), where);
    const Window w = window_by_name(req<std::string>(p, "window", where));
    const double a = req<double>(p, "a", where), b = req<double>(p, "b", where);
    const long mr = req<long>(p, "m_range", where), nr = req<long>(p, "n_range", where);
    FrameSequence base = gabor_system(w, a, b, mr, nr, grid);
    if (gen == "gabor_derivative") {
      ws.seq = gabor_derivative_system(w, a, b, mr, nr, grid);
      ws.dual = span_dual(base);
      ws.op = diff_operator(grid, DiffVariant::MinusIDdxH1);
      if (opt<bool>(p, "section", false, where)) section(ws, base);
      ws.base = std::move(base);
    } else {
      const auto dual = opt<std::string>(p, "dual", "span", where);
      if (dual == "span") ws.dual = span_dual(base);
      else if (dual == "canonical") ws.dual = canonical_dual(base);
      else if (dual != "none") throw ScenarioError(where + ": dual must be span, canonical or none");
      ws.seq = std::move(base);
    }
  } else if (gen == "wavelet" || gen == "wavelet_derivative") {
    const HilbertModel grid = parse_grid(req<json>(p, "grid", where), where);
    const Window w = window_by_name(req<std::string>(p, "window", where));
    const double a = req<double>(p, "a", where), b = req<double>(p, "b", where);
    const long mr = req<long>(p, "m_range", where), nr = req<long>(p, "n_range", where);
    FrameSequence base = wavelet_system(w, a, b, mr, nr, grid);
    ws.dual = span_dual(base);
    if (gen == "wavelet_derivative") {
      ws.seq = wavelet_derivative_system(w, a, b, mr, nr, grid);
      ws.op = diff_operator(grid, DiffVariant::DdxH1);
      if (opt<bool>(p, "section", false, where)) section(ws, base);
      ws.base = std::move(base);
    } else {
      ws.seq = std::move(base);
    }
  } else if (gen == "translation") {
    const HilbertModel grid = parse_grid(req<json>(p, "grid", where), where);
    ws.seq = translation_system(window_by_name(req<std::string>(p, "window", where)), req<double>(p, "c", where),
                                req<long>(p, "range", where), grid);
    ws.dual = span_dual(*ws.seq);
  } else if (gen == "pw_quarter") {
    const Index pts = req<Index>(p, "points", where);
    const double h = req<double>(p, "spacing", where);
    const double len = double(pts) * h;
    const HilbertModel grid = HilbertModel::periodic_interval(-len / 2.0, len / 2.0, pts);
    PwExample pw = pw_example(grid, parse_taper(opt<std::string>(p, "taper", "raised_cosine", where)));
    ws.notes["psi0_at_zero"] = pw.psi0_at_zero;
    ws.notes["printed_form_at_zero"] = pw.printed_form_at_zero;
    ws.notes["printed_form_deviation"] = pw.printed_form_deviation;
    ws.notes["sinc_form_deviation"] = pw.sinc_form_deviation;
    ws.seq = std::move(pw.phi);
    ws.dual = std::move(pw.psi);
    ws.op = std::move(pw.projection);
  } else if (gen == "difference") {
    const Index d = req<Index>(p, "d", where);
    ws.seq = difference_sequence(d);
    ws.op = difference_operator(d);
  } else if (gen == "multiplier") {
    const Index d = req<Index>(p, "d", where);
    Rng rng(seed);
    RieszPair pair = random_riesz_pair(HilbertModel::sequence(d), opt<double>(p, "condition", 10.0, where), rng);
    // |alpha_n| <= n with random phases.
    std::vector<Complex> alphas;
    for (Index n = 1; n <= d; ++n)
      alphas.push_back(std::polar(double(n) * rng.uniform(0.5, 1.0), rng.uniform(0.0, 2.0 * std::numbers::pi)));
    Vector a(d);
    for (Index n = 0; n < d; ++n) a[n] = alphas[std::size_t(n)];
    ws.op = riesz_multiplier(pair.phis, pair.psis, alphas);
    ws.seq = FrameSequence(pair.phis.model(), pair.phis.vectors() * a.asDiagonal(), pair.phis.labels());
    ws.dual = std::move(pair.psis);
  } else if (gen == "diag_parseval") {
    if (sizes.empty()) throw ScenarioError(where + ": diag_parseval needs a non-empty 'sizes' list");
    ws.family = diagonal_parseval_family(sizes);
    auto [op, seq] = ws.family->generator(sizes.back());
    ws.seq = std::move(seq);
    ws.op = std::move(op);
  } else {
    throw ScenarioError(where + ": unknown generator '" + gen + "' (valid: " + join(kGenerators) + ")");
  }
  return ws;
}

void apply_operator(Workspace& ws, const json& o) {
  const std::string where = "operator";
  const auto name = req<std::string>(o, "name", where);
  const json p = o.value("params", json::object());
  if (name == "generator") {
    if (!ws.op) throw ScenarioError(where + ": the generator does not provide an operator");
    return;
  }
  if (name == "none") {
    ws.op.reset();
    return;
  }
  if (!ws.seq) throw ScenarioError(where + ": no construction to attach the operator to");
  const HilbertModel& model = ws.seq->model();
  if (name == "identity") {
    ws.op = make_operator(model, Matrix::Identity(model.dim(), model.dim()), "I");
  } else if (name == "diff") {
    ws.op = diff_operator(model, parse_diff_variant(req<std::string>(p, "variant", where)));
    const Index modes = opt<Index>(p, "adjoint_modes", 0, where);
    if (modes > 0) ws.op = with_adjoint_domain(std::move(*ws.op), smooth_dirichlet_subspace(model, modes));
  } else if (name == "block_multiplier") {
    ws.op = block_multiplier(parse_complex_list(req<json>(p, "alphas", where), where + ".alphas"),
                             req<Index>(p, "cells", where), req<Index>(p, "points_per_cell", where));
    require_same_space(ws.op->input_model, model, "block_multiplier vs construction");
  } else {
    throw ScenarioError(where + ": unknown operator '" + name + "' (valid: " + join(kOperators) + ")");
  }
}

// Builds construction and operator from a (possibly modified) scenario.
Workspace build(const json& scenario, unsigned long long seed) {
  const std::vector<Index> sizes = scenario.value("sizes", std::vector<Index>{});
  Workspace ws = build_construction(scenario.at("construction"), sizes, seed);
  if (scenario.contains("operator")) apply_operator(ws, scenario.at("operator"));
  return ws;
}

const FrameSequence& need_seq(const Workspace& ws) {
  if (!ws.seq) throw ScenarioError("check needs a construction that produces a sequence");
  return *ws.seq;
}
const OperatorModel& need_op(const Workspace& ws, const std::string& check) {
  if (!ws.op) throw ScenarioError("check '" + check + "' needs an operator");
  return *ws.op;
}
const FrameSequence& need_dual(const Workspace& ws, const std::string& check) {
  if (!ws.dual) throw ScenarioError("check '" + check + "' needs a construction that provides a dual");
  return *ws.dual;
}

FrameSequence chosen_dual(const Workspace& ws, const json& p, const std::string& check, unsigned long long seed) {
  const auto which = opt<std::string>(p, "dual", ws.dual ? "given" : "constructed", check);
  if (which == "given") return need_dual(ws, check);
  if (which == "constructed") return weak_a_dual(need_seq(ws), need_op(ws, check), seed).sequence;
  throw ScenarioError(check + ": dual must be 'given' or 'constructed'");
}

struct Measured {
  double value = 0.0;
  std::string detail;
  std::optional<BoundsRecord> bounds;
  std::optional<Trajectory> trajectory;
};

double bound_ratio(const FrameBounds& b) { return b.beta > 0.0 ? b.alpha / b.beta : 0.0; }

Vector unit_sum_vector(const FrameSequence& seq) {
  // c_k = 1 / label_k, the coefficient sequence of the partial-sum identity.
  Vector c(seq.size());
  for (Index k = 0; k < seq.size(); ++k) c[k] = 1.0 / double(seq.labels()[std::size_t(k)]);
  return c;
}

Measured measure_once(const std::string& kind, const json& p, const Workspace& ws, unsigned long long seed);

Measured measure_monotone(const json& p, const json& scenario, unsigned long long seed) {
  const std::string where = "monotone";
  const auto metric = req<std::string>(p, "metric", where);
  const auto param = req<std::string>(p, "param", where);
  const auto values = req<std::vector<double>>(p, "values", where);
  if (values.size() < 2) throw ScenarioError(where + ": need at least two values");
  if (metric == "monotone" || !check_kinds().count(metric)) throw ScenarioError(where + ": bad metric '" + metric + "'");
  const json metric_params = p.value("metric_params", json::object());
  Measured out;
  out.trajectory = Trajectory{"monotone_" + metric + "_vs_" + param, {}};
  std::vector<double> errs;
  for (double v : values) {
    json s = scenario;
    s["construction"]["params"][param] = v;
    if (std::abs(v - std::round(v)) < 1e-12) s["construction"]["params"][param] = std::llround(v);
    const Workspace ws = build(s, seed);
    const double e = measure_once(metric, metric_params, ws, seed).value;
    errs.push_back(e);
    out.trajectory->points.emplace_back(Index(std::llround(v)), e);
  }
  double worst = 0.0;
  for (std::size_t i = 1; i < errs.size(); ++i)
    worst = std::max(worst, errs[i - 1] > 0.0 ? errs[i] / errs[i - 1] : (errs[i] > 0.0 ? 1e300 : 0.0));
  out.value = worst;
  out.detail = "largest ratio of successive errors";
  return out;
}

Measured measure_once(const std::string& kind, const json& p, const Workspace& ws, unsigned long long seed) {
  Measured out;
  const int trials = opt<int>(p, "trials", 100, kind);
  if (kind == "frame_ratio" || kind == "frame_alpha") {
    const FrameBounds b = frame_bounds(need_seq(ws));
    out.bounds = BoundsRecord{"frame", b};
    out.value = kind == "frame_ratio" ? bound_ratio(b) : b.alpha;
  } else if (kind == "kframe_alpha") {
    const FrameBounds b = kframe_bounds(need_seq(ws), need_op(ws, kind));
    out.bounds = BoundsRecord{"kframe", b};
    out.value = b.alpha;
  } else if (kind == "aframe_alpha") {
    const FrameBounds b = aframe_bounds_graph(need_seq(ws), need_op(ws, kind));
    out.bounds = BoundsRecord{"aframe_graph", b};
    out.value = b.alpha;
  } else if (kind == "weak_alpha") {
    const FrameBounds b = weak_aframe_bound(need_seq(ws), need_op(ws, kind));
    out.bounds = BoundsRecord{"weak_aframe", b};
    out.value = b.alpha;
  } else if (kind == "range_inclusion") {
    const RangeInclusion r = range_inclusion(need_op(ws, kind), need_seq(ws));
    out.value = r.residual;
    out.detail = r.included ? "included" : "not included";
  } else if (kind == "weak_duality") {
    const FrameSequence dual = chosen_dual(ws, p, kind, seed);
    const WeakDualityReport r = verify_weak_duality(need_seq(ws), dual, need_op(ws, kind), trials, seed);
    out.value = r.residual;
    out.detail = std::to_string(r.pairs) + " sampled pairs";
  } else if (kind == "adjoint_decomposition") {
    const FrameSequence dual = chosen_dual(ws, p, kind, seed);
    const Vector u = test_function(req<std::string>(p, "u", kind), need_seq(ws).model());
    out.value = adjoint_decomposition(need_seq(ws), dual, need_op(ws, kind), u).residual;
  } else if (kind == "reconstruction") {
    const FrameSequence& seq = need_seq(ws);
    const FrameSequence& dual = need_dual(ws, kind);
    const int signals = opt<int>(p, "signals", 20, kind);
    const bool band = opt<std::string>(p, "signal", "random", kind) == "bandlimited";
    Rng rng(seed);
    for (int s = 0; s < signals; ++s) {
      const Vector f = band ? bandlimited_signal(seq.model(), seed + std::uint64_t(s))
                            : Vector(rng.complex_normal(seq.dim(), 1).col(0));
      out.value = std::max(out.value, reconstruct(seq, dual, f).residual);
    }
    out.detail = std::to_string(signals) + (band ? " band-limited" : " random") + " signals";
  } else if (kind == "partial_sum_identity") {
    const FrameSequence& seq = need_seq(ws);
    const Vector c = unit_sum_vector(seq);
    // Running sum, so the whole sweep costs one pass over the columns.
    Vector partial = Vector::Zero(seq.dim());
    for (Index n = 1; n <= seq.size(); ++n) {
      partial += c[n - 1] * seq.vectors().col(n - 1);
      Vector e = Vector::Zero(seq.dim());
      e[n - 1] = 1.0;
      out.value = std::max(out.value, norm(seq.model(), partial - e));
    }
    out.detail = "max over n of ||sum_{k<=n} g_k / k - e_n||";
  } else if (kind == "strong_expansion") {
    const FrameSequence& seq = need_seq(ws);
    const OperatorModel& a = need_op(ws, kind);
    const FrameSequence t = chosen_dual(ws, p, kind, seed);
    const Vector f = unit_sum_vector(seq);
    const Vector expansion = synthesis(seq, analysis(t, f));
    out.value = norm(a.codomain, apply(a, f).value - expansion);
    out.detail = "||A f - sum <f, t_n> g_n|| with f = sum e_k / k";
  } else if (kind == "weak_certificate") {
    out.value = weak_a_dual(need_seq(ws), need_op(ws, kind), seed).certificate_residual;
  } else if (kind == "derivative_system") {
    if (!ws.base) throw ScenarioError(kind + ": needs a derivative generator");
    const FrameSequence& seq = ws.analytic ? *ws.analytic : need_seq(ws);
    const Matrix applied = need_op(ws, kind).matrix * ws.base->vectors();
    const RealVector diff = column_norms(seq.model(), applied - seq.vectors());
    const RealVector ref = column_norms(seq.model(), seq.vectors());
    for (Index n = 0; n < diff.size(); ++n)
      if (ref[n] > 0.0) out.value = std::max(out.value, diff[n] / ref[n]);
  } else if (kind == "selfadjoint_defect") {
    const OperatorModel& a = need_op(ws, kind);
    const double scale = spectral_norm(euclidean_matrix(a));
    const OperatorModel as = adjoint(a);
    const Matrix gap = a.codomain.sqrt_weights().asDiagonal() * (a.matrix - as.matrix) *
                       a.input_model.sqrt_weights().cwiseInverse().asDiagonal();
    out.value = scale > 0.0 ? spectral_norm(gap) / scale : 0.0;
  } else if (kind == "a_dual_residual") {
    out.value = a_dual_graph(need_seq(ws), need_op(ws, kind), seed).certificate_residual;
  } else if (kind == "k_dual_residual") {
    out.value = k_dual(need_seq(ws), need_op(ws, kind), seed).certificate_residual;
  } else if (kind == "interchange") {
    const FrameSequence dual = chosen_dual(ws, p, kind, seed);
    out.value = interchange_dual(need_seq(ws), dual, need_op(ws, kind)).certificate_residual;
  } else if (kind == "trajectory") {
    if (!ws.family) throw ScenarioError(kind + ": needs a truncation family generator");
    const auto probe = req<std::string>(p, "probe", kind);
    const auto expect = req<std::string>(p, "expect", kind);
    Trajectory t{probe, truncation_trajectory(*ws.family, probe)};
    for (const auto& [n, v] : t.points) {
      double target;
      if (expect == "one") target = 1.0;
      else if (expect == "N^2") target = double(n) * double(n);
      else throw ScenarioError(kind + ": expect must be 'one' or 'N^2'");
      out.value = std::max(out.value, std::abs(v - target) / std::max(1.0, std::abs(target)));
    }
    out.detail = "max relative deviation from " + expect;
    out.trajectory = std::move(t);
  } else {
    throw ScenarioError("unknown check '" + kind + "'");
  }
  return out;
}

void validate_check(const json& c, std::size_t i) {
  const std::string where = "checks[" + std::to_string(i) + "]";
  const auto kind = req<std::string>(c, "check", where);
  if (!check_kinds().count(kind)) {
    std::vector<std::string> names;
    for (const auto& [k, _] : check_kinds()) names.push_back(k);
    throw ScenarioError(where + ": unknown check '" + kind + "' (valid: " + join(names) + ")");
  }
  const double tol = req<double>(c, "tolerance", where);
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw ScenarioError(where + ": tolerance must be finite and non-negative");
  if (c.contains("compare")) parse_compare(req<std::string>(c, "compare", where));
  if (c.contains("params") && !c.at("params").is_object()) throw ScenarioError(where + ": params must be an object");
  if (c.contains("instances") && req<int>(c, "instances", where) < 1) throw ScenarioError(where + ": instances must be >= 1");
}

double tolerance_scale_from(const RunOptions& o) { return o.tolerance_scale > 0.0 ? o.tolerance_scale : 1.0; }

}  // namespace

std::string to_string(Compare c) {
  switch (c) {
    case Compare::Le: return "le";
    case Compare::Lt: return "lt";
    case Compare::Ge: return "ge";
    case Compare::Gt: return "gt";
  }
  return "le";
}

bool ScenarioReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* ScenarioReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json ScenarioReport::to_json() const {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = OPFRAME_VERSION;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["tolerance_scale"] = tolerance_scale;
  j["all_pass"] = all_pass();
  j["checks"] = json::array();
  for (const auto& c : checks) {
    json e{{"name", c.name},
           {"check", c.check},
           {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
           {"tolerance", c.tolerance},
           {"compare", to_string(c.compare)},
           {"pass", c.pass}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  j["bounds"] = json::array();
  for (const auto& b : bounds) {
    auto finite = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    j["bounds"].push_back({{"label", b.label},
                           {"alpha", finite(b.bounds.alpha)},
                           {"beta", finite(b.bounds.beta)},
                           {"kind", opframe::to_string(b.bounds.kind)},
                           {"inclusion_residual", finite(b.bounds.inclusion_residual)}});
  }
  j["trajectories"] = json::array();
  for (const auto& t : trajectories) {
    json pts = json::array();
    for (const auto& [n, v] : t.points) pts.push_back({n, v});
    j["trajectories"].push_back({{"name", t.name}, {"points", pts}});
  }
  j["notes"] = notes;
  j["wall_clock_seconds"] = wall_clock_seconds;
  return j;
}

json parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("malformed JSON: ") + e.what());
  }
  validate_scenario(j);
  return j;
}

void validate_scenario(const json& s) {
  if (!s.is_object()) throw ScenarioError("scenario must be a JSON object");
  const auto name = req<std::string>(s, "name", "scenario");
  if (name.empty()) throw ScenarioError("scenario: empty name");
  const auto gen = req<std::string>(req<json>(s, "construction", "scenario"), "generator", "construction");
  if (!contains(kGenerators, gen))
    throw ScenarioError("construction: unknown generator '" + gen + "' (valid: " + join(kGenerators) + ")");
  if (s.at("construction").contains("params") && !s.at("construction").at("params").is_object())
    throw ScenarioError("construction: params must be an object");
  if (s.contains("operator")) {
    const auto op = req<std::string>(s.at("operator"), "name", "operator");
    if (!contains(kOperators, op))
      throw ScenarioError("operator: unknown operator '" + op + "' (valid: " + join(kOperators) + ")");
  }
  if (s.contains("sizes")) {
    const auto sizes = req<std::vector<Index>>(s, "sizes", "scenario");
    for (Index n : sizes)
      if (n < 1) throw ScenarioError("scenario: sizes must be positive");
  }
  if (s.contains("seed")) req<unsigned long long>(s, "seed", "scenario");
  const json checks = req<json>(s, "checks", "scenario");
  if (!checks.is_array() || checks.empty()) throw ScenarioError("scenario: checks must be a non-empty list");
  for (std::size_t i = 0; i < checks.size(); ++i) validate_check(checks[i], i);
}

ScenarioReport run_scenario(const json& scenario, const RunOptions& options) {
  validate_scenario(scenario);
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioReport report;
  report.scenario = scenario.at("name").get<std::string>();
  report.seed = options.seed ? *options.seed : scenario.value("seed", 0ULL);
  report.tolerance_scale = tolerance_scale_from(options);

  std::optional<Workspace> ws;
  auto workspace = [&]() -> const Workspace& {
    if (!ws) {
      try {
        ws = build(scenario, report.seed);
      } catch (const FrameError& e) {
        throw ScenarioError(std::string("construction rejected its parameters: ") + e.what());
      }
      report.notes.update(ws->notes);
    }
    return *ws;
  };

  for (const json& c : scenario.at("checks")) {
    CheckResult r;
    r.check = c.at("check").get<std::string>();
    r.name = c.value("name", r.check);
    r.compare = c.contains("compare") ? parse_compare(c.at("compare").get<std::string>()) : check_kinds().at(r.check);
    r.tolerance = c.at("tolerance").get<double>();
    if (r.compare == Compare::Le) r.tolerance *= report.tolerance_scale;
    const json p = c.value("params", json::object());
    const int instances = c.value("instances", 1);
    try {
      if (r.check == "monotone") {
        Measured m = measure_monotone(p, scenario, report.seed);
        r.value = m.value;
        r.detail = m.detail;
        if (m.trajectory) report.trajectories.push_back(std::move(*m.trajectory));
      } else if (instances > 1) {
        // Worst case over independent instances built from consecutive seeds.
        const bool upper = r.compare == Compare::Le || r.compare == Compare::Lt;
        r.value = upper ? 0.0 : std::numeric_limits<double>::infinity();
        for (int i = 0; i < instances; ++i) {
          const Workspace w = build(scenario, report.seed + std::uint64_t(i));
          const double v = measure_once(r.check, p, w, report.seed + std::uint64_t(i)).value;
          r.value = upper ? std::max(r.value, v) : std::min(r.value, v);
        }
        r.detail = "worst of " + std::to_string(instances) + " instances";
      } else {
        Measured m = measure_once(r.check, p, workspace(), report.seed);
        r.value = m.value;
        r.detail = m.detail;
        if (m.bounds) report.bounds.push_back(std::move(*m.bounds));
        if (m.trajectory) report.trajectories.push_back(std::move(*m.trajectory));
      }
      r.pass = compare(r.value, r.tolerance, r.compare);
    } catch (const FrameError& e) {
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    report.checks.push_back(std::move(r));
  }
  report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream os;
  os.precision(17);
  os << "N,value\n";
  for (const auto& [n, v] : t.points) os << n << ',' << v << '\n';
  return os.str();
}

std::vector<std::string> bundled_scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : bundled::kScenarios) names.emplace_back(name);
  std::sort(names.begin(), names.end());
  return names;
}

std::optional<std::string_view> bundled_scenario(std::string_view name) {
  for (const auto& [n, body] : bundled::kScenarios)
    if (n == name) return body;
  return std::nullopt;
}

const std::vector<std::string>& reproducible_examples() {
  static const std::vector<std::string> names = {"pw_quarter", "exm1",       "exm2",     "wavelet",
                                                 "not_frame",  "difference", "multiplier", "parseval_trajectory"};
  return names;
}

}  // namespace opframe
