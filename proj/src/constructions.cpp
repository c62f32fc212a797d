#include "opframe/constructions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "opframe/error.hpp"
#include "opframe/random.hpp"

namespace opframe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

bool near_integer(double x, double tol = 1e-9) { return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x)); }

// Evaluates f (value or derivative of w) at x, wrapping x into one period of
// the grid when the grid is periodic.
double eval(const Window& w, const std::function<double(double)>& f, double x, const HilbertModel& grid) {
  if (grid.geometry() == Geometry::Periodic) {
    const double period = grid.length();
    double t = (x - w.support_lo) / period;
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
    x = w.support_lo + t * period;
  }
  // Snap so that nodes sitting on the right end of a half-open support stay outside.
  if (x < w.support_lo || x > w.support_hi - 1e-9) return 0.0;
  return f(x);
}

void require_grid(const HilbertModel& grid, const char* what) {
  if (grid.geometry() == Geometry::Sequence) fail(ErrorCode::GridMismatch, std::string(what) + " needs an interval grid");
}

}  // namespace

Window gaussian_window() {
  const double c = std::pow(2.0, 0.25);
  return Window{"gaussian", [c](double x) { return c * std::exp(-kPi * x * x); },
                [c](double x) { return -2.0 * kPi * x * c * std::exp(-kPi * x * x); }, -7.0, 7.0};
}

Window bspline_window() {
  auto value = [](double x) {
    const double ax = std::abs(x);
    if (ax < 1.0) return (4.0 - 6.0 * ax * ax + 3.0 * ax * ax * ax) / 6.0;
    if (ax < 2.0) return (2.0 - ax) * (2.0 - ax) * (2.0 - ax) / 6.0;
    return 0.0;
  };
  auto deriv = [](double x) {
    const double ax = std::abs(x);
    const double s = x < 0.0 ? -1.0 : 1.0;
    if (ax < 1.0) return -2.0 * x + 1.5 * x * ax;
    if (ax < 2.0) return -s * (2.0 - ax) * (2.0 - ax) / 2.0;
    return 0.0;
  };
  return Window{"bspline", value, deriv, -2.0, 2.0};
}

Window cosine_window(double frequency) {
  return Window{"cosine", [frequency](double x) { return 1.0 + 0.5 * std::cos(kPi * frequency * x); },
                [frequency](double x) { return -0.5 * kPi * frequency * std::sin(kPi * frequency * x); }, 0.0, 2.0};
}

Window zero_window() {
  return Window{"zero", [](double) { return 0.0; }, [](double) { return 0.0; }, -1.0, 1.0};
}

Window window_by_name(const std::string& name) {
  if (name == "gaussian") return gaussian_window();
  if (name == "bspline") return bspline_window();
  if (name == "not_frame") {
    Window w = cosine_window(1.0);
    w.name = "not_frame";
    return w;
  }
  if (name == "fold") {
    Window w = cosine_window(2.0);
    w.name = "fold";
    return w;
  }
  if (name == "zero") return zero_window();
  fail(ErrorCode::InvalidArgument, "unknown window '" + name + "'");
}

FrameSequence exponential_system(double b, long label_lo, long label_hi, const HilbertModel& grid, bool scaled) {
  if (!(b > 0.0 && b <= 1.0)) fail(ErrorCode::InvalidArgument, "exponential_system needs b in (0, 1]");
  if (label_hi < label_lo) fail(ErrorCode::InvalidArgument, "empty label range");
  require_grid(grid, "exponential_system");
  const Index n_cols = Index(label_hi - label_lo + 1);
  Matrix g(grid.dim(), n_cols);
  std::vector<long> labels(static_cast<std::size_t>(n_cols));
  for (Index c = 0; c < n_cols; ++c) {
    const long n = label_lo + long(c);
    labels[std::size_t(c)] = n;
    const double freq = double(n) * b;
    const double scale = scaled ? 2.0 * kPi * freq : 1.0;
    for (Index j = 0; j < grid.dim(); ++j) g(j, c) = scale * std::exp(2.0 * kPi * kI * freq * grid.nodes()[j]);
  }
  return FrameSequence(grid, std::move(g), std::move(labels));
}

FrameSequence exponential_system(double b, long label_range, const HilbertModel& grid, bool scaled) {
  return exponential_system(b, -label_range, label_range, grid, scaled);
}

namespace {

FrameSequence gabor_impl(const Window& w, double a, double b, long m_range, long n_range, const HilbertModel& grid,
                         bool derivative) {
  if (!(a > 0.0 && b > 0.0)) fail(ErrorCode::InvalidArgument, "gabor_system needs a, b > 0");
  if (m_range < 0 || n_range < 0) fail(ErrorCode::InvalidArgument, "negative index range");
  if (grid.geometry() != Geometry::Periodic) fail(ErrorCode::GridMismatch, "gabor_system needs a periodic grid");
  const double h = grid.spacing();
  const double len = grid.length();
  if (!near_integer(a / h)) fail(ErrorCode::GridMismatch, "translation step is not a multiple of the grid spacing");
  if (!near_integer(b * len)) fail(ErrorCode::GridMismatch, "modulation step is not a multiple of 1/length");
  if (2 * n_range + 1 > std::lround(len / a))
    fail(ErrorCode::WindowOverflow, "more translations than fit on the periodic window");
  if (2 * m_range + 1 > std::lround(1.0 / (b * h)))
    fail(ErrorCode::WindowOverflow, "more modulations than the grid resolves");

  const Index n_cols = Index((2 * m_range + 1) * (2 * n_range + 1));
  Matrix g(grid.dim(), n_cols);
  std::vector<std::array<long, 2>> pairs;
  pairs.reserve(std::size_t(n_cols));
  RealVector shifted(grid.dim()), shifted_d(grid.dim());
  Index c = 0;
  for (long n = -n_range; n <= n_range; ++n) {
    for (Index j = 0; j < grid.dim(); ++j) {
      const double x = grid.nodes()[j] - a * double(n);
      shifted[j] = eval(w, w.value, x, grid);
      shifted_d[j] = derivative ? eval(w, w.derivative, x, grid) : 0.0;
    }
    for (long m = -m_range; m <= m_range; ++m, ++c) {
      const double freq = b * double(m);
      for (Index j = 0; j < grid.dim(); ++j) {
        const Complex mod = std::exp(2.0 * kPi * kI * freq * grid.nodes()[j]);
        g(j, c) = derivative ? 2.0 * kPi * freq * mod * shifted[j] - kI * mod * shifted_d[j] : mod * shifted[j];
      }
      pairs.push_back({m, n});
    }
  }
  FrameSequence seq(grid, std::move(g));
  seq.with_label_pairs(std::move(pairs));
  return seq;
}

FrameSequence wavelet_impl(const Window& w, double a, double b, long m_range, long n_range, const HilbertModel& grid,
                           bool derivative) {
  if (!(a > 1.0 && b > 0.0)) fail(ErrorCode::InvalidArgument, "wavelet_system needs a > 1, b > 0");
  if (m_range < 0 || n_range < 0) fail(ErrorCode::InvalidArgument, "negative index range");
  require_grid(grid, "wavelet_system");
  const Index n_cols = Index((2 * m_range + 1) * (2 * n_range + 1));
  Matrix g(grid.dim(), n_cols);
  std::vector<std::array<long, 2>> pairs;
  Index c = 0;
  const double slack = 1e-12 * grid.length();
  for (long m = -m_range; m <= m_range; ++m) {
    const double scale = std::pow(a, double(m));
    for (long n = -n_range; n <= n_range; ++n, ++c) {
      const double lo = scale * (w.support_lo + double(n) * b);
      const double hi = scale * (w.support_hi + double(n) * b);
      if (lo < grid.lower() - slack || hi > grid.upper() + slack)
        fail(ErrorCode::WindowOverflow, "wavelet (" + std::to_string(m) + "," + std::to_string(n) +
                                            ") leaves the window");
      const double amp = derivative ? std::pow(a, -1.5 * double(m)) : std::pow(a, -0.5 * double(m));
      for (Index j = 0; j < grid.dim(); ++j) {
        const double x = grid.nodes()[j] / scale - double(n) * b;
        g(j, c) = amp * eval(w, derivative ? w.derivative : w.value, x, grid);
      }
      pairs.push_back({m, n});
    }
  }
  FrameSequence seq(grid, std::move(g));
  require_nonzero(seq, "wavelet_system");
  seq.with_label_pairs(std::move(pairs));
  return seq;
}

}  // namespace

FrameSequence gabor_system(const Window& window, double a, double b, long m_range, long n_range,
                           const HilbertModel& grid) {
  FrameSequence s = gabor_impl(window, a, b, m_range, n_range, grid, false);
  require_nonzero(s, "gabor_system");
  return s;
}

FrameSequence gabor_derivative_system(const Window& window, double a, double b, long m_range, long n_range,
                                      const HilbertModel& grid) {
  return gabor_impl(window, a, b, m_range, n_range, grid, true);
}

FrameSequence wavelet_system(const Window& mother, double a, double b, long m_range, long n_range,
                             const HilbertModel& grid) {
  return wavelet_impl(mother, a, b, m_range, n_range, grid, false);
}

FrameSequence wavelet_derivative_system(const Window& mother, double a, double b, long m_range, long n_range,
                                        const HilbertModel& grid) {
  return wavelet_impl(mother, a, b, m_range, n_range, grid, true);
}

FrameSequence translation_system(const Window& window, double c, long range, const HilbertModel& grid) {
  require_grid(grid, "translation_system");
  if (range < 0) fail(ErrorCode::InvalidArgument, "negative index range");
  Matrix g(grid.dim(), 2 * range + 1);
  std::vector<long> labels;
  for (long n = -range; n <= range; ++n) {
    labels.push_back(n);
    for (Index j = 0; j < grid.dim(); ++j)
      g(j, Index(n + range)) = eval(window, window.value, grid.nodes()[j] - c * double(n), grid);
  }
  FrameSequence seq(grid, std::move(g), std::move(labels));
  require_nonzero(seq, "translation_system");
  return seq;
}

Taper parse_taper(const std::string& name) {
  if (name == "linear") return Taper::Linear;
  if (name == "raised_cosine") return Taper::RaisedCosine;
  fail(ErrorCode::InvalidArgument, "unknown taper '" + name + "'");
}

namespace {

struct PwGrid {
  Index d;
  double len;
  long per_unit;  // 1/h
  std::vector<long> bins;  // frequency indices k, gamma = k / len
};

PwGrid pw_grid(const HilbertModel& grid) {
  if (grid.geometry() != Geometry::Periodic) fail(ErrorCode::GridMismatch, "pw_example needs a periodic grid");
  const Index d = grid.dim();
  if (d < 16 || (d & (d - 1)) != 0) fail(ErrorCode::GridMismatch, "pw_example needs a power-of-two grid length");
  const double inv_h = 1.0 / grid.spacing();
  if (!near_integer(inv_h) || !near_integer(grid.length()))
    fail(ErrorCode::GridMismatch, "pw_example needs integer 1/h and integer window length");
  PwGrid p{d, grid.length(), std::lround(inv_h), {}};
  for (long k = -long(d) / 2; k < long(d) / 2; ++k) p.bins.push_back(k);
  return p;
}

double phi_hat(double gamma, Taper taper) {
  const double ag = std::abs(gamma);
  if (ag <= 0.25) return 1.0;
  if (ag >= 0.5) return 0.0;
  if (taper == Taper::Linear) return 2.0 - 4.0 * ag;
  return 0.5 * (1.0 + std::cos(kPi * (ag - 0.25) / 0.25));
}

bool in_band(double gamma) { return gamma >= -0.25 - 1e-12 && gamma < 0.25 - 1e-12; }

}  // namespace

PwExample pw_example(const HilbertModel& grid, Taper taper) {
  const PwGrid p = pw_grid(grid);
  const Index d = p.d;
  const double len = p.len;
  const long shifts = std::lround(len);
  const RealVector& x = grid.nodes();

  std::vector<long> phi_bins, psi_bins;
  for (long k : p.bins) {
    const double gamma = double(k) / len;
    if (phi_hat(gamma, taper) > 0.0) phi_bins.push_back(k);
    if (in_band(gamma)) psi_bins.push_back(k);
  }
  auto exps = [&](const std::vector<long>& bins) {
    Matrix e(d, Index(bins.size()));
    for (Index c = 0; c < e.cols(); ++c)
      for (Index j = 0; j < d; ++j) e(j, c) = std::exp(2.0 * kPi * kI * (double(bins[std::size_t(c)]) / len) * x[j]);
    return e;
  };
  // Coefficients of the n-th translate: hat(gamma) e^{-2 pi i gamma n} / len.
  auto coeffs = [&](const std::vector<long>& bins, auto hat) {
    Matrix cm(Index(bins.size()), shifts);
    for (Index r = 0; r < cm.rows(); ++r) {
      const double gamma = double(bins[std::size_t(r)]) / len;
      for (long s = 0; s < shifts; ++s) {
        const long n = s - shifts / 2;
        cm(r, s) = hat(gamma) * std::exp(-2.0 * kPi * kI * gamma * double(n)) / len;
      }
    }
    return cm;
  };
  std::vector<long> labels;
  for (long s = 0; s < shifts; ++s) labels.push_back(s - shifts / 2);

  Matrix phi = exps(phi_bins) * coeffs(phi_bins, [&](double g) { return phi_hat(g, taper); });
  Matrix psi = exps(psi_bins) * coeffs(psi_bins, [](double) { return 1.0; });

  // Projection onto the band: circulant with first column (h / len) sum_k e^{2 pi i gamma_k (x_j - x_0)}.
  Vector first(d);
  for (Index j = 0; j < d; ++j) {
    Complex s = 0.0;
    for (long k : psi_bins) s += std::exp(2.0 * kPi * kI * (double(k) / len) * (double(j) * grid.spacing()));
    first[j] = s * grid.spacing() / len;
  }
  Matrix proj(d, d);
  for (Index c = 0; c < d; ++c)
    for (Index j = 0; j < d; ++j) proj(j, c) = first[(j - c + d) % d];

  PwExample out{FrameSequence(grid, std::move(phi), labels), FrameSequence(grid, std::move(psi), labels),
                make_operator(grid, std::move(proj), "P (band [-1/4, 1/4))"), 0.0, 0.0, 0.0, 0.0};

  // Compare psi_0 with the printed closed form and with sin(pi x / 2) / (pi x).
  const Vector psi0 = out.psi.vectors().col(shifts / 2);
  Index zero = 0;
  for (Index j = 0; j < d; ++j)
    if (std::abs(x[j]) < std::abs(x[zero])) zero = j;
  out.psi0_at_zero = std::real(psi0[zero]);
  out.printed_form_at_zero = 2.0;
  const double peak = psi0.cwiseAbs().maxCoeff();
  for (Index j = 0; j < d; ++j) {
    const double t = x[j];
    const double sinc = std::abs(t) < 1e-14 ? 0.5 : std::sin(kPi * t / 2.0) / (kPi * t);
    out.printed_form_deviation = std::max(out.printed_form_deviation, std::abs(4.0 * sinc - psi0[j]) / peak);
    if (std::abs(t) <= len / 8.0)
      out.sinc_form_deviation = std::max(out.sinc_form_deviation, std::abs(sinc - psi0[j]) / peak);
  }
  return out;
}

Vector bandlimited_signal(const HilbertModel& grid, unsigned long long seed) {
  const PwGrid p = pw_grid(grid);
  Rng rng(seed);
  Vector f = Vector::Zero(p.d);
  for (long k : p.bins) {
    const double gamma = double(k) / p.len;
    if (!in_band(gamma)) continue;
    const Complex c = rng.complex_normal();
    for (Index j = 0; j < p.d; ++j) f[j] += c * std::exp(2.0 * kPi * kI * gamma * grid.nodes()[j]);
  }
  return f;
}

FrameSequence difference_sequence(Index d) {
  if (d < 2) fail(ErrorCode::InvalidDimension, "difference_sequence needs d >= 2");
  Matrix g = Matrix::Zero(d, d);
  g(0, 0) = 1.0;
  for (Index n = 1; n < d; ++n) {
    g(n, n) = double(n + 1);
    g(n - 1, n) = -double(n + 1);
  }
  std::vector<long> labels;
  for (Index n = 1; n <= d; ++n) labels.push_back(long(n));
  return FrameSequence(HilbertModel::sequence(d), std::move(g), std::move(labels));
}

OperatorModel difference_operator(Index d) {
  const FrameSequence seq = difference_sequence(d);
  OperatorModel op = make_operator(seq.model(), seq.vectors(), "C* I (difference)");
  Matrix edge_free = Matrix::Identity(d, d - 1);
  op.adjoint_domain = Subspace(seq.model(), std::move(edge_free));
  return op;
}

OperatorModel riesz_multiplier(const FrameSequence& phis, const FrameSequence& psis, const std::vector<Complex>& alphas) {
  require_same_space(phis.model(), psis.model(), "riesz_multiplier");
  if (phis.size() != psis.size() || Index(alphas.size()) != phis.size())
    fail(ErrorCode::InvalidDimension, "riesz_multiplier: phis, psis and alphas must have equal length");
  if (phis.size() != phis.dim()) fail(ErrorCode::NotBiorthogonal, "a Riesz basis of the model needs N = dim");
  const Matrix cross = psis.vectors().adjoint() * phis.model().weights().asDiagonal() * phis.vectors();
  const double defect = (cross - Matrix::Identity(cross.rows(), cross.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-8) fail(ErrorCode::NotBiorthogonal, "<phi_i, psi_j> differs from delta_ij by " + std::to_string(defect));
  Vector a(Index(alphas.size()));
  for (Index i = 0; i < a.size(); ++i) a[i] = alphas[std::size_t(i)];
  Matrix m = phis.vectors() * a.asDiagonal() * psis.vectors().adjoint() * phis.model().weights().asDiagonal();
  return make_operator(phis.model(), std::move(m), "H_alpha");
}

Subspace smooth_dirichlet_subspace(const HilbertModel& grid, Index modes) {
  if (grid.geometry() != Geometry::Closed) fail(ErrorCode::GridMismatch, "smooth Dirichlet functions need a closed grid");
  if (modes < 1) fail(ErrorCode::InvalidArgument, "need at least one mode");
  Matrix v(grid.dim(), modes);
  for (Index j = 0; j < grid.dim(); ++j) {
    const double t = (grid.nodes()[j] - grid.lower()) / grid.length();
    const double s = std::sin(kPi * t);
    for (Index k = 0; k < modes; ++k) v(j, k) = s * s * s * std::cos(kPi * double(k) * t);
  }
  v.row(0).setZero();
  v.row(grid.dim() - 1).setZero();
  return orthonormalize(v, grid);
}

WeakTriple exponential_derivative_triple(const HilbertModel& grid, double b, long label_range, Index adjoint_modes,
                                         double dual_scale) {
  FrameSequence seq = exponential_system(b, label_range, grid, true);
  FrameSequence base = exponential_system(b, label_range, grid, false);
  FrameSequence dual(grid, dual_scale * base.vectors(), base.labels());
  OperatorModel op = diff_operator(grid, DiffVariant::MinusIDdxH1);
  if (adjoint_modes > 0) op = with_adjoint_domain(std::move(op), smooth_dirichlet_subspace(grid, adjoint_modes));
  return WeakTriple{std::move(seq), std::move(dual), std::move(op)};
}

Vector test_function(const std::string& name, const HilbertModel& grid) {
  Vector f(grid.dim());
  for (Index j = 0; j < grid.dim(); ++j) {
    const double x = grid.nodes()[j];
    const double t = grid.length() > 0.0 ? (x - grid.lower()) / grid.length() : x;
    if (name == "sin3") {
      const double s = std::sin(kPi * t);
      f[j] = s * s * s;
    } else if (name == "sin") {
      f[j] = std::sin(kPi * t);
    } else if (name == "gauss_mod") {
      f[j] = std::exp(-kPi * x * x / 4.0) * std::cos(2.0 * kPi * x);
    } else {
      fail(ErrorCode::InvalidArgument, "unknown test function '" + name + "'");
    }
  }
  if (grid.geometry() == Geometry::Closed && (name == "sin3" || name == "sin")) {
    f[0] = 0.0;
    f[grid.dim() - 1] = 0.0;
  }
  return f;
}

}  // namespace opframe
