#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opframe/dual.hpp"
#include "opframe/opmodel.hpp"

namespace opframe {

// A window or mother function with its derivative. Outside [support_lo,
// support_hi) the function is zero; infinite ends mean no compact support.
struct Window {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double support_lo;
  double support_hi;
};

Window gaussian_window();  // 2^{1/4} exp(-pi x^2), unit L2 norm
Window bspline_window();   // cubic B-spline on [-2, 2): the hat smoothed twice by a unit box
Window cosine_window(double frequency);  // 1 + 0.5 cos(pi * frequency * x) on [0, 2)
Window zero_window();
// gaussian, bspline, not_frame (cosine_window(1)), fold (cosine_window(2)), zero.
Window window_by_name(const std::string& name);

// Columns e^{2 pi i n b x} for n in [label_lo, label_hi]; with `scaled` each
// column is multiplied by 2 pi n b.
FrameSequence exponential_system(double b, long label_lo, long label_hi, const HilbertModel& grid, bool scaled = false);
FrameSequence exponential_system(double b, long label_range, const HilbertModel& grid, bool scaled = false);

// G(g, a, b) = {e^{2 pi i m b x} g(x - n a)} for |m| <= m_range, |n| <= n_range
// on a periodic grid. Label pairs are (m, n); columns run over m fastest.
FrameSequence gabor_system(const Window& window, double a, double b, long m_range, long n_range,
                           const HilbertModel& grid);
// Columns 2 pi b m (M_{bm} T_{an} g) - i (M_{bm} T_{an} g'), i.e. -i d/dx of the Gabor columns.
FrameSequence gabor_derivative_system(const Window& window, double a, double b, long m_range, long n_range,
                                      const HilbertModel& grid);

// {a^{-m/2} phi(a^{-m} x - n b)} for |m| <= m_range, |n| <= n_range.
FrameSequence wavelet_system(const Window& mother, double a, double b, long m_range, long n_range,
                             const HilbertModel& grid);
// {a^{-3m/2} phi'(a^{-m} x - n b)}: d/dx of the wavelet columns.
FrameSequence wavelet_derivative_system(const Window& mother, double a, double b, long m_range, long n_range,
                                        const HilbertModel& grid);

// {phi(x - c n)} for |n| <= range, periodic on the grid.
FrameSequence translation_system(const Window& window, double c, long range, const HilbertModel& grid);

enum class Taper { Linear, RaisedCosine };
Taper parse_taper(const std::string& name);

struct PwExample {
  FrameSequence phi;   // phi(x - n), phi^ = 1 on |gamma| <= 1/4, tapering to 0 at |gamma| = 1/2
  FrameSequence psi;   // inverse transform of the band-limited exponential, indicator of [-1/4, 1/4)
  OperatorModel projection;  // orthogonal projection onto the band
  double psi0_at_zero = 0.0;
  double printed_form_at_zero = 0.0;   // limit of 4 sin(pi x / 2) / (pi x) at 0
  double printed_form_deviation = 0.0; // max |printed - psi_0| / max |psi_0| over the nodes
  double sinc_form_deviation = 0.0;    // same for sin(pi x / 2) / (pi x)
};
// grid: periodic, power-of-two length, integer 1/h; translates cover every integer shift.
PwExample pw_example(const HilbertModel& grid, Taper taper);
// Random signal with spectrum supported in [-1/4, 1/4).
Vector bandlimited_signal(const HilbertModel& grid, unsigned long long seed);

FrameSequence difference_sequence(Index d);
// The operator whose columns are the difference sequence, with D(A*) the
// vectors that vanish at the truncation edge.
OperatorModel difference_operator(Index d);

OperatorModel riesz_multiplier(const FrameSequence& phis, const FrameSequence& psis, const std::vector<Complex>& alphas);

// Span of sin^3(pi t) cos(pi k t), k < modes, t the normalized position on a
// closed grid; smooth functions vanishing to third order at both ends.
Subspace smooth_dirichlet_subspace(const HilbertModel& grid, Index modes);

// Sequence {2 pi n b e_{nb}}, its weak dual {b e_{nb}} and -i d/dx on H1 whose
// adjoint is tested on smooth_dirichlet_subspace(grid, adjoint_modes).
struct WeakTriple {
  FrameSequence seq;
  FrameSequence dual;
  OperatorModel op;
};
WeakTriple exponential_derivative_triple(const HilbertModel& grid, double b, long label_range, Index adjoint_modes,
                                         double dual_scale);

// Named smooth test functions on a grid: sin3 (sin^3(pi t)), sin (sin(pi t)),
// gauss_mod (exp(-pi x^2/4) cos(2 pi x)).
Vector test_function(const std::string& name, const HilbertModel& grid);

}  // namespace opframe
