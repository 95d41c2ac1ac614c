#pragma once

#include "virasoro/multipoly.hpp"

namespace vir {

// First-order variation of the Poisson and Dirichlet-to-Neumann kernels of
// the unit semidisk under phi_t(z) = z(1 + t(z^n - z^-n)), n <= -2.
// All objects are Laurent polynomials in the symbols z, w.
struct KernelVariation {
  int n;
  MultiPoly z, w;
  // R(z,w) = -z w Rnum / (z-w)^3
  MultiPoly r_numerator;
  // 2 z w sum_{i+j=-n-2} (i+1)(j+1) z^i w^j
  MultiPoly r_closed_form;
  // Q(z,w) = Qnum / (z-w)^2 before cancellation
  MultiPoly q_numerator;
};

KernelVariation kernel_variation(int n);

// z -> 1/z, w -> 1/w (complex conjugation on the unit circles).
MultiPoly invert_circle(const MultiPoly& p);

struct ReRCheck {
  int n;
  MultiPoly residual;  // (z-w)^3 (Re R - Re closed form) * 2, as a Laurent polynomial
  bool holds() const { return residual.is_zero(); }
};
ReRCheck check_re_r_closed_form(int n);

struct QCheck {
  int n;
  MultiPoly first_remainder, second_remainder;
  MultiPoly q;  // Laurent polynomial after both divisions
  bool removable() const { return first_remainder.is_zero() && second_remainder.is_zero(); }
};
QCheck check_q_removable(int n);

}  // namespace vir
