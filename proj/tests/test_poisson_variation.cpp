#include "doctest.h"
#include "virasoro/poisson_variation.hpp"

using namespace vir;

TEST_CASE("Re R closed form holds for n = -2 .. -6") {
  for (int n = -2; n >= -6; --n) {
    ReRCheck c = check_re_r_closed_form(n);
    CAPTURE(n);
    CHECK(c.holds());
  }
}

TEST_CASE("Q has a removable singularity on the diagonal") {
  for (int n = -2; n >= -6; --n) {
    QCheck c = check_q_removable(n);
    CAPTURE(n);
    CHECK(c.removable());
    CHECK(c.q.check_invariants());
  }
}

TEST_CASE("perturbing the closed form breaks the identity") {
  KernelVariation kv = kernel_variation(-3);
  CHECK_FALSE(kv.r_closed_form.is_zero());
  CHECK_THROWS(kernel_variation(-1));
}
