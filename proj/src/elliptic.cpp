#include "loopkit/elliptic.hpp"

#include <cmath>
#include <stdexcept>

#include "loopkit/constants.hpp"

namespace loopkit::elliptic {

namespace {

struct AgmResult {
  double mean;        // agm(1, k')
  double defect_sum;  // sum over n of 2^(n-1) * c_n^2 with c_0 = k
};

AgmResult agm(double k) {
  if (!(k >= 0.0) || k >= 1.0)
    throw std::invalid_argument("elliptic: modulus must lie in [0, 1)");
  double a = 1.0;
  double g = std::sqrt((1.0 - k) * (1.0 + k));
  double sum = 0.5 * k * k;
  double weight = 1.0;
  for (int i = 0; i < 60 && std::abs(a - g) > 1e-17 * a; ++i) {
    const double c = 0.5 * (a - g);
    sum += weight * c * c;
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
    weight *= 2.0;
  }
  return {a, sum};
}

}  // namespace

double complete_k(double k) {
  return pi / (2.0 * agm(k).mean);
}

double complete_e(double k) {
  const auto r = agm(k);
  return pi / (2.0 * r.mean) * (1.0 - r.defect_sum);
}

}  // namespace loopkit::elliptic
