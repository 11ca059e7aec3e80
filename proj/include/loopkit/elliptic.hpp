#pragma once

namespace loopkit::elliptic {

// Complete elliptic integrals of the first and second kind in the modulus
// convention (argument k, not the parameter m = k*k), computed with the
// arithmetic-geometric mean.  Valid for 0 <= k < 1; complete_k diverges as
// k approaches 1 and both throw std::invalid_argument outside the domain.
double complete_k(double k);
double complete_e(double k);

}  // namespace loopkit::elliptic
