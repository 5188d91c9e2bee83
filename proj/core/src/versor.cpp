#include "cga/versor.hpp"

#include <cmath>
#include <stdexcept>

namespace cga {

namespace {

constexpr double kSeriesCutoff = 1e-15;

bool is_scalar_within(const Multivector& m, double rel, double* value) {
  double s = m.scalar_part();
  Multivector rest = m - Multivector::scalar(m.sig(), s);
  double scale = std::max(1.0, m.norm());
  if (rest.norm() > rel * scale) return false;
  if (value) *value = s;
  return true;
}

}  // namespace

Versor::Versor(Multivector mv, Parity parity) : mv_(std::move(mv)), parity_(parity) {
  Multivector vv = geometric_product(mv_, reverse(mv_));
  double s = 0.0;
  if (!is_scalar_within(vv, 1e-9, &s) || s == 0.0)
    throw std::invalid_argument("not a versor: V * reverse(V) is not a nonzero scalar");
}

Versor Versor::identity(SignaturePtr sig) {
  return Versor(Multivector::scalar(std::move(sig), 1.0), Parity::even);
}

Multivector Versor::apply(const Multivector& x) const {
  Multivector vv = geometric_product(mv_, reverse(mv_));
  double s = vv.scalar_part();
  if (s == 0.0) throw std::domain_error("non-invertible versor");
  const Multivector& arg = x;
  Multivector xeff = (parity_ == Parity::odd) ? grade_involution(arg) : arg;
  Multivector out = geometric_product(geometric_product(mv_, xeff), reverse(mv_));
  return (1.0 / s) * out;
}

Versor exp_bivector_series(const Multivector& bivector, int max_terms) {
  int g = 0;
  if (!bivector.is_homogeneous(&g) || (!bivector.is_zero() && g != 2))
    throw std::invalid_argument("exp expects a homogeneous grade-2 argument");
  if (max_terms < 1) throw std::invalid_argument("truncation count must be positive");
  const SignaturePtr& sig = bivector.sig();
  Multivector sum = Multivector::scalar(sig, 1.0);
  Multivector term = Multivector::scalar(sig, 1.0);
  for (int n = 1; n <= max_terms; ++n) {
    term = (1.0 / n) * geometric_product(term, bivector);
    sum += term;
    if (term.norm() < kSeriesCutoff) break;
  }
  return Versor(std::move(sum), Versor::Parity::even);
}

Versor exp_bivector(const Multivector& bivector, int max_terms) {
  int g = 0;
  if (!bivector.is_homogeneous(&g) || (!bivector.is_zero() && g != 2))
    throw std::invalid_argument("exp expects a homogeneous grade-2 argument");
  const SignaturePtr& sig = bivector.sig();
  if (bivector.is_zero())
    return Versor(Multivector::scalar(sig, 1.0), Versor::Parity::even);

  Multivector b2 = geometric_product(bivector, bivector);
  double lambda = 0.0;
  if (is_scalar_within(b2, 1e-14, &lambda)) {
    if (std::fabs(lambda) < 1e-14) {
      // nilpotent branch: exp(B) = 1 + B
      return Versor(Multivector::scalar(sig, 1.0) + bivector, Versor::Parity::even);
    }
    if (lambda < 0.0) {
      double th = std::sqrt(-lambda);
      return Versor(Multivector::scalar(sig, std::cos(th)) +
                        (std::sin(th) / th) * bivector,
                    Versor::Parity::even);
    }
    double ph = std::sqrt(lambda);
    return Versor(Multivector::scalar(sig, std::cosh(ph)) +
                      (std::sinh(ph) / ph) * bivector,
                  Versor::Parity::even);
  }
  return exp_bivector_series(bivector, max_terms);
}

}  // namespace cga
