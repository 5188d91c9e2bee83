#include "cga/multivector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace cga {

namespace {

void require_same_signature(const Multivector& a, const Multivector& b) {
  if (!a.sig() || !b.sig())
    throw std::invalid_argument("multivector without signature");
  if (a.sig() != b.sig() && *a.sig() != *b.sig())
    throw std::invalid_argument("incompatible algebras");
}

int reorder_sign(BladeMask a, BladeMask b) {
  // Parity of the transpositions needed to interleave the factors of b
  // into those of a, ascending index order.
  int swaps = 0;
  unsigned rest = a >> 1;
  while (rest != 0) {
    swaps += std::popcount(rest & static_cast<unsigned>(b));
    rest >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

// Accumulates products into a dense scratch; masks fit in 8 bits.
struct DenseScratch {
  std::array<double, 256> c{};
  std::array<bool, 256> used{};

  void add(BladeMask mask, double v) {
    c[mask] += v;
    used[mask] = true;
  }

  Multivector collect(const SignaturePtr& sig) const {
    std::vector<Term> terms;
    for (int m = 0; m < 256; ++m)
      if (used[m] && c[m] != 0.0)
        terms.push_back({static_cast<BladeMask>(m), c[m]});
    return Multivector::from_sorted_terms(sig, std::move(terms));
  }
};

}  // namespace

int blade_grade(BladeMask mask) { return std::popcount(static_cast<unsigned>(mask)); }

int blade_product_sign(const Signature& sig, BladeMask a, BladeMask b) {
  int sign = reorder_sign(a, b);
  unsigned shared = static_cast<unsigned>(a) & static_cast<unsigned>(b);
  while (shared != 0) {
    int i = std::countr_zero(shared);
    sign *= sig.square(i);
    shared &= shared - 1;
  }
  return sign;
}

Multivector Multivector::scalar(SignaturePtr sig, double value) {
  Multivector mv(std::move(sig));
  if (value != 0.0) mv.terms_.push_back({0, value});
  return mv;
}

Multivector Multivector::basis_vector(SignaturePtr sig, int index) {
  if (!sig || index < 0 || index >= sig->dim())
    throw std::invalid_argument("basis vector index out of range");
  return basis_blade(std::move(sig), static_cast<BladeMask>(1u << index));
}

Multivector Multivector::basis_blade(SignaturePtr sig, BladeMask mask, double coeff) {
  if (!sig) throw std::invalid_argument("null signature");
  if (mask >= (1u << sig->dim()))
    throw std::invalid_argument("blade mask outside algebra");
  Multivector mv(std::move(sig));
  if (coeff != 0.0) mv.terms_.push_back({mask, coeff});
  return mv;
}

Multivector Multivector::from_sorted_terms(SignaturePtr sig, std::vector<Term> terms) {
  Multivector mv(std::move(sig));
  mv.terms_ = std::move(terms);
  return mv;
}

double Multivector::coeff(BladeMask mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const Term& t, BladeMask m) { return t.mask < m; });
  return (it != terms_.end() && it->mask == mask) ? it->coeff : 0.0;
}

int Multivector::max_grade() const {
  int g = -1;
  for (const Term& t : terms_) g = std::max(g, blade_grade(t.mask));
  return g;
}

bool Multivector::is_homogeneous(int* grade_out) const {
  if (terms_.empty()) {
    if (grade_out) *grade_out = 0;
    return true;
  }
  int g = blade_grade(terms_.front().mask);
  for (const Term& t : terms_)
    if (blade_grade(t.mask) != g) return false;
  if (grade_out) *grade_out = g;
  return true;
}

double Multivector::norm() const {
  double s = 0.0;
  for (const Term& t : terms_) s += t.coeff * t.coeff;
  return std::sqrt(s);
}

double Multivector::max_abs_coeff() const {
  double m = 0.0;
  for (const Term& t : terms_) m = std::max(m, std::fabs(t.coeff));
  return m;
}

Multivector Multivector::pruned(double eps) const {
  std::vector<Term> kept;
  for (const Term& t : terms_)
    if (std::fabs(t.coeff) >= eps) kept.push_back(t);
  return from_sorted_terms(sig_, std::move(kept));
}

Multivector Multivector::operator-() const {
  Multivector r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  *this = *this + rhs;
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  *this = *this - rhs;
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= s;
  return *this;
}

Multivector operator+(const Multivector& a, const Multivector& b) {
  if (a.sig() && b.sig()) require_same_signature(a, b);
  const SignaturePtr& sig = a.sig() ? a.sig() : b.sig();
  std::vector<Term> out;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].mask < tb[j].mask)) {
      out.push_back(ta[i++]);
    } else if (i == ta.size() || tb[j].mask < ta[i].mask) {
      out.push_back(tb[j++]);
    } else {
      double c = ta[i].coeff + tb[j].coeff;
      if (c != 0.0) out.push_back({ta[i].mask, c});
      ++i, ++j;
    }
  }
  return Multivector::from_sorted_terms(sig, std::move(out));
}

Multivector operator-(const Multivector& a, const Multivector& b) { return a + (-b); }

Multivector operator*(double s, const Multivector& a) {
  Multivector r = a;
  r *= s;
  return r;
}

Multivector operator*(const Multivector& a, double s) { return s * a; }

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  require_same_signature(a, b);
  DenseScratch acc;
  const Signature& sig = *a.sig();
  for (const Term& ta : a.terms())
    for (const Term& tb : b.terms()) {
      int sign = blade_product_sign(sig, ta.mask, tb.mask);
      acc.add(ta.mask ^ tb.mask, (ta.coeff * tb.coeff) * sign);
    }
  return acc.collect(a.sig());
}

Multivector outer_product(const Multivector& a, const Multivector& b) {
  require_same_signature(a, b);
  DenseScratch acc;
  for (const Term& ta : a.terms())
    for (const Term& tb : b.terms()) {
      if ((ta.mask & tb.mask) != 0) continue;  // shared factor wedges to zero
      int sign = reorder_sign(ta.mask, tb.mask);
      acc.add(ta.mask ^ tb.mask, (ta.coeff * tb.coeff) * sign);
    }
  return acc.collect(a.sig());
}

Multivector inner_product(const Multivector& a, const Multivector& b) {
  require_same_signature(a, b);
  DenseScratch acc;
  const Signature& sig = *a.sig();
  for (const Term& ta : a.terms())
    for (const Term& tb : b.terms()) {
      // The product blade has grade |ga - gb| exactly when the lower-graded
      // factor is contained in the higher-graded one.
      BladeMask shared = ta.mask & tb.mask;
      if (shared != ta.mask && shared != tb.mask) continue;
      int sign = blade_product_sign(sig, ta.mask, tb.mask);
      acc.add(ta.mask ^ tb.mask, (ta.coeff * tb.coeff) * sign);
    }
  return acc.collect(a.sig());
}

double inner_scalar(const Multivector& a, const Multivector& b) {
  require_same_signature(a, b);
  const Signature& sig = *a.sig();
  double acc = 0.0;
  for (const Term& ta : a.terms()) {
    double cb = b.coeff(ta.mask);
    if (cb == 0.0) continue;
    acc += (ta.coeff * cb) * blade_product_sign(sig, ta.mask, ta.mask);
  }
  return acc;
}

double coeff_dot(const Multivector& a, const Multivector& b) {
  double acc = 0.0;
  for (const Term& t : a.terms()) acc += t.coeff * b.coeff(t.mask);
  return acc;
}

Multivector grade_project(const Multivector& a, int k) {
  if (!a.sig()) throw std::invalid_argument("multivector without signature");
  if (k < 0 || k > a.sig()->dim())
    throw std::invalid_argument("grade out of range");
  std::vector<Term> out;
  for (const Term& t : a.terms())
    if (blade_grade(t.mask) == k) out.push_back(t);
  return Multivector::from_sorted_terms(a.sig(), std::move(out));
}

Multivector reverse(const Multivector& a) {
  std::vector<Term> terms = a.terms();
  for (Term& t : terms) {
    int k = blade_grade(t.mask);
    if (((k * (k - 1) / 2) & 1) != 0) t.coeff = -t.coeff;
  }
  return Multivector::from_sorted_terms(a.sig(), std::move(terms));
}

Multivector grade_involution(const Multivector& a) {
  std::vector<Term> terms = a.terms();
  for (Term& t : terms)
    if (blade_grade(t.mask) & 1) t.coeff = -t.coeff;
  return Multivector::from_sorted_terms(a.sig(), std::move(terms));
}

Multivector pseudoscalar(const SignaturePtr& sig) {
  if (!sig) throw std::invalid_argument("null signature");
  return Multivector::basis_blade(sig, static_cast<BladeMask>((1u << sig->dim()) - 1));
}

int pseudoscalar_square_sign(const Signature& sig) {
  BladeMask full = static_cast<BladeMask>((1u << sig.dim()) - 1);
  return blade_product_sign(sig, full, full);
}

Multivector dual(const Multivector& a) {
  if (!a.sig()) throw std::invalid_argument("multivector without signature");
  const SignaturePtr& sig = a.sig();
  Multivector inv_ps = pseudoscalar(sig);
  int s = pseudoscalar_square_sign(*sig);
  // I^-1 = reverse(I) / (I * reverse(I)); both factors are +-1 signs here.
  Multivector rev = reverse(inv_ps);
  int n = sig->dim();
  int rev_sign = ((n * (n - 1) / 2) & 1) ? -1 : 1;
  // I * reverse(I) = rev_sign * I * I = rev_sign * s
  double denom = static_cast<double>(rev_sign * s);
  return geometric_product(a, rev * (1.0 / denom));
}

Multivector commutator_half(const Multivector& a, const Multivector& b) {
  Multivector ab = geometric_product(a, b);
  Multivector ba = geometric_product(b, a);
  return 0.5 * (ab - ba);
}

bool approx_equal(const Multivector& a, const Multivector& b, double tol) {
  Multivector d = a - b;
  return d.norm() <= tol;
}

}  // namespace cga
