#include "cga/text_format.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace cga {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void skip_space(std::string_view text, size_t& pos) {
  while (pos < text.size() && is_space(text[pos])) ++pos;
}

std::string blade_label(const Frame& frame, unsigned subset) {
  std::string out;
  for (int i = 0; i < frame.size(); ++i) {
    if (!(subset & (1u << i))) continue;
    if (!out.empty()) out += "^";
    out += frame.label(i);
  }
  return out;
}

}  // namespace

Frame::Frame(SignaturePtr sig, std::vector<std::pair<std::string, Multivector>> vectors)
    : sig_(std::move(sig)), vectors_(std::move(vectors)) {
  if (!sig_) throw std::invalid_argument("frame needs a signature");
  if (static_cast<int>(vectors_.size()) != sig_->dim())
    throw std::invalid_argument("frame must have one vector per dimension");
  canonical_ = true;
  for (size_t i = 0; i < vectors_.size(); ++i) {
    const auto& [label, v] = vectors_[i];
    if (label.empty()) throw std::invalid_argument("empty frame label");
    int g = 0;
    if (!v.is_homogeneous(&g) || g != 1 || v.is_zero())
      throw std::invalid_argument("frame vectors must be nonzero grade 1");
    if (v.sig() != sig_ && *v.sig() != *sig_)
      throw std::invalid_argument("incompatible algebras");
    if (v.term_count() != 1 || v.terms()[0].mask != (1u << i) ||
        v.terms()[0].coeff != 1.0 || label != sig_->label(static_cast<int>(i)))
      canonical_ = false;
  }
}

Frame Frame::orthonormal(SignaturePtr sig) {
  std::vector<std::pair<std::string, Multivector>> vecs;
  for (int i = 0; i < sig->dim(); ++i)
    vecs.emplace_back(sig->label(i), Multivector::basis_vector(sig, i));
  return Frame(std::move(sig), std::move(vecs));
}

void Frame::add_parse_alias(std::string label, Multivector v) {
  if (label.empty()) throw std::invalid_argument("empty frame label");
  int g = 0;
  if (!v.is_homogeneous(&g) || g != 1 || v.is_zero())
    throw std::invalid_argument("frame vectors must be nonzero grade 1");
  aliases_.emplace_back(std::move(label), std::move(v));
}

const std::string& Frame::label(int i) const {
  if (i < size()) return vectors_[static_cast<size_t>(i)].first;
  return aliases_[static_cast<size_t>(i - size())].first;
}

const Multivector& Frame::vector(int i) const {
  if (i < size()) return vectors_[static_cast<size_t>(i)].second;
  return aliases_[static_cast<size_t>(i - size())].second;
}

int Frame::match_label(std::string_view text) const {
  int best = -1;
  size_t best_len = 0;
  int total = size() + static_cast<int>(aliases_.size());
  for (int i = 0; i < total; ++i) {
    const std::string& l = label(i);
    if (l.size() > best_len && text.substr(0, l.size()) == l) {
      best = i;
      best_len = l.size();
    }
  }
  return best;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string render_terms(const Frame& frame, const std::vector<std::pair<unsigned, double>>& coords) {
  if (coords.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [subset, c] : coords) {
    double mag = std::fabs(c);
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    if (subset == 0) {
      out += format_double(mag);
    } else {
      out += format_double(mag);
      out += "*";
      out += blade_label(frame, subset);
    }
  }
  return out;
}

}  // namespace

std::string format_multivector(const Multivector& mv, const Frame& frame) {
  if (mv.sig() != frame.sig() && *mv.sig() != *frame.sig())
    throw std::invalid_argument("incompatible algebras");

  std::vector<std::pair<unsigned, double>> coords;
  if (frame.is_canonical()) {
    for (const Term& t : mv.terms()) coords.emplace_back(t.mask, t.coeff);
  } else {
    // Coordinates by contraction with the reciprocal frame: the coefficient
    // on f_{i1}^...^f_{ik} is <reverse(f^{i1}^...^f^{ik}) mv>_0.
    int n = frame.sig()->dim();
    Eigen::MatrixXd gram(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gram(i, j) = inner_scalar(frame.vector(i), frame.vector(j));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible())
      throw std::invalid_argument("frame does not span the algebra");
    Eigen::MatrixXd ginv = lu.inverse();

    std::vector<Multivector> reciprocal;
    for (int i = 0; i < n; ++i) {
      Multivector r(frame.sig());
      for (int j = 0; j < n; ++j)
        if (ginv(i, j) != 0.0) r += ginv(i, j) * frame.vector(j);
      reciprocal.push_back(std::move(r));
    }

    int slots = 1 << n;
    std::vector<std::pair<unsigned, double>> raw;
    double top = 0.0;
    for (int subset = 0; subset < slots; ++subset) {
      Multivector blade = Multivector::scalar(frame.sig(), 1.0);
      for (int i = 0; i < n; ++i)
        if (subset & (1 << i)) blade = outer_product(blade, reciprocal[static_cast<size_t>(i)]);
      double c = inner_scalar(reverse(blade), mv);
      if (c != 0.0) raw.emplace_back(static_cast<unsigned>(subset), c);
      top = std::max(top, std::fabs(c));
    }
    // Normalization point: coordinates below 1e-12 (relative for large
    // inputs) are expansion noise.
    for (const auto& [subset, c] : raw)
      if (std::fabs(c) >= 1e-12 * std::max(1.0, top)) coords.emplace_back(subset, c);
  }
  // order by grade, then mask, for stable readable output
  std::stable_sort(coords.begin(), coords.end(), [](const auto& a, const auto& b) {
    int ga = std::popcount(a.first), gb = std::popcount(b.first);
    return ga != gb ? ga < gb : a.first < b.first;
  });
  return render_terms(frame, coords);
}

Multivector parse_multivector(std::string_view text, const Frame& frame) {
  const SignaturePtr& sig = frame.sig();
  Multivector acc(sig);
  size_t pos = 0;
  skip_space(text, pos);
  if (pos == text.size()) throw std::invalid_argument("empty multivector text");

  bool expect_term = true;
  double pending_sign = 1.0;
  while (pos < text.size()) {
    if (expect_term) {
      double coeff = pending_sign;
      bool have_number = false;
      char c = text[pos];
      if (c == '-' ) { coeff = -coeff; ++pos; skip_space(text, pos); }
      else if (c == '+') { ++pos; skip_space(text, pos); }
      if (pos >= text.size()) throw std::invalid_argument("dangling sign in multivector text");
      c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        const char* start = text.data() + pos;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start) throw std::invalid_argument("bad number in multivector text");
        pos += static_cast<size_t>(end - start);
        coeff *= v;
        have_number = true;
      }
      Multivector blade = Multivector::scalar(sig, 1.0);
      bool have_blade = false;
      skip_space(text, pos);
      if (have_number && pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_space(text, pos);
      }
      while (pos < text.size()) {
        int idx = frame.match_label(text.substr(pos));
        if (idx < 0) break;
        pos += frame.label(idx).size();
        blade = outer_product(blade, frame.vector(idx));
        have_blade = true;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          continue;
        }
        break;
      }
      if (!have_number && !have_blade)
        throw std::invalid_argument("expected term at position " + std::to_string(pos));
      acc += coeff * blade;
      expect_term = false;
      pending_sign = 1.0;
      skip_space(text, pos);
    } else {
      char c = text[pos];
      if (c == '+') pending_sign = 1.0;
      else if (c == '-') pending_sign = -1.0;
      else throw std::invalid_argument("expected + or - at position " + std::to_string(pos));
      ++pos;
      skip_space(text, pos);
      expect_term = true;
    }
  }
  if (expect_term) throw std::invalid_argument("dangling sign in multivector text");
  return acc;
}

}  // namespace cga
