#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cga/multivector.hpp"

namespace cga {

/// A named vector basis used for multivector text I/O. The default frame is
/// the signature's own orthonormal basis; a conformal model additionally
/// offers the null frame {e1..ed, O, inf}. Frame vectors must form a basis
/// of the grade-1 space.
class Frame {
public:
  Frame(SignaturePtr sig, std::vector<std::pair<std::string, Multivector>> vectors);

  static Frame orthonormal(SignaturePtr sig);

  const SignaturePtr& sig() const { return sig_; }
  int size() const { return static_cast<int>(vectors_.size()); }

  /// Extra named vector accepted by the parser but never emitted; lets a
  /// conformal frame read e+ / e- alongside O / inf.
  void add_parse_alias(std::string label, Multivector v);

  /// Indices >= size() address parse aliases.
  const std::string& label(int i) const;
  const Multivector& vector(int i) const;

  /// Longest frame or alias label matching a prefix of text, -1 when none
  /// does.
  int match_label(std::string_view text) const;

  /// True when the frame vectors are exactly the signature basis in order.
  bool is_canonical() const { return canonical_; }

private:
  SignaturePtr sig_;
  std::vector<std::pair<std::string, Multivector>> vectors_;
  std::vector<std::pair<std::string, Multivector>> aliases_;
  bool canonical_ = false;
};

/// Serializes to `coef*label[^label...]` terms joined by ` + ` / ` - `;
/// scalar terms are written bare; the zero multivector is "0". Coefficients
/// are printed with 17 significant digits. When the frame is not canonical
/// the expansion prunes coordinates below 1e-12 relative to the largest.
std::string format_multivector(const Multivector& mv, const Frame& frame);

/// Inverse of format_multivector; also accepts bare blades (coefficient 1)
/// and arbitrary whitespace. Labels are matched case-sensitively,
/// longest-match against the frame vocabulary.
Multivector parse_multivector(std::string_view text, const Frame& frame);

/// "%.17g" rendering used everywhere a number is serialized.
std::string format_double(double v);

}  // namespace cga
