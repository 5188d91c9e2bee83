#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cga {

/// Diagonal-metric Clifford algebra signature: an ordered list of basis
/// vectors, each squaring to +1 or -1. Dimension is capped at 8 so that a
/// basis blade fits in a one-byte bitmask.
class Signature {
public:
  static constexpr int kMaxDim = 8;

  Signature(std::vector<std::string> labels, std::vector<int> squares);

  /// Basis e1..e{p+q}, the first p squaring to +1, the remaining q to -1.
  static Signature diagonal(int p, int q);

  int dim() const { return static_cast<int>(labels_.size()); }
  int p() const { return p_; }
  int q() const { return q_; }

  /// Metric square of basis vector i (+1 or -1).
  int square(int i) const { return squares_[static_cast<size_t>(i)]; }
  const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a basis vector by name, -1 when absent. Case-sensitive.
  int index_of(std::string_view label) const;

  bool operator==(const Signature& other) const;
  bool operator!=(const Signature& other) const { return !(*this == other); }

  std::string to_string() const;  // e.g. "R(3,1)[e1,e2,e+,e-]"

private:
  std::vector<std::string> labels_;
  std::vector<int> squares_;
  int p_ = 0;
  int q_ = 0;
};

using SignaturePtr = std::shared_ptr<const Signature>;

inline SignaturePtr make_signature(Signature sig) {
  return std::make_shared<const Signature>(std::move(sig));
}

}  // namespace cga
