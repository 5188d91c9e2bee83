#include "cga/signature.hpp"

#include <algorithm>
#include <stdexcept>

namespace cga {

Signature::Signature(std::vector<std::string> labels, std::vector<int> squares)
    : labels_(std::move(labels)), squares_(std::move(squares)) {
  if (labels_.empty() || labels_.size() > kMaxDim)
    throw std::invalid_argument("signature dimension must be in [1,8]");
  if (labels_.size() != squares_.size())
    throw std::invalid_argument("signature label/square count mismatch");
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty())
      throw std::invalid_argument("empty basis label");
    if (squares_[i] != 1 && squares_[i] != -1)
      throw std::invalid_argument("basis squares must be +1 or -1");
    for (size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j])
        throw std::invalid_argument("duplicate basis label: " + labels_[i]);
  }
  for (int s : squares_) (s > 0 ? p_ : q_)++;
}

Signature Signature::diagonal(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1 || p + q > kMaxDim)
    throw std::invalid_argument("signature (p,q) out of range");
  std::vector<std::string> labels;
  std::vector<int> squares;
  for (int i = 0; i < p + q; ++i) {
    labels.push_back("e" + std::to_string(i + 1));
    squares.push_back(i < p ? 1 : -1);
  }
  return Signature(std::move(labels), std::move(squares));
}

int Signature::index_of(std::string_view label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

bool Signature::operator==(const Signature& other) const {
  return labels_ == other.labels_ && squares_ == other.squares_;
}

std::string Signature::to_string() const {
  std::string s = "R(" + std::to_string(p_) + "," + std::to_string(q_) + ")[";
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (i) s += ",";
    s += labels_[i];
  }
  return s + "]";
}

}  // namespace cga
