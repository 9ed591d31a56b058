#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "demres/errors.hpp"

namespace demres {

/// Fixed-capacity integer exponent vector, used as the key of every sparse
/// map in the library. Entries past size() are kept at zero, so the
/// defaulted ordering is lexicographic with the first variable most
/// significant, which is exactly the valuation order of iterated Laurent
/// series under t_1 << t_2 << ... << t_k.
class Exponents {
 public:
  static constexpr std::size_t kMaxVars = 16;

  Exponents() = default;

  explicit Exponents(std::size_t nvars) : size_(check_size(nvars)) {}

  Exponents(std::initializer_list<int> values) : size_(check_size(values.size())) {
    std::copy(values.begin(), values.end(), data_.begin());
  }

  std::size_t size() const { return size_; }
  int operator[](std::size_t i) const { return data_[i]; }
  int& operator[](std::size_t i) { return data_[i]; }
  const int* begin() const { return data_.data(); }
  const int* end() const { return data_.data() + size_; }

  int total() const {
    int s = 0;
    for (std::size_t i = 0; i < size_; ++i) s += data_[i];
    return s;
  }

  bool is_zero() const {
    return std::all_of(begin(), end(), [](int e) { return e == 0; });
  }

  /// First nonzero entry is positive.
  bool lex_positive() const {
    for (std::size_t i = 0; i < size_; ++i) {
      if (data_[i] != 0) return data_[i] > 0;
    }
    return false;
  }

  Exponents& operator+=(const Exponents& o) {
    for (std::size_t i = 0; i < size_; ++i) data_[i] += o.data_[i];
    return *this;
  }
  Exponents& operator-=(const Exponents& o) {
    for (std::size_t i = 0; i < size_; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Exponents operator+(Exponents a, const Exponents& b) { return a += b; }
  friend Exponents operator-(Exponents a, const Exponents& b) { return a -= b; }
  friend Exponents operator-(Exponents a) {
    for (std::size_t i = 0; i < a.size_; ++i) a.data_[i] = -a.data_[i];
    return a;
  }

  friend bool operator==(const Exponents&, const Exponents&) = default;
  friend auto operator<=>(const Exponents& a, const Exponents& b) {
    if (auto c = a.data_ <=> b.data_; c != 0) return c;
    return a.size_ <=> b.size_;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size_; ++i) {
      if (i) s += ",";
      s += std::to_string(data_[i]);
    }
    return s + ")";
  }

 private:
  static std::uint8_t check_size(std::size_t n) {
    if (n > kMaxVars) throw Error("too many variables (max 16)");
    return static_cast<std::uint8_t>(n);
  }

  std::array<int, kMaxVars> data_{};
  std::uint8_t size_ = 0;
};

}  // namespace demres
