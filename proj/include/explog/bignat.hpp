#pragma once

// Arbitrary-precision non-negative integers for the interpretation.
// Exponent towers are computed exactly; a size guard (decimal digits)
// aborts evaluation with a distinguished overflow signal instead of
// approximating.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace explog {

using boost::multiprecision::cpp_int;

struct EvalOverflow : std::runtime_error {
  explicit EvalOverflow(const std::string& what) : std::runtime_error(what) {}
};

class BigNat {
 public:
  BigNat() = default;
  BigNat(unsigned long v) : v_(v) {}
  explicit BigNat(cpp_int v) : v_(std::move(v)) {
    if (v_ < 0) throw std::invalid_argument("BigNat: negative value");
  }

  static constexpr unsigned long kDefaultMaxDigits = 100000;

  const cpp_int& value() const { return v_; }
  std::string str() const { return v_.str(); }

  unsigned long bit_length() const { return v_ == 0 ? 0 : boost::multiprecision::msb(v_) + 1; }
  unsigned long digits10() const { return static_cast<unsigned long>(v_.str().size()); }

  friend BigNat operator+(const BigNat& a, const BigNat& b) { return BigNat(a.v_ + b.v_); }
  friend BigNat operator*(const BigNat& a, const BigNat& b) { return BigNat(a.v_ * b.v_); }
  friend bool operator==(const BigNat& a, const BigNat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const BigNat& a, const BigNat& b) { return a.v_ != b.v_; }
  friend bool operator<(const BigNat& a, const BigNat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const BigNat& a, const BigNat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const BigNat& a, const BigNat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const BigNat& a, const BigNat& b) { return a.v_ >= b.v_; }

 private:
  cpp_int v_;
};

// base^exp, guarded: the estimated result size must stay under max_digits
// decimal digits. 1^e and b^0 are exact regardless of the guard.
inline BigNat pow(const BigNat& base, const BigNat& exp,
                  unsigned long max_digits = BigNat::kDefaultMaxDigits) {
  if (exp.value() == 0) return BigNat(1);
  if (base.value() == 0) return BigNat(0);
  if (base.value() == 1) return BigNat(1);
  // bits(b^e) <= e * bits(b); guard in bits with log2(10) ~ 3.32
  const cpp_int guard_bits = cpp_int(max_digits) * 10 / 3;
  cpp_int est = exp.value() * base.bit_length();
  if (est > guard_bits)
    throw EvalOverflow("value exceeds " + std::to_string(max_digits) + " decimal digits");
  unsigned long e = exp.value().convert_to<unsigned long>();
  return BigNat(boost::multiprecision::pow(base.value(), static_cast<unsigned>(e)));
}

}  // namespace explog
