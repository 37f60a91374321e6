#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ihom {

// Integer extended by +inf and -inf. Adding +inf to -inf throws.
class ExtInt {
public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  constexpr ExtInt() = default;
  constexpr ExtInt(long long v) : kind_(Kind::Finite), value_(v) {}  // NOLINT(implicit)

  static constexpr ExtInt pos_inf() { return ExtInt(Kind::PosInf); }
  static constexpr ExtInt neg_inf() { return ExtInt(Kind::NegInf); }

  constexpr bool finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr Kind kind() const { return kind_; }

  long long value() const {
    if (!finite()) throw std::logic_error("ExtInt::value on infinite value");
    return value_;
  }

  friend ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.finite() && b.finite()) return ExtInt(a.value_ + b.value_);
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      throw std::domain_error("ExtInt: +inf + -inf is undefined");
    return a.finite() ? b : a;
  }
  friend ExtInt operator-(ExtInt a) {
    if (a.finite()) return ExtInt(-a.value_);
    return a.is_pos_inf() ? neg_inf() : pos_inf();
  }
  friend ExtInt operator-(ExtInt a, ExtInt b) { return a + (-b); }

  friend constexpr bool operator==(ExtInt a, ExtInt b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend constexpr bool operator<(ExtInt a, ExtInt b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.kind_ == Kind::Finite && a.value_ < b.value_;
  }
  friend constexpr bool operator!=(ExtInt a, ExtInt b) { return !(a == b); }
  friend constexpr bool operator<=(ExtInt a, ExtInt b) { return !(b < a); }
  friend constexpr bool operator>(ExtInt a, ExtInt b) { return b < a; }
  friend constexpr bool operator>=(ExtInt a, ExtInt b) { return !(a < b); }

  std::string to_string() const {
    if (is_pos_inf()) return "+inf";
    if (is_neg_inf()) return "-inf";
    return std::to_string(value_);
  }

private:
  explicit constexpr ExtInt(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  long long value_ = 0;
};

inline ExtInt min(ExtInt a, ExtInt b) { return b < a ? b : a; }
inline ExtInt max(ExtInt a, ExtInt b) { return a < b ? b : a; }

}  // namespace ihom
