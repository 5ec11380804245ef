#pragma once

#include <mpfr.h>

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wlsim {

/// Arithmetic configuration: every value produced under a context is
/// rounded to nearest-even at `bits` significand bits.
class PrecisionContext {
 public:
  /// Throws InputError unless 2 <= bits <= 1 << 20.
  explicit PrecisionContext(unsigned bits);
  unsigned bits() const { return bits_; }
  mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(bits_); }
  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  unsigned bits_;
};

/// Owning MPFR value with its own precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec);
  BigFloat(double x, mpfr_prec_t prec);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Parses decimal or C99 hex-float text ("0x1.8p-3"), rounding to prec.
  /// Throws InputError on malformed input.
  static BigFloat parse(std::string_view text, mpfr_prec_t prec);

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  /// Exact hex-float rendering, e.g. "0x1.6a09e667f3bcdp+0".
  std::string to_hex() const;
  /// Shortest-ish decimal with enough digits to identify the value.
  std::string to_decimal() const;

  /// Bit-exact value comparison (precision is not part of the value).
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

 private:
  mpfr_t value_;
};

/// e^x / (1 + e^x), correctly rounded to ctx.
BigFloat logistic(const BigFloat& x, const PrecisionContext& ctx);
/// atan(x), correctly rounded to ctx.
BigFloat arctan(const BigFloat& x, const PrecisionContext& ctx);
/// sqrt(k), correctly rounded to ctx.
BigFloat sqrt_uint(unsigned long k, const PrecisionContext& ctx);
/// Exact sum of the values, rounded once to ctx. Independent of order.
BigFloat exact_sum(std::span<const BigFloat> values, const PrecisionContext& ctx);

/// Formats a double as an exact C99 hex-float ("%a").
std::string hex_double(double x);
/// Parses decimal or hex-float text into a double; throws InputError.
double parse_double(std::string_view text);

}  // namespace wlsim
