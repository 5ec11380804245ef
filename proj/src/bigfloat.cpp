#include "wlsim/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "wlsim/error.hpp"

namespace wlsim {
namespace {

constexpr unsigned kMaxBits = 1u << 20;

struct FreeMpfrString {
  void operator()(char* s) const { mpfr_free_str(s); }
};

std::string format(const char* fmt, mpfr_srcptr x) {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, fmt, x) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::unique_ptr<char, FreeMpfrString> owned(raw);
  return std::string(raw);
}

}  // namespace

PrecisionContext::PrecisionContext(unsigned bits) : bits_(bits) {
  if (bits < 2 || bits > kMaxBits) {
    throw InputError("precision must be between 2 and " + std::to_string(kMaxBits) + " bits, got " +
                     std::to_string(bits));
  }
}

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double x, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, x, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  value_[0] = other.value_[0];
  other.value_[0]._mpfr_d = nullptr;
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    if (value_[0]._mpfr_d == nullptr) {
      mpfr_init2(value_, other.precision());
    } else {
      mpfr_set_prec(value_, other.precision());
    }
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) {
    std::swap(value_[0], other.value_[0]);
  }
  return *this;
}

BigFloat::~BigFloat() {
  if (value_[0]._mpfr_d != nullptr) mpfr_clear(value_);
}

BigFloat BigFloat::parse(std::string_view text, mpfr_prec_t prec) {
  std::string s(text);
  BigFloat out(prec);
  char* end = nullptr;
  mpfr_strtofr(out.value_, s.c_str(), &end, 0, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) throw InputError("malformed real number: '" + s + "'");
  return out;
}

std::string BigFloat::to_hex() const { return format("%Ra", value_); }

std::string BigFloat::to_decimal() const {
  // Digits needed to separate neighboring values at this precision.
  const int digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30103)) + 1;
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*Rg", digits, value_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::unique_ptr<char, FreeMpfrString> owned(raw);
  return std::string(raw);
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigFloat logistic(const BigFloat& x, const PrecisionContext& ctx) {
  BigFloat out(ctx.prec());
  if (mpfr_zero_p(x.get())) {
    mpfr_set_d(out.get(), 0.5, MPFR_RNDN);
    return out;
  }
  // 1 - logistic(x) < e^-x, so beyond (p+1) ln 2 the result rounds to 1.
  if (mpfr_cmp_d(x.get(), (static_cast<double>(ctx.prec()) + 2.0) * 0.6931471805599453) > 0) {
    mpfr_set_ui(out.get(), 1, MPFR_RNDN);
    return out;
  }
  // Ziv loop: 1 / (1 + e^-x) carries at most 4 ulp of error at working
  // precision w; retry with more bits until the p-bit rounding is decided.
  // x != 0 makes the result irrational, so the loop terminates.
  mpfr_prec_t w = ctx.prec() + 32;
  for (;;) {
    BigFloat t(w);
    mpfr_neg(t.get(), x.get(), MPFR_RNDN);
    mpfr_exp(t.get(), t.get(), MPFR_RNDN);
    mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDN);
    mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDN);
    if (mpfr_can_round(t.get(), w - 3, MPFR_RNDN, MPFR_RNDZ, ctx.prec() + 1) || w > 64 * ctx.prec() + 4096) {
      mpfr_set(out.get(), t.get(), MPFR_RNDN);
      return out;
    }
    w += w / 2;
  }
}

BigFloat arctan(const BigFloat& x, const PrecisionContext& ctx) {
  BigFloat out(ctx.prec());
  mpfr_atan(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat sqrt_uint(unsigned long k, const PrecisionContext& ctx) {
  BigFloat out(ctx.prec());
  mpfr_sqrt_ui(out.get(), k, MPFR_RNDN);
  return out;
}

BigFloat exact_sum(std::span<const BigFloat> values, const PrecisionContext& ctx) {
  BigFloat out(ctx.prec());
  std::vector<mpfr_ptr> ptrs;
  ptrs.reserve(values.size());
  for (const auto& v : values) ptrs.push_back(const_cast<mpfr_ptr>(v.get()));
  mpfr_sum(out.get(), ptrs.data(), ptrs.size(), MPFR_RNDN);
  return out;
}

std::string hex_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_double(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw InputError("malformed number: '" + s + "'");
  return x;
}

}  // namespace wlsim
