/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POSOPEN_AMOUNTS_HPP
#define POSOPEN_AMOUNTS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace posopen {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  EMPTY_SET,
  ZERO_TRADABLE_SUPPLY,
  STAKE_EXCEEDS_SUPPLY,
  ZERO_TOTAL_STAKE,
  ZERO_APR,
  SET_TOO_LARGE,
  COHORT_TOO_SMALL,
  COHORT_MISMATCH,
  DUPLICATE_CHAIN_ID,
  PARSE_ERROR,
  VALIDATION_ERROR,
  UNSUPPORTED_VERSION,
  DECIMALS_MISMATCH,
  NEGATIVE_AMOUNT,
  BAD_PRICE,
  IO_ERROR,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::EMPTY_SET: return "EMPTY_SET";
    case ErrorCode::ZERO_TRADABLE_SUPPLY: return "ZERO_TRADABLE_SUPPLY";
    case ErrorCode::STAKE_EXCEEDS_SUPPLY: return "STAKE_EXCEEDS_SUPPLY";
    case ErrorCode::ZERO_TOTAL_STAKE: return "ZERO_TOTAL_STAKE";
    case ErrorCode::ZERO_APR: return "ZERO_APR";
    case ErrorCode::SET_TOO_LARGE: return "SET_TOO_LARGE";
    case ErrorCode::COHORT_TOO_SMALL: return "COHORT_TOO_SMALL";
    case ErrorCode::COHORT_MISMATCH: return "COHORT_MISMATCH";
    case ErrorCode::DUPLICATE_CHAIN_ID: return "DUPLICATE_CHAIN_ID";
    case ErrorCode::PARSE_ERROR: return "PARSE_ERROR";
    case ErrorCode::VALIDATION_ERROR: return "VALIDATION_ERROR";
    case ErrorCode::UNSUPPORTED_VERSION: return "UNSUPPORTED_VERSION";
    case ErrorCode::DECIMALS_MISMATCH: return "DECIMALS_MISMATCH";
    case ErrorCode::NEGATIVE_AMOUNT: return "NEGATIVE_AMOUNT";
    case ErrorCode::BAD_PRICE: return "BAD_PRICE";
    case ErrorCode::IO_ERROR: return "IO_ERROR";
  }
  return "UNKNOWN";
}

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline BigInt pow10(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

/// floor(a / b) for b > 0, a >= 0.
inline BigInt div_floor(const BigInt& a, const BigInt& b) { return a / b; }

/// ceil(a / b) for b > 0, a >= 0.
inline BigInt div_ceil(const BigInt& a, const BigInt& b) {
  return (a + b - 1) / b;
}

/// Nearest integer to a / b, ties away from zero (half-up), a >= 0, b > 0.
inline BigInt div_round_half_up(const BigInt& a, const BigInt& b) {
  return (2 * a + b) / (2 * b);
}

/// Exact token quantity in base units of a chain's native token.
/// Display units = base_units / 10^decimals. Arithmetic never mixes
/// decimals; that is a hard error, not a conversion.
class TokenAmount {
 public:
  TokenAmount() : base_units_(0), decimals_(0) {}
  TokenAmount(BigInt base_units, unsigned decimals)
      : base_units_(std::move(base_units)), decimals_(decimals) {
    if (base_units_ < 0)
      throw Error(ErrorCode::NEGATIVE_AMOUNT, "token base_units must be >= 0");
    if (decimals_ > 30)
      throw Error(ErrorCode::PARSE_ERROR, "decimals out of range [0,30]");
  }

  /// Whole display units, e.g. from_units(32, 18) is 32 tokens at 18 decimals.
  static TokenAmount from_units(const BigInt& units, unsigned decimals) {
    return TokenAmount(units * pow10(decimals), decimals);
  }

  const BigInt& base_units() const { return base_units_; }
  unsigned decimals() const { return decimals_; }
  bool is_zero() const { return base_units_ == 0; }

  TokenAmount operator+(const TokenAmount& o) const {
    require_same_decimals(o);
    return TokenAmount(base_units_ + o.base_units_, decimals_);
  }
  TokenAmount operator-(const TokenAmount& o) const {
    require_same_decimals(o);
    if (o.base_units_ > base_units_)
      throw Error(ErrorCode::NEGATIVE_AMOUNT, "token subtraction underflow");
    return TokenAmount(base_units_ - o.base_units_, decimals_);
  }
  bool operator==(const TokenAmount& o) const {
    return decimals_ == o.decimals_ && base_units_ == o.base_units_;
  }
  bool operator!=(const TokenAmount& o) const { return !(*this == o); }
  bool operator<(const TokenAmount& o) const {
    require_same_decimals(o);
    return base_units_ < o.base_units_;
  }
  bool operator<=(const TokenAmount& o) const {
    require_same_decimals(o);
    return base_units_ <= o.base_units_;
  }
  bool operator>(const TokenAmount& o) const { return o < *this; }
  bool operator>=(const TokenAmount& o) const { return o <= *this; }

  /// Decimal display string, e.g. "32", "1.5".
  std::string to_display_string() const {
    BigInt scale = pow10(decimals_);
    BigInt whole = base_units_ / scale;
    BigInt frac = base_units_ % scale;
    std::string s = whole.str();
    if (frac != 0) {
      std::string f = frac.str();
      f.insert(f.begin(), decimals_ - f.size(), '0');
      while (!f.empty() && f.back() == '0') f.pop_back();
      s += "." + f;
    }
    return s;
  }

 private:
  void require_same_decimals(const TokenAmount& o) const {
    if (decimals_ != o.decimals_)
      throw Error(ErrorCode::DECIMALS_MISMATCH,
                  "token amounts have different decimals (" +
                      std::to_string(decimals_) + " vs " +
                      std::to_string(o.decimals_) + ")");
  }

  BigInt base_units_;
  unsigned decimals_;
};

/// Fixed-point USD with two fractional digits.
class UsdAmount {
 public:
  UsdAmount() : cents_(0) {}
  explicit UsdAmount(BigInt cents) : cents_(std::move(cents)) {
    if (cents_ < 0)
      throw Error(ErrorCode::NEGATIVE_AMOUNT, "usd cents must be >= 0");
  }
  static UsdAmount from_dollars(const BigInt& dollars) {
    return UsdAmount(dollars * 100);
  }

  const BigInt& cents() const { return cents_; }

  UsdAmount operator+(const UsdAmount& o) const {
    return UsdAmount(cents_ + o.cents_);
  }
  bool operator==(const UsdAmount& o) const { return cents_ == o.cents_; }
  bool operator!=(const UsdAmount& o) const { return cents_ != o.cents_; }
  bool operator<(const UsdAmount& o) const { return cents_ < o.cents_; }
  bool operator<=(const UsdAmount& o) const { return cents_ <= o.cents_; }
  bool operator>(const UsdAmount& o) const { return cents_ > o.cents_; }
  bool operator>=(const UsdAmount& o) const { return cents_ >= o.cents_; }

  /// "$1,234.56"
  std::string to_string() const {
    BigInt dollars = cents_ / 100;
    BigInt rem = cents_ % 100;
    std::string d = dollars.str();
    for (int i = static_cast<int>(d.size()) - 3; i > 0; i -= 3)
      d.insert(static_cast<size_t>(i), ",");
    std::string r = rem.str();
    if (r.size() < 2) r.insert(r.begin(), 2 - r.size(), '0');
    return "$" + d + "." + r;
  }

 private:
  BigInt cents_;
};

/// USD price per display token, parsed from a decimal string with at most
/// 12 fractional digits. Kept exact as a rational; the source text is
/// preserved for byte-stable serialization.
class PriceUsd {
 public:
  PriceUsd() = default;

  static PriceUsd parse(const std::string& text) {
    if (text.empty())
      throw Error(ErrorCode::BAD_PRICE, "empty price string");
    std::string digits;
    unsigned frac = 0;
    bool seen_dot = false;
    for (char c : text) {
      if (c == '.') {
        if (seen_dot)
          throw Error(ErrorCode::BAD_PRICE, "malformed price: " + text);
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (seen_dot) ++frac;
      } else {
        throw Error(ErrorCode::BAD_PRICE, "malformed price: " + text);
      }
    }
    if (digits.empty())
      throw Error(ErrorCode::BAD_PRICE, "malformed price: " + text);
    if (frac > 12)
      throw Error(ErrorCode::BAD_PRICE,
                  "price has more than 12 fractional digits: " + text);
    PriceUsd p;
    p.text_ = text;
    p.value_ = BigRational(BigInt(digits), pow10(frac));
    if (p.value_ <= 0)
      throw Error(ErrorCode::BAD_PRICE, "price must be > 0: " + text);
    return p;
  }

  const BigRational& value() const { return value_; }
  const std::string& text() const { return text_; }

  bool operator==(const PriceUsd& o) const { return value_ == o.value_; }

 private:
  BigRational value_;
  std::string text_;
};

/// TokenAmount x price -> USD cents, rounded half-up to the nearest cent.
inline UsdAmount token_value_usd(const TokenAmount& amount,
                                 const PriceUsd& price) {
  BigInt num = amount.base_units() * numerator(price.value()) * 100;
  BigInt den = denominator(price.value()) * pow10(amount.decimals());
  return UsdAmount(div_round_half_up(num, den));
}

/// Smallest whole number of base units worth at least `usd` at `price`.
inline BigInt usd_to_base_units_ceil(const UsdAmount& usd,
                                     const PriceUsd& price,
                                     unsigned decimals) {
  BigInt num = usd.cents() * denominator(price.value()) * pow10(decimals);
  BigInt den = numerator(price.value()) * 100;
  return div_ceil(num, den);
}

}  // namespace posopen

#endif  // POSOPEN_AMOUNTS_HPP
