#ifndef TFB_RATIONAL_HPP
#define TFB_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace tfb {

/// Error raised on contract violations anywhere in the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Internal invariant failure (indicates a bug, never expected on valid input).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

#define TFB_CHECK(cond, msg)                        \
  do {                                              \
    if (!(cond)) throw ::tfb::InternalError((msg)); \
  } while (0)

/// Exact rational number, always kept in lowest terms with positive
/// denominator. All arithmetic in the library goes through this type;
/// there is no floating point anywhere.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<long>(n)) {}     // NOLINT(google-explicit-constructor)
  Rational(int n) : v_(static_cast<long>(n)) {}      // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  /// Parses "p", "p/q" or "-p/q". Denominator must be a positive integer.
  static Rational parse(const std::string& text);

  /// Canonical "p/q" form with explicit denominator, e.g. "8/1", "-1/2".
  std::string fraction_str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  /// Short form: "p" when integral, else "p/q".
  std::string str() const {
    return v_.get_den() == 1 ? v_.get_num().get_str() : fraction_str();
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// Numerator as decimal string (exact, arbitrary precision).
  std::string num_str() const { return v_.get_num().get_str(); }
  /// Denominator as decimal string (always positive).
  std::string den_str() const { return v_.get_den().get_str(); }

  /// Value as long; throws unless integral and in range.
  long to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
      throw Error("rational does not fit a long: " + str());
    return v_.get_num().get_si();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.v_ = -a.v_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace tfb

#endif  // TFB_RATIONAL_HPP
