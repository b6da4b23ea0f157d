#pragma once

// Exact arithmetic in Q and Q(sqrt d), plus dense exact linear algebra.
//
// A QF value is a + b*sqrt(d) with a, b rational and d a squarefree positive
// integer. Elements with b == 0 are normalized to d == 1 so that a purely
// rational value mixes freely with any quadratic field. Two elements with
// different d > 1 cannot be combined.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace griesskit {

using Rational = mpq_class;

/// Working real type for numeric identification (256 significant bits).
using HighReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IdentifyError : public std::runtime_error {
 public:
  enum class Kind { NoMatch, Ambiguous };
  IdentifyError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

bool is_squarefree(std::int64_t d);

class QF {
 public:
  QF() : rat_(0), rad_(0), disc_(1) {}
  QF(long v) : rat_(v), rad_(0), disc_(1) {}  // NOLINT(google-explicit-constructor)
  QF(const Rational& v) : rat_(v), rad_(0), disc_(1) { rat_.canonicalize(); }  // NOLINT
  QF(Rational rat, Rational rad, std::int64_t disc);

  static QF frac(long num, long den) { return QF(Rational(num, den)); }
  static QF sqrt_of(std::int64_t disc) { return QF(Rational(0), Rational(1), disc); }

  const Rational& rat() const noexcept { return rat_; }
  const Rational& rad() const noexcept { return rad_; }
  std::int64_t disc() const noexcept { return disc_; }

  bool is_zero() const { return sgn(rat_) == 0 && sgn(rad_) == 0; }
  bool is_rational() const { return disc_ == 1; }

  /// Exact sign of a + b*sqrt(d).
  int sign() const;
  /// Galois conjugate a - b*sqrt(d).
  QF conjugate() const { return QF(rat_, -rad_, disc_); }
  /// Field norm a^2 - d b^2.
  Rational norm() const;
  /// Largest absolute numerator or denominator among both parts.
  mpz_class height() const;

  double to_double() const;
  HighReal to_high() const;

  QF operator-() const { return QF(-rat_, -rad_, disc_); }
  QF& operator+=(const QF& o);
  QF& operator-=(const QF& o);
  QF& operator*=(const QF& o);
  QF& operator/=(const QF& o);

  friend QF operator+(QF a, const QF& b) { return a += b; }
  friend QF operator-(QF a, const QF& b) { return a -= b; }
  friend QF operator*(QF a, const QF& b) { return a *= b; }
  friend QF operator/(QF a, const QF& b) { return a /= b; }
  friend bool operator==(const QF& a, const QF& b) {
    return a.disc_ == b.disc_ && a.rat_ == b.rat_ && a.rad_ == b.rad_;
  }
  friend bool operator!=(const QF& a, const QF& b) { return !(a == b); }

 private:
  void normalize();
  static std::int64_t common_disc(const QF& a, const QF& b);

  Rational rat_;
  Rational rad_;
  std::int64_t disc_;
};

enum class ArithOp { Add, Sub, Mul, Div };

QF qf_arith(ArithOp op, const QF& x, const QF& y);

struct QFParts {
  Rational rat;
  Rational rad;
};
QFParts qf_parts(const QF& x);

/// Serialization: "a/b" for rationals, "a/b+c/d*sqrt(n)" otherwise.
std::string to_string(const QF& x);
std::string to_string(const Rational& x);
QF parse_qf(std::string_view text);
/// Compact human-readable form: "8", "-3/70+1/35*sqrt(5)", "sqrt(2)".
std::string to_display(const QF& x);
Rational parse_rational(std::string_view text);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const QF& x, int digits = 12);
std::string to_decimal(const HighReal& x, int digits = 20);

struct IdentifyOptions {
  long height = 10000;
  HighReal tol = HighReal("1e-9");
};

/// Finds the smallest-height a + b*sqrt(d) (d drawn from `discs`, plus the
/// purely rational candidates) within tol of v. Height is measured on the
/// common-denominator form (A + B*sqrt(d))/D as max(D, |B|), with |A| bounded
/// by the same height limit. Throws IdentifyError when nothing matches or two
/// distinct values match at the minimal height.
QF qf_identify(const HighReal& v, std::span<const std::int64_t> discs, const IdentifyOptions& opts = {});

class QFMatrix {
 public:
  QFMatrix() = default;
  QFMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QFMatrix(std::size_t rows, std::size_t cols, std::vector<QF> entries);

  static QFMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  QF& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const QF& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const QF> entries() const noexcept { return data_; }

  /// The shared disc of all entries (1 when every entry is rational).
  std::int64_t disc() const;

  QFMatrix transpose() const;
  std::vector<QF> apply(std::span<const QF> v) const;

  friend QFMatrix operator*(const QFMatrix& a, const QFMatrix& b);
  friend QFMatrix operator-(const QFMatrix& a, const QFMatrix& b);
  friend QFMatrix operator+(const QFMatrix& a, const QFMatrix& b);
  friend bool operator==(const QFMatrix& a, const QFMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<QF> data_;
};

struct Reduction {
  std::size_t rank = 0;
  std::optional<QF> det;                  // square matrices only
  std::vector<std::vector<QF>> kernel;    // right null space, first nonzero coordinate 1
};

/// Exact Gaussian elimination. Pivots are chosen per column as the entry of
/// smallest height. A 0x0 matrix has rank 0 and determinant 1.
Reduction mat_reduce(const QFMatrix& m);

/// Row-stacks matrices with equal column counts.
QFMatrix vstack(std::span<const QFMatrix> blocks);

}  // namespace griesskit
