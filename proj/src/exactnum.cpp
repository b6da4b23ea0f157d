#include "griesskit/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace griesskit {

bool is_squarefree(std::int64_t d) {
  if (d < 1) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

QF::QF(Rational rat, Rational rad, std::int64_t disc)
    : rat_(std::move(rat)), rad_(std::move(rad)), disc_(disc) {
  if (!is_squarefree(disc_)) {
    throw ArithmeticError("disc must be a squarefree positive integer, got " + std::to_string(disc_));
  }
  if (disc_ == 1 && sgn(rad_) != 0) {
    throw ArithmeticError("disc 1 requires a zero radical part");
  }
  normalize();
}

void QF::normalize() {
  rat_.canonicalize();
  rad_.canonicalize();
  if (sgn(rad_) == 0) disc_ = 1;
}

std::int64_t QF::common_disc(const QF& a, const QF& b) {
  if (a.disc_ == 1) return b.disc_;
  if (b.disc_ == 1 || a.disc_ == b.disc_) return a.disc_;
  throw ArithmeticError("disc mismatch: sqrt(" + std::to_string(a.disc_) + ") vs sqrt(" +
                        std::to_string(b.disc_) + ")");
}

QF& QF::operator+=(const QF& o) {
  const auto d = common_disc(*this, o);
  rat_ += o.rat_;
  rad_ += o.rad_;
  disc_ = d;
  normalize();
  return *this;
}

QF& QF::operator-=(const QF& o) {
  const auto d = common_disc(*this, o);
  rat_ -= o.rat_;
  rad_ -= o.rad_;
  disc_ = d;
  normalize();
  return *this;
}

QF& QF::operator*=(const QF& o) {
  const auto d = common_disc(*this, o);
  Rational r = rat_ * o.rat_ + rad_ * o.rad_ * Rational(d);
  Rational s = rat_ * o.rad_ + rad_ * o.rat_;
  rat_ = std::move(r);
  rad_ = std::move(s);
  disc_ = d;
  normalize();
  return *this;
}

QF& QF::operator/=(const QF& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  const auto d = common_disc(*this, o);
  const Rational n = o.norm();
  QF num = *this * o.conjugate();
  rat_ = num.rat_ / n;
  rad_ = num.rad_ / n;
  disc_ = d;
  normalize();
  return *this;
}

Rational QF::norm() const {
  Rational n = rat_ * rat_ - rad_ * rad_ * Rational(disc_);
  n.canonicalize();
  return n;
}

int QF::sign() const {
  const int sa = sgn(rat_);
  const int sb = sgn(rad_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  const Rational a2 = rat_ * rat_;
  const Rational b2d = rad_ * rad_ * Rational(disc_);
  return a2 > b2d ? sa : sb;
}

mpz_class QF::height() const {
  mpz_class h = abs(rat_.get_num());
  for (const mpz_class* z : {&rat_.get_den(), &rad_.get_num(), &rad_.get_den()}) {
    mpz_class a = abs(*z);
    if (a > h) h = a;
  }
  return h;
}

namespace {

HighReal to_high(const Rational& q) {
  return HighReal(q.get_num().get_str()) / HighReal(q.get_den().get_str());
}

}  // namespace

HighReal QF::to_high() const {
  HighReal v = griesskit::to_high(rat_);
  if (disc_ != 1) v += griesskit::to_high(rad_) * boost::multiprecision::sqrt(HighReal(disc_));
  return v;
}

double QF::to_double() const { return static_cast<double>(to_high()); }

QF qf_arith(ArithOp op, const QF& x, const QF& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw ArithmeticError("unknown arithmetic op");
}

QFParts qf_parts(const QF& x) { return {x.rat(), x.rad()}; }

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const QF& x) {
  std::string out = to_string(x.rat());
  if (!x.is_rational()) {
    out += "+" + to_string(x.rad()) + "*sqrt(" + std::to_string(x.disc()) + ")";
  }
  return out;
}

std::string to_display(const QF& x) {
  if (x.is_rational()) return x.rat().get_str();
  std::string s = sgn(x.rat()) ? x.rat().get_str() : "";
  s += sgn(x.rad()) < 0 ? "-" : (s.empty() ? "" : "+");
  const Rational a = abs(x.rad());
  if (a != 1) s += a.get_str() + "*";
  return s + "sqrt(" + std::to_string(x.disc()) + ")";
}

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return ParseError("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') ++i;
  const auto slash = text.find('/');
  const auto num_end = slash == std::string_view::npos ? text.size() : slash;
  if (num_end <= i) throw fail();
  for (std::size_t k = i; k < num_end; ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) throw fail();
  }
  std::string num(text.substr(text[0] == '+' ? 1 : 0, num_end - (text[0] == '+' ? 1 : 0)));
  std::string den = "1";
  if (slash != std::string_view::npos) {
    den = std::string(text.substr(slash + 1));
    if (den.empty()) throw fail();
    for (char c : den) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
    }
  }
  mpz_class d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

QF parse_qf(std::string_view text) {
  static constexpr std::string_view kSqrt = "*sqrt(";
  const auto at = text.find(kSqrt);
  if (at == std::string_view::npos) return QF(parse_rational(text));
  if (text.back() != ')') throw ParseError("malformed quadratic value '" + std::string(text) + "'");
  const auto disc_text = text.substr(at + kSqrt.size(), text.size() - at - kSqrt.size() - 1);
  std::int64_t disc = 0;
  for (char c : disc_text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed disc in '" + std::string(text) + "'");
    }
    disc = disc * 10 + (c - '0');
  }
  if (disc_text.empty()) throw ParseError("missing disc in '" + std::string(text) + "'");
  const auto head = text.substr(0, at);
  // The radical coefficient starts after the last '+' that is not a leading sign.
  const auto plus = head.rfind('+');
  Rational rat(0);
  std::string_view rad_text = head;
  if (plus != std::string_view::npos && plus > 0) {
    rat = parse_rational(head.substr(0, plus));
    rad_text = head.substr(plus + 1);
  }
  try {
    return QF(rat, parse_rational(rad_text), disc);
  } catch (const ArithmeticError& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

std::string to_decimal(const HighReal& x, int digits) {
  if (x == 0) return "0";
  return x.str(digits, std::ios_base::fmtflags(0));
}

std::string to_decimal(const QF& x, int digits) { return to_decimal(x.to_high(), digits); }

QF qf_identify(const HighReal& v, std::span<const std::int64_t> discs, const IdentifyOptions& opts) {
  if (opts.tol <= 0) throw std::invalid_argument("identification tolerance must be positive");
  if (opts.height < 1) throw std::invalid_argument("identification height must be positive");
  std::vector<std::int64_t> ds{1};
  for (auto d : discs) {
    if (!is_squarefree(d)) throw std::invalid_argument("candidate disc must be squarefree: " + std::to_string(d));
    if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
  }
  const long double vl = static_cast<long double>(v);
  const long double tl = static_cast<long double>(opts.tol);
  const long H = opts.height;

  auto try_candidate = [&](std::int64_t d, long double sq, long D, long B, std::vector<QF>& hits) {
    const long double target = static_cast<long double>(D) * vl - static_cast<long double>(B) * sq;
    const long double Af = std::nearbyint(target);
    if (std::fabs(Af) > static_cast<long double>(H)) return;
    // Coarse filter in long double, exact confirmation in HighReal.
    if (std::fabs(Af - target) > tl * static_cast<long double>(D) * 1.5L + 1e-15L) return;
    const long A = static_cast<long>(Af);
    if (std::gcd(std::gcd(std::labs(A), std::labs(B)), D) != 1) return;
    QF cand = d == 1 ? QF(Rational(A, D)) : QF(Rational(A, D), Rational(B, D), d);
    if (boost::multiprecision::abs(cand.to_high() - v) > opts.tol) return;
    if (std::find(hits.begin(), hits.end(), cand) == hits.end()) hits.push_back(std::move(cand));
  };

  std::vector<long double> roots;
  for (auto d : ds) roots.push_back(std::sqrt(static_cast<long double>(d)));

  for (long h = 1; h <= H; ++h) {
    std::vector<QF> hits;
    for (std::size_t k = 0; k < ds.size(); ++k) {
      const auto d = ds[k];
      if (d == 1) {
        try_candidate(1, 0.0L, h, 0, hits);
        continue;
      }
      for (long B = -h; B <= h; ++B) {
        if (B != 0) try_candidate(d, roots[k], h, B, hits);
      }
      for (long D = 1; D < h; ++D) {
        try_candidate(d, roots[k], D, h, hits);
        try_candidate(d, roots[k], D, -h, hits);
      }
    }
    if (hits.size() == 1) return hits.front();
    if (hits.size() > 1) {
      std::string msg = "ambiguous identification of " + to_decimal(v) + ":";
      for (const auto& q : hits) msg += " " + to_string(q);
      throw IdentifyError(IdentifyError::Kind::Ambiguous, msg);
    }
  }
  throw IdentifyError(IdentifyError::Kind::NoMatch,
                      "no quadratic value of height <= " + std::to_string(H) + " within tolerance of " + to_decimal(v));
}

QFMatrix::QFMatrix(std::size_t rows, std::size_t cols, std::vector<QF> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count does not match shape");
  (void)disc();
}

QFMatrix QFMatrix::identity(std::size_t n) {
  QFMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = QF(1);
  return m;
}

std::int64_t QFMatrix::disc() const {
  std::int64_t d = 1;
  for (const auto& x : data_) {
    if (x.disc() == 1) continue;
    if (d == 1) {
      d = x.disc();
    } else if (d != x.disc()) {
      throw ArithmeticError("matrix entries mix sqrt(" + std::to_string(d) + ") and sqrt(" +
                            std::to_string(x.disc()) + ")");
    }
  }
  return d;
}

QFMatrix QFMatrix::transpose() const {
  QFMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<QF> QFMatrix::apply(std::span<const QF> v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length does not match matrix columns");
  std::vector<QF> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    QF acc;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!v[c].is_zero() && !(*this)(r, c).is_zero()) acc += (*this)(r, c) * v[c];
    }
    out[r] = std::move(acc);
  }
  return out;
}

QFMatrix operator*(const QFMatrix& a, const QFMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  QFMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
      }
    }
  return out;
}

QFMatrix operator+(const QFMatrix& a, const QFMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  QFMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

QFMatrix operator-(const QFMatrix& a, const QFMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  QFMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

QFMatrix vstack(std::span<const QFMatrix> blocks) {
  if (blocks.empty()) return {};
  const auto cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += b.rows();
  }
  QFMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return out;
}

Reduction mat_reduce(const QFMatrix& m) {
  (void)m.disc();
  QFMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  QF det_acc(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::optional<std::size_t> best;
    mpz_class best_h;
    for (std::size_t i = r; i < rows; ++i) {
      if (a(i, c).is_zero()) continue;
      mpz_class h = a(i, c).height();
      if (!best || h < best_h) {
        best = i;
        best_h = std::move(h);
      }
    }
    if (!best) continue;
    if (*best != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(r, k), a(*best, k));
      det_acc = -det_acc;
    }
    const QF piv = a(r, c);
    det_acc *= piv;
    for (std::size_t k = c; k < cols; ++k) a(r, k) /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const QF f = a(i, c);
      for (std::size_t k = c; k < cols; ++k) {
        if (!a(r, k).is_zero()) a(i, k) -= f * a(r, k);
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }

  Reduction out;
  out.rank = r;
  if (m.square()) out.det = (r == rows) ? det_acc : QF(0);

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<QF> v(cols);
    v[f] = QF(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, f);
    const auto lead = std::find_if(v.begin(), v.end(), [](const QF& x) { return !x.is_zero(); });
    const QF scale = *lead;
    for (auto& x : v) x /= scale;
    out.kernel.push_back(std::move(v));
  }
  return out;
}

}  // namespace griesskit
