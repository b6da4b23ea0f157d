#include "griesskit/exactnum.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace griesskit;

namespace {

QF qf(long a, long b, std::int64_t d) { return QF(Rational(a), Rational(b), d); }

QF random_qf(std::mt19937& rng, std::int64_t d) {
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 12);
  return QF(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), d);
}

}  // namespace

TEST(QFArith, DifferenceOfSquares) {
  EXPECT_EQ(qf_arith(ArithOp::Mul, qf(1, 1, 5), qf(1, -1, 5)), QF(-4));
}

TEST(QFArith, AddSameField) {
  EXPECT_EQ(qf_arith(ArithOp::Add, qf(3, 2, 2), qf(4, 2, 2)), qf(7, 4, 2));
}

TEST(QFArith, ConjugateRootsProduct) {
  const QF k1(Rational(124, 19), Rational(56, 19), 5);
  EXPECT_EQ(k1 * k1.conjugate(), QF::frac(-304, 361));
}

TEST(QFArith, MixedFieldsRejected) {
  EXPECT_THROW(QF::sqrt_of(2) + QF::sqrt_of(3), ArithmeticError);
  EXPECT_THROW(QF(1) / QF(0), ArithmeticError);
  EXPECT_THROW(QF(Rational(1), Rational(1), 8), ArithmeticError);
}

TEST(QFArith, RationalMixesWithAnyField) {
  EXPECT_EQ(QF(2) + QF::sqrt_of(3), qf(2, 1, 3));
  EXPECT_EQ(QF::sqrt_of(2) * QF::sqrt_of(2), QF(2));
  EXPECT_TRUE((QF::sqrt_of(5) - QF::sqrt_of(5)).is_rational());
}

TEST(QFArith, ExactSign) {
  EXPECT_EQ(qf(3, -2, 2).sign(), 1);   // 3 - 2.828
  EXPECT_EQ(qf(2, -2, 2).sign(), -1);
  EXPECT_EQ(qf(-29, 13, 5).sign(), 1);  // 13*sqrt(5) is just above 29
  EXPECT_EQ(qf(-29, -13, 5).sign(), -1);
  EXPECT_EQ(QF().sign(), 0);
}

TEST(QFArith, InverseProperty) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t d = i % 2 ? 5 : 2;
    const QF x = random_qf(rng, d);
    if (x.is_zero()) continue;
    EXPECT_EQ(x * (QF(1) / x), QF(1));
    EXPECT_EQ((x - x), QF(0));
  }
}

TEST(QFArith, FieldAxiomsOnRandomTriples) {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const QF a = random_qf(rng, 3), b = random_qf(rng, 3), c = random_qf(rng, 3);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
  }
}

TEST(QFParts, Examples) {
  auto p = qf_parts(qf(3, 2, 2));
  EXPECT_EQ(p.rat, Rational(3));
  EXPECT_EQ(p.rad, Rational(2));
  p = qf_parts(QF::frac(7, 4));
  EXPECT_EQ(p.rat, Rational(7, 4));
  EXPECT_EQ(p.rad, Rational(0));
  p = qf_parts(QF(Rational(124, 19), Rational(56, 19), 5));
  EXPECT_EQ(p.rat, Rational(124, 19));
  EXPECT_EQ(p.rad, Rational(56, 19));
}

TEST(QFParts, RoundTrip) {
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    const QF x = random_qf(rng, 7);
    const auto p = qf_parts(x);
    EXPECT_EQ(QF(p.rat, p.rad, x.is_rational() ? 1 : x.disc()), x);
  }
}

TEST(QFSerialization, RoundTrip) {
  EXPECT_EQ(to_string(qf(2, 1, 3)), "2/1+1/1*sqrt(3)");
  EXPECT_EQ(to_string(QF::frac(-35, 8192)), "-35/8192");
  EXPECT_EQ(to_display(QF(8)), "8");
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    const QF x = random_qf(rng, 2);
    EXPECT_EQ(parse_qf(to_string(x)), x);
  }
  EXPECT_EQ(parse_qf("-29/2+13/2*sqrt(5)"), QF(Rational(-29, 2), Rational(13, 2), 5));
  EXPECT_EQ(parse_qf("-1/2*sqrt(2)"), QF(Rational(0), Rational(-1, 2), 2));
}

TEST(QFSerialization, Malformed) {
  EXPECT_THROW(parse_qf("1/0"), ParseError);
  EXPECT_THROW(parse_qf("abc"), ParseError);
  EXPECT_THROW(parse_qf("1+1*sqrt(4)"), ParseError);
  EXPECT_THROW(parse_qf("1+1*sqrt(x)"), ParseError);
}

TEST(QFIdentify, Examples) {
  const std::vector<std::int64_t> d2{2}, d3{3};
  EXPECT_EQ(qf_identify(HighReal("1.41421356237"), d2), QF::sqrt_of(2));
  EXPECT_EQ(qf_identify(HighReal("3.73205080757"), d3), qf(2, 1, 3));
  EXPECT_EQ(qf_identify(HighReal("6.82842712"), d2, {.height = 10000, .tol = HighReal("1e-8")}), qf(4, 2, 2));
}

TEST(QFIdentify, ExactInputsRecovered) {
  const std::vector<std::int64_t> discs{2, 3};
  for (const QF& x : {qf(3, 2, 2), qf(3, 1, 3), QF::frac(1, 1), QF::frac(-7, 3), qf(4, 2, 2)}) {
    EXPECT_EQ(qf_identify(x.to_high(), discs), x);
  }
}

TEST(QFIdentify, NoMatchAndBadOptions) {
  const std::vector<std::int64_t> d2{2};
  try {
    qf_identify(HighReal("3.14159265358979323846"), d2, {.height = 50, .tol = HighReal("1e-12")});
    FAIL() << "expected IdentifyError";
  } catch (const IdentifyError& e) {
    EXPECT_EQ(e.kind(), IdentifyError::Kind::NoMatch);
  }
  EXPECT_THROW(qf_identify(HighReal(1), d2, {.height = 10, .tol = HighReal(0)}), std::invalid_argument);
  const std::vector<std::int64_t> bad{4};
  EXPECT_THROW(qf_identify(HighReal(1), bad), std::invalid_argument);
}

TEST(MatReduce, Identity) {
  const auto r = mat_reduce(QFMatrix::identity(2));
  EXPECT_EQ(r.rank, 2u);
  ASSERT_TRUE(r.det.has_value());
  EXPECT_EQ(*r.det, QF(1));
  EXPECT_TRUE(r.kernel.empty());
}

TEST(MatReduce, EmptyMatrix) {
  const auto r = mat_reduce(QFMatrix());
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(*r.det, QF(1));
}

TEST(MatReduce, EqualRowsGiveZeroDet) {
  QFMatrix m(3, 3, {QF(1), QF::sqrt_of(2), QF(3), QF(1), QF::sqrt_of(2), QF(3), QF(0), QF(1), QF::frac(1, 2)});
  const auto r = mat_reduce(m);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(*r.det, QF(0));
}

TEST(MatReduce, RankNullityAndKernel) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 2 + trial % 4, cols = 3 + trial % 3;
    QFMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_qf(rng, 5);
    // Force a dependency so the kernel is not always trivial.
    for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * QF::frac(3, 2) - m(1, j);
    const auto r = mat_reduce(m);
    EXPECT_EQ(r.rank + r.kernel.size(), cols);
    for (const auto& k : r.kernel) {
      for (const QF& x : m.apply(k)) EXPECT_TRUE(x.is_zero());
    }
  }
}

TEST(MatReduce, DeterminantMultiplicative) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    QFMatrix a(3, 3), b(3, 3);
    for (std::size_t i = 0; i < 9; ++i) {
      a(i / 3, i % 3) = random_qf(rng, 2);
      b(i / 3, i % 3) = random_qf(rng, 2);
    }
    EXPECT_EQ(*mat_reduce(a * b).det, *mat_reduce(a).det * *mat_reduce(b).det);
  }
}

TEST(MatReduce, SevenBySevenSpanningGram) {
  const QF d = QF::frac(1, 4), p = QF::frac(3, 512), ia = QF::frac(-35, 8192);
  const QF aa = QF::frac(525, 262144), ab = QF::frac(-175, 131072);
  QFMatrix m(7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      if (i < 5 && j < 5) m(i, j) = i == j ? d : p;
      else if (i < 5 || j < 5) m(i, j) = ia;
      else m(i, j) = i == j ? aa : ab;
    }
  const auto r = mat_reduce(m);
  EXPECT_EQ(r.rank, 6u);
  ASSERT_EQ(r.kernel.size(), 1u);
  const std::vector<QF> expect{QF(1), QF(1), QF(1), QF(1), QF(1), QF(32), QF(32)};
  EXPECT_EQ(r.kernel[0], expect);
}

TEST(MatReduce, MixedDiscRejected) {
  EXPECT_THROW(QFMatrix(1, 2, std::vector<QF>{QF::sqrt_of(2), QF::sqrt_of(3)}), ArithmeticError);
}
