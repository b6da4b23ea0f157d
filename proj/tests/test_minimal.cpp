#include "griesskit/minimal.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace griesskit;
using namespace griesskit::minimal;

namespace {

const MinimalModel kIsing(3, 4);
const MinimalModel k1112(11, 12);
const MinimalModel k78(7, 8);

Rational r(long n, long d = 1) { return Rational(n, d); }

ModuleLabel parse(const std::vector<MinimalModel>& models, const char* text) {
  return parse_module_label(models, text);
}

}  // namespace

TEST(Model, Validation) {
  EXPECT_THROW(MinimalModel(4, 6), LabelError);
  EXPECT_THROW(MinimalModel(4, 3), LabelError);
  EXPECT_EQ(kIsing.central_charge(), r(1, 2));
  EXPECT_EQ(k1112.central_charge(), r(21, 22));
  EXPECT_EQ(k78.central_charge(), r(25, 28));
}

TEST(Model, Identify) {
  EXPECT_EQ(identify_model(QF::frac(1, 2)), kIsing);
  EXPECT_EQ(identify_model(QF::frac(21, 22)), k1112);
  EXPECT_EQ(identify_model(QF::frac(25, 28)), k78);
  EXPECT_THROW(identify_model(QF::frac(2, 1)), LabelError);
}

TEST(Kac, Lookup) {
  const auto a = kac_lookup(k1112, r(8));
  EXPECT_EQ(a.r, 10);
  EXPECT_EQ(a.s, 5);
  EXPECT_TRUE(kac_lookup(k1112, r(0)).is_vacuum());
  const auto b = kac_lookup(k78, r(57, 32));
  EXPECT_EQ(b.r, 6);
  EXPECT_EQ(b.s, 4);
  EXPECT_THROW(kac_lookup(k78, r(1, 3)), LabelError);
}

TEST(Kac, SymmetryAndTableSize) {
  for (const auto& m : {kIsing, k78, k1112}) {
    for (int rr = 1; rr < m.p; ++rr)
      for (int s = 1; s < m.q; ++s) {
        EXPECT_EQ(kac_weight(m, rr, s), kac_weight(m, m.p - rr, m.q - s));
        EXPECT_EQ(KacLabel::make(m, rr, s), KacLabel::make(m, m.p - rr, m.q - s));
      }
    EXPECT_EQ(kac_table(m).size(), static_cast<std::size_t>((m.p - 1) * (m.q - 1) / 2));
  }
  EXPECT_THROW(KacLabel::make(kIsing, 3, 1), LabelError);
}

TEST(Fusion, SingleFactor) {
  const auto x = kac_lookup(kIsing, r(1, 16));
  const auto f = fuse(x, x);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].h(), r(0));
  EXPECT_EQ(f[1].h(), r(1, 2));

  const auto g = fuse(kac_lookup(k1112, r(45, 2)), kac_lookup(k1112, r(31, 16)));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].h(), r(175, 16));

  const auto h = fuse(kac_lookup(k78, r(15, 2)), kac_lookup(k78, r(5, 32)));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].h(), r(165, 32));
}

TEST(Fusion, Tensor) {
  const std::vector<MinimalModel> c3m{kIsing, k1112};
  const auto f = fuse_tensor(parse(c3m, "[1/2,45/2]"), parse(c3m, "[1/16,31/16]"));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0], parse(c3m, "[1/16,175/16]"));

  const std::vector<MinimalModel> a5m{kIsing, k78, k78};
  const auto g = fuse_tensor(parse(a5m, "[1/2,0,15/2]"), parse(a5m, "[1/2,3/4,3/4]"));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], parse(a5m, "[0,3/4,13/4]"));

  const auto h = fuse_tensor(parse(a5m, "[1/2,15/2,0]"), parse(a5m, "[1/16,5/32,57/32]"));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0], parse(a5m, "[1/16,165/32,57/32]"));
}

TEST(Fusion, VacuumUnitAndCommutativity) {
  for (const auto& m : {kIsing, k78, k1112}) {
    const auto& tab = kac_table(m);
    const auto vac = KacLabel::vacuum(m);
    for (const auto& x : tab) {
      EXPECT_EQ(fuse(vac, x), std::vector<KacLabel>{x});
      for (const auto& y : tab) EXPECT_EQ(fuse(x, y), fuse(y, x));
    }
  }
}

TEST(Labels, ParseAndPrint) {
  const std::vector<MinimalModel> a5m{kIsing, k78, k78};
  const auto x = parse(a5m, "[1/16,5/32,57/32]");
  EXPECT_EQ(to_string(x), "[1/16,5/32,57/32]");
  EXPECT_EQ(x.weight(), r(1, 16) + r(5, 32) + r(57, 32));
  EXPECT_TRUE(ModuleLabel::vacuum(a5m).is_vacuum());
  EXPECT_THROW(parse(a5m, "[1/16,5/32]"), ParseError);
  EXPECT_THROW(parse(a5m, "[1/3,0,0]"), LabelError);
}

TEST(QDim, Examples) {
  const std::vector<MinimalModel> c3m{kIsing, k1112};
  const std::vector<MinimalModel> a5m{kIsing, k78, k78};
  EXPECT_EQ(*qdim(ModuleLabel::vacuum(a5m)).exact, QF(1));
  EXPECT_EQ(*qdim(parse(c3m, "[0,8]")).exact, QF(Rational(2), Rational(1), 3));
  EXPECT_EQ(*qdim(parse(a5m, "[1/16,5/32,57/32]")).exact, QF(Rational(4), Rational(2), 2));
  EXPECT_EQ(*qdim(parse(a5m, "[0,3/4,13/4]")).exact, QF(Rational(3), Rational(2), 2));
  EXPECT_EQ(*qdim(parse(c3m, "[1/16,31/16]")).exact, QF(Rational(3), Rational(1), 3));
  EXPECT_EQ(*qdim(parse(c3m, "[1/2,45/2]")).exact, QF(1));
}

TEST(QDim, NumericAgreesWithExact) {
  const std::vector<MinimalModel> c3m{kIsing, k1112};
  const auto d = qdim(parse(c3m, "[0,8]"));
  ASSERT_TRUE(d.exact.has_value());
  EXPECT_LT(static_cast<double>(boost::multiprecision::abs(d.numeric - d.exact->to_high())), 1e-9);
  EXPECT_EQ(d.precision_bits, 64);
}

TEST(QDim, UnidentifiedReportsNote) {
  // Weights of M(4,5) need sqrt(5), which is not among the default candidates.
  const MinimalModel m45(4, 5);
  QDimOptions opts;
  opts.identify.height = 20;
  const auto d = qdim(kac_lookup(m45, r(3, 5)), opts);
  EXPECT_FALSE(d.exact.has_value());
  EXPECT_FALSE(d.note.empty());
  EXPECT_EQ(d.precision_bits, 256);
}

TEST(SimpleCurrents, Examples) {
  const std::vector<MinimalModel> c3m{kIsing, k1112};
  const std::vector<MinimalModel> a5m{kIsing, k78, k78};
  EXPECT_TRUE(is_simple_current(parse(c3m, "[1/2,45/2]")));
  EXPECT_TRUE(is_simple_current(parse(a5m, "[0,15/2,15/2]")));
  EXPECT_TRUE(is_simple_current(parse(a5m, "[1/2,0,15/2]")));
  EXPECT_FALSE(is_simple_current(parse(c3m, "[0,8]")));
}

TEST(Verlinde, RandomPairs) {
  std::mt19937 rng(2024);
  for (const auto& m : {kIsing, k78, k1112}) {
    const auto& tab = kac_table(m);
    std::uniform_int_distribution<std::size_t> pick(0, tab.size() - 1);
    for (int i = 0; i < 50; ++i) {
      const auto& x = tab[pick(rng)];
      const auto& y = tab[pick(rng)];
      HighReal sum = 0;
      for (const auto& z : fuse(x, y)) sum += qdim_numeric(z);
      const HighReal diff = qdim_numeric(x) * qdim_numeric(y) - sum;
      EXPECT_LT(static_cast<double>(boost::multiprecision::abs(diff)), 1e-9);
    }
  }
}
