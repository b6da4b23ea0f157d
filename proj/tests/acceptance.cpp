// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "griesskit/decomp.hpp"
#include "griesskit/exactnum.hpp"
#include "griesskit/griess.hpp"
#include "griesskit/minimal.hpp"
#include "griesskit/modecalc.hpp"

#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace griesskit;
using griess::GriessElement;

namespace {

QF q(long n, long d = 1) { return QF::frac(n, d); }
QF root5(long a, long b, long den) { return QF(Rational(a, den), Rational(b, den), 5); }
QF sq(long a, long b, std::int64_t d) { return QF(Rational(a), Rational(b), d); }

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (got == want) {
      expect(true, what);
      return;
    }
    std::ostringstream ss;
    ss << what << " (got " << show(got) << ", want " << show(want) << ")";
    expect(false, ss.str());
  }
  std::size_t count() const { return count_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  static std::string show(const QF& x) { return to_string(x); }
  static std::string show(const GriessElement& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? ", " : "") + to_display(x.coords[i]);
    return s + ")";
  }
  template <class T>
  static std::string show(const T& x) {
    if constexpr (requires(std::ostream& os) { os << x; }) {
      std::ostringstream ss;
      ss << x;
      return ss.str();
    } else {
      return "<value>";
    }
  }

  std::size_t count_ = 0;
  std::vector<std::string> failures_;
};

const griess::CaseTable& a5() {
  static const griess::CaseTable t = griess::standard_case("a5");
  return t;
}

const griess::CaseTable& c3() {
  static const griess::CaseTable t = griess::standard_case("c3");
  return t;
}

struct A5 {
  GriessElement e, E1, E2, f, F1, al, u, v, a, ut, vt;
};

const A5& a5v() {
  static const A5 x = [] {
    const auto& t = a5();
    A5 x{t["e"], t["e^tf"], t["e^tfte"], t["f"], t["f^te"], t["alpha(e,f)"], {}, {}, {}, {}, {}};
    x.u = q(-1, 8) * x.e + x.f + x.F1 - q(32, 7) * x.al;
    x.v = q(1, 32) * x.e + x.E1 + x.E2 + q(32, 7) * x.al;
    x.a = x.e + q(2) * x.f + q(2) * x.F1 + q(64) * x.al;
    const QF k1 = root5(124, 56, 19), k2 = root5(124, -56, 19);
    x.ut = (q(112) / (q(105) * k1 + q(140))) * (x.u + k1 * x.v);
    x.vt = (q(112) / (q(105) * k2 + q(140))) * (x.u + k2 * x.v);
    return x;
  }();
  return x;
}

void ac1(Check& c) {
  const auto g = griess::a5_spanning_gram(a5().pair().lambda1, *a5().pair().lambda2);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      QF want;
      if (i < 5 && j < 5) want = i == j ? q(1, 4) : q(3, 512);
      else if (i < 5 || j < 5) want = q(-35, 8192);
      else want = i == j ? q(525, 262144) : q(-175, 131072);
      c.equal(g(i, j), want, "A(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  const auto r = mat_reduce(g);
  c.equal(r.rank, std::size_t{6}, "rank");
  c.equal(r.kernel.size(), std::size_t{1}, "kernel dimension");
  if (r.kernel.size() == 1) {
    const std::vector<QF> want{q(1), q(1), q(1), q(1), q(1), q(32), q(32)};
    c.expect(r.kernel[0] == want, "kernel vector (1,1,1,1,1,2^5,2^5)");
  }
}

void ac2(Check& c) {
  const auto& t = a5();
  const auto& x = a5v();
  const auto e0 = griess::eigenspace(x.e, q(0), t);
  c.equal(e0.size(), std::size_t{2}, "dim E^e(0)");
  const auto cu = griess::span_coordinates(e0, x.u), cv = griess::span_coordinates(e0, x.v);
  c.expect(cu && cv, "u, v lie in E^e(0)");
  if (cu && cv) {
    QFMatrix m(2, 2, {(*cu)[0], (*cv)[0], (*cu)[1], (*cv)[1]});
    c.expect(!mat_reduce(m).det->is_zero(), "u, v span E^e(0)");
  }
  const auto e12 = griess::eigenspace(x.e, q(1, 2), t);
  c.equal(e12.size(), std::size_t{1}, "dim E^e(1/2)");
  c.expect(griess::span_coordinates(e12, x.a).has_value(), "a = e+2f+2f^te+2^6 alpha(e,f) spans E^e(1/2)");
  c.equal(griess::multiply(x.e, x.a, t), q(1, 2) * x.a, "e.a = a/2");
  const auto e16 = griess::eigenspace(x.e, q(1, 16), t);
  c.equal(e16.size(), std::size_t{2}, "dim E^e(1/16)");
  const QF l1 = root5(-29, 13, 2), l2 = root5(-29, -13, 2);
  const auto b1 = x.E1 - x.E2, b2 = x.f - x.F1;
  const auto bt1 = b1 + l1 * b2, bt2 = b1 + l2 * b2;
  c.expect(griess::span_coordinates(e16, bt1) && griess::span_coordinates(e16, bt2), "b~1, b~2 in E^e(1/16)");
  c.equal(griess::multiply(x.ut, bt1, t), q(57, 32) * bt1, "u~ b~1 = 57/32 b~1");
  c.equal(griess::multiply(x.ut, bt2, t), q(5, 32) * bt2, "u~ b~2 = 5/32 b~2");
  c.equal(griess::multiply(x.vt, bt1, t), q(5, 32) * bt1, "v~ b~1 = 5/32 b~1");
  c.equal(griess::multiply(x.vt, bt2, t), q(57, 32) * bt2, "v~ b~2 = 57/32 b~2");
}

void ac3(Check& c) {
  const auto& t = a5();
  const auto& x = a5v();
  const auto found = griess::conformal_search(griess::reference_zero_basis(t), t);
  c.expect(found.size() >= 2, "conformal search finds two vectors in E^e(0)");
  if (found.size() >= 2) {
    c.equal(found[0].vector, x.ut, "search returns u~ first");
    c.equal(found[1].vector, x.vt, "search returns v~ second");
    c.equal(found[0].central_charge, q(25, 28), "c(u~)");
    c.equal(found[1].central_charge, q(25, 28), "c(v~)");
  }
  c.equal(griess::multiply(x.ut, x.ut, t), q(2) * x.ut, "u~u~ = 2u~");
  c.equal(griess::multiply(x.vt, x.vt, t), q(2) * x.vt, "v~v~ = 2v~");
  c.expect(griess::multiply(x.ut, x.vt, t).is_zero(), "u~v~ = 0");
  c.equal(griess::inner(x.ut, x.ut, t), q(25, 56), "<u~,u~>");
  c.equal(griess::inner(x.vt, x.vt, t), q(25, 56), "<v~,v~>");
  c.expect(griess::is_conformal(x.e + x.ut + x.vt, t), "e+u~+v~ conformal");

  const auto& s = c3();
  const auto w = q(64, 33) * s["a"];
  const auto cw = griess::conformal_search({s["a"]}, s);
  c.expect(cw.size() == 1 && cw[0].vector == w, "omega~ = (64/33)a");
  if (cw.size() == 1) c.equal(cw[0].central_charge, q(21, 22), "c(omega~)");
  c.expect(griess::is_conformal(s["e"] + w, s), "e+omega~ conformal");
}

void ac4(Check& c) {
  using modecalc::Weight4State;
  const auto& t = c3();
  const auto states = modecalc::c3_independence_states(t);
  const auto cc = Weight4State::pair(t["c"], t["c"]);
  c.equal(modecalc::w4_inner(cc, cc, t), q(1119 * 63, 262144), "<c_{-1}c, c_{-1}c>");
  const auto g = modecalc::w4_gram(states, t);
  c.equal(g.rank, std::size_t{6}, "weight-4 Gram rank");
  c.expect(!g.det.is_zero(), "weight-4 Gram det != 0");
  // States 0, 2, 5 are e_{-3}1, e_{-1}e, c_{-1}c.
  const std::vector<std::tuple<std::size_t, std::size_t, QF>> want{
      {0, 0, q(5, 2)},          {0, 2, q(3, 2)},           {2, 2, q(17, 8)},
      {0, 5, q(3 * 63, 8192)},  {2, 5, q(63 * 33, 131072)}, {5, 5, q(1119 * 63, 262144)}};
  const auto printed = modecalc::printed_c3_matrix();
  for (const auto& [i, j, v] : want) {
    const auto tag = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    c.equal(g.matrix(i, j), v, "recomputed " + tag);
    c.equal(g.matrix(j, i), v, "recomputed symmetric " + tag);
    c.equal(printed(i, j), v, "printed " + tag);
  }
}

void ac5(Check& c) {
  using minimal::MinimalModel;
  const std::vector<MinimalModel> c3m{{3, 4}, {11, 12}};
  const std::vector<MinimalModel> a5m{{3, 4}, {7, 8}, {7, 8}};
  const std::vector<std::tuple<const std::vector<MinimalModel>*, const char*, QF>> cases{
      {&c3m, "[0,8]", sq(2, 1, 3)},           {&c3m, "[1/2,45/2]", q(1)},
      {&c3m, "[1/16,31/16]", sq(3, 1, 3)},    {&a5m, "[0,15/2,15/2]", q(1)},
      {&a5m, "[0,3/4,13/4]", sq(3, 2, 2)},    {&a5m, "[1/16,5/32,57/32]", sq(4, 2, 2)}};
  for (const auto& [models, text, want] : cases) {
    const auto d = minimal::qdim(minimal::parse_module_label(*models, text));
    const auto diff = boost::multiprecision::abs(d.numeric - want.to_high());
    c.expect(diff < HighReal("1e-9"), std::string("numeric qdim ") + text);
    c.expect(d.exact.has_value(), std::string("identified qdim ") + text);
    if (d.exact) c.equal(*d.exact, want, std::string("qdim ") + text);
  }
}

void ac6(Check& c) {
  using minimal::MinimalModel;
  const std::vector<MinimalModel> c3m{{3, 4}, {11, 12}};
  const std::vector<MinimalModel> a5m{{3, 4}, {7, 8}, {7, 8}};
  struct Row {
    const std::vector<MinimalModel>* models;
    const char* x;
    const char* y;
    std::vector<const char*> result;
  };
  const std::vector<Row> rows{
      {&c3m, "[1/2,45/2]", "[1/16,31/16]", {"[1/16,175/16]"}},
      {&c3m, "[1/2,45/2]", "[1/16,175/16]", {"[1/16,31/16]"}},
      {&a5m, "[1/2,0,15/2]", "[1/2,3/4,3/4]", {"[0,3/4,13/4]"}},
      {&a5m, "[1/2,15/2,0]", "[1/2,3/4,3/4]", {"[0,13/4,3/4]"}},
      {&a5m, "[1/2,15/2,15/2]", "[1/2,3/4,3/4]", {"[0,13/4,13/4]"}},
      {&a5m, "[1/2,0,15/2]", "[1/16,57/32,5/32]", {"[1/16,57/32,165/32]"}},
      {&a5m, "[1/2,15/2,0]", "[1/16,5/32,57/32]", {"[1/16,165/32,57/32]"}},
  };
  for (const auto& row : rows) {
    const auto x = minimal::parse_module_label(*row.models, row.x);
    const auto y = minimal::parse_module_label(*row.models, row.y);
    std::vector<minimal::ModuleLabel> want;
    for (const char* r : row.result) want.push_back(minimal::parse_module_label(*row.models, r));
    std::string got_text;
    const auto got = minimal::fuse_tensor(x, y);
    for (const auto& g : got) got_text += minimal::to_string(g) + " ";
    c.expect(got == want, std::string(row.x) + " x " + row.y + " -> " + got_text);
  }
}

void ac7(Check& c) {
  const auto r3 = decomp::verify_theorem("c3");
  c.expect(r3.ok, "c3 verified" + (r3.ok ? std::string() : " (failed at " + r3.failed_stage + ")"));
  c.equal(r3.solutions.size(), std::size_t{1}, "c3 unique solution");
  c.equal(r3.decomposition.size(), std::size_t{6}, "c3 summand count");
  for (const auto& [label, n] : r3.decomposition) c.equal(n, 1L, "c3 multiplicity " + label);

  const auto r5 = decomp::verify_theorem("a5");
  c.expect(r5.ok, "a5 verified" + (r5.ok ? std::string() : " (failed at " + r5.failed_stage + ")"));
  c.equal(r5.solutions.size(), std::size_t{1}, "a5 unique solution");
  c.equal(r5.decomposition.size(), std::size_t{12}, "a5 summand count");
  for (const auto& [label, n] : r5.decomposition) c.equal(n, 1L, "a5 multiplicity " + label);

  const auto forced = decomp::verify_theorem("a5", {.force = {{"n2", 0}}});
  c.expect(!forced.ok && forced.solutions.empty(), "a5 with n2 = 0 has no solution");
}

void ac8(Check& c) {
  for (const griess::CaseTable* t : {&a5(), &c3()}) {
    const auto n = t->dim();
    std::size_t bad_comm = 0, bad_form = 0, bad_auto = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto bi = t->basis_element(i);
      for (std::size_t j = 0; j < n; ++j) {
        const auto bj = t->basis_element(j);
        const auto p = griess::multiply(bi, bj, *t);
        if (p != griess::multiply(bj, bi, *t)) ++bad_comm;
        for (std::size_t k = 0; k < n; ++k) {
          const auto bk = t->basis_element(k);
          if (griess::inner(p, bk, *t) != griess::inner(bj, griess::multiply(bi, bk, *t), *t)) ++bad_form;
        }
        for (const auto& [g, m] : t->autos()) {
          const auto gi = griess::automorphism_apply(g, bi, *t), gj = griess::automorphism_apply(g, bj, *t);
          if (griess::automorphism_apply(g, p, *t) != griess::multiply(gi, gj, *t)) ++bad_auto;
          if (griess::inner(gi, gj, *t) != griess::inner(bi, bj, *t)) ++bad_auto;
        }
      }
    }
    c.equal(bad_comm, std::size_t{0}, t->id() + " commutativity failures");
    c.equal(bad_form, std::size_t{0}, t->id() + " form invariance failures");
    c.equal(bad_auto, std::size_t{0}, t->id() + " automorphism failures");
  }
  c.expect(griess::exchange_relation_residual(a5()).is_zero(), "exchange relation residual is zero");
  const auto& s = c3();
  const auto f = q(1, 64) * s["e"] + s["a"] + s["c"];
  c.equal(griess::multiply(f, f, s), q(2) * f, "c3 f.f = 2f");
  c.equal(griess::inner(f, f, s), q(1, 4), "c3 <f,f>");
  c.equal(griess::inner(s["e"], f, s), q(1, 256), "c3 <e,f>");
}

void ac9(Check& c) {
  std::mt19937 rng(20261015);
  for (const minimal::MinimalModel m : {minimal::MinimalModel(3, 4), minimal::MinimalModel(7, 8),
                                        minimal::MinimalModel(11, 12)}) {
    const auto& tab = minimal::kac_table(m);
    std::uniform_int_distribution<std::size_t> pick(0, tab.size() - 1);
    std::size_t bad = 0;
    for (int i = 0; i < 200; ++i) {
      const auto& x = tab[pick(rng)];
      const auto& y = tab[pick(rng)];
      HighReal sum = 0;
      for (const auto& z : minimal::fuse(x, y)) sum += minimal::qdim_numeric(z);
      if (boost::multiprecision::abs(minimal::qdim_numeric(x) * minimal::qdim_numeric(y) - sum) > HighReal("1e-9")) {
        ++bad;
      }
    }
    c.equal(bad, std::size_t{0},
            "M(" + std::to_string(m.p) + "," + std::to_string(m.q) + ") pairs violating qdim multiplicativity");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"AC1 5A spanning Gram matrix, rank and kernel", ac1},
      {"AC2 5A eigenspaces of e and the 1/16 eigenvectors", ac2},
      {"AC3 conformal vectors and central charges", ac3},
      {"AC4 weight-4 inner products and independence", ac4},
      {"AC5 quantum dimensions", ac5},
      {"AC6 fusion statements", ac6},
      {"AC7 multiplicity solving", ac7},
      {"AC8 algebra property suite", ac8},
      {"AC9 Verlinde consistency on random pairs", ac9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    std::string error;
    try {
      fn(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty() && c.failures().empty();
    std::cout << name.substr(0, 3) << (ok ? " PASS " : " FAIL ") << name.substr(4) << " [" << c.count()
              << " checks]\n";
    if (!error.empty()) std::cout << "    exception: " << error << "\n";
    for (const auto& f : c.failures()) std::cout << "    " << f << "\n";
    if (!ok) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
