#include "griesskit/modecalc.hpp"

#include <stdexcept>

namespace griesskit::modecalc {

using griess::GriessElement;
using griess::inner;
using griess::multiply;

Weight4State Weight4State::deep(GriessElement x, std::string label) {
  Weight4State s;
  s.kind = Kind::Deep;
  s.second = x;
  s.second.coords.assign(x.dim(), QF());
  s.first = std::move(x);
  s.label = std::move(label);
  return s;
}

Weight4State Weight4State::pair(GriessElement p, GriessElement q, std::string label) {
  if (p.case_id != q.case_id) throw griess::CaseMismatch("pair state operands come from different cases");
  Weight4State s;
  s.kind = Kind::Pair;
  s.first = std::move(p);
  s.second = std::move(q);
  s.label = std::move(label);
  return s;
}

QF w4_inner(const Weight4State& a, const Weight4State& b, const griess::CaseTable& t) {
  using K = Weight4State::Kind;
  if (a.first.case_id != t.id() || b.first.case_id != t.id()) {
    throw griess::CaseMismatch("weight-4 state does not belong to case " + t.id());
  }
  if (a.kind == K::Deep && b.kind == K::Deep) return QF(10) * inner(a.first, b.first, t);
  if (a.kind == K::Deep) return w4_inner(b, a, t);
  const auto& p = a.first;
  const auto& q = a.second;
  if (b.kind == K::Deep) return QF(3) * inner(q, multiply(b.first, p, t), t);
  const auto& r = b.first;
  const auto& s = b.second;
  return inner(q, multiply(p, multiply(r, s, t), t), t) - inner(q, multiply(r, multiply(p, s, t), t), t) +
         QF(2) * inner(q, multiply(multiply(p, r, t), s, t), t) + inner(p, r, t) * inner(q, s, t) +
         inner(p, s, t) * inner(q, r, t);
}

Weight4Gram w4_gram(const std::vector<Weight4State>& states, const griess::CaseTable& t) {
  if (states.empty()) throw std::invalid_argument("w4_gram needs at least one state");
  const std::size_t n = states.size();
  QFMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = w4_inner(states[i], states[j], t);
  const auto red = mat_reduce(m);
  return {m, red.rank, *red.det};
}

std::vector<Weight4State> c3_independence_states(const griess::CaseTable& t) {
  if (t.id() != "c3") throw griess::CaseMismatch("the six-state family is defined for case c3");
  const auto e = t["e"];
  const auto w = QF::frac(64, 33) * t["a"];
  const auto c = t["c"];
  return {
      Weight4State::deep(e, "e_{-3}1"),     Weight4State::deep(w, "w_{-3}1"),
      Weight4State::pair(e, e, "e_{-1}e"),  Weight4State::pair(w, w, "w_{-1}w"),
      Weight4State::pair(e, w, "e_{-1}w"),  Weight4State::pair(c, c, "c_{-1}c"),
  };
}

QFMatrix printed_c3_matrix() {
  auto q = [](long n, long d) { return QF::frac(n, d); };
  const long p13 = 1L << 13, p17 = 1L << 17, p18 = 1L << 18;
  return QFMatrix(6, 6,
                  {
                      q(5, 2), 0, q(3, 2), 0, 0, q(3 * 63, p13),
                      0, q(5, 2), 0, q(3, 2), 0, q(63 * 31 * 3, p13),
                      q(3, 2), 0, q(17, 8), 0, 0, q(63 * 33, p17),
                      0, q(3, 2), 0, q(17, 8), 0, q(31 * 33 * 63, p17),
                      0, 0, 0, 0, q(1, 16), q(31 * 33, p17),
                      q(3 * 63, p13), q(63 * 31 * 3, p13), q(63 * 33, p17), q(31 * 33 * 63, p17), q(31 * 33, p17),
                      q(1119 * 63, p18),
                  });
}

std::vector<EntryDiff> matrix_discrepancies(const QFMatrix& printed, const QFMatrix& recomputed) {
  if (printed.rows() != recomputed.rows() || printed.cols() != recomputed.cols()) {
    throw std::invalid_argument("matrices differ in shape");
  }
  std::vector<EntryDiff> out;
  for (std::size_t i = 0; i < printed.rows(); ++i)
    for (std::size_t j = 0; j < printed.cols(); ++j) {
      if (printed(i, j) != recomputed(i, j)) out.push_back({i, j, printed(i, j), recomputed(i, j)});
    }
  return out;
}

}  // namespace griesskit::modecalc
