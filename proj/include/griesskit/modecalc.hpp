#pragma once

// Inner products of weight-4 states x_{-3}1 and p_{-1}q built from weight-2
// elements, reduced to Griess-algebra data by commutator formulas.

#include "griesskit/griess.hpp"

#include <string>
#include <vector>

namespace griesskit::modecalc {

struct Weight4State {
  enum class Kind { Deep, Pair };
  Kind kind = Kind::Deep;
  griess::GriessElement first;   // x for Deep, p for Pair
  griess::GriessElement second;  // unused for Deep, q for Pair
  std::string label;             // display name only

  /// x_{-3}1
  static Weight4State deep(griess::GriessElement x, std::string label = {});
  /// p_{-1}q
  static Weight4State pair(griess::GriessElement p, griess::GriessElement q, std::string label = {});
};

/// <x_{-3}1, y_{-3}1> = 10<x,y>
/// <p_{-1}q, z_{-3}1> = 3<q, z.p>
/// <p_{-1}q, r_{-1}s> = <q, p(rs)> - <q, r(ps)> + 2<q, (pr)s> + <p,r><q,s> + <p,s><q,r>
QF w4_inner(const Weight4State& a, const Weight4State& b, const griess::CaseTable& t);

struct Weight4Gram {
  QFMatrix matrix;
  std::size_t rank = 0;
  QF det;
};

Weight4Gram w4_gram(const std::vector<Weight4State>& states, const griess::CaseTable& t);

/// The six states e_{-3}1, w_{-3}1, e_{-1}e, w_{-1}w, e_{-1}w, c_{-1}c of the
/// c3 case, with w = (64/33)a.
std::vector<Weight4State> c3_independence_states(const griess::CaseTable& t);

/// Matrix of the same six states as printed in the literature, kept as a
/// reference fixture; its w-rows use central charge 1/2 values.
QFMatrix printed_c3_matrix();

struct EntryDiff {
  std::size_t row = 0;
  std::size_t col = 0;
  QF printed;
  QF recomputed;
};

std::vector<EntryDiff> matrix_discrepancies(const QFMatrix& printed, const QFMatrix& recomputed);

}  // namespace griesskit::modecalc
