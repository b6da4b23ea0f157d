#pragma once

// Multiplicity equations for decompositions of a vertex algebra into
// tensor-product modules of minimal models, and an exhaustive bounded solver.

#include "griesskit/exactnum.hpp"
#include "griesskit/griess.hpp"
#include "griesskit/minimal.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace griesskit::decomp {

struct Summand {
  std::string var;  // multiplicity variable, e.g. "n3"
  minimal::ModuleLabel label;
  std::optional<long> fixed;  // known multiplicity
  std::string sector;         // first-factor weight: "0", "1/2" or "1/16"
};

/// qdim(sum over `fixed_sectors`) = qdim(sum over `eigen_sectors`) for the
/// fixed part and (-1)-part of one order-2 automorphism.
struct SectorSplit {
  std::string name;
  std::vector<std::string> fixed_sectors;
  std::vector<std::string> eigen_sectors;
};

struct DecompTemplate {
  std::string case_id;
  std::vector<minimal::MinimalModel> models;
  std::vector<Summand> summands;
  std::vector<SectorSplit> splits;
  std::map<std::string, long> expected;  // the claimed decomposition

  const Summand& summand(std::string_view var) const;
};

/// Sector tag of a label: the serialized weight of its first factor.
std::string sector_of(const minimal::ModuleLabel& x);

/// Validates labels, sectors and the single fixed vacuum. Throws ParseError.
void validate(const DecompTemplate& tpl);

DecompTemplate builtin_template(std::string_view case_id);
DecompTemplate parse_template(std::string_view json_text);
std::string template_to_json(const DecompTemplate& tpl);

struct LinearForm {
  std::map<std::string, QF> coeffs;
  QF constant;
};

struct QFEquation {
  std::string name;
  LinearForm lhs;
  LinearForm rhs;
};

/// sum coeffs[v] * v + constant = 0 with integer coefficients.
struct IntEquation {
  std::string name;
  std::map<std::string, long> coeffs;
  long constant = 0;
};

/// n_premise_a = 1 and n_premise_b = 1 force n_conclusion = 1.
struct Implication {
  std::string premise_a;
  std::string premise_b;
  std::string conclusion;
  std::string reason;
};

struct Bound {
  long lo = 0;
  long hi = 16;
};

struct MultiplicitySystem {
  std::vector<std::string> vars;  // unknowns in template order
  std::map<std::string, long> fixed;  // known multiplicities, excluded from vars
  std::vector<QFEquation> equations;
  std::map<std::string, Bound> bounds;
  std::vector<Implication> implications;
};

std::string to_string(const LinearForm& f);
std::string to_string(const QFEquation& eq);
std::string to_string(const IntEquation& eq);

/// One equation per split, with fixed multiplicities moved into constants.
/// Throws std::runtime_error when a quantum dimension is not identified exactly.
MultiplicitySystem balance_system(const DecompTemplate& tpl, long default_bound = 16);

/// Rational parts and sqrt(d) parts as two equations with integer coefficients.
std::pair<IntEquation, IntEquation> split_equation(const QFEquation& eq);

/// Bounds simple-current unknowns to {0,1} and adds the implications
/// n_J = n_M = 1 => n_{J x M} = 1 for simple currents J whose fusion with M is a
/// single summand of the template.
MultiplicitySystem apply_simple_current_bounds(const DecompTemplate& tpl, MultiplicitySystem sys);

struct Assignment {
  std::map<std::string, long> values;
  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

struct SolveOptions {
  std::vector<std::string> order;  // enumeration order; empty means sys.vars
};

/// Every assignment within the bounds satisfying all split equations and
/// implications, sorted.
std::vector<Assignment> solve(const MultiplicitySystem& sys, const SolveOptions& opts = {});

/// Check of a full assignment (including fixed summands) against an equation.
QF residual(const QFEquation& eq, const std::map<std::string, long>& values);

// ---- theorem pipeline ------------------------------------------------------------

struct VerifyOptions {
  long bound = 16;
  std::optional<griess::CasePairData> pair;          // overrides the catalog pair data
  std::optional<griess::CaseDefinition> definition;  // overrides derivation entirely
  std::map<std::string, long> force;         // extra fixed multiplicities
  std::optional<DecompTemplate> tpl;         // overrides the built-in template
};

struct SeedRecord {
  std::string var;
  long value = 0;
  std::string reason;
};

struct FusionCheck {
  std::size_t pairs = 0;
  std::size_t pairs_meeting_list = 0;
  std::vector<std::string> outside_labels;  // informational
};

struct TheoremReport {
  std::string case_id;
  bool ok = false;
  std::string failed_stage;  // empty when ok
  std::vector<std::string> messages;

  std::size_t algebra_dim = 0;
  std::map<std::string, std::size_t> eigenspace_dims;  // eigenvalue of e -> dimension
  std::vector<std::pair<std::string, std::string>> conformal;  // element, central charge
  std::vector<SeedRecord> seeds;
  std::vector<std::string> equations;
  std::vector<std::string> split_equations;
  std::vector<Implication> implications;
  std::vector<std::string> simple_currents;
  std::vector<Assignment> solutions;
  std::vector<std::pair<std::string, long>> decomposition;  // label, multiplicity in template order
  FusionCheck fusion;
  std::vector<std::string> assumptions;
};

TheoremReport verify_theorem(std::string_view case_id, const VerifyOptions& opts = {});

}  // namespace griesskit::decomp
