#pragma once

// Griess algebras generated by two Ising vectors e, f.
//
// Two concrete algebras are supported:
//   c3  <e,f> = 1/2^8 with |e^T u f^T| = 3, basis {e, a, c}
//       (a in E^e(0), c in E^e(1/16), f = e/64 + a + c);
//   a5  <e,f> = <e,e^{tf}> = 3/2^9 with |e^T u f^T| = 5, basis
//       {e, e^tf, e^tfte, f, f^te, alpha(e,f)} after eliminating
//       alpha(e,e^tf) through the kernel of the spanning-set Gram matrix.
// The product is x.y = x_1 y and the form satisfies <xy,z> = <y,xz>.

#include "griesskit/exactnum.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace griesskit::griess {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CaseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConformalSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CasePairData {
  std::string class_name;
  int N = 0;                     // |e^T u f^T|
  QF lambda1;                    // 4<e,f>
  std::optional<QF> lambda2;     // 4<e,e^{tf}>, tabulated for N in {4,5,6}

  QF inner_ef() const { return lambda1 / QF(4); }
};

/// One of 1A 2A 3A 4A 5A 6A 4B 2B 3C.
CasePairData catalog(std::string_view class_name);
const std::vector<std::string>& catalog_classes();

/// Case id used by the CLI and reports: "c3" for 3C, "a5" for 5A.
std::string case_id_for_class(std::string_view class_name);
std::string class_for_case_id(std::string_view case_id);

using BasisLabel = std::string;

enum class LabelKind { Ising, Axial, Other };
LabelKind label_kind(std::string_view label);

enum class Automorphism { TauE, TauF, Flip };
std::string_view automorphism_name(Automorphism g);
Automorphism parse_automorphism(std::string_view name);

struct GriessElement {
  std::string case_id;
  std::vector<QF> coords;

  std::size_t dim() const { return coords.size(); }
  bool is_zero() const;

  GriessElement& operator+=(const GriessElement& o);
  GriessElement& operator-=(const GriessElement& o);
  GriessElement& operator*=(const QF& s);
  friend GriessElement operator+(GriessElement a, const GriessElement& b) { return a += b; }
  friend GriessElement operator-(GriessElement a, const GriessElement& b) { return a -= b; }
  friend GriessElement operator*(const QF& s, GriessElement a) { return a *= s; }
  friend GriessElement operator*(GriessElement a, const QF& s) { return a *= s; }
  friend bool operator==(const GriessElement& a, const GriessElement& b) {
    return a.case_id == b.case_id && a.coords == b.coords;
  }
};

struct SeedProduct {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<QF> value;
};

/// Raw data a table is closed from. This is also the content of a case file.
struct CaseDefinition {
  CasePairData pair;
  std::int64_t disc = 1;                           // field for derived scalars
  std::vector<BasisLabel> basis;
  std::map<std::pair<std::size_t, std::size_t>, QF> gram;  // i <= j; absent means 0
  std::vector<SeedProduct> seeds;
  std::map<Automorphism, QFMatrix> autos;          // column j = image of basis j
};

class CaseTable {
 public:
  CaseTable(std::string id, CasePairData pair, std::int64_t disc, std::vector<BasisLabel> basis,
            std::vector<std::vector<QF>> product, QFMatrix gram, std::map<Automorphism, QFMatrix> autos);

  const std::string& id() const noexcept { return id_; }
  const CasePairData& pair() const noexcept { return pair_; }
  std::int64_t disc() const noexcept { return disc_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<BasisLabel>& basis() const noexcept { return basis_; }
  const QFMatrix& gram() const noexcept { return gram_; }
  const std::map<Automorphism, QFMatrix>& autos() const noexcept { return autos_; }

  std::size_t index_of(std::string_view label) const;
  /// Coordinates of b_i * b_j.
  const std::vector<QF>& product(std::size_t i, std::size_t j) const { return product_[i * dim() + j]; }

  GriessElement zero() const;
  GriessElement element(std::vector<QF> coords) const;
  GriessElement basis_element(std::size_t i) const;
  GriessElement operator[](std::string_view label) const { return basis_element(index_of(label)); }

 private:
  std::string id_;
  CasePairData pair_;
  std::int64_t disc_;
  std::vector<BasisLabel> basis_;
  std::vector<std::vector<QF>> product_;
  QFMatrix gram_;
  std::map<Automorphism, QFMatrix> autos_;
};

// ---- Sakuma relations ------------------------------------------------------

/// Labels of the 5A spanning set S with f^{tetf} identified with e^{tfte}.
const std::vector<BasisLabel>& a5_spanning_labels();

/// <a, alpha(a,x)> = 31/16 <a,x> - 1/2^6 for an Ising vector a.
QF axial_inner(const QF& inner_ax);

/// Gram matrix of the 7 vectors e, e^tf, e^tfte, f, f^te, alpha(e,f),
/// alpha(e,e^tf) for the five-orbit configuration with given lambdas.
QFMatrix a5_spanning_gram(const QF& lambda1, const QF& lambda2);

/// Coefficients of alpha(e,f).alpha(e,f) over
/// {e, f+f^te, e^tf+e^tfte, alpha(e,f), alpha(e,e^tf), alpha(f,f^te)}.
/// `lambda2_weight` is the weight of lambda2 inside the e coefficient; the
/// consistent value is 1/2^6.
std::vector<QF> axial_square_coefficients(const QF& lambda1, const QF& lambda2, const QF& lambda2_weight);

/// Left-hand side of the e <-> f exchange relation evaluated in a completed
/// a5 table; must be the zero element.
GriessElement exchange_relation_residual(const CaseTable& t);

// ---- construction ------------------------------------------------------------

/// Data for the c3 or a5 case from Sakuma's relations and the pair data.
/// `lambda2_weight` only affects a5 (see axial_square_coefficients).
CaseDefinition derive_definition(const CasePairData& pair, const QF& lambda2_weight = QF::frac(1, 64));

/// Closes the seed products under commutativity and the automorphism group,
/// stage by stage (Ising x Ising, then Ising x other, then the rest), then
/// verifies completeness, commutativity, form invariance and that every
/// automorphism preserves product and form. Throws ConstructionError.
CaseTable build_case_table(const CaseDefinition& def);
CaseTable build_case_table(const CasePairData& pair);

/// "c3" or "a5".
CaseTable standard_case(std::string_view case_id);

// ---- case files ----------------------------------------------------------------
//
// Line-oriented key=value text; '#' starts a comment. Keys:
//   class=5A  N=5  lambda1=3/128  lambda2=3/128  disc=5
//   basis=<labels separated by spaces>
//   gram=<label> <label> <value>            one entry per line, symmetric
//   seed=<label> <label> <label> <coef>     adds coef*label3 to label1*label2
//   auto=<tau_e|tau_f|flip> <label> <label> <coef>
//                                           adds coef*label3 to the image of label2
// Values use the exactnum serialization.

CaseDefinition parse_case_file(std::string_view text);
std::string format_case_file(const CaseDefinition& def);

// ---- algebra operations ------------------------------------------------------

GriessElement multiply(const GriessElement& x, const GriessElement& y, const CaseTable& t);
QF inner(const GriessElement& x, const GriessElement& y, const CaseTable& t);
/// alpha(x,y) = xy - (x+y)/16.
GriessElement alpha(const GriessElement& x, const GriessElement& y, const CaseTable& t);
GriessElement automorphism_apply(Automorphism g, const GriessElement& x, const CaseTable& t);

/// Matrix of y -> x.y in the basis (column j holds x.b_j).
QFMatrix adjoint_matrix(const GriessElement& x, const CaseTable& t);
std::vector<GriessElement> eigenspace(const GriessElement& x, const QF& lam, const CaseTable& t);

/// Dimension of the common eigenspace {w : x_k w = lam_k w for all k}.
std::vector<GriessElement> joint_eigenspace(const std::vector<std::pair<GriessElement, QF>>& ops, const CaseTable& t);

/// Coordinates of w in the span of `basis` (assumed independent), if any.
std::optional<std::vector<QF>> span_coordinates(const std::vector<GriessElement>& basis, const GriessElement& w);

struct ConformalVector {
  GriessElement vector;
  QF central_charge;
  std::optional<QF> k;  // x proportional to u + k v in a 2-dim search; empty for the v direction
};

/// All x in span(subspace) with x.x = 2x, x != 0, for subspaces of dimension
/// one or two. Two-dimensional spans are parameterized as s(u + k v); the
/// proportionality condition is a cubic in k whose roots must lie in Q or in
/// Q(sqrt(t.disc())). Order: roots of the irreducible quadratic factor
/// (+sqrt first), then rational roots ascending, then the pure v direction.
std::vector<ConformalVector> conformal_search(const std::vector<GriessElement>& subspace, const CaseTable& t);

bool is_conformal(const GriessElement& x, const CaseTable& t);

/// Hand-normalized basis of E^e(0): {a} for c3; for a5
///   u = -e/8 + f + f^te - (32/7) alpha(e,f),
///   v = e/32 + e^tf + e^tfte + (32/7) alpha(e,f).
/// Throws ConstructionError if a vector fails the eigenvector check.
std::vector<GriessElement> reference_zero_basis(const CaseTable& t);

std::string format_element(const GriessElement& x, const CaseTable& t);

}  // namespace griesskit::griess
