#pragma once

// Virasoro minimal models M(p,q): Kac table, fusion rules and quantum
// dimensions of single modules and of tensor products of modules.

#include "griesskit/exactnum.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace griesskit::minimal {

class LabelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MinimalModel {
  int p = 3;
  int q = 4;

  /// Throws unless 2 <= p < q and gcd(p,q) = 1.
  MinimalModel(int p_, int q_);
  MinimalModel() = default;

  Rational central_charge() const;
  friend bool operator==(const MinimalModel&, const MinimalModel&) = default;
  friend auto operator<=>(const MinimalModel&, const MinimalModel&) = default;
};

/// Highest weight (r,s) stored in the representative with q*r - p*s > 0.
struct KacLabel {
  MinimalModel model;
  int r = 1;
  int s = 1;

  /// Validates the range and canonicalizes (r,s) ~ (p-r, q-s).
  static KacLabel make(const MinimalModel& m, int r, int s);
  static KacLabel vacuum(const MinimalModel& m) { return make(m, 1, 1); }

  Rational h() const;
  bool is_vacuum() const { return r == 1 && s == 1; }
  friend bool operator==(const KacLabel&, const KacLabel&) = default;
  friend auto operator<=>(const KacLabel&, const KacLabel&) = default;
};

/// Conformal weight h_{r,s} = ((qr-ps)^2 - (p-q)^2) / (4pq).
Rational kac_weight(const MinimalModel& m, int r, int s);

/// All canonical labels of a model, ordered by (r,s). Computed once per model.
const std::vector<KacLabel>& kac_table(const MinimalModel& m);

struct ModuleLabel {
  std::vector<KacLabel> factors;

  static ModuleLabel vacuum(const std::vector<MinimalModel>& models);
  std::vector<MinimalModel> models() const;
  Rational weight() const;  // sum of the factor weights
  bool is_vacuum() const;
  friend bool operator==(const ModuleLabel&, const ModuleLabel&) = default;
  friend auto operator<=>(const ModuleLabel&, const ModuleLabel&) = default;
};

/// "[h1,h2,...]" with each weight written as an integer or reduced fraction.
std::string to_string(const KacLabel& x);
std::string to_string(const ModuleLabel& x);
/// Parses "[h1,h2,...]" (or a bare h for one factor) against the given models.
ModuleLabel parse_module_label(const std::vector<MinimalModel>& models, std::string_view text);

/// The coprime (p,q), p < q, p + q <= limit, whose central charge is c.
MinimalModel identify_model(const QF& c, int limit = 200);

/// Canonical label of weight h; throws LabelError when h is not in the table.
KacLabel kac_lookup(const MinimalModel& m, const Rational& h);

/// Truncated fusion rule; distinct results sorted by label.
std::vector<KacLabel> fuse(const KacLabel& x, const KacLabel& y);
/// Componentwise fusion, all combinations, sorted.
std::vector<ModuleLabel> fuse_tensor(const ModuleLabel& x, const ModuleLabel& y);

struct QDimOptions {
  int precision_bits = 64;                     // 64, 128 or 256; raised on identification failure
  std::vector<std::int64_t> discs = {2, 3};
  IdentifyOptions identify;
};

struct QDim {
  HighReal numeric;
  std::optional<QF> exact;
  int precision_bits = 0;  // precision of the returned numeric value
  std::string note;        // reason when exact is empty
};

/// S_{x,0}/S_{0,0} at the requested working precision (rounded up to a tier).
HighReal qdim_numeric(const KacLabel& x, int precision_bits = 64);
HighReal qdim_numeric(const ModuleLabel& x, int precision_bits = 64);

QDim qdim(const KacLabel& x, const QDimOptions& opts = {});
QDim qdim(const ModuleLabel& x, const QDimOptions& opts = {});

bool is_simple_current(const ModuleLabel& x);

}  // namespace griesskit::minimal
