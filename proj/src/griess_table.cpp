#include "griesskit/griess.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace griesskit::griess {

namespace {

QF q(long n, long d = 1) { return QF::frac(n, d); }

struct CatalogRow {
  const char* name;
  int N;
  QF inner_ef;
  std::optional<QF> inner_e_etf;
};

const std::vector<CatalogRow>& catalog_rows() {
  static const std::vector<CatalogRow> rows = {
      {"1A", 1, q(1, 4), std::nullopt},
      {"2A", 2, q(1, 32), std::nullopt},
      {"3A", 3, q(13, 1024), std::nullopt},
      {"4A", 4, q(1, 128), q(0)},
      {"5A", 5, q(3, 512), q(3, 512)},
      {"6A", 6, q(5, 1024), q(13, 1024)},
      {"4B", 4, q(1, 256), q(1, 32)},
      {"2B", 2, q(0), std::nullopt},
      {"3C", 3, q(1, 256), std::nullopt},
  };
  return rows;
}

}  // namespace

CasePairData catalog(std::string_view class_name) {
  for (const auto& row : catalog_rows()) {
    if (class_name == row.name) {
      CasePairData d{row.name, row.N, row.inner_ef * q(4), std::nullopt};
      if (row.inner_e_etf) d.lambda2 = *row.inner_e_etf * q(4);
      return d;
    }
  }
  throw std::invalid_argument("unknown conjugacy class '" + std::string(class_name) + "'");
}

const std::vector<std::string>& catalog_classes() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& row : catalog_rows()) v.emplace_back(row.name);
    return v;
  }();
  return names;
}

std::string case_id_for_class(std::string_view class_name) {
  if (class_name == "3C") return "c3";
  if (class_name == "5A") return "a5";
  return std::string(class_name);
}

std::string class_for_case_id(std::string_view case_id) {
  if (case_id == "c3") return "3C";
  if (case_id == "a5") return "5A";
  throw std::invalid_argument("unknown case '" + std::string(case_id) + "' (expected c3 or a5)");
}

LabelKind label_kind(std::string_view label) {
  if (label.starts_with("alpha(")) return LabelKind::Axial;
  if (label == "e" || label == "f" || label.starts_with("e^") || label.starts_with("f^")) return LabelKind::Ising;
  return LabelKind::Other;
}

std::string_view automorphism_name(Automorphism g) {
  switch (g) {
    case Automorphism::TauE: return "tau_e";
    case Automorphism::TauF: return "tau_f";
    case Automorphism::Flip: return "flip";
  }
  return "?";
}

Automorphism parse_automorphism(std::string_view name) {
  if (name == "tau_e") return Automorphism::TauE;
  if (name == "tau_f") return Automorphism::TauF;
  if (name == "flip") return Automorphism::Flip;
  throw std::invalid_argument("unknown automorphism '" + std::string(name) + "'");
}

// ---- GriessElement / CaseTable ---------------------------------------------

bool GriessElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const QF& x) { return x.is_zero(); });
}

namespace {
void check_same(const GriessElement& a, const GriessElement& b) {
  if (a.case_id != b.case_id || a.coords.size() != b.coords.size()) {
    throw CaseMismatch("elements belong to different cases ('" + a.case_id + "' vs '" + b.case_id + "')");
  }
}
}  // namespace

GriessElement& GriessElement::operator+=(const GriessElement& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

GriessElement& GriessElement::operator-=(const GriessElement& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

GriessElement& GriessElement::operator*=(const QF& s) {
  for (auto& c : coords) c *= s;
  return *this;
}

CaseTable::CaseTable(std::string id, CasePairData pair, std::int64_t disc, std::vector<BasisLabel> basis,
                     std::vector<std::vector<QF>> product, QFMatrix gram, std::map<Automorphism, QFMatrix> autos)
    : id_(std::move(id)),
      pair_(std::move(pair)),
      disc_(disc),
      basis_(std::move(basis)),
      product_(std::move(product)),
      gram_(std::move(gram)),
      autos_(std::move(autos)) {}

std::size_t CaseTable::index_of(std::string_view label) const {
  const auto it = std::find(basis_.begin(), basis_.end(), label);
  if (it == basis_.end()) throw std::invalid_argument("no basis label '" + std::string(label) + "' in case " + id_);
  return static_cast<std::size_t>(it - basis_.begin());
}

GriessElement CaseTable::zero() const { return {id_, std::vector<QF>(dim())}; }

GriessElement CaseTable::element(std::vector<QF> coords) const {
  if (coords.size() != dim()) throw std::invalid_argument("coordinate vector has wrong length for case " + id_);
  return {id_, std::move(coords)};
}

GriessElement CaseTable::basis_element(std::size_t i) const {
  auto z = zero();
  z.coords.at(i) = QF(1);
  return z;
}

// ---- Sakuma relations --------------------------------------------------------

const std::vector<BasisLabel>& a5_spanning_labels() {
  static const std::vector<BasisLabel> labels = {"e", "e^tf", "e^tfte", "f", "f^te", "alpha(e,f)", "alpha(e,e^tf)"};
  return labels;
}

QF axial_inner(const QF& inner_ax) { return q(31, 16) * inner_ax - q(1, 64); }

namespace {

// Basis positions of the five Ising vectors in the a5 ordering.
constexpr std::size_t kE = 0, kEtf = 1, kEtfte = 2, kF = 3, kFte = 4, kAlpha = 5;

// tau_e, tau_f and the flip as permutations of the a5 basis.
constexpr std::array<std::size_t, 6> kTauE = {kE, kEtfte, kEtf, kFte, kF, kAlpha};
constexpr std::array<std::size_t, 6> kTauF = {kEtf, kE, kFte, kF, kEtfte, kAlpha};
constexpr std::array<std::size_t, 6> kFlip = {kF, kFte, kEtfte, kE, kEtf, kAlpha};

// Pairs of distinct Ising vectors in the orbit of {e,f} under <tau_e,tau_f>.
// alpha takes the value alpha(e,f) on these and alpha(e,e^tf) on the rest.
const std::set<std::pair<std::size_t, std::size_t>>& ef_orbit_pairs() {
  static const auto pairs = [] {
    std::set<std::pair<std::size_t, std::size_t>> orbit{{kE, kF}};
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto p : std::vector(orbit.begin(), orbit.end())) {
        for (const auto* g : {&kTauE, &kTauF}) {
          auto a = (*g)[p.first], b = (*g)[p.second];
          if (a > b) std::swap(a, b);
          grew |= orbit.insert({a, b}).second;
        }
      }
    }
    return orbit;
  }();
  return pairs;
}

bool in_ef_orbit(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return ef_orbit_pairs().count({i, j}) != 0;
}

QFMatrix permutation_matrix(const std::array<std::size_t, 6>& perm) {
  QFMatrix m(6, 6);
  for (std::size_t j = 0; j < 6; ++j) m(perm[j], j) = QF(1);
  return m;
}

}  // namespace

QFMatrix a5_spanning_gram(const QF& lambda1, const QF& lambda2) {
  const QF ef = lambda1 / q(4);
  const QF eetf = lambda2 / q(4);
  const QF x_alpha = axial_inner(ef);
  const QF x_beta = axial_inner(eetf);
  // <alpha,alpha>, <beta,beta>, <alpha,beta> by moving one Ising factor across
  // the form and expanding a.alpha(a,x) with the Ising-axial product rule.
  const QF alpha_alpha = q(5, 16) * x_alpha + (q(3) * lambda1 - q(25, 256)) * ef + q(7, 512) * q(1, 4) + q(7, 512) * eetf;
  const QF beta_beta = q(5, 16) * x_beta + (q(3) * lambda2 - q(25, 256)) * eetf + q(7, 512) * q(1, 4) + q(7, 512) * ef;
  const QF alpha_beta = q(5, 16) * x_alpha + (q(3) * lambda1 - q(25, 256)) * eetf + q(7, 512) * (ef + eetf);

  QFMatrix g(7, 7);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) g(i, j) = i == j ? q(1, 4) : (in_ef_orbit(i, j) ? ef : eetf);
    g(i, 5) = g(5, i) = x_alpha;
    g(i, 6) = g(6, i) = x_beta;
  }
  g(5, 5) = alpha_alpha;
  g(6, 6) = beta_beta;
  g(5, 6) = g(6, 5) = alpha_beta;
  return g;
}

std::vector<QF> axial_square_coefficients(const QF& lambda1, const QF& lambda2, const QF& lambda2_weight) {
  return {
      q(7, 3) * (q(4) * lambda1 * lambda1 - lambda1 / q(16) - q(1, 4096) + lambda2_weight * lambda2),
      q(49, 96) * (lambda1 - q(5, 256)),
      q(49, 3 * 8192),
      -q(1, 3) * (q(5) * lambda1 + q(13, 128)),
      -q(7, 384),
      q(7, 512),
  };
}

GriessElement exchange_relation_residual(const CaseTable& t) {
  if (!t.pair().lambda2) throw std::invalid_argument("exchange relation needs lambda2");
  const QF& l1 = t.pair().lambda1;
  const QF& l2 = *t.pair().lambda2;
  const auto e = t["e"], f = t["f"], etf = t["e^tf"], fte = t["f^te"], etfte = t["e^tfte"];
  const auto ftetf = automorphism_apply(Automorphism::TauF, automorphism_apply(Automorphism::TauE, f, t), t);
  const QF c_ef = q(1, 7) * (q(2048) * l1 * l1 - q(144) * l1 + q(33, 16) + q(8) * l2);
  const QF c_tw = q(16) * l1 - q(3, 8);
  return c_ef * (e - f) + c_tw * (fte - etf) + q(1, 16) * (etfte - ftetf) -
         (alpha(e, etf, t) - alpha(f, fte, t));
}

// ---- construction --------------------------------------------------------------

namespace {

CaseDefinition derive_a5(const CasePairData& pair, const QF& lambda2_weight) {
  if (!pair.lambda2) throw ConstructionError("five-orbit construction needs lambda2");
  const QF& l1 = pair.lambda1;
  const QF& l2 = *pair.lambda2;
  const QFMatrix g7 = a5_spanning_gram(l1, l2);
  const auto red = mat_reduce(g7);
  if (red.kernel.size() != 1) {
    throw ConstructionError("spanning-set Gram matrix has rank " + std::to_string(red.rank) +
                            "; expected exactly one kernel relation to eliminate alpha(e,e^tf)");
  }
  const auto& k = red.kernel.front();
  if (k[6].is_zero()) throw ConstructionError("kernel relation does not involve alpha(e,e^tf)");

  CaseDefinition def;
  def.pair = pair;
  def.disc = 5;
  def.basis.assign(a5_spanning_labels().begin(), a5_spanning_labels().begin() + 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i; j < 6; ++j) {
      if (!g7(i, j).is_zero()) def.gram[{i, j}] = g7(i, j);
    }

  auto unit = [](std::size_t i) {
    std::vector<QF> v(6);
    v[i] = QF(1);
    return v;
  };
  auto axpy = [](std::vector<QF>& y, const QF& a, const std::vector<QF>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  };
  std::vector<QF> beta(6);
  for (std::size_t i = 0; i < 6; ++i) beta[i] = -k[i] / k[6];
  const auto alpha_of = [&](std::size_t i, std::size_t j) { return in_ef_orbit(i, j) ? unit(kAlpha) : beta; };

  // e times every Ising vector.
  for (std::size_t x = 0; x < 5; ++x) {
    std::vector<QF> v(6);
    if (x == kE) {
      v[kE] = q(2);
    } else {
      v[kE] += q(1, 16);
      v[x] += q(1, 16);
      axpy(v, QF(1), alpha_of(kE, x));
    }
    def.seeds.push_back({kE, x, std::move(v)});
  }
  // e.alpha(e,f) = 7/16 alpha(e,f) + (12<e,f> - 25/2^8) e + 7/2^9 (f + f^te)
  {
    std::vector<QF> v(6);
    v[kAlpha] = q(7, 16);
    v[kE] = q(12) * pair.inner_ef() - q(25, 256);
    v[kF] = q(7, 512);
    v[kFte] = q(7, 512);
    def.seeds.push_back({kE, kAlpha, std::move(v)});
  }
  // alpha(e,f).alpha(e,f)
  {
    const auto c = axial_square_coefficients(l1, l2, lambda2_weight);
    std::vector<QF> v(6);
    v[kE] = c[0];
    v[kF] = v[kFte] = c[1];
    v[kEtf] = v[kEtfte] = c[2];
    v[kAlpha] += c[3];
    axpy(v, c[4], alpha_of(kE, kEtf));
    axpy(v, c[5], alpha_of(kF, kFte));
    def.seeds.push_back({kAlpha, kAlpha, std::move(v)});
  }
  def.autos[Automorphism::TauE] = permutation_matrix(kTauE);
  def.autos[Automorphism::TauF] = permutation_matrix(kTauF);
  def.autos[Automorphism::Flip] = permutation_matrix(kFlip);
  return def;
}

CaseDefinition derive_c3(const CasePairData& pair) {
  if (pair.inner_ef() != q(1, 256)) throw ConstructionError("three-orbit table is only known for <e,f> = 1/2^8");
  CaseDefinition def;
  def.pair = pair;
  def.disc = 1;
  def.basis = {"e", "a", "c"};
  // a = (33/64) w with w conformal of central charge 21/22, so <a,a> = (33/64)^2 (21/44).
  def.gram[{0, 0}] = q(1, 4);
  def.gram[{1, 1}] = q(2079, 16384);
  def.gram[{2, 2}] = q(63, 512);
  auto v = [](QF x, QF y, QF z) { return std::vector<QF>{std::move(x), std::move(y), std::move(z)}; };
  def.seeds = {
      {0, 0, v(q(2), q(0), q(0))},
      {0, 1, v(q(0), q(0), q(0))},
      {0, 2, v(q(0), q(0), q(1, 16))},
      {1, 1, v(q(0), q(33, 32), q(0))},
      {1, 2, v(q(0), q(0), q(1023, 1024))},
      {2, 2, v(q(63, 2048), q(31, 32), q(0))},
  };
  QFMatrix tau_e(3, 3, {q(1), q(0), q(0), q(0), q(1), q(0), q(0), q(0), q(-1)});
  // flip fixes g = f^te = e/64 + a - c and swaps e with f = e/64 + a + c, hence
  // a = (f+g)/2 - e/64 -> (e+g)/2 - f/64 and c = (f-g)/2 -> (e-g)/2.
  const std::vector<QF> e{q(1), q(0), q(0)};
  const std::vector<QF> f{q(1, 64), q(1), q(1)};
  const std::vector<QF> g{q(1, 64), q(1), q(-1)};
  QFMatrix flip(3, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    flip(r, 0) = f[r];
    flip(r, 1) = (e[r] + g[r]) / q(2) - f[r] / q(64);
    flip(r, 2) = (e[r] - g[r]) / q(2);
  }
  def.autos[Automorphism::TauE] = tau_e;
  def.autos[Automorphism::Flip] = flip;
  def.autos[Automorphism::TauF] = flip * tau_e * flip;
  return def;
}

int stage_of(const std::vector<BasisLabel>& basis, std::size_t i, std::size_t j) {
  return (label_kind(basis[i]) == LabelKind::Ising ? 0 : 1) + (label_kind(basis[j]) == LabelKind::Ising ? 0 : 1);
}

// If column j of g has a single nonzero entry, returns (row, value).
std::optional<std::pair<std::size_t, QF>> monomial_column(const QFMatrix& g, std::size_t j) {
  std::optional<std::pair<std::size_t, QF>> hit;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    if (g(r, j).is_zero()) continue;
    if (hit) return std::nullopt;
    hit = std::make_pair(r, g(r, j));
  }
  return hit;
}

std::vector<QFMatrix> generate_group(const std::map<Automorphism, QFMatrix>& gens, std::size_t n) {
  std::vector<QFMatrix> group{QFMatrix::identity(n)};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& [name, g] : gens) {
      QFMatrix next = g * group[head];
      if (std::find(group.begin(), group.end(), next) == group.end()) {
        if (group.size() >= 1024) throw ConstructionError("automorphism group exceeds 1024 elements");
        group.push_back(std::move(next));
      }
    }
  }
  return group;
}

}  // namespace

CaseDefinition derive_definition(const CasePairData& pair, const QF& lambda2_weight) {
  if (pair.class_name == "5A") return derive_a5(pair, lambda2_weight);
  if (pair.class_name == "3C") return derive_c3(pair);
  throw ConstructionError("no finite table construction for class " + pair.class_name);
}

CaseTable build_case_table(const CaseDefinition& def) {
  const std::size_t n = def.basis.size();
  if (n == 0) throw ConstructionError("empty basis");
  const std::string id = case_id_for_class(def.pair.class_name);
  const auto& L = def.basis;

  QFMatrix gram(n, n);
  for (const auto& [ij, v] : def.gram) {
    if (ij.first >= n || ij.second >= n) throw ConstructionError("gram entry index out of range");
    gram(ij.first, ij.second) = v;
    gram(ij.second, ij.first) = v;
  }
  for (const auto& [g, m] : def.autos) {
    if (m.rows() != n || m.cols() != n) {
      throw ConstructionError("automorphism " + std::string(automorphism_name(g)) + " has wrong shape");
    }
  }
  const auto group = generate_group(def.autos, n);

  std::vector<std::optional<std::vector<QF>>> table(n * n);
  auto set = [&](std::size_t i, std::size_t j, const std::vector<QF>& v, const std::string& how) {
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      auto& slot = table[a * n + b];
      if (slot && *slot != v) {
        throw ConstructionError("closure inconsistency for " + L[a] + "*" + L[b] + " (" + how + ")");
      }
      slot = v;
    }
  };

  for (int stage = 0; stage <= 2; ++stage) {
    for (const auto& s : def.seeds) {
      if (s.left >= n || s.right >= n || s.value.size() != n) throw ConstructionError("malformed seed product");
      if (stage_of(L, s.left, s.right) == stage) set(s.left, s.right, s.value, "seed");
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          if (!table[i * n + j] || stage_of(L, i, j) != stage) continue;
          const auto value = *table[i * n + j];
          for (const auto& g : group) {
            const auto gi = monomial_column(g, i);
            const auto gj = monomial_column(g, j);
            if (!gi || !gj) continue;
            auto image = g.apply(value);
            const QF scale = gi->second * gj->second;
            for (auto& x : image) x /= scale;
            const bool fresh = !table[gi->first * n + gj->first];
            set(gi->first, gj->first, image, "automorphism image of " + L[i] + "*" + L[j]);
            changed |= fresh;
          }
        }
    }
  }

  std::vector<std::vector<QF>> product(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!table[i * n + j]) throw ConstructionError("product " + L[i] + "*" + L[j] + " is not determined");
      product[i * n + j] = *table[i * n + j];
    }

  CaseTable t(id, def.pair, def.disc, def.basis, std::move(product), gram, def.autos);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto bij = multiply(t.basis_element(i), t.basis_element(j), t);
      for (std::size_t k = 0; k < n; ++k) {
        if (inner(bij, t.basis_element(k), t) != inner(t.basis_element(j), multiply(t.basis_element(i), t.basis_element(k), t), t)) {
          throw ConstructionError("form is not invariant: <" + L[i] + "*" + L[j] + "," + L[k] + "> != <" + L[j] + "," +
                                  L[i] + "*" + L[k] + ">");
        }
      }
    }
  for (const auto& [g, m] : def.autos) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto gi = automorphism_apply(g, t.basis_element(i), t);
        const auto gj = automorphism_apply(g, t.basis_element(j), t);
        if (multiply(gi, gj, t) != automorphism_apply(g, multiply(t.basis_element(i), t.basis_element(j), t), t)) {
          throw ConstructionError(std::string(automorphism_name(g)) + " does not preserve " + L[i] + "*" + L[j]);
        }
        if (inner(gi, gj, t) != gram(i, j)) {
          throw ConstructionError(std::string(automorphism_name(g)) + " does not preserve <" + L[i] + "," + L[j] + ">");
        }
      }
  }
  return t;
}

CaseTable build_case_table(const CasePairData& pair) { return build_case_table(derive_definition(pair)); }

CaseTable standard_case(std::string_view case_id) { return build_case_table(catalog(class_for_case_id(case_id))); }

}  // namespace griesskit::griess
