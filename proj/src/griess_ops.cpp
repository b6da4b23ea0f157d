#include "griesskit/griess.hpp"

#include <algorithm>

namespace griesskit::griess {

namespace {

void require_case(const GriessElement& x, const CaseTable& t) {
  if (x.case_id != t.id() || x.dim() != t.dim()) {
    throw CaseMismatch("element of case '" + x.case_id + "' used with table '" + t.id() + "'");
  }
}

}  // namespace

GriessElement multiply(const GriessElement& x, const GriessElement& y, const CaseTable& t) {
  require_case(x, t);
  require_case(y, t);
  auto out = t.zero();
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (x.coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y.coords[j].is_zero()) continue;
      const QF s = x.coords[i] * y.coords[j];
      const auto& p = t.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (!p[k].is_zero()) out.coords[k] += s * p[k];
      }
    }
  }
  return out;
}

QF inner(const GriessElement& x, const GriessElement& y, const CaseTable& t) {
  require_case(x, t);
  require_case(y, t);
  QF acc;
  const auto gy = t.gram().apply(y.coords);
  for (std::size_t i = 0; i < t.dim(); ++i) {
    if (!x.coords[i].is_zero() && !gy[i].is_zero()) acc += x.coords[i] * gy[i];
  }
  return acc;
}

GriessElement alpha(const GriessElement& x, const GriessElement& y, const CaseTable& t) {
  return multiply(x, y, t) - QF::frac(1, 16) * (x + y);
}

GriessElement automorphism_apply(Automorphism g, const GriessElement& x, const CaseTable& t) {
  require_case(x, t);
  const auto it = t.autos().find(g);
  if (it == t.autos().end()) {
    throw std::invalid_argument("automorphism " + std::string(automorphism_name(g)) + " not defined for case " + t.id());
  }
  return t.element(it->second.apply(x.coords));
}

QFMatrix adjoint_matrix(const GriessElement& x, const CaseTable& t) {
  require_case(x, t);
  const std::size_t n = t.dim();
  QFMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = multiply(x, t.basis_element(j), t);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col.coords[i];
  }
  return m;
}

std::vector<GriessElement> eigenspace(const GriessElement& x, const QF& lam, const CaseTable& t) {
  return joint_eigenspace({{x, lam}}, t);
}

std::vector<GriessElement> joint_eigenspace(const std::vector<std::pair<GriessElement, QF>>& ops, const CaseTable& t) {
  std::vector<QFMatrix> blocks;
  const auto I = QFMatrix::identity(t.dim());
  for (const auto& [x, lam] : ops) {
    QFMatrix shift = I;
    for (std::size_t i = 0; i < t.dim(); ++i) shift(i, i) = lam;
    blocks.push_back(adjoint_matrix(x, t) - shift);
  }
  std::vector<GriessElement> out;
  for (auto& k : mat_reduce(vstack(blocks)).kernel) out.push_back(t.element(std::move(k)));
  return out;
}

std::optional<std::vector<QF>> span_coordinates(const std::vector<GriessElement>& basis, const GriessElement& w) {
  if (basis.empty()) return w.is_zero() ? std::optional<std::vector<QF>>(std::vector<QF>{}) : std::nullopt;
  const std::size_t n = w.dim();
  const std::size_t m = basis.size();
  QFMatrix a(n, m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    if (basis[j].dim() != n) throw CaseMismatch("span basis and vector differ in dimension");
    for (std::size_t i = 0; i < n; ++i) a(i, j) = basis[j].coords[i];
  }
  for (std::size_t i = 0; i < n; ++i) a(i, m) = -w.coords[i];
  for (const auto& k : mat_reduce(a).kernel) {
    if (k[m].is_zero()) continue;
    std::vector<QF> c(m);
    for (std::size_t j = 0; j < m; ++j) c[j] = k[j] / k[m];
    return c;
  }
  return std::nullopt;
}

bool is_conformal(const GriessElement& x, const CaseTable& t) {
  return !x.is_zero() && multiply(x, x, t) == QF(2) * x;
}

std::vector<GriessElement> reference_zero_basis(const CaseTable& t) {
  std::vector<GriessElement> out;
  if (t.id() == "c3") {
    out.push_back(t["a"]);
  } else if (t.id() == "a5") {
    const QF k = QF::frac(32, 7);
    out.push_back(QF::frac(-1, 8) * t["e"] + t["f"] + t["f^te"] - k * t["alpha(e,f)"]);
    out.push_back(QF::frac(1, 32) * t["e"] + t["e^tf"] + t["e^tfte"] + k * t["alpha(e,f)"]);
  } else {
    throw std::invalid_argument("no reference basis for case " + t.id());
  }
  for (const auto& x : out) {
    if (!multiply(t["e"], x, t).is_zero()) throw ConstructionError("reference vector is not in E^e(0)");
  }
  return out;
}

// ---- conformal search ------------------------------------------------------------

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Divide by (x - r); r must be a root.
Poly deflate(const Poly& p, const Rational& r) {
  Poly out(p.size() - 1);
  Rational carry(0);
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    carry = carry * r + p[i + 1];
    out[i] = carry;
  }
  return out;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  if (n > mpz_class("1000000000000")) throw ConformalSearchError("proportionality polynomial coefficients too large");
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<Rational> rational_roots(Poly p) {
  std::vector<Rational> roots;
  trim(p);
  while (p.size() > 1 && sgn(p.front()) == 0) {
    roots.emplace_back(0);
    p.erase(p.begin());
  }
  if (p.size() <= 1) return roots;
  mpz_class lcm = 1;
  for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : p) z.push_back(mpz_class(c * lcm));
  for (const auto& num : positive_divisors(z.front())) {
    for (const auto& den : positive_divisors(z.back())) {
      for (int s : {1, -1}) {
        Rational r(num * s, den);
        r.canonicalize();
        if (sgn(eval(p, r)) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// n = s^2 * d with d squarefree.
std::pair<mpz_class, mpz_class> squarefree_split(mpz_class n) {
  if (n > mpz_class("1000000000000000000")) throw ConformalSearchError("discriminant too large to factor");
  mpz_class s = 1, d = 1;
  for (mpz_class p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      d *= p;
    }
  }
  d *= n;
  return {s, d};
}

}  // namespace

std::vector<ConformalVector> conformal_search(const std::vector<GriessElement>& subspace, const CaseTable& t) {
  for (const auto& x : subspace) require_case(x, t);
  std::vector<ConformalVector> out;
  auto accept = [&](const GriessElement& w, const QF& mu, std::optional<QF> k) {
    if (mu.is_zero()) return;
    const auto x = (QF(2) / mu) * w;
    if (!is_conformal(x, t)) throw ConformalSearchError("internal: rescaled vector is not conformal");
    out.push_back({x, QF(2) * inner(x, x, t), std::move(k)});
  };

  if (subspace.size() == 1) {
    const auto& w = subspace.front();
    if (w.is_zero()) throw ConformalSearchError("zero spanning vector");
    const auto c = span_coordinates({w}, multiply(w, w, t));
    if (!c) throw ConformalSearchError("square of the spanning vector leaves its span; no conformal vector");
    accept(w, (*c)[0], std::nullopt);
    if (out.empty()) throw ConformalSearchError("spanning vector squares to zero; no conformal vector");
    return out;
  }
  if (subspace.size() != 2) throw ConformalSearchError("conformal search supports spans of dimension 1 or 2");

  const auto& u = subspace[0];
  const auto& v = subspace[1];
  const auto uu = span_coordinates(subspace, multiply(u, u, t));
  const auto uv = span_coordinates(subspace, multiply(u, v, t));
  const auto vv = span_coordinates(subspace, multiply(v, v, t));
  if (!uu || !uv || !vv) throw ConformalSearchError("span is not closed under the product");
  const QF &a1 = (*uu)[0], &a2 = (*uu)[1], &b1 = (*uv)[0], &b2 = (*uv)[1], &c1 = (*vv)[0], &c2 = (*vv)[1];

  // (u+kv)^2 = (a1 + 2k b1 + k^2 c1) u + (a2 + 2k b2 + k^2 c2) v must be proportional to u + kv.
  const std::vector<QF> cubic{-a2, a1 - QF(2) * b2, QF(2) * b1 - c2, c1};
  Poly p;
  for (const auto& c : cubic) {
    if (!c.is_rational()) throw ConformalSearchError("proportionality polynomial has irrational coefficients");
    p.push_back(c.rat());
  }
  trim(p);
  if (p.empty()) throw ConformalSearchError("every direction is proportional; infinitely many candidates");

  auto mu_of = [&](const QF& k) { return a1 + QF(2) * k * b1 + k * k * c1; };
  auto along = [&](const QF& k) { return u + k * v; };

  const auto rat = rational_roots(p);
  Poly rest = p;
  for (const auto& r : rat) {
    while (rest.size() > 1 && sgn(eval(rest, r)) == 0) rest = deflate(rest, r);
  }
  trim(rest);
  if (rest.size() == 3) {
    const Rational& A = rest[2];
    const Rational& B = rest[1];
    const Rational& C = rest[0];
    Rational disc = B * B - 4 * A * C;
    disc.canonicalize();
    if (sgn(disc) > 0) {
      const mpz_class prod = disc.get_num() * disc.get_den();
      const auto [s, d] = squarefree_split(prod);
      if (d == 1) throw ConformalSearchError("internal: rational root missed by the root search");
      const std::int64_t dd = d.get_si();
      if (t.disc() != dd) {
        throw ConformalSearchError("conformal vectors need sqrt(" + d.get_str() + "), outside the case field sqrt(" +
                                   std::to_string(t.disc()) + ")");
      }
      const Rational half_root = Rational(s, disc.get_den()) / (2 * A);
      const Rational centre = -B / (2 * A);
      for (int sign : {1, -1}) {
        const QF k(centre, half_root * sign, dd);
        accept(along(k), mu_of(k), k);
      }
    }
  }
  for (const auto& r : rat) accept(along(QF(r)), mu_of(QF(r)), QF(r));
  if (c1.is_zero()) accept(v, c2, std::nullopt);
  if (out.empty()) throw ConformalSearchError("no nonzero solution of x.x = 2x in the span");
  return out;
}

std::string format_element(const GriessElement& x, const CaseTable& t) {
  require_case(x, t);
  std::string out;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const auto& c = x.coords[i];
    if (c.is_zero()) continue;
    if (c.is_rational()) {
      const bool neg = sgn(c.rat()) < 0;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      const Rational a = abs(c.rat());
      if (a != 1) out += a.get_str() + "*";
    } else {
      out += (out.empty() ? "(" : " + (") + to_display(c) + ")*";
    }
    out += t.basis()[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace griesskit::griess
