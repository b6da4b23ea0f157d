#include "griesskit/minimal.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace griesskit::minimal {

namespace bmp = boost::multiprecision;

MinimalModel::MinimalModel(int p_, int q_) : p(p_), q(q_) {
  if (p < 2 || q <= p) throw LabelError("minimal model needs 2 <= p < q");
  if (std::gcd(p, q) != 1) throw LabelError("minimal model needs coprime p, q");
}

Rational MinimalModel::central_charge() const {
  Rational c = Rational(1) - Rational(6 * (p - q) * (p - q), p * q);
  c.canonicalize();
  return c;
}

Rational kac_weight(const MinimalModel& m, int r, int s) {
  const long a = static_cast<long>(m.q) * r - static_cast<long>(m.p) * s;
  const long b = m.p - m.q;
  Rational h(a * a - b * b, 4L * m.p * m.q);
  h.canonicalize();
  return h;
}

KacLabel KacLabel::make(const MinimalModel& m, int r, int s) {
  if (r < 1 || r >= m.p || s < 1 || s >= m.q) {
    throw LabelError("Kac label (" + std::to_string(r) + "," + std::to_string(s) + ") out of range for M(" +
                     std::to_string(m.p) + "," + std::to_string(m.q) + ")");
  }
  if (m.q * r - m.p * s < 0) {
    r = m.p - r;
    s = m.q - s;
  }
  return {m, r, s};
}

Rational KacLabel::h() const { return kac_weight(model, r, s); }

const std::vector<KacLabel>& kac_table(const MinimalModel& m) {
  static std::mutex mu;
  static std::map<MinimalModel, std::unique_ptr<const std::vector<KacLabel>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[m];
  if (!slot) {
    std::vector<KacLabel> labels;
    for (int r = 1; r < m.p; ++r)
      for (int s = 1; s < m.q; ++s) {
        if (m.q * r - m.p * s > 0) labels.push_back({m, r, s});
      }
    slot = std::make_unique<const std::vector<KacLabel>>(std::move(labels));
  }
  return *slot;
}

ModuleLabel ModuleLabel::vacuum(const std::vector<MinimalModel>& models) {
  ModuleLabel out;
  for (const auto& m : models) out.factors.push_back(KacLabel::vacuum(m));
  return out;
}

std::vector<MinimalModel> ModuleLabel::models() const {
  std::vector<MinimalModel> out;
  for (const auto& f : factors) out.push_back(f.model);
  return out;
}

Rational ModuleLabel::weight() const {
  Rational w(0);
  for (const auto& f : factors) w += f.h();
  return w;
}

bool ModuleLabel::is_vacuum() const {
  return std::all_of(factors.begin(), factors.end(), [](const KacLabel& k) { return k.is_vacuum(); });
}

std::string to_string(const KacLabel& x) { return x.h().get_str(); }

std::string to_string(const ModuleLabel& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.factors.size(); ++i) {
    if (i) out += ",";
    out += to_string(x.factors[i]);
  }
  return out + "]";
}

ModuleLabel parse_module_label(const std::vector<MinimalModel>& models, std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw ParseError("unterminated module label '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = text.find(',');
    parts.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (parts.size() != models.size()) {
    throw ParseError("module label has " + std::to_string(parts.size()) + " weights, expected " +
                     std::to_string(models.size()));
  }
  ModuleLabel out;
  for (std::size_t i = 0; i < parts.size(); ++i) out.factors.push_back(kac_lookup(models[i], parse_rational(parts[i])));
  return out;
}

MinimalModel identify_model(const QF& c, int limit) {
  if (!c.is_rational()) throw LabelError("central charge " + griesskit::to_string(c) + " is not rational");
  for (int sum = 5; sum <= limit; ++sum) {
    for (int p = 2; 2 * p < sum; ++p) {
      const int q = sum - p;
      if (std::gcd(p, q) != 1) continue;
      MinimalModel m(p, q);
      if (m.central_charge() == c.rat()) return m;
    }
  }
  throw LabelError("no minimal model with central charge " + griesskit::to_string(c) + " and p+q <= " +
                   std::to_string(limit));
}

KacLabel kac_lookup(const MinimalModel& m, const Rational& h) {
  for (const auto& k : kac_table(m)) {
    if (k.h() == h) return k;
  }
  throw LabelError("weight " + griesskit::to_string(h) + " is not in the Kac table of M(" + std::to_string(m.p) + "," +
                   std::to_string(m.q) + ")");
}

std::vector<KacLabel> fuse(const KacLabel& x, const KacLabel& y) {
  if (!(x.model == y.model)) throw LabelError("cannot fuse labels of different minimal models");
  const auto& m = x.model;
  std::vector<KacLabel> out;
  const int r_hi = std::min(x.r + y.r - 1, 2 * m.p - 1 - x.r - y.r);
  const int s_hi = std::min(x.s + y.s - 1, 2 * m.q - 1 - x.s - y.s);
  for (int r = std::abs(x.r - y.r) + 1; r <= r_hi; r += 2)
    for (int s = std::abs(x.s - y.s) + 1; s <= s_hi; s += 2) out.push_back(KacLabel::make(m, r, s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ModuleLabel> fuse_tensor(const ModuleLabel& x, const ModuleLabel& y) {
  if (x.factors.size() != y.factors.size()) throw LabelError("module labels have different numbers of factors");
  std::vector<ModuleLabel> out{ModuleLabel{}};
  for (std::size_t i = 0; i < x.factors.size(); ++i) {
    const auto part = fuse(x.factors[i], y.factors[i]);
    std::vector<ModuleLabel> next;
    for (const auto& prefix : out)
      for (const auto& k : part) {
        auto m = prefix;
        m.factors.push_back(k);
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- quantum dimensions --------------------------------------------------------

namespace {

template <unsigned Bits>
using Real = bmp::number<bmp::cpp_bin_float<Bits, bmp::digit_base_2>, bmp::et_off>;

// S_{x,0}/S_{0,0} = (-1)^{r+s} sin(pi q r/p) sin(pi p s/q) / (sin(pi q/p) sin(pi p/q)).
template <class T>
T qdim_in(const KacLabel& x) {
  const T pi = boost::math::constants::pi<T>();
  const auto& m = x.model;
  const T num = sin(pi * T(m.q * x.r) / T(m.p)) * sin(pi * T(m.p * x.s) / T(m.q));
  const T den = sin(pi * T(m.q) / T(m.p)) * sin(pi * T(m.p) / T(m.q));
  const T v = num / den;
  return (x.r + x.s) % 2 == 0 ? v : T(-v);
}

int tier_for(int bits) {
  if (bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
  if (bits <= 64) return 64;
  if (bits <= 128) return 128;
  if (bits <= 256) return 256;
  throw std::invalid_argument("precision above 256 bits is not supported");
}

}  // namespace

HighReal qdim_numeric(const KacLabel& x, int precision_bits) {
  switch (tier_for(precision_bits)) {
    case 64: return HighReal(qdim_in<Real<64>>(x));
    case 128: return HighReal(qdim_in<Real<128>>(x));
    default: return qdim_in<HighReal>(x);
  }
}

HighReal qdim_numeric(const ModuleLabel& x, int precision_bits) {
  HighReal v = 1;
  for (const auto& f : x.factors) v *= qdim_numeric(f, precision_bits);
  return v;
}

namespace {

template <class Label>
QDim qdim_impl(const Label& x, const QDimOptions& opts) {
  QDim out;
  for (int bits = tier_for(opts.precision_bits); bits <= 256; bits *= 2) {
    out.numeric = qdim_numeric(x, bits);
    out.precision_bits = bits;
    try {
      out.exact = qf_identify(out.numeric, opts.discs, opts.identify);
      out.note.clear();
      return out;
    } catch (const IdentifyError& err) {
      out.note = err.what();
      if (err.kind() == IdentifyError::Kind::Ambiguous) return out;
    }
  }
  return out;
}

}  // namespace

QDim qdim(const KacLabel& x, const QDimOptions& opts) { return qdim_impl(x, opts); }
QDim qdim(const ModuleLabel& x, const QDimOptions& opts) { return qdim_impl(x, opts); }

bool is_simple_current(const ModuleLabel& x) {
  const auto d = qdim(x);
  return d.exact && *d.exact == QF(1);
}

}  // namespace griesskit::minimal
