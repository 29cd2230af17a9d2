#include "rigidity/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

namespace rigidity {

namespace {

RationalVec basis(int m, int i) {
  RationalVec v(m, Rational(0));
  v[i] = 1;
  return v;
}

RationalVec diff(int m, int i, int j) {
  RationalVec v(m, Rational(0));
  v[i] = 1;
  v[j] = -1;
  return v;
}

// Solves M x = b exactly; M square and invertible.
RationalVec solve_exact(std::vector<RationalVec> m, RationalVec b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].numerator() == 0) ++piv;
    if (piv == n) throw std::logic_error("solve_exact: singular system");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].numerator() == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      b[r] -= f * b[col];
    }
  }
  RationalVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

std::vector<RationalVec> system_rows(const RootSystem& rs) {
  std::vector<RationalVec> rows = rs.simple_roots;
  rows.insert(rows.end(), rs.constraints.begin(), rs.constraints.end());
  return rows;
}

}  // namespace

std::string RootSystem::name() const {
  switch (kind) {
    case RootKind::A: return "A(" + std::to_string(parameter) + ")";
    case RootKind::B: return "B(" + std::to_string(parameter) + ")";
    case RootKind::C: return "C(" + std::to_string(parameter) + ")";
    case RootKind::G2: return "G2";
  }
  return "?";
}

RootSystem root_system(RootKind kind, int n) {
  RootSystem rs;
  rs.kind = kind;
  switch (kind) {
    case RootKind::A: {
      if (n < 1) throw std::invalid_argument("root_system: A(n) needs n >= 1");
      const int m = n + 1;
      for (int i = 0; i + 1 < m; ++i) rs.simple_roots.push_back(diff(m, i, i + 1));
      rs.highest_weight = basis(m, 0);
      rs.constraints.push_back(RationalVec(m, Rational(1)));
      rs.ambient_d = m;
      break;
    }
    case RootKind::B:
    case RootKind::C: {
      if (n < 2) throw std::invalid_argument("root_system: B(n) and C(n) need n >= 2");
      for (int i = 0; i + 1 < n; ++i) rs.simple_roots.push_back(diff(n, i, i + 1));
      RationalVec last = basis(n, n - 1);
      if (kind == RootKind::C) last[n - 1] = 2;
      rs.simple_roots.push_back(last);
      rs.highest_weight = basis(n, 0);
      rs.ambient_d = kind == RootKind::C ? 2 * n : 2 * n + 1;
      break;
    }
    case RootKind::G2: {
      n = 2;
      rs.simple_roots.push_back(diff(3, 0, 1));
      rs.simple_roots.push_back({Rational(-2), Rational(1), Rational(1)});
      rs.highest_weight = diff(3, 2, 1);
      rs.constraints.push_back(RationalVec(3, Rational(1)));
      rs.ambient_d = 7;
      break;
    }
  }
  rs.parameter = n;
  rs.cartan_dim = static_cast<int>(rs.simple_roots.size());
  return rs;
}

RootSystem root_system(const std::string& name) {
  if (name == "G2") return root_system(RootKind::G2, 2);
  static const std::regex re(R"(([ABC])\((\d+)\))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw std::invalid_argument("root_system: cannot parse '" + name + "'");
  const int n = std::stoi(m[2].str());
  const char k = m[1].str()[0];
  return root_system(k == 'A' ? RootKind::A : k == 'B' ? RootKind::B : RootKind::C, n);
}

Rational apply(const RationalVec& f, const RationalVec& a) {
  if (f.size() != a.size()) throw std::invalid_argument("apply: dimension mismatch");
  Rational s(0);
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * a[i];
  return s;
}

double apply(const Vec& f, const Vec& a) {
  if (f.size() != a.size()) throw std::invalid_argument("apply: dimension mismatch");
  return f.dot(a);
}

Vec to_double(const RationalVec& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = boost::rational_cast<double>(v[i]);
  return out;
}

RationalVec barycenter(const RootSystem& rs) {
  RationalVec rhs(rs.simple_roots.size(), Rational(1));
  rhs.resize(rs.simple_roots.size() + rs.constraints.size(), Rational(0));
  return solve_exact(system_rows(rs), rhs);
}

std::vector<Rational> ratio_bounds_per_root(const RootSystem& rs) {
  const RationalVec bar = barycenter(rs);
  const Rational chi = apply(rs.highest_weight, bar);
  std::vector<Rational> out;
  for (const auto& alpha : rs.simple_roots) out.push_back(apply(alpha, bar) / chi);
  return out;
}

Rational ratio_bound(const RootSystem& rs) {
  const auto all = ratio_bounds_per_root(rs);
  for (const auto& q : all)
    if (q != all.front()) throw std::logic_error("ratio_bound: simple roots disagree at the barycenter");
  return all.front();
}

RationalVec hilbert_functional(const RootSystem& rs) {
  RationalVec f = rs.highest_weight;
  if (rs.kind != RootKind::A) return f;
  const std::size_t m = f.size();
  RationalVec iota(m);
  for (std::size_t i = 0; i < m; ++i) iota[i] = -rs.highest_weight[m - 1 - i];
  for (std::size_t i = 0; i < m; ++i) f[i] = (f[i] + iota[i]) / 2;
  return f;
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string to_string(const RationalVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + to_string(v[i]);
  return s + ")";
}

double V1(const Vec& a) {
  const auto d = a.size();
  if (d < 3) throw std::invalid_argument("V1: need d >= 3");
  if (!(a(0) > 0.0)) throw std::domain_error("V1: a1 must be positive");
  return std::min(a(0) - a(1), a(d - 2) - a(d - 1)) / a(0);
}

double V2(const Vec& a) {
  const auto d = a.size();
  if (d < 3) throw std::invalid_argument("V2: need d >= 3");
  const double den = (a(0) - a(d - 1)) / 2.0;
  if (!(den > 0.0)) throw std::domain_error("V2: a1 - a_d must be positive");
  return std::min(a(0) - a(1), a(d - 2) - a(d - 1)) / den;
}

double Vphi(const RootSystem& rs, const Vec& phi, const Vec& a) {
  const double den = apply(phi, a);
  if (!(den > 0.0)) throw std::domain_error("Vphi: phi must be positive at a");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& alpha : rs.simple_roots) best = std::min(best, apply(to_double(alpha), a));
  return best / den;
}

ChamberSampler::ChamberSampler(const RootSystem& rs) : constraint_rows_(rs.constraints.size()) {
  const auto rows = system_rows(rs);
  const auto m = static_cast<Eigen::Index>(rows.size());
  Mat sys(m, m);
  for (Eigen::Index i = 0; i < m; ++i) sys.row(i) = to_double(rows[i]).transpose();
  solve_ = sys.inverse();
}

Vec ChamberSampler::point(const Vec& root_values) const {
  if (root_values.size() != roots()) throw std::invalid_argument("ChamberSampler: wrong number of root values");
  return solve_.leftCols(roots()) * root_values;
}

ChamberMax chamber_max_sample(const ChamberFunctional& f, const RootSystem& rs, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("chamber_max_sample: need N >= 1");
  const ChamberSampler sampler(rs);
  std::mt19937_64 rng(seed);
  ChamberMax best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    Vec a = sampler.sample(rng);
    const double v = f(a);
    if (v > best.value) {
      best.value = v;
      best.argmax = std::move(a);
    }
  }
  best.samples = n;
  return best;
}

double ray_angle(const Vec& a, const Vec& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

EqualizerReport simplex_equalizer_check(const AffineFamily& phi, std::size_t n, std::uint64_t seed) {
  const Eigen::Index dim = phi.A.cols();
  if (phi.A.rows() != dim + 1 || phi.c.size() != dim + 1)
    throw std::invalid_argument("simplex_equalizer_check: need n+1 affine maps on R^n");
  EqualizerReport rep;
  for (Eigen::Index j = 0; j <= dim; ++j) {
    Mat m(dim, dim);
    Vec rhs(dim);
    for (Eigen::Index i = 0, r = 0; i <= dim; ++i) {
      if (i == j) continue;
      m.row(r) = phi.A.row(i);
      rhs(r++) = -phi.c(i);
    }
    Eigen::FullPivLU<Mat> lu(m);
    if (!lu.isInvertible()) throw UnboundedRegion("simplex_equalizer_check: facets are not in general position");
    Vec v = lu.solve(rhs);
    if (!(phi.A.row(j).dot(v) + phi.c(j) > 0.0))
      throw UnboundedRegion("simplex_equalizer_check: common nonnegativity region is not a bounded simplex");
    rep.vertices.push_back(std::move(v));
  }
  Mat sys(dim + 1, dim + 1);
  sys.leftCols(dim) = phi.A;
  sys.col(dim).setConstant(-1.0);
  const Vec sol = sys.fullPivLu().solve(Vec(-phi.c));
  rep.equal_point = sol.head(dim);
  rep.equal_value = sol(dim);

  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  rep.sampled_max = -std::numeric_limits<double>::infinity();
  Vec w(dim + 1);
  for (std::size_t s = 0; s < n; ++s) {
    double total = 0.0;
    for (Eigen::Index i = 0; i <= dim; ++i) total += (w(i) = e(rng));
    Vec x = Vec::Zero(dim);
    for (Eigen::Index i = 0; i <= dim; ++i) x += (w(i) / total) * rep.vertices[i];
    const double v = (phi.A * x + phi.c).minCoeff();
    if (v > rep.sampled_max) {
      rep.sampled_max = v;
      rep.sampled_argmax = std::move(x);
    }
  }
  rep.gap = rep.equal_value - rep.sampled_max;
  return rep;
}

std::optional<bool> remark_a2_holds(const Vec& a) {
  const auto d = a.size();
  if (d < 3) throw std::invalid_argument("remark_a2_holds: need d >= 3");
  if (!(a(1) < 0.0)) return std::nullopt;
  return a(0) - a(1) > a(d - 2) - a(d - 1);
}

RemarkA2Report remark_a2_check(std::size_t samples, int d, std::uint64_t seed) {
  if (d < 3) throw std::invalid_argument("remark_a2_check: need d >= 3");
  const ChamberSampler sampler(root_system(RootKind::A, d - 1));
  std::mt19937_64 rng(seed);
  RemarkA2Report rep;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto verdict = remark_a2_holds(sampler.sample(rng));
    ++rep.sampled;
    if (!verdict) continue;
    ++rep.checked;
    if (!*verdict) ++rep.violations;
  }
  return rep;
}

}  // namespace rigidity
