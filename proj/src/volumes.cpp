#include "rmspec/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rmspec/error.hpp"
#include "rmspec/polytope.hpp"
#include "rmspec/rng.hpp"

namespace rmspec {

std::string to_string(SlabKind kind) {
  switch (kind) {
    case SlabKind::toeplitz: return "toeplitz";
    case SlabKind::hankel: return "hankel";
    case SlabKind::general: return "general";
  }
  return "?";
}

std::string to_string(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::exact: return "exact";
    case VolumeMethod::mc: return "mc";
    case VolumeMethod::grid: return "grid";
  }
  return "?";
}

AffineForm AffineForm::variable(std::size_t v, std::size_t num_vars) {
  AffineForm f{Rational(0), std::vector<Rational>(num_vars)};
  f.coeffs.at(v) = 1;
  return f;
}

bool AffineForm::is_constant() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Rational& c) { return sgn(c) == 0; });
}

bool AffineForm::is_zero() const { return sgn(constant) == 0 && is_constant(); }

AffineForm& AffineForm::operator+=(const AffineForm& o) {
  if (coeffs.size() < o.coeffs.size()) coeffs.resize(o.coeffs.size());
  constant += o.constant;
  for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& o) {
  if (coeffs.size() < o.coeffs.size()) coeffs.resize(o.coeffs.size());
  constant -= o.constant;
  for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

std::string AffineForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t v = 0; v < coeffs.size(); ++v) {
    const Rational& c = coeffs[v];
    if (sgn(c) == 0) continue;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    const Rational mag = abs(c);
    if (mag != 1) os << mag.get_str();
    os << "x" << v;
    first = false;
  }
  if (sgn(constant) != 0 || first) {
    if (first) {
      os << constant.get_str();
    } else {
      os << (sgn(constant) < 0 ? " - " : " + ") << Rational(abs(constant)).get_str();
    }
  }
  return os.str();
}

bool SlabSystem::closure_drops_dimension() const {
  return closure_.has_value() && !closure_->is_zero();
}

std::vector<std::pair<Rational, std::vector<Rational>>>
SlabSystem::distinct_constraints() const {
  std::vector<std::pair<Rational, std::vector<Rational>>> rows;
  for (const auto& [var, form] : dependents_) {
    std::vector<Rational> row(free_.size());
    for (std::size_t j = 0; j < free_.size(); ++j) row[j] = form.coeffs[free_[j]];
    // A bare free variable is already confined by the cube.
    const bool unit = sgn(form.constant) == 0 &&
                      std::count_if(row.begin(), row.end(),
                                    [](const Rational& c) { return sgn(c) != 0; }) == 1 &&
                      std::find(row.begin(), row.end(), Rational(1)) != row.end();
    if (unit) continue;
    std::pair<Rational, std::vector<Rational>> entry{form.constant, std::move(row)};
    if (std::find(rows.begin(), rows.end(), entry) == rows.end()) {
      rows.push_back(std::move(entry));
    }
  }
  return rows;
}

SlabSystem SlabSystem::general(std::size_t num_free,
                               const std::vector<AffineForm>& forms) {
  SlabSystem s;
  s.kind_ = SlabKind::general;
  const std::size_t nv = num_free + forms.size();
  for (std::size_t v = 0; v < num_free; ++v) {
    s.free_.push_back(v);
    s.exprs_.push_back(AffineForm::variable(v, nv));
  }
  for (std::size_t d = 0; d < forms.size(); ++d) {
    if (forms[d].coeffs.size() > num_free) {
      throw InvalidArgument("general slab form refers to a non-free variable");
    }
    AffineForm f{forms[d].constant, std::vector<Rational>(nv)};
    std::copy(forms[d].coeffs.begin(), forms[d].coeffs.end(), f.coeffs.begin());
    s.dependents_.emplace_back(num_free + d, f);
    s.exprs_.push_back(std::move(f));
  }
  return s;
}

SlabSystem build_system(const PartitionWord& w, SlabKind kind) {
  if (kind == SlabKind::general) {
    throw InvalidArgument("build_system needs toeplitz or hankel kind");
  }
  const std::size_t k = w.half_length();
  const std::size_t nv = 2 * k + 1;
  SlabSystem s;
  s.kind_ = kind;
  s.k_ = k;
  s.exprs_.assign(nv, AffineForm{});
  std::vector<bool> known(nv, false);

  // Path variable x_v sits just after letter position v (1-based), so a
  // letter at zero-based positions p < q is flanked by x_p, x_{p+1} and
  // x_q, x_{q+1}.
  auto occ = w.occurrences();
  auto set_free = [&](std::size_t v) {
    s.exprs_[v] = AffineForm::variable(v, nv);
    known[v] = true;
    s.free_.push_back(v);
  };
  auto need = [&](std::size_t v) -> const AffineForm& {
    if (!known[v]) throw std::logic_error("substitution order violated");
    return s.exprs_[v];
  };

  if (kind == SlabKind::toeplitz) {
    set_free(0);
    for (const auto& [p, q] : occ) set_free(p + 1);
    std::sort(occ.begin(), occ.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (const auto& [p, q] : occ) {
      AffineForm f = need(q) - need(p + 1) + need(p);
      s.exprs_[q + 1] = f;
      known[q + 1] = true;
      s.dependents_.emplace_back(q + 1, std::move(f));
    }
  } else {
    for (const auto& [p, q] : occ) set_free(q);
    set_free(2 * k);
    std::sort(occ.begin(), occ.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [p, q] : occ) {
      AffineForm f = need(q + 1) + need(q) - need(p + 1);
      s.exprs_[p] = f;
      known[p] = true;
      s.dependents_.emplace_back(p, std::move(f));
    }
    s.closure_ = s.exprs_[0] - s.exprs_[2 * k];
  }
  std::sort(s.free_.begin(), s.free_.end());
  return s;
}

namespace {

VolumeEstimate exact_zero(VolumeMethod method) {
  VolumeEstimate est;
  est.method = method;
  est.exact = Rational(0);
  return est;
}

}  // namespace

VolumeEstimate volume_exact(const SlabSystem& s, const VolumeLimits& limits) {
  if (s.closure_drops_dimension()) return exact_zero(VolumeMethod::exact);
  const std::size_t dim = s.free_vars().size();
  if (dim > limits.max_exact_dim) {
    throw CapacityError("exact volume in dimension " + std::to_string(dim) +
                        " exceeds cap " + std::to_string(limits.max_exact_dim) +
                        "; use the Monte Carlo method");
  }
  std::vector<HalfSpace> rows;
  for (std::size_t j = 0; j < dim; ++j) {
    HalfSpace upper{std::vector<Rational>(dim), Rational(1)};
    upper.normal[j] = 1;
    HalfSpace lower{std::vector<Rational>(dim), Rational(0)};
    lower.normal[j] = -1;
    rows.push_back(std::move(upper));
    rows.push_back(std::move(lower));
  }
  for (const auto& [c, a] : s.distinct_constraints()) {
    HalfSpace upper{a, Rational(1 - c)};
    HalfSpace lower{a, c};
    for (auto& x : lower.normal) x = -x;
    rows.push_back(std::move(upper));
    rows.push_back(std::move(lower));
  }
  VolumeEstimate est;
  est.method = VolumeMethod::exact;
  est.exact = polytope_volume(rows, dim);
  est.value = est.exact->get_d();
  return est;
}

VolumeEstimate volume_mc(const SlabSystem& s, std::uint64_t samples,
                         std::uint64_t seed) {
  if (samples == 0) throw InvalidArgument("volume_mc needs at least one sample");
  if (s.closure_drops_dimension()) return exact_zero(VolumeMethod::mc);

  const std::size_t dim = s.free_vars().size();
  struct Row {
    double constant;
    std::vector<double> coeffs;
  };
  std::vector<Row> rows;
  for (const auto& [c, a] : s.distinct_constraints()) {
    Row r{c.get_d(), {}};
    for (const auto& x : a) r.coeffs.push_back(x.get_d());
    rows.push_back(std::move(r));
  }

  CounterEngine rng(seed);
  std::vector<double> point(dim);
  std::uint64_t hits = 0;
  for (std::uint64_t n = 0; n < samples; ++n) {
    for (auto& x : point) x = rng.uniform();
    bool inside = true;
    for (const auto& r : rows) {
      double v = r.constant;
      for (std::size_t j = 0; j < dim; ++j) v += r.coeffs[j] * point[j];
      if (v < 0.0 || v > 1.0) {
        inside = false;
        break;
      }
    }
    hits += inside ? 1 : 0;
  }
  VolumeEstimate est;
  est.method = VolumeMethod::mc;
  est.samples = samples;
  est.value = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
  return est;
}

VolumeEstimate volume_grid(const SlabSystem& s, std::uint64_t subdivisions,
                           const VolumeLimits& limits) {
  if (subdivisions == 0) throw InvalidArgument("volume_grid needs subdivisions >= 1");
  if (s.closure_drops_dimension()) return exact_zero(VolumeMethod::grid);

  const std::size_t dim = s.free_vars().size();
  std::uint64_t points = 1;
  for (std::size_t j = 0; j < dim; ++j) {
    if (points > limits.max_grid_points / subdivisions) {
      throw CapacityError("grid of " + std::to_string(subdivisions) + "^" +
                          std::to_string(dim) + " points exceeds budget");
    }
    points *= subdivisions;
  }

  // Scale each row by the lcm L of its denominators and by 2s so that the
  // midpoint test c + a.y in [0, 1], y_j = (2 i_j + 1) / (2s), is exact in
  // integers: 2sLc + sum L a_j (2 i_j + 1) in [0, 2sL].
  struct Row {
    __int128 constant;
    __int128 upper;
    std::vector<__int128> coeffs;
  };
  std::vector<Row> rows;
  const auto two_s = static_cast<__int128>(2 * subdivisions);
  for (const auto& [c, a] : s.distinct_constraints()) {
    Integer lcm = c.get_den();
    for (const auto& x : a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    if (!lcm.fits_slong_p()) throw CapacityError("grid coefficients too large");
    const long L = lcm.get_si();
    Row r{};
    const Rational cs = c * L;
    r.constant = static_cast<__int128>(cs.get_num().get_si()) * two_s;
    r.upper = two_s * L;
    for (const auto& x : a) {
      const Rational xs = x * L;
      r.coeffs.push_back(xs.get_num().get_si());
    }
    rows.push_back(std::move(r));
  }

  std::vector<std::uint64_t> idx(dim, 0);
  std::uint64_t hits = 0;
  for (std::uint64_t n = 0; n < points; ++n) {
    bool inside = true;
    for (const auto& r : rows) {
      __int128 v = r.constant;
      for (std::size_t j = 0; j < dim; ++j) {
        v += r.coeffs[j] * static_cast<__int128>(2 * idx[j] + 1);
      }
      if (v < 0 || v > r.upper) {
        inside = false;
        break;
      }
    }
    hits += inside ? 1 : 0;
    for (std::size_t j = 0; j < dim; ++j) {
      if (++idx[j] < subdivisions) break;
      idx[j] = 0;
    }
  }
  VolumeEstimate est;
  est.method = VolumeMethod::grid;
  est.samples = points;
  est.value = static_cast<double>(hits) / static_cast<double>(points);
  return est;
}

}  // namespace rmspec
