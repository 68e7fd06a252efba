#include "rmspec/limits.hpp"

#include <cmath>

#include "rmspec/error.hpp"
#include "rmspec/rng.hpp"

namespace rmspec {

std::string to_string(Family f) {
  switch (f) {
    case Family::toeplitz: return "toeplitz";
    case Family::hankel: return "hankel";
    case Family::markov: return "markov";
    case Family::semicircle: return "semicircle";
    case Family::gaussian: return "gaussian";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (auto f : {Family::toeplitz, Family::hankel, Family::markov, Family::semicircle,
                 Family::gaussian}) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown family '" + name + "'");
}

std::string to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::exact: return "exact";
    case MomentMethod::mc: return "mc";
    case MomentMethod::formula: return "formula";
  }
  return "?";
}

MomentEntry MomentEntry::from_exact(Rational q) {
  MomentEntry e;
  e.value = q.get_d();
  e.exact = std::move(q);
  return e;
}

const Rational& MomentTable::exact(int order) const {
  auto it = entries.find(order);
  if (it == entries.end() || !it->second.exact) {
    throw InvalidArgument("no exact moment of order " + std::to_string(order));
  }
  return *it->second.exact;
}

namespace {

void check_order(int order) {
  if (order < 0) throw InvalidArgument("moment order must be non-negative");
}

MomentEntry markov_moment(std::size_t k, std::size_t cap) {
  std::uint64_t total = 0;
  for_each_word(k, [&](const PartitionWord& w) { total += std::uint64_t{1} << height(w); }, cap);
  return MomentEntry::from_exact(Rational(Integer(std::to_string(total))));
}

MomentEntry volume_moment(SlabKind kind, std::size_t k, const MomentOptions& opts) {
  if (opts.method == MomentMethod::exact) {
    // One volume per rotation/reversal orbit, taken at its least member.
    Rational total(0);
    for_each_word(k, [&](const PartitionWord& w) {
      const auto orbit = dihedral_orbit(w);
      if (orbit.front() != w) return;
      total += *volume_exact(build_system(w, kind), opts.volume_limits).exact *
               static_cast<long>(orbit.size());
    }, opts.word_cap);
    return MomentEntry::from_exact(std::move(total));
  }
  if (opts.method != MomentMethod::mc) {
    throw InvalidArgument("toeplitz/hankel moments need method exact or mc");
  }
  double total = 0.0;
  double variance = 0.0;
  std::uint64_t index = 0;
  for_each_word(k, [&](const PartitionWord& w) {
    const auto est = volume_mc(build_system(w, kind), opts.mc_samples,
                               derive_seed(opts.seed, index++));
    total += est.value;
    variance += est.std_error * est.std_error;
  }, opts.word_cap);
  MomentEntry e;
  e.value = total;
  e.std_error = std::sqrt(variance);
  return e;
}

// [z^degree] (sum_i m_i z^i)^power, with m given for indices 0..degree.
Rational power_coefficient(const std::vector<Rational>& m, int power, int degree) {
  std::vector<Rational> acc(static_cast<std::size_t>(degree) + 1, Rational(0));
  acc[0] = 1;
  for (int p = 0; p < power; ++p) {
    std::vector<Rational> next(acc.size(), Rational(0));
    for (int i = 0; i <= degree; ++i) {
      if (sgn(acc[i]) == 0) continue;
      for (int j = 0; i + j <= degree; ++j) {
        if (sgn(m[j]) == 0) continue;
        next[i + j] += acc[i] * m[j];
      }
    }
    acc = std::move(next);
  }
  return acc[degree];
}

}  // namespace

MomentEntry limit_moment(Family family, int order, const MomentOptions& opts) {
  check_order(order);
  if (family == Family::semicircle || family == Family::gaussian) {
    return MomentEntry::from_exact(reference_moment(family, order));
  }
  if (order == 0) return MomentEntry::from_exact(Rational(1));
  if (order % 2 != 0) return MomentEntry::from_exact(Rational(0));
  const auto k = static_cast<std::size_t>(order / 2);
  if (k > opts.word_cap) {
    throw CapacityError("order " + std::to_string(order) + " exceeds word cap 2*" +
                        std::to_string(opts.word_cap));
  }
  switch (family) {
    case Family::markov:
      if (opts.method != MomentMethod::exact) {
        throw InvalidArgument("markov moments are computed exactly; use method exact");
      }
      return markov_moment(k, opts.word_cap);
    case Family::toeplitz: return volume_moment(SlabKind::toeplitz, k, opts);
    case Family::hankel: return volume_moment(SlabKind::hankel, k, opts);
    default: break;
  }
  throw InvalidArgument("unsupported family");
}

MomentTable limit_moments(Family family, int max_order, const MomentOptions& opts) {
  check_order(max_order);
  MomentTable t;
  t.family = family;
  t.method = (family == Family::semicircle || family == Family::gaussian)
                 ? MomentMethod::formula
                 : opts.method;
  for (int order = 0; order <= max_order; ++order) {
    MomentOptions per_order = opts;
    per_order.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(order));
    t.entries[order] = limit_moment(family, order, per_order);
  }
  return t;
}

Rational reference_moment(Family family, int order) {
  check_order(order);
  if (order % 2 != 0) return Rational(0);
  const unsigned long k = static_cast<unsigned long>(order / 2);
  if (family == Family::semicircle) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * k, k);
    return Rational(c) / Rational(static_cast<long>(k + 1));
  }
  if (family == Family::gaussian) {
    Integer dfact(1);
    for (unsigned long j = 1; j <= k; ++j) dfact *= 2 * j - 1;
    return Rational(dfact);
  }
  throw InvalidArgument("reference moments exist for semicircle and gaussian only");
}

CumulantTable semicircle_cumulants(int up_to) {
  CumulantTable t;
  t.family = Family::semicircle;
  for (int order = 2; order <= up_to; order += 2) t.entries[order] = (order == 2) ? 1 : 0;
  return t;
}

CumulantTable gaussian_cumulants(int up_to, std::size_t word_cap) {
  CumulantTable t;
  t.family = Family::gaussian;
  for (int order = 2; order <= up_to; order += 2) {
    long count = 0;
    for_each_word(static_cast<std::size_t>(order / 2),
                  [&](const PartitionWord& w) { count += is_irreducible(w) ? 1 : 0; }, word_cap);
    t.entries[order] = count;
  }
  return t;
}

CumulantTable markov_cumulants(int up_to, std::size_t word_cap) {
  CumulantTable t = gaussian_cumulants(up_to, word_cap);
  t.family = Family::markov;
  for (const auto& [order, k] : semicircle_cumulants(up_to).entries) t.entries[order] += k;
  return t;
}

MomentTable cumulants_to_moments(const CumulantTable& c, int up_to) {
  check_order(up_to);
  const int n_max = up_to / 2;
  for (int r = 1; r <= n_max; ++r) {
    if (!c.entries.count(2 * r)) {
      throw InvalidArgument("missing free cumulant of order " + std::to_string(2 * r));
    }
  }
  std::vector<Rational> m(static_cast<std::size_t>(2 * n_max) + 1, Rational(0));
  m[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    Rational acc(0);
    for (int r = 1; r <= n; ++r) {
      const Rational& k = c.entries.at(2 * r);
      if (sgn(k) == 0) continue;
      acc += k * power_coefficient(m, 2 * r, 2 * n - 2 * r);
    }
    m[2 * n] = acc;
  }
  MomentTable t;
  t.family = c.family;
  t.method = MomentMethod::exact;
  for (int order = 0; order <= 2 * n_max; order += 2) {
    t.entries[order] = MomentEntry::from_exact(m[order]);
  }
  return t;
}

CumulantTable moments_to_cumulants(const MomentTable& mt, int up_to) {
  check_order(up_to);
  const int n_max = up_to / 2;
  std::vector<Rational> m(static_cast<std::size_t>(2 * n_max) + 1, Rational(0));
  m[0] = 1;
  if (auto it = mt.entries.find(0); it != mt.entries.end() && it->second.exact &&
                                    *it->second.exact != 1) {
    throw InvalidArgument("moment table is not normalized (m_0 != 1)");
  }
  for (int n = 1; n <= n_max; ++n) {
    auto it = mt.entries.find(2 * n);
    if (it == mt.entries.end() || !it->second.exact) {
      throw InvalidArgument("missing exact moment of order " + std::to_string(2 * n));
    }
    m[2 * n] = *it->second.exact;
  }
  CumulantTable c;
  c.family = mt.family;
  for (int n = 1; n <= n_max; ++n) {
    Rational k = m[2 * n];
    for (int r = 1; r < n; ++r) {
      k -= c.entries.at(2 * r) * power_coefficient(m, 2 * r, 2 * n - 2 * r);
    }
    c.entries[2 * n] = k;
  }
  return c;
}

Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(a[piv][c]) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

Rational hankel_moment_matrix_det(const MomentTable& m, int n, bool weighted) {
  if (n < 1) throw InvalidArgument("moment matrix size must be at least 1");
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n),
                                       std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int order = 2 * (i + j - 2);
      Rational entry;
      if (order == 0 && !m.entries.count(0)) {
        entry = 1;
      } else {
        auto it = m.entries.find(order);
        if (it == m.entries.end() || !it->second.exact) {
          throw InvalidArgument("insufficient moments: need exact order " +
                                std::to_string(order));
        }
        entry = *it->second.exact;
      }
      if (weighted) entry *= 2 * (i + j) - 3;
      a[i - 1][j - 1] = entry;
    }
  }
  return determinant(std::move(a));
}

}  // namespace rmspec
