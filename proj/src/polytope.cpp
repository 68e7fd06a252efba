#include "rmspec/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>

#include "rmspec/error.hpp"

namespace rmspec {

namespace {

struct Overflow {};

// Reduced fraction of 64-bit integers; every operation either stays exact or
// throws Overflow, in which case the caller redoes the work with GMP.
class CheckedRational {
public:
  CheckedRational() = default;
  CheckedRational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)

  static CheckedRational from(const Rational& q) {
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) throw Overflow{};
    CheckedRational r;
    r.num_ = q.get_num().get_si();
    r.den_ = q.get_den().get_si();
    return r;
  }

  Rational to_rational() const {
    Rational q(static_cast<long>(num_), static_cast<long>(den_));
    q.canonicalize();
    return q;
  }

  friend int sgn(const CheckedRational& a) { return (a.num_ > 0) - (a.num_ < 0); }
  friend CheckedRational abs(const CheckedRational& a) {
    return make(a.num_ < 0 ? -static_cast<__int128>(a.num_) : a.num_, a.den_);
  }
  CheckedRational operator-() const { return make(-static_cast<__int128>(num_), den_); }

  friend CheckedRational operator+(const CheckedRational& a, const CheckedRational& b) {
    if (a.den_ == b.den_) return make(static_cast<__int128>(a.num_) + b.num_, a.den_);
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend CheckedRational operator-(const CheckedRational& a, const CheckedRational& b) {
    return a + (-b);
  }
  friend CheckedRational operator*(const CheckedRational& a, const CheckedRational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend CheckedRational operator/(const CheckedRational& a, const CheckedRational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    __int128 n = static_cast<__int128>(a.num_) * b.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.num_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return make(n, d);
  }
  CheckedRational& operator+=(const CheckedRational& o) { return *this = *this + o; }
  CheckedRational& operator-=(const CheckedRational& o) { return *this = *this - o; }
  CheckedRational& operator/=(const CheckedRational& o) { return *this = *this / o; }

  friend bool operator==(const CheckedRational&, const CheckedRational&) = default;
  friend bool operator<(const CheckedRational& a, const CheckedRational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static CheckedRational make(__int128 n, __int128 d) {
    if (n == 0) return CheckedRational(0);
    const __int128 g = gcd128(n, d);
    n /= g;
    d /= g;
    constexpr __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim) throw Overflow{};
    CheckedRational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational to_rational(const Rational& q) { return q; }
Rational to_rational(const CheckedRational& q) { return q.to_rational(); }

template <class Q>
Q convert(const Rational& q) {
  if constexpr (std::is_same_v<Q, Rational>) {
    return q;
  } else {
    return Q::from(q);
  }
}

template <class Q>
class LasserreSolver {
public:
  LasserreSolver(const std::vector<HalfSpace>& rows, std::size_t dim)
      : dim_(dim), m_(rows.size()), a_(rows.size() * dim), b_(rows.size()) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) a_[i * dim_ + j] = convert<Q>(rows[i].normal[j]);
      b_[i] = convert<Q>(rows[i].bound);
    }
  }

  Q face_volume(std::uint64_t tight) {
    if (auto it = memo_.find(tight); it != memo_.end()) return it->second;
    Q v = compute(tight);
    memo_.emplace(tight, v);
    return v;
  }

private:
  struct Reduced {
    std::vector<Q> dir;
    Q bound;
    std::size_t index;
  };

  Q compute(std::uint64_t tight) {
    const std::size_t width = dim_ + 1;
    // Reduced row-echelon form of the tight rows, augmented with the bound.
    std::vector<Q> ech;
    std::size_t nrows = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!(tight >> i & 1u)) continue;
      ech.insert(ech.end(), a_.begin() + i * dim_, a_.begin() + (i + 1) * dim_);
      ech.push_back(b_[i]);
      ++nrows;
    }
    auto at = [&](std::size_t r, std::size_t c) -> Q& { return ech[r * width + c]; };
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(dim_, false);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < dim_ && rank < nrows; ++c) {
      std::size_t sel = rank;
      while (sel < nrows && sgn(at(sel, c)) == 0) ++sel;
      if (sel == nrows) continue;
      if (sel != rank) {
        std::swap_ranges(ech.begin() + sel * width, ech.begin() + (sel + 1) * width,
                         ech.begin() + rank * width);
      }
      const Q lead = at(rank, c);
      for (std::size_t j = 0; j < width; ++j) at(rank, j) /= lead;
      for (std::size_t r = 0; r < nrows; ++r) {
        if (r == rank || sgn(at(r, c)) == 0) continue;
        const Q f = at(r, c);
        for (std::size_t j = 0; j < width; ++j) at(r, j) -= f * at(rank, j);
      }
      pivot_col.push_back(c);
      is_pivot[c] = true;
      ++rank;
    }
    for (std::size_t r = rank; r < nrows; ++r) {
      if (sgn(at(r, dim_)) != 0) return Q(0);  // inconsistent
    }

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (!is_pivot[c]) free_cols.push_back(c);
    }
    const std::size_t e = free_cols.size();

    // Substitute the pivot variables into every remaining row, normalize the
    // direction by its leading coefficient and keep the tightest bound per
    // direction.
    std::vector<Reduced> reduced;
    for (std::size_t i = 0; i < m_; ++i) {
      if (tight >> i & 1u) continue;
      const Q* a = &a_[i * dim_];
      Q b = b_[i];
      std::vector<Q> dir(e);
      for (std::size_t t = 0; t < e; ++t) dir[t] = a[free_cols[t]];
      for (std::size_t p = 0; p < rank; ++p) {
        const Q& coef = a[pivot_col[p]];
        if (sgn(coef) == 0) continue;
        b -= coef * at(p, dim_);
        for (std::size_t t = 0; t < e; ++t) dir[t] -= coef * at(p, free_cols[t]);
      }
      std::size_t lead = 0;
      while (lead < e && sgn(dir[lead]) == 0) ++lead;
      if (lead == e) {
        if (sgn(b) < 0) return Q(0);
        continue;
      }
      const Q scale = abs(dir[lead]);
      for (auto& x : dir) x /= scale;
      b /= scale;
      reduced.push_back(Reduced{std::move(dir), b, i});
    }
    if (e == 0) return Q(1);

    std::sort(reduced.begin(), reduced.end(), [](const Reduced& x, const Reduced& y) {
      if (x.dir != y.dir) return x.dir < y.dir;
      if (x.bound != y.bound) return x.bound < y.bound;
      return x.index < y.index;
    });
    reduced.erase(std::unique(reduced.begin(), reduced.end(),
                              [](const Reduced& x, const Reduced& y) { return x.dir == y.dir; }),
                  reduced.end());

    std::vector<Q> opposite(e);
    for (const auto& r : reduced) {
      for (std::size_t t = 0; t < e; ++t) opposite[t] = -r.dir[t];
      auto it = std::lower_bound(reduced.begin(), reduced.end(), opposite,
                                 [](const Reduced& x, const std::vector<Q>& d) { return x.dir < d; });
      if (it != reduced.end() && it->dir == opposite && sgn(r.bound + it->bound) <= 0) {
        return Q(0);  // empty or flat
      }
    }

    Q sum(0);
    for (const auto& r : reduced) {
      if (sgn(r.bound) == 0) continue;
      sum += r.bound * face_volume(tight | (std::uint64_t{1} << r.index));
    }
    sum /= Q(static_cast<std::int64_t>(e));
    return sum;
  }

  std::size_t dim_;
  std::size_t m_;
  std::vector<Q> a_;
  std::vector<Q> b_;
  std::unordered_map<std::uint64_t, Q> memo_;
};

template <class Q>
Rational solve(const std::vector<HalfSpace>& rows, std::size_t dim) {
  LasserreSolver<Q> solver(rows, dim);
  return to_rational(solver.face_volume(0));
}

}  // namespace

Rational polytope_volume(const std::vector<HalfSpace>& rows, std::size_t dim) {
  if (rows.size() > 64) {
    throw CapacityError("polytope_volume supports at most 64 half-spaces");
  }
  for (const auto& r : rows) {
    if (r.normal.size() != dim) {
      throw InvalidArgument("half-space normal has wrong dimension");
    }
  }
  if (dim == 0) {
    for (const auto& r : rows) {
      if (sgn(r.bound) < 0) return Rational(0);
    }
    return Rational(1);
  }
  try {
    return solve<CheckedRational>(rows, dim);
  } catch (const Overflow&) {
    return solve<Rational>(rows, dim);
  }
}

}  // namespace rmspec
