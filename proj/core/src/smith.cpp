#include "gtc/smith.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gtc {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i].at(j);
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << at(i, j).get_str();
    out << "]\n";
  }
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return c;
}

namespace {

class Reducer {
 public:
  Reducer(const IntMatrix& m, bool track)
      : d_(m), track_(track),
        u_(track ? IntMatrix::identity(m.rows()) : IntMatrix()),
        v_(track ? IntMatrix::identity(m.cols()) : IntMatrix()) {}

  SmithResult run() {
    const std::size_t r = d_.rows();
    const std::size_t c = d_.cols();
    std::size_t t = 0;
    for (; t < std::min(r, c); ++t) {
      auto pivot = smallest_in_block(t);
      if (!pivot) break;
      move_to(t, pivot->first, pivot->second);
      while (true) {
        clear_column(t);
        clear_row(t);
        if (auto p = smallest_in_cross(t)) {
          move_to(t, p->first, p->second);
          continue;
        }
        if (auto row = non_divisible_row(t)) {
          add_row(*row, t);
          continue;
        }
        break;
      }
      if (d_.at(t, t) < 0) negate_row(t);
    }
    SmithResult out;
    out.rank = t;
    for (std::size_t i = 0; i < t; ++i) out.invariants.push_back(d_.at(i, i));
    out.d = std::move(d_);
    out.u = std::move(u_);
    out.v = std::move(v_);
    return out;
  }

 private:
  using Pos = std::pair<std::size_t, std::size_t>;

  std::optional<Pos> smallest_in_block(std::size_t t) const {
    std::optional<Pos> best;
    Integer best_abs;
    for (std::size_t i = t; i < d_.rows(); ++i) {
      for (std::size_t j = t; j < d_.cols(); ++j) {
        const Integer& x = d_.at(i, j);
        if (x == 0) continue;
        Integer a = abs(x);
        if (!best || a < best_abs) {
          best = Pos{i, j};
          best_abs = a;
        }
      }
    }
    return best;
  }

  // Nonzero entries left in row t or column t after reduction are remainders
  // smaller than the pivot.
  std::optional<Pos> smallest_in_cross(std::size_t t) const {
    std::optional<Pos> best;
    Integer best_abs;
    auto consider = [&](std::size_t i, std::size_t j) {
      const Integer& x = d_.at(i, j);
      if (x == 0) return;
      Integer a = abs(x);
      if (!best || a < best_abs || (a == best_abs && Pos{i, j} < *best)) {
        best = Pos{i, j};
        best_abs = a;
      }
    };
    for (std::size_t i = t + 1; i < d_.rows(); ++i) consider(i, t);
    for (std::size_t j = t + 1; j < d_.cols(); ++j) consider(t, j);
    return best;
  }

  std::optional<std::size_t> non_divisible_row(std::size_t t) const {
    const Integer& p = d_.at(t, t);
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_.at(i, j) != 0 && !mpz_divisible_p(d_.at(i, j).get_mpz_t(), p.get_mpz_t())) return i;
      }
    }
    return std::nullopt;
  }

  void move_to(std::size_t t, std::size_t i, std::size_t j) {
    if (i != t) swap_rows(i, t);
    if (j != t) swap_cols(j, t);
  }

  void clear_column(std::size_t t) {
    const Integer p = d_.at(t, t);
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      if (d_.at(i, t) == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), d_.at(i, t).get_mpz_t(), p.get_mpz_t());
      if (q != 0) sub_row(i, t, q);
    }
  }

  void clear_row(std::size_t t) {
    const Integer p = d_.at(t, t);
    for (std::size_t j = t + 1; j < d_.cols(); ++j) {
      if (d_.at(t, j) == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), d_.at(t, j).get_mpz_t(), p.get_mpz_t());
      if (q != 0) sub_col(j, t, q);
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < d_.cols(); ++j) std::swap(d_.at(a, j), d_.at(b, j));
    if (track_)
      for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_.at(a, j), u_.at(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < d_.rows(); ++i) std::swap(d_.at(i, a), d_.at(i, b));
    if (track_)
      for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_.at(i, a), v_.at(i, b));
  }

  // row_i -= q * row_t
  void sub_row(std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t j = 0; j < d_.cols(); ++j)
      if (d_.at(t, j) != 0) d_.at(i, j) -= q * d_.at(t, j);
    if (track_)
      for (std::size_t j = 0; j < u_.cols(); ++j)
        if (u_.at(t, j) != 0) u_.at(i, j) -= q * u_.at(t, j);
  }

  // col_j -= q * col_t
  void sub_col(std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t i = 0; i < d_.rows(); ++i)
      if (d_.at(i, t) != 0) d_.at(i, j) -= q * d_.at(i, t);
    if (track_)
      for (std::size_t i = 0; i < v_.rows(); ++i)
        if (v_.at(i, t) != 0) v_.at(i, j) -= q * v_.at(i, t);
  }

  // row_t += row_i
  void add_row(std::size_t i, std::size_t t) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_.at(t, j) += d_.at(i, j);
    if (track_)
      for (std::size_t j = 0; j < u_.cols(); ++j) u_.at(t, j) += u_.at(i, j);
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_.at(t, j) = -d_.at(t, j);
    if (track_)
      for (std::size_t j = 0; j < u_.cols(); ++j) u_.at(t, j) = -u_.at(t, j);
  }

  IntMatrix d_;
  bool track_;
  IntMatrix u_;
  IntMatrix v_;
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m, bool track_transforms) {
  return Reducer(m, track_transforms).run();
}

Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a.at(s, k) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer x = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        a.at(i, j) = x;
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

SmithCheck verify_smith(const IntMatrix& m, const SmithResult& r) {
  SmithCheck check;
  if (r.u.rows() != m.rows() || r.v.cols() != m.cols()) return check;
  check.product = (r.u * m * r.v) == r.d;
  const Integer du = determinant(r.u);
  const Integer dv = determinant(r.v);
  check.unimodular = (du == 1 || du == -1) && (dv == 1 || dv == -1);
  check.diagonal = true;
  for (std::size_t i = 0; i < r.d.rows(); ++i) {
    for (std::size_t j = 0; j < r.d.cols(); ++j) {
      if (i != j && r.d.at(i, j) != 0) check.diagonal = false;
    }
  }
  check.divisibility = true;
  const std::size_t n = std::min(r.d.rows(), r.d.cols());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Integer& a = r.d.at(i, i);
    const Integer& b = r.d.at(i + 1, i + 1);
    if (a < 0 || b < 0) check.divisibility = false;
    if (a == 0 && b != 0) check.divisibility = false;
    if (a != 0 && !mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) check.divisibility = false;
  }
  if (n > 0 && r.d.at(n - 1, n - 1) < 0) check.divisibility = false;
  return check;
}

}  // namespace gtc
