#pragma once

#include "coxalg/linalg.hpp"
#include "coxalg/scalar.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace coxalg {

// g = gcd(a,b) >= 0 with s*a + t*b = g.
inline std::tuple<Integer, Integer, Integer> extended_gcd(Integer a, Integer b) {
  Integer s0 = 1, t0 = 0, s1 = 0, t1 = 1;
  while (b != 0) {
    const Integer q = a / b;
    Integer r = a - q * b;
    a = b;
    b = r;
    Integer s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    t0 = t1;
    s1 = s2;
    t1 = t2;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  return {a, s0, t0};
}

inline Integer vector_gcd(const ZVec& v) {
  Integer g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

// Divides out the (positive) content; the zero vector is returned unchanged.
inline ZVec primitivize(ZVec v, Integer* content = nullptr) {
  const Integer g = vector_gcd(v);
  if (content) *content = g;
  if (g > 1)
    for (Index i = 0; i < v.size(); ++i) v(i) /= g;
  return v;
}

// Column-style Hermite normal form H = M * V with V unimodular: the nonzero
// columns come first, their leading rows strictly increase, leading entries
// are positive, and in a leading row every entry to the left lies in
// [0, pivot). This is the canonical representative used for lattice bases.
struct HnfResult {
  ZMat h;
  ZMat v;
  std::vector<Index> pivot_rows;  // leading row of each nonzero column
};

inline HnfResult column_hnf(const ZMat& m) {
  HnfResult out;
  ZMat& h = out.h;
  h = m;
  const Index rows = h.rows(), cols = h.cols();
  out.v = ZMat::Identity(cols, cols);
  ZMat& v = out.v;
  Index c = 0;
  for (Index r = 0; r < rows && c < cols; ++r) {
    Index j0 = -1;
    for (Index j = c; j < cols; ++j) {
      if (h(r, j) != 0) {
        j0 = j;
        break;
      }
    }
    if (j0 < 0) continue;
    if (j0 != c) {
      h.col(j0).swap(h.col(c));
      v.col(j0).swap(v.col(c));
    }
    for (Index j = c + 1; j < cols; ++j) {
      if (h(r, j) == 0) continue;
      const auto [g, s, t] = extended_gcd(h(r, c), h(r, j));
      const Integer ac = h(r, c) / g, aj = h(r, j) / g;
      const ZVec hc = h.col(c), hj = h.col(j);
      h.col(c) = s * hc + t * hj;
      h.col(j) = -aj * hc + ac * hj;
      const ZVec vc = v.col(c), vj = v.col(j);
      v.col(c) = s * vc + t * vj;
      v.col(j) = -aj * vc + ac * vj;
    }
    if (h(r, c) < 0) {
      h.col(c) = -h.col(c);
      v.col(c) = -v.col(c);
    }
    for (Index j = 0; j < c; ++j) {
      const Integer q = floor_div(h(r, j), h(r, c));
      if (q != 0) {
        h.col(j) -= q * h.col(c);
        v.col(j) -= q * v.col(c);
      }
    }
    out.pivot_rows.push_back(r);
    ++c;
  }
  return out;
}

// Columns form the canonical (HNF) basis of { x in Z^n : Mx = 0 }.
inline ZMat integer_kernel(const ZMat& m) {
  const Index rows = m.rows(), cols = m.cols();
  ZMat stacked(rows + cols, cols);
  stacked.topRows(rows) = m;
  stacked.bottomRows(cols) = ZMat::Identity(cols, cols);
  const HnfResult hnf = column_hnf(stacked);
  Index first_zero = 0;
  while (first_zero < cols && !hnf.h.col(first_zero).head(rows).isZero(0)) ++first_zero;
  ZMat gens = hnf.h.bottomRows(cols).rightCols(cols - first_zero);
  const HnfResult canon = column_hnf(gens);
  return canon.h.leftCols(static_cast<Index>(canon.pivot_rows.size()));
}

// Basis of the lattice { x in Z^n : a_free x = 0 and a_tors x = 0 mod moduli },
// HNF-canonical. a_free and a_tors may each have zero rows.
inline ZMat integer_kernel_with_congruences(const ZMat& a_free, const ZMat& a_tors,
                                            const std::vector<Integer>& moduli) {
  const Index n = a_free.cols() > 0 || a_free.rows() > 0 ? a_free.cols() : a_tors.cols();
  if (a_tors.rows() != static_cast<Index>(moduli.size()))
    throw std::invalid_argument("one modulus per torsion constraint row required");
  if (a_tors.rows() > 0 && a_tors.cols() != n)
    throw std::invalid_argument("constraint column counts differ");
  const Index rf = a_free.rows(), rt = a_tors.rows();
  ZMat stacked = ZMat::Zero(rf + rt, n + rt);
  if (rf > 0) stacked.topLeftCorner(rf, n) = a_free;
  if (rt > 0) {
    stacked.bottomLeftCorner(rt, n) = a_tors;
    for (Index j = 0; j < rt; ++j) stacked(rf + j, n + j) = moduli[static_cast<size_t>(j)];
  }
  const ZMat ker = integer_kernel(stacked);
  const ZMat gens = ker.topRows(n);
  const HnfResult canon = column_hnf(gens);
  return canon.h.leftCols(static_cast<Index>(canon.pivot_rows.size()));
}

// Smith normal form U * M * V = D with U, V unimodular, D diagonal with
// nonnegative entries and d_1 | d_2 | ... .
struct SmithResult {
  ZMat u, d, v;
};

inline SmithResult smith_normal_form(const ZMat& m) {
  SmithResult out;
  out.d = m;
  ZMat& d = out.d;
  const Index rows = d.rows(), cols = d.cols();
  out.u = ZMat::Identity(rows, rows);
  out.v = ZMat::Identity(cols, cols);
  ZMat& u = out.u;
  ZMat& v = out.v;

  const Index steps = std::min(rows, cols);
  for (Index t = 0; t < steps; ++t) {
    for (;;) {
      Index pi = -1, pj = -1;
      Integer best = 0;
      for (Index i = t; i < rows; ++i) {
        for (Index j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          const Integer a = abs(d(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) break;  // remaining block is zero
      if (pi != t) {
        d.row(pi).swap(d.row(t));
        u.row(pi).swap(u.row(t));
      }
      if (pj != t) {
        d.col(pj).swap(d.col(t));
        v.col(pj).swap(v.col(t));
      }
      bool clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = floor_div(d(i, t), d(t, t));
        d.row(i) -= q * d.row(t);
        u.row(i) -= q * u.row(t);
        if (d(i, t) != 0) clean = false;
      }
      if (!clean) continue;
      for (Index j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = floor_div(d(t, j), d(t, t));
        d.col(j) -= q * d.col(t);
        v.col(j) -= q * v.col(t);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility fix: pull an offending row up so the next round shrinks
      // the pivot to a common divisor.
      bool divides = true;
      for (Index i = t + 1; i < rows && divides; ++i) {
        for (Index j = t + 1; j < cols; ++j) {
          if (d(i, j) % d(t, t) != 0) {
            d.row(t) += d.row(i);
            u.row(t) += u.row(i);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      u.row(t) = -u.row(t);
    }
  }
  return out;
}

inline std::vector<Integer> invariant_factors(const ZMat& m) {
  const SmithResult s = smith_normal_form(m);
  std::vector<Integer> fs;
  for (Index t = 0; t < std::min(s.d.rows(), s.d.cols()); ++t)
    if (s.d(t, t) != 0) fs.push_back(s.d(t, t));
  return fs;
}

// Solves Ax = b over the integers (free coordinates set to zero); empty when
// no integral solution exists.
inline std::optional<ZVec> integer_solve(const ZMat& a, const ZVec& b) {
  const HnfResult hnf = column_hnf(a);
  const Index cols = a.cols();
  ZVec y = ZVec::Zero(cols);
  ZVec residual = b;
  for (Index c = 0; c < static_cast<Index>(hnf.pivot_rows.size()); ++c) {
    const Index r = hnf.pivot_rows[static_cast<size_t>(c)];
    for (Index rr = (c == 0 ? 0 : hnf.pivot_rows[static_cast<size_t>(c - 1)] + 1); rr < r; ++rr)
      if (residual(rr) != 0) return std::nullopt;
    if (residual(r) % hnf.h(r, c) != 0) return std::nullopt;
    y(c) = residual(r) / hnf.h(r, c);
    residual -= y(c) * hnf.h.col(c);
  }
  if (!residual.isZero(0)) return std::nullopt;
  return ZVec(hnf.v * y);
}

// Looks for a unimodular U with U * a_i = b_i for all i (ordered lists of
// integer vectors of equal dimension d). Decides GL_d(Z) equivalence of two
// ray configurations that span Q^d.
inline std::optional<ZMat> find_unimodular_map(const std::vector<ZVec>& a,
                                               const std::vector<ZVec>& b) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  const Index d = a.front().size();
  QMat sys(static_cast<Index>(a.size()) * d, d * d);
  QVec rhs(static_cast<Index>(a.size()) * d);
  sys.setZero();
  for (Index i = 0; i < static_cast<Index>(a.size()); ++i) {
    if (a[static_cast<size_t>(i)].size() != d || b[static_cast<size_t>(i)].size() != d)
      return std::nullopt;
    for (Index r = 0; r < d; ++r) {
      for (Index c = 0; c < d; ++c)
        sys(i * d + r, r * d + c) = Rational(a[static_cast<size_t>(i)](c));
      rhs(i * d + r) = Rational(b[static_cast<size_t>(i)](r));
    }
  }
  const auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  ZMat u(d, d);
  for (Index r = 0; r < d; ++r) {
    for (Index c = 0; c < d; ++c) {
      const Rational& q = (*x)(r * d + c);
      if (!is_integer(q)) return std::nullopt;
      u(r, c) = numerator(q);
    }
  }
  const Rational du = det(u.cast<Rational>());
  if (du != 1 && du != -1) return std::nullopt;
  return u;
}

}  // namespace coxalg
