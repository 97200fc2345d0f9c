#include "hyperint/linalg.hpp"

namespace hyperint {

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw InternalError("dot: length mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw InternalError("dot: length mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

namespace {

// Row-reduce A (augmented with optional b) in place; returns pivot columns.
std::vector<long> row_reduce(RatMat& A) {
  std::vector<long> pivots;
  if (A.empty()) return pivots;
  std::size_t rows = A.size(), cols = A[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[r], A[piv]);
    Rat inv = Rat(1) / A[r][c];
    for (std::size_t j = c; j < cols; ++j) A[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    pivots.push_back(static_cast<long>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

long rat_rank(RatMat A) { return static_cast<long>(row_reduce(A).size()); }

std::optional<RatVec> rat_solve(const RatMat& A, const RatVec& b) {
  if (A.size() != b.size()) throw InternalError("rat_solve: shape mismatch");
  if (A.empty()) return RatVec{};
  std::size_t cols = A[0].size();
  RatMat M(A);
  for (std::size_t i = 0; i < A.size(); ++i) M[i].push_back(b[i]);
  std::vector<long> piv = row_reduce(M);
  // inconsistent iff a pivot lands in the augmented column
  if (!piv.empty() && piv.back() == static_cast<long>(cols)) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = M[k][cols];
  return x;
}

std::vector<RatVec> rat_kernel(const RatMat& A) {
  if (A.empty()) return {};
  std::size_t cols = A[0].size();
  RatMat M(A);
  std::vector<long> piv = row_reduce(M);
  std::vector<bool> is_piv(cols, false);
  for (long c : piv) is_piv[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_piv[c]) continue;
    RatVec v(cols, Rat(0));
    v[c] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -M[k][c];
    basis.push_back(v);
  }
  return basis;
}

std::vector<RatVec> rat_column_space(const RatMat& A) {
  if (A.empty()) return {};
  RatMat M(A);
  std::vector<long> piv = row_reduce(M);
  std::vector<RatVec> basis;
  for (long c : piv) {
    RatVec col(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) col[i] = A[i][c];
    basis.push_back(col);
  }
  return basis;
}

IntVec primitive_direction(const RatVec& v) {
  Int l(1);
  for (const Rat& q : v) {
    Rat c(q);
    c.canonicalize();
    Int d = c.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  IntVec w(v.size());
  Int content(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(l);
    s.canonicalize();
    if (s.get_den() != 1) throw InternalError("primitive_direction: scaling failed");
    w[i] = s.get_num();
    Int g;
    mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), w[i].get_mpz_t());
    content = g;
  }
  if (content == 0) throw InternalError("primitive_direction: zero vector");
  for (Int& x : w) x /= content;
  return w;
}

ColEchelon column_echelon(const IntMat& A) {
  ColEchelon out;
  std::size_t rows = A.size();
  std::size_t cols = rows == 0 ? 0 : A[0].size();
  out.H = A;
  out.U.assign(cols, IntVec(cols, Int(0)));
  for (std::size_t j = 0; j < cols; ++j) out.U[j][j] = 1;

  auto col_op = [&](IntMat& M, std::size_t a, std::size_t b, const Int& u, const Int& v,
                    const Int& s, const Int& t) {
    // (col_a, col_b) <- (u*col_a + v*col_b, s*col_a + t*col_b)
    for (std::size_t i = 0; i < M.size(); ++i) {
      Int na = u * M[i][a] + v * M[i][b];
      Int nb = s * M[i][a] + t * M[i][b];
      M[i][a] = na;
      M[i][b] = nb;
    }
  };
  auto col_swap = [&](IntMat& M, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < M.size(); ++i) std::swap(M[i][a], M[i][b]);
  };
  auto col_negate = [&](IntMat& M, std::size_t a) {
    for (std::size_t i = 0; i < M.size(); ++i) M[i][a] = -M[i][a];
  };

  std::size_t r = 0;
  for (std::size_t i = 0; i < rows && r < cols; ++i) {
    std::size_t piv = r;
    while (piv < cols && out.H[i][piv] == 0) ++piv;
    if (piv == cols) continue;
    if (piv != r) {
      col_swap(out.H, r, piv);
      col_swap(out.U, r, piv);
    }
    for (std::size_t j = r + 1; j < cols; ++j) {
      if (out.H[i][j] == 0) continue;
      Int a = out.H[i][r], b = out.H[i][j], g, u, v;
      mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int s = -b / g, t = a / g;  // det [[u,s],[v,t]] = (ua+vb)/g = 1
      col_op(out.H, r, j, u, v, s, t);
      col_op(out.U, r, j, u, v, s, t);
    }
    if (out.H[i][r] < 0) {
      col_negate(out.H, r);
      col_negate(out.U, r);
    }
    out.pivot_rows.push_back(static_cast<long>(i));
    ++r;
  }
  out.rank = static_cast<long>(r);
  return out;
}

std::vector<IntVec> integer_kernel(const IntMat& A) {
  ColEchelon e = column_echelon(A);
  std::size_t cols = e.U.size();
  std::vector<IntVec> basis;
  for (std::size_t j = static_cast<std::size_t>(e.rank); j < cols; ++j) {
    IntVec v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = e.U[i][j];
    basis.push_back(v);
  }
  return basis;
}

std::vector<IntVec> column_lattice_basis(const IntMat& A) {
  ColEchelon e = column_echelon(A);
  std::size_t rows = A.size();
  std::vector<IntVec> basis;
  for (long j = 0; j < e.rank; ++j) {
    IntVec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = e.H[i][j];
    basis.push_back(v);
  }
  return basis;
}

std::optional<IntVec> integer_solve(const IntMat& A, const IntVec& b) {
  if (A.size() != b.size()) throw InternalError("integer_solve: shape mismatch");
  std::size_t rows = A.size();
  std::size_t cols = rows == 0 ? 0 : A[0].size();
  ColEchelon e = column_echelon(A);
  IntVec y(cols, Int(0));
  IntVec res(b);
  for (long k = 0; k < e.rank; ++k) {
    long i = e.pivot_rows[k];
    // columns after k are zero in row i, columns before k already consumed
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), res[i].get_mpz_t(), e.H[i][k].get_mpz_t());
    if (r != 0) return std::nullopt;
    y[k] = q;
    for (std::size_t row = 0; row < rows; ++row) res[row] -= q * e.H[row][k];
  }
  for (std::size_t row = 0; row < rows; ++row)
    if (res[row] != 0) return std::nullopt;
  IntVec x(cols, Int(0));
  for (std::size_t i = 0; i < cols; ++i)
    for (long k = 0; k < e.rank; ++k) x[i] += e.U[i][k] * y[k];
  return x;
}

}  // namespace hyperint
