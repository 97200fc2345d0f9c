#include "hyperint/lattice.hpp"

#include <algorithm>
#include <set>

namespace hyperint {

IntVec column(const IntMat& m, long j) {
  IntVec c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) c[i] = m[i][j];
  return c;
}

std::optional<RatVec> solve_weight_form(const IntMat& cols) {
  if (cols.empty() || cols[0].empty()) return std::nullopt;
  std::size_t n = cols.size(), N = cols[0].size();
  // (A^T) w = (1,...,1)
  RatMat AT(N, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < N; ++j) AT[j][i] = Rat(cols[i][j]);
  return rat_solve(AT, RatVec(N, Rat(1)));
}

bool same_face(const FaceRef& a, const FaceRef& b) { return a.generators == b.generators; }

namespace {

RatMat to_rat(const IntMat& m) {
  RatMat r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    r[i].resize(m[i].size());
    for (std::size_t j = 0; j < m[i].size(); ++j) r[i][j] = Rat(m[i][j]);
  }
  return r;
}

Rat dot_ii(const IntVec& a, const IntVec& b) {
  Int s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return Rat(s);
}

// All facet forms of the pointed cone R>=0·cols: primitive integer forms in
// span(A)^* vanishing on a rank-(r-1) subset of generators and nonnegative on
// all of them.
void compute_facets(GeneratorConfig& cfg) {
  long r = cfg.rank;
  RatMat A = to_rat(cfg.cols);
  std::vector<RatVec> span_basis = rat_column_space(A);  // r vectors in Q^n

  std::set<IntVec> seen;

  // iterate over all (r-1)-subsets of generators
  std::vector<long> subset(std::max<long>(r - 1, 0));
  std::vector<bool> mask(cfg.N, false);
  std::fill(mask.begin(), mask.begin() + std::max<long>(r - 1, 0), true);
  // use combination enumeration via std::prev_permutation on the mask
  bool more = true;
  while (more) {
    std::vector<long> S;
    for (long j = 0; j < cfg.N; ++j)
      if (mask[j]) S.push_back(j);

    // h = span_basis · y with (a_j · span_basis) y = 0 for j in S; need a
    // one-dimensional solution space.
    RatMat C(S.size(), RatVec(r));
    for (std::size_t s = 0; s < S.size(); ++s) {
      IntVec aj = column(cfg.cols, S[s]);
      for (long t = 0; t < r; ++t) C[s][t] = dot(span_basis[t], aj);
    }
    std::vector<RatVec> ker =
        S.empty() ? std::vector<RatVec>{{}} : rat_kernel(C);
    if (S.empty()) {
      // rank 1 cone: the constraint set is empty, kernel is all of Q^1
      ker = (r == 1) ? std::vector<RatVec>{RatVec{Rat(1)}} : std::vector<RatVec>{};
    }
    if (ker.size() == 1) {
      RatVec h(cfg.n, Rat(0));
      for (long t = 0; t < r; ++t)
        for (long i = 0; i < cfg.n; ++i) h[i] += ker[0][t] * span_basis[t][i];
      bool nonzero = false;
      for (const Rat& x : h) nonzero = nonzero || x != 0;
      if (nonzero) {
        IntVec hz = primitive_direction(h);
        // orient: nonnegative on all generators, with at least one positive
        int neg = 0, pos = 0;
        for (long j = 0; j < cfg.N; ++j) {
          Rat d = dot_ii(hz, column(cfg.cols, j));
          if (d > 0) ++pos;
          if (d < 0) ++neg;
        }
        bool supporting = !(pos > 0 && neg > 0);
        if (supporting && (pos > 0 || neg > 0)) {
          if (neg > 0)
            for (Int& x : hz) x = -x;
          // facet test: generators on the hyperplane span rank r-1
          std::vector<long> zero_set;
          RatMat Z;
          for (long j = 0; j < cfg.N; ++j) {
            if (dot_ii(hz, column(cfg.cols, j)) == 0) {
              zero_set.push_back(j);
              RatVec col(cfg.n);
              for (long i = 0; i < cfg.n; ++i) col[i] = Rat(cfg.cols[i][j]);
              Z.push_back(col);
            }
          }
          // Z holds the generators as rows; rank of the set is what matters
          long zr = Z.empty() ? 0 : rat_rank(Z);
          if (zr == r - 1 && seen.insert(hz).second) {
            cfg.facet_forms.push_back(hz);
            cfg.facet_zero_sets.push_back(zero_set);
          }
        }
      }
    }
    more = std::prev_permutation(mask.begin(), mask.end());
    if (r - 1 <= 0) break;  // single empty subset
  }
}

}  // namespace

GeneratorConfig make_config(const IntMat& cols) {
  GeneratorConfig cfg;
  if (cols.empty() || cols[0].empty()) throw InvalidInstance("empty generator configuration");
  cfg.n = static_cast<long>(cols.size());
  cfg.N = static_cast<long>(cols[0].size());
  for (const auto& row : cols)
    if (static_cast<long>(row.size()) != cfg.N)
      throw InvalidInstance("ragged generator matrix");
  cfg.cols = cols;
  for (long j = 0; j < cfg.N; ++j)
    for (long k = j + 1; k < cfg.N; ++k)
      if (column(cols, j) == column(cols, k))
        throw InvalidInstance("generators must be pairwise distinct");
  auto w = solve_weight_form(cols);
  if (!w) throw NoWeightForm("generators do not lie on an affine hyperplane w(u) = 1");
  cfg.w = *w;
  cfg.rank = rat_rank(to_rat(cols));
  compute_facets(cfg);

  ColEchelon lat = column_echelon(cols);
  for (long j = 0; j < lat.rank; ++j) {
    IntVec c(cfg.n);
    for (long i = 0; i < cfg.n; ++i) c[i] = lat.H[i][j];
    cfg.lattice_basis.push_back(c);
  }
  cfg.lattice_pivot_rows = lat.pivot_rows;

  std::vector<IntVec> K = integer_kernel(cols);
  if (!K.empty()) {
    IntMat KM(cfg.N, IntVec(K.size()));
    for (std::size_t j = 0; j < K.size(); ++j)
      for (long i = 0; i < cfg.N; ++i) KM[i][j] = K[j][i];
    ColEchelon ke = column_echelon(KM);
    for (long j = 0; j < ke.rank; ++j) {
      IntVec c(cfg.N);
      for (long i = 0; i < cfg.N; ++i) c[i] = ke.H[i][j];
      cfg.relation_basis.push_back(c);
    }
    cfg.relation_pivot_rows = ke.pivot_rows;
  }
  return cfg;
}

RatVec config_beta(const GeneratorConfig& cfg, const RatVec& v) {
  if (static_cast<long>(v.size()) != cfg.N) throw InvalidInstance("v has wrong length");
  RatVec b(cfg.n, Rat(0));
  for (long i = 0; i < cfg.n; ++i)
    for (long j = 0; j < cfg.N; ++j) b[i] += Rat(cfg.cols[i][j]) * v[j];
  return b;
}

Rat weight(const GeneratorConfig& cfg, const RatVec& u) { return dot(cfg.w, u); }

namespace {

// span membership of x (solvability of A c = x over Q)
bool in_span(const GeneratorConfig& cfg, const RatVec& x) {
  return rat_solve(to_rat(cfg.cols), x).has_value();
}

Rat form_dot(const IntVec& h, const RatVec& x) {
  Rat s(0);
  for (std::size_t i = 0; i < h.size(); ++i) s += Rat(h[i]) * x[i];
  return s;
}

}  // namespace

bool in_negative_cone(const GeneratorConfig& cfg, const RatVec& u) {
  RatVec x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = -u[i];
  if (!in_span(cfg, x)) return false;
  for (const IntVec& h : cfg.facet_forms)
    if (form_dot(h, x) < 0) return false;
  return true;
}

FaceRef smallest_face(const GeneratorConfig& cfg, const RatVec& u) {
  if (static_cast<long>(u.size()) != cfg.n) throw InvalidInstance("point has wrong dimension");
  RatVec x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = -u[i];
  if (!in_span(cfg, x)) throw NotInCone("point is outside the span of the generators");
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < cfg.facet_forms.size(); ++i) {
    Rat d = form_dot(cfg.facet_forms[i], x);
    if (d < 0) throw NotInCone("point violates a facet inequality");
    if (d == 0) active.push_back(i);
  }
  FaceRef f;
  f.supporting_form.assign(cfg.n, Rat(0));
  std::vector<bool> on_face(cfg.N, true);
  for (std::size_t i : active) {
    for (long k = 0; k < cfg.n; ++k) f.supporting_form[k] += Rat(cfg.facet_forms[i][k]);
    std::vector<bool> hit(cfg.N, false);
    for (long j : cfg.facet_zero_sets[i]) hit[j] = true;
    for (long j = 0; j < cfg.N; ++j) on_face[j] = on_face[j] && hit[j];
  }
  for (long j = 0; j < cfg.N; ++j)
    if (on_face[j]) f.generators.push_back(j);
  return f;
}

std::optional<IntVec> shifted_lattice_witness(const GeneratorConfig& cfg, const RatVec& beta,
                                              const RatVec& u) {
  if (u.size() != beta.size() || static_cast<long>(u.size()) != cfg.n)
    throw InvalidInstance("dimension mismatch");
  IntVec d(cfg.n);
  for (long i = 0; i < cfg.n; ++i) {
    Rat diff = u[i] - beta[i];
    diff.canonicalize();
    if (diff.get_den() != 1) return std::nullopt;
    d[i] = diff.get_num();
  }
  return integer_solve(cfg.cols, d);
}

MPointTest test_M_membership(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u) {
  MPointTest t;
  RatVec beta = config_beta(cfg, v);
  t.lattice_witness = shifted_lattice_witness(cfg, beta, u);
  FaceRef sigma = smallest_face(cfg, beta);
  try {
    t.in_relative_interior = same_face(smallest_face(cfg, u), sigma);
  } catch (const NotInCone&) {
    t.in_relative_interior = false;
  }
  t.member = t.lattice_witness.has_value() && t.in_relative_interior;
  return t;
}

namespace {

struct WindowBound {
  long lo, hi;
};

// sign-constrained window for coordinate j of a relation vector
WindowBound coord_window(const Rat& vj, long B) {
  if (vj == Rat(-1)) return {-B, 0};
  if (vj == Rat(0)) return {0, B};
  return {-B, B};
}

void enumerate_relations(const GeneratorConfig& cfg, const std::vector<WindowBound>& win,
                         std::size_t level, const IntVec& current, std::vector<IntVec>& out) {
  const auto& basis = cfg.relation_basis;
  if (level == basis.size()) {
    for (long j = 0; j < cfg.N; ++j) {
      if (current[j] < win[j].lo || current[j] > win[j].hi) return;
    }
    out.push_back(current);
    return;
  }
  long prow = cfg.relation_pivot_rows[level];
  const Int& step = basis[level][prow];  // positive pivot
  // current[prow] + step*y must lie in [lo, hi]
  Rat lo = (Rat(win[prow].lo) - Rat(current[prow])) / Rat(step);
  Rat hi = (Rat(win[prow].hi) - Rat(current[prow])) / Rat(step);
  Int ylo = ceil_rat(lo), yhi = floor_rat(hi);
  for (Int y = ylo; y <= yhi; ++y) {
    IntVec next = current;
    for (long j = 0; j < cfg.N; ++j) next[j] += y * basis[level][j];
    enumerate_relations(cfg, win, level + 1, next, out);
  }
}

}  // namespace

std::vector<IntVec> enumerate_E(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u,
                                long B) {
  if (B < 0) throw InvalidInstance("window must be nonnegative");
  RatVec beta = config_beta(cfg, v);
  auto base = shifted_lattice_witness(cfg, beta, u);
  if (!base) throw NotMember("u is not in beta + ZA");
  std::vector<WindowBound> win(cfg.N);
  for (long j = 0; j < cfg.N; ++j) win[j] = coord_window(v[j], B);
  std::vector<IntVec> out;
  enumerate_relations(cfg, win, 0, *base, out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct SliceScan {
  const GeneratorConfig& cfg;
  RatVec beta;
  FaceRef sigma;
  RatVec box_lo, box_hi;  // bounding box of the slice polytope
  Rat target;             // target weight
  std::vector<Rat> wstep;            // weight of each lattice basis vector
  std::vector<bool> suffix_nonzero;  // does any level >= t have wstep != 0
  long points = 0;
  long hits = 0;
  std::optional<WeightCounterexample> found;

  void visit(const RatVec& u) {
    if (weight(cfg, u) != target) return;
    if (!in_negative_cone(cfg, u)) return;
    ++points;
    FaceRef f = smallest_face(cfg, u);
    if (!same_face(f, sigma)) return;
    ++hits;
    if (!found) {
      auto wit = shifted_lattice_witness(cfg, beta, u);
      if (!wit) throw InternalError("slice point lost its lattice witness");
      found = WeightCounterexample{u, weight(cfg, u), *wit};
    }
  }

  void recurse(std::size_t level, RatVec& u, const Rat& wpartial) {
    const auto& basis = cfg.lattice_basis;
    if (level == basis.size()) {
      visit(u);
      return;
    }
    long prow = cfg.lattice_pivot_rows[level];
    const Int& step = basis[level][prow];  // positive pivot
    Rat lo = (box_lo[prow] - u[prow]) / Rat(step);
    Rat hi = (box_hi[prow] - u[prow]) / Rat(step);
    Int ylo = ceil_rat(lo), yhi = floor_rat(hi);
    bool tail_flat = level + 1 >= suffix_nonzero.size() || !suffix_nonzero[level + 1];
    if (tail_flat && wstep[level] != 0) {
      // remaining levels cannot change the weight: solve for y exactly
      Rat y = (target - wpartial) / wstep[level];
      if (!is_integer(y)) return;
      Int yi = y.get_num();
      if (yi < ylo || yi > yhi) return;
      RatVec nu = u;
      for (long i = 0; i < cfg.n; ++i) nu[i] += Rat(yi) * Rat(basis[level][i]);
      recurse(level + 1, nu, wpartial + y * wstep[level]);
      return;
    }
    if (tail_flat && wstep[level] == 0 && wpartial != target) return;
    for (Int y = ylo; y <= yhi; ++y) {
      RatVec nu = u;
      for (long i = 0; i < cfg.n; ++i) nu[i] += Rat(y) * Rat(basis[level][i]);
      recurse(level + 1, nu, wpartial + Rat(y) * wstep[level]);
    }
  }
};

}  // namespace

WeightMaximalityReport check_weight_maximality(const GeneratorConfig& cfg, const RatVec& v) {
  if (static_cast<long>(v.size()) != cfg.N) throw InvalidInstance("v has wrong length");
  for (const Rat& vj : v)
    if (vj < Rat(-1) || vj > Rat(0)) throw InvalidInstance("v must lie in [-1, 0]^N");
  WeightMaximalityReport rep;
  RatVec beta = config_beta(cfg, v);
  rep.sigma = smallest_face(cfg, beta);
  Rat wbeta(0);
  for (const Rat& vj : v) wbeta += vj;
  if (weight(cfg, beta) != wbeta) throw InternalError("weight of beta disagrees with sum of v");
  rep.beta_weight = wbeta;

  Int K = floor_rat(Rat(-1) * wbeta);
  for (Int k = 1; k <= K; ++k) {
    SliceScan scan{cfg, beta, rep.sigma, {}, {}, Rat(0), {}, {}};
    scan.target = wbeta + Rat(k);
    // bounding box of the dilated polytope (w(beta)+k)·conv(A)
    scan.box_lo.assign(cfg.n, Rat(0));
    scan.box_hi.assign(cfg.n, Rat(0));
    for (long i = 0; i < cfg.n; ++i) {
      Rat lo = scan.target * Rat(cfg.cols[i][0]);
      Rat hi = lo;
      for (long j = 1; j < cfg.N; ++j) {
        Rat x = scan.target * Rat(cfg.cols[i][j]);
        if (x < lo) lo = x;
        if (x > hi) hi = x;
      }
      scan.box_lo[i] = lo;
      scan.box_hi[i] = hi;
    }
    scan.wstep.resize(cfg.lattice_basis.size());
    scan.suffix_nonzero.assign(cfg.lattice_basis.size(), false);
    for (std::size_t t = 0; t < cfg.lattice_basis.size(); ++t) {
      Rat s(0);
      for (long i = 0; i < cfg.n; ++i) s += cfg.w[i] * Rat(cfg.lattice_basis[t][i]);
      scan.wstep[t] = s;
    }
    for (long t = static_cast<long>(cfg.lattice_basis.size()) - 1; t >= 0; --t)
      scan.suffix_nonzero[t] =
          (scan.wstep[t] != 0) ||
          (t + 1 < static_cast<long>(cfg.lattice_basis.size()) && scan.suffix_nonzero[t + 1]);

    // quick infeasibility: beta itself must reach the box along the lattice;
    // the recursion handles it, starting from u = beta
    RatVec u = beta;
    scan.recurse(0, u, wbeta);

    SliceInfo si;
    si.k = static_cast<long>(k.get_si());
    si.target_weight = scan.target;
    si.lattice_points = scan.points;
    si.interior_hits = scan.hits;
    rep.slices.push_back(si);
    if (scan.found && !rep.counterexample) {
      rep.counterexample = scan.found;
      rep.maximal = false;
    }
  }
  return rep;
}

}  // namespace hyperint
