#include "hyperint/classical.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

namespace hyperint {
namespace {

std::string ordinal(long j) { return std::to_string(j + 1); }

// q evaluated at the vertex for one form: 1 - theta_j + C_j(x).
Rat q_value(const IntMat& C, const RatVec& theta, long j, const RatVec& x) {
  Rat q = Rat(1) - theta[static_cast<size_t>(j)];
  for (size_t k = 0; k < x.size(); ++k) q += Rat(C[static_cast<size_t>(j)][k]) * x[k];
  return q;
}

Int factorial(long n) {
  Int f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

IntMat horn_forms() { return IntMat{{Int(1), Int(1)}, {Int(-1), Int(1)}, {Int(1), Int(-1)}}; }

void validate_classical(const ClassicalInstance& inst) {
  if (inst.n < 1 || inst.m < 1) throw InvalidInstance("classical: need n >= 1 and m >= 1");
  if (static_cast<long>(inst.C.size()) != inst.n)
    throw InvalidInstance("classical: coefficient matrix must have n rows");
  for (const auto& row : inst.C)
    if (static_cast<long>(row.size()) != inst.m)
      throw InvalidInstance("classical: every coefficient row must have m entries");
  if (static_cast<long>(inst.theta.size()) != inst.n)
    throw InvalidInstance("classical: need n offsets");

  for (long j = 0; j < inst.n; ++j) {
    const auto& row = inst.C[static_cast<size_t>(j)];
    bool nonzero = false;
    for (const Int& c : row) nonzero = nonzero || c != 0;
    if (!nonzero) throw InvalidInstance("classical: form " + ordinal(j) + " is identically zero");

    const Rat& th = inst.theta[static_cast<size_t>(j)];
    if (th < 0 || th > 1)
      throw InvalidInstance("classical: offset " + ordinal(j) + " is outside [0,1]");
    if (th == 1)
      for (const Int& c : row)
        if (c < 0)
          throw InvalidInstance("classical: offset " + ordinal(j) +
                                " equals 1 but its form has a negative coefficient");
    if (th == 0)
      for (const Int& c : row)
        if (c > 0)
          throw InvalidInstance("classical: offset " + ordinal(j) +
                                " equals 0 but its form has a positive coefficient");
  }

  for (long k = 0; k < inst.m; ++k) {
    Int sum = 0;
    long nonzeros = 0;
    for (long j = 0; j < inst.n; ++j) {
      const Int& c = inst.C[static_cast<size_t>(j)][static_cast<size_t>(k)];
      sum += c;
      if (c != 0) ++nonzeros;
    }
    if (sum != 1) throw InvalidInstance("classical: column " + ordinal(k) + " does not sum to 1");
    if (nonzeros < 2)
      throw InvalidInstance("classical: variable " + ordinal(k) +
                            " appears in fewer than two forms");
  }

  for (long k = 0; k < inst.m; ++k)
    for (long k2 = k + 1; k2 < inst.m; ++k2) {
      bool equal = true;
      for (long j = 0; j < inst.n; ++j)
        equal = equal && inst.C[static_cast<size_t>(j)][static_cast<size_t>(k)] ==
                             inst.C[static_cast<size_t>(j)][static_cast<size_t>(k2)];
      if (equal)
        throw InvalidInstance("classical: columns " + ordinal(k) + " and " + ordinal(k2) +
                              " coincide, so the generators are not distinct");
    }
}

ClassicalInstance normalize_classical(const ClassicalInstance& inst) {
  ClassicalInstance out = inst;
  for (long k = 0; k < inst.m; ++k) {
    long nonzeros = 0;
    for (long j = 0; j < inst.n; ++j)
      if (inst.C[static_cast<size_t>(j)][static_cast<size_t>(k)] != 0) ++nonzeros;
    if (nonzeros >= 2) continue;
    IntVec plus(static_cast<size_t>(inst.m), Int(0)), minus(static_cast<size_t>(inst.m), Int(0));
    plus[static_cast<size_t>(k)] = 1;
    minus[static_cast<size_t>(k)] = -1;
    out.C.push_back(plus);
    out.theta.push_back(Rat(1));
    out.C.push_back(minus);
    out.theta.push_back(Rat(0));
    out.n += 2;
  }
  return out;
}

ClassicalEmbedding classical_to_aset(const ClassicalInstance& inst) {
  validate_classical(inst);
  const long n = inst.n, m = inst.m, N = n + m;
  IntMat cols(static_cast<size_t>(n), IntVec(static_cast<size_t>(N), Int(0)));
  for (long i = 0; i < n; ++i) {
    cols[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (long k = 0; k < m; ++k)
      cols[static_cast<size_t>(i)][static_cast<size_t>(n + k)] =
          inst.C[static_cast<size_t>(i)][static_cast<size_t>(k)];
  }
  ClassicalEmbedding emb;
  emb.cfg = make_config(cols);
  emb.v.assign(static_cast<size_t>(N), Rat(0));
  for (long i = 0; i < n; ++i) {
    Rat vi = -inst.theta[static_cast<size_t>(i)];
    vi.canonicalize();  // exact-equality consumers need reduced form
    emb.v[static_cast<size_t>(i)] = vi;
  }
  emb.beta = config_beta(emb.cfg, emb.v);
  FaceRef sf = smallest_face(emb.cfg, emb.beta);
  if (static_cast<long>(sf.generators.size()) != emb.cfg.N)
    throw InternalError("classical embedding: base point failed the interiority certificate");
  return emb;
}

RatVec theta_step(const RatVec& theta, long D, long h) {
  RatVec v(theta.size());
  for (size_t j = 0; j < theta.size(); ++j) v[j] = -theta[j];
  RatVec stepped = frobenius_step(v, D, h);
  for (size_t j = 0; j < stepped.size(); ++j) stepped[j] = -stepped[j];
  return stepped;
}

Int rho_eval(const IntMat& C, const RatVec& theta, const RatVec& x) {
  for (const Rat& xi : x)
    if (xi < 0 || xi >= 1) throw InvalidInstance("step function: point outside [0,1)^m");
  Int total = 0;
  for (long j = 0; j < static_cast<long>(C.size()); ++j) total += floor_rat(q_value(C, theta, j, x));
  return total;
}

namespace {

struct RhoBest {
  std::optional<Int> value;
  RatVec vertex;
  std::vector<Int> dir;
  long candidates = 0;

  void offer(const Int& val, const RatVec& x0, const std::vector<Int>& d) {
    ++candidates;
    if (!value || val < *value) {
      value = val;
      vertex = x0;
      dir = d;
    }
  }
};

// Value of rho just off the vertex in direction d: each integral floor
// argument drops by one exactly when its form decreases along d.
Int sector_value(const IntMat& C, const RatVec& theta, const RatVec& x0,
                 const std::vector<Int>& d) {
  Int total = 0;
  for (long j = 0; j < static_cast<long>(C.size()); ++j) {
    Rat q = q_value(C, theta, j, x0);
    Int fl = floor_rat(q);
    if (is_integer(q)) {
      Int deriv = 0;
      for (size_t k = 0; k < d.size(); ++k) deriv += C[static_cast<size_t>(j)][k] * d[k];
      if (deriv < 0) fl -= 1;
    }
    total += fl;
  }
  return total;
}

// Largest step t such that x0 + t*d crosses no jump locus and stays in the
// half-open box for every 0 < s < t.
Rat free_step(const IntMat& C, const RatVec& theta, const RatVec& x0, const std::vector<Int>& d) {
  std::optional<Rat> tmin;
  auto offer = [&](const Rat& t) {
    if (!tmin || t < *tmin) tmin = t;
  };
  for (long j = 0; j < static_cast<long>(C.size()); ++j) {
    Int deriv = 0;
    for (size_t k = 0; k < d.size(); ++k) deriv += C[static_cast<size_t>(j)][k] * d[k];
    if (deriv == 0) continue;
    Rat q = q_value(C, theta, j, x0);
    Rat gap;
    if (is_integer(q))
      gap = 1;
    else if (deriv > 0)
      gap = Rat(floor_rat(q)) + 1 - q;
    else
      gap = q - Rat(floor_rat(q));
    Rat t = gap / Rat(abs(deriv));
    offer(t);
  }
  for (size_t k = 0; k < d.size(); ++k) {
    if (d[k] > 0) offer((Rat(1) - x0[k]) / Rat(d[k]));
    if (d[k] < 0) offer(x0[k] / Rat(-d[k]));
  }
  if (!tmin || *tmin <= 0) throw InternalError("step function: empty perturbation step");
  return *tmin;
}

StepFunctionReport finish_exact(const IntMat& C, const RatVec& theta, const RhoBest& best) {
  if (!best.value) throw InternalError("step function: no candidate cell was examined");
  Rat eps = free_step(C, theta, best.vertex, best.dir) / 2;
  RatVec witness = best.vertex;
  for (size_t k = 0; k < witness.size(); ++k) witness[k] += eps * Rat(best.dir[k]);
  if (rho_eval(C, theta, witness) != *best.value)
    throw InternalError("step function: witness disagrees with the sector value");
  StepFunctionReport rep;
  rep.min_value = *best.value;
  rep.witness = witness;
  rep.method = RhoMode::ExactCell;
  rep.candidates = best.candidates;
  return rep;
}

StepFunctionReport rho_min_interval(const IntMat& C, const RatVec& theta) {
  std::set<Rat> vertices{Rat(0), Rat(1)};
  for (long j = 0; j < static_cast<long>(C.size()); ++j) {
    const Int& c = C[static_cast<size_t>(j)][0];
    if (c == 0) continue;
    Rat base = Rat(1) - theta[static_cast<size_t>(j)];
    Rat lo = base + (c < 0 ? Rat(c) : Rat(0));
    Rat hi = base + (c > 0 ? Rat(c) : Rat(0));
    for (Int z = ceil_rat(lo); z <= floor_rat(hi); ++z) {
      Rat x = (Rat(z) - base) / Rat(c);
      if (x >= 0 && x <= 1) vertices.insert(x);
    }
  }
  RhoBest best;
  for (const Rat& x0 : vertices)
    for (long s : {1L, -1L}) {
      if (x0 == 0 && s < 0) continue;
      if (x0 == 1 && s > 0) continue;
      std::vector<Int> d{Int(s)};
      best.offer(sector_value(C, theta, {x0}, d), {x0}, d);
    }
  return finish_exact(C, theta, best);
}

struct BoxLine {
  Int a, b;  // primitive normal, lexicographically positive
  Rat r;     // a*x + b*y = r
  bool operator<(const BoxLine& o) const { return std::tie(a, b, r) < std::tie(o.a, o.b, o.r); }
};

BoxLine normalized_line(Int a, Int b, Rat r) {
  Int g = gcd(a, b);
  if (g != 0) {
    a /= g;
    b /= g;
    r /= Rat(g);
  }
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
    r = -r;
  }
  return BoxLine{a, b, r};
}

// Oriented primitive directions, counterclockwise starting inside the upper
// half plane (y > 0, or y = 0 with x > 0).
void sort_directions(std::vector<std::pair<Int, Int>>& dirs) {
  auto half = [](const std::pair<Int, Int>& d) -> int {
    return (d.second > 0 || (d.second == 0 && d.first > 0)) ? 0 : 1;
  };
  std::sort(dirs.begin(), dirs.end(),
            [&](const std::pair<Int, Int>& u, const std::pair<Int, Int>& v) {
              if (half(u) != half(v)) return half(u) < half(v);
              return u.first * v.second - u.second * v.first > 0;
            });
}

StepFunctionReport rho_min_planar(const IntMat& C, const RatVec& theta) {
  std::set<BoxLine> lines;
  lines.insert(normalized_line(Int(1), Int(0), Rat(0)));
  lines.insert(normalized_line(Int(1), Int(0), Rat(1)));
  lines.insert(normalized_line(Int(0), Int(1), Rat(0)));
  lines.insert(normalized_line(Int(0), Int(1), Rat(1)));
  for (long j = 0; j < static_cast<long>(C.size()); ++j) {
    const Int& a = C[static_cast<size_t>(j)][0];
    const Int& b = C[static_cast<size_t>(j)][1];
    if (a == 0 && b == 0) continue;
    Rat base = Rat(1) - theta[static_cast<size_t>(j)];
    Rat lo = base, hi = base;
    lo += (a < 0 ? Rat(a) : Rat(0)) + (b < 0 ? Rat(b) : Rat(0));
    hi += (a > 0 ? Rat(a) : Rat(0)) + (b > 0 ? Rat(b) : Rat(0));
    for (Int z = ceil_rat(lo); z <= floor_rat(hi); ++z)
      lines.insert(normalized_line(a, b, Rat(z) - base));
  }

  std::set<std::pair<Rat, Rat>> vertices;
  for (auto i = lines.begin(); i != lines.end(); ++i)
    for (auto j = std::next(i); j != lines.end(); ++j) {
      Int det = i->a * j->b - j->a * i->b;
      if (det == 0) continue;
      Rat x = (i->r * Rat(j->b) - j->r * Rat(i->b)) / Rat(det);
      Rat y = (Rat(i->a) * j->r - Rat(j->a) * i->r) / Rat(det);
      if (x >= 0 && x <= 1 && y >= 0 && y <= 1) vertices.insert({x, y});
    }

  RhoBest best;
  for (const auto& [x, y] : vertices) {
    RatVec x0{x, y};
    std::set<std::pair<Int, Int>> dirset;
    auto add_line_dirs = [&](const Int& a, const Int& b) {
      Int g = gcd(a, b);
      Int dx = -b / g, dy = a / g;
      dirset.insert({dx, dy});
      dirset.insert({-dx, -dy});
    };
    for (long j = 0; j < static_cast<long>(C.size()); ++j) {
      const Int& a = C[static_cast<size_t>(j)][0];
      const Int& b = C[static_cast<size_t>(j)][1];
      if (a == 0 && b == 0) continue;
      if (is_integer(q_value(C, theta, j, x0))) add_line_dirs(a, b);
    }
    if (x == 0 || x == 1) add_line_dirs(Int(1), Int(0));
    if (y == 0 || y == 1) add_line_dirs(Int(0), Int(1));

    std::vector<std::pair<Int, Int>> dirs(dirset.begin(), dirset.end());
    sort_directions(dirs);
    const size_t k = dirs.size();
    for (size_t i = 0; i < k; ++i) {
      const auto& d1 = dirs[i];
      const auto& d2 = dirs[(i + 1) % k];
      std::vector<Int> d{d1.first + d2.first, d1.second + d2.second};
      if (d[0] == 0 && d[1] == 0) continue;  // antipodal gap; cannot occur with two lines
      if (x == 0 && d[0] <= 0) continue;
      if (x == 1 && d[0] >= 0) continue;
      if (y == 0 && d[1] <= 0) continue;
      if (y == 1 && d[1] >= 0) continue;
      best.offer(sector_value(C, theta, x0, d), x0, d);
    }
  }
  return finish_exact(C, theta, best);
}

}  // namespace

StepFunctionReport rho_min(const IntMat& C, const RatVec& theta, RhoMode mode, long D) {
  if (C.empty() || C[0].empty()) throw InvalidInstance("step function: empty coefficient matrix");
  if (theta.size() != C.size()) throw InvalidInstance("step function: offset count mismatch");
  const long m = static_cast<long>(C[0].size());
  for (const auto& row : C)
    if (static_cast<long>(row.size()) != m)
      throw InvalidInstance("step function: ragged coefficient matrix");
  if (D < 1) throw InvalidInstance("step function: denominator must be positive");

  RatVec th = theta;
  for (Rat& t : th) t.canonicalize();  // integrality tests below need reduced form

  if (mode == RhoMode::ExactCell) {
    if (m > 2)
      throw UnsupportedDimension("exact cell enumeration supports at most two variables");
    return m == 1 ? rho_min_interval(C, th) : rho_min_planar(C, th);
  }

  Int max_row_sum = 0;
  for (const auto& row : C) {
    Int s = 0;
    for (const Int& c : row) s += abs(c);
    max_row_sum = std::max(max_row_sum, s);
  }
  Int denom_big = Int(D) * (1 + max_row_sum);
  if (denom_big > 4096) throw InternalError("step function grid: denominator overflow");
  const long denom = denom_big.get_si();
  double total = 1;
  for (long k = 0; k < m; ++k) total *= static_cast<double>(denom);
  if (total > 2e7) throw InternalError("step function grid: too many points");

  StepFunctionReport rep;
  rep.method = RhoMode::Grid;
  std::vector<long> idx(static_cast<size_t>(m), 0);
  bool first = true;
  while (true) {
    RatVec x(static_cast<size_t>(m));
    for (long k = 0; k < m; ++k) {
      Rat xi(idx[static_cast<size_t>(k)], denom);
      xi.canonicalize();
      x[static_cast<size_t>(k)] = xi;
    }
    Int val = rho_eval(C, th, x);
    ++rep.candidates;
    if (first || val < rep.min_value) {
      rep.min_value = val;
      rep.witness = x;
      first = false;
    }
    long k = 0;
    while (k < m && ++idx[static_cast<size_t>(k)] == denom) idx[static_cast<size_t>(k++)] = 0;
    if (k == m) break;
  }
  return rep;
}

bool horn_criterion(const RatVec& theta) {
  if (theta.size() != 3) throw InvalidInstance("closed-form criterion: need three offsets");
  for (const Rat& th : theta)
    if (th <= 0 || th >= 1)
      throw InvalidInstance("closed-form criterion: offsets must lie strictly inside (0,1)");
  if (theta[1] + theta[2] <= 1) return true;
  return theta[0] + theta[1] <= 1 && theta[0] + theta[2] <= 1;
}

SeriesTruncation shifted_horn_series(const RatVec& theta, const IntVec& utilde, long B) {
  if (theta.size() != 3) throw InvalidInstance("shifted series: need three offsets");
  RatVec th3 = theta;
  for (Rat& th : th3) {
    th.canonicalize();  // coefficients below are compared exactly
    if (th <= 0 || th >= 1)
      throw InvalidInstance("shifted series: offsets must lie strictly inside (0,1)");
  }
  if (utilde.size() != 3) throw InvalidInstance("shifted series: shift must have three entries");
  if (B < 0) throw InvalidInstance("shifted series: window must be nonnegative");

  ClassicalInstance inst{3, 2, horn_forms(), th3};
  ClassicalEmbedding emb = classical_to_aset(inst);
  RatVec u = emb.beta;
  for (size_t i = 0; i < 3; ++i) u[i] += Rat(utilde[i]);
  MPointTest mt = test_M_membership(emb.cfg, emb.v, u);
  if (!mt.member || !mt.in_relative_interior)
    throw NotMember("shifted series: the shifted point leaves the parameter stratum");

  SeriesTruncation out;
  out.v = emb.v;
  out.u = u;
  out.B = B;
  for (long s1 = 0; s1 <= B; ++s1)
    for (long s2 = 0; s2 <= B; ++s2) {
      std::array<long, 3> sub = {s1 + s2, s2 - s1, s1 - s2};
      IntVec l(5);
      bool in_window = true;
      for (size_t i = 0; i < 3; ++i) {
        long li = -sub[i] + utilde[i].get_si();
        l[i] = li;
        in_window = in_window && std::abs(li) <= B;
      }
      l[3] = s1;
      l[4] = s2;
      if (!in_window) continue;
      Rat coeff = pochhammer(th3[0], sub[0] - utilde[0].get_si()) *
                  pochhammer(th3[1], sub[1] - utilde[1].get_si()) *
                  pochhammer(th3[2], sub[2] - utilde[2].get_si());
      coeff /= Rat(factorial(s1) * factorial(s2));
      out.terms.emplace(std::move(l), coeff);
    }
  return out;
}

}  // namespace hyperint
