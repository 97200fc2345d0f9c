#include "hyperint/series.hpp"

#include <algorithm>

namespace hyperint {

SeriesTruncation expand_F(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u, long B) {
  SeriesTruncation s;
  s.v = v;
  s.u = u;
  s.B = B;
  for (const IntVec& l : enumerate_E(cfg, v, u, B)) {
    std::vector<long> li(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (!l[j].fits_slong_p()) throw InternalError("relation coordinate overflow");
      li[j] = l[j].get_si();
    }
    s.terms.emplace(l, bracket_vector(v, li));
  }
  return s;
}

IntegralityReport verify_integrality(const SeriesTruncation& s, unsigned long p) {
  for (const Rat& vj : s.v)
    if (!is_p_integral(vj, p))
      throw NotPIntegral("verify_integrality: parameter vector is not p-integral");
  IntegralityReport rep;
  rep.p = p;
  for (const auto& [l, c] : s.terms) {
    ++rep.term_count;
    Valuation o = ord_p(c, p);
    rep.min_ord = min(rep.min_ord, o);
    if (o < Rat(0)) {
      rep.integral = false;
      rep.offenders.push_back(IntegralityOffender{l, c, o.value});
    }
  }
  return rep;
}

namespace {

// image of the truncation under prod_j (d/dΛ_j)^{d_j}, keyed by l - d;
// zero coefficients are dropped.
std::map<IntVec, Rat> iterated_derivative(const SeriesTruncation& s, const IntVec& d) {
  std::map<IntVec, Rat> out;
  for (const auto& [l, c] : s.terms) {
    Rat factor(1);
    for (std::size_t j = 0; j < d.size(); ++j) {
      for (Int i = 0; i < d[j]; ++i) factor *= s.v[j] + Rat(l[j]) - Rat(i);
    }
    if (factor == 0) continue;
    IntVec key(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) key[j] = l[j] - d[j];
    out.emplace(key, factor * c);
  }
  return out;
}

bool within_window(const IntVec& l, long W) {
  for (const Int& x : l) {
    if (x > W || x < -W) return false;
  }
  return true;
}

// compare two coefficient maps restricted to |l|_inf <= W
std::pair<long, long> compare_on_window(const std::map<IntVec, Rat>& a,
                                        const std::map<IntVec, Rat>& b, long W) {
  long compared = 0, mismatches = 0;
  auto scan = [&](const std::map<IntVec, Rat>& x, const std::map<IntVec, Rat>& y, bool count) {
    for (const auto& [l, c] : x) {
      if (!within_window(l, W)) continue;
      if (count) ++compared;
      auto it = y.find(l);
      Rat other = (it == y.end()) ? Rat(0) : it->second;
      if (c != other) {
        if (count)
          ++mismatches;
        else if (it == y.end())
          ++mismatches;  // key only on the second side
      }
    }
  };
  scan(a, b, true);
  scan(b, a, false);
  return {compared, mismatches};
}

}  // namespace

ContiguityReport contiguity_check(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u,
                                  long k, long B) {
  if (k < 0 || k >= cfg.N) throw InvalidInstance("contiguity index out of range");
  if (B < 1) throw WindowUnderflow("contiguity needs B >= 1");
  ContiguityReport rep;
  RatVec beta = config_beta(cfg, v);
  FaceRef sigma = smallest_face(cfg, beta);
  rep.face_member =
      std::find(sigma.generators.begin(), sigma.generators.end(), k) != sigma.generators.end();

  SeriesTruncation F = expand_F(cfg, v, u, B);
  IntVec d(cfg.N, Int(0));
  d[k] = 1;
  std::map<IntVec, Rat> deriv = iterated_derivative(F, d);
  rep.derivative_zero = deriv.empty();

  RatVec u_lower(u.size());
  for (long i = 0; i < cfg.n; ++i) u_lower[i] = u[i] - Rat(cfg.cols[i][k]);
  SeriesTruncation G = expand_F(cfg, v, u_lower, B);

  auto [compared, mismatches] = compare_on_window(deriv, G.terms, B - 1);
  rep.compared = compared;
  rep.mismatches = mismatches;
  rep.pass = (mismatches == 0) && (rep.face_member || rep.derivative_zero);
  return rep;
}

BoxReport box_annihilation_check(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u,
                                 const IntVec& l_rel, long B) {
  if (static_cast<long>(l_rel.size()) != cfg.N) throw InvalidInstance("relation has wrong length");
  for (long i = 0; i < cfg.n; ++i) {
    Int s(0);
    for (long j = 0; j < cfg.N; ++j) s += cfg.cols[i][j] * l_rel[j];
    if (s != 0) throw InvalidInstance("box operator requires a relation vector (A l = 0)");
  }
  long norm = 0;
  IntVec plus(cfg.N, Int(0)), minus(cfg.N, Int(0));
  for (long j = 0; j < cfg.N; ++j) {
    if (l_rel[j] > 0) plus[j] = l_rel[j];
    if (l_rel[j] < 0) minus[j] = -l_rel[j];
    long a = std::abs(l_rel[j].get_si());
    norm = std::max(norm, a);
  }
  if (B < norm) throw WindowUnderflow("box operator window is smaller than the relation");

  SeriesTruncation F = expand_F(cfg, v, u, B);
  std::map<IntVec, Rat> dplus = iterated_derivative(F, plus);
  std::map<IntVec, Rat> dminus = iterated_derivative(F, minus);
  auto [compared, mismatches] = compare_on_window(dplus, dminus, B - norm);
  BoxReport rep;
  rep.compared = compared;
  rep.pass = mismatches == 0;
  return rep;
}

bool euler_check(const GeneratorConfig& cfg, const SeriesTruncation& s) {
  for (const auto& [l, c] : s.terms) {
    for (long i = 0; i < cfg.n; ++i) {
      Rat acc(0);
      for (long j = 0; j < cfg.N; ++j) acc += Rat(cfg.cols[i][j]) * (s.v[j] + Rat(l[j]));
      if (acc != s.u[i]) return false;
    }
  }
  return true;
}

Certification certify(const GeneratorConfig& cfg, const RatVec& v, long D, long h,
                      const std::vector<unsigned long>& primes, long B) {
  Certification cert;
  cert.orbit = frobenius_orbit(cfg, v, D, h);
  bool all_maximal = true;
  for (const ParameterState& st : cert.orbit.states) {
    cert.conditions.push_back(check_weight_maximality(cfg, st.v));
    all_maximal = all_maximal && cert.conditions.back().maximal;
  }
  cert.certified = cert.orbit.face_stable && all_maximal;

  for (unsigned long p : primes) {
    for (const ParameterState& st : cert.orbit.states) {
      SeriesTruncation F = expand_F(cfg, st.v, st.beta, B);
      PrimeEmpirical pe;
      pe.p = p;
      pe.state_index = st.index;
      pe.report = verify_integrality(F, p);
      long p_mod_D = static_cast<long>(p % static_cast<unsigned long>(D));
      if (cert.certified && p_mod_D == ((h % D) + D) % D && !pe.report.integral)
        throw InternalError("certified instance produced a non-integral coefficient at p ≡ h");
      cert.empirical.push_back(std::move(pe));
    }
  }
  return cert;
}

}  // namespace hyperint
