#include "hyperint/report.hpp"

#include <sstream>

namespace hyperint {

namespace {

// Largest integer magnitude emitted as a JSON number; larger values become
// decimal strings so no reader loses precision.
const Int kJsonIntMax = (Int(1) << 53);

Json instance_echo(const Instance& inst) {
  Json j = Json::object();
  j["kind"] = inst.kind;
  if (!inst.name.empty()) j["name"] = inst.name;
  j["n"] = inst.cfg.n;
  j["N"] = inst.cfg.N;
  if (inst.classical) j["m"] = inst.classical->m;
  j["D"] = inst.D;
  j["h"] = inst.h;
  return j;
}

Json json_face(const FaceRef& f) {
  Json g = Json::array();
  for (long i : f.generators) g.push_back(i);
  return g;
}

Json json_weight_report(const WeightMaximalityReport& wm) {
  Json j = Json::object();
  j["weight_maximal"] = wm.maximal;
  j["beta_weight"] = json_rat(wm.beta_weight);
  Json slices = Json::array();
  for (const SliceInfo& s : wm.slices) {
    Json sj = Json::object();
    sj["k"] = s.k;
    sj["target_weight"] = json_rat(s.target_weight);
    sj["lattice_points"] = s.lattice_points;
    sj["interior_hits"] = s.interior_hits;
    slices.push_back(std::move(sj));
  }
  j["slices"] = std::move(slices);
  if (wm.counterexample) {
    Json c = Json::object();
    c["u"] = json_rat_vector(wm.counterexample->u);
    c["weight"] = json_rat(wm.counterexample->weight_val);
    c["witness"] = json_int_vector(wm.counterexample->witness);
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

Json json_integrality(const IntegralityReport& rep) {
  Json j = Json::object();
  j["term_count"] = rep.term_count;
  j["min_ord"] = json_valuation(rep.min_ord);
  j["integral"] = rep.integral;
  Json offs = Json::array();
  for (const IntegralityOffender& o : rep.offenders) {
    Json oj = Json::object();
    oj["l"] = json_int_vector(o.l);
    oj["coefficient"] = json_rat(o.coefficient);
    oj["ord"] = json_valuation(Valuation::fin(o.ord));
    offs.push_back(std::move(oj));
  }
  j["offenders"] = std::move(offs);
  return j;
}

std::string rho_mode_name(RhoMode mode) {
  return mode == RhoMode::ExactCell ? "exact" : "grid";
}

}  // namespace

Json json_rat(const Rat& q) { return rat_to_string(q); }

Json json_rat_vector(const RatVec& v) {
  Json a = Json::array();
  for (const Rat& q : v) a.push_back(json_rat(q));
  return a;
}

Json json_int(const Int& x) {
  if (abs(x) <= kJsonIntMax && x.fits_slong_p())
    return static_cast<Json::number_integer_t>(x.get_si());
  return x.get_str();
}

Json json_int_vector(const IntVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

Json json_valuation(const Valuation& v) {
  if (v.infinite) return "inf";
  Rat c = v.value;
  c.canonicalize();
  if (c.get_den() == 1) return json_int(c.get_num());
  return rat_to_string(c);
}

std::string render_report(const Json& report) { return report.dump(2) + "\n"; }

CommandResult cmd_certify(const Instance& inst) {
  std::vector<unsigned long> primes = inst.primes ? *inst.primes : default_primes(inst);
  long B = inst.window.value_or(10);
  Certification cert = certify(inst.cfg, inst.v, inst.D, inst.h, primes, B);

  Json j = Json::object();
  j["schema"] = "hyperint/1";
  j["command"] = "certify";
  j["instance"] = instance_echo(inst);
  j["window"] = B;
  Json jp = Json::array();
  for (unsigned long p : primes) jp.push_back(p);
  j["primes"] = std::move(jp);
  j["period"] = cert.orbit.period();
  j["face_stable"] = cert.orbit.face_stable;

  Json states = Json::array();
  for (size_t i = 0; i < cert.orbit.states.size(); ++i) {
    const ParameterState& st = cert.orbit.states[i];
    Json sj = Json::object();
    sj["index"] = st.index;
    sj["v"] = json_rat_vector(st.v);
    sj["beta"] = json_rat_vector(st.beta);
    sj["face_generators"] = json_face(st.sigma);
    Json wj = json_weight_report(cert.conditions[i]);
    for (auto& [key, val] : wj.items()) sj[key] = val;
    states.push_back(std::move(sj));
  }
  j["states"] = std::move(states);
  j["certified"] = cert.certified;

  Json emp = Json::array();
  long dirty = 0;
  for (const PrimeEmpirical& pe : cert.empirical) {
    Json ej = Json::object();
    ej["prime"] = pe.p;
    ej["state"] = pe.state_index;
    Json ij = json_integrality(pe.report);
    for (auto& [key, val] : ij.items()) ej[key] = val;
    emp.push_back(std::move(ej));
    if (!pe.report.integral) ++dirty;
  }
  j["empirical"] = std::move(emp);
  j["verdict"] = cert.certified ? "CERTIFIED" : "NOT-CERTIFIED";

  std::ostringstream sum;
  if (cert.certified) {
    sum << "CERTIFIED: period " << cert.orbit.period() << ", every state weight-maximal; "
        << cert.empirical.size() << " empirical window(s)";
    if (dirty > 0) sum << ", " << dirty << " non-integral at primes not congruent to h";
  } else {
    long bad = -1;
    for (size_t i = 0; i < cert.conditions.size(); ++i)
      if (!cert.conditions[i].maximal && bad < 0) bad = static_cast<long>(i);
    sum << "NOT-CERTIFIED: ";
    if (!cert.orbit.face_stable) sum << "orbit face unstable";
    if (bad >= 0) {
      if (!cert.orbit.face_stable) sum << "; ";
      sum << "state " << bad << " admits a higher-weight stratum point";
    }
    sum << "; " << dirty << " non-integral empirical window(s)";
  }

  CommandResult res;
  res.exit_code = cert.certified ? 0 : 1;
  res.report = std::move(j);
  res.summary = sum.str();
  return res;
}

CommandResult cmd_orbit(const Instance& inst) {
  FrobeniusOrbit orbit = frobenius_orbit(inst.cfg, inst.v, inst.D, inst.h);

  Json j = Json::object();
  j["schema"] = "hyperint/1";
  j["command"] = "orbit";
  j["instance"] = instance_echo(inst);
  j["period"] = orbit.period();
  j["face_stable"] = orbit.face_stable;
  Json states = Json::array();
  for (const ParameterState& st : orbit.states) {
    Json sj = Json::object();
    sj["index"] = st.index;
    sj["v"] = json_rat_vector(st.v);
    sj["beta"] = json_rat_vector(st.beta);
    sj["beta_weight"] = json_rat(weight(inst.cfg, st.beta));
    sj["face_generators"] = json_face(st.sigma);
    states.push_back(std::move(sj));
  }
  j["states"] = std::move(states);

  std::ostringstream sum;
  sum << "orbit period " << orbit.period() << "; smallest face "
      << (orbit.face_stable ? "stable" : "NOT stable") << " across states";

  CommandResult res;
  res.exit_code = 0;
  res.report = std::move(j);
  res.summary = sum.str();
  return res;
}

CommandResult cmd_expand(const Instance& inst, const IntVec& shift,
                         std::optional<unsigned long> prime) {
  if (!shift.empty() && static_cast<long>(shift.size()) != inst.cfg.n)
    throw InvalidInstance("expand: shift must have one entry per ambient coordinate");
  unsigned long p = prime ? *prime : (inst.primes && !inst.primes->empty()
                                          ? inst.primes->front()
                                          : default_primes(inst, 1).front());
  long B = inst.window.value_or(10);

  RatVec beta = config_beta(inst.cfg, inst.v);
  RatVec u = beta;
  for (size_t i = 0; i < shift.size(); ++i) u[i] += Rat(shift[i]);

  SeriesTruncation F = expand_F(inst.cfg, inst.v, u, B);
  IntegralityReport rep = verify_integrality(F, p);

  Json j = Json::object();
  j["schema"] = "hyperint/1";
  j["command"] = "expand";
  j["instance"] = instance_echo(inst);
  j["u"] = json_rat_vector(u);
  Json js = Json::array();
  for (size_t i = 0; i < shift.size(); ++i) js.push_back(json_int(shift[i]));
  j["shift"] = std::move(js);
  j["window"] = B;
  j["prime"] = p;
  j["term_count"] = rep.term_count;
  j["min_ord"] = json_valuation(rep.min_ord);
  j["integral"] = rep.integral;
  Json terms = Json::array();
  for (const auto& [l, coeff] : F.terms) {
    Json tj = Json::object();
    tj["l"] = json_int_vector(l);
    tj["coefficient"] = json_rat(coeff);
    tj["ord"] = json_valuation(ord_p(coeff, p));
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  j["verdict"] = rep.integral ? "INTEGRAL" : "NON-INTEGRAL";

  std::ostringstream sum;
  sum << "expanded " << rep.term_count << " term(s) in window " << B << " at p=" << p
      << ": min ord " << rep.min_ord.to_string();
  if (!rep.integral) sum << " (" << rep.offenders.size() << " offender(s))";

  CommandResult res;
  res.exit_code = rep.integral ? 0 : 1;
  res.report = std::move(j);
  res.summary = sum.str();
  return res;
}

CommandResult cmd_padic_selftest(const SelftestOptions& opt) {
  SelftestReport rep = run_padic_selftest(opt);

  Json j = Json::object();
  j["schema"] = "hyperint/1";
  j["command"] = "padic-selftest";
  j["p"] = rep.p;
  j["precision"] = rep.precision;
  j["working_precision"] = rep.working_precision;
  j["degree"] = rep.degree;
  j["target_agreement"] = rep.target_agreement;
  j["h_tail_slack"] = json_rat(rep.h_tail_slack);
  Json checks = Json::array();
  long failed = 0;
  for (const SelftestCheck& c : rep.checks) {
    Json cj = Json::object();
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
    if (!c.pass) ++failed;
  }
  j["checks"] = std::move(checks);
  j["pass"] = rep.pass;
  j["verdict"] = rep.pass ? "PASS" : "FAIL";

  std::ostringstream sum;
  sum << "p=" << rep.p << " precision " << rep.precision << ": "
      << (rep.pass ? "PASS" : "FAIL") << " (" << rep.checks.size() << " checks";
  if (failed > 0) sum << ", " << failed << " failed";
  sum << ")";

  CommandResult res;
  res.exit_code = rep.pass ? 0 : 1;
  res.report = std::move(j);
  res.summary = sum.str();
  return res;
}

CommandResult cmd_classical(const Instance& inst, std::optional<RhoMode> mode_override) {
  if (!inst.classical)
    throw InvalidInstance("classical analysis requires a classical-kind instance");
  const ClassicalInstance& ci = *inst.classical;
  RhoMode mode =
      mode_override ? *mode_override : inst.rho_mode.value_or(RhoMode::ExactCell);

  FrobeniusOrbit orbit = frobenius_orbit(inst.cfg, inst.v, inst.D, inst.h);

  Json j = Json::object();
  j["schema"] = "hyperint/1";
  j["command"] = "classical";
  j["instance"] = instance_echo(inst);
  j["rho_mode"] = rho_mode_name(mode);
  j["period"] = orbit.period();
  j["face_stable"] = orbit.face_stable;

  bool all_nonneg = true;
  Int worst = 0;
  Json states = Json::array();
  for (const ParameterState& st : orbit.states) {
    RatVec theta(static_cast<size_t>(ci.n));
    for (long i = 0; i < ci.n; ++i) theta[static_cast<size_t>(i)] = -st.v[static_cast<size_t>(i)];
    StepFunctionReport rho = rho_min(ci.C, theta, mode, inst.D);
    WeightMaximalityReport wm = check_weight_maximality(inst.cfg, st.v);

    Json sj = Json::object();
    sj["index"] = st.index;
    sj["theta"] = json_rat_vector(theta);
    sj["min_value"] = json_int(rho.min_value);
    sj["witness"] = json_rat_vector(rho.witness);
    sj["cells_examined"] = rho.candidates;
    sj["weight_maximal"] = wm.maximal;
    if (mode == RhoMode::ExactCell) {
      // The two criteria are provably equivalent; a disagreement would be a
      // library defect, not a property of the instance.
      if ((rho.min_value >= 0) != wm.maximal)
        throw InternalError("step-function minimum disagrees with the lattice criterion");
      sj["criteria_agree"] = true;
    }
    states.push_back(std::move(sj));

    all_nonneg = all_nonneg && rho.min_value >= 0;
    worst = std::min(worst, rho.min_value);
  }
  j["states"] = std::move(states);
  j["all_nonnegative"] = all_nonneg;
  j["verdict"] = all_nonneg ? "NONNEGATIVE" : "NEGATIVE";

  std::ostringstream sum;
  sum << "step function " << rho_mode_name(mode) << " minimum across " << orbit.period()
      << " state(s): " << worst.get_str() << " ("
      << (all_nonneg ? "NONNEGATIVE" : "NEGATIVE") << ")";

  CommandResult res;
  res.exit_code = all_nonneg ? 0 : 1;
  res.report = std::move(j);
  res.summary = sum.str();
  return res;
}

}  // namespace hyperint
