#include "hyperint/instance.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace hyperint {

namespace {

using nlohmann::json;

long get_long(const json& j, const std::string& key) {
  if (!j.contains(key)) throw InvalidInstance("instance: missing field \"" + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw InvalidInstance("instance: field \"" + key + "\" must be an integer");
  return v.get<long>();
}

Int json_to_int(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Int(v.get<long>());
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw InvalidInstance("instance: malformed integer in " + where);
    }
  }
  throw InvalidInstance("instance: expected an integer (number or decimal string) in " + where);
}

Rat json_to_rat(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rat(Int(v.get<long>()));
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  throw InvalidInstance("instance: expected a rational (\"num/den\" string) in " + where);
}

IntMat parse_int_matrix(const json& v, long rows, long cols_n, const std::string& where) {
  if (!v.is_array() || static_cast<long>(v.size()) != rows)
    throw InvalidInstance("instance: " + where + " must be an array of " + std::to_string(rows) +
                          " rows");
  IntMat m;
  for (const json& row : v) {
    if (!row.is_array() || static_cast<long>(row.size()) != cols_n)
      throw InvalidInstance("instance: each row of " + where + " must have " +
                            std::to_string(cols_n) + " entries");
    IntVec r;
    for (const json& e : row) r.push_back(json_to_int(e, where));
    m.push_back(std::move(r));
  }
  return m;
}

RatVec parse_rat_vector(const json& v, long len, const std::string& where) {
  if (!v.is_array() || static_cast<long>(v.size()) != len)
    throw InvalidInstance("instance: " + where + " must be an array of " + std::to_string(len) +
                          " rationals");
  RatVec out;
  for (const json& e : v) out.push_back(json_to_rat(e, where));
  return out;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw InvalidInstance("instance: unknown field \"" + it.key() + "\"");
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInstance(std::string("instance: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInstance("instance: top level must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw InvalidInstance("instance: missing string field \"kind\"");

  Instance inst;
  inst.kind = j.at("kind").get<std::string>();
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw InvalidInstance("instance: \"name\" must be a string");
    inst.name = j.at("name").get<std::string>();
  }

  const std::set<std::string> common{"kind",   "name",      "D",       "h",
                                     "primes", "window",    "precision", "rho_mode"};

  if (inst.kind == "aset") {
    std::set<std::string> allowed = common;
    allowed.insert({"n", "N", "vectors", "v"});
    reject_unknown_keys(j, allowed);
    long n = get_long(j, "n"), N = get_long(j, "N");
    if (n < 1 || N < 1) throw InvalidInstance("instance: n and N must be positive");
    if (!j.contains("vectors"))
      throw InvalidInstance("instance: missing field \"vectors\"");
    // "vectors" lists the N generators, each with n coordinates; the
    // configuration stores them as columns of an n x N matrix.
    IntMat gens = parse_int_matrix(j.at("vectors"), N, n, "\"vectors\"");
    IntMat cols(static_cast<size_t>(n), IntVec(static_cast<size_t>(N), Int(0)));
    for (long jcol = 0; jcol < N; ++jcol)
      for (long i = 0; i < n; ++i)
        cols[static_cast<size_t>(i)][static_cast<size_t>(jcol)] =
            gens[static_cast<size_t>(jcol)][static_cast<size_t>(i)];
    inst.cfg = make_config(cols);
    if (!j.contains("v")) throw InvalidInstance("instance: missing field \"v\"");
    inst.v = parse_rat_vector(j.at("v"), N, "\"v\"");
    for (Rat& c : inst.v) c.canonicalize();
  } else if (inst.kind == "classical") {
    std::set<std::string> allowed = common;
    allowed.insert({"n", "m", "C", "theta", "normalize"});
    reject_unknown_keys(j, allowed);
    ClassicalInstance ci;
    ci.n = get_long(j, "n");
    ci.m = get_long(j, "m");
    if (ci.n < 1 || ci.m < 1) throw InvalidInstance("instance: n and m must be positive");
    if (!j.contains("C")) throw InvalidInstance("instance: missing field \"C\"");
    ci.C = parse_int_matrix(j.at("C"), ci.n, ci.m, "\"C\"");
    if (!j.contains("theta")) throw InvalidInstance("instance: missing field \"theta\"");
    ci.theta = parse_rat_vector(j.at("theta"), ci.n, "\"theta\"");
    for (Rat& t : ci.theta) t.canonicalize();
    if (j.contains("normalize")) {
      if (!j.at("normalize").is_boolean())
        throw InvalidInstance("instance: \"normalize\" must be a boolean");
      if (j.at("normalize").get<bool>()) ci = normalize_classical(ci);
    }
    ClassicalEmbedding emb = classical_to_aset(ci);
    inst.classical = std::move(ci);
    inst.cfg = std::move(emb.cfg);
    inst.v = std::move(emb.v);
  } else {
    throw InvalidInstance("instance: \"kind\" must be \"aset\" or \"classical\"");
  }

  inst.D = j.contains("D") ? get_long(j, "D") : 1;
  inst.h = j.contains("h") ? get_long(j, "h") : 1;
  validate_parameters(inst.v, inst.D, inst.h);

  if (j.contains("primes")) {
    const json& ps = j.at("primes");
    if (!ps.is_array()) throw InvalidInstance("instance: \"primes\" must be an array");
    std::vector<unsigned long> primes;
    for (const json& e : ps) {
      if (!e.is_number_integer() || e.get<long>() < 2)
        throw InvalidInstance("instance: primes must be integers >= 2");
      Int p(e.get<long>());
      if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw InvalidInstance("instance: " + p.get_str() + " is not prime");
      primes.push_back(e.get<unsigned long>());
    }
    inst.primes = std::move(primes);
  }
  if (j.contains("window")) {
    long B = get_long(j, "window");
    if (B < 0) throw InvalidInstance("instance: \"window\" must be nonnegative");
    inst.window = B;
  }
  if (j.contains("precision")) {
    long M = get_long(j, "precision");
    if (M < 1) throw InvalidInstance("instance: \"precision\" must be positive");
    inst.precision = M;
  }
  if (j.contains("rho_mode")) {
    if (!j.at("rho_mode").is_string())
      throw InvalidInstance("instance: \"rho_mode\" must be \"exact\" or \"grid\"");
    std::string mode = j.at("rho_mode").get<std::string>();
    if (mode == "exact")
      inst.rho_mode = RhoMode::ExactCell;
    else if (mode == "grid")
      inst.rho_mode = RhoMode::Grid;
    else
      throw InvalidInstance("instance: \"rho_mode\" must be \"exact\" or \"grid\"");
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInstance("instance: cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::vector<unsigned long> default_primes(const Instance& inst, long count) {
  std::vector<unsigned long> out;
  long target = ((inst.h % inst.D) + inst.D) % inst.D;
  Int p(1);
  while (static_cast<long>(out.size()) < count) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (p > 100000) throw InternalError("default primes: search ran away");
    if (inst.D > 1 && p % Int(inst.D) != Int(target)) continue;
    bool ok = true;
    for (const Rat& vj : inst.v) ok = ok && is_p_integral(vj, p.get_ui());
    if (ok) out.push_back(p.get_ui());
  }
  return out;
}

}  // namespace hyperint
