// Command-line driver: certify | orbit | expand | padic-selftest | classical.
// Reads a JSON instance file, runs the requested pipeline, writes the JSON
// report to stdout (and to --json PATH when given), and prints a one-line
// summary with timing to stderr. Exit codes: 0 positive verdict, 1 negative
// verdict, 2 invalid input or internal failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperint/report.hpp"

namespace {

using namespace hyperint;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<unsigned long> parse_prime_list(const std::string& s) {
  std::vector<unsigned long> primes;
  for (const std::string& tok : split_commas(s)) {
    Int p;
    try {
      p = Int(tok);
    } catch (const std::invalid_argument&) {
      throw InvalidInstance("--primes: malformed integer \"" + tok + "\"");
    }
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
      throw InvalidInstance("--primes: " + p.get_str() + " is not prime");
    if (!p.fits_ulong_p()) throw InvalidInstance("--primes: " + p.get_str() + " is too large");
    primes.push_back(p.get_ui());
  }
  if (primes.empty()) throw InvalidInstance("--primes: empty list");
  return primes;
}

IntVec parse_int_list(const std::string& s) {
  IntVec v;
  for (const std::string& tok : split_commas(s)) {
    try {
      v.push_back(Int(tok));
    } catch (const std::invalid_argument&) {
      throw InvalidInstance("--shift: malformed integer \"" + tok + "\"");
    }
  }
  return v;
}

RatVec parse_rat_list(const std::string& s) {
  RatVec v;
  for (const std::string& tok : split_commas(s)) v.push_back(rat_from_string(tok));
  return v;
}

struct CommonFlags {
  std::string json_path;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--json", flags.json_path, "also write the JSON report to this path");
  cmd->add_flag("--quiet", flags.quiet, "suppress the report on stdout");
}

int emit(const CommandResult& res, const CommonFlags& flags, double elapsed_ms) {
  std::string text = render_report(res.report);
  if (!flags.quiet) std::cout << text;
  if (!flags.json_path.empty()) {
    std::ofstream out(flags.json_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << flags.json_path << "\n";
      return 2;
    }
    out << text;
  }
  std::cerr << res.summary << " [" << static_cast<long>(elapsed_ms) << " ms]\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certification of hypergeometric coefficient integrality"};
  app.require_subcommand(1);

  // shared option storage; each subcommand binds the fields it uses
  std::string instance_path;
  CommonFlags flags;
  std::string primes_csv, shift_csv, v_csv, rho_mode_str;
  long window = -1;       // -1 = keep the instance/default value
  long precision = 12;
  long min_samples = 10;
  unsigned long prime_flag = 0;  // 0 = default prime
  unsigned long selftest_p = 0;

  CLI::App* certify = app.add_subcommand("certify", "orbit + weight-maximality certificate");
  certify->add_option("instance", instance_path, "instance JSON file")->required();
  certify->add_option("--window,-B", window, "series window for the empirical checks");
  certify->add_option("--primes", primes_csv, "comma-separated primes for the empirical checks");
  add_common(certify, flags);

  CLI::App* orbit = app.add_subcommand("orbit", "parameter orbit table");
  orbit->add_option("instance", instance_path, "instance JSON file")->required();
  add_common(orbit, flags);

  CLI::App* expand = app.add_subcommand("expand", "series expansion with exact valuations");
  expand->add_option("instance", instance_path, "instance JSON file")->required();
  expand->add_option("--shift", shift_csv, "integer shift added to the base point");
  expand->add_option("--prime", prime_flag, "prime for the valuation column");
  expand->add_option("--window,-B", window, "expansion window");
  add_common(expand, flags);

  CLI::App* selftest =
      app.add_subcommand("padic-selftest", "verification suite for the ramified p-adic layer");
  selftest->add_option("-p,--prime", selftest_p, "prime")->required();
  selftest->add_option("--precision,-M", precision, "certified precision in p-adic digits");
  selftest->add_option("--v", v_csv, "comma-separated parameter panel (default built-in)");
  selftest->add_option("--min-samples", min_samples, "minimum determined indices per relation");
  add_common(selftest, flags);

  CLI::App* classical =
      app.add_subcommand("classical", "step-function analysis of a classical instance");
  classical->add_option("instance", instance_path, "instance JSON file")->required();
  classical->add_option("--rho-mode", rho_mode_str, "exact | grid")
      ->check(CLI::IsMember({"exact", "grid"}));
  add_common(classical, flags);

  CLI11_PARSE(app, argc, argv);

  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&start]() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };

  try {
    CommandResult res;
    if (app.got_subcommand(selftest)) {
      SelftestOptions opt;
      opt.p = selftest_p;
      opt.precision = precision;
      opt.min_samples = min_samples;
      if (!v_csv.empty()) opt.v_list = parse_rat_list(v_csv);
      Int p(static_cast<long>(selftest_p));
      if (selftest_p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw InvalidInstance("padic-selftest: p must be prime");
      res = cmd_padic_selftest(opt);
    } else {
      Instance inst = load_instance(instance_path);
      if (window >= 0) inst.window = window;
      if (!primes_csv.empty()) inst.primes = parse_prime_list(primes_csv);

      if (app.got_subcommand(certify)) {
        res = cmd_certify(inst);
      } else if (app.got_subcommand(orbit)) {
        res = cmd_orbit(inst);
      } else if (app.got_subcommand(expand)) {
        IntVec shift;
        if (!shift_csv.empty()) shift = parse_int_list(shift_csv);
        std::optional<unsigned long> p;
        if (prime_flag != 0) {
          Int pp(static_cast<long>(prime_flag));
          if (prime_flag < 2 || mpz_probab_prime_p(pp.get_mpz_t(), 40) == 0)
            throw InvalidInstance("expand: --prime must be prime");
          p = prime_flag;
        }
        res = cmd_expand(inst, shift, p);
      } else {
        std::optional<RhoMode> mode;
        if (rho_mode_str == "exact") mode = RhoMode::ExactCell;
        if (rho_mode_str == "grid") mode = RhoMode::Grid;
        res = cmd_classical(inst, mode);
      }
    }
    return emit(res, flags, elapsed());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
