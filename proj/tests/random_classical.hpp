#pragma once
// Deterministic random classical instances satisfying the structural
// invariants (unit column sums, >= 2 nonzero entries per column, no zero
// rows, offset sign rules), together with a compatible modulus/residue pair.
// Shared by the unit tests and the acceptance runner for cross-validating the
// step-function minimum against the lattice weight-maximality criterion.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "hyperint/classical.hpp"

namespace hyperint {
namespace testing {

struct RandomClassical {
  ClassicalInstance inst;
  long D = 1;
  long h = 1;
};

inline RandomClassical random_classical_instance(std::mt19937& rng, long max_n = 4,
                                                 long max_m = 2, long max_D = 12) {
  auto uni = [&](long lo, long hi) -> long {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    ClassicalInstance inst;
    inst.n = uni(2, max_n);
    inst.m = uni(1, max_m);
    inst.C.assign(static_cast<size_t>(inst.n), IntVec(static_cast<size_t>(inst.m), Int(0)));
    for (long k = 0; k < inst.m; ++k) {
      long nz = uni(2, inst.n);
      std::vector<long> rows(static_cast<size_t>(inst.n));
      std::iota(rows.begin(), rows.end(), 0L);
      std::shuffle(rows.begin(), rows.end(), rng);
      long sum = 0;
      for (long t = 0; t + 1 < nz; ++t) {
        long c = 0;
        while (c == 0) c = uni(-3, 3);
        inst.C[static_cast<size_t>(rows[static_cast<size_t>(t)])][static_cast<size_t>(k)] = c;
        sum += c;
      }
      inst.C[static_cast<size_t>(rows[static_cast<size_t>(nz - 1)])][static_cast<size_t>(k)] =
          1 - sum;
    }

    long D = uni(1, max_D);
    std::vector<long> residues;
    for (long r = 1; r <= D; ++r)
      if (std::gcd(r, D) == 1) residues.push_back(r);
    long h = residues[static_cast<size_t>(uni(0, static_cast<long>(residues.size()) - 1))];

    bool feasible = true;
    inst.theta.assign(static_cast<size_t>(inst.n), Rat(0));
    for (long j = 0; j < inst.n && feasible; ++j) {
      bool has_pos = false, has_neg = false;
      for (const Int& c : inst.C[static_cast<size_t>(j)]) {
        has_pos = has_pos || c > 0;
        has_neg = has_neg || c < 0;
      }
      long lo = has_pos ? 1 : 0;   // offset 0 forbidden with a positive entry
      long hi = has_neg ? D - 1 : D;  // offset 1 forbidden with a negative entry
      if (lo > hi) {
        feasible = false;
        break;
      }
      Rat th(uni(lo, hi), D);
      th.canonicalize();  // the two-argument mpq constructor does not reduce
      inst.theta[static_cast<size_t>(j)] = th;
    }
    if (!feasible) continue;

    try {
      validate_classical(inst);
    } catch (const InvalidInstance&) {
      continue;
    }
    return RandomClassical{inst, D, h};
  }
  throw InternalError("random classical instance: generation did not converge");
}

}  // namespace testing
}  // namespace hyperint
