#ifndef HKGEOM_VERIFY_HPP
#define HKGEOM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hkgeom/hrr.hpp"
#include "hkgeom/lattice.hpp"
#include "hkgeom/period.hpp"

namespace hk::verify {

enum class Profile { fast, full };

struct SuiteOptions {
  Profile profile = Profile::fast;
  std::uint64_t seed = 0;
  // CLI binary used by the determinism check; empty means compare repeated
  // in-process runs instead.
  std::string cli_path;
  // Todd convention handed to every Riemann-Roch evaluation, so the suite
  // can be run against the misprinted expansion.
  ToddConvention todd = ToddConvention::standard;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

CriterionResult run_criterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> run_suite(const SuiteOptions& options);
constexpr int criterion_count = 11;

// ---------------------------------------------------------------------------
// Oracles, written independently of the library code they check.

// prod_k (1 - q^k)^{-e} by repeated multiplication with 1/(1 - q^k)
// (or (1 - q^k) when e < 0).
std::vector<Integer> colored_partitions(long e, std::size_t order);

// Sum over the strata of the compactified Jacobian of a nodal curve of
// arithmetic genus g with normalization genus h: each stratum is an
// extension of a g'-dimensional abelian variety by a torus (C*)^k.
Integer jacobian_stratification_euler(long normalization_genus, long nodes);

// Bitangents of a smooth plane curve of degree d from the Pluecker formulas
// for the dual curve.
Integer pluecker_bitangents(long d);

// Exact membership check with its own bilinear-form loop.
bool independent_membership(const IntegralLattice& lattice, const PeriodPoint& p);
double independent_membership(const IntegralLattice& lattice, const NumericPeriodPoint& p);

// Random period point of diag(1,1,1,-1,-1): e1 + i e2 moved by reflections.
PeriodPoint random_period_point(const IntegralLattice& lattice, std::uint64_t seed, int reflections = 3);

}  // namespace hk::verify

#endif  // HKGEOM_VERIFY_HPP
