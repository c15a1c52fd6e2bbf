#pragma once

// Certified upper bounds for sectional category: a dgl map alpha from
// L(V ⊕ W) into the fat-wedge model with linear part a -> a_1 + ... + a_{n+1}
// and the remainder in the ideal of the relative generators U.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quillen/lie_expr.hpp"
#include "quillen/models.hpp"

namespace quillen {

struct SearchOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 2000;  // solves, over backtracking and restarts
  std::size_t restarts = 16;
};

struct SolveRecord {
  std::string generator;
  int degree = 0;
  std::size_t unknowns = 0;
  std::size_t kernel_dim = 0;
  bool consistent = false;
  std::string choice;  // particular, particular+c*k<j>, random
  std::string rhs;     // right-hand side when inconsistent
};

struct Transcript {
  std::vector<SolveRecord> records;
  std::size_t solves = 0;
  std::size_t restarts = 0;
  bool budget_exhausted = false;
};

struct SecatProblem {
  MapModel map;
  int n = 1;
  int max_degree = 8;
  SearchOptions options;
};

struct Certificate {
  FatWedge wedge;
  DglMorphism alpha;                 // map.dgl -> wedge.kept
  std::vector<LieExpr> expressions;  // alpha on each generator, over wedge.kept
  int n = 0;
  int max_degree = 0;
};

struct SecatOutcome {
  int n = 0;
  std::optional<Certificate> certificate;
  bool exhaustive = false;  // meaningful when no certificate
  std::string reason;
  int effective_degree = 0;  // degree bound of the power model used
  Transcript transcript;
};

SecatOutcome find_alpha(const SecatProblem& p);

struct VerifyReport {
  bool pass = true;
  int bound = 0;
  std::vector<std::string> failures;
};

/// Re-checks a certificate from its expressions alone.
VerifyReport verify_certificate(const Certificate& c, int max_degree);

struct SecatResult {
  std::optional<int> value;
  std::vector<SecatOutcome> outcomes;
};

SecatResult secat_upper_bound(const MapModel& m, int max_n, int max_degree, const SearchOptions& options = {});

SecatResult cat(const DglPtr& l, int max_n, int max_degree, const SearchOptions& options = {});

struct TcResult {
  SecatResult secat;
  Replacement replacement;
};

TcResult tc(const DglPtr& l, int max_n, int max_degree, const SearchOptions& options = {});

/// alpha(a) text per generator, in generator order.
std::vector<std::pair<std::string, std::string>> certificate_table(const Certificate& c);

}  // namespace quillen
