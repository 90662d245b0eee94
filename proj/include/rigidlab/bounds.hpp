#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rigidlab/graph.hpp"
#include "rigidlab/linalg.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab {

using ContextValue = std::variant<bool, long long, double, std::string>;

/// Outcome of evaluating one inequality or identity.
///
/// Inequalities report lhs <= rhs with margin = rhs - lhs and hold when
/// margin >= -tol. Residual checks put the residual in lhs, the allowed
/// residual in rhs and use tol = 0. A skipped report holds vacuously.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tol = 0.0;
  bool holds = true;
  bool skipped = false;
  std::map<std::string, ContextValue> context;

  static BoundReport inequality(std::string name, double lhs, double rhs, double tol);
  static BoundReport residual(std::string name, double residual, double allowed);
  static BoundReport skip(std::string name, std::string reason);
};

struct CheckTolerances {
  double inequality = 1e-9;    // absolute slack on margins
  double identity = 1e-10;     // max-entry deviation for matrix identities
  double spectrum = 1e-9;      // eigenvalue agreement
  double eigenvector = 1e-6;   // subspace residual for eigenvector relations
  double orthogonality = 1e-9; // inner products that must vanish
  double equality = 1e-9;      // |lhs - rhs| below this counts as equality
};

/// Collinear identity for frameworks on a line: L(p) = Lap (x) x x^T, the spectrum
/// relation lambda_{z+i}(L) = lambda_i(Lap) with z = (d-1)n zeros below it,
/// and the lifted eigenvectors v_i (x) x. Returns three reports (identity,
/// spectrum, eigenvectors); all are skipped when m = 0. Throws InvalidInput
/// when m > 1.
std::vector<BoundReport> lemma1_check(const Framework& fw, const CheckTolerances& tol = {});

/// Lifted quadratic-form bound with u = v (x) x: u^T L(p) u <= v^T Lap v. The context records
/// whether equality holds and whether every edge direction is +-x.
BoundReport lemma2_check(const Framework& fw, const Vector& x, const Vector& v,
                         const CheckTolerances& tol = {});

/// lambda_k(L(p)) <= lambda_{ceil(k/d)}(Lap) for k = 1..dn.
std::vector<BoundReport> jordan_bound_check(const Framework& fw, const CheckTolerances& tol = {});

/// ceil((D + 1)/d) for the affine dimension m, evaluated through both closed
/// forms. Throws InvalidInput unless 1 <= m <= d.
Index ceiling_index(Index d, Index m);

struct LewBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Published bounds on a_d(K_n), valid for n >= 2d and d >= 2. Throws
/// OutOfDomain otherwise.
LewBounds lew_bounds(Index n, Index d);

/// Pointwise bound: lambda_{D+1}(L(p)) <= lambda_2(Lap).
BoundReport theorem_check(const Framework& fw, const CheckTolerances& tol = {});

/// Rotation that makes the lifted Fiedler vector orthogonal to every trivial
/// motion of the rotated framework.
struct WitnessRotation {
  Matrix rotation;  // rows q_1..q_d, special orthogonal
  Vector fiedler;   // v
  Vector lifted;    // u = v (x) e_1
  bool degenerate = false;  // M^T v vanished; rotation is the identity
};

WitnessRotation witness_rotation(const Framework& fw);

/// Runs the proof chain on the rotated framework: (a) u is orthogonal to
/// T(Qp), (b) u^T L(Qp) u <= lambda_2, (c) lambda_{D+1}(L(Qp)) <= lambda_2,
/// (d) the spectrum is unchanged by the rotation.
std::vector<BoundReport> witness_verify(const Framework& fw, const CheckTolerances& tol = {});

bool all_hold(const std::vector<BoundReport>& reports);

}  // namespace rigidlab
