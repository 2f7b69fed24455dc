#pragma once

// Symmetry-certificate differentials.
//
// A certificate is a rational differential omega with prescribed behaviour at
// the marked points, regular on the curve obtained by doubling every gluing
// class, and vanishing on D + sigma(D) (resp. D + tau(D)). Its existence
// forces A = 0 (Schroedinger), U = V or real U, V (Dirac).
//
// All conditions are linear in omega and are accepted up to one global
// nonzero scalar; found certificates are normalized so that the residue at
// inf_+ is +1 (Schroedinger) or the k_+^2 coefficient at inf_+ is -1 (Dirac).

#include <optional>
#include <string>
#include <vector>

#include "fgap/grid.hpp"
#include "fgap/rational.hpp"
#include "fgap/spectral_data.hpp"

namespace fgap {

enum class CertificateKind { schrodinger_sigma, dirac_sigma, dirac_tau };

std::string to_string(CertificateKind kind);
/// Accepts "schrodinger-sigma", "dirac-sigma", "dirac-tau" (or underscores).
std::optional<CertificateKind> parse_certificate_kind(const std::string& s);

struct CertificateRequest {
  CurveSpec spec;
  PoleDivisor divisor;
  CertificateKind kind = CertificateKind::schrodinger_sigma;
};

struct CheckEntry {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CertificateReport {
  std::vector<CheckEntry> checks;
  std::vector<std::string> warnings;
  int pole_order_plus = 0;
  int pole_order_minus = 0;
  /// Residues (Schroedinger) or k^2 coefficients (Dirac) at inf_+, inf_-.
  cplx marked_plus, marked_minus;
  std::vector<cplx> class_residue_sums;
  std::vector<cplx> extra_zeros;
  /// Multiplying omega by this scalar gives the canonical normalization.
  cplx normalization{1.0, 0.0};

  bool passed() const;
};

struct Certificate {
  RationalDifferential omega;
  CertificateReport report;
  /// Dimension of the homogeneous solution space before normalization.
  int solution_space_dim = 0;
  int numerator_degree_bound = 0;
};

struct CertificateOutcome {
  std::optional<Certificate> certificate;
  std::string infeasibility;
  int solution_space_dim = 0;

  bool feasible() const { return certificate.has_value(); }
};

struct CertificateOptions {
  double rank_threshold = 1e-10;
  double consistency_tolerance = 1e-8;
  double check_tolerance = 1e-9;
};

/// Points where omega must vanish, with multiplicities (coincident points of
/// D and its image are merged).
std::vector<WeightedPoint> required_zeros(const CertificateRequest& req);

/// Throws InvalidRequest when the request is malformed for its kind. The
/// genus-0 sigma obstruction is not an error: find_certificate reports it as
/// infeasibility.
CertificateOutcome find_certificate(const CertificateRequest& req,
                                    const CertificateOptions& opts = {});

/// Recomputes every condition from scratch; usable on any differential.
CertificateReport verify_certificate(const RationalDifferential& omega,
                                     const CertificateRequest& req,
                                     const CertificateOptions& opts = {});

struct ConsequenceTolerances {
  double magnetic = 1e-8;
  double c_squared = 1e-8;
  double u_minus_v = 1e-8;
  double imaginary = 1e-7;
};

struct ConsequenceReport {
  bool passed = false;
  std::string claim;
  double max_abs_magnetic = 0.0;
  double max_c_squared_deviation = 0.0;
  double max_u_minus_v = 0.0;
  double max_imag_u = 0.0;
  double max_imag_v = 0.0;
  std::size_t failed_nodes = 0;
};

ConsequenceReport assert_consequences(const CertificateRequest& req,
                                      const Certificate& cert,
                                      const Grid& grid,
                                      const ConsequenceTolerances& tol = {});

/// Residues of the rational differential built from the wave at `pos` and
/// omega (psi(P) psi(sigma P) omega, psi_1(P) psi_2(sigma P) omega, or
/// psi_c(P) conj(psi_c(tau P)) omega'), grouped by where the poles sit.
struct ResidueBalance {
  cplx marked;    // 0 and infinity
  cplx supports;  // gluing support points
  cplx other;     // everything else
  cplx total;
};

/// `component` selects psi_1 or psi_2 for dirac_tau (ignored otherwise).
ResidueBalance residue_balance(const CertificateRequest& req,
                               const RationalDifferential& omega,
                               Position pos, int component = 1);

}  // namespace fgap
