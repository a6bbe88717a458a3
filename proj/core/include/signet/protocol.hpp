#pragma once

// Protocol synthesis for non-trivial consensus: informed-agent selection,
// coupling matrices, coupling coefficient, external signal and the grounded
// Laplacian, plus the certificates that the synthesized design is sound.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signet/linalg.hpp"
#include "signet/signed_graph.hpp"
#include "signet/structure.hpp"

namespace signet {

struct ProtocolDesign {
  std::size_t n_agents = 0;
  std::size_t dim = 0;
  Decomposition decomposition;
  AgentSet informed;               // V_I, equal to the antagonized set U
  std::optional<double> lower_bound;  // C = max C_i over V1 (absent when U is empty)
  double delta = 0.0;              // uniform coupling coefficient on V_I
  double k1 = 0.0;                 // 1 + 2 / delta
  Vector theta;                    // consensus target, nonzero
  Vector x0;                       // external signal k1 * theta
  std::map<AgentId, SymMatrix> coupling;  // |B_i| for i in V_I
  Matrix grounded_laplacian;       // L_B (Nd x Nd)
  /// False when the graph has no antagonistic edge: nothing is grounded and
  /// consensus on theta is not certified.
  bool lemma_applicable = true;
  std::vector<std::string> notes;

  bool is_informed(AgentId i) const { return coupling.contains(i); }
};

/// C_i = 1/2 lambda_max[S^-1 (sum_{N'_i} |A_ji| - sum_{N_i} |A_ij|)] with
/// S = sum_{Omega_i} |A_ij|, evaluated on the symmetric similar matrix
/// S^-1/2 M S^-1/2. Throws Errc::OmegaSumNotPD when S is not positive
/// definite (including Omega_i empty).
double compute_ci(const MatrixGraph& g, AgentId i);

struct SynthesisOptions {
  double margin = 0.1;                 // delta = C + margin
  std::optional<double> delta;         // explicit delta, must exceed C
};

/// Throws Errc::InvalidInput (theta zero or wrong size, decomposition
/// invalid), Errc::OmegaSumNotPD, Errc::EmptyV1WithAntagonism and
/// Errc::DeltaBelowBound.
ProtocolDesign synthesize(const MatrixGraph& g, const Decomposition& dec, const Vector& theta,
                          const SynthesisOptions& opts = {});

/// L + (Delta kron I_d) blockdiag(|B_1|, ..., |B_N|): only informed diagonal
/// blocks change, by delta * |B_i|.
Matrix grounded_laplacian(const MatrixGraph& g, const std::map<AgentId, SymMatrix>& coupling,
                          double delta);

/// (Delta kron I_d) B x0: block i is delta * |B_i| * x0 for informed i.
Vector forcing_vector(const ProtocolDesign& design);

/// || -L_B (1_N kron theta) + k1 (Delta kron I_d) B theta ||
double stationarity_residual(const ProtocolDesign& design);

/// Tolerance 1e-9 * N * ||theta|| applied to stationarity_residual.
double stationarity_tolerance(const ProtocolDesign& design);

enum class CertificationMode { Fixed, TimeVarying };

std::string_view to_string(CertificationMode m) noexcept;

struct CertificationReport {
  CertificationMode mode = CertificationMode::Fixed;
  HurwitzCertificate hurwitz;   // for -L_B
  bool symmetric_part_pd = false;  // L_B + L_B^T positive definite
  double stationarity = 0.0;
  bool stationarity_ok = false;
  bool passed = false;
  std::vector<std::string> notes;
};

/// Fixed needs -L_B Hurwitz plus stationarity; TimeVarying needs
/// L_B + L_B^T positive definite plus stationarity.
CertificationReport certify_design(const ProtocolDesign& design, CertificationMode mode);

}  // namespace signet
