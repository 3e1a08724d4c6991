#pragma once

#include "biherm/certificate/differential.hpp"
#include "biherm/certificate/structure.hpp"
#include "biherm/certificate/tolerances.hpp"
#include "biherm/deformation/deformation.hpp"
#include "biherm/groups/hopf_group.hpp"
#include "biherm/stats.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace biherm {

/// Identity name -> tier. The order of this table is the report order.
struct IdentitySpec {
  const char* name;
  Tier tier;
};
const std::vector<IdentitySpec>& identity_table();

/// Evaluates the pipeline at x with the frozen schedule and assembles the structure.
StructureField make_structure_field(const DeformationPipeline& pipeline, const StepSchedule& schedule);

/// gamma^T g(gamma x) gamma vs g(x) and gamma^{-1} J_-(gamma x) gamma vs J_-(x),
/// worst case over the elements ("equivariance_metric", "equivariance_acs").
ResidualMap check_gamma_equivariance(const DeformationPipeline& pipeline, const ContractionParams& c,
                                     const std::vector<GroupElement>& elements, const RealPoint4& x,
                                     const BihermitianSample& at_x);

/// gamma0 followed by the H generators.
std::vector<GroupElement> equivariance_elements(const HopfGroupData& data);

/// Default deformation-time grid 0.05, 0.10, ..., 0.50.
std::vector<double> default_t_grid();

struct CertificateConfig {
  HopfGroupData group;
  std::optional<double> t;          // t* from the sweep when absent
  std::vector<double> t_grid = default_t_grid();
  std::size_t samples = 200;
  std::uint64_t seed = 7;
  IntegratorOptions ode;
  DifferentialOptions fd;
  Tolerances tolerances;
  unsigned threads = 0;             // 0: BIHERM_THREADS or hardware concurrency
  bool equivariance = true;
};

struct IdentityResult {
  std::string name;
  Tier tier = Tier::Algebraic;
  ResidualStats stats;
  bool pass = false;
};

struct Exclusion {
  std::size_t index = 0;
  std::string error;    // error class, e.g. "NotPositive"
  std::string message;
};

struct SampleOutcome {
  bool included = false;
  ResidualMap residuals;
  double p = 1.0;
  double margin = 0.0;
  std::optional<Exclusion> exclusion;
  bool numerical_failure = false;
};

struct CertificateReport {
  Classification classification;
  double t = 0.0;
  bool t_selected = false;           // t came from the sweep
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::vector<IdentityResult> identities;
  std::vector<Exclusion> exclusions;
  std::size_t numerical_failures = 0;
  std::vector<SweepRow> sweep;       // when t was selected
  double min_positivity_margin = 0.0;
  double p_min = 0.0, p_max = 0.0;
  bool pass = false;
};

/// Certificate for one sample (never throws; failures become exclusions).
SampleOutcome certify_sample(const DeformationPipeline& pipeline, const HopfGroupData& group,
                             const std::vector<GroupElement>& elements, const RealPoint4& x,
                             std::size_t index, const DifferentialOptions& fd, bool equivariance);

/// Evaluates the potential at every sample. Throws NotPlurisubharmonic or
/// AmbiguousRadialTime for the lowest failing index.
void require_potential(const FlowSpec& spec, std::span<const RealPoint4> samples, unsigned threads);

/// Runs the full certificate. Throws InvalidGroupData when the classifier
/// refuses, NotPlurisubharmonic when dd^c f fails at a sample, NotPositive
/// when no grid time keeps the deformation positive.
CertificateReport run_certificate(const CertificateConfig& config);

/// BIHERM_THREADS if set, else hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace biherm
