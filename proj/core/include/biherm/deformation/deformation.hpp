#pragma once

// Hamiltonian deformation of the standard (2,0)-form.
//
// X is the Phi0-Hamiltonian field of the potential f (i_X Phi0 = df), phi_t
// its flow, and Psi_-^t = phi_t^* Psi0 = D^T Psi0 D with D = D(phi_t). The
// quotient forms (Phi0, Psi0, Psi_-^t) / f descend to the Hopf surface.

#include "biherm/potentials/flow.hpp"
#include "biherm/tensor/forms.hpp"
#include "biherm/tensor/jet.hpp"

#include <span>
#include <vector>

namespace biherm {

struct HamiltonianField {
  Vec4 vector = Vec4::Zero();
  Mat4 jacobian = Mat4::Zero();  // dX/dx
  JetScalar f;
};

/// The vector X with i_X Phi0 = df (a linear solve).
Vec4 hamiltonian_vector(const OneForm& df);

HamiltonianField hamiltonian_field(const FlowSpec& spec, const RealPoint4& z);

struct IntegratorOptions {
  double ode_tol = 1e-10;       // absolute and relative tolerance
  double initial_step = 1e-2;
  double min_step = 1e-13;      // StepSizeUnderflow below this
  std::size_t max_steps = 200000;
};

/// Accepted step sizes of an adaptive run, replayable at nearby points so
/// that finite differences see a smooth numerical flow map.
struct StepSchedule {
  std::vector<double> steps;
};

struct DeformationState {
  double t = 0.0;
  RealPoint4 x;                  // base point
  Mat4 D = Mat4::Identity();     // D(phi_t) at x
  RealPoint4 x_t;                // phi_t(x)
};

struct FlowResult {
  DeformationState state;
  StepSchedule schedule;
};

/// Adaptive Dormand-Prince integration of x' = X(x), D' = (dX/dx) D.
/// Throws StepSizeUnderflow.
FlowResult integrate_flow(const FlowSpec& spec, double t, const RealPoint4& x,
                          const IntegratorOptions& opt = {});

/// Continues an existing state to time t_new (D is composed along the way).
FlowResult continue_flow(const FlowSpec& spec, const DeformationState& from, double t_new,
                         const IntegratorOptions& opt = {});

/// Fixed-step replay of a recorded schedule starting at x.
DeformationState integrate_flow(const FlowSpec& spec, const StepSchedule& schedule,
                                const RealPoint4& x);

/// phi_t^* Psi0 = D^T Psi0 D.
TwoForm pullback_psi(const DeformationState& state);

struct QuotientTriple {
  TwoForm phi;        // Phi0 / f
  TwoForm psi_plus;   // Psi0 / f
  TwoForm psi_minus;  // Psi_-^t / f
  OneForm tau;        // -d log f
  double f = 0.0;
};

QuotientTriple quotient_triple(const JetScalar& f, const DeformationState& state);
QuotientTriple quotient_triple(const FlowSpec& spec, const DeformationState& state);

/// Smallest eigenvalue of the metric of the J0-invariant part of psi_minus.
double positivity_margin(const QuotientTriple& triple);

/// Relative max-norm distance between the central t-difference of the
/// quotient psi_minus at t = 0 and the LCK form dd^c f / f.
double t_zero_derivative_check(const FlowSpec& spec, const RealPoint4& x, double h_t = 1e-4,
                               const IntegratorOptions& opt = {});

struct SweepRow {
  double t = 0.0;
  double min_margin = 0.0;
  std::size_t argmin_sample_index = 0;
  double p_min = 1.0;
  double p_max = 1.0;
  double min_margin_ratio = 0.0;  // min over samples of margin / (t * lambda_min(F))
};

/// Positivity margin over the samples at each grid time (sorted ascending).
std::vector<SweepRow> positivity_sweep(const FlowSpec& spec, std::vector<double> t_grid,
                                       std::span<const RealPoint4> samples,
                                       const IntegratorOptions& opt = {});

/// Largest grid time t such that every grid time in (0, t] keeps the margin
/// above 10% of its linear prediction t * lambda_min(F). Zero if none.
double select_deformation_time(std::span<const SweepRow> sweep, double fraction = 0.1);

/// Evaluates the construction at arbitrary points with a frozen step schedule.
class DeformationPipeline {
 public:
  struct Point {
    JetScalar f;
    DeformationState state;
    QuotientTriple triple;
  };

  DeformationPipeline(FlowSpec spec, double t, IntegratorOptions opt = {})
      : spec_(std::move(spec)), t_(t), opt_(opt) {}

  const FlowSpec& spec() const { return spec_; }
  double t() const { return t_; }

  StepSchedule schedule_at(const RealPoint4& x) const;
  Point evaluate(const RealPoint4& x, const StepSchedule& schedule) const;
  /// Adaptive evaluation (own schedule).
  Point evaluate(const RealPoint4& x) const;

 private:
  FlowSpec spec_;
  double t_;
  IntegratorOptions opt_;
};

}  // namespace biherm
