#include <benchmark/benchmark.h>

#include "biherm/certificate/certificate.hpp"
#include "biherm/groups/sampling.hpp"
#include "biherm/inoue/inoue.hpp"
#include "biherm/potentials/potential.hpp"

using namespace biherm;

namespace {

HopfGroupData case_b() {
  HopfGroupData d;
  d.contraction.alpha = 0.5;
  d.contraction.beta = 0.6;
  return d;
}

HopfGroupData case_c() {
  HopfGroupData d;
  d.contraction.alpha = 0.6;
  d.contraction.beta = 0.6;
  d.contraction.lambda = 0.1;
  d.h_generators = {-Mat2c::Identity()};
  return d;
}

}  // namespace

static void Potential(benchmark::State& state) {
  const HopfGroupData g = state.range(0) ? case_c() : case_b();
  const FlowSpec spec = FlowSpec::from_contraction(g.contraction);
  const auto pts = fundamental_annulus_sample(1, g.contraction, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(potential(spec, pts[i++ % pts.size()]));
  }
}
BENCHMARK(Potential)->Arg(0)->Arg(1);

static void FlowIntegration(benchmark::State& state) {
  const HopfGroupData g = case_c();
  const FlowSpec spec = FlowSpec::from_contraction(g.contraction);
  const auto pts = fundamental_annulus_sample(2, g.contraction, 16);
  const double t = state.range(0) / 100.0;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_flow(spec, t, pts[i++ % pts.size()]));
  }
}
BENCHMARK(FlowIntegration)->Arg(5)->Arg(50)->Unit(benchmark::kMicrosecond);

static void ScheduleReplay(benchmark::State& state) {
  const HopfGroupData g = case_c();
  const FlowSpec spec = FlowSpec::from_contraction(g.contraction);
  const RealPoint4 x = fundamental_annulus_sample(3, g.contraction, 1)[0];
  const StepSchedule sched = integrate_flow(spec, 0.5, x).schedule;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_flow(spec, sched, x));
  }
}
BENCHMARK(ScheduleReplay)->Unit(benchmark::kMicrosecond);

static void CertifySample(benchmark::State& state) {
  const HopfGroupData g = case_c();
  const DeformationPipeline pipe(FlowSpec::from_contraction(g.contraction), 0.5);
  const auto elements = equivariance_elements(g);
  const RealPoint4 x = fundamental_annulus_sample(4, g.contraction, 1)[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_sample(pipe, g, elements, x, 0, DifferentialOptions{}, true));
  }
}
BENCHMARK(CertifySample)->Unit(benchmark::kMillisecond);

static void InoueVerdict(benchmark::State& state) {
  InoueGroupData d;
  d.generators.push_back({4.0, 0.0, std::polar(0.5, 0.3), 0.0, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(degree_sign_report(d, 7, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(InoueVerdict)->Arg(100)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
