#pragma once

// Closed-form oracles. Each compares the pipeline against a formula that
// does not go through the code path it checks.

#include <cstdint>
#include <string>
#include <vector>

namespace biherm {

struct OracleResult {
  std::string name;
  double value = 0.0;      // worst residual
  double tolerance = 0.0;
  bool pass = false;
};

/// Equal moduli: z1(t) = cos 2t z1 + sin 2t conj z2, z2(t) = cos 2t z2 - sin 2t conj z1
/// against the integrator at t = 0.3.
OracleResult oracle_rotation_flow(std::uint64_t seed, std::size_t n = 100, double t = 0.3);

/// Shear flow: phi_s(phi_t z) = phi_{s+t} z and phi_1 = gamma0 (via the group action).
OracleResult oracle_shear_group_law(std::uint64_t seed, std::size_t n = 100);

/// Equal moduli: f = |z|^2 and dd^c f = 4 omega0 against the implicit radial-time jet.
OracleResult oracle_equal_moduli_potential(std::uint64_t seed, std::size_t n = 100);

/// f = |z|^2: X from the linear solve against z1' = 2 conj z2, z2' = -2 conj z1.
OracleResult oracle_hamiltonian_field(std::uint64_t seed, std::size_t n = 20);

/// acs_from_form_pair(Phi0, D^T Psi0 D) = D^{-1} J0 D for random Phi0-symplectic D.
OracleResult oracle_symplectic_pullback(std::uint64_t seed, std::size_t n = 100);

/// Brute-force permutation sum for B ^ C against wedge_to_volume.
OracleResult oracle_wedge_permutation(std::uint64_t seed, std::size_t n = 100);

std::vector<OracleResult> run_oracles(std::uint64_t seed);

}  // namespace biherm
