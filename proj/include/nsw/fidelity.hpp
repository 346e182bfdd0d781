#pragma once

#include <cmath>

namespace nsw {

// Werner-channel noise parameters. p_mem is derived from storage time t and
// coherence time T as exp(-t/T).
struct WernerParams {
  double p0 = 1.0;      // elementary-link depolarizing parameter
  double p_swap = 1.0;  // per-swap depolarizing parameter
  double t = 0.0;       // storage time
  double T = 1.0;       // coherence time

  double p_mem() const { return std::exp(-t / T); }

  // Convenience for sweeping p_mem directly (fixes T = 1).
  static WernerParams with_memory(double p0, double p_swap, double p_mem);

  void validate() const;  // throws std::domain_error on out-of-range values
};

struct FidelityResult {
  int hops = 1;          // L
  double p = 1.0;        // end-to-end depolarizing parameter p_L
  double fidelity = 1.0; // F_L = (1 + 3 p_L) / 4
};

// Fidelity of one elementary Werner link: (3 p0 + 1) / 4.
double link_fidelity(double p0);

// Closed form over an L-hop path: p_L = p0^L (p_swap p_mem^2)^(L-1),
// F_L = (1 + 3 p_L) / 4.
FidelityResult end_to_end(const WernerParams& params, int hops);

// Independent check of the closed form: explicit density matrices, ideal
// Bell projection per swap followed by two-qubit depolarizing (p_swap) and
// single-qubit depolarizing (p_mem) on both held qubits. Guarded to L <= 4.
double density_matrix_oracle(const WernerParams& params, int hops);

// Evaluates the closed form at the typical path length L = round(d/2)
// (minimum 1) for a network of n = 2^d nodes.
FidelityResult fidelity_vs_network_size(const WernerParams& params, int n);

// Merged graph-state variant: multiplicative error accumulation over the
// measured-out qubits, F0^measured_count.
double graphstate_extraction_fidelity(double f0, int measured_count);

}  // namespace nsw
