#include "nsw/fidelity.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nsw {

WernerParams WernerParams::with_memory(double p0, double p_swap, double p_mem) {
  if (p_mem <= 0.0 || p_mem > 1.0) throw std::domain_error("p_mem must be in (0, 1]");
  WernerParams p;
  p.p0 = p0;
  p.p_swap = p_swap;
  p.T = 1.0;
  p.t = -std::log(p_mem);
  p.validate();
  return p;
}

void WernerParams::validate() const {
  if (p0 < 0.0 || p0 > 1.0) throw std::domain_error("p0 must be in [0, 1]");
  if (p_swap < 0.0 || p_swap > 1.0) throw std::domain_error("p_swap must be in [0, 1]");
  if (t < 0.0) throw std::domain_error("storage time must be >= 0");
  if (T <= 0.0) throw std::domain_error("coherence time must be > 0");
}

double link_fidelity(double p0) {
  if (p0 < 0.0 || p0 > 1.0) throw std::domain_error("p0 must be in [0, 1]");
  return (3.0 * p0 + 1.0) / 4.0;
}

FidelityResult end_to_end(const WernerParams& params, int hops) {
  params.validate();
  if (hops < 1) throw std::domain_error("hop count must be >= 1");
  const double swap_factor = params.p_swap * params.p_mem() * params.p_mem();
  const double p = std::pow(params.p0, hops) * std::pow(swap_factor, hops - 1);
  return {hops, p, (1.0 + 3.0 * p) / 4.0};
}

namespace {

// Dense real density matrices; all states in the oracle are real.
using Mat = std::vector<double>;

Mat werner_pair(double p) {
  Mat rho(16, 0.0);
  const double mix = (1.0 - p) / 4.0;
  for (int i = 0; i < 4; ++i) rho[static_cast<std::size_t>(i * 4 + i)] = mix;
  // |Phi+><Phi+| has 1/2 at the (00,00),(00,11),(11,00),(11,11) entries.
  for (int i : {0, 3}) {
    for (int j : {0, 3}) rho[static_cast<std::size_t>(i * 4 + j)] += p / 2.0;
  }
  return rho;
}

Mat kron(const Mat& a, int na, const Mat& b, int nb) {
  const int n = na * nb;
  Mat out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      for (int k = 0; k < nb; ++k) {
        for (int l = 0; l < nb; ++l) {
          out[static_cast<std::size_t>((i * nb + k) * n + (j * nb + l))] =
              a[static_cast<std::size_t>(i * na + j)] * b[static_cast<std::size_t>(k * nb + l)];
        }
      }
    }
  }
  return out;
}

// Projects qubits 1 and 2 (of 4, ordering A b1 b2 C) onto |Phi+>, returning
// the renormalized two-qubit state on (A, C).
Mat project_middle_bell(const Mat& rho16) {
  // |Phi+> on (b1, b2): amplitude 1/sqrt(2) at b1 b2 = 00 and 11.
  const std::array<std::pair<int, int>, 2> terms{{{0, 0}, {1, 1}}};
  Mat out(16, 0.0);
  double norm = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      for (int a2 = 0; a2 < 2; ++a2) {
        for (int c2 = 0; c2 < 2; ++c2) {
          double sum = 0.0;
          for (const auto& [b1, b2] : terms) {
            for (const auto& [b1p, b2p] : terms) {
              const int row = a * 8 + b1 * 4 + b2 * 2 + c;
              const int col = a2 * 8 + b1p * 4 + b2p * 2 + c2;
              sum += 0.5 * rho16[static_cast<std::size_t>(row * 16 + col)];
            }
          }
          out[static_cast<std::size_t>((a * 2 + c) * 4 + (a2 * 2 + c2))] = sum;
          if (a == a2 && c == c2) norm += sum;
        }
      }
    }
  }
  if (norm <= 0.0) throw std::runtime_error("bell projection annihilated the state");
  for (double& x : out) x /= norm;
  return out;
}

Mat depolarize_two_qubit(const Mat& rho, double p) {
  Mat out(16, 0.0);
  double trace = 0.0;
  for (int i = 0; i < 4; ++i) trace += rho[static_cast<std::size_t>(i * 4 + i)];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out[static_cast<std::size_t>(i * 4 + j)] = p * rho[static_cast<std::size_t>(i * 4 + j)];
      if (i == j) out[static_cast<std::size_t>(i * 4 + j)] += (1.0 - p) * trace / 4.0;
    }
  }
  return out;
}

// Single-qubit depolarizing on qubit q (0 or 1) of a two-qubit state:
// rho -> p rho + (1-p) I/2 (x) tr_q(rho).
Mat depolarize_one_qubit(const Mat& rho, int q, double p) {
  Mat partial(4, 0.0);  // reduced state on the untouched qubit
  for (int keep = 0; keep < 2; ++keep) {
    for (int keep2 = 0; keep2 < 2; ++keep2) {
      double sum = 0.0;
      for (int traced = 0; traced < 2; ++traced) {
        const int row = q == 0 ? traced * 2 + keep : keep * 2 + traced;
        const int col = q == 0 ? traced * 2 + keep2 : keep2 * 2 + traced;
        sum += rho[static_cast<std::size_t>(row * 4 + col)];
      }
      partial[static_cast<std::size_t>(keep * 2 + keep2)] = sum;
    }
  }
  Mat out(16, 0.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double v = p * rho[static_cast<std::size_t>(i * 4 + j)];
      const int iq = q == 0 ? i >> 1 : i & 1;
      const int jq = q == 0 ? j >> 1 : j & 1;
      const int ik = q == 0 ? i & 1 : i >> 1;
      const int jk = q == 0 ? j & 1 : j >> 1;
      if (iq == jq) {
        v += (1.0 - p) * 0.5 * partial[static_cast<std::size_t>(ik * 2 + jk)];
      }
      out[static_cast<std::size_t>(i * 4 + j)] = v;
    }
  }
  return out;
}

double bell_overlap(const Mat& rho) {
  // <Phi+| rho |Phi+> over entries (00,00),(00,11),(11,00),(11,11).
  return 0.5 * (rho[0] + rho[3] + rho[12] + rho[15]);
}

}  // namespace

double density_matrix_oracle(const WernerParams& params, int hops) {
  params.validate();
  if (hops < 1 || hops > 4) throw std::domain_error("oracle limited to 1 <= L <= 4");
  const double pm = params.p_mem();
  Mat current = werner_pair(params.p0);
  for (int swap = 1; swap < hops; ++swap) {
    Mat joint = kron(current, 4, werner_pair(params.p0), 4);
    Mat merged = project_middle_bell(joint);
    merged = depolarize_two_qubit(merged, params.p_swap);
    merged = depolarize_one_qubit(merged, 0, pm);
    merged = depolarize_one_qubit(merged, 1, pm);
    current = std::move(merged);
  }
  return bell_overlap(current);
}

FidelityResult fidelity_vs_network_size(const WernerParams& params, int n) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::domain_error("n must be a power of two, >= 2");
  int d = 0;
  while ((1 << d) < n) ++d;
  const int hops = std::max(1, static_cast<int>(std::lround(d / 2.0)));
  return end_to_end(params, hops);
}

double graphstate_extraction_fidelity(double f0, int measured_count) {
  if (f0 <= 0.0 || f0 > 1.0) throw std::domain_error("F0 must be in (0, 1]");
  if (measured_count < 0) throw std::domain_error("measured count must be >= 0");
  return std::pow(f0, measured_count);
}

}  // namespace nsw
