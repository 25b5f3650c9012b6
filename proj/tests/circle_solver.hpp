#pragma once

#include <vector>

// Brute-force search for a witness (phi, psi) in the circle case, with
// Gamma / tau a wedge of m + 1 circles and theta_tau = (1, 0, ..., 0).
//
// Target side: pi_1 of the quotient is Z, theta is reduction mod n, and the
// upstairs Z includes with index n. Everything is abelian, so psi is an
// integer per generator and each kernel word is evaluated by its exponent sum.
// Kernel words: y1^n, then y1^i yj y1^-i for j = 2..m+1, i = 0..n-1.
namespace circle_oracle {

inline bool witness_exists(const std::vector<long>& cls, int n, int m) {
  const long window = 6L * n;
  auto mod = [n](long v) { return ((v % n) + n) % n; };

  std::vector<long> psi(static_cast<std::size_t>(m + 1), 0);
  auto kernel_images_match = [&]() {
    if (n * cls[0] != n * psi[0]) return false;
    for (int j = 1; j <= m; ++j) {
      for (int i = 0; i < n; ++i) {
        const long exponent_sum = i * psi[0] + psi[static_cast<std::size_t>(j)] - i * psi[0];
        if (n * cls[static_cast<std::size_t>(1 + (j - 1) * n + i)] != exponent_sum) return false;
      }
    }
    return true;
  };

  // Odometer over psi in [-window, window]^(m+1), theta face enforced per slot.
  std::vector<long> start(psi.size());
  for (std::size_t s = 0; s < psi.size(); ++s) {
    long v = -window;
    while (mod(v) != (s == 0 ? 1 % n : 0)) ++v;
    start[s] = psi[s] = v;
  }
  while (true) {
    if (kernel_images_match()) return true;
    std::size_t s = 0;
    while (s < psi.size()) {
      psi[s] += n;
      if (psi[s] <= window) break;
      psi[s] = start[s];
      ++s;
    }
    if (s == psi.size()) return false;
  }
}

}  // namespace circle_oracle
