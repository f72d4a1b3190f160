#pragma once

// Lattice sums of the kernel |j|^{-sigma} over Z^d, used by the discrete
// Gagliardo form. All functions are deterministic and thread-safe.

namespace hsfrac::lattice {

// Hurwitz zeta sum_{k>=0} (k+a)^{-sigma}, sigma > 1, a > 0.
double hurwitz_zeta(double sigma, double a);

// Layer sum sum_{j in Z^d} (k^2+|j|^2)^{-sigma/2} for k > 0, 0 <= d <= 2,
// sigma > d.
double layer_sum(int d, double sigma, double k);

// sum_{k >= k0} layer_sum(d, sigma, k) for integer k0 >= 1.
double layer_tail(int d, double sigma, long k0);

// Epstein zeta sum_{j in Z^n, j != 0} |j|^{-sigma}, 1 <= n <= 3, sigma > n.
double epstein_zeta(int n, double sigma);

// Analytic continuation of epstein_zeta to every real sigma != n, by the
// theta-function splitting at t = 1. Equals -1 at sigma = 0.
double epstein_zeta_continued(int n, double sigma);

// Kernel mass seen from a node at height i1 >= 1 restricted to heights >= 0,
// with the height-0 layer weighted 1/2: epstein_zeta minus the layers at
// offsets k > i1 and half the layer at k = i1.
double lower_half_row(int n, double sigma, long i1);

}  // namespace hsfrac::lattice
