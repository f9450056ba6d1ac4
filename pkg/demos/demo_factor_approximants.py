"""Tensor-power approximants of the Powers and Araki-Woods factors.

Finite tensor powers of M_2 (or M_3) in a product state carry modular spectra
that approximate the classification data of type-III factors: one ratio gives
the geometric ladder lam^Z, two rationally independent ratios fill the line.
Reduced purity decays strictly with the number of factors, the finite shadow
of the absence of pure states.
"""

import numpy as np

from vnlab.factors import (araki_woods_approximant, log_ratio_rational_quality,
                           powers_approximant, powers_purity, signature)

print("== Powers ladder, lam = 0.5 ==")
for n in range(1, 5):
    sig = signature(powers_approximant(0.5, n))
    ks = np.unique(np.round(sig.log_spectrum / np.log(0.5), 9))
    print(f" N={n}: log-spectrum = log(lam) * {{{', '.join(str(int(k)) for k in ks)}}}"
          f"   purity {sig.reduced_purity:.6f} (closed form {powers_purity(0.5, n):.6f})")

print("\n== Araki-Woods densification, lam = 0.5, mu = 0.3 ==")
quality = log_ratio_rational_quality(0.5, 0.3)
print(f" log(lam)/log(mu) = {quality['ratio']:.8f}; best rational with "
      f"denominator <= 1000: {quality['numerator']}/{quality['denominator']} "
      f"(error {quality['error']:.1e})")
for n in range(1, 4):
    sig = signature(araki_woods_approximant(0.5, 0.3, n), window=1.0)
    print(f" N={n}: {sig.log_spectrum.size:4d} log-eigenvalues, "
          f"max gap in [-1, 1] = {sig.max_gap:.4f}")
print(" the gap shrinks as the two incommensurate ratios interleave")

print("\n== degenerate control: mu = lam collapses onto one ladder ==")
sig = signature(araki_woods_approximant(0.4, 0.4, 2))
ks = sig.log_spectrum / np.log(0.4)
print(f" max distance of log-spectrum from integer multiples of log(lam): "
      f"{np.max(np.abs(ks - np.round(ks))):.2e}")
