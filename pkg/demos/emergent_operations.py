"""Watch the approximate operations converge as the scale shrinks.

The difference Delta, sum Sigma, and inverse all carry an eps-sized
correction.  On the Euclidean line the correction is literally eps * h;
on the Heisenberg group the based difference is exact at every scale
and only its value moves.  The table prints both stories.
"""

from fractions import Fraction

import numpy as np

from ngd import (
    Scale,
    Delta_eps,
    Sigma_eps,
    check_pplay,
    euclidean_model,
    gamma_irq_from_dilation,
    heisenberg_model,
    inv_eps,
)
from ngd.emergent import Delta3, Sigma3, sample_point_quads


def main():
    E = euclidean_model(1)
    o = np.zeros(1)
    g = E.arrow(np.array([3.0]), o)
    h = E.arrow(np.array([1.0]), o)

    print("euclidean arrows 3 <- 0 and 1 <- 0:")
    print(f"  {'eps':>10}  {'Delta':>8}  {'Sigma':>8}  {'inv(2)':>8}")
    k = E.arrow(np.array([2.0]), o)
    for j in (1, 2, 4, 8, 16):
        s = Scale(Fraction(1, 2) ** j)
        row = (
            float(E.target(Delta_eps(E, s, g, h))[..., 0]),
            float(E.target(Sigma_eps(E, s, g, h))[..., 0]),
            float(E.target(inv_eps(E, s, k))[..., 0]),
        )
        print(f"  {float(s.modulus):>10.6f}  "
              + "  ".join(f"{x:>8.5f}" for x in row))
    print("  limits:              2.00000   4.00000  -2.00000")

    H = heisenberg_model()
    e = np.zeros(3)
    u = np.array([1.0, 0.0, 0.0])
    v = np.array([0.0, 1.0, 0.0])
    print("\nheisenberg based operations at base e:")
    for j in (1, 4, 10):
        s = Scale(Fraction(1, 2) ** j)
        eps = float(s.modulus)
        print(f"  eps={eps:<10.6g} Delta={np.round(Delta3(H, s, e, u, v), 6)}"
              f"  Sigma={np.round(Sigma3(H, s, e, u, v), 6)}")
    print(f"  group product u.v = {H.group.mul(u, v)}"
          "   (the Sigma limit; Delta tends to (-1, 1, -1/2))")

    print("\nidentity battery on sampled quadruples:")
    for model in (E, heisenberg_model()):
        Q = gamma_irq_from_dilation(model)
        quads = sample_point_quads(model, np.random.default_rng(1), n=400)
        print(check_pplay(Q, quads).summary())


if __name__ == "__main__":
    main()
