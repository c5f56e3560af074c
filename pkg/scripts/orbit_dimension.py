"""Circle orbits: d-point sampling versus generic phases, and covariance of the results.

Prints, per d, the dimension of the orbit span of Q_0 under the d-point
sampling and under 4d random phases, the block-diagonal count 2d - 1, and the
covariance residual of span{W_n} under the cyclic subgroup and under random
phases. Then the same covariance comparison for the Heisenberg-Weyl graph
under pi(S) and pi(M) separately.

    python scripts/orbit_dimension.py --dim-max 12
"""
import argparse

from opgraphs.circle import (
    circle_instance,
    circle_unitary,
    orbit_graph,
    uniform_circle_phases,
    w_graph,
    zd_phases,
)
from opgraphs.graph import check_covariance
from opgraphs.heisenberg_weyl import hw_graph, hw_instance, pi_generators


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim-max", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'d':>3} {'dim(d-pt)':>9} {'dim(rand)':>9} {'2d-1':>5} {'cov Z_d':>10} {'cov rand':>10}")
    for d in range(2, args.dim_max + 1):
        inst = circle_instance(d)
        sparse = orbit_graph(inst, 0)
        dense = orbit_graph(inst, 0, uniform_circle_phases(4 * d, seed=args.seed))
        w = w_graph(inst)
        cz = check_covariance(w, [circle_unitary(inst, phi) for phi in zd_phases(d)])
        cr = check_covariance(w, [circle_unitary(inst, phi)
                                  for phi in uniform_circle_phases(16, seed=args.seed)])
        print(f"{d:>3} {sparse.dim:>9} {dense.dim:>9} {2 * d - 1:>5} {cz:>10.2e} {cr:>10.2e}")

    print()
    print(f"{'d':>3} {'cov pi(S)':>10} {'cov pi(M)':>10}")
    for d in range(2, args.dim_max + 1):
        g = hw_graph(d)
        ps, pm = pi_generators(hw_instance(d))
        print(f"{d:>3} {check_covariance(g, [ps]):>10.2e} {check_covariance(g, [pm]):>10.2e}")


if __name__ == "__main__":
    main()
