"""Two resistances on a rotated triangle.

A unit triangle carries a planar rotation by theta on edge (1, 2).  The
operator-norm resistance jumps as soon as theta leaves zero, while the scalar
connection resistance stays at the classical value 2/3 for every angle.
"""
import numpy as np

from conres import chung_connection_resistance, cycle, scalar_connection_resistance


def main():
    print(f"{'theta':>10} {'operator norm':>14} {'5 + 4 cos':>10} {'scalar':>8}")
    for theta in (0.0, 3e-4, np.pi / 4, np.pi / 2, np.pi, 3 * np.pi / 2):
        cg = cycle(3, theta)
        chung = chung_connection_resistance(cg, 1, 2)
        scalar = scalar_connection_resistance(cg, 1, 2)
        closed = 5 + 4 * np.cos(theta) if theta else 2 / 3
        print(f"{theta:10.4f} {chung:14.8f} {closed:10.6f} {scalar:8.6f}")

    # The kernel of the Laplacian collapses from dimension 2 to 0 at theta > 0,
    # which is why the pseudoinverse, and with it the operator norm, jumps.
    for theta in (0.0, 1e-3):
        lam = np.linalg.eigvalsh(cycle(3, theta).laplacian)
        print(f"theta={theta:g}: smallest eigenvalues {lam[:3].round(8)}")


if __name__ == "__main__":
    main()
