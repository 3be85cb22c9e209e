"""Reference values computed once in exact rational arithmetic (sympy) and frozen.

Each entry names the instance; the test module ``test_frozen`` recomputes a
subset symbolically when sympy is importable.
"""
from fractions import Fraction as F

# Wheatstone bridge, rotation on (2, 4), pair (1, 4): scalar connection resistance.
WHEATSTONE_R14 = {
    "cos=3/5,sin=4/5": F(32, 33),
    "pi/2": F(14, 15),
    "pi": F(8, 9),
}
WHEATSTONE_CLASSICAL_R14 = F(1, 1)

# cycle(3, pi/2)
CYCLE3_HALFPI_OMEGA0_12 = [[F(1, 3), F(-2, 3)], [F(2, 3), F(1, 3)]]
CYCLE3_HALFPI_OMEGA1_1 = [[F(2, 3), F(0)], [F(0), F(2, 3)]]

# cycle(4) with R(cos=3/5, sin=4/5) on (1, 2): conductance matrix for pair (1, 3).
CYCLE4_PYTH_C13 = [
    [F(1), F(0), F(-4, 5), F(2, 5)],
    [F(0), F(1), F(-2, 5), F(-4, 5)],
    [F(-4, 5), F(-2, 5), F(1), F(0)],
    [F(2, 5), F(-4, 5), F(0), F(1)],
]
