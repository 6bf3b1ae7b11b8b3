"""Independent oracles: faithful matrix models and the tree distance chain.

None of these touch the normal-form code they are used to check.
"""
from __future__ import annotations

import itertools


def _mat_mul(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def _mat_inv(a):
    # determinant one throughout
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


I2 = ((1, 0), (0, 1))


class MatrixModel:
    """Group generated by integer 2x2 matrices, optionally modulo -I."""

    def __init__(self, gens, projective: bool = False):
        self.gens = gens
        self.projective = projective

    def _norm(self, m):
        if not self.projective:
            return m
        flat = [x for row in m for x in row]
        lead = next(x for x in flat if x)
        return m if lead > 0 else tuple(tuple(-x for x in row) for row in m)

    def evaluate(self, word):
        m = I2
        for x in word:
            g = self.gens[abs(x) - 1]
            m = _mat_mul(m, g if x > 0 else _mat_inv(g))
        return self._norm(m)

    def is_identity(self, word) -> bool:
        return self.evaluate(word) == I2


class AffineModel:
    """D_inf acting on Z by x -> -x and x -> 1 - x; elements are (s, t): x -> s*x + t."""

    gens = ((-1, 0), (-1, 1))

    def evaluate(self, word):
        s, t = 1, 0
        for x in word:
            gs, gt = self.gens[abs(x) - 1]  # both generators are involutions
            # current map composed with the generator, which acts first
            s, t = s * gs, s * gt + t
        return s, t

    def is_identity(self, word) -> bool:
        return self.evaluate(word) == (1, 0)


# Sanov: A = [[1, 2], [0, 1]], B = [[1, 0], [2, 1]] generate a free group of rank 2
SANOV = MatrixModel((((1, 2), (0, 1)), ((1, 0), (2, 1))))
# PSL(2, Z) = Z2 * Z3 with S = [[0, -1], [1, 0]] and ST = [[0, -1], [1, 1]]
MODULAR = MatrixModel((((0, -1), (1, 0)), ((0, -1), (1, 1))), projective=True)
DIHEDRAL = AffineModel()

# step words for the uniform walk on the symmetrized generators
STEPS = {
    "free2": ((1,), (-1,), (2,), (-2,)),
    "dinf": ((1,), (2,)),
    "z2z3": ((1,), (2,), (-2,)),
}
MODELS = {"free2": SANOV, "dinf": DIHEDRAL, "z2z3": MODULAR}
PRESENTATIONS = {"free2": "<a,b | >", "dinf": "<a,b | a^2, b^2>", "z2z3": "<a,b | a^2, b^3>"}


def enumerate_returns(model, steps, n_max: int) -> list[int]:
    """Exhaustive word enumeration: number of step words of each length equal to 1."""
    out = []
    for n in range(n_max + 1):
        count = 0
        for combo in itertools.product(steps, repeat=n):
            if model.is_identity(tuple(x for s in combo for x in s)):
                count += 1
        out.append(count)
    return out


def tree_returns(degree: int, n_max: int) -> list[int]:
    """Returns of the simple walk on the degree-regular tree via its distance chain."""
    dist = {0: 1}
    out = [1]
    for _ in range(n_max):
        nxt: dict[int, int] = {}
        for d, c in dist.items():
            if d == 0:
                nxt[1] = nxt.get(1, 0) + degree * c
            else:
                nxt[d - 1] = nxt.get(d - 1, 0) + c
                nxt[d + 1] = nxt.get(d + 1, 0) + (degree - 1) * c
        dist = nxt
        out.append(dist.get(0, 0))
    return out
