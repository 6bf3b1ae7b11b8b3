"""Smith normal form over the integers and abelianization invariants."""
from __future__ import annotations

from .presentation import Presentation
from .words import exponent_sums


def smith_diagonal(matrix) -> list[int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith form (positive)."""
    a = [list(map(int, row)) for row in matrix]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: nonzero entry of least absolute value in the trailing block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # a remainder survived; move the smallest one onto the pivot
                best = min(((abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]), default=None)
                best_c = min(((abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]), default=None)
                cand = min(x for x in (best, best_c) if x is not None)
                _, i, j = cand
                if j == t:
                    a[t], a[i] = a[i], a[t]
                else:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                continue
            # divisibility of the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def invariant_factors(matrix, ncols: int) -> list[int]:
    """Invariant factors of Z^ncols / rowspace(matrix); 1s dropped, free part as trailing 0s."""
    d = smith_diagonal(matrix) if matrix else []
    torsion = [x for x in d if x != 1]
    for i in range(1, len(torsion)):
        assert torsion[i] % torsion[i - 1] == 0
    return torsion + [0] * (ncols - len(d))


def relation_matrix(p: Presentation) -> list[list[int]]:
    return [exponent_sums(r, p.ngens) for r in p.relators]


def abelianization(p: Presentation) -> list[int]:
    return invariant_factors(relation_matrix(p), p.ngens)


def hermite_rows(rows, n: int) -> list[list[int]]:
    """Row-style Hermite normal form basis of the lattice spanned by ``rows``."""
    a = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(n):
        nz = [r for r in a if r[col]]
        rest = [r for r in a if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv, keep = nz[0], [nz[0]]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        if nz:
            piv = nz[0] if nz[0][col] > 0 else [-x for x in nz[0]]
            basis.append(piv)
        a = rest
    # reduce entries above each pivot into [0, pivot)
    for k, row in enumerate(basis):
        c = next(j for j, x in enumerate(row) if x)
        for h in range(k):
            q = basis[h][c] // row[c]
            if q:
                basis[h] = [x - q * y for x, y in zip(basis[h], row)]
    return basis


def reduce_mod_lattice(v, basis) -> tuple[int, ...]:
    """Canonical representative of v modulo the lattice with HNF ``basis``."""
    v = list(v)
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)
