"""Exact linear algebra over the rationals and prime fields via sympy's DomainMatrix."""
from fractions import Fraction
from typing import List, Optional, Sequence

import sympy as sp
from sympy.polys.matrices import DomainMatrix

from src.core.polynomials import RationalPolynomial, to_fraction, to_qq


def rational_matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    height = len(rows)
    width = len(rows[0]) if height else 0
    return DomainMatrix([[to_qq(x) for x in row] for row in rows], (height, width), sp.QQ)


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    return to_fraction(rational_matrix(rows).det())


def determinant_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant over GF(p) of a matrix of residues"""
    size = len(rows)
    integral = DomainMatrix([[sp.ZZ(int(x) % p) for x in row] for row in rows], (size, size), sp.ZZ)
    return int(integral.det()) % p


def characteristic_polynomial(rows: Sequence[Sequence[Fraction]]) -> RationalPolynomial:
    return RationalPolynomial.from_dense(rational_matrix(rows).charpoly())


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One solution of matrix·x = rhs, free variables set to zero; None when inconsistent"""
    colCount = len(matrix[0]) if matrix else 0
    augmented = rational_matrix([list(row) + [b] for row, b in zip(matrix, rhs)])
    reduced, pivots = augmented.rref()
    if colCount in pivots:
        return None
    entries = reduced.to_Matrix()
    solution = [Fraction(0)] * colCount
    for r, col in enumerate(pivots):
        solution[col] = to_fraction(entries[r, colCount] / entries[r, col])
    return solution
