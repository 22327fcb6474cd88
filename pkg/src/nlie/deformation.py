"""Truncated deformations of an operator, obstruction class, extension.

A jet is the finite coefficient list (T, T_1, ..., T_m) of a polynomial
family; validity means the defining identity holds coefficient-wise at
every order up to m.  The obstruction to adding one more coefficient is a
degree-2 cochain whose class decides solvability of an exact linear system.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .combinat import compositions
from .core import CheckReport
from .linalg import Matrix, Vec, solve_linear, vadd, viszero, vscale, vsub, vzero
from .multilinear import BlockMap, SpaceSpec, iter_keys
from .rota_baxter import (DerivedContext, RBOperator, Wedge,
                          cochain_to_vector, derived_bracket,
                          matrix_to_cochain, rb_coboundary,
                          rb_coboundary_matrix, vector_to_matrix_cochain,
                          wedge_basis, wedge_coboundary_matrix)


@dataclass
class DeformationJet:
    base: RBOperator
    coeffs: list[Matrix]

    def __post_init__(self):
        dg = self.base.algebra.dim
        dv = self.base.rep.dim_v
        for m in self.coeffs:
            if (m.rows, m.cols) != (dg, dv):
                raise ValueError("jet coefficient shape mismatch")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def operators(self) -> list[Matrix]:
        return [self.base.matrix] + list(self.coeffs)

    def extended(self, nxt: Matrix) -> "DeformationJet":
        return DeformationJet(self.base, list(self.coeffs) + [nxt])


def _coefficient_residual(jet_ops: list[Matrix], base: RBOperator, s: int,
                          vs: tuple[int, ...], high: int) -> Vec:
    """LHS − RHS of the order-s coefficient equation at a basis tuple."""
    rep = base.rep
    alg = rep.algebra
    n, dg = alg.n, alg.dim
    total = vzero(dg)
    for comp in compositions(s, n, 0, high):
        if any(i >= len(jet_ops) for i in comp):
            continue
        imgs = [jet_ops[comp[j]].column(vs[j]) for j in range(n)]
        total = vadd(total, alg.bracket(imgs))
        inner = vzero(rep.dim_v)
        for k in range(n):
            survivors = [j for j in range(n) if j != k]
            args = [jet_ops[comp[p + 1]].column(vs[j])
                    for p, j in enumerate(survivors)]
            inner = vadd(inner, vscale(rep.act(args, vs[k]),
                                       Fraction((-1) ** (n - 1 - k))))
        total = vsub(total, jet_ops[comp[0]].mul_vec(inner))
    return total


def check_order(jet: DeformationJet) -> CheckReport:
    """Coefficient equations for every order 0..m on basis tuples of V."""
    base = jet.base
    n, dv = base.algebra.n, base.rep.dim_v
    ops = jet.operators()
    for s in range(jet.order + 1):
        for vs in itertools.combinations(range(dv), n):
            res = _coefficient_residual(ops, base, s, vs, s)
            if not viszero(res):
                return CheckReport(False, witness=(s, vs), lhs=res,
                                   detail=f"order-{s} coefficient equation fails")
    return CheckReport(True)


def check_infinitesimal(t: RBOperator, t1: Matrix) -> bool:
    """A first-order coefficient is admissible iff it is a 1-cocycle."""
    return rb_coboundary(t, matrix_to_cochain(t.rep, t1)).is_zero()


def find_equivalence(t: RBOperator, t1: Matrix, t1p: Matrix) -> Optional[Wedge]:
    """A gauge wedge X with t1p − t1 = dX, if one exists.

    Inputs must both be 1-cocycles; the search is an exact linear solve over
    the wedge coefficients.
    """
    if not check_infinitesimal(t, t1) or not check_infinitesimal(t, t1p):
        raise ValueError("equivalence inputs must be 1-cocycles")
    diff = matrix_to_cochain(t.rep, t1p - t1)
    rhs = cochain_to_vector(t, diff, 1)
    mat = wedge_coboundary_matrix(t)
    x = solve_linear(mat, rhs)
    if x is None:
        return None
    n, dg = t.algebra.n, t.algebra.dim
    coeffs = {block: c for block, c in zip(wedge_basis(dg, n - 1), x) if c != 0}
    return Wedge(dg, n - 1, coeffs)


@dataclass
class ObstructionClass:
    theta: BlockMap
    cocycle_checked: bool


def obstruction(jet: DeformationJet) -> ObstructionClass:
    """The degree-2 cochain blocking extension, with its cocycle property."""
    base = jet.base
    n, dg, dv = base.algebra.n, base.algebra.dim, base.rep.dim_v
    ops = jet.operators()
    m = jet.order
    src = SpaceSpec(dv, "V")
    tgt = SpaceSpec(dg, "g")
    table = {}
    for key in iter_keys(dv, n - 1, 1):
        vs = key[0] + (key[-1],)
        val = _coefficient_residual(ops, base, m + 1, vs, m)
        if not viszero(val):
            table[key] = val
    theta = BlockMap(n, 1, src, tgt, table)
    checked = rb_coboundary(base, theta).is_zero()
    return ObstructionClass(theta, checked)


def obstruction_via_derived(jet: DeformationJet) -> BlockMap:
    """Independent route: 1/n! times the composition-summed derived brackets."""
    base = jet.base
    ctx = DerivedContext(base.rep)
    n = ctx.n
    ops = jet.operators()
    m = jet.order
    total: Optional[BlockMap] = None
    for comp in compositions(m + 1, n, 0, m):
        cochains = [matrix_to_cochain(base.rep, ops[i]) for i in comp]
        term = derived_bracket(ctx, cochains)
        total = term if total is None else total.add(term)
    if total is None:
        return BlockMap(n, 1, SpaceSpec(ctx.dim_v, "V"), SpaceSpec(ctx.dim_g, "g"))
    return total.scale(Fraction(1, factorial(n)))


def extend(jet: DeformationJet) -> Optional[Matrix]:
    """Next coefficient if the obstruction class is trivial, else None.

    Solves d·x = −theta exactly; any returned coefficient is re-verified by
    rerunning the order checks on the extended jet.
    """
    if not check_order(jet):
        raise ValueError("not a valid jet")
    theta = obstruction(jet).theta
    d1 = rb_coboundary_matrix(jet.base, 1)
    rhs = tuple(-x for x in cochain_to_vector(jet.base, theta, 2))
    x = solve_linear(d1, rhs)
    if x is None:
        return None
    nxt = vector_to_matrix_cochain(jet.base, x)
    if not check_order(jet.extended(nxt)):
        raise RuntimeError("extension failed re-verification")
    return nxt
