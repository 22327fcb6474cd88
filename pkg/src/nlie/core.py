"""n-Lie algebras, representations, n-pre-Lie algebras, symplectic forms.

Constructors accept raw data; nothing is trusted until the matching checker
has run, so broken structures are first-class values (the tests need them).
Check reports carry the first violating basis tuple together with both
sides of the failed identity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .combinat import blocks_of, sort_with_sign
from .linalg import (Matrix, Vec, basis_vec, solve_linear, vadd, vector,
                     viszero, vscale, vzero)
from .multilinear import (BlockMap, SpaceSpec, apply_map, lift_action,
                          lift_bracket, sum_space)

Element = Union[int, Vec]


@dataclass
class CheckReport:
    holds: bool
    witness: Optional[tuple] = None
    lhs: Optional[Vec] = None
    rhs: Optional[Vec] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


class NLieAlgebra:
    """A candidate n-Lie algebra: arity, space, structure constants.

    `structure` maps strictly increasing n-tuples of basis indices to the
    bracket value; validity is earned through :func:`check_filippov`.
    """

    __slots__ = ("n", "space", "structure")

    def __init__(self, n: int, space: SpaceSpec,
                 structure: Optional[Mapping[tuple[int, ...], Sequence]] = None):
        if n < 2:
            raise ValueError("arity must be >= 2")
        self.n = n
        self.space = space
        self.structure: dict[tuple[int, ...], Vec] = {}
        if structure:
            for key, val in structure.items():
                if tuple(sorted(key)) != tuple(key) or len(set(key)) != n:
                    raise ValueError(f"structure key not strictly increasing: {key}")
                v = vector(val)
                if not viszero(v):
                    self.structure[tuple(key)] = v

    @property
    def dim(self) -> int:
        return self.space.dim

    def bracket(self, args: Sequence[Element]) -> Vec:
        """Fully antisymmetric n-ary bracket on indices or vectors."""
        if len(args) != self.n:
            raise ValueError("bracket arity mismatch")
        for i, a in enumerate(args):
            if not isinstance(a, int):
                total = vzero(self.dim)
                for idx, c in enumerate(a):
                    if c != 0:
                        sub = list(args)
                        sub[i] = idx
                        total = vadd(total, vscale(self.bracket(sub), c))
                return total
        s, key = sort_with_sign(tuple(args))
        if s == 0:
            return vzero(self.dim)
        v = self.structure.get(key)
        if v is None:
            return vzero(self.dim)
        return vscale(v, Fraction(s))

    def as_blockmap(self) -> BlockMap:
        """The bracket as a 1-block map, stored on every (block, tail) split."""
        table = {}
        for block in blocks_of(self.dim, self.n - 1):
            for tail in range(self.dim):
                v = self.bracket([*block, tail])
                if not viszero(v):
                    table[(block, tail)] = v
        return BlockMap(self.n, 1, self.space, self.space, table)

    def is_abelian(self) -> bool:
        return not self.structure

    def __repr__(self):
        return f"NLieAlgebra(n={self.n}, dim={self.dim}, {len(self.structure)} brackets)"


def abelian(n: int, dim: int) -> NLieAlgebra:
    return NLieAlgebra(n, SpaceSpec(dim, "g"))


def check_filippov(alg: NLieAlgebra) -> CheckReport:
    """Exhaustive fundamental identity check over basis tuples."""
    n, d = alg.n, alg.dim
    for xs in itertools.combinations(range(d), n - 1):
        for ys in itertools.combinations(range(d), n):
            lhs = alg.bracket([*xs, alg.bracket(list(ys))])
            rhs = vzero(d)
            for i in range(n):
                inner = alg.bracket([*xs, ys[i]])
                args: list[Element] = list(ys)
                args[i] = inner
                rhs = vadd(rhs, alg.bracket(args))
            if lhs != rhs:
                return CheckReport(False, witness=(xs, ys), lhs=lhs, rhs=rhs,
                                   detail="fundamental identity fails")
    return CheckReport(True)


class Representation:
    """A candidate action of ∧^{n-1}g on a module by endomorphisms."""

    __slots__ = ("algebra", "module", "action")

    def __init__(self, algebra: NLieAlgebra, module: SpaceSpec,
                 action: Optional[Mapping[tuple[int, ...], Matrix]] = None):
        self.algebra = algebra
        self.module = module
        self.action: dict[tuple[int, ...], Matrix] = {}
        if action:
            for key, mat in action.items():
                if tuple(sorted(key)) != tuple(key) or len(set(key)) != algebra.n - 1:
                    raise ValueError(f"action key not strictly increasing: {key}")
                if (mat.rows, mat.cols) != (module.dim, module.dim):
                    raise ValueError("action matrix shape mismatch")
                if not mat.is_zero():
                    self.action[tuple(key)] = mat

    @property
    def dim_v(self) -> int:
        return self.module.dim

    def operator(self, gargs: Sequence[Element]) -> Matrix:
        """Action matrix of possibly unsorted/vector-valued algebra arguments."""
        if len(gargs) != self.algebra.n - 1:
            raise ValueError("action arity mismatch")
        for i, a in enumerate(gargs):
            if not isinstance(a, int):
                total = Matrix.zero(self.dim_v, self.dim_v)
                for idx, c in enumerate(a):
                    if c != 0:
                        sub = list(gargs)
                        sub[i] = idx
                        total = total + self.operator(sub).scale(c)
                return total
        s, key = sort_with_sign(tuple(gargs))
        if s == 0:
            return Matrix.zero(self.dim_v, self.dim_v)
        mat = self.action.get(key)
        if mat is None:
            return Matrix.zero(self.dim_v, self.dim_v)
        return mat if s == 1 else mat.scale(Fraction(-1))

    def act(self, gargs: Sequence[Element], v: Element) -> Vec:
        vv = basis_vec(self.dim_v, v) if isinstance(v, int) else v
        return self.operator(gargs).mul_vec(vv)

    def __repr__(self):
        return f"Representation(n={self.algebra.n}, dim_g={self.algebra.dim}, dim_v={self.dim_v})"


def zero_representation(alg: NLieAlgebra, dim_v: int) -> Representation:
    return Representation(alg, SpaceSpec(dim_v, "V"))


def check_representation(rep: Representation) -> CheckReport:
    """Both representation identities, exhaustively on basis tuples."""
    alg = rep.algebra
    n, d = alg.n, alg.dim
    # commutator identity: [rho(X), rho(Y)] = rho(X o Y)
    for xs in itertools.combinations(range(d), n - 1):
        rx = rep.operator(list(xs))
        for ys in itertools.combinations(range(d), n - 1):
            ry = rep.operator(list(ys))
            lhs = rx.commutator(ry)
            rhs = Matrix.zero(rep.dim_v, rep.dim_v)
            for i in range(n - 1):
                args: list[Element] = list(ys)
                args[i] = alg.bracket([*xs, ys[i]])
                rhs = rhs + rep.operator(args)
            if lhs != rhs:
                return CheckReport(False, witness=(xs, ys),
                                   detail="commutator identity fails")
    # derivation-style identity against the bracket
    for xs in itertools.combinations(range(d), n - 2):
        for ys in itertools.combinations(range(d), n):
            lhs_m = rep.operator([*xs, alg.bracket(list(ys))])
            rhs_m = Matrix.zero(rep.dim_v, rep.dim_v)
            for i in range(n):
                rest = ys[:i] + ys[i + 1:]
                sign = Fraction((-1) ** (n - 1 - i))
                rhs_m = rhs_m + rep.operator(list(rest)).matmul(
                    rep.operator([*xs, ys[i]])).scale(sign)
            if lhs_m != rhs_m:
                return CheckReport(False, witness=(xs, ys),
                                   detail="bracket compatibility fails")
    return CheckReport(True)


def adjoint_rep(alg: NLieAlgebra) -> Representation:
    action = {}
    for block in blocks_of(alg.dim, alg.n - 1):
        cols = [alg.bracket([*block, j]) for j in range(alg.dim)]
        mat = Matrix.from_columns(cols) if alg.dim else Matrix.zero(0, 0)
        if not mat.is_zero():
            action[block] = mat
    return Representation(alg, SpaceSpec(alg.dim, "g"), action)


def coadjoint_rep(alg: NLieAlgebra) -> Representation:
    """Dual action on g*: the negated transpose of the adjoint matrices."""
    ad = adjoint_rep(alg)
    action = {k: m.transpose().scale(Fraction(-1)) for k, m in ad.action.items()}
    return Representation(alg, SpaceSpec(alg.dim, "g*"), action)


def semidirect_bracket(rep: Representation, args: Sequence[Vec]) -> Vec:
    """Semidirect product bracket of sum-space vectors (g coordinates first)."""
    alg = rep.algebra
    n, dg, dv = alg.n, alg.dim, rep.dim_v
    xs = [a[:dg] for a in args]
    us = [a[dg:] for a in args]
    gpart = alg.bracket(xs)
    vpart = vzero(dv)
    for i in range(n):
        rest = xs[:i] + xs[i + 1:]
        term = rep.act(rest, us[i])
        vpart = vadd(vpart, vscale(term, Fraction((-1) ** (n - 1 - i))))
    return gpart + vpart


def semidirect_product(rep: Representation) -> NLieAlgebra:
    alg = rep.algebra
    n, dg, dv = alg.n, alg.dim, rep.dim_v
    total = dg + dv
    space = sum_space(dg, dv)
    structure = {}
    for key in itertools.combinations(range(total), n):
        v = semidirect_bracket(rep, [basis_vec(total, i) for i in key])
        if not viszero(v):
            structure[key] = v
    return NLieAlgebra(n, space, structure)


def semidirect_blockmap(rep: Representation) -> BlockMap:
    """The lift mu-hat + rho-hat over g ⊕ V, as one 1-block map."""
    mu_hat = lift_bracket(rep.algebra.as_blockmap(), rep.dim_v)
    rho_hat = lift_action(rep.algebra.n, rep.algebra.dim, rep.dim_v, rep.action)
    return mu_hat.add(rho_hat)


# ---------------------------------------------------------------------------
# n-pre-Lie algebras
# ---------------------------------------------------------------------------

class NPreLie:
    """Product antisymmetric in the first n-1 slots only, stored as a 1-block map."""

    __slots__ = ("n", "space", "product")

    def __init__(self, n: int, space: SpaceSpec, product: BlockMap):
        if product.blocks != 1 or product.n != n:
            raise ValueError("product must be a 1-block map of matching arity")
        self.n = n
        self.space = space
        self.product = product

    @property
    def dim(self) -> int:
        return self.space.dim

    def prod(self, args: Sequence[Element]) -> Vec:
        return apply_map(self.product, [list(args[:-1])], args[-1])

    def commutator_bracket(self, args: Sequence[Element]) -> Vec:
        """Antisymmetrized bracket: sum of signed products with each slot last."""
        n = self.n
        out = vzero(self.dim)
        for i in range(n):
            rest = list(args[:i]) + list(args[i + 1:])
            term = self.prod([*rest, args[i]])
            out = vadd(out, vscale(term, Fraction((-1) ** (n - 1 - i))))
        return out

    def __repr__(self):
        return f"NPreLie(n={self.n}, dim={self.dim})"


def pre_lie_from_table(n: int, dim: int,
                       table: Mapping[tuple[tuple[int, ...], int], Sequence]) -> NPreLie:
    space = SpaceSpec(dim, "g")
    bm = BlockMap(n, 1, space, space,
                  {(tuple(k[0]), k[1]): vector(v) for k, v in table.items()})
    return NPreLie(n, space, bm)


def check_n_pre_lie(p: NPreLie) -> CheckReport:
    """Both defining identities; sorted tuples where both sides are
    antisymmetric, full ranges for the remaining slots."""
    n, d = p.n, p.dim
    for xs in itertools.combinations(range(d), n - 1):
        for ys_head in itertools.combinations(range(d), n - 1):
            for yn in range(d):
                ys = (*ys_head, yn)
                lhs = p.prod([*xs, p.prod(list(ys))])
                rhs = vzero(d)
                for i in range(n - 1):
                    args: list[Element] = list(ys)
                    args[i] = p.commutator_bracket([*xs, ys[i]])
                    rhs = vadd(rhs, p.prod(args))
                rhs = vadd(rhs, p.prod([*ys[:-1], p.prod([*xs, ys[-1]])]))
                if lhs != rhs:
                    return CheckReport(False, witness=(xs, ys),
                                       lhs=lhs, rhs=rhs, detail="first identity fails")
    for ys in itertools.combinations(range(d), n):
        for xs_head in itertools.combinations(range(d), n - 2):
            for xlast in range(d):
                xs = (*xs_head, xlast)
                lhs = p.prod([p.commutator_bracket(list(ys)), *xs])
                rhs = vzero(d)
                for i in range(n):
                    rest = ys[:i] + ys[i + 1:]
                    inner = p.prod([ys[i], *xs])
                    term = p.prod([*rest, inner])
                    rhs = vadd(rhs, vscale(term, Fraction((-1) ** (n - 1 - i))))
                if lhs != rhs:
                    return CheckReport(False, witness=(ys, xs),
                                       lhs=lhs, rhs=rhs, detail="second identity fails")
    return CheckReport(True)


def sub_adjacent(p: NPreLie) -> NLieAlgebra:
    structure = {}
    for key in itertools.combinations(range(p.dim), p.n):
        v = p.commutator_bracket(list(key))
        if not viszero(v):
            structure[key] = v
    return NLieAlgebra(p.n, p.space, structure)


def left_mult_rep(p: NPreLie) -> Representation:
    """Left multiplication as a representation of the sub-adjacent algebra."""
    alg = sub_adjacent(p)
    action = {}
    for block in blocks_of(p.dim, p.n - 1):
        cols = [p.prod([*block, j]) for j in range(p.dim)]
        mat = Matrix.from_columns(cols)
        if not mat.is_zero():
            action[block] = mat
    return Representation(alg, p.space, action)


# ---------------------------------------------------------------------------
# symplectic structures
# ---------------------------------------------------------------------------

@dataclass
class SymplecticForm:
    omega: Matrix

    def pairing(self, x: Vec, y: Vec) -> Fraction:
        return sum((xi * wi for xi, wi in zip(x, self.omega.mul_vec(y))), Fraction(0))


def check_symplectic(alg: NLieAlgebra, form: SymplecticForm) -> CheckReport:
    from .linalg import rank as _rank
    d = alg.dim
    w = form.omega
    if (w.rows, w.cols) != (d, d):
        return CheckReport(False, detail="form shape mismatch")
    if w.transpose() != w.scale(Fraction(-1)):
        return CheckReport(False, detail="form not skew-symmetric")
    if _rank(w) != d:
        return CheckReport(False, detail="form degenerate")
    n = alg.n
    for xs in itertools.combinations(range(d), n):
        bx = alg.bracket(list(xs))
        for y in range(d):
            ey = basis_vec(d, y)
            lhs = form.pairing(bx, ey)
            rhs = Fraction(0)
            for i in range(n):
                rest = list(xs[:i]) + list(xs[i + 1:])
                inner = alg.bracket([*rest, y])
                rhs -= Fraction((-1) ** (n - i - 1)) * form.pairing(basis_vec(d, xs[i]), inner)
            if lhs != rhs:
                return CheckReport(False, witness=(xs, y), detail="compatibility fails")
    return CheckReport(True)


def symplectic_to_pre_lie(alg: NLieAlgebra, form: SymplecticForm) -> NPreLie:
    """The compatible product defined by pairing against bracket-with-tail."""
    d, n = alg.dim, alg.n
    wt = form.omega.transpose()
    table = {}
    for block in blocks_of(d, n - 1):
        for t in range(d):
            # omega(c, e_y) = -omega(e_t, [block..., e_y]) for all y
            rhs = []
            for y in range(d):
                inner = alg.bracket([*block, y])
                rhs.append(-form.pairing(basis_vec(d, t), inner))
            c = solve_linear(wt, rhs)
            if c is None:
                raise ValueError("degenerate form")
            if not viszero(c):
                table[(block, t)] = c
    space = alg.space
    bm = BlockMap(n, 1, space, space, table)
    return NPreLie(n, space, bm)


def symplectic_operator(alg: NLieAlgebra, form: SymplecticForm) -> Matrix:
    """The invertible map g* -> g whose inverse sends x to omega(x, ·)."""
    inv = form.omega.transpose()
    # T^{-1} e_i = row i of omega, as a covector; invert by solving columns
    cols = []
    d = alg.dim
    for j in range(d):
        x = solve_linear(inv, basis_vec(d, j))
        if x is None:
            raise ValueError("degenerate form")
        cols.append(x)
    return Matrix.from_columns(cols)
