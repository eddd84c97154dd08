"""Presented modules, minors, Fitting ideals, resolutions, canonical modules."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .groebner import ModuleElement, module_buchberger, module_syzygies, syzygies, vector_degree
from .idealcalc import (
    Ideal,
    PreconditionError,
    codimension,
    minimal_generators,
    natural_order,
    unit_ideal,
)
from .polyring import Polynomial, Ring


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring."""

    def __init__(self, rows: Sequence[Sequence[Polynomial]], ring: Optional[Ring] = None, ncols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if ring is None:
            if not rows or not rows[0]:
                raise ValueError("need a ring for an empty matrix")
            ring = rows[0][0].ring
        width = len(rows[0]) if rows else (ncols or 0)
        if ncols is not None and rows and width != ncols:
            raise ValueError("column count mismatch")
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
        self.ring = ring
        self.rows = [[ring(x) for x in r] for r in rows]
        self.nrows = len(rows)
        self.ncols = width

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Polynomial]], nrows: int, ring: Ring) -> "PolyMatrix":
        if not cols:
            return cls([[] for _ in range(nrows)], ring, ncols=0)
        return cls([[c[i] for c in cols] for i in range(nrows)], ring)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> List[Polynomial]:
        return [r[j] for r in self.rows]

    def columns(self) -> List[List[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def row(self, i: int) -> List[Polynomial]:
        return list(self.rows[i])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_columns(self.rows, self.ncols, self.ring)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.ring, ncols=other.ncols)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def entries(self) -> List[Polynomial]:
        return [x for r in self.rows for x in r if not x.is_zero()]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows and self.shape == other.shape

    def __repr__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"


# --------------------------------------------------------------------------
# minors


def iter_minors(
    A: PolyMatrix,
    k: int,
    reduce: Optional[Callable[[Polynomial], Polynomial]] = None,
) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...], Polynomial]]:
    """Yield (rows, cols, det) for every k x k minor, rows-major.

    Determinants are expanded along their first column and the smaller
    minors are memoized.  With ``reduce`` every intermediate result is
    replaced by its image under that map (e.g. a normal form modulo an
    ideal), which keeps the answers exact modulo that ideal.
    """
    if not 1 <= k <= min(A.nrows, A.ncols):
        raise ValueError(f"minor size {k} out of range for a {A.nrows}x{A.ncols} matrix")
    ring = A.ring
    memo: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Polynomial] = {}
    rows_ = A.rows
    zero = ring.zero()

    def det(R: Tuple[int, ...], C: Tuple[int, ...]) -> Polynomial:
        if len(C) == 1:
            v = rows_[R[0]][C[0]]
            return reduce(v) if reduce is not None else v
        key = (R, C)
        v = memo.get(key)
        if v is not None:
            return v
        c0 = C[0]
        acc = zero
        for idx, r in enumerate(R):
            a = rows_[r][c0]
            if a.is_zero():
                continue
            sub = det(R[:idx] + R[idx + 1 :], C[1:])
            if sub.is_zero():
                continue
            term = a * sub
            acc = acc - term if idx % 2 else acc + term
        if reduce is not None:
            acc = reduce(acc)
        memo[key] = acc
        return acc

    for C in combinations(range(A.ncols), k):
        for R in combinations(range(A.nrows), k):
            yield R, C, det(R, C)


def minors(A: PolyMatrix, k: int, reduce=None) -> List[Polynomial]:
    """All k x k minors (including zeros), rows varying fastest."""
    return [d for _, _, d in iter_minors(A, k, reduce)]


def ideal_of_minors(A: PolyMatrix, k: int) -> Ideal:
    if k <= 0:
        return unit_ideal(A.ring)
    if k > min(A.nrows, A.ncols):
        return Ideal([], A.ring)
    return Ideal([m for m in minors(A, k) if not m.is_zero()], A.ring)


# --------------------------------------------------------------------------
# presentations and Fitting ideals


@dataclass
class ModulePresentation:
    """Cokernel of ``matrix``: n generators (rows), one relation per column.

    ``generators`` optionally records the images of the generators in the
    ambient module (for I/(x) these are the ideal generators).
    """

    ring: Ring
    matrix: PolyMatrix
    generators: Optional[List[Polynomial]] = None

    @property
    def ngens(self) -> int:
        return self.matrix.nrows

    @property
    def nrelations(self) -> int:
        return self.matrix.ncols


def fitting_ideal(Mp: ModulePresentation, i: int) -> Ideal:
    """F_i = ideal of (n-i)-minors of the relation matrix."""
    if i < 0:
        raise ValueError("Fitting index must be >= 0")
    return ideal_of_minors(Mp.matrix, Mp.ngens - i)


def present_ideal_quotient(I: Ideal, x: Polynomial, budget=None, minimize: bool = True) -> ModulePresentation:
    """Presentation of I/(x) on the generators of I, taken verbatim.

    The relations are the first n coordinates of the syzygies of
    (f_1, ..., f_n, x).  For homogeneous data the relations are pruned to
    a minimal set (the generators themselves are kept).
    """
    ring = I.ring
    x = ring(x)
    if not I.contains(x):
        raise PreconditionError(f"{x} is not in the ideal")
    gens = list(I.gens)
    n = len(gens)
    syz = syzygies(gens + [x], order=natural_order(ring), budget=budget, ring=ring)
    vecs = []
    seen = set()
    for s in syz:
        col = tuple(s.components[:n])
        if all(c.is_zero() for c in col) or col in seen:
            continue
        seen.add(col)
        vecs.append(ModuleElement(list(col)))
    grading = ring.grading
    if minimize and vecs and I.is_homogeneous() and x.is_homogeneous(grading):
        shifts = tuple(_degree(g, grading) for g in gens)
        vecs = _prune(vecs, n, shifts, ring)
    cols = [list(v.components) for v in vecs]
    return ModulePresentation(ring, PolyMatrix.from_columns(cols, n, ring), gens)


def presentation_of_ideal(I: Ideal, budget=None, minimize: bool = True) -> ModulePresentation:
    """I as a module: generators f_i, relations their syzygies (pruned when homogeneous)."""
    ring = I.ring
    gens = list(I.gens)
    syz = syzygies(gens, order=natural_order(ring), budget=budget, ring=ring)
    if minimize and syz and I.is_homogeneous():
        syz = _prune(syz, len(gens), tuple(_degree(g, ring.grading) for g in gens), ring)
    return ModulePresentation(ring, PolyMatrix.from_columns([list(s) for s in syz], len(gens), ring), gens)


def fitting_ideal_of_ideal(I: Ideal, i: int, budget=None) -> Ideal:
    """F_i(I) for I regarded as a module over the ring."""
    return fitting_ideal(presentation_of_ideal(I, budget), i)


# --------------------------------------------------------------------------
# resolutions


class IncompleteResolution(RuntimeError):
    """The length bound was hit with a nonzero syzygy module left."""

    def __init__(self, partial: List[PolyMatrix]):
        self.partial = partial
        super().__init__(f"resolution did not terminate within {len(partial)} steps")


def _prune(vectors: List[ModuleElement], rank: int, shifts, ring: Ring) -> List[ModuleElement]:
    """Drop generators lying in the span of the others (ascending degree).

    For vectors homogeneous in the shifted grading the survivors form a
    minimal generating set.
    """
    grading = ring.grading
    order = natural_order(ring)
    vs = sorted(
        (v for v in vectors if not v.is_zero()),
        key=lambda v: (vector_degree(v, shifts, grading), sum(len(c) for c in v.components)),
    )
    kept: List[ModuleElement] = []
    G = None
    for v in vs:
        if G is not None and G.contains(v):
            continue
        kept.append(v)
        G = module_buchberger(kept, rank, order, ring=ring, shifts=shifts)
    return kept


def _degree(f: Polynomial, grading) -> int:
    return max(sum(a * w for a, w in zip(e, grading)) for e in f.terms)


def free_resolution(I: Ideal, length: int, minimize: bool = True, budget=None) -> List[PolyMatrix]:
    """Matrices d_1, d_2, ... of a free resolution of R/I.

    d_1 is the 1 x n row of generators.  Each later matrix has the
    syzygies of the previous one as columns.  Generating sets are pruned
    (``minimize``), which for homogeneous input yields the minimal
    resolution.
    """
    if length < 1:
        raise ValueError("length bound must be >= 1")
    ring = I.ring
    grading = ring.grading
    if minimize and I.is_homogeneous():
        gens = minimal_generators(I)
    else:
        gens = list(I.gens)
    mats = [PolyMatrix([gens], ring)]
    vectors = [ModuleElement([g]) for g in gens]
    rank = 1
    shifts: Tuple[int, ...] = (0,)
    order = natural_order(ring)
    while True:
        syz = module_syzygies(vectors, rank, order, budget, ring, shifts)
        new_shifts = tuple(vector_degree(v, shifts, grading) for v in vectors)
        if minimize:
            syz = _prune(syz, len(vectors), new_shifts, ring)
        syz = [s for s in syz if not s.is_zero()]
        if not syz:
            return mats
        if len(mats) == length:
            raise IncompleteResolution(mats)
        mats.append(PolyMatrix.from_columns([list(s) for s in syz], len(vectors), ring))
        rank, shifts, vectors = len(vectors), new_shifts, syz


def canonical_module(I: Ideal, budget=None) -> ModulePresentation:
    """Presentation of omega_{R/I} for a perfect ideal I.

    With a resolution of length c = codim I, omega is the cokernel of the
    transpose of the last map; its presentation rows correspond to the
    columns of that map.
    """
    c = codimension(I)
    try:
        res = free_resolution(I, c, budget=budget)
    except IncompleteResolution as exc:
        raise PreconditionError(
            f"ideal is not perfect: no resolution of length codim = {c}"
        ) from exc
    if len(res) != c:
        raise PreconditionError(f"resolution length {len(res)} differs from codimension {c}")
    last = res[-1]
    return ModulePresentation(I.ring, last.transpose())


def row_ideal(Mp: ModulePresentation, row: int) -> Ideal:
    return Ideal([x for x in Mp.matrix.row(row) if not x.is_zero()], Mp.ring)
