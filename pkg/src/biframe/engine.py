"""From minimal data to a full functor: pairings, duals, and cobordism maps.

``MinimalData`` packages the per-genus state spaces, the pairing matrices
read off the cap presentations, and a functional oracle on presentations.
``extend`` turns any presentation-with-boundary-split into an exact matrix
by flattening all boundary to the source (the hat form) and contracting
with the dual elements of the target factors.

A presentation handed to ``functional`` denotes the disjoint union of its
pieces; each piece is one basic cobordism and is fed to the oracle whole.
Isolated sphere summands (caps) contribute one D^(-1) each.

Composition of cobordisms is defined through flattening and gluing, not by
an independent mechanism, so the functor laws checked downstream certify
the internal consistency of this route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import NondegeneracyError, PresentationError
from .presentation import Presentation, pairing_presentation
from .scalars import ExactScalar
from .theory import AbelianTheory, ColorVector, Element


@dataclass
class MinimalData:
    """State-space dimensions, cap pairings, and a functional oracle."""

    theory: AbelianTheory
    oracle: Callable[[Presentation, ColorVector], ExactScalar]
    label: str = "standard"
    _pairing_cache: dict[int, list[list[ExactScalar]]] = field(default_factory=dict)
    _dual_cache: dict[int, "DualElement"] = field(default_factory=dict)

    @property
    def group_order(self) -> int:
        return self.theory.group_order

    def dim(self, genus: int) -> int:
        return self.theory.dim(genus)

    def colorings(self, genus: int) -> list[ColorVector]:
        return list(self.theory.colorings(genus))

    def pairing(self, genus: int) -> list[list[ExactScalar]]:
        if genus not in self._pairing_cache:
            cap = pairing_presentation(genus)
            basis = self.colorings(genus)
            self._pairing_cache[genus] = [
                [self.oracle(cap, a + b) for b in basis] for a in basis
            ]
        return self._pairing_cache[genus]

    def dual_element(self, genus: int) -> DualElement:
        if genus not in self._dual_cache:
            matrix = self.pairing(genus)
            try:
                inverse = invert_matrix(matrix, self.group_order)
            except ZeroDivisionError:
                raise NondegeneracyError(
                    f"pairing at genus {genus} is singular; nondegeneracy fails"
                ) from None
            self._dual_cache[genus] = DualElement(genus, inverse)
        return self._dual_cache[genus]


def minimal_data(theory: AbelianTheory) -> MinimalData:
    return MinimalData(theory=theory, oracle=theory.evaluate)


@dataclass
class DualElement:
    """Coefficients of sum_j v_j (x) w_j, the inverse of the cap pairing."""

    genus: int
    matrix: list[list[ExactScalar]]

    def coefficient(self, i: int, j: int) -> ExactScalar:
        return self.matrix[i][j]


# -- small exact linear algebra helpers --------------------------------------


def invert_matrix(
    matrix: Sequence[Sequence[ExactScalar]], group_order: int
) -> list[list[ExactScalar]]:
    n = len(matrix)
    a = [list(row) for row in matrix]
    inv = [
        [ExactScalar.one() if i == j else ExactScalar.zero() for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        inv[col] = [x / d for x in inv[col]]
        for r in range(n):
            if r == col or a[r][col].is_zero:
                continue
            f = a[r][col]
            a[r] = [x.add(-(f * y), group_order) for x, y in zip(a[r], a[col])]
            inv[r] = [x.add(-(f * y), group_order) for x, y in zip(inv[r], inv[col])]
    return inv


def mat_mul(
    a: Sequence[Sequence[ExactScalar]],
    b: Sequence[Sequence[ExactScalar]],
    group_order: int,
) -> list[list[ExactScalar]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = ExactScalar.zero()
            for k in range(inner):
                acc = acc.add(a[i][k] * b[k][j], group_order)
            row.append(acc)
        out.append(row)
    return out


def mat_equal(
    a: Sequence[Sequence[ExactScalar]],
    b: Sequence[Sequence[ExactScalar]],
    group_order: int,
) -> bool:
    if len(a) != len(b) or any(len(x) != len(y) for x, y in zip(a, b)):
        return False
    return all(
        x.equals(y, group_order) for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


# -- cobordisms ----------------------------------------------------------------


@dataclass(frozen=True)
class Cobordism:
    """A presentation with its boundary split into source and target factors."""

    presentation: Presentation
    source: tuple[int, ...]
    target: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.presentation.handlebodies)
        if sorted(self.source + self.target) != list(range(m)):
            raise PresentationError("source and target must partition the handlebodies")

    @property
    def source_genera(self) -> tuple[int, ...]:
        return tuple(self.presentation.handlebodies[i].genus for i in self.source)

    @property
    def target_genera(self) -> tuple[int, ...]:
        return tuple(self.presentation.handlebodies[i].genus for i in self.target)


def hat(c: Cobordism) -> Presentation:
    """The all-source flattening: target factors move to the front, reversed."""
    order = list(reversed(c.target)) + list(c.source)
    return c.presentation.permute(order)


class TensorFunctional:
    """A functional on the tensor product of the boundary state spaces.

    Evaluates piece by piece: the flat color vector is split along the
    presentation's handlebodies, routed to each piece's sub-presentation,
    and the oracle values are multiplied together with one D^(-1) per
    closed sphere summand.
    """

    def __init__(self, md: MinimalData, p: Presentation) -> None:
        self.md = md
        self.presentation = p
        self.genera = p.genera
        self._pieces: list[tuple[Presentation, list[int]]] = []
        n_pieces = max(
            (pid for pid in tuple(p.hb_piece) + tuple(p.circle_piece)), default=-1
        ) + 1
        offsets = []
        pos = 0
        for g in p.genera:
            offsets.append(pos)
            pos += g
        for pid in range(n_pieces):
            sub = p.piece_presentation(pid)
            positions: list[int] = []
            for h in range(len(p.handlebodies)):
                if p.hb_piece[h] == pid:
                    positions.extend(range(offsets[h], offsets[h] + p.genera[h]))
            self._pieces.append((sub, positions))
        self._cache: dict[ColorVector, ExactScalar] = {}

    def at(self, colors: ColorVector) -> ExactScalar:
        if len(colors) != sum(self.genera):
            raise PresentationError(
                f"need {sum(self.genera)} handle colors, got {len(colors)}"
            )
        if colors in self._cache:
            return self._cache[colors]
        total = ExactScalar.one().times_dpow(-self.presentation.caps)
        for sub, positions in self._pieces:
            total = total * self.md.oracle(sub, tuple(colors[k] for k in positions))
        self._cache[colors] = total
        return total


def functional(md: MinimalData, p: Presentation) -> TensorFunctional:
    return TensorFunctional(md, p)


@dataclass
class CobordismMap:
    """An exact matrix between tensor products of genus state spaces."""

    source_genera: tuple[int, ...]
    target_genera: tuple[int, ...]
    entries: list[list[ExactScalar]]
    group_order: int

    def __post_init__(self) -> None:
        rows = _dim(self.target_genera, self.group_order)
        cols = _dim(self.source_genera, self.group_order)
        if len(self.entries) != rows or any(len(r) != cols for r in self.entries):
            raise PresentationError("matrix shape does not match boundary genera")

    def compose(self, other: CobordismMap) -> CobordismMap:
        """self after other (matrix product self * other)."""
        if other.target_genera != self.source_genera:
            raise PresentationError("boundary mismatch in composition")
        return CobordismMap(
            other.source_genera,
            self.target_genera,
            mat_mul(self.entries, other.entries, self.group_order),
            self.group_order,
        )

    def tensor(self, other: CobordismMap) -> CobordismMap:
        rows_a, rows_b = len(self.entries), len(other.entries)
        cols_a = len(self.entries[0]) if rows_a else 1
        cols_b = len(other.entries[0]) if rows_b else 1
        entries = [
            [
                self.entries[ia][ja] * other.entries[ib][jb]
                for ja in range(cols_a)
                for jb in range(cols_b)
            ]
            for ia in range(rows_a)
            for ib in range(rows_b)
        ]
        return CobordismMap(
            self.source_genera + other.source_genera,
            self.target_genera + other.target_genera,
            entries,
            self.group_order,
        )

    def equal(self, other: CobordismMap) -> bool:
        return (
            self.source_genera == other.source_genera
            and self.target_genera == other.target_genera
            and mat_equal(self.entries, other.entries, self.group_order)
        )

    def is_identity(self) -> bool:
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            return False
        one, zero = ExactScalar.one(), ExactScalar.zero()
        return all(
            self.entries[i][j].equals(one if i == j else zero, self.group_order)
            for i in range(n)
            for j in range(n)
        )

    def apply(self, vector: Sequence[ExactScalar]) -> list[ExactScalar]:
        return [
            _sum_scalars(
                (e * v for e, v in zip(row, vector)), self.group_order
            )
            for row in self.entries
        ]


def _dim(genera: Sequence[int], group_order: int) -> int:
    d = 1
    for g in genera:
        d *= group_order**g
    return d


def _sum_scalars(values, group_order: int) -> ExactScalar:
    acc = ExactScalar.zero()
    for v in values:
        acc = acc.add(v, group_order)
    return acc


def _basis(md: MinimalData, genera: Sequence[int]) -> list[tuple[ColorVector, ...]]:
    """All tuples of per-factor colorings, in lexicographic basis order."""
    return list(itertools.product(*(md.colorings(g) for g in genera)))


def _flatten(per_factor: Sequence[ColorVector]) -> ColorVector:
    return tuple(a for factor in per_factor for a in factor)


def extend(md: MinimalData, c: Cobordism) -> CobordismMap:
    """The linear map of a cobordism, via hat flattening and dual contraction."""
    tgt = c.target_genera
    src = c.source_genera
    fn = functional(md, hat(c))
    duals = {g: md.dual_element(g) for g in set(tgt)}
    tgt_colorings = [md.colorings(g) for g in tgt]
    coloring_index = {
        g: {col: i for i, col in enumerate(md.colorings(g))} for g in set(tgt)
    }

    rows = []
    for b in itertools.product(*tgt_colorings):
        row = []
        for s in _basis(md, src):
            acc = ExactScalar.zero()
            for a in itertools.product(*tgt_colorings):
                coeff = ExactScalar.one()
                for i, g in enumerate(tgt):
                    e = duals[g].coefficient(
                        coloring_index[g][b[i]], coloring_index[g][a[i]]
                    )
                    coeff = coeff * e
                    if coeff.is_zero:
                        break
                if coeff.is_zero:
                    continue
                hat_colors = _flatten(tuple(reversed(a)) + s)
                acc = acc.add(coeff * fn.at(hat_colors), md.group_order)
            row.append(acc)
        rows.append(row)
    # A closed cobordism lands here as a 1x1 matrix holding the functional value.
    return CobordismMap(src, tgt, rows, md.group_order)


# -- cobordism constructors ------------------------------------------------------


def identity_cobordism(genera: Sequence[int]) -> Cobordism:
    """The identity on a union of standard surfaces."""
    p = Presentation.empty()
    for g in genera:
        p = p.disjoint_union(pairing_presentation(g))
    source = tuple(2 * i for i in range(len(genera)))
    target = tuple(2 * i + 1 for i in range(len(genera)))
    return Cobordism(p, source, target)


def cap_cobordism(g: int) -> Cobordism:
    return Cobordism(pairing_presentation(g), (0, 1), ())


def cup_cobordism(g: int) -> Cobordism:
    return Cobordism(pairing_presentation(g), (), (0, 1))


def symmetry_cobordism(genera_a: Sequence[int], genera_b: Sequence[int]) -> Cobordism:
    """The flip cobordism  Sigma u Gamma -> Gamma u Sigma."""
    genera = tuple(genera_a) + tuple(genera_b)
    p = Presentation.empty()
    for g in genera:
        p = p.disjoint_union(pairing_presentation(g))
    source = tuple(2 * i for i in range(len(genera)))
    k = len(genera_a)
    target = tuple(2 * i + 1 for i in range(k, len(genera))) + tuple(
        2 * i + 1 for i in range(k)
    )
    return Cobordism(p, source, target)


def cobordism_union(a: Cobordism, b: Cobordism) -> Cobordism:
    p = a.presentation.disjoint_union(b.presentation)
    offset = len(a.presentation.handlebodies)
    return Cobordism(
        p,
        a.source + tuple(i + offset for i in b.source),
        a.target + tuple(i + offset for i in b.target),
    )


def compose_cobordisms(second: Cobordism, first: Cobordism) -> Cobordism:
    """second after first, realized by gluing the flattened presentations.

    The middle boundary factors are glued one at a time from the innermost
    pair outward: the first gluing joins the two pieces, the rest are
    self-gluings of the joined piece.
    """
    if first.target_genera != second.source_genera:
        raise PresentationError(
            f"cannot compose: middle boundaries {first.target_genera} vs "
            f"{second.source_genera}"
        )
    t = len(second.source)
    p2 = hat(second)  # order: reversed targets of second, then its sources
    p1 = hat(first)  # order: reversed targets of first, then its sources
    d2 = len(second.target)
    u = p2.disjoint_union(p1)
    for _ in range(t):
        # After each gluing the list shrinks by two, so the innermost
        # remaining pair sits at the same index.
        u = u.glue(d2 + t - 1, d2 + t)
        t -= 1
    n_src = len(first.source)
    src = tuple(range(d2, d2 + n_src))
    tgt = tuple(reversed(range(d2)))
    return Cobordism(u, src, tgt)
