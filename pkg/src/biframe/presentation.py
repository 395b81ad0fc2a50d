"""Surgery presentations of basic 2-framed cobordisms and the moves on them.

A presentation is a framed link (surgery circles) together with embedded
handlebodies, recorded at linking-data level: per-handle longitude circles,
integer framings, and the full symmetric linking matrix.  Circles are kept
in a canonical order: all longitudes first, grouped by handlebody in
boundary order, then the surgery circles.  The diagonal of ``lk`` always
equals the framings.

Each presentation also carries a partition of its circles and handlebodies
into *pieces*.  A piece is one basic cobordism living in its own ambient
sphere; several pieces model a disjoint union of cobordisms.  Linking data
alone cannot represent that distinction (a bare genus-0 handlebody, or a
fused circle whose row cancels, looks isolated either way), so the
constructing operations maintain it explicitly.  ``caps`` counts pieces
that have lost all their circles and handlebodies to gluing; each one is a
closed sphere summand.  Presentations parsed from files always form a
single piece, matching the usual reading of one surgery diagram.

All values are immutable; every move returns a new presentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InvalidMoveError, PresentationError
from .intmat import signature_symmetric, smith_divisors


@dataclass(frozen=True)
class Handlebody:
    name: str
    genus: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise PresentationError(f"handlebody {self.name!r} has negative genus")


@dataclass(frozen=True)
class Circle:
    """A link component: a surgery circle or a handlebody longitude.

    ``owner`` is None for surgery circles and (handlebody index,
    1-based handle index) for longitudes.
    """

    name: str
    framing: int
    owner: tuple[int, int] | None = None

    @property
    def is_surgery(self) -> bool:
        return self.owner is None


@dataclass(frozen=True)
class Presentation:
    handlebodies: tuple[Handlebody, ...] = ()
    circles: tuple[Circle, ...] = ()
    lk: tuple[tuple[int, ...], ...] = ()
    hb_piece: tuple[int, ...] = ()
    circle_piece: tuple[int, ...] = ()
    caps: int = 0

    def __post_init__(self) -> None:
        n = len(self.circles)
        if len(self.lk) != n or any(len(row) != n for row in self.lk):
            raise PresentationError("linking matrix shape does not match circle count")
        for i in range(n):
            for j in range(i, n):
                if self.lk[i][j] != self.lk[j][i]:
                    raise PresentationError("linking matrix must be symmetric")
            if self.lk[i][i] != self.circles[i].framing:
                raise PresentationError(
                    f"diagonal entry for {self.circles[i].name!r} disagrees with its framing"
                )
        names = [c.name for c in self.circles] + [h.name for h in self.handlebodies]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate names")
        # Canonical order: per-handlebody longitudes first, then surgery.
        expected = [
            (h, k)
            for h, hb in enumerate(self.handlebodies)
            for k in range(1, hb.genus + 1)
        ]
        owners = [c.owner for c in self.circles[: len(expected)]]
        if owners != expected or any(
            c.owner is not None for c in self.circles[len(expected) :]
        ):
            raise PresentationError(
                "circles must list longitudes (grouped by handlebody) before surgery circles"
            )
        if len(self.hb_piece) != len(self.handlebodies) or len(self.circle_piece) != n:
            raise PresentationError("piece assignment length mismatch")
        seen: list[int] = []
        for p in list(self.hb_piece) + list(self.circle_piece):
            if p not in seen:
                if p != len(seen):
                    raise PresentationError("piece ids must be normalized by first occurrence")
                seen.append(p)
        for idx, c in enumerate(self.circles):
            if c.owner is not None and self.circle_piece[idx] != self.hb_piece[c.owner[0]]:
                raise PresentationError(
                    f"longitude {c.name!r} must share its handlebody's piece"
                )
        if self.caps < 0:
            raise PresentationError("caps must be nonnegative")

    # -- basic accessors ------------------------------------------------

    @property
    def num_longitudes(self) -> int:
        return sum(h.genus for h in self.handlebodies)

    @property
    def surgery_indices(self) -> range:
        return range(self.num_longitudes, len(self.circles))

    @property
    def surgery_count(self) -> int:
        return len(self.circles) - self.num_longitudes

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(h.genus for h in self.handlebodies)

    @property
    def total_genus(self) -> int:
        return self.num_longitudes

    @property
    def num_pieces(self) -> int:
        ids = set(self.hb_piece) | set(self.circle_piece)
        return (max(ids) + 1 if ids else 0) + self.caps

    def longitude_index(self, hb: int, handle: int) -> int:
        if not (0 <= hb < len(self.handlebodies)):
            raise PresentationError(f"no handlebody with index {hb}")
        if not (1 <= handle <= self.handlebodies[hb].genus):
            raise PresentationError(
                f"handlebody {self.handlebodies[hb].name!r} has no handle {handle}"
            )
        return sum(h.genus for h in self.handlebodies[:hb]) + handle - 1

    def circle_index(self, name: str) -> int:
        for i, c in enumerate(self.circles):
            if c.name == name:
                return i
        raise PresentationError(f"unknown circle name {name!r}")

    def surgery_matrix(self) -> list[list[int]]:
        idx = list(self.surgery_indices)
        return [[self.lk[i][j] for j in idx] for i in idx]

    def same_linking(self, other: Presentation) -> bool:
        """Structural equality ignoring names and piece bookkeeping."""
        return (
            self.genera == other.genera
            and [c.owner for c in self.circles] == [c.owner for c in other.circles]
            and self.lk == other.lk
        )

    # -- construction -----------------------------------------------------

    @classmethod
    def empty(cls) -> Presentation:
        return cls()

    @classmethod
    def assemble(
        cls,
        handlebodies: Sequence[tuple[str, int]] = (),
        surgery: Sequence[tuple[str, int]] = (),
        links: Mapping[tuple[str, str], int] | None = None,
        caps: int = 0,
    ) -> Presentation:
        """Build a single-piece presentation from named parts.

        Longitudes are auto-named ``<handlebody>.<k>`` with framing 0;
        override a longitude framing by passing a ``links`` entry keyed by
        the same name twice.
        """
        hbs = tuple(Handlebody(name, g) for name, g in handlebodies)
        circles: list[Circle] = []
        for h, hb in enumerate(hbs):
            for k in range(1, hb.genus + 1):
                circles.append(Circle(f"{hb.name}.{k}", 0, (h, k)))
        for name, fr in surgery:
            circles.append(Circle(name, fr))
        index = {c.name: i for i, c in enumerate(circles)}
        n = len(circles)
        m = [[0] * n for _ in range(n)]
        for i, c in enumerate(circles):
            m[i][i] = c.framing
        for (na, nb), v in (links or {}).items():
            if na not in index:
                raise PresentationError(f"unknown circle name {na!r}")
            if nb not in index:
                raise PresentationError(f"unknown circle name {nb!r}")
            i, j = index[na], index[nb]
            m[i][j] = v
            m[j][i] = v
            if i == j:
                circles[i] = Circle(circles[i].name, v, circles[i].owner)
        k = 1 if (hbs or circles) else 0
        return cls(
            handlebodies=hbs,
            circles=tuple(circles),
            lk=tuple(tuple(row) for row in m),
            hb_piece=(0,) * len(hbs) if k else (),
            circle_piece=(0,) * n if k else (),
            caps=caps,
        )

    # -- invariants ---------------------------------------------------------

    def signature(self) -> int:
        return signature_symmetric(self.surgery_matrix())

    def first_homology(self) -> list[int]:
        """Elementary divisors of the surgery linking matrix, units dropped."""
        return [d for d in smith_divisors(self.surgery_matrix()) if d != 1]

    # -- moves ---------------------------------------------------------------

    def blow_up(self, sign: int, name: str | None = None) -> Presentation:
        if sign not in (1, -1):
            raise InvalidMoveError("blow-up sign must be +1 or -1")
        taken = self._taken_names()
        if name is None:
            name = _fresh_name("B1", taken)
        elif name in taken:
            raise PresentationError(f"name {name!r} already in use")
        circles = self.circles + (Circle(name, sign),)
        n = len(self.circles)
        lk = tuple(row + (0,) for row in self.lk) + ((0,) * n + (sign,),)
        # Joins the first piece; creates it on an empty presentation.
        circle_piece = self.circle_piece + (0,)
        return Presentation(
            self.handlebodies, circles, lk, self.hb_piece, circle_piece, self.caps
        )

    def blow_down(self, name: str) -> Presentation:
        i = self.circle_index(name)
        c = self.circles[i]
        if not c.is_surgery:
            raise InvalidMoveError(f"{name!r} is a longitude; only surgery circles blow down")
        if c.framing not in (1, -1):
            raise InvalidMoveError(f"{name!r} has framing {c.framing}, need +1 or -1")
        if any(self.lk[i][j] != 0 for j in range(len(self.circles)) if j != i):
            raise InvalidMoveError(f"{name!r} links other circles and cannot blow down")
        keep = [j for j in range(len(self.circles)) if j != i]
        circles = tuple(self.circles[j] for j in keep)
        lk = tuple(tuple(self.lk[a][b] for b in keep) for a in keep)
        circle_piece = tuple(self.circle_piece[j] for j in keep)
        # A piece emptied by removing its last circle disappears entirely,
        # keeping blow_up/blow_down exact inverses.
        hb_piece, circle_piece, _ = _normalize_pieces(self.hb_piece, circle_piece)
        return Presentation(self.handlebodies, circles, lk, hb_piece, circle_piece, self.caps)

    def blow_up_pair(self) -> Presentation:
        """Signature-preserving macro: one +1 and one -1 blow-up together."""
        return self.blow_up(+1).blow_up(-1)

    def slide(self, moving: str, over: str, sign: int) -> Presentation:
        if sign not in (1, -1):
            raise InvalidMoveError("slide sign must be +1 or -1")
        x = self.circle_index(moving)
        j = self.circle_index(over)
        if x == j:
            raise InvalidMoveError("cannot slide a circle over itself")
        if not self.circles[j].is_surgery:
            raise InvalidMoveError(f"cannot slide over longitude {over!r}")
        n = len(self.circles)
        m = [list(row) for row in self.lk]
        # Congruence by E = I + sign * e_x e_j^T.
        for k in range(n):
            if k != x:
                m[x][k] += sign * m[j][k]
        for k in range(n):
            if k != x:
                m[k][x] = m[x][k]
        m[x][x] += 2 * sign * self.lk[x][j] + self.lk[j][j]
        circles = list(self.circles)
        circles[x] = Circle(circles[x].name, m[x][x], circles[x].owner)
        circle_piece = list(self.circle_piece)
        hb_piece = self.hb_piece
        if circle_piece[x] != circle_piece[j]:
            # The slide genuinely links the two pieces together.
            merged = min(circle_piece[x], circle_piece[j])
            gone = max(circle_piece[x], circle_piece[j])
            circle_piece = [merged if p == gone else p for p in circle_piece]
            hb_piece = tuple(merged if p == gone else p for p in hb_piece)
        hb_piece, circle_piece, _ = _normalize_pieces(tuple(hb_piece), tuple(circle_piece))
        return Presentation(
            self.handlebodies,
            tuple(circles),
            tuple(tuple(row) for row in m),
            hb_piece,
            circle_piece,
            self.caps,
        )

    def disjoint_union(self, other: Presentation) -> Presentation:
        taken = self._taken_names()
        hb_rename: dict[str, str] = {}
        for hb in other.handlebodies:
            new = hb.name
            while new in taken or any(f"{new}.{k}" in taken for k in range(1, hb.genus + 1)):
                new += "'"
            taken.add(new)
            taken.update(f"{new}.{k}" for k in range(1, hb.genus + 1))
            hb_rename[hb.name] = new
        circle_rename: dict[str, str] = {}
        for c in other.circles:
            if c.owner is not None:
                owner_name = other.handlebodies[c.owner[0]].name
                new = f"{hb_rename[owner_name]}.{c.owner[1]}"
            else:
                new = _fresh_name(c.name, taken)
                taken.add(new)
            circle_rename[c.name] = new

        h0 = len(self.handlebodies)
        hbs = self.handlebodies + tuple(
            Handlebody(hb_rename[h.name], h.genus) for h in other.handlebodies
        )
        my_l = self.num_longitudes
        their_l = other.num_longitudes
        circles: list[Circle] = []
        circles += self.circles[:my_l]
        for c in other.circles[:their_l]:
            circles.append(
                Circle(circle_rename[c.name], c.framing, (c.owner[0] + h0, c.owner[1]))
            )
        circles += self.circles[my_l:]
        for c in other.circles[their_l:]:
            circles.append(Circle(circle_rename[c.name], c.framing))

        def old_index(i: int) -> tuple[int, int]:
            # Map new index -> (side, index in that side's presentation).
            if i < my_l:
                return 0, i
            if i < my_l + their_l:
                return 1, i - my_l
            if i < my_l + their_l + self.surgery_count:
                return 0, i - their_l
            return 1, i - my_l - self.surgery_count

        n = len(circles)
        lk = [[0] * n for _ in range(n)]
        for i in range(n):
            si, oi = old_index(i)
            for j in range(n):
                sj, oj = old_index(j)
                if si == sj:
                    src = self.lk if si == 0 else other.lk
                    lk[i][j] = src[oi][oj]

        shift = (max(set(self.hb_piece) | set(self.circle_piece)) + 1) if (
            self.hb_piece or self.circle_piece
        ) else 0
        hb_piece = self.hb_piece + tuple(p + shift for p in other.hb_piece)
        pieces: list[int] = []
        for i in range(n):
            si, oi = old_index(i)
            pieces.append(
                self.circle_piece[oi] if si == 0 else other.circle_piece[oi] + shift
            )
        hb_piece, circle_piece, _ = _normalize_pieces(hb_piece, tuple(pieces))
        return Presentation(
            hbs,
            tuple(circles),
            tuple(tuple(row) for row in lk),
            hb_piece,
            circle_piece,
            self.caps + other.caps,
        )

    def permute(self, perm: Sequence[int]) -> Presentation:
        """Reorder handlebodies; new position i holds old handlebody perm[i]."""
        m = len(self.handlebodies)
        if sorted(perm) != list(range(m)):
            raise InvalidMoveError(f"{perm!r} is not a permutation of 0..{m - 1}")
        old_to_new = {old: new for new, old in enumerate(perm)}
        hbs = tuple(self.handlebodies[old] for old in perm)
        # New circle order: longitude blocks in new handlebody order, then surgery.
        order: list[int] = []
        for old in perm:
            base = sum(h.genus for h in self.handlebodies[:old])
            order += list(range(base, base + self.handlebodies[old].genus))
        order += list(self.surgery_indices)
        circles = []
        for i in order:
            c = self.circles[i]
            if c.owner is None:
                circles.append(c)
            else:
                circles.append(Circle(c.name, c.framing, (old_to_new[c.owner[0]], c.owner[1])))
        lk = tuple(tuple(self.lk[i][j] for j in order) for i in order)
        hb_piece = tuple(self.hb_piece[old] for old in perm)
        circle_piece = tuple(self.circle_piece[i] for i in order)
        hb_piece, circle_piece, _ = _normalize_pieces(hb_piece, circle_piece)
        return Presentation(hbs, tuple(circles), lk, hb_piece, circle_piece, self.caps)

    def glue(self, i: int, j: int) -> Presentation:
        """Glue handlebody i to handlebody j through the orientation-reversing
        handle identification.

        Matched longitudes fuse into surgery circles: the fused row is the
        difference of the two longitude rows and the framing is the induced
        quadratic value fr + fr' - 2 lk.  Gluing within one piece attaches a
        one-handle, recorded as an extra isolated 0-framed circle; gluing
        two pieces merges them instead.
        """
        m = len(self.handlebodies)
        if not (0 <= i < m and 0 <= j < m and i != j):
            raise InvalidMoveError("glue needs two distinct handlebody indices")
        if i > j:
            i, j = j, i
        g = self.handlebodies[i].genus
        if self.handlebodies[j].genus != g:
            raise InvalidMoveError(
                f"genus mismatch: {self.handlebodies[i].name!r} has genus {g}, "
                f"{self.handlebodies[j].name!r} has genus {self.handlebodies[j].genus}"
            )
        same_piece = self.hb_piece[i] == self.hb_piece[j]

        li = [self.longitude_index(i, k) for k in range(1, g + 1)]
        lj = [self.longitude_index(j, k) for k in range(1, g + 1)]
        removed = set(li) | set(lj)
        keep_hbs = [h for h in range(m) if h not in (i, j)]
        new_hb_index = {h: pos for pos, h in enumerate(keep_hbs)}

        keep_long = [
            idx
            for idx in range(self.num_longitudes)
            if idx not in removed
        ]
        keep_surg = list(self.surgery_indices)
        survivors = keep_long + keep_surg

        taken = {self.circles[idx].name for idx in survivors} | {
            h.name for h in (self.handlebodies[h] for h in keep_hbs)
        }
        fused_names = []
        for k in range(g):
            nm = _fresh_name(
                f"{self.circles[li[k]].name}*{self.circles[lj[k]].name}", taken
            )
            taken.add(nm)
            fused_names.append(nm)

        def fold(a: int, b: int) -> int:
            # Entry of F^T L F between fused circles a and b (0-based handles).
            return (
                self.lk[li[a]][li[b]]
                - self.lk[li[a]][lj[b]]
                - self.lk[lj[a]][li[b]]
                + self.lk[lj[a]][lj[b]]
            )

        circles: list[Circle] = []
        for idx in keep_long:
            c = self.circles[idx]
            circles.append(Circle(c.name, c.framing, (new_hb_index[c.owner[0]], c.owner[1])))
        for idx in keep_surg:
            circles.append(self.circles[idx])
        for k in range(g):
            circles.append(Circle(fused_names[k], fold(k, k)))

        ns = len(survivors)
        total = ns + g
        lk = [[0] * total for _ in range(total)]
        for a, ia in enumerate(survivors):
            for b, ib in enumerate(survivors):
                lk[a][b] = self.lk[ia][ib]
        for k in range(g):
            for a, ia in enumerate(survivors):
                v = self.lk[ia][li[k]] - self.lk[ia][lj[k]]
                lk[ns + k][a] = v
                lk[a][ns + k] = v
            for l in range(g):
                lk[ns + k][ns + l] = fold(k, l)

        if same_piece:
            merged = self.hb_piece[i]
            hb_piece = [self.hb_piece[h] for h in keep_hbs]
            circle_piece = [self.circle_piece[idx] for idx in survivors]
        else:
            merged = min(self.hb_piece[i], self.hb_piece[j])
            gone = max(self.hb_piece[i], self.hb_piece[j])

            def remap(p: int) -> int:
                return merged if p == gone else p

            hb_piece = [remap(self.hb_piece[h]) for h in keep_hbs]
            circle_piece = [remap(self.circle_piece[idx]) for idx in survivors]
        circle_piece += [merged] * g

        if same_piece:
            # Self-gluing adds a one-handle: an isolated 0-framed circle.
            nm = _fresh_name("U1", taken)
            circles.append(Circle(nm, 0))
            for row in lk:
                row.append(0)
            lk.append([0] * (total + 1))
            circle_piece.append(merged)

        caps = self.caps
        if merged not in hb_piece and merged not in circle_piece:
            # The glued piece lost its last members: a closed sphere summand.
            caps += 1
        hb_piece_t, circle_piece_t, _ = _normalize_pieces(
            tuple(hb_piece), tuple(circle_piece)
        )
        return Presentation(
            tuple(self.handlebodies[h] for h in keep_hbs),
            tuple(circles),
            tuple(tuple(row) for row in lk),
            hb_piece_t,
            circle_piece_t,
            caps,
        )

    def sew(self, other: Presentation) -> Presentation:
        """Glue this presentation's last handlebody to other's first."""
        if not self.handlebodies:
            raise InvalidMoveError("left operand of sew has no handlebodies")
        if not other.handlebodies:
            raise InvalidMoveError("right operand of sew has no handlebodies")
        if self.handlebodies[-1].genus != other.handlebodies[0].genus:
            raise InvalidMoveError(
                f"genus mismatch: {self.handlebodies[-1].genus} vs {other.handlebodies[0].genus}"
            )
        u = self.disjoint_union(other)
        return u.glue(len(self.handlebodies) - 1, len(self.handlebodies))

    def mend(self) -> Presentation:
        """Glue the first two handlebodies of this presentation together."""
        if len(self.handlebodies) < 2:
            raise InvalidMoveError("mend needs at least two handlebodies")
        if self.handlebodies[0].genus != self.handlebodies[1].genus:
            raise InvalidMoveError(
                f"genus mismatch: {self.handlebodies[0].genus} vs {self.handlebodies[1].genus}"
            )
        return self.glue(0, 1)

    # -- helpers ------------------------------------------------------------

    def _taken_names(self) -> set[str]:
        return {c.name for c in self.circles} | {h.name for h in self.handlebodies}

    def piece_presentation(self, piece: int) -> Presentation:
        """The sub-presentation carried by one piece, as a single-piece value."""
        hbs = [h for h in range(len(self.handlebodies)) if self.hb_piece[h] == piece]
        hb_set = set(hbs)
        new_hb_index = {h: pos for pos, h in enumerate(hbs)}
        keep = [
            idx
            for idx, c in enumerate(self.circles)
            if (c.owner[0] in hb_set if c.owner else self.circle_piece[idx] == piece)
        ]
        circles = []
        for idx in keep:
            c = self.circles[idx]
            if c.owner is None:
                circles.append(c)
            else:
                circles.append(Circle(c.name, c.framing, (new_hb_index[c.owner[0]], c.owner[1])))
        lk = tuple(tuple(self.lk[a][b] for b in keep) for a in keep)
        k = 1 if (hbs or keep) else 0
        return Presentation(
            tuple(self.handlebodies[h] for h in hbs),
            tuple(circles),
            lk,
            (0,) * len(hbs) if k else (),
            (0,) * len(keep) if k else (),
            0,
        )

    def handle_of_color_position(self, pos: int) -> tuple[int, int]:
        """Map a flat color position to (handlebody index, handle index)."""
        c = self.circles[pos]
        if c.owner is None:
            raise PresentationError("color position exceeds handle count")
        return c.owner


def _normalize_pieces(
    hb_piece: tuple[int, ...], circle_piece: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Renumber piece ids by first occurrence; returns dropped id count."""
    ids = list(hb_piece) + list(circle_piece)
    mapping: dict[int, int] = {}
    for p in ids:
        if p not in mapping:
            mapping[p] = len(mapping)
    used_before = (max(ids) + 1) if ids else 0
    dropped = used_before - len(mapping)
    if dropped < 0:
        dropped = 0
    return (
        tuple(mapping[p] for p in hb_piece),
        tuple(mapping[p] for p in circle_piece),
        dropped,
    )


def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


def pairing_presentation(g: int) -> Presentation:
    """Two parallel genus-g handlebodies with one 0-framed circle around
    each matched handle pair; the combinatorial cap."""
    if g < 0:
        raise PresentationError("genus must be nonnegative")
    links = {}
    surgery = []
    for k in range(1, g + 1):
        surgery.append((f"s{k}", 0))
        links[(f"s{k}", f"P.{k}")] = 1
        links[(f"s{k}", f"Q.{k}")] = 1
    return Presentation.assemble(
        handlebodies=[("P", g), ("Q", g)], surgery=surgery, links=links
    )


@dataclass(frozen=True)
class MoveScript:
    """An ordered list of Kirby moves to apply to a presentation."""

    moves: tuple[tuple, ...] = ()

    def apply(self, p: Presentation) -> Presentation:
        for move in self.moves:
            kind = move[0]
            if kind == "blowup":
                p = p.blow_up(move[1])
            elif kind == "blowdown":
                p = p.blow_down(move[1])
            elif kind == "slide":
                p = p.slide(move[1], move[2], move[3])
            else:
                raise InvalidMoveError(f"unknown move {kind!r}")
        return p
