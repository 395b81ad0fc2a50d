"""Randomized and exhaustive verification of the four axioms and the functor laws.

Every comparison is exact.  Failures are recorded as report entries with a
rendered counterexample presentation; nothing raises on a failed law, so a
corrupted oracle can be probed deliberately.  All randomness flows through
``random.Random(seed)``, making reports byte-reproducible.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from .engine import (
    Cobordism,
    MinimalData,
    cap_cobordism,
    cobordism_union,
    compose_cobordisms,
    cup_cobordism,
    extend,
    identity_cobordism,
    symmetry_cobordism,
)
from .errors import NondegeneracyError
from .presentation import Presentation, pairing_presentation
from .scalars import ExactScalar
from .theory import AbelianTheory, ColorVector


@dataclass(frozen=True)
class Budget:
    seed: int = 0
    random_instances: int = 50
    max_surgery: int = 2
    max_genus: int = 2
    max_handlebodies: int = 2
    max_link: int = 3
    exhaustive: bool = True
    max_color_samples: int = 64


@dataclass
class CheckResult:
    axiom: str
    instance: str
    passed: bool
    lhs: ExactScalar | None = None
    rhs: ExactScalar | None = None

    def to_json_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "instance": self.instance,
            "pass": self.passed,
            "lhs": self.lhs.to_json() if self.lhs is not None else None,
            "rhs": self.rhs.to_json() if self.rhs is not None else None,
        }


@dataclass
class Report:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> None:
        self.results.append(result)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_jsonl(self) -> str:
        return "".join(
            json.dumps(r.to_json_dict(), separators=(", ", ": ")) + "\n"
            for r in self.results
        )


# -- random generation -----------------------------------------------------------


class Sampler:
    """Seeded generator of presentations, colors and cobordisms."""

    def __init__(self, theory: AbelianTheory, budget: Budget) -> None:
        self.theory = theory
        self.budget = budget
        self.rng = random.Random(budget.seed)

    def genera(self, count: int | None = None) -> list[int]:
        b = self.budget
        if count is None:
            count = self.rng.randint(0, b.max_handlebodies)
        return [self.rng.randint(0, b.max_genus) for _ in range(count)]

    def presentation(
        self,
        genera: Sequence[int] | None = None,
        n_surgery: int | None = None,
        density: float = 0.6,
    ) -> Presentation:
        b = self.budget
        if genera is None:
            genera = self.genera()
        if n_surgery is None:
            n_surgery = self.rng.randint(1, b.max_surgery)
        handlebodies = [(f"H{i + 1}", g) for i, g in enumerate(genera)]
        surgery = [
            (f"K{i + 1}", self.rng.randint(-b.max_link, b.max_link))
            for i in range(n_surgery)
        ]
        names = [
            f"H{i + 1}.{k}"
            for i, g in enumerate(genera)
            for k in range(1, g + 1)
        ] + [name for name, _ in surgery]
        links = {}
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                if self.rng.random() < density:
                    v = self.rng.randint(-b.max_link, b.max_link)
                    if v:
                        links[(names[i], names[j])] = v
        return Presentation.assemble(handlebodies, surgery, links)

    def colors(self, p: Presentation) -> ColorVector:
        elems = self.theory.elements
        return tuple(self.rng.choice(elems) for _ in range(p.total_genus))

    def sew_pair(self, genus: int) -> tuple[Presentation, Presentation]:
        left = self.genera(self.rng.randint(0, self.budget.max_handlebodies - 1))
        right = self.genera(self.rng.randint(0, self.budget.max_handlebodies - 1))
        p = self.presentation(genera=left + [genus])
        q = self.presentation(genera=[genus] + right)
        return p, q

    def mend_instance(self, genus: int) -> Presentation:
        rest = self.genera(self.rng.randint(0, max(0, self.budget.max_handlebodies - 2)))
        return self.presentation(genera=[genus, genus] + rest)

    def slide_script(self, p: Presentation, steps: int) -> list[tuple[str, str, int]]:
        surgery = [p.circles[i].name for i in p.surgery_indices]
        everything = [c.name for c in p.circles]
        if not surgery or len(everything) < 2:
            return []
        script = []
        for _ in range(steps):
            over = self.rng.choice(surgery)
            moving = self.rng.choice(everything)
            while moving == over:
                moving = self.rng.choice(everything)
            script.append((moving, over, self.rng.choice([1, -1])))
        return script

    def cobordism(
        self, source_genera: Sequence[int], target_genera: Sequence[int]
    ) -> Cobordism:
        genera = list(source_genera) + list(target_genera)
        p = self.presentation(genera=genera)
        k = len(source_genera)
        return Cobordism(p, tuple(range(k)), tuple(range(k, len(genera))))


# -- comparing functionals ----------------------------------------------------------


def _color_domain(
    md: MinimalData, total: int, budget: Budget, rng: random.Random
) -> list[ColorVector]:
    n = md.group_order**total
    full = list(md.theory.colorings(total))
    if n <= budget.max_color_samples:
        return full
    return [full[rng.randrange(n)] for _ in range(budget.max_color_samples)]


def _sewing_rhs(
    md: MinimalData,
    p: Presentation,
    q: Presentation,
    genus: int,
    x: ColorVector,
    y: ColorVector,
) -> ExactScalar:
    dual = md.dual_element(genus)
    basis = md.colorings(genus)
    acc = ExactScalar.zero()
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            e = dual.coefficient(i, j)
            if e.is_zero:
                continue
            term = e * md.oracle(p, x + a) * md.oracle(q, b + y)
            acc = acc.add(term, md.group_order)
    return acc


def _mending_rhs(
    md: MinimalData, p: Presentation, genus: int, y: ColorVector
) -> ExactScalar:
    dual = md.dual_element(genus)
    basis = md.colorings(genus)
    acc = ExactScalar.zero()
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            e = dual.coefficient(i, j)
            if e.is_zero:
                continue
            acc = acc.add(e * md.oracle(p, a + b + y), md.group_order)
    return acc


def _permuted_colors(
    p: Presentation, perm: Sequence[int], colors: ColorVector
) -> ColorVector:
    """Colors for permute(p, perm) matching the original assignment."""
    offsets = []
    pos = 0
    for g in p.genera:
        offsets.append(pos)
        pos += g
    out: list = []
    for old in perm:
        g = p.genera[old]
        out.extend(colors[offsets[old] : offsets[old] + g])
    return tuple(out)


# -- the axiom suite ------------------------------------------------------------------


def axiom_check(md: MinimalData, budget: Budget) -> Report:
    """Check Symmetry, Nondegeneracy, Sewing and Mending on the oracle."""
    report = Report()
    sampler = Sampler(md.theory, budget)
    rng = sampler.rng

    # (b) Nondegeneracy: pairing invertible and both contraction laws exact.
    for g in range(budget.max_genus + 1):
        instance = f"pairing genus {g}"
        try:
            dual = md.dual_element(g)
        except NondegeneracyError:
            report.add(CheckResult("Nondegeneracy", instance, False))
            continue
        pairing = md.pairing(g)
        n = len(pairing)
        ok = all(
            pairing[i][j].equals(pairing[j][i], md.group_order)
            for i in range(n)
            for j in range(n)
        )
        for i in range(n):
            for j in range(n):
                lhs = ExactScalar.zero()
                rhs = ExactScalar.zero()
                for k in range(n):
                    lhs = lhs.add(dual.matrix[i][k] * pairing[k][j], md.group_order)
                    rhs = rhs.add(pairing[i][k] * dual.matrix[k][j], md.group_order)
                target = ExactScalar.one() if i == j else ExactScalar.zero()
                ok = ok and lhs.equals(target, md.group_order)
                ok = ok and rhs.equals(target, md.group_order)
        report.add(CheckResult("Nondegeneracy", instance, ok))

    def check_symmetry(p: Presentation) -> None:
        m = len(p.handlebodies)
        if m < 2:
            return
        perm = list(range(m))
        rng.shuffle(perm)
        pp = p.permute(perm)
        for colors in _color_domain(md, p.total_genus, budget, rng):
            lhs = md.oracle(pp, _permuted_colors(p, perm, colors))
            rhs = md.oracle(p, colors)
            if not lhs.equals(rhs, md.group_order):
                report.add(CheckResult("Symmetry", _render(p), False, lhs, rhs))
                return
        report.add(CheckResult("Symmetry", _render(p), True))

    def check_sewing(p: Presentation, q: Presentation, genus: int) -> None:
        sewn = p.sew(q)
        hx = p.total_genus - genus
        for colors in _color_domain(md, sewn.total_genus, budget, rng):
            x, y = colors[:hx], colors[hx:]
            lhs = md.oracle(sewn, colors)
            rhs = _sewing_rhs(md, p, q, genus, x, y)
            if not lhs.equals(rhs, md.group_order):
                report.add(
                    CheckResult("Sewing", _render(p) + "--\n" + _render(q), False, lhs, rhs)
                )
                return
        report.add(CheckResult("Sewing", _render(p) + "--\n" + _render(q), True))

    def check_mending(p: Presentation, genus: int) -> None:
        mended = p.mend()
        for colors in _color_domain(md, mended.total_genus, budget, rng):
            lhs = md.oracle(mended, colors)
            rhs = _mending_rhs(md, p, genus, colors)
            if not lhs.equals(rhs, md.group_order):
                report.add(CheckResult("Mending", _render(p), False, lhs, rhs))
                return
        report.add(CheckResult("Mending", _render(p), True))

    if budget.exhaustive:
        # Small systematic family: genus 0 and 1 boundaries, at most two
        # surgery circles, all basis colorings.
        for g in (0, 1):
            fixed = [
                pairing_presentation(g),
                Presentation.assemble([("H1", g), ("H2", g)]),
                Presentation.assemble(
                    [("H1", g), ("H2", g)],
                    [("K1", 1)],
                    {("K1", "H1.1"): 1} if g else {},
                ),
                Presentation.assemble(
                    [("H1", g), ("H2", g)],
                    [("K1", 0), ("K2", -1)],
                    {("K1", "H1.1"): 1, ("K2", "H2.1"): -1, ("K1", "K2"): 1}
                    if g
                    else {("K1", "K2"): 1},
                ),
            ]
            for p in fixed:
                check_mending(p, g)
                for q in fixed:
                    check_sewing(p, q, g)
            for p in fixed:
                check_symmetry(p)

    for _ in range(budget.random_instances):
        g = rng.randint(0, budget.max_genus)
        p, q = sampler.sew_pair(g)
        check_sewing(p, q, g)
        m = sampler.mend_instance(rng.randint(0, budget.max_genus))
        check_mending(m, m.handlebodies[0].genus)
        check_symmetry(sampler.presentation())
    return report


def _render(p: Presentation) -> str:
    from .fileformat import render_presentation

    return render_presentation(p)


# -- functor laws -----------------------------------------------------------------------


def functoriality_check(md: MinimalData, budget: Budget) -> Report:
    report = Report()
    sampler = Sampler(md.theory, budget)
    rng = sampler.rng

    def add(law: str, instance: str, ok: bool) -> None:
        report.add(CheckResult(law, instance, ok))

    # Identity and zig-zag at each genus in range.
    for g in range(budget.max_genus + 1):
        ident = extend(md, identity_cobordism([g]))
        add("Identity", f"genus {g}", ident.is_identity())

        if g <= 1:
            # Matrix-level zig-zags; dims stay small at low genus.
            cap = extend(md, cap_cobordism(g))
            cup = extend(md, cup_cobordism(g))
            left = cap.tensor(ident).compose(ident.tensor(cup))
            right = ident.tensor(cap).compose(cup.tensor(ident))
            add("ZigZag", f"(cap x id)(id x cup) genus {g}", left.equal(ident))
            add("ZigZag", f"(id x cap)(cup x id) genus {g}", right.equal(ident))

        composed = compose_cobordisms(
            cobordism_union(cap_cobordism(g), identity_cobordism([g])),
            cobordism_union(identity_cobordism([g]), cup_cobordism(g)),
        )
        add(
            "ZigZag",
            f"glued zig-zag genus {g}",
            extend(md, composed).equal(ident),
        )

    # Symmetry morphisms are permutation matrices.
    for ga, gb in ((0, 1), (1, 1), (1, 2)):
        if max(ga, gb) > budget.max_genus:
            continue
        sigma = extend(md, symmetry_cobordism([ga], [gb]))
        dims = (md.dim(ga), md.dim(gb))
        expected = [
            [
                ExactScalar.one()
                if (ib == jb2 and ia == ja2)
                else ExactScalar.zero()
                for ja2 in range(dims[0])
                for jb2 in range(dims[1])
            ]
            for ib in range(dims[1])
            for ia in range(dims[0])
        ]
        ok = all(
            sigma.entries[r][c].equals(expected[r][c], md.group_order)
            for r in range(len(expected))
            for c in range(len(expected[0]))
        )
        add("SymmetryMap", f"flip ({ga}) x ({gb})", ok)

    # Random composable pairs and unions.
    for _ in range(budget.random_instances):
        gs = [rng.randint(0, min(2, budget.max_genus))]
        gm = [rng.randint(0, min(2, budget.max_genus))]
        gt = [rng.randint(0, min(2, budget.max_genus))]
        first = sampler.cobordism(gs, gm)
        second = sampler.cobordism(gm, gt)
        lhs = extend(md, compose_cobordisms(second, first))
        rhs = extend(md, second).compose(extend(md, first))
        add(
            "Composition",
            _render(first.presentation) + "--\n" + _render(second.presentation),
            lhs.equal(rhs),
        )

        a = sampler.cobordism([rng.randint(0, 1)], [rng.randint(0, 1)])
        b = sampler.cobordism([rng.randint(0, 1)], [rng.randint(0, 1)])
        union_map = extend(md, cobordism_union(a, b))
        tensor_map = extend(md, a).tensor(extend(md, b))
        add(
            "Union",
            _render(a.presentation) + "--\n" + _render(b.presentation),
            union_map.equal(tensor_map),
        )

        # Swapping the union order equals conjugation by the flips.
        swapped = extend(md, cobordism_union(b, a))
        sigma_out = extend(md, symmetry_cobordism(a.target_genera, b.target_genera))
        sigma_in = extend(md, symmetry_cobordism(b.source_genera, a.source_genera))
        add(
            "SigmaConjugation",
            _render(a.presentation) + "--\n" + _render(b.presentation),
            swapped.equal(sigma_out.compose(union_map).compose(sigma_in)),
        )
    return report


# -- corrupted oracles for mutation testing -----------------------------------------------


def phase_twist_mutant(theory: AbelianTheory) -> MinimalData:
    """Twist one phase: the first surgery circle gets an extra framing unit."""

    def oracle(p: Presentation, colors: ColorVector) -> ExactScalar:
        surgery = list(p.surgery_indices)
        if not surgery:
            return theory.evaluate(p, colors)
        i = surgery[0]
        m = [list(row) for row in p.lk]
        m[i][i] += 1
        circles = list(p.circles)
        circles[i] = type(circles[i])(circles[i].name, m[i][i], circles[i].owner)
        twisted = Presentation(
            p.handlebodies,
            tuple(circles),
            tuple(tuple(row) for row in m),
            p.hb_piece,
            p.circle_piece,
            p.caps,
        )
        return theory.evaluate(twisted, colors)

    return MinimalData(theory=theory, oracle=oracle, label="phase-twist")


def component_scale_mutant(theory: AbelianTheory, factor: int = 2) -> MinimalData:
    """Scale by factor^(number of disjoint pieces).

    Sewing merges two pieces into one, which the rescaled dual element
    absorbs exactly, but mending glues a piece to itself and leaves the
    count alone, so only the Mending axiom sees the corruption.
    """

    def oracle(p: Presentation, colors: ColorVector) -> ExactScalar:
        return theory.evaluate(p, colors) * (factor ** max(p.num_pieces, 0))

    return MinimalData(theory=theory, oracle=oracle, label="component-scale")


def lk_component_count(p: Presentation) -> int:
    """Connected components of the linking graph.

    Nodes are circles and handlebodies; edges are nonzero linking numbers
    and handlebody-longitude ownership.  This is a diagnostic notion only:
    piece structure is authoritative for disjointness.
    """
    n = len(p.circles)
    m = len(p.handlebodies)
    parent = list(range(n + m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for i in range(n):
        for j in range(i + 1, n):
            if p.lk[i][j]:
                union(i, j)
        if p.circles[i].owner is not None:
            union(i, n + p.circles[i].owner[0])
    roots = {find(x) for x in range(n + m)}
    return len(roots)
