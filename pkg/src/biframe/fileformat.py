"""Line-oriented text formats for presentations, move scripts and theories.

Presentation files:

    surgery <name> framing <int>
    handlebody <name> genus <int>     # longitudes auto-named <name>.1 .. <name>.g
    framing <name>[.i] <int>
    lk <nameA>[.i] <nameB>[.j] <int>  # symmetric; one declaration per unordered pair

Move scripts:

    blowup +1|-1
    blowdown <name>
    slide <name> over <name> +1|-1

Theory configs:

    group <n1> [n2 ...]
    qdiag <frac> [<frac> ...]         # one value per generator
    bil <i> <j> <frac>                # polarization of generators i and j, 1-based
    q <word> <frac>                   # named form; letters e,m,f,g,... denote generators

'#' starts a comment anywhere; blank lines are ignored.  A parsed
presentation always forms a single piece.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .presentation import Circle, Handlebody, MoveScript, Presentation

GENERATOR_LETTERS = "emfghjklnopqrstu"


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}") from None


def _fraction(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"expected a rational number, got {token!r}") from None


def parse_presentation(text: str) -> Presentation:
    handlebodies: list[Handlebody] = []
    surgery: list[tuple[str, int]] = []
    framings: dict[str, tuple[int, int]] = {}  # name -> (value, declaring line)
    links: dict[tuple[str, str], tuple[int, int]] = {}
    names: dict[str, int] = {}

    def declare(name: str, lineno: int) -> None:
        if name in names:
            raise ParseError(lineno, f"duplicate id {name!r} (first declared on line {names[name]})")
        names[name] = lineno

    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "surgery":
            if len(tok) != 4 or tok[2] != "framing":
                raise ParseError(lineno, "expected: surgery <name> framing <int>")
            declare(tok[1], lineno)
            surgery.append((tok[1], _int(tok[3], lineno, "framing")))
        elif kind == "handlebody":
            if len(tok) != 4 or tok[2] != "genus":
                raise ParseError(lineno, "expected: handlebody <name> genus <int>")
            declare(tok[1], lineno)
            g = _int(tok[3], lineno, "genus")
            if g < 0:
                raise ParseError(lineno, "genus must be nonnegative")
            for k in range(1, g + 1):
                declare(f"{tok[1]}.{k}", lineno)
            handlebodies.append(Handlebody(tok[1], g))
        elif kind == "framing":
            if len(tok) != 3:
                raise ParseError(lineno, "expected: framing <name> <int>")
            if tok[1] in framings:
                raise ParseError(lineno, f"framing of {tok[1]!r} declared twice")
            framings[tok[1]] = (_int(tok[2], lineno, "framing"), lineno)
        elif kind == "lk":
            if len(tok) != 4:
                raise ParseError(lineno, "expected: lk <nameA> <nameB> <int>")
            key = tuple(sorted((tok[1], tok[2])))
            if key in links:
                raise ParseError(
                    lineno,
                    f"linking of {tok[1]!r} and {tok[2]!r} declared twice "
                    f"(first on line {links[key][1]})",
                )
            links[key] = (_int(tok[3], lineno, "linking number"), lineno)
        else:
            raise ParseError(lineno, f"unknown directive {kind!r}")

    circle_names = set()
    for name, _ in surgery:
        circle_names.add(name)
    for hb in handlebodies:
        circle_names.update(f"{hb.name}.{k}" for k in range(1, hb.genus + 1))

    surgery_framing = {name: fr for name, fr in surgery}
    explicit: dict[str, int] = dict(surgery_framing)
    for name, (value, lineno) in framings.items():
        if name not in circle_names:
            raise ParseError(lineno, f"unknown circle name {name!r}")
        if name in explicit and explicit[name] != value:
            raise ParseError(
                lineno,
                f"framing of {name!r} conflicts with its earlier declaration",
            )
        explicit[name] = value
    for (na, nb), (value, lineno) in links.items():
        for nm in (na, nb):
            if nm not in circle_names:
                raise ParseError(lineno, f"unknown circle name {nm!r}")
        if na == nb:
            if na in explicit and explicit[na] != value:
                raise ParseError(
                    lineno, f"self-linking of {na!r} conflicts with its framing"
                )
            explicit[na] = value

    link_values = {
        key: value for key, (value, _) in links.items() if key[0] != key[1]
    }
    link_values.update({(nm, nm): fr for nm, fr in explicit.items()})
    return Presentation.assemble(
        handlebodies=[(hb.name, hb.genus) for hb in handlebodies],
        surgery=surgery,
        links=link_values,
    )


def render_presentation(p: Presentation) -> str:
    lines: list[str] = []
    if p.num_pieces > 1 or p.caps:
        lines.append(f"# pieces: {p.num_pieces} (caps: {p.caps}); file format keeps one piece")
    for hb in p.handlebodies:
        lines.append(f"handlebody {hb.name} genus {hb.genus}")
    for c in p.circles:
        if c.owner is None:
            lines.append(f"surgery {c.name} framing {c.framing}")
    for c in p.circles:
        if c.owner is not None and c.framing != 0:
            lines.append(f"framing {c.name} {c.framing}")
    for i in range(len(p.circles)):
        for j in range(i + 1, len(p.circles)):
            if p.lk[i][j] != 0:
                lines.append(f"lk {p.circles[i].name} {p.circles[j].name} {p.lk[i][j]}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_move_script(text: str) -> MoveScript:
    moves: list[tuple] = []
    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "blowup":
            if len(tok) != 2 or tok[1] not in ("+1", "-1", "1"):
                raise ParseError(lineno, "expected: blowup +1|-1")
            moves.append(("blowup", 1 if tok[1] in ("+1", "1") else -1))
        elif kind == "blowdown":
            if len(tok) != 2:
                raise ParseError(lineno, "expected: blowdown <name>")
            moves.append(("blowdown", tok[1]))
        elif kind == "slide":
            if len(tok) != 5 or tok[2] != "over" or tok[4] not in ("+1", "-1", "1"):
                raise ParseError(lineno, "expected: slide <name> over <name> +1|-1")
            moves.append(("slide", tok[1], tok[3], 1 if tok[4] in ("+1", "1") else -1))
        else:
            raise ParseError(lineno, f"unknown move {kind!r}")
    return MoveScript(tuple(moves))


def render_move_script(script: MoveScript) -> str:
    lines = []
    for move in script.moves:
        if move[0] == "blowup":
            lines.append(f"blowup {'+1' if move[1] > 0 else '-1'}")
        elif move[0] == "blowdown":
            lines.append(f"blowdown {move[1]}")
        else:
            lines.append(f"slide {move[1]} over {move[2]} {'+1' if move[3] > 0 else '-1'}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_theory_config(text: str):
    """Returns the parsed theory; import is deferred to avoid a cycle."""
    from .theory import AbelianTheory

    orders: list[int] | None = None
    qdiag: list[Fraction] | None = None
    bil: dict[tuple[int, int], Fraction] = {}
    named: dict[tuple[int, ...], tuple[Fraction, int]] = {}

    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "group":
            if orders is not None:
                raise ParseError(lineno, "group declared twice")
            if len(tok) < 2:
                raise ParseError(lineno, "expected: group <n1> [n2 ...]")
            orders = [_int(t, lineno, "cyclic order") for t in tok[1:]]
            if any(n < 1 for n in orders):
                raise ParseError(lineno, "cyclic orders must be positive")
        elif kind == "qdiag":
            if orders is None:
                raise ParseError(lineno, "qdiag must come after the group line")
            if len(tok) != len(orders) + 1:
                raise ParseError(
                    lineno, f"qdiag needs {len(orders)} values, got {len(tok) - 1}"
                )
            qdiag = [_fraction(t, lineno) for t in tok[1:]]
        elif kind == "bil":
            if orders is None:
                raise ParseError(lineno, "bil must come after the group line")
            if len(tok) != 4:
                raise ParseError(lineno, "expected: bil <i> <j> <frac>")
            i = _int(tok[1], lineno, "generator index")
            j = _int(tok[2], lineno, "generator index")
            if not (1 <= i <= len(orders) and 1 <= j <= len(orders)) or i == j:
                raise ParseError(lineno, "bil needs two distinct 1-based generator indices")
            bil[(min(i, j) - 1, max(i, j) - 1)] = _fraction(tok[3], lineno)
        elif kind == "q":
            if orders is None:
                raise ParseError(lineno, "q must come after the group line")
            if len(tok) != 3:
                raise ParseError(lineno, "expected: q <word> <frac>")
            word = tok[1]
            letters = GENERATOR_LETTERS[: len(orders)]
            exps = [0] * len(orders)
            for ch in word:
                if ch not in letters:
                    raise ParseError(
                        lineno,
                        f"unknown generator letter {ch!r}; this group uses {', '.join(letters)}",
                    )
                idx = letters.index(ch)
                if exps[idx]:
                    raise ParseError(lineno, f"generator {ch!r} repeated in word {word!r}")
                exps[idx] = 1
            named[tuple(exps)] = (_fraction(tok[2], lineno), lineno)
        else:
            raise ParseError(lineno, f"unknown directive {kind!r}")

    if orders is None:
        raise ParseError(1, "missing group line")
    if qdiag is not None and named:
        raise ParseError(1, "mix of qdiag/bil and named q lines is not supported")

    if qdiag is None:
        r = len(orders)
        qdiag = []
        for i in range(r):
            e = tuple(1 if k == i else 0 for k in range(r))
            if e not in named:
                letters = GENERATOR_LETTERS[:r]
                raise ParseError(1, f"missing q value for generator {letters[i]!r}")
            qdiag.append(named[e][0])
        for i in range(r):
            for j in range(i + 1, r):
                pair = tuple(1 if k in (i, j) else 0 for k in range(r))
                if pair in named:
                    bil[(i, j)] = named[pair][0] - qdiag[i] - qdiag[j]
        for exps, (value, lineno) in named.items():
            if sum(exps) > 2:
                raise ParseError(lineno, "q words with more than two generators are not supported")

    return AbelianTheory.create(tuple(orders), tuple(qdiag), dict(bil))


def render_theory_config(theory) -> str:
    lines = [f"group {' '.join(str(n) for n in theory.orders)}"]
    lines.append("qdiag " + " ".join(str(q) for q in theory.qdiag))
    r = len(theory.orders)
    for i in range(r):
        for j in range(i + 1, r):
            v = theory.bilinear(i, j)
            if v != 0:
                lines.append(f"bil {i + 1} {j + 1} {v}")
    return "\n".join(lines) + "\n"
