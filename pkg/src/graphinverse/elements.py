"""Elements of a graph inverse semigroup and their exact arithmetic.

A nonzero element is a pair of paths (alpha, beta) with a common range,
read as alpha followed by the formal reversal of beta; this representation
is unique, so structural equality is semantic equality. The zero element
absorbs every product.

Also here: the path combinatorics that the congruence machinery leans on,
namely factoring closed paths into closed simple pieces, recognizing pure
cycle powers, and peeling cycle copies off a path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    Cycle,
    Graph,
    Path,
    concat,
    cycle_power,
    is_prefix,
    make_path,
    strip_prefix,
    vertex_path,
)


class ElementLiteralError(ValueError):
    """Raised when an element literal cannot be parsed over the graph."""


@dataclass(frozen=True)
class Element:
    """Zero, or a pair of paths with a common range.

    ``Element(p, q)`` denotes p followed by the reversal of q; the second
    path is the "starred" one. The idempotents are exactly the elements
    with ``alpha == beta``, and a vertex v is ``Element(@v, @v)``.
    """

    alpha: Path | None
    beta: Path | None

    def __post_init__(self) -> None:
        a, b = self.alpha, self.beta
        if (a is None) != (b is None):
            raise ValueError("zero element must have both paths empty")
        if a is not None and b is not None and a.target != b.target:
            raise ValueError(f"paths {a!r} and {b!r} have different ranges")

    @property
    def is_zero(self) -> bool:
        return self.alpha is None

    def __repr__(self) -> str:
        return format_element(self)


ZERO = Element(None, None)


def vertex_element(v: str) -> Element:
    return Element(vertex_path(v), vertex_path(v))


def path_element(p: Path) -> Element:
    """The path p viewed as an element (ghost part trivial)."""
    return Element(p, vertex_path(p.target))


def ghost_element(p: Path) -> Element:
    """The formal reversal of p viewed as an element."""
    return Element(vertex_path(p.target), p)


def idempotent_element(p: Path) -> Element:
    return Element(p, p)


def multiply(x: Element, y: Element) -> Element:
    """Exact product. Non-composable operands yield zero, never an error."""
    if x.is_zero or y.is_zero:
        return ZERO
    assert x.alpha is not None and x.beta is not None
    assert y.alpha is not None and y.beta is not None
    b, z = x.beta, y.alpha
    if is_prefix(b, z):
        xi = strip_prefix(b, z)
        return Element(concat(x.alpha, xi), y.beta)
    if is_prefix(z, b):
        xi = strip_prefix(z, b)
        return Element(x.alpha, concat(y.beta, xi))
    return ZERO


def product(*xs: Element) -> Element:
    out = xs[0]
    for x in xs[1:]:
        out = multiply(out, x)
    return out


def inverse(x: Element) -> Element:
    """Swap the two paths; zero is self-inverse."""
    if x.is_zero:
        return ZERO
    return Element(x.beta, x.alpha)


def is_idempotent(x: Element) -> bool:
    return x.is_zero or x.alpha == x.beta


def is_valid_element(g: Graph, x: Element) -> bool:
    """Both paths exist in g (ranges already agree by construction)."""
    if x.is_zero:
        return True

    def ok(p: Path) -> bool:
        try:
            return make_path(g, p.edges, source=p.source) == p
        except (ValueError, KeyError):
            return False

    assert x.alpha is not None and x.beta is not None
    return ok(x.alpha) and ok(x.beta)


# ---------------------------------------------------------------------------
# Closed-path combinatorics
# ---------------------------------------------------------------------------


def decompose_closed_path(p: Path) -> list[Path]:
    """Cut a closed path after each return to its base.

    The factors are the unique closed simple paths (based at the source)
    whose concatenation is p; a length-0 path yields the empty list.
    """
    if not p.is_closed:
        raise ValueError(f"path {p!r} is not closed")
    base = p.source
    factors = []
    start = 0
    for i in range(1, len(p.vertices)):
        if p.vertices[i] == base:
            factors.append(Path(p.vertices[start : i + 1], p.edges[start:i]))
            start = i
    return factors


def as_cycle_power(p: Path) -> tuple[Cycle, int] | None:
    """Recognize p as m identical laps of a single cycle.

    Returns the canonical cycle and the exponent m >= 1, or None when p is
    not closed or its closed simple factors are not all one cycle.
    """
    if len(p) < 1:
        raise ValueError("cycle-power recognition needs a nonempty path")
    if not p.is_closed:
        return None
    factors = decompose_closed_path(p)
    first = factors[0]
    if any(f != first for f in factors[1:]):
        return None
    body = first.vertices[:-1]
    if len(set(body)) != len(body):
        return None
    return Cycle.from_path(first), len(factors)


def factor_along_cycle(c: Cycle, p: Path) -> tuple[int, Path]:
    """Greedily strip leading laps of c from p.

    Returns (k, tail) with p = c^k tail and tail not starting with a full
    lap. When every vertex of c has index one, tail is forced to be a
    proper prefix of c.
    """
    return strip_cycle_prefix(c.path, p)


def strip_cycle_prefix(loop: Path, p: Path) -> tuple[int, Path]:
    if p.source != loop.source:
        raise ValueError(f"path starts at {p.source!r}, cycle at {loop.source!r}")
    k = 0
    while is_prefix(loop, p):
        p = strip_prefix(loop, p)
        k += 1
    return k, p


def conjugate_cycle(g: Graph, c: Cycle, a: Path) -> Path:
    """The rotation of c based at the vertex a reaches.

    Requires the cycle to be no-exit (every vertex of index one) and a to
    start at the cycle's base, so a necessarily runs along the cycle. The
    returned closed path c1 satisfies, for every k >= 1, the conjugation
    identities  a* c^k a = c1^k  and  c^k a a* = a c1^k a*.
    """
    for v in c.vertex_set:
        if g.index(v) != 1:
            raise ValueError(f"cycle vertex {v!r} has index {g.index(v)}, expected 1")
    _, tail = strip_cycle_prefix(c.path, a)
    if not is_prefix(tail, c.path):
        raise ValueError(f"path {a!r} leaves the cycle {c!r}")
    return c.based_at(a.target)


# ---------------------------------------------------------------------------
# Element literals: `0` or `P|Q`, with P, Q either `@v` or `.`-joined edges
# ---------------------------------------------------------------------------


def format_element(x: Element) -> str:
    if x.is_zero:
        return "0"
    assert x.alpha is not None and x.beta is not None
    return f"{x.alpha!r}|{x.beta!r}"


def _parse_path(g: Graph, text: str) -> Path:
    if text.startswith("@"):
        v = text[1:]
        if not v:
            raise ElementLiteralError("empty vertex name after '@'")
        if not g.has_vertex(v):
            raise ElementLiteralError(f"unknown vertex {v!r}")
        return vertex_path(v)
    if not text:
        raise ElementLiteralError("empty path literal; a vertex is written '@v'")
    ids = text.split(".")
    if any(not i for i in ids):
        raise ElementLiteralError(f"empty edge id in path literal {text!r}")
    try:
        return make_path(g, ids)
    except (ValueError, KeyError) as exc:
        raise ElementLiteralError(str(exc)) from None


def parse_element(g: Graph, text: str) -> Element:
    """Parse an element literal; round-trips exactly with format_element."""
    text = text.strip()
    if text == "0":
        return ZERO
    parts = text.split("|")
    if len(parts) != 2:
        raise ElementLiteralError(
            f"element literal must be '0' or 'P|Q', got {text!r}"
        )
    alpha = _parse_path(g, parts[0])
    beta = _parse_path(g, parts[1])
    if alpha.target != beta.target:
        raise ElementLiteralError(
            f"paths end at different vertices: {alpha.target!r} vs {beta.target!r}"
        )
    return Element(alpha, beta)
