"""Congruence triples (H, W, f) and the decision procedure they induce.

A triple consists of a hereditary vertex set H, a set W of index-one
vertices of the quotient graph, and a cycle function f assigning each
cycle inside W a positive integer or infinity. Each triple determines a
congruence of the graph inverse semigroup; the triple is kept as data and
membership of a pair (x, y) is decided directly, since the semigroup is
usually infinite.

The generated congruence is the one spanned by the pairs
``(v, 0)`` for v in H, ``(e_w e_w*, w)`` for w in W with e_w the unique
edge leaving w, and ``(c^f(c), s(c))`` for cycles c inside W with finite
f(c).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .elements import (
    ZERO,
    Element,
    as_cycle_power,
    idempotent_element,
    path_element,
    vertex_element,
)
from .graphs import (
    Cycle,
    Graph,
    Path,
    concat,
    cycle_power,
    cycles_in,
    enumerate_hereditary,
    index_one_vertices,
    is_hereditary,
    is_prefix,
    make_path,
    quotient,
    strip_prefix,
    vertex_path,
)

INF = math.inf

FValue = int | float  # positive int, or math.inf


class TripleFormatError(ValueError):
    """Raised for malformed congruence-triple data."""


def is_fvalue(x: object) -> bool:
    return x == INF or (isinstance(x, int) and not isinstance(x, bool) and x >= 1)


def divides(a: FValue, b: FValue) -> bool:
    """a | b, where every value divides infinity and only infinity
    divides infinity."""
    if b == INF:
        return True
    if a == INF:
        return False
    return b % a == 0


@dataclass(frozen=True)
class CongruenceTriple:
    """(H, W, f) with f stored on canonical cycle representatives.

    ``f`` is a tuple of (cycle, value) pairs sorted by the cycle's edge
    sequence; use :func:`make_triple` to build one from loose data. A
    special congruence (no vertex collapsing to zero) is a triple with
    empty H, and such triples double as congruence pairs (W, f).
    """

    h: frozenset[str]
    w: frozenset[str]
    f: tuple[tuple[Cycle, FValue], ...]

    def f_map(self) -> dict[Cycle, FValue]:
        return dict(self.f)

    def f_value(self, c: Cycle) -> FValue:
        for cyc, val in self.f:
            if cyc == c:
                return val
        raise KeyError(f"cycle {c!r} is not in the triple's domain")


def make_triple(
    g: Graph,
    h: Iterable[str] = (),
    w: Iterable[str] = (),
    f: Mapping[Cycle, FValue] | Iterable[tuple[Cycle, FValue]] = (),
) -> CongruenceTriple:
    """Build and validate a triple over g."""
    fm = dict(f.items() if isinstance(f, Mapping) else f)
    t = CongruenceTriple(
        frozenset(h), frozenset(w), tuple(sorted(fm.items(), key=lambda kv: kv[0].path.edges))
    )
    ok, problems = validate_triple(g, t)
    if not ok:
        raise TripleFormatError("; ".join(problems))
    return t


def congruence_pair(g: Graph, w: Iterable[str] = (), f=()) -> CongruenceTriple:
    """A congruence pair (W, f) of g, i.e. a triple with empty H."""
    return make_triple(g, (), w, f)


def identity_triple(g: Graph) -> CongruenceTriple:
    return make_triple(g)


def universal_triple(g: Graph) -> CongruenceTriple:
    return make_triple(g, h=g.vertices)


def validate_triple(g: Graph, t: CongruenceTriple) -> tuple[bool, list[str]]:
    """Check a triple against g; returns (ok, diagnostics)."""
    problems: list[str] = []
    unknown = [v for v in t.h if not g.has_vertex(v)]
    if unknown:
        problems.append(f"H contains unknown vertices {sorted(unknown)}")
        return False, problems
    if not is_hereditary(g, t.h):
        problems.append(f"H = {sorted(t.h)} is not hereditary")
        return False, problems
    q = quotient(g, t.h)
    bar_v = index_one_vertices(q)
    stray = t.w - frozenset(q.vertices)
    if stray:
        problems.append(f"W contains vertices outside the quotient: {sorted(stray)}")
    bad_index = t.w & frozenset(q.vertices) - bar_v
    if bad_index:
        problems.append(
            f"W vertices without index one in the quotient: {sorted(bad_index)}"
        )
    if problems:
        return False, problems
    expected = cycles_in(q, t.w)
    domain = [c for c, _ in t.f]
    if sorted(c.path.edges for c in domain) != sorted(c.path.edges for c in expected):
        problems.append(
            f"cycle-function domain {[list(c.path.edges) for c in domain]} "
            f"differs from the cycles inside W "
            f"{[list(c.path.edges) for c in expected]}"
        )
    for c, val in t.f:
        if not is_fvalue(val):
            problems.append(f"cycle value {val!r} is not a positive integer or inf")
    return not problems, problems


# ---------------------------------------------------------------------------
# The induced congruence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Context:
    """Preprocessed view of (g, t): the quotient graph plus cycle lookup."""

    quotient: Graph
    w: frozenset[str]
    fmap: dict[Cycle, FValue]
    cycle_at: dict[str, Cycle]

    def identified_power(self, p: Path) -> bool:
        """Is the closed path p a lap power c^m collapsing to its base,
        i.e. with c inside W, f(c) finite and f(c) | m?"""
        cp = as_cycle_power(p)
        if cp is None:
            return False
        c, m = cp
        val = self.fmap.get(c)
        return val is not None and val != INF and m % int(val) == 0


@lru_cache(maxsize=256)
def _context(g: Graph, t: CongruenceTriple) -> _Context:
    ok, problems = validate_triple(g, t)
    if not ok:
        raise TripleFormatError("; ".join(problems))
    q = quotient(g, t.h)
    fmap = dict(t.f)
    cycle_at = {v: c for c in fmap for v in c.vertex_set}
    return _Context(q, t.w, fmap, cycle_at)


def triple_generators(g: Graph, t: CongruenceTriple) -> list[tuple[Element, Element]]:
    """The generating pairs of the triple's congruence, in a fixed order."""
    ctx = _context(g, t)
    pairs: list[tuple[Element, Element]] = []
    for v in g.sort_vertices(t.h):
        pairs.append((vertex_element(v), ZERO))
    for w in ctx.quotient.sort_vertices(t.w):
        (e,) = ctx.quotient.out_edges(w)
        ew = Path((e.src, e.dst), (e.id,))
        pairs.append((idempotent_element(ew), vertex_element(w)))
    for c, val in t.f:
        if val != INF:
            pairs.append((path_element(c.power(int(val))), vertex_element(c.base)))
    return pairs


def reduce_mod_h(g: Graph, t: CongruenceTriple, x: Element) -> Element:
    """Zero if x falls into the ideal spanned by H, else x unchanged.

    A path meeting H ends in H (H is hereditary), so testing the common
    range of the two paths suffices; the surviving element reads verbatim
    over the quotient graph.
    """
    if x.is_zero:
        return ZERO
    assert x.alpha is not None
    return ZERO if x.alpha.target in t.h else x


def equiv(g: Graph, t: CongruenceTriple, x: Element, y: Element) -> bool:
    """Decide whether the triple's congruence relates x and y.

    After discarding the ideal of H the congruence is special, so zero is
    alone in its class. For survivors x = a b*, y = p q* with |a| <= |p|,
    relatedness forces p = a p1, and then either q extends b by some q1
    and the pair reduces to the class of the common range against p1 q1*,
    or b extends q by a nonempty b1 and the closed path p1 b1 must be a
    lap power collapsing to its base.
    """
    ctx = _context(g, t)
    x = reduce_mod_h(g, t, x)
    y = reduce_mod_h(g, t, y)
    if x.is_zero or y.is_zero:
        return x.is_zero and y.is_zero
    if x == y:
        return True
    assert x.alpha is not None and x.beta is not None
    assert y.alpha is not None and y.beta is not None
    a, b = x.alpha, x.beta
    p, q = y.alpha, y.beta
    if len(a) > len(p):
        a, b, p, q = p, q, a, b
    if not is_prefix(a, p):
        return False
    p1 = strip_prefix(a, p)
    if is_prefix(b, q):
        q1 = strip_prefix(b, q)
        return _vertex_class_test(ctx, p1, q1)
    if is_prefix(q, b):
        b1 = strip_prefix(q, b)
        return ctx.identified_power(concat(p1, b1))
    return False


def _vertex_class_test(ctx: _Context, p: Path, q: Path) -> bool:
    """Does p q* lie in the class of its common source vertex?

    The class members are exactly the idempotents r r* with every edge
    source of r in W, and r t r* / r t* r* with t a lap power collapsing
    to its base.
    """
    if p == q:
        return p.vertex_set <= ctx.w
    if is_prefix(q, p):
        shorter, longer = q, p
    elif is_prefix(p, q):
        shorter, longer = p, q
    else:
        return False
    tail = strip_prefix(shorter, longer)
    return shorter.vertex_set <= ctx.w and ctx.identified_power(tail)


def normal_form(g: Graph, t: CongruenceTriple, x: Element) -> Element:
    """A canonical class representative: equal normal forms iff related.

    The form is reached by (1) discarding the ideal of H, then repeating
    until fixed: (2) strip a common trailing edge whose source is in W,
    and (3) when the common range sits on a cycle c with finite f(c),
    measure each side's maximal trailing run along the cycle (in edges)
    and replace the two runs by the single run (la - lb) mod f(c)|c|
    carried on the plain side. Edge granularity matters: the congruence
    can trade a partial lap on the starred side for its complement on the
    plain side. Stripping can expose new runs and run reduction can expose
    new strippable tails, hence the loop; it terminates because the
    starred path never grows and the plain side only grows when the
    starred side shrinks.
    """
    ctx = _context(g, t)
    x = reduce_mod_h(g, t, x)
    if x.is_zero:
        return ZERO
    assert x.alpha is not None and x.beta is not None
    a, b = x.alpha, x.beta
    while True:
        a, b, stripped = _strip_common_tail(ctx, a, b)
        a, b, reduced = _reduce_tail_run(ctx, a, b)
        if not (stripped or reduced):
            return Element(a, b)


def _strip_common_tail(ctx: _Context, a: Path, b: Path) -> tuple[Path, Path, bool]:
    changed = False
    while (
        a.edges
        and b.edges
        and a.edges[-1] == b.edges[-1]
        and a.vertices[-2] in ctx.w
    ):
        a = Path(a.vertices[:-1], a.edges[:-1])
        b = Path(b.vertices[:-1], b.edges[:-1])
        changed = True
    return a, b, changed


def _trailing_run(c: Cycle, p: Path) -> int:
    """Edges of the maximal suffix of p running along c into p's target."""
    body = c.path.vertices[:-1]
    pos = body.index(p.target) if p.target in body else None
    if pos is None:
        return 0
    n = len(c)
    run = 0
    while run < len(p):
        i = (pos - 1 - run) % n
        if p.edges[len(p.edges) - 1 - run] != c.path.edges[i]:
            break
        run += 1
    return run


def _cycle_walk(c: Cycle, start: str, length: int) -> Path:
    """The forced path of the given length along c from a cycle vertex."""
    out = vertex_path(start)
    if length == 0:
        return out
    rotation = c.based_at(start)
    laps, rest = divmod(length, len(c))
    out = concat(out, cycle_power(rotation, laps))
    return concat(out, Path(rotation.vertices[: rest + 1], rotation.edges[:rest]))


def _reduce_tail_run(ctx: _Context, a: Path, b: Path) -> tuple[Path, Path, bool]:
    v = a.target
    c = ctx.cycle_at.get(v)
    if c is None:
        return a, b, False
    val = ctx.fmap[c]
    if val == INF:
        return a, b, False
    period = len(c) * int(val)
    la = _trailing_run(c, a)
    lb = _trailing_run(c, b)
    d = (la - lb) % period
    if lb == 0 and la == d:
        return a, b, False
    core_a = Path(a.vertices[: len(a.vertices) - la], a.edges[: len(a.edges) - la])
    core_b = Path(b.vertices[: len(b.vertices) - lb], b.edges[: len(b.edges) - lb])
    return concat(core_a, _cycle_walk(c, core_a.target, d)), core_b, True


def vertex_class_members(
    g: Graph, t: CongruenceTriple, v: str, len_bound: int
) -> list[Element]:
    """All elements with both paths of length <= len_bound in the class
    of the vertex v; v must survive the quotient."""
    if v in t.h:
        raise ValueError(f"vertex {v!r} lies in H, its class is the zero class")
    ctx = _context(g, t)
    ctx.quotient._require_vertex(v)
    members: list[Element] = []
    seen: set[Element] = set()

    def emit(x: Element) -> None:
        if x not in seen and equiv(g, t, x, vertex_element(v)):
            seen.add(x)
            members.append(x)

    for gamma in _paths_within(ctx.quotient, v, ctx.w, len_bound):
        emit(Element(gamma, gamma))
        c = ctx.cycle_at.get(gamma.target)
        if c is None:
            continue
        val = ctx.fmap[c]
        if val == INF:
            continue
        loop = c.based_at(gamma.target)
        step = len(loop) * int(val)
        if step == 0:
            continue
        k = 1
        while len(gamma) + k * step <= len_bound:
            squiggle = concat(gamma, cycle_power(loop, k * int(val)))
            emit(Element(squiggle, gamma))
            emit(Element(gamma, squiggle))
            k += 1
    members.sort(key=_element_sort_key)
    return members


def _paths_within(
    q: Graph, v: str, w: frozenset[str], len_bound: int
) -> list[Path]:
    """Paths from v of length <= len_bound whose edge sources all lie in w."""
    out = [vertex_path(v)]
    frontier = [vertex_path(v)]
    for _ in range(len_bound):
        nxt = []
        for p in frontier:
            if p.target not in w:
                continue
            for e in q.out_edges(p.target):
                nxt.append(Path(p.vertices + (e.dst,), p.edges + (e.id,)))
        out.extend(nxt)
        frontier = nxt
    return out


def _element_sort_key(x: Element):
    if x.is_zero:
        return (-1, -1, (), (), "", "")
    assert x.alpha is not None and x.beta is not None
    return (
        len(x.alpha),
        len(x.beta),
        x.alpha.edges,
        x.beta.edges,
        x.alpha.source,
        x.beta.source,
    )


# ---------------------------------------------------------------------------
# The partial order on triples and their enumeration
# ---------------------------------------------------------------------------


def triple_leq(g: Graph, t1: CongruenceTriple, t2: CongruenceTriple) -> bool:
    """The refinement order: H1 within H2, W1 carried into W2 outside H2,
    and f2 dividing f1 on shared cycles."""
    _context(g, t1)
    _context(g, t2)
    if not (t1.h <= t2.h and t1.w - t2.h <= t2.w):
        return False
    f2 = dict(t2.f)
    for c, v1 in t1.f:
        v2 = f2.get(c)
        if v2 is not None and not divides(v2, v1):
            return False
    return True


@dataclass(frozen=True)
class TripleEnumeration:
    """Triples with finite cycle values capped; ``unbounded`` flags that
    uncapped values would make the full family infinite."""

    triples: tuple[CongruenceTriple, ...]
    unbounded: bool
    f_cap: int


def enumerate_triples(g: Graph, f_cap: int = 4) -> TripleEnumeration:
    """All triples of g whose finite cycle values are <= f_cap.

    Ordered lexicographically: hereditary sets in subset-bitmask order,
    then W in bitmask order over the quotient's index-one vertices, then
    cycle values (1, .., f_cap, inf) per cycle.
    """
    if f_cap < 1:
        raise ValueError("f_cap must be a positive integer")
    triples: list[CongruenceTriple] = []
    unbounded = False
    values: tuple[FValue, ...] = tuple(range(1, f_cap + 1)) + (INF,)
    for h in enumerate_hereditary(g):
        q = quotient(g, h)
        bar = q.sort_vertices(index_one_vertices(q))
        for mask in range(1 << len(bar)):
            w = frozenset(v for i, v in enumerate(bar) if mask >> i & 1)
            cycles = cycles_in(q, w)
            if cycles:
                unbounded = True
            for combo in itertools.product(values, repeat=len(cycles)):
                triples.append(make_triple(g, h, w, zip(cycles, combo)))
    return TripleEnumeration(tuple(triples), unbounded, f_cap)


def chain_stabilizes(g: Graph, chain: list[CongruenceTriple]) -> int:
    """1-based index where a weakly increasing chain becomes constant.

    The chain must be weakly increasing under triple_leq. Returns the
    least m with t_m equal to every later entry; m == len(chain) for a
    chain of length > 1 means no repeat was observed, so the prefix gives
    no evidence of stabilization.
    """
    if not chain:
        raise ValueError("empty chain")
    for t1, t2 in zip(chain, chain[1:]):
        if not triple_leq(g, t1, t2):
            raise ValueError("chain is not weakly increasing under triple_leq")
    k = len(chain) - 1
    while k > 0 and chain[k - 1] == chain[k]:
        k -= 1
    return k + 1


# ---------------------------------------------------------------------------
# Triple JSON
# ---------------------------------------------------------------------------


def triple_to_json(g: Graph, t: CongruenceTriple) -> dict:
    return {
        "H": list(g.sort_vertices(t.h)),
        "W": list(_context(g, t).quotient.sort_vertices(t.w)),
        "f": [
            {"cycle": list(c.path.edges), "value": "inf" if v == INF else int(v)}
            for c, v in t.f
        ],
    }


def triple_from_json(g: Graph, data: object) -> CongruenceTriple:
    if not isinstance(data, dict):
        raise TripleFormatError("triple JSON must be an object")
    for key in ("H", "W", "f"):
        if key not in data:
            raise TripleFormatError(f"triple JSON missing key {key!r}")
    if not all(isinstance(data[k], list) for k in ("H", "W", "f")):
        raise TripleFormatError("'H', 'W' and 'f' must be arrays")
    h = frozenset(data["H"])
    w = frozenset(data["W"])
    fmap: dict[Cycle, FValue] = {}
    for item in data["f"]:
        if not isinstance(item, dict) or not {"cycle", "value"} <= item.keys():
            raise TripleFormatError(f"malformed cycle entry {item!r}")
        try:
            path = make_path(g, item["cycle"])
            cyc = Cycle.from_path(path)
        except (ValueError, KeyError) as exc:
            raise TripleFormatError(f"bad cycle {item['cycle']!r}: {exc}") from None
        if tuple(item["cycle"]) != cyc.path.edges:
            raise TripleFormatError(
                f"cycle {item['cycle']!r} is not in canonical rotation; "
                f"expected {list(cyc.path.edges)}"
            )
        raw = item["value"]
        value: FValue = INF if raw == "inf" else raw
        if not is_fvalue(value):
            raise TripleFormatError(f"bad cycle value {raw!r}")
        if cyc in fmap:
            raise TripleFormatError(f"duplicate cycle {item['cycle']!r}")
        fmap[cyc] = value
    try:
        return make_triple(g, h, w, fmap)
    except TripleFormatError:
        raise
    except (ValueError, KeyError) as exc:
        raise TripleFormatError(str(exc)) from None


def load_triple(g: Graph, path: str) -> CongruenceTriple:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise TripleFormatError(f"invalid JSON in {path}: {exc}") from None
    return triple_from_json(g, data)
