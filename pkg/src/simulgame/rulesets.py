"""The three concrete rulesets: subtraction strips, clobber, hackenbush.

Each position type implements the options/joint/score contract from
``position.Position``.  Builders at the bottom construct the boards the
test corpus and the expression grammar need (strips, complete graphs,
stalks, forests, cordons).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadCordonSpec, BadParameters, IllegalMove
from .position import Position

BLUE, RED, GREEN = "B", "R", "G"


# ---------------------------------------------------------------------------
# Subtraction strips
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SqPosition(Position):
    """A strip of n squares; players subtract from either end.

    Simultaneous rule: same side removes max(p, q); opposite sides remove
    p + q, clamped to an empty strip when max(p, q) <= n <= p + q.
    ``left_blocked`` lists strip lengths on which Left has no move at all
    (the primed variants); ``right_blocked`` mirrors it for Right so role
    swaps stay inside the type.
    """

    left_set: frozenset[int]
    right_set: frozenset[int]
    n: int
    left_blocked: frozenset[int] = frozenset()
    right_blocked: frozenset[int] = frozenset()

    ruleset_tag = "sq"

    def __post_init__(self):
        if self.n < 0:
            raise BadParameters("strip length must be >= 0")
        if not self.left_set or not self.right_set:
            raise BadParameters("subtraction sets must be nonempty")
        if any(x <= 0 for x in self.left_set | self.right_set):
            raise BadParameters("subtraction amounts must be positive")

    def _moves(self, amounts: frozenset[int], blocked: frozenset[int]):
        if self.n in blocked:
            return ()
        out = []
        for p in sorted(amounts):
            if p <= self.n:
                out.append((f"{p}l", self._take(p)))
                out.append((f"{p}r", self._take(p)))
        return tuple(out)

    def _take(self, p: int) -> "SqPosition":
        return SqPosition(
            self.left_set, self.right_set, self.n - p, self.left_blocked, self.right_blocked
        )

    def left_options(self):
        return self._moves(self.left_set, self.left_blocked)

    def right_options(self):
        return self._moves(self.right_set, self.right_blocked)

    def joint_option(self, left_label, right_label):
        lmove = (int(left_label[:-1]), left_label[-1])
        rmove = (int(right_label[:-1]), right_label[-1])
        return sq_simultaneous(self, lmove, rmove)

    def canonical_key(self) -> str:
        def fs(s):
            return ",".join(str(x) for x in sorted(s))

        return (
            f"sq({fs(self.left_set)}|{fs(self.right_set)}"
            f"|bl:{fs(self.left_blocked)}|br:{fs(self.right_blocked)})({self.n})"
        )

    def swap_roles(self) -> "SqPosition":
        return SqPosition(
            self.right_set, self.left_set, self.n, self.right_blocked, self.left_blocked
        )


def sq_simultaneous(p: SqPosition, left_move, right_move) -> SqPosition:
    """Apply a simultaneous pair of subtraction moves."""
    (a, aside) = left_move
    (b, bside) = right_move
    if aside not in "lr" or bside not in "lr":
        raise IllegalMove("side must be 'l' or 'r'")
    if a not in p.left_set or a > p.n or p.n in p.left_blocked:
        raise IllegalMove(f"Left may not take {a} from a strip of {p.n}")
    if b not in p.right_set or b > p.n or p.n in p.right_blocked:
        raise IllegalMove(f"Right may not take {b} from a strip of {p.n}")
    if aside == bside:
        remaining = p.n - max(a, b)
    elif max(a, b) <= p.n <= a + b:
        remaining = 0
    else:
        remaining = p.n - a - b
    return SqPosition(p.left_set, p.right_set, remaining, p.left_blocked, p.right_blocked)


def sq(left, right, n, primed=False) -> SqPosition:
    """Strip position; primed variants block Left's move on a 2-strip."""
    blocked = frozenset({2}) if primed else frozenset()
    return SqPosition(frozenset(left), frozenset(right), n, blocked, frozenset())


# ---------------------------------------------------------------------------
# Clobber
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClobberPosition(Position):
    """Pieces on a graph; a move clobbers an adjacent opposing piece.

    ``acc`` counts the O pieces Left has clobbered so far; it is the score
    of the position once play stops.  Captures resolve against the
    start-of-round occupancy: a piece that moved away this round cannot be
    captured, and a vacated target square is occupied without capture.
    Mutual clobbers annihilate both movers and credit nothing.
    """

    edges: frozenset[tuple[int, int]]
    occupancy: tuple[str, ...]
    acc: int = 0

    ruleset_tag = "cl"

    def __post_init__(self):
        if self.acc < 0:
            raise BadParameters("clobber capture count cannot be negative")
        for ch in self.occupancy:
            if ch not in "XO_":
                raise BadParameters(f"bad occupancy symbol {ch!r}")
        for u, v in self.edges:
            if not (0 <= u < len(self.occupancy) and 0 <= v < len(self.occupancy)):
                raise BadParameters("edge endpoint outside the board")

    def _neighbors(self, u: int):
        out = []
        for a, b in self.edges:
            if a == u:
                out.append(b)
            elif b == u:
                out.append(a)
        return sorted(out)

    def _piece_moves(self, mover: str, target: str):
        out = []
        for u, ch in enumerate(self.occupancy):
            if ch != mover:
                continue
            for v in self._neighbors(u):
                if self.occupancy[v] == target:
                    out.append((u, v))
        return out

    def left_options(self):
        return tuple(
            (f"{u}>{v}", self._apply_unilateral(u, v, left=True))
            for u, v in self._piece_moves("X", "O")
        )

    def right_options(self):
        return tuple(
            (f"{u}>{v}", self._apply_unilateral(u, v, left=False))
            for u, v in self._piece_moves("O", "X")
        )

    def _apply_unilateral(self, u, v, left: bool) -> "ClobberPosition":
        occ = list(self.occupancy)
        occ[u] = "_"
        occ[v] = "X" if left else "O"
        return ClobberPosition(self.edges, tuple(occ), self.acc + (1 if left else 0))

    def joint_option(self, left_label, right_label):
        lu, lv = (int(x) for x in left_label.split(">"))
        ru, rv = (int(x) for x in right_label.split(">"))
        return clobber_simultaneous(self, (lu, lv), (ru, rv))

    def canonical_key(self) -> str:
        es = ",".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"cl({es}|{''.join(self.occupancy)}|{self.acc})"

    def component_score(self) -> Fraction:
        return Fraction(self.acc)


def clobber_simultaneous(p: ClobberPosition, left_move, right_move) -> ClobberPosition:
    """Resolve a simultaneous pair of clobber moves."""
    lu, lv = left_move
    ru, rv = right_move
    if (lu, lv) not in p._piece_moves("X", "O"):
        raise IllegalMove(f"Left cannot clobber {lu}->{lv}")
    if (ru, rv) not in p._piece_moves("O", "X"):
        raise IllegalMove(f"Right cannot clobber {ru}->{rv}")
    occ = list(p.occupancy)
    acc = p.acc
    if ru == lv and rv == lu:
        # The two movers clobber each other; both disappear, no credit.
        occ[lu] = "_"
        occ[lv] = "_"
    else:
        occ[lu] = "_"
        occ[ru] = "_"
        if ru != lv:
            acc += 1  # the targeted O was still there at resolution
        occ[lv] = "X"
        occ[rv] = "O"
    return ClobberPosition(p.edges, tuple(occ), acc)


def _path_edges(length: int) -> frozenset[tuple[int, int]]:
    return frozenset((i, i + 1) for i in range(length - 1))


def clobber_strip(cells: str) -> ClobberPosition:
    """Clobber on a path, e.g. 'OXO'."""
    return ClobberPosition(_path_edges(len(cells)), tuple(cells))


def clobber_complete(n: int) -> ClobberPosition:
    """Complete graph on n vertices, one X and n-1 O pieces."""
    if n < 2:
        raise BadParameters("complete-graph clobber needs n >= 2")
    edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n))
    return ClobberPosition(edges, ("X",) + ("O",) * (n - 1))


# ---------------------------------------------------------------------------
# Hackenbush
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HackenbushPosition(Position):
    """Coloured edges over rooted ground; unrooted fragments fall off.

    Edges are (id, lower vertex, upper vertex, colour) and keep their ids
    across removals, so move labels stay stable.  Construction prunes any
    edge not connected to a root.
    """

    roots: frozenset[int]
    edges: tuple[tuple[int, int, int, str], ...]

    ruleset_tag = "hb"

    def __post_init__(self):
        normalized = _prune(self.roots, tuple(sorted(self.edges)))
        object.__setattr__(self, "edges", normalized)

    def _edges_for(self, colors) -> tuple:
        return tuple(e for e in self.edges if e[3] in colors)

    def left_options(self):
        return tuple(
            (f"e{e[0]}", self._remove({e[0]})) for e in self._edges_for((BLUE, GREEN))
        )

    def right_options(self):
        return tuple(
            (f"e{e[0]}", self._remove({e[0]})) for e in self._edges_for((RED, GREEN))
        )

    def joint_option(self, left_label, right_label):
        return hackenbush_simultaneous(self, int(left_label[1:]), int(right_label[1:]))

    def _remove(self, ids: set[int]) -> "HackenbushPosition":
        kept = tuple(e for e in self.edges if e[0] not in ids)
        return HackenbushPosition(self.roots, kept)

    def canonical_key(self) -> str:
        rs = ",".join(str(r) for r in sorted(self.roots))
        es = ";".join(f"{i}:{u}-{v}{c}" for i, u, v, c in self.edges)
        return f"hb(roots[{rs}]|{es})"

    def component_score(self) -> Fraction:
        """Signed count of the surviving colour; move counting if mixed."""
        colors = [e[3] for e in self.edges]
        blues, reds, greens = colors.count(BLUE), colors.count(RED), colors.count(GREEN)
        if not colors:
            return Fraction(0)
        if blues and not reds and not greens:
            return Fraction(blues)
        if reds and not blues and not greens:
            return Fraction(-reds)
        return super().component_score()

    def swap_roles(self) -> "HackenbushPosition":
        flip = {BLUE: RED, RED: BLUE, GREEN: GREEN}
        return HackenbushPosition(
            self.roots, tuple((i, u, v, flip[c]) for i, u, v, c in self.edges)
        )


def hackenbush_score(p: HackenbushPosition) -> Fraction:
    """Score of a finished board: the signed count of the surviving colour."""
    from .errors import NotTerminal

    if not p.is_terminal():
        raise NotTerminal("hackenbush score reads a terminal position")
    return p.component_score()


def hackenbush_simultaneous(p: HackenbushPosition, left_edge: int, right_edge: int):
    """Remove both chosen edges (once, if the same green edge), then prune."""
    legal_left = {e[0] for e in p._edges_for((BLUE, GREEN))}
    legal_right = {e[0] for e in p._edges_for((RED, GREEN))}
    if left_edge not in legal_left:
        raise IllegalMove(f"Left cannot remove edge {left_edge}")
    if right_edge not in legal_right:
        raise IllegalMove(f"Right cannot remove edge {right_edge}")
    return p._remove({left_edge, right_edge})


def _prune(roots: frozenset[int], edges: tuple) -> tuple:
    """Keep only edges connected to some root through surviving edges."""
    reachable = set(roots)
    remaining = list(edges)
    grew = True
    while grew:
        grew = False
        for e in remaining:
            _, u, v, _ = e
            if u in reachable or v in reachable:
                if u not in reachable or v not in reachable:
                    reachable.add(u)
                    reachable.add(v)
                    grew = True
    return tuple(e for e in edges if e[1] in reachable and e[2] in reachable)


def hb_forest(stalks: list[str]) -> HackenbushPosition:
    """Side-by-side stalks, each rooted separately; colours bottom-up."""
    edges = []
    roots = set()
    vertex = 0
    eid = 0
    for colors in stalks:
        root = vertex
        roots.add(root)
        for c in colors:
            if c not in (BLUE, RED, GREEN):
                raise BadParameters(f"unknown edge colour {c!r}")
            edges.append((eid, vertex, vertex + 1, c))
            eid += 1
            vertex += 1
        vertex += 1
    return HackenbushPosition(frozenset(roots), tuple(edges))


def hb_stalk(colors: str) -> HackenbushPosition:
    return hb_forest([colors])


def hb_cordon(n: int, attachments: list[tuple[int, str]] = ()) -> HackenbushPosition:
    """Blue stalk of height n with coloured leaf edges at interior vertices.

    Attachment indices must be nondecreasing and lie in 1..n-1.
    """
    if n < 1:
        raise BadCordonSpec("cordon height must be >= 1")
    last = 0
    for idx, color in attachments:
        if not 1 <= idx <= n - 1:
            raise BadCordonSpec(f"attachment index {idx} outside 1..{n - 1}")
        if idx < last:
            raise BadCordonSpec("attachment indices must be nondecreasing")
        if color not in (BLUE, RED, GREEN):
            raise BadCordonSpec(f"unknown leaf colour {color!r}")
        last = idx
    edges = [(i, i, i + 1, BLUE) for i in range(n)]
    leaf_vertex = n + 1
    for j, (idx, color) in enumerate(attachments):
        edges.append((n + j, idx, leaf_vertex, color))
        leaf_vertex += 1
    return HackenbushPosition(frozenset({0}), tuple(edges))


def fig_two_bicolor_stalks() -> HackenbushPosition:
    """Two blue-red stalks on common ground (the worked two-stalk example)."""
    return hb_forest(["BR", "BR"])


def fig_bicolor_and_double_blue() -> HackenbushPosition:
    """A blue-red stalk next to a blue-blue stalk."""
    return hb_forest(["BR", "BB"])


def clobber_one_x_strip(flank: int) -> ClobberPosition:
    """Path with a single X between two O runs of the given length."""
    return clobber_strip("O" * flank + "X" + "O" * flank)


def clobber_two_x_strip() -> ClobberPosition:
    """The seven-cell path with two X pieces separated by an O."""
    return clobber_strip("OOXOXOO")


BUILTIN_BOARDS = {
    ("hb", "fig5G"): fig_two_bicolor_stalks,
    ("hb", "fig5H"): fig_bicolor_and_double_blue,
    ("cl", "fig9"): clobber_two_x_strip,
}
