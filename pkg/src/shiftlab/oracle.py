"""Bounded-horizon query interface over shift spaces.

Three kinds of oracle answer block-admissibility and follower-set
questions:

  * sofic: backed by a labeled graph, exact at every length;
  * dyck: bracket matching with r pairs, exact at every length (a
    closer must match the most recent unmatched opener inside the
    block; unmatched closers at the bottom are allowed, they may match
    openers in the unseen past, and unmatched openers may match the
    unseen future);
  * code_list: the coded system generated by freely concatenating a
    finite list of generator blocks; a block is accepted iff it is a
    factor of some concatenation.  Exact membership in the closure of
    the coded system is not finitely decidable in general, so public
    admissibility queries are gated by the horizon budget and the
    answer is documented as window-based.

Oracles are immutable after construction.
"""

from .core import (
    Alphabet,
    Block,
    image_set,
    is_admissible,
    is_essential,
    iter_admissible_blocks,
    parse_block,
    trim_to_essential,
)
from .errors import (
    BudgetExceededError,
    InadmissibleBlockError,
    OracleKindError,
    ParseError,
)

SOFIC = "sofic"
DYCK = "dyck"
CODE_LIST = "code_list"

DEFAULT_BUDGET = 8

# default bracket pairs for the 2-pair Dyck shift
DYCK_PAIRS_2 = (("(", ")"), ("[", "]"))


class ShiftOracle:
    """Uniform front end; construct via sofic_oracle / dyck_oracle /
    code_list_oracle rather than directly."""

    __slots__ = (
        "alphabet",
        "kind",
        "horizon_budget",
        "graph",
        "pairs",
        "generators",
        "_closer_of",
        "_opener_of",
        "_starts",
    )

    def __init__(self, alphabet, kind, horizon_budget, graph=None, pairs=None, generators=None):
        self.alphabet = alphabet
        self.kind = kind
        self.horizon_budget = horizon_budget
        self.graph = graph
        self.pairs = pairs
        self.generators = generators
        self._closer_of = None
        self._opener_of = None
        self._starts = None
        if kind == DYCK:
            self._closer_of = {o: c for o, c in pairs}
            self._opener_of = {c: o for o, c in pairs}
        elif kind == CODE_LIST:
            starts = {()}
            for gen in generators:
                for i in range(1, len(gen)):
                    starts.add(gen[i:])
            self._starts = frozenset(starts)

    def __repr__(self):
        return f"ShiftOracle({self.kind}, budget={self.horizon_budget})"


def sofic_oracle(graph, horizon_budget: int = DEFAULT_BUDGET) -> ShiftOracle:
    """Exact oracle for the sofic shift presented by `graph`."""
    g = graph if is_essential(graph) else trim_to_essential(graph)
    return ShiftOracle(g.alphabet, SOFIC, horizon_budget, graph=g)


def dyck_oracle(pairs=DYCK_PAIRS_2, horizon_budget: int = DEFAULT_BUDGET) -> ShiftOracle:
    """Dyck shift oracle over the given (opener, closer) pairs.

    Symbols are declared opener-closer pairwise, so the alphabet order
    for pairs (("(", ")"), ("[", "]")) is ( ) [ ].
    """
    pairs = tuple((o, c) for o, c in pairs)
    symbols = []
    for o, c in pairs:
        symbols += [o, c]
    return ShiftOracle(Alphabet(symbols), DYCK, horizon_budget, pairs=pairs)


def dyck_oracle_rank(r: int, horizon_budget: int = DEFAULT_BUDGET) -> ShiftOracle:
    """Dyck oracle with r bracket pairs.

    Ranks one and two use the literal pairs () and []; larger ranks
    get numbered pairs (3 )3 onward.
    """
    if r < 1:
        raise ValueError("need at least one bracket pair")
    pairs = DYCK_PAIRS_2[:r] + tuple(
        (f"({k}", f"){k}") for k in range(3, r + 1)
    )
    return dyck_oracle(pairs, horizon_budget)


def code_list_oracle(alphabet, generators, horizon_budget: int = DEFAULT_BUDGET) -> ShiftOracle:
    """Coded-system oracle generated by freely concatenating `generators`."""
    gens = []
    for gen in generators:
        gen = tuple(gen)
        if not gen:
            raise ValueError("empty generator block")
        for s in gen:
            if s not in alphabet:
                raise ValueError(f"generator symbol {s!r} not in alphabet")
        if gen not in gens:
            gens.append(gen)
    if not gens:
        raise ValueError("need at least one generator")
    return ShiftOracle(alphabet, CODE_LIST, horizon_budget, generators=tuple(gens))


def _dyck_step(o, stack, sym):
    """One scan step; returns the new stack or None on mismatch."""
    if sym in o._closer_of:
        return stack + (sym,)
    opener = o._opener_of[sym]
    if not stack:
        return stack  # matches an opener in the unseen past
    if stack[-1] == opener:
        return stack[:-1]
    return None


def _dyck_scan(o, w, stack=()):
    for sym in w:
        stack = _dyck_step(o, stack, sym)
        if stack is None:
            return None
    return stack


def _code_step(o, states, sym):
    """Advance the set of residual obligations by one symbol.

    A residual is the unread tail of the generator currently being
    spelled; the empty residual means a generator boundary, where any
    generator starting with `sym` may begin.
    """
    new = set()
    for r in states:
        if r:
            if r[0] == sym:
                new.add(r[1:])
        else:
            for gen in o.generators:
                if gen[0] == sym:
                    new.add(gen[1:])
    return frozenset(new)


def _code_admissible(o, w) -> bool:
    states = o._starts
    for sym in w:
        states = _code_step(o, states, sym)
        if not states:
            return False
    return True


def _admissible_unbounded(o, w) -> bool:
    """Internal admissibility with no budget gate (used by searches)."""
    for sym in w:
        if sym not in o.alphabet:
            return False
    if o.kind == SOFIC:
        return is_admissible(o.graph, w)
    if o.kind == DYCK:
        return _dyck_scan(o, w) is not None
    return _code_admissible(o, w)


def oracle_admissible(o: ShiftOracle, w: Block) -> bool:
    """Is w an admissible block of the shift?

    Exact for sofic and dyck at any length; for code_list the check is
    window-based and gated by the horizon budget.
    """
    if o.kind == CODE_LIST and len(w) > o.horizon_budget:
        raise BudgetExceededError(
            f"block of length {len(w)} exceeds budget {o.horizon_budget}"
        )
    return _admissible_unbounded(o, w)


def dyck_follower_signature(o: ShiftOracle, u: Block) -> Block:
    """The unmatched-opener stack of u, bottom to top.

    Two admissible contexts with equal signatures have equal follower
    sets at every horizon.
    """
    if o.kind != DYCK:
        raise OracleKindError("dyck_follower_signature needs a dyck oracle")
    stack = _dyck_scan(o, u)
    if stack is None:
        raise InadmissibleBlockError(f"inadmissible block {u!r}")
    return stack


def _dyck_closers(o, stack) -> Block:
    """Closers that empty the given stack, top first."""
    return tuple(o._closer_of[sym] for sym in reversed(stack))


def _sofic_follower_equal(o, u, v, horizon) -> bool:
    g = o.graph
    start = (frozenset(image_set(g, u)), frozenset(image_set(g, v)))
    seen = set()
    stack = [(start[0], start[1], 0)]
    while stack:
        su, sv, d = stack.pop()
        if bool(su) != bool(sv):
            return False
        if d == horizon or not su:
            continue
        for sym in g.alphabet:
            nu = frozenset(t for x in su for t in g.step(x, sym))
            nv = frozenset(t for x in sv for t in g.step(x, sym))
            if not nu and not nv:
                continue
            key = (nu, nv, d + 1)
            if key not in seen:
                seen.add(key)
                stack.append(key)
    return True


def _dyck_follower_equal(o, u, v, horizon) -> bool:
    su = _dyck_scan(o, u)
    sv = _dyck_scan(o, v)
    seen = set()
    stack = [(su, sv, 0)]
    while stack:
        a, b, d = stack.pop()
        if d == horizon:
            continue
        for sym in o.alphabet:
            na = _dyck_step(o, a, sym)
            nb = _dyck_step(o, b, sym)
            if (na is None) != (nb is None):
                return False
            if na is None:
                continue
            key = (na, nb, d + 1)
            if key not in seen:
                seen.add(key)
                stack.append(key)
    return True


def _code_follower_equal(o, u, v, horizon) -> bool:
    su = o._starts
    for sym in u:
        su = _code_step(o, su, sym)
    sv = o._starts
    for sym in v:
        sv = _code_step(o, sv, sym)
    seen = set()
    stack = [(su, sv, 0)]
    while stack:
        a, b, d = stack.pop()
        if bool(a) != bool(b):
            return False
        if d == horizon or not a:
            continue
        for sym in o.alphabet:
            na = _code_step(o, a, sym)
            nb = _code_step(o, b, sym)
            if not na and not nb:
                continue
            key = (na, nb, d + 1)
            if key not in seen:
                seen.add(key)
                stack.append(key)
    return True


def oracle_follower_equal(o: ShiftOracle, u: Block, v: Block, horizon: int) -> bool:
    """Do u and v admit exactly the same continuations up to `horizon`?"""
    if horizon > o.horizon_budget:
        raise BudgetExceededError(
            f"horizon {horizon} exceeds budget {o.horizon_budget}"
        )
    if not _admissible_unbounded(o, u):
        raise InadmissibleBlockError(f"inadmissible block {u!r}")
    if not _admissible_unbounded(o, v):
        raise InadmissibleBlockError(f"inadmissible block {v!r}")
    if o.kind == SOFIC:
        return _sofic_follower_equal(o, u, v, horizon)
    if o.kind == DYCK:
        return _dyck_follower_equal(o, u, v, horizon)
    return _code_follower_equal(o, u, v, horizon)


def oracle_blocks(o: ShiftOracle, n: int):
    """All admissible length-n blocks, lexicographic order (exact for
    every kind; the code_list state space already encodes boundary
    alignments)."""
    if o.kind == SOFIC:
        yield from iter_admissible_blocks(o.graph, n)
        return

    if o.kind == DYCK:
        state0 = ()
        stepper = _dyck_step
        dead = lambda s: s is None
    else:
        state0 = o._starts
        stepper = _code_step
        dead = lambda s: not s

    def rec(prefix, state):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for sym in o.alphabet:
            nxt = stepper(o, state, sym)
            if not dead(nxt):
                prefix.append(sym)
                yield from rec(prefix, nxt)
                prefix.pop()

    yield from rec([], state0)


def _embed_in_concatenation(o, b):
    """For a code_list block b, a pair (alpha, beta) of completion
    blocks such that alpha + b + beta is an exact concatenation of
    generators.  Deterministic: least start residual that survives,
    then least final residual."""
    assert o.kind == CODE_LIST

    def reskey(r):
        return (len(r), r)

    for r0 in sorted(o._starts, key=reskey):
        states = frozenset([r0])
        for sym in b:
            states = _code_step(o, states, sym)
            if not states:
                break
        if states:
            if r0:
                cands = [
                    g for g in o.generators
                    if len(g) > len(r0) and g[-len(r0):] == r0
                ] + [g for g in o.generators if g == r0]
                gen = min(cands, key=reskey)
                alpha = gen[: len(gen) - len(r0)]
            else:
                alpha = ()
            beta = min(states, key=reskey)
            return alpha, beta
    raise InadmissibleBlockError(f"inadmissible block {b!r}")


def parse_oracle(text: str, base_dir=".", path: str = "") -> ShiftOracle:
    """Parse the oracle declaration format.

    One `oracle` line: `oracle sofic <graph-file>`, `oracle dyck <r>`,
    or `oracle codelist <block> <block> ...`.  Graph paths resolve
    relative to base_dir.  The codelist alphabet is inferred from the
    generator blocks: distinct single-character symbols, sorted.
    """
    import os

    decl = None
    declline = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if decl is not None:
            raise ParseError("more than one oracle line", lineno, path)
        decl = line.split()
        declline = lineno
    if decl is None:
        raise ParseError("missing oracle line", 0, path)
    if decl[0] != "oracle" or len(decl) < 2:
        raise ParseError("expected: oracle <kind> ...", declline, path)
    kind = decl[1]
    args = decl[2:]
    if kind == "sofic":
        if len(args) != 1:
            raise ParseError("oracle sofic takes a graph file", declline, path)
        from .core import load_graph

        return sofic_oracle(load_graph(os.path.join(base_dir, args[0])))
    if kind == "dyck":
        if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
            raise ParseError("oracle dyck takes a pair count", declline, path)
        return dyck_oracle_rank(int(args[0]))
    if kind == "codelist":
        if not args:
            raise ParseError("oracle codelist needs generator blocks", declline, path)
        symbols = sorted({c for blk in args for c in blk})
        alphabet = Alphabet(symbols)
        return code_list_oracle(alphabet, [parse_block(blk, alphabet) for blk in args])
    raise ParseError(f"unknown oracle kind {kind!r}", declline, path)


def load_oracle(path) -> ShiftOracle:
    import os

    with open(path, encoding="utf-8") as f:
        return parse_oracle(f.read(), os.path.dirname(os.path.abspath(path)), str(path))
