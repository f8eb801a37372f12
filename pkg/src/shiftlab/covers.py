"""Follower-set determinization, Fischer covers, and synchronization.

The central tool is the subset automaton of a presentation: states are
the vertex sets reachable as image_set(g, w) over admissible w, and
an a-labeled edge maps S to image_set(g, a, S).  Its essential part is
a right-resolving presentation of the same shift, language classes of
its states decide follower-set equality exactly, and singleton images
detect synchronizing words.

Half-synchronizing verdicts are horizon-bounded by nature (the
definition quantifies over an infinite left-transitive ray); the
verdict records the horizon and, where the argument is horizon-free
(sofic language classes, Dyck signatures), an exact flag.
"""

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .core import (
    Block,
    LabeledGraph,
    image_set,
    is_admissible,
    is_irreducible,
    iter_admissible_blocks,
    require_essential,
    trim_to_essential,
)
from .errors import (
    InadmissibleBlockError,
    NotIrreducibleError,
    NotRightResolvingError,
    SynchronizingWordNotFoundError,
    WitnessNotFoundError,
)
from .oracle import (
    DYCK,
    SOFIC,
    ShiftOracle,
    _admissible_unbounded,
    _code_step,
    _dyck_closers,
    _dyck_scan,
    _embed_in_concatenation,
    oracle_blocks,
)

SYNCHRONIZING = "synchronizing"
NOT_SYNCHRONIZING = "not_synchronizing"
HOLDS = "holds_at_horizon"
REFUTED = "refuted"


@dataclass(frozen=True)
class SyncVerdict:
    status: str
    witness: Optional[tuple] = None  # (u, w) with uv, vw admissible, uvw not


@dataclass(frozen=True)
class HalfSyncVerdict:
    status: str
    block: Block
    horizon: int
    transitive_ray_prefix: Optional[Block] = None  # present iff holds
    refutation: Optional[Block] = None  # present iff refuted
    exact: bool = False  # follower comparison was horizon-free


def is_right_resolving(g: LabeledGraph) -> bool:
    """No vertex has two out-edges with the same label."""
    require_essential(g)
    for v in g.vertices:
        labs = [lab for lab, _ in g.out_edges(v)]
        if len(labs) != len(set(labs)):
            return False
    return True


def _subset_automaton(g):
    """Subsets reachable from the full vertex set, with transitions.

    Returns (order, trans): order lists the subsets in breadth-first
    discovery order starting at the full set; trans maps (S, symbol)
    to the image subset, omitting empty images.
    """
    if not g.vertices:
        return [], {}
    start = frozenset(g.vertices)
    order = [start]
    seen = {start}
    trans = {}
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        for sym in g.alphabet:
            t = frozenset(x for v in s for x in g.step(v, sym))
            if t:
                trans[(s, sym)] = t
                if t not in seen:
                    seen.add(t)
                    order.append(t)
    return order, trans


def _set_name(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def subset_cover(g: LabeledGraph) -> LabeledGraph:
    """Right-resolving presentation of the same shift via follower sets.

    Vertex names encode the underlying vertex sets.  The result is the
    essential part of the reachable subset automaton.
    """
    require_essential(g)
    order, trans = _subset_automaton(g)
    vertices = [_set_name(s) for s in order]
    edges = [
        (_set_name(s), _set_name(t), sym) for (s, sym), t in trans.items()
    ]
    return trim_to_essential(LabeledGraph(g.alphabet, vertices, edges))


def _moore_classes(order, trans, alphabet):
    """Language classes of subset states: S and T fall in one class
    iff exactly the same words are readable from them.  Dead (empty)
    successors are encoded as class -1."""
    cls = {s: 0 for s in order}
    while True:
        sig_ids = {}
        new = {}
        for s in order:
            succ = []
            for sym in alphabet:
                t = trans.get((s, sym))
                succ.append(-1 if t is None else cls[t])
            sig = (cls[s], tuple(succ))
            if sig not in sig_ids:
                sig_ids[sig] = len(sig_ids)
            new[s] = sig_ids[sig]
        if new == cls:
            return cls
        cls = new


def _walk(trans, s, w):
    for sym in w:
        s = trans.get((s, sym))
        if s is None:
            return None
    return s


def follower_separation(g: LabeledGraph):
    """Coarsest partition of vertices by equality of follower languages.

    Requires a right-resolving presentation; computed by iterated
    refinement from the out-label signature.
    """
    if not is_right_resolving(g):
        raise NotRightResolvingError("follower_separation needs right-resolving input")
    step = {}
    for v in g.vertices:
        for lab, dst in g.out_edges(v):
            step[(v, lab)] = dst
    cls = {v: 0 for v in g.vertices}
    while True:
        sig_ids = {}
        new = {}
        for v in g.vertices:
            succ = []
            for sym in g.alphabet:
                t = step.get((v, sym))
                succ.append(-1 if t is None else cls[t])
            sig = (cls[v], tuple(succ))
            if sig not in sig_ids:
                sig_ids[sig] = len(sig_ids)
            new[v] = sig_ids[sig]
        if new == cls:
            break
        cls = new
    groups = {}
    for v in g.vertices:
        groups.setdefault(cls[v], []).append(v)
    return tuple(tuple(sorted(grp)) for grp in sorted(groups.values()))


def _merge_by_partition(g: LabeledGraph, partition) -> LabeledGraph:
    """Quotient graph; each class is named by its least member."""
    rep = {}
    for grp in partition:
        name = min(grp)
        for v in grp:
            rep[v] = name
    edges = {(rep[src], rep[dst], lab) for src, dst, lab in g.edges}
    return LabeledGraph(g.alphabet, sorted(set(rep.values())), sorted(edges))


def find_synchronizing_word(g: LabeledGraph, max_len: int) -> Optional[Block]:
    """Length-lexicographically least non-empty admissible block whose
    image in the subset cover is a single vertex, or None if there is
    none of length <= max_len."""
    require_essential(g)
    sc = subset_cover(g)
    if not sc.vertices:
        return None
    start = tuple(sc.vertices)
    seen = {start}
    layer = [((), start)]
    for _ in range(max_len):
        nxt = []
        for word, vec in layer:
            for sym in sc.alphabet:
                newvec = []
                live = set()
                for x in vec:
                    t = None
                    if x is not None:
                        targets = sc.step(x, sym)
                        t = targets[0] if targets else None
                    newvec.append(t)
                    if t is not None:
                        live.add(t)
                if not live:
                    continue
                w2 = word + (sym,)
                if len(live) == 1:
                    return w2
                newvec = tuple(newvec)
                if newvec not in seen:
                    seen.add(newvec)
                    nxt.append((w2, newvec))
        layer = nxt
    return None


def _words_with_images(g, length):
    """(word, image from the full set) for admissible words of the
    given exact length, lexicographic order."""

    def rec(prefix, subset):
        if len(prefix) == length:
            yield tuple(prefix), subset
            return
        for sym in g.alphabet:
            nxt = frozenset(t for v in subset for t in g.step(v, sym))
            if nxt:
                prefix.append(sym)
                yield from rec(prefix, nxt)
                prefix.pop()

    yield from rec([], frozenset(g.vertices))


def _first_dead_extension(g, live_set, dead_set, length):
    """Least word of exact `length` readable from live_set but not from
    dead_set, or None."""

    def rec(prefix, live, dead):
        if len(prefix) == length:
            return tuple(prefix) if not dead else None
        for sym in g.alphabet:
            nlive = frozenset(t for v in live for t in g.step(v, sym))
            if not nlive:
                continue
            ndead = frozenset(t for v in dead for t in g.step(v, sym))
            prefix.append(sym)
            got = rec(prefix, nlive, ndead)
            prefix.pop()
            if got is not None:
                return got
        return None

    return rec([], frozenset(live_set), frozenset(dead_set))


def is_synchronizing(g: LabeledGraph, v: Block, context_bound: int = 8) -> SyncVerdict:
    """Exact synchronizing-block test.

    v is synchronizing iff uv, vw admissible always implies uvw
    admissible; equivalently, iff the follower language after uv is
    independent of u.  The test compares language classes of v-images
    over every reachable subset, which is exact for any presentation,
    right-resolving or not.  context_bound only limits the refutation
    witness search.
    """
    require_essential(g)
    if not is_admissible(g, v):
        raise InadmissibleBlockError(f"inadmissible block {v!r}")
    order, trans = _subset_automaton(g)
    cls = _moore_classes(order, trans, g.alphabet)
    images = set()
    for s in order:
        t = _walk(trans, s, v)
        if t is not None:
            images.add(cls[t])
    if len(images) == 1:
        return SyncVerdict(SYNCHRONIZING)
    s_v = frozenset(image_set(g, v))
    for total in range(2, 2 * context_bound + 1):
        for lu in range(1, min(context_bound, total - 1) + 1):
            lw = total - lu
            if lw < 1 or lw > context_bound:
                continue
            for u, img_u in _words_with_images(g, lu):
                s_uv = frozenset(image_set(g, v, img_u))
                if not s_uv:
                    continue
                w = _first_dead_extension(g, s_v, s_uv, lw)
                if w is not None:
                    return SyncVerdict(NOT_SYNCHRONIZING, witness=(u, w))
    raise WitnessNotFoundError(
        f"no refutation witness within context bound {context_bound}"
    )


def fischer_cover(g: LabeledGraph) -> LabeledGraph:
    """Minimal right-resolving presentation of an irreducible sofic shift.

    Subset cover, then follower-set merging, then restriction to the
    irreducible component containing the image of a synchronizing
    word.  Idempotent up to canonical isomorphism.
    """
    require_essential(g)
    if not is_irreducible(g):
        raise NotIrreducibleError("fischer_cover needs an irreducible presentation")
    sc = subset_cover(g)
    merged = _merge_by_partition(sc, follower_separation(sc))
    alpha = find_synchronizing_word(g, max_len=len(sc.vertices))
    if alpha is None:
        raise SynchronizingWordNotFoundError(
            f"no synchronizing word of length <= {len(sc.vertices)}"
        )
    root_set = image_set(merged, alpha)
    assert len(root_set) == 1, "synchronizing word must focus the merged cover"
    root = root_set[0]
    forward = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for _, dst in merged.out_edges(x):
            if dst not in forward:
                forward.add(dst)
                stack.append(dst)
    backward = {root}
    stack = [root]
    preds = {}
    for src, dst, _ in merged.edges:
        preds.setdefault(dst, set()).add(src)
    while stack:
        x = stack.pop()
        for src in preds.get(x, ()):
            if src not in backward:
                backward.add(src)
                stack.append(src)
    comp = forward & backward
    edges = [e for e in merged.edges if e[0] in comp and e[1] in comp]
    return LabeledGraph(g.alphabet, comp, edges)


def canonical_form(g: LabeledGraph) -> LabeledGraph:
    """Canonical relabeling of a minimal right-resolving irreducible cover.

    The root is the (single) image vertex of the least synchronizing
    word; vertices are renamed in breadth-first discovery order from
    the root, following the alphabet order.  Two minimal covers are
    isomorphic iff their canonical forms are equal.
    """
    require_essential(g)
    sc = subset_cover(g)
    alpha = find_synchronizing_word(g, max_len=len(sc.vertices))
    if alpha is None:
        raise SynchronizingWordNotFoundError(
            f"no synchronizing word of length <= {len(sc.vertices)}"
        )
    root_set = image_set(g, alpha)
    assert len(root_set) == 1, "input is not a focused minimal cover"
    width = len(str(max(len(g.vertices) - 1, 1)))
    names = {root_set[0]: f"{0:0{width}d}"}
    queue = deque(root_set)
    while queue:
        x = queue.popleft()
        for _, dst in g.out_edges(x):
            if dst not in names:
                names[dst] = f"{len(names):0{width}d}"
                queue.append(dst)
    assert len(names) == len(g.vertices), "cover must be irreducible"
    edges = [(names[src], names[dst], lab) for src, dst, lab in g.edges]
    return LabeledGraph(g.alphabet, names.values(), edges)


def isomorphic_minimal(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    return canonical_form(g1) == canonical_form(g2)


def languages_equal(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """Exact language equality of two presentations over one alphabet.

    Decided by canonical isomorphism of the Fischer covers, which is
    sound for irreducible presentations (minimal covers are unique up
    to isomorphism).
    """
    g1 = trim_to_essential(g1)
    g2 = trim_to_essential(g2)
    if g1.alphabet != g2.alphabet:
        return False
    if not g1.vertices or not g2.vertices:
        return not g1.vertices and not g2.vertices
    return isomorphic_minimal(fischer_cover(g1), fischer_cover(g2))


def _shortest_path_word(g, src, dst) -> Optional[Block]:
    """Least word labeling a path src -> dst (empty if src == dst)."""
    if src == dst:
        return ()
    seen = {src}
    layer = [((), src)]
    while layer:
        nxt = []
        for word, x in layer:
            for lab, y in g.out_edges(x):
                if y == dst:
                    return word + (lab,)
                if y not in seen:
                    seen.add(y)
                    nxt.append((word + (lab,), y))
        layer = nxt
    return None


def _connector_to_read(g, start_set, b) -> Block:
    """Least word d such that b is readable after d from start_set."""
    s0 = frozenset(start_set)
    if image_set(g, b, s0):
        return ()
    seen = {s0}
    layer = [((), s0)]
    while layer:
        nxt = []
        for word, s in layer:
            for sym in g.alphabet:
                t = frozenset(x for v in s for x in g.step(v, sym))
                if not t or t in seen:
                    continue
                w2 = word + (sym,)
                if image_set(g, b, t):
                    return w2
                seen.add(t)
                nxt.append((w2, t))
        layer = nxt
    raise NotIrreducibleError("cannot reach every admissible block; graph not irreducible")


def _wrap_word(g, c) -> Block:
    """Least word d such that (c + d) labels a cycle somewhere, making
    the left-infinite repetition ...(c+d)(c+d) admissible."""
    best = None
    for x in g.vertices:
        for y in image_set(g, c, (x,)):
            w = _shortest_path_word(g, y, x)
            if w is None:
                continue
            key = (len(w), tuple(g.alphabet.index(s) for s in w))
            if best is None or key < best[0]:
                best = (key, w)
    if best is None:
        raise NotIrreducibleError("no cyclic return path; graph not irreducible")
    return best[1]


def _separating_word(g, live_set, dead_set) -> Optional[Block]:
    """Least word readable from live_set but not from dead_set."""
    a0, b0 = frozenset(live_set), frozenset(dead_set)
    seen = {(a0, b0)}
    layer = [((), a0, b0)]
    while layer:
        nxt = []
        for word, a, b in layer:
            for sym in g.alphabet:
                na = frozenset(t for v in a for t in g.step(v, sym))
                if not na:
                    continue
                nb = frozenset(t for v in b for t in g.step(v, sym))
                w2 = word + (sym,)
                if not nb:
                    return w2
                if (na, nb) not in seen:
                    seen.add((na, nb))
                    nxt.append((w2, na, nb))
        layer = nxt
    return None


def _half_sync_sofic(o, m, horizon) -> HalfSyncVerdict:
    g = o.graph
    if not is_irreducible(g):
        raise NotIrreducibleError("half-synchronization needs an irreducible presentation")
    depth = min(horizon, o.horizon_budget)
    blocks = list(iter_admissible_blocks(g, depth)) or [()]

    # weave: every admissible block at the transitivity depth, joined
    # by shortest connectors, read from the full vertex set
    parts = []
    s = frozenset(g.vertices)
    for b in blocks:
        d = _connector_to_read(g, s, b)
        parts.append(d)
        parts.append(b)
        s = frozenset(image_set(g, b, image_set(g, d, s)))
    c = tuple(itertools.chain.from_iterable(parts))

    # make the weave cyclically repeatable and compute the stable
    # vertex set of the left-infinite repetition
    unit = c + _wrap_word(g, c)
    t = frozenset(g.vertices)
    reps = 0
    while True:
        t2 = frozenset(image_set(g, unit, t))
        reps += 1
        if t2 == t:
            break
        t = t2
    t_star = t

    order, trans = _subset_automaton(g)
    cls = _moore_classes(order, trans, g.alphabet)
    s_m = frozenset(image_set(g, m))
    target = cls[s_m]

    # shortest final connector from the stable set that aligns the
    # follower class of the ray with that of m
    f_match = None
    f_any = None
    seen = {t_star}
    queue = deque([((), t_star)])
    while queue:
        word, s = queue.popleft()
        img = frozenset(image_set(g, m, s))
        if img:
            if f_any is None:
                f_any = (word, img)
            if cls[img] == target:
                f_match = (word, img)
                break
        for sym in g.alphabet:
            t2 = frozenset(x for v in s for x in g.step(v, sym))
            if t2 and t2 not in seen:
                seen.add(t2)
                queue.append((word + (sym,), t2))

    if f_match is not None:
        prefix = unit * reps + f_match[0] + m
        return HalfSyncVerdict(HOLDS, m, horizon, transitive_ray_prefix=prefix, exact=True)
    assert f_any is not None, "m must be reachable, graph irreducible"
    t_eff = f_any[1]
    delta = _separating_word(g, s_m, t_eff)
    assert delta is not None, "classes differ, a separating word exists"
    if len(delta) <= horizon:
        return HalfSyncVerdict(REFUTED, m, horizon, refutation=delta)
    prefix = unit * reps + f_any[0] + m
    return HalfSyncVerdict(HOLDS, m, horizon, transitive_ray_prefix=prefix, exact=False)


def _half_sync_dyck(o, m, horizon) -> HalfSyncVerdict:
    depth = min(horizon, o.horizon_budget)
    blocks = list(oracle_blocks(o, depth)) or [()]
    parts = []
    stack = ()
    for b in blocks:
        parts.append(_dyck_closers(o, stack))
        parts.append(b)
        stack = _dyck_scan(o, b, ())
    parts.append(_dyck_closers(o, stack))
    parts.append(m)
    prefix = tuple(itertools.chain.from_iterable(parts))
    # closing the stack before m gives the prefix the signature of m
    # itself, and equal signatures have equal follower sets at every
    # horizon, so the verdict is horizon-free
    assert _dyck_scan(o, prefix) == _dyck_scan(o, m)
    return HalfSyncVerdict(HOLDS, m, horizon, transitive_ray_prefix=prefix, exact=True)


def _half_sync_code(o, m, horizon) -> HalfSyncVerdict:
    depth = min(horizon, o.horizon_budget)
    blocks = list(oracle_blocks(o, depth)) or [()]
    parts = []
    for b in blocks:
        alpha, beta = _embed_in_concatenation(o, b)
        parts += [alpha, b, beta]
    alpha_m, _ = _embed_in_concatenation(o, m)
    parts += [alpha_m, m]
    prefix = tuple(itertools.chain.from_iterable(parts))

    a = o._starts
    for sym in m:
        a = _code_step(o, a, sym)
    b = o._starts
    for sym in prefix:
        b = _code_step(o, b, sym)
    assert b, "constructed prefix must be admissible"

    seen = {(a, b)}
    layer = [((), a, b)]
    for _ in range(horizon):
        nxt = []
        for word, sa, sb in layer:
            for sym in o.alphabet:
                na = _code_step(o, sa, sym)
                if not na:
                    continue
                nb = _code_step(o, sb, sym)
                w2 = word + (sym,)
                if not nb:
                    return HalfSyncVerdict(REFUTED, m, horizon, refutation=w2)
                if (na, nb) not in seen:
                    seen.add((na, nb))
                    nxt.append((w2, na, nb))
        layer = nxt
    return HalfSyncVerdict(HOLDS, m, horizon, transitive_ray_prefix=prefix, exact=False)


def is_half_synchronizing(o: ShiftOracle, m: Block, horizon: int) -> HalfSyncVerdict:
    """Horizon-bounded test of the half-synchronizing block property.

    Constructs a left context that ends in m and contains every
    admissible block up to min(horizon, budget), then checks that
    every continuation of m up to the horizon also continues the
    constructed context.  The sofic check compares follower classes
    exactly and the Dyck check compares signatures, so their positive
    verdicts carry exact=True; code_list verdicts are window-based.
    """
    if not _admissible_unbounded(o, m):
        raise InadmissibleBlockError(f"inadmissible block {m!r}")
    if o.kind == SOFIC:
        return _half_sync_sofic(o, m, horizon)
    if o.kind == DYCK:
        return _half_sync_dyck(o, m, horizon)
    return _half_sync_code(o, m, horizon)
