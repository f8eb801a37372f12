"""Reference implementations by plain enumeration, for cross-checking.

Everything here walks paths or strings directly and ignores the
library's automata constructions on purpose.
"""


def path_words(g, n):
    """Label words of all n-edge paths, as a set."""
    words = set()
    stack = [(v, ()) for v in g.vertices]
    while stack:
        v, w = stack.pop()
        if len(w) == n:
            words.add(w)
            continue
        for lab, t in g.out_edges(v):
            stack.append((t, w + (lab,)))
    return words


def reads(g, w):
    """Whether some path reads w."""
    states = set(g.vertices)
    for sym in w:
        states = {t for v in states for lab, t in g.out_edges(v) if lab == sym}
        if not states:
            return False
    return True


def followers_equal(g, u, v, depth):
    """Extension-by-extension follower comparison to the given depth."""
    for n in range(1, depth + 1):
        for w in path_words(g, n):
            if reads(g, u + w) != reads(g, v + w):
                return False
    return True


def dyck_reduce(pairs, w):
    """Cancel adjacent matched pairs until nothing cancels."""
    match = {o: c for o, c in pairs}
    out = []
    for sym in w:
        if out and match.get(out[-1]) == sym:
            out.pop()
        else:
            out.append(sym)
    return tuple(out)


def dyck_admissible(pairs, w):
    """Reduction semantics: admissible iff the reduced word is some
    closers followed by some openers (no opener ever meets a wrong
    closer)."""
    openers = {o for o, _ in pairs}
    reduced = dyck_reduce(pairs, w)
    seen_opener = False
    for sym in reduced:
        if sym in openers:
            seen_opener = True
        elif seen_opener:
            return False
    return True


def preimage_blocks(f1, w):
    """Domain blocks of a one-block map hitting the image word w."""
    g = f1.domain
    phi = {x[0]: y for x, y in f1.code.window_map.items()}
    found = set()
    stack = [(v, ()) for v in g.vertices]
    while stack:
        v, x = stack.pop()
        if len(x) == len(w):
            found.add(x)
            continue
        for lab, t in g.out_edges(v):
            if phi[lab] == w[len(x)]:
                stack.append((t, x + (lab,)))
    return found
