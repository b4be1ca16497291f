"""Bounded search for trivial words, with replayable certificates.

A word is trivial in a presentation exactly when it can be carried to
the empty word by inserting conjugates of relators and freely reducing.
The search inserts cyclic rotations of the relators and their inverses
(rotations realize exactly the conjugates that cancel against the
surrounding text) and explores shortest-word-first under an iteratively
deepened insertion-count bound.  Only insertions that cancel against a
neighbouring letter are expanded; free-floating insertions never help
the short direct calculations this tool is for.

Success yields a ``Derivation`` that replays mechanically with no trust
in the search: each step names the inserted variant and its position,
and replaying the insertions through free reduction must end at the
empty word.  Failure is just failure; the word problem is undecidable
in general.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from . import words

DEFAULT_DEPTH = 8
DEFAULT_NODE_BUDGET = 3000


@dataclass(frozen=True)
class Insertion:
    position: int
    inserted: tuple  # the relator-conjugate word, spelled out
    source: int      # index into the relator list handed to the search
    rotation: int
    inverted: bool


@dataclass(frozen=True)
class Derivation:
    """Insertion sequence carrying ``start`` to the empty word."""

    start: tuple
    steps: tuple

    def replay(self) -> bool:
        w = words.free_reduce(self.start)
        for step in self.steps:
            if not 0 <= step.position <= len(w):
                return False
            w = words.concat(w[: step.position], step.inserted, w[step.position:])
        return w == ()


def _variants(relators):
    """All distinct rotations of every relator and its inverse."""
    out = []
    seen = set()
    for src, rel in enumerate(relators):
        r = words.cyclic_reduce(rel)
        if not r:
            continue
        for inverted in (False, True):
            base = words.invert(r) if inverted else r
            for k in range(len(base)):
                v = words.rotate(base, k)
                if v not in seen:
                    seen.add(v)
                    out.append((v, src, k, inverted))
    return out


def search_trivial(word, relators, depth: int = DEFAULT_DEPTH,
                   node_budget: int = DEFAULT_NODE_BUDGET):
    """Find a derivation of triviality for ``word``, or None.

    ``relators`` may include derived facts (words already known to be
    trivial in the group at hand); soundness of the result rests only on
    that guarantee, never on the search order.
    """
    start = words.free_reduce(word)
    if start == ():
        return Derivation(start, ())
    variants = _variants(relators)
    if not variants:
        return None
    by_first = {}
    by_last = {}
    for item in variants:
        v = item[0]
        by_first.setdefault(v[0], []).append(item)
        by_last.setdefault(v[-1], []).append(item)
    max_rel = max(len(v[0]) for v in variants)
    max_len = len(start) + max_rel + 4

    limit = 1
    while limit <= depth:
        found = _best_first(start, by_first, by_last, limit, max_len, node_budget)
        if found is not None:
            return found
        limit = min(limit * 2, depth) if limit < depth else depth + 1
    return None


def _successors(w, by_first, by_last):
    """(position, variant-item) pairs whose insertion cancels at a junction."""
    out = []
    n = len(w)
    for pos in range(n + 1):
        if pos > 0:
            for item in by_first.get(-w[pos - 1], ()):
                out.append((pos, item))
        if pos < n:
            for item in by_last.get(-w[pos], ()):
                v = item[0]
                # avoid double-listing insertions that cancel on both sides
                if not (pos > 0 and v[0] == -w[pos - 1]):
                    out.append((pos, item))
    return out


def _best_first(start, by_first, by_last, limit, max_len, node_budget):
    counter = 0
    heap = [(len(start), 0, counter, start)]
    parents = {start: None}
    depth_of = {start: 0}
    popped = 0
    while heap and popped < node_budget:
        _, d, _, w = heapq.heappop(heap)
        popped += 1
        if d != depth_of.get(w, -1):
            continue  # stale queue entry
        if d >= limit:
            continue
        for pos, (variant, src, rot, inv) in _successors(w, by_first, by_last):
            new = words.concat(w[:pos], variant, w[pos:])
            if len(new) > max_len:
                continue
            nd = d + 1
            if new in depth_of and depth_of[new] <= nd:
                continue
            depth_of[new] = nd
            parents[new] = (w, Insertion(pos, variant, src, rot, inv))
            if new == ():
                return _unwind(parents, start)
            if nd < limit:
                counter += 1
                heapq.heappush(heap, (len(new), nd, counter, new))
    return None


def _unwind(parents, start):
    steps = []
    w = ()
    while parents[w] is not None:
        prev, ins = parents[w]
        steps.append(ins)
        w = prev
    steps.reverse()
    deriv = Derivation(start, tuple(steps))
    assert deriv.replay(), "internal error: derivation does not replay"
    return deriv
