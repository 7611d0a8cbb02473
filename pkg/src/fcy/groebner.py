"""Noncommutative Buchberger completion for path algebra ideals.

Words are tuples of arrow indices in traversal order.  The monomial order is
length first, then lexicographic on the indices; callers number arrows by a
canonical sort of their identifiers, so the result does not depend on the
order arrows were declared in.

A rule ``lw -> tail`` encodes ``lw ≡ Σ c·w`` modulo the ideal with every
``w`` smaller than ``lw``.
"""
from __future__ import annotations

import heapq
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DimensionBoundExceeded

log = logging.getLogger(__name__)

Word = Tuple[int, ...]
Poly = Dict[Word, object]

MAX_RULES = 200_000


def okey(w: Word):
    return (len(w), w)


def _contains(big: Word, small: Word) -> bool:
    n = len(small)
    return any(big[i:i + n] == small for i in range(len(big) - n + 1))


class RewritingSystem:
    def __init__(self, field, src: Sequence[str], tgt: Sequence[str]):
        self.field = field
        self.src = list(src)
        self.tgt = list(tgt)
        self.rules: Dict[Word, Poly] = {}
        self._lengths: List[int] = []
        self._memo: Dict[Word, Poly] = {}

    # -- rewriting --------------------------------------------------------

    def _refresh_lengths(self):
        self._lengths = sorted({len(w) for w in self.rules})
        self._memo.clear()

    def find(self, w: Word) -> Optional[Tuple[int, Word]]:
        rules = self.rules
        n = len(w)
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                piece = w[i:i + L]
                if piece in rules:
                    return i, piece
        return None

    def is_normal(self, w: Word) -> bool:
        return self.find(w) is None

    def reduce(self, poly: Poly) -> Poly:
        """Full normal form of a polynomial against the current rules."""
        zero = self.field.zero
        work = {w: c for w, c in poly.items() if c}
        out: Poly = {}
        while work:
            w = max(work, key=okey)
            c = work.pop(w)
            hit = self.find(w)
            if hit is None:
                out[w] = c
                continue
            i, lw = hit
            pre, post = w[:i], w[i + len(lw):]
            for t, d in self.rules[lw].items():
                nw = pre + t + post
                v = work.get(nw, zero) + c * d
                if v:
                    work[nw] = v
                else:
                    work.pop(nw, None)
        return out

    def normal_form_word(self, w: Word) -> Poly:
        """Memoized normal form of a single word (rules must be frozen)."""
        memo = self._memo
        if w in memo:
            return memo[w]
        one, zero = self.field.one, self.field.zero
        stack = [w]
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            hit = self.find(x)
            if hit is None:
                memo[x] = {x: one}
                stack.pop()
                continue
            i, lw = hit
            pre, post = x[:i], x[i + len(lw):]
            children = [(pre + t + post, c) for t, c in self.rules[lw].items()]
            missing = [y for y, _ in children if y not in memo]
            if missing:
                stack.extend(missing)
                continue
            res: Poly = {}
            for y, c in children:
                for z, d in memo[y].items():
                    v = res.get(z, zero) + c * d
                    if v:
                        res[z] = v
                    else:
                        res.pop(z, None)
            memo[x] = res
            stack.pop()
        return memo[w]

    # -- completion -------------------------------------------------------

    def complete(self, relations: List[Poly], max_len: int):
        field = self.field
        heap: list = []
        counter = 0
        version: Dict[Word, int] = {}
        pending: List[Poly] = list(relations)
        certified = False

        def overlaps(u: Word, v: Word):
            nonlocal counter
            for k in range(1, min(len(u), len(v))):
                if u[-k:] == v[:k]:
                    counter += 1
                    heapq.heappush(heap, (len(u) + len(v) - k, counter, u, v, k,
                                          version[u], version[v]))

        def insert(poly: Poly):
            nf = self.reduce(poly)
            if not nf:
                return
            lw = max(nf, key=okey)
            c = nf[lw]
            tail = {w: -x / c for w, x in nf.items() if w != lw}
            for u in [u for u in self.rules if _contains(u, lw)]:
                old = {u: field.one}
                for t, x in self.rules.pop(u).items():
                    old[t] = -x
                version.pop(u, None)
                pending.append(old)
            self.rules[lw] = tail
            self._refresh_lengths()
            nonlocal counter
            counter += 1
            version[lw] = counter
            if len(self.rules) > MAX_RULES:
                raise DimensionBoundExceeded(f"more than {MAX_RULES} rewriting rules")
            for u in list(self.rules):
                overlaps(lw, u)
                if u != lw:
                    overlaps(u, lw)

        while pending or heap:
            if pending:
                insert(pending.pop())
                continue
            length, _, u, v, k, vu, vv = heapq.heappop(heap)
            if version.get(u) != vu or version.get(v) != vv:
                continue
            if not certified and length > max_len + 1:
                self._check_bound(max_len)
                certified = True
            tu, tv = self.rules[u], self.rules[v]
            s: Poly = {}
            suffix = v[k:]
            prefix = u[:-k]
            for t, x in tu.items():
                w = t + suffix
                s[w] = s.get(w, field.zero) + x
            for t, x in tv.items():
                w = prefix + t
                s[w] = s.get(w, field.zero) - x
            insert(s)
        if not certified:
            self._check_bound(max_len)
        # interreduce tails so later rewriting is cheap
        for lw in sorted(self.rules, key=okey):
            self.rules[lw] = self.reduce(self.rules[lw])
        self._refresh_lengths()
        log.debug("groebner basis with %d rules", len(self.rules))

    def _check_bound(self, max_len: int):
        """Raise unless no normal word of length max_len extends to a normal word."""
        out_of: Dict[str, List[int]] = {}
        for a, s in enumerate(self.src):
            out_of.setdefault(s, []).append(a)
        stack: List[Word] = [(a,) for a in range(len(self.src)) if self.is_normal((a,))]
        while stack:
            w = stack.pop()
            if len(w) > max_len:
                raise DimensionBoundExceeded(
                    f"normal words persist beyond length {max_len}; the quotient looks infinite-dimensional")
            for b in out_of.get(self.tgt[w[-1]], ()):
                nw = w + (b,)
                if self._suffix_normal(nw):
                    stack.append(nw)

    def _suffix_normal(self, w: Word) -> bool:
        # w[:-1] is already normal, so only suffixes can be leading words
        n = len(w)
        for L in self._lengths:
            if L > n:
                break
            if w[n - L:] in self.rules:
                return False
        return True

    def normal_words(self) -> List[Word]:
        out_of: Dict[str, List[int]] = {}
        for a, s in enumerate(self.src):
            out_of.setdefault(s, []).append(a)
        found: List[Word] = []
        stack: List[Word] = [(a,) for a in range(len(self.src)) if self.is_normal((a,))]
        while stack:
            w = stack.pop()
            found.append(w)
            for b in out_of.get(self.tgt[w[-1]], ()):
                nw = w + (b,)
                if self._suffix_normal(nw):
                    stack.append(nw)
        found.sort(key=okey)
        return found
