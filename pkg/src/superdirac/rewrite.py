"""A small word-rewriting engine shared by the Clifford and DSL normal forms.

A *rule* looks at an adjacent pair of letters ``(a, b)`` and returns ``None``
when the pair is already in normal order, otherwise a list of
``(integer factor, replacement tuple)`` pairs that replace ``a b``.
Coefficients can be any ring type that supports ``+``, ``*`` with ints, and
truthiness for zero tests.
"""

from __future__ import annotations

import random
from typing import Callable, Hashable, Sequence

Rule = Callable[[Hashable, Hashable], "list[tuple[int, tuple]] | None"]


def normal_form(
    terms: dict[tuple, object],
    rule: Rule,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
) -> dict[tuple, object]:
    """Rewrite every word until no rule applies; equal words are merged each round."""
    if strategy not in ("leftmost", "rightmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    out: dict = {}
    current = {w: c for w, c in terms.items() if c}
    while current:
        nxt: dict = {}
        for w, c in current.items():
            pos = _redex(w, rule, strategy, rng)
            if pos is None:
                _add(out, w, c)
                continue
            for f, rep in rule(w[pos], w[pos + 1]):
                _add(nxt, w[:pos] + tuple(rep) + w[pos + 2 :], c * f)
        current = {w: c for w, c in nxt.items() if c}
    return {w: c for w, c in out.items() if c}


def _redex(w: Sequence, rule: Rule, strategy: str, rng):
    if strategy == "leftmost":
        for p in range(len(w) - 1):
            if rule(w[p], w[p + 1]) is not None:
                return p
        return None
    if strategy == "rightmost":
        for p in range(len(w) - 2, -1, -1):
            if rule(w[p], w[p + 1]) is not None:
                return p
        return None
    cands = [p for p in range(len(w) - 1) if rule(w[p], w[p + 1]) is not None]
    return rng.choice(cands) if cands else None


def _add(d: dict, key, val) -> None:
    if key in d:
        d[key] = d[key] + val
    else:
        d[key] = val
