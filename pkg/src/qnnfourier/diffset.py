"""Search for perfect difference lists.

A list ``L`` of ``m`` distinct integers is *perfect* when its nonzero
pairwise differences are exactly ``+-1, ..., +-m(m-1)/2``, each appearing
once. Used as eigenvalues of a diagonal encoding generator, such a list
yields the largest possible non-degenerate wavenumber set for its size.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .spectrum import WavenumberProfile


def _as_list(values: Sequence[int]) -> list[int]:
    out = [int(v) for v in values]
    if not out:
        raise ValueError("list must be nonempty")
    return out


def canonical(values: Sequence[int]) -> list[int]:
    """Translate to min 0 and pick the lexicographically smaller of the list and its mirror image."""
    vals = sorted(_as_list(values))
    lo, hi = vals[0], vals[-1]
    shifted = [v - lo for v in vals]
    mirrored = sorted(hi - v for v in vals)
    return min(shifted, mirrored)


def difference_multiset(values: Sequence[int]) -> WavenumberProfile:
    vals = _as_list(values)
    counts = Counter(a - b for a in vals for b in vals)
    return WavenumberProfile(dict(sorted(counts.items())))


def is_perfect(values: Sequence[int]) -> bool:
    vals = _as_list(values)
    m = len(vals)
    top = m * (m - 1) // 2
    positive = {k: c for k, c in difference_multiset(vals).entries.items() if k > 0}
    return sorted(positive) == list(range(1, top + 1)) and all(c == 1 for c in positive.values())


@dataclass(frozen=True)
class SearchReport:
    m: int
    max_element: int
    solutions: list
    nodes_explored: int

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "max_element": self.max_element,
            "solutions": self.solutions,
            "nodes_explored": self.nodes_explored,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def run_search(m: int, max_element: int) -> SearchReport:
    """Depth-first search over increasing lists starting at 0.

    A branch is cut as soon as a new element repeats a difference or
    exceeds ``m(m-1)/2``, the largest difference a perfect list can have.
    Only lists no larger than their mirror image are kept.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    top = m * (m - 1) // 2
    if max_element < top:
        raise ValueError(
            f"max_element={max_element} < {top}: a perfect list of {m} elements "
            f"needs a largest difference of {top}"
        )
    solutions: list[list[int]] = []
    nodes = 0
    used = bytearray(top + 1)
    chosen = [0]

    def extend() -> None:
        nonlocal nodes
        nodes += 1
        if len(chosen) == m:
            # m(m-1)/2 distinct differences in 1..top means every one is hit
            if chosen == canonical(chosen):
                solutions.append(list(chosen))
            return
        for nxt in range(chosen[-1] + 1, top + 1):
            diffs = [nxt - v for v in chosen]
            if any(used[d] for d in diffs):
                continue
            for d in diffs:
                used[d] = 1
            chosen.append(nxt)
            extend()
            chosen.pop()
            for d in diffs:
                used[d] = 0

    extend()
    solutions.sort()
    return SearchReport(m, max_element, solutions, nodes)


def search_perfect(m: int, max_element: int) -> list[list[int]]:
    """Canonical perfect lists of ``m`` elements within ``[0, max_element]``, sorted."""
    return run_search(m, max_element).solutions


def rz_weights_for(eigenvalues: Sequence[float], n_qubits: int, max_weight: int) -> Optional[tuple[int, ...]]:
    """Find integer RZ scalings ``w`` whose generator ``0.5 * sum_q (+-w_q)`` has ``eigenvalues``.

    The eigenvalues are compared as a multiset after centring (a constant
    offset is a global phase). Returns the smallest non-decreasing weight
    tuple in ``1..max_weight`` that works, or ``None``.
    """
    eigs = sorted(float(e) for e in eigenvalues)
    if len(eigs) != 2**n_qubits:
        return None
    mean = sum(eigs) / len(eigs)
    target = [e - mean for e in eigs]
    for weights in itertools.combinations_with_replacement(range(1, max_weight + 1), n_qubits):
        got = sorted(
            0.5 * sum(s * w for s, w in zip(signs, weights))
            for signs in itertools.product((1, -1), repeat=n_qubits)
        )
        if all(abs(a - b) < 1e-9 for a, b in zip(got, target)):
            return weights
    return None
