"""Index sets and Lagrange coefficients.

The integer combinatorics driving all coefficient formulas in this library:

* compositions ``C(n, l)``: ordered tuples of positive integers of length
  ``l`` summing to ``n``;
* M-sequences ``M(l)``: tuples ``(m_1, ..., m_l)`` of non-negative integers
  with total sum ``l`` and every proper prefix sum ``m_1 + ... + m_j >= j``;
  counted by the Catalan numbers and in bijection with planar binary trees;
* bit sequences ``E(l)``: tuples over ``{1, 2}``, used to label which copy
  of a free product a variable lives in;
* the Lagrange coefficient ``d_l`` and its labeled restriction ``d_l^e``,
  the integers appearing in the closed division formulas for formal
  diffeomorphisms with non-commutative coefficients.

Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import StructuralError

Tree = tuple
LEAF: Tree = ()


def compositions(n: int, length: int) -> list[tuple[int, ...]]:
    """All compositions of ``n`` into ``length`` positive parts.

    Ordered descending-lexicographically, matching the display order
    ``C(3,2) = [(2,1), (1,2)]``. Out-of-range ``length`` yields ``[]``.
    """
    if n < 1 or length < 1 or length > n:
        return []
    if length == 1:
        return [(n,)]
    out = []
    for first in range(n - length + 1, 0, -1):
        for rest in compositions(n - first, length - 1):
            out.append((first,) + rest)
    return out


def all_compositions(n: int) -> list[tuple[int, ...]]:
    """Compositions of ``n`` of every length, longest parts first."""
    out = []
    for length in range(1, n + 1):
        out.extend(compositions(n, length))
    return out


def weak_compositions(total: int, parts: int):
    """Tuples of ``parts`` non-negative integers summing to ``total``,
    first coordinate descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def m_sequences(length: int) -> list[tuple[int, ...]]:
    """The set ``M(length)``, in descending lexicographic order.

    ``m_sequences(0)`` is the empty list: the length-0 index set is empty,
    while the matching coefficient convention is ``lagrange_d(()) == 1``.
    """
    if length <= 0:
        return []
    out: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], total: int) -> None:
        pos = len(prefix) + 1
        if pos == length:
            last = length - total
            if last >= 0:
                out.append(prefix + (last,))
            return
        for m in range(length - total, -1, -1):
            if total + m >= pos:
                extend(prefix + (m,), total + m)

    if length == 1:
        return [(1,)]
    for m1 in range(length, 0, -1):
        extend((m1,), m1)
    return out


def is_m_sequence(m: Sequence[int]) -> bool:
    total = 0
    length = len(m)
    for j, mj in enumerate(m, start=1):
        if mj < 0:
            return False
        total += mj
        if j < length and total < j:
            return False
    return total == length


def bit_sequences(length: int) -> list[tuple[int, ...]]:
    """The set ``E(length)`` of bit tuples over ``{1, 2}``; ``E(0) = [()]``."""
    out = [()]
    for _ in range(length):
        out = [e + (b,) for e in out for b in (1, 2)]
    return out


def bit_sign(e: Sequence[int]) -> int:
    """``(-1)^e = (-1)^(e_1 + ... + e_l - l)``."""
    return -1 if (sum(e) - len(e)) % 2 else 1


def m_sequences_labeled(length: int, e: Sequence[int]) -> list[tuple[int, ...]]:
    """The subset ``M(length)^e``: sequences with ``m_i = 0`` wherever
    ``e_i = 2``. Empty whenever ``e`` starts with the bit 2."""
    if len(e) != length:
        raise StructuralError(f"bit sequence has length {len(e)}, expected {length}")
    if any(b not in (1, 2) for b in e):
        raise StructuralError(f"bits must be 1 or 2, got {tuple(e)}")
    return [m for m in m_sequences(length)
            if all(m[i] == 0 for i in range(length) if e[i] == 2)]


_D_CACHE: dict[tuple[int, ...], int] = {}


def lagrange_d(ns: Sequence[int]) -> int:
    """Lagrange coefficient ``d_l(n_1, ..., n_l)``.

    The sum over ``m in M(l)`` of ``prod_i binom(n_i + 1, m_i)``, with
    ``d_0 = 1`` on the empty argument. These are the coefficients of the
    right division of formal diffeomorphisms; ``d_l(1, ..., 1)`` is the
    Catalan number ``C(l+1)``.
    """
    key = tuple(ns)
    hit = _D_CACHE.get(key)
    if hit is not None:
        return hit
    if any(n < 1 for n in key):
        raise StructuralError(f"degrees must be positive, got {key}")
    value = sum(
        math.prod(math.comb(n + 1, m) for n, m in zip(key, mseq))
        for mseq in m_sequences(len(key))
    ) if key else 1
    _D_CACHE[key] = value
    return value


def lagrange_d_labeled(e: Sequence[int], ns: Sequence[int]) -> int:
    """Labeled Lagrange coefficient ``d_l^e(n_1, ..., n_l)``.

    The ``d``-sum restricted to ``M(l)^e``; equals ``lagrange_d`` when
    ``e = (1, ..., 1)`` and vanishes when ``e`` starts with the bit 2.
    """
    if len(e) != len(ns):
        raise StructuralError(f"{len(e)} bits for {len(ns)} degrees")
    return sum(
        math.prod(math.comb(n + 1, m) for n, m in zip(ns, mseq))
        for mseq in m_sequences_labeled(len(ns), e)
    ) if len(ns) else 1


def d_cache_rows() -> list[tuple[str, str]]:
    """Snapshot of the memo table as ``(args, value)`` string pairs,
    deterministically ordered; the CSV cache format of the CLI."""
    rows = []
    for key in sorted(_D_CACHE, key=lambda k: (len(k), k)):
        rows.append((",".join(map(str, key)), str(_D_CACHE[key])))
    return rows


def prime_d_cache(rows: Iterable[tuple[str, str]]) -> None:
    """Load memo entries exported by :func:`d_cache_rows`. Idempotent;
    a conflicting value for a known key is a structural error."""
    for args, value in rows:
        key = tuple(int(s) for s in args.split(",")) if args else ()
        v = int(value)
        old = _D_CACHE.get(key)
        if old is not None and old != v:
            raise StructuralError(f"cache row {key} -> {v} conflicts with {old}")
        _D_CACHE[key] = v


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def d_recurrence_check(variant: str, ns: Sequence[int]) -> bool:
    """Check one proved recurrence for ``d_l`` against the direct sum.

    ``alt-sign``:
        ``d_l(ns) = sum_{i=0}^{l-1} (-1)^(l-1-i)
        binom(n_1+...+n_{i+1}+1, l-i) d_i(n_1..n_i)``
    ``product``:
        ``d_l(ns) = sum_j sum_{p in C(l,j)} binom(n_1+1, j)
        prod_i d_{p_i-1}(block_i)`` where block ``i`` spans the degrees
        at positions ``P_{i-1}+2 .. P_i``
    ``shift``:
        ``d_l(ns) = sum_{i=1}^{l} (-1)^(i-1) binom(n_1+1, i)
        d_{l-i}(n_1+...+n_{i+1}, n_{i+2}, ..., n_l)``
    """
    ns = tuple(ns)
    ell = len(ns)
    if ell == 0:
        return True
    direct = lagrange_d(ns)
    if variant == "alt-sign":
        rhs = sum(
            (-1) ** (ell - 1 - i)
            * math.comb(sum(ns[: i + 1]) + 1, ell - i)
            * lagrange_d(ns[:i])
            for i in range(ell)
        )
    elif variant == "product":
        rhs = 0
        for j in range(1, ell + 1):
            for p in compositions(ell, j):
                term = math.comb(ns[0] + 1, j)
                pos = 0
                for pi in p:
                    term *= lagrange_d(ns[pos + 1: pos + pi])
                    pos += pi
                rhs += term
    elif variant == "shift":
        rhs = 0
        for i in range(1, ell + 1):
            if i == ell:
                rhs += (-1) ** (i - 1) * math.comb(ns[0] + 1, i)
            else:
                head = (sum(ns[: i + 1]),) + ns[i + 1:]
                rhs += (-1) ** (i - 1) * math.comb(ns[0] + 1, i) * lagrange_d(head)
    else:
        raise StructuralError(f"unknown recurrence variant {variant!r}")
    return rhs == direct


def tree_of_msequence(m: Sequence[int]) -> Tree:
    """The bijection ``M(l) -> planar binary trees with l+1 leaves``.

    A tree is a nested pair ``(left, right)`` with ``()`` as the leaf. The
    sequence is split at its last decomposable position ``h`` (a proper
    prefix summing to ``h``) and the second part is grafted onto the
    rightmost leaf of the first; an indecomposable sequence peels one unit
    off its head and pairs the remainder with a new right leaf. Base cases:
    ``() -> leaf``, ``(1) -> (leaf, leaf)``.
    """
    m = tuple(m)
    if not is_m_sequence(m):
        raise StructuralError(f"{m} is not a valid M-sequence")
    return _phi(m)


def _phi(m: tuple[int, ...]) -> Tree:
    if not m:
        return LEAF
    total = 0
    for h in range(len(m) - 1, 0, -1):
        if sum(m[:h]) == h:
            return _graft_rightmost(_phi(m[:h]), _phi(m[h:]))
    del total
    # indecomposable: m = (k+1, m_2, ..., m_{l-1}, 0)
    reduced = (m[0] - 1,) + m[1:-1] if len(m) > 1 else ()
    return (_phi(reduced), LEAF)


def _graft_rightmost(t: Tree, s: Tree) -> Tree:
    if t == LEAF:
        return s
    return (t[0], _graft_rightmost(t[1], s))


def tree_leaves(t: Tree) -> int:
    if t == LEAF:
        return 1
    return tree_leaves(t[0]) + tree_leaves(t[1])


def tree_to_parens(t: Tree) -> str:
    """Balanced-parenthesis form: a leaf is ``.``, a node ``(LR)``."""
    if t == LEAF:
        return "."
    return "(" + tree_to_parens(t[0]) + tree_to_parens(t[1]) + ")"
