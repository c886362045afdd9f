"""Pure sequence analytics on h-vectors.

Maxima are counted strictly: index i is a maximum when the value rises
into i (or i is the left end) and falls after it (or i is the right
end).  A plateau therefore contains no strict maximum; maximal plateaus
are counted separately.
"""
from __future__ import annotations

from math import comb


def validate_hvector(h, r: int | None = None) -> tuple[int, ...]:
    h = tuple(int(x) for x in h)
    if not h or h[0] != 1:
        raise ValueError("an h-vector starts with 1")
    if any(x < 1 for x in h):
        raise ValueError("h-vector entries are positive")
    if r is not None and len(h) > 1 and h[1] > r:
        raise ValueError(f"h_1 = {h[1]} exceeds the variable count {r}")
    return h


def parse_hvector(text: str) -> tuple[int, ...]:
    return validate_hvector(int(x) for x in text.split(","))


def format_hvector(h) -> str:
    return ",".join(str(x) for x in h)


def is_unimodal(h) -> bool:
    """True when the sequence never strictly rises after a strict fall."""
    h = tuple(h)
    fallen = False
    for a, b in zip(h, h[1:]):
        if b < a:
            fallen = True
        elif b > a and fallen:
            return False
    return True


def count_maxima(h) -> int:
    """Number of strict local maxima (plateaus contribute none)."""
    h = tuple(h)
    e = len(h) - 1
    count = 0
    for i in range(e + 1):
        left = i == 0 or h[i] > h[i - 1]
        right = i == e or h[i] > h[i + 1]
        if left and right:
            count += 1
    return count


def count_plateau_maxima(h) -> int:
    """Number of maximal runs of equal values (a strict maximum is a run of 1)."""
    h = tuple(h)
    count = 0
    i = 0
    while i < len(h):
        j = i
        while j + 1 < len(h) and h[j + 1] == h[i]:
            j += 1
        left = i == 0 or h[i - 1] < h[i]
        right = j == len(h) - 1 or h[j + 1] < h[i]
        if left and right:
            count += 1
        i = j + 1
    return count


def macaulay_rep(value: int, i: int) -> list[tuple[int, int]]:
    """Greedy i-th binomial expansion: value = sum C(a_j, j), a_i > ... decreasing."""
    if i < 1:
        raise ValueError("representation degree must be >= 1")
    if value < 0:
        raise ValueError("value must be non-negative")
    rep = []
    v, j = value, i
    while v > 0 and j >= 1:
        a = j
        while comb(a + 1, j) <= v:
            a += 1
        rep.append((a, j))
        v -= comb(a, j)
        j -= 1
    if v:
        raise ArithmeticError("binomial expansion failed")  # unreachable
    return rep


def macaulay_next_max(value: int, i: int) -> int:
    """Largest admissible h_{i+1} given h_i = value (Macaulay growth bound)."""
    return sum(comb(a + 1, j + 1) for a, j in macaulay_rep(value, i))


def is_o_sequence(h) -> bool:
    """h_0 = 1, entries non-negative, and growth within the Macaulay bound."""
    h = tuple(h)
    if not h or h[0] != 1:
        return False
    if any(x < 0 for x in h):
        return False
    for i in range(1, len(h) - 1):
        if h[i + 1] > macaulay_next_max(h[i], i):
            return False
    return True


def first_difference(h) -> tuple[int, ...]:
    h = tuple(h)
    return tuple(h[i] - (h[i - 1] if i else 0) for i in range(len(h)))


def is_differentiable(h) -> bool:
    """First difference of the first half is again an O-sequence."""
    h = tuple(h)
    e = len(h) - 1
    half = h[: e // 2 + 1]
    return is_o_sequence(first_difference(half))


def is_si_sequence(h) -> bool:
    """Symmetric with differentiable first half."""
    h = tuple(h)
    e = len(h) - 1
    if any(h[i] != h[e - i] for i in range(e + 1)):
        return False
    return is_differentiable(h)


def lemma1_predict(h, r: int) -> tuple[int, ...]:
    """h-vector after adding one generic top-degree form to the module.

    Entry i becomes min(h_i + C(r-1+e-i, e-i), C(r-1+i, i)).
    """
    h = validate_hvector(h, r)
    e = len(h) - 1
    out = [1]
    for i in range(1, e + 1):
        out.append(min(h[i] + comb(r - 1 + e - i, e - i), comb(r - 1 + i, i)))
    return tuple(out)


def lift_hvector(h, r_new: int) -> tuple[int, ...]:
    """h-vector after appending pure powers of r_new - 3 fresh variables."""
    h = validate_hvector(h)
    if len(h) > 1 and h[1] != 3:
        raise ValueError("lift applies to codimension 3 h-vectors")
    if r_new == 3:
        return h
    if r_new < 3:
        raise ValueError("target codimension must be at least 3")
    return (1, r_new) + tuple(x + r_new - 3 for x in h[2:])
