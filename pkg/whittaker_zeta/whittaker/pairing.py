"""Invariant pairings on the K2-type spaces V_lambda.

Over R, V_lambda has the basis v_{lambda,q} (q in Q_lambda) and
<v_{lambda,q'}, v_{lambda,q}> = delta_{0,q+q'}. Over C the pairing is between
V_lambda and its contragredient V_{lambda~}, lambda~ = (-lambda2, -lambda1).
"""

from fractions import Fraction

from whittaker_zeta.errors import FieldMismatch, InvalidIndex
from whittaker_zeta.gammakernel import binom
from whittaker_zeta.models import FieldTag


def real_indices(ktype: tuple[int, int]) -> tuple[int, ...]:
    """Q_lambda for an O(2)-type lambda = (lambda1, lambda2)."""
    check_real_ktype(ktype)
    return (0,) if ktype[0] == 0 else (ktype[0], -ktype[0])


def complex_indices(ktype: tuple[int, int]) -> tuple[int, ...]:
    """Q_lambda = {0, ..., lambda1 - lambda2} for a U(2)-type."""
    check_complex_ktype(ktype)
    return tuple(range(ktype[0] - ktype[1] + 1))


def check_real_ktype(ktype: tuple[int, int]) -> None:
    l1, l2 = ktype
    if l1 < 0 or l2 not in (0, 1) or (l1 > 0 and l2 != 0):
        raise InvalidIndex(f"{ktype} is not an O(2)-type label")


def check_complex_ktype(ktype: tuple[int, int]) -> None:
    if ktype[0] < ktype[1]:
        raise InvalidIndex(f"{ktype} is not a U(2)-type label")


def dual_ktype(ktype: tuple[int, int]) -> tuple[int, int]:
    """lambda~ = (-lambda2, -lambda1)."""
    return (-ktype[1], -ktype[0])


def ktype_dim(field: FieldTag, ktype: tuple[int, int]) -> int:
    if field == "R":
        return len(real_indices(ktype))
    return len(complex_indices(ktype))


def pairing(field: FieldTag, ktype: tuple[int, int], q: int, q2: int) -> Fraction:
    """<v_{lambda,q}, v'_{q2}> as an exact rational.

    Over R both vectors lie in V_lambda; over C the second lies in
    V_{lambda~}.
    """
    if field == "R":
        indices = real_indices(ktype)
        if q not in indices or q2 not in indices:
            raise InvalidIndex(f"q={q}, q'={q2} not in Q_lambda={indices}")
        return Fraction(1 if q + q2 == 0 else 0)
    if field != "C":
        raise FieldMismatch(f"unknown field {field!r}")
    n = ktype[0] - ktype[1]
    check_complex_ktype(ktype)
    if not (0 <= q <= n and 0 <= q2 <= n):
        raise InvalidIndex(f"q={q}, q'={q2} outside 0..{n}")
    if q + q2 != n:
        return Fraction(0)
    return Fraction((-1) ** ((ktype[0] - q) % 2), binom(n, q))
