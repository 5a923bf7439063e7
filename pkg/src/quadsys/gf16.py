"""GF(16) arithmetic with x^4 + x + 1 as the defining polynomial.

Elements are 4-bit integers c3 c2 c1 c0 standing for
c3*x^3 + c2*x^2 + c1*x + c0 over GF(2).  ALPHA (the class of x) is
primitive for this polynomial, so the multiplicative group is
{ALPHA^0, ..., ALPHA^14}; a 15-entry log/antilog table drives mul and inv.
Addition is plain xor.  Text form: "0", "1", "a^k" for k = 1..14.
"""

from __future__ import annotations

from .core import ParameterError

ALPHA = 0b0010
_REDUCER = 0b10011  # x^4 + x + 1


def add(a: int, b: int) -> int:
    return a ^ b


def _mul_slow(a: int, b: int) -> int:
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & 0b10000:
            a ^= _REDUCER
    return acc


def _tables() -> tuple[list[int], list[int]]:
    exp = [1]
    for _ in range(14):
        exp.append(_mul_slow(exp[-1], ALPHA))
    log = [0] * 16
    for k, val in enumerate(exp):
        log[val] = k
    return exp, log


_EXP, _LOG = _tables()


def alpha_power(k: int) -> int:
    return _EXP[k % 15]


def log(a: int) -> int:
    if a == 0:
        raise ParameterError("log(0) is undefined")
    return _LOG[a]


def mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _EXP[(_LOG[a] + _LOG[b]) % 15]


def pow_(a: int, n: int) -> int:
    if a == 0:
        if n <= 0:
            raise ParameterError("0 has no inverse")
        return 0
    return _EXP[(_LOG[a] * n) % 15]


def inv(a: int) -> int:
    return pow_(a, -1)


def text(a: int) -> str:
    if a == 0:
        return "0"
    k = _LOG[a]
    return "1" if k == 0 else f"a^{k}"


def elements() -> range:
    return range(16)
