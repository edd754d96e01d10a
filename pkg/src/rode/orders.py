"""Totally ordered sentinels for Laurent orders and operator orders.

Orders of zero series/operators are +inf or -inf depending on context.
The sentinels compare correctly against ints and each other, so min/max
work on mixed collections; they are dedicated objects, never large ints.
"""


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, int):
            return self.sign < 0
        return NotImplemented

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign > other.sign
        if isinstance(other, int):
            return self.sign > 0
        return NotImplemented

    def __ge__(self, other):
        return self == other or self > other

    def __eq__(self, other):
        return isinstance(other, _Infinity) and self.sign == other.sign

    def __hash__(self):
        return hash(("order-infinity", self.sign))

    def __neg__(self):
        return NEG_INF if self.sign > 0 else POS_INF

    def __add__(self, other):
        # +inf + finite = +inf; opposite-sign sentinel sums are undefined
        if isinstance(other, int):
            return self
        if isinstance(other, _Infinity) and other.sign == self.sign:
            return self
        raise ArithmeticError("undefined sum of opposite order sentinels")

    __radd__ = __add__

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"


POS_INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def is_finite(order):
    return isinstance(order, int)
