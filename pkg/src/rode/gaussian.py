"""Exact arithmetic in Q(i), the Gaussian rationals.

Values are pairs of python Fractions, so every operation is exact and
results are automatically in lowest terms with positive denominators.
The canonical string form is "p/q" for real values and "p/q+p'/q'i"
with an explicit sign for complex ones (denominators of 1 are omitted).
"""

from __future__ import annotations

from fractions import Fraction


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return None


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @property
    def is_zero(self):
        return not self.re and not self.im

    @property
    def is_real(self):
        return not self.im

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2 = re^2 + im^2, an ordinary rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        n = self.norm2()
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def bitsize(self) -> int:
        """Total bit length of all numerators/denominators; pivot tie-break."""
        return (
            self.re.numerator.bit_length()
            + self.re.denominator.bit_length()
            + self.im.numerator.bit_length()
            + self.im.denominator.bit_length()
        )

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse the canonical string form (and tolerant variants like "i",
        "-3i", "1-i")."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty Gaussian rational literal")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        # find the sign separating real and imaginary parts (not leading,
        # not an exponent -- plain fractions only)
        split = -1
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-":
                split = k
                break
        if split == -1:
            re_part, im_part = "0", body or "1"
        else:
            re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return cls(Fraction(re_part), Fraction(im_part))

    def __str__(self):
        if self.is_real:
            return _frac_str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{_frac_str(self.re)}{sign}{_frac_str(abs(self.im))}i"

    def __repr__(self):
        return f"GR({self})"


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(re, im=0) -> GaussianRational:
    """Shorthand constructor; accepts ints, Fractions and "p/q" strings."""
    if isinstance(re, str):
        base = GaussianRational.parse(re)
        if im:
            base = base + GaussianRational(0, Fraction(im))
        return base
    return GaussianRational(Fraction(re), Fraction(im))
