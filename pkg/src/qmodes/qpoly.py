"""Exact polynomials in q over arbitrary-precision rationals.

The deformed identities that hold for every q in (0, 1) are really
polynomial identities in q, so this module keeps a second, float-free route
next to the numeric one in :mod:`qmodes.qcore`.  Coefficients are
:class:`fractions.Fraction`, exponents are plain powers of q (the identities
themselves live in q^2, i.e. only even exponents occur, but the
representation does not enforce that), and equality of two constructions is
decided exactly.  Division is long division with an exactness assertion, so
a failed divisibility claim surfaces as an error instead of a rounded
answer.
"""

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "QPolynomial",
    "poly_q_number",
    "poly_q_factorial",
    "poly_q_multinomial",
    "poly_insertion_sum",
]

Rational = Union[int, Fraction]

_TERM_RE = re.compile(
    r"^(?:(?P<coeff>\d+(?:/\d+)?)\*?)?(?P<q>q(?:\^(?P<exp>\d+))?)?$"
)


class QPolynomial:
    """Polynomial in q with Fraction coefficients, kept in canonical form.

    Canonical means: no explicitly stored zero coefficients, all exponents
    nonnegative integers.  Instances are treated as immutable; all
    arithmetic returns new objects.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Rational] | None = None):
        clean: dict[int, Fraction] = {}
        for exponent, coefficient in (coeffs or {}).items():
            if exponent < 0 or exponent != int(exponent):
                raise ValueError(f"exponents must be nonnegative integers, got {exponent!r}")
            value = Fraction(coefficient)
            if value != 0:
                clean[int(exponent)] = value
        self._coeffs = clean

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "QPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: Rational = 1) -> "QPolynomial":
        return cls({exponent: coefficient})

    # -- inspection ---------------------------------------------------

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    @property
    def degree(self) -> int:
        """Largest exponent with nonzero coefficient; -1 for the zero polynomial."""
        return max(self._coeffs, default=-1)

    def coefficient(self, exponent: int) -> Fraction:
        return self._coeffs.get(exponent, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == QPolynomial({0: other})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"QPolynomial({self.render()!r})"

    # -- ring arithmetic ----------------------------------------------

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            return NotImplemented
        merged = dict(self._coeffs)
        for exponent, coefficient in other._coeffs.items():
            merged[exponent] = merged.get(exponent, Fraction(0)) + coefficient
        return QPolynomial(merged)

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            return NotImplemented
        merged = dict(self._coeffs)
        for exponent, coefficient in other._coeffs.items():
            merged[exponent] = merged.get(exponent, Fraction(0)) - coefficient
        return QPolynomial(merged)

    def __neg__(self) -> "QPolynomial":
        return QPolynomial({e: -c for e, c in self._coeffs.items()})

    def __mul__(self, other: "QPolynomial | Rational") -> "QPolynomial":
        if isinstance(other, (int, Fraction)):
            return QPolynomial({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, QPolynomial):
            return NotImplemented
        product: dict[int, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                exponent = e1 + e2
                product[exponent] = product.get(exponent, Fraction(0)) + c1 * c2
        return QPolynomial(product)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPolynomial":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = QPolynomial.one()
        for _ in range(n):
            result = result * self
        return result

    def divmod(self, other: "QPolynomial") -> tuple["QPolynomial", "QPolynomial"]:
        """Long division: returns (quotient, remainder) with exact coefficients."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        remainder = dict(self._coeffs)
        quotient: dict[int, Fraction] = {}
        d_deg = other.degree
        d_lead = other._coeffs[d_deg]
        while remainder and max(remainder) >= d_deg:
            r_deg = max(remainder)
            factor = remainder[r_deg] / d_lead
            shift = r_deg - d_deg
            quotient[shift] = quotient.get(shift, Fraction(0)) + factor
            for e, c in other._coeffs.items():
                target = e + shift
                updated = remainder.get(target, Fraction(0)) - factor * c
                if updated == 0:
                    remainder.pop(target, None)
                else:
                    remainder[target] = updated
        return QPolynomial(quotient), QPolynomial(remainder)

    def divide_exact(self, other: "QPolynomial") -> "QPolynomial":
        """Exact division; raises ValueError when ``other`` does not divide self."""
        quotient, remainder = self.divmod(other)
        if not remainder.is_zero():
            raise ValueError(
                f"{self.render()!r} is not divisible by {other.render()!r} "
                f"(remainder {remainder.render()!r})"
            )
        return quotient

    # -- evaluation ---------------------------------------------------

    def evaluate(self, q: Union[float, Fraction]) -> Union[float, Fraction]:
        """Evaluate at q by Horner's rule grouped in powers of q^2.

        A Fraction argument stays exact all the way through; a float argument
        produces an ordinary float.
        """
        even: dict[int, Fraction] = {}
        odd: dict[int, Fraction] = {}
        for e, c in self._coeffs.items():
            if e % 2 == 0:
                even[e // 2] = c
            else:
                odd[(e - 1) // 2] = c
        y = q * q

        def horner(table: dict[int, Fraction]):
            if not table:
                return q * 0  # zero of the right type
            acc = table[max(table)] * 1
            for k in range(max(table) - 1, -1, -1):
                acc = acc * y + table.get(k, 0)
            return acc

        result = horner(even) + q * horner(odd)
        if isinstance(q, Fraction):
            return Fraction(result)
        return float(result)

    # -- canonical text form -------------------------------------------

    def render(self) -> str:
        """Canonical text rendering, e.g. ``1 + 2*q^2 + q^4``.

        Terms appear in ascending exponent order; unit coefficients are
        omitted in front of powers of q; the zero polynomial renders as "0".
        """
        if not self._coeffs:
            return "0"
        pieces: list[str] = []
        for exponent in sorted(self._coeffs):
            coefficient = self._coeffs[exponent]
            sign = "-" if coefficient < 0 else "+"
            magnitude = -coefficient if coefficient < 0 else coefficient
            if exponent == 0:
                body = str(magnitude)
            else:
                power = "q" if exponent == 1 else f"q^{exponent}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    @classmethod
    def parse(cls, text: str) -> "QPolynomial":
        """Inverse of :meth:`render` (accepts any ordering of terms)."""
        stripped = text.strip()
        if stripped == "0":
            return cls.zero()
        coeffs: dict[int, Fraction] = {}
        sign = 1
        for token in stripped.split():
            if token == "+":
                sign = 1
                continue
            if token == "-":
                sign = -1
                continue
            if token.startswith("-"):
                sign = -1
                token = token[1:]
            elif token.startswith("+"):
                token = token[1:]
            match = _TERM_RE.match(token)
            if not token or match is None or (match.group("coeff") is None and match.group("q") is None):
                raise ValueError(f"cannot parse polynomial term {token!r}")
            coefficient = Fraction(match.group("coeff") or 1)
            exponent = int(match.group("exp") or 1) if match.group("q") else 0
            coeffs[exponent] = coeffs.get(exponent, Fraction(0)) + sign * coefficient
            sign = 1
        return cls(coeffs)


# ---------------------------------------------------------------------------
# Exact counterparts of the scalar q-objects


def poly_q_number(n: int) -> QPolynomial:
    """Bracket of a nonnegative integer as the polynomial 1 + q^2 + ... + q^{2(n-1)}."""
    if n < 0 or n != int(n):
        raise ValueError(f"bracket index must be a nonnegative integer, got {n!r}")
    return QPolynomial({2 * k: 1 for k in range(int(n))})


def poly_q_factorial(n: int) -> QPolynomial:
    """Product [1][2]...[n] as an exact polynomial."""
    if n < 0 or n != int(n):
        raise ValueError(f"factorial index must be a nonnegative integer, got {n!r}")
    result = QPolynomial.one()
    for k in range(1, int(n) + 1):
        result = result * poly_q_number(k)
    return result


def poly_q_multinomial(counts: Sequence[int]) -> QPolynomial:
    """[N]! / prod [n_k]! via exact long division.

    The divisibility is a theorem; the exactness assertion inside
    :meth:`QPolynomial.divide_exact` turns it into a runtime check.
    """
    counts = tuple(int(c) for c in counts)
    if not counts:
        raise ValueError("counts must be a nonempty sequence")
    if any(c < 0 for c in counts):
        raise ValueError(f"counts must be nonnegative, got {counts!r}")
    numerator = poly_q_factorial(sum(counts))
    denominator = QPolynomial.one()
    for c in counts:
        denominator = denominator * poly_q_factorial(c)
    return numerator.divide_exact(denominator)


def poly_insertion_sum(counts: Sequence[int], slot: int) -> QPolynomial:
    """Prefix-weighted bracket sum for inserting one extra particle.

    For occupancies (n_1, ..., n_m) and a slot i, this is

        sum_{j<i} q^{2(n_1+...+n_{j-1})} [n_j]
        + q^{2(n_1+...+n_{i-1})} [n_i + 1]
        + sum_{j>i} q^{2(n_1+...+n_{j-1}+1)} [n_j]

    which telescopes to the single bracket [N + 1], N = sum n_k.  Callers
    compare against ``poly_q_number(N + 1)`` to certify the identity.
    """
    counts = tuple(int(c) for c in counts)
    if not counts:
        raise ValueError("counts must be a nonempty sequence")
    if any(c < 0 for c in counts):
        raise ValueError(f"counts must be nonnegative, got {counts!r}")
    if not 1 <= slot <= len(counts):
        raise ValueError(f"slot must be in 1..{len(counts)}, got {slot}")
    total = QPolynomial.zero()
    prefix = 0
    for j, c in enumerate(counts, start=1):
        if j < slot:
            term = QPolynomial.monomial(2 * prefix) * poly_q_number(c)
        elif j == slot:
            term = QPolynomial.monomial(2 * prefix) * poly_q_number(c + 1)
        else:
            term = QPolynomial.monomial(2 * (prefix + 1)) * poly_q_number(c)
        total = total + term
        prefix += c
    return total
