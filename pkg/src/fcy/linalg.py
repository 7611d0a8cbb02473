"""Exact dense linear algebra over Q or GF(p).

Matrices are plain lists of rows.  Every routine takes an optional ``field``
(default :data:`QQ`) that knows how to coerce inputs; arithmetic itself goes
through the ordinary operators, so ``Fraction`` and :class:`ModP` share code.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, MalformedInput, NonSquareMatrix, ZeroDivisionInField


class RationalField:
    name = "q"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise MalformedInput(f"not a rational: {x!r}") from exc
        return Fraction(x)

    def fmt(self, x) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")


class ModP:
    """Element of GF(p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionInField("division by zero in GF(%d)" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionInField("division by zero in GF(%d)" % self.p)
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionInField("division by zero in GF(%d)" % self.p)
            return ModP(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise MalformedInput(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"
        self.characteristic = p
        self.zero = ModP(0, p)
        self.one = ModP(1, p)

    def __call__(self, x):
        if isinstance(x, ModP):
            if x.p != self.p:
                raise MalformedInput("mixing prime fields")
            return x
        if isinstance(x, str):
            x = QQ(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionInField(f"{x} has no image in GF({self.p})")
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModP(int(x), self.p)

    def fmt(self, x) -> str:
        # smallest representative in absolute value, written as p/q
        v = self(x).v
        if v > self.p // 2:
            v -= self.p
        return f"{v}/1"

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


QQ = RationalField()


def parse_field(spec: str):
    """``"q"`` or ``"fp:<p>"``."""
    spec = spec.strip().lower()
    if spec in ("q", "qq"):
        return QQ
    if spec.startswith("fp:"):
        try:
            return PrimeField(int(spec[3:]))
        except ValueError as exc:
            raise MalformedInput(f"bad field selector {spec!r}") from exc
    raise MalformedInput(f"bad field selector {spec!r}")


def _check_rect(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    cols = len(m[0])
    for row in m:
        if len(row) != cols:
            raise DimensionMismatch("ragged matrix")
    return cols


def _coerce(m, field):
    return [[field(x) for x in row] for row in m]


def identity(n: int, field=QQ):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def matmul(a, b, field=QQ):
    ca = _check_rect(a)
    cb = _check_rect(b)
    if ca != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{ca} by {len(b)}x{cb}")
    out = []
    for row in a:
        acc = [field.zero] * cb
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a, v, field=QQ):
    c = _check_rect(a)
    if c != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return [sum((x * y for x, y in zip(row, v) if x and y), field.zero) for row in a]


def transpose(m):
    cols = _check_rect(m)
    return [[row[j] for row in m] for j in range(cols)]


def _eliminate(m, field, ncols=None):
    """In-place reduced row echelon form; returns the pivot columns."""
    rows = len(m)
    if ncols is None:
        ncols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        inv = field.one / prow[c]
        if inv != field.one:
            prow = m[r] = [x * inv if x else x for x in prow]
        nz = [j for j in range(c, len(prow)) if prow[j]]
        for i in range(rows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def row_reduce(m, field=QQ):
    """Return ``(rref, rank, pivot_columns)``."""
    _check_rect(m)
    work = _coerce(m, field)
    pivots = _eliminate(work, field)
    return work, len(pivots), pivots


def rank(m, field=QQ) -> int:
    return row_reduce(m, field)[1]


def nullspace(m, field=QQ, ncols: Optional[int] = None):
    """Basis of {x : m x = 0}, one vector per free column."""
    cols = _check_rect(m) if m else (ncols or 0)
    if ncols is not None and m and cols != ncols:
        raise DimensionMismatch("column count mismatch")
    rref, _, pivots = row_reduce(m, field) if m else ([], 0, [])
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [field.zero] * cols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            if rref[r][free]:
                v[pc] = -rref[r][free]
        basis.append(v)
    return basis


def solve(a, b, field=QQ):
    """Solve ``a x = b``.

    Returns ``None`` when inconsistent, else ``(particular, kernel_basis)``.
    """
    cols = _check_rect(a)
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)} rows but right-hand side of length {len(b)}")
    aug = [[field(x) for x in row] + [field(y)] for row, y in zip(a, b)]
    pivots = _eliminate(aug, field, ncols=cols + 1)
    if pivots and pivots[-1] == cols:
        return None
    x = [field.zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][cols]
    pivset = set(pivots)
    kernel = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [field.zero] * cols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            if aug[r][free]:
                v[pc] = -aug[r][free]
        kernel.append(v)
    return x, kernel


def invert(m, field=QQ):
    n = len(m)
    cols = _check_rect(m)
    if n != cols:
        raise NonSquareMatrix(f"{n}x{cols} matrix has no inverse")
    aug = [[field(x) for x in row] + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(m)]
    pivots = _eliminate(aug, field, ncols=n)
    if len(pivots) < n:
        return None
    return [row[n:] for row in aug]
