"""
Exact arithmetic in the cyclotomic field Q(ζ), ζ = exp(iπ/4).

Every entry of the Ising braid matrices lives here:
  - i = ζ²
  - √2 = ζ − ζ³, so 1/√2 = (ζ − ζ³)/2
  - e^{iπ/4} = ζ

Elements are stored in the power basis {1, ζ, ζ², ζ³} with the single
reduction rule ζ⁴ = −1, which makes the representation unique.

Matrices keep one integer coefficient array per basis power plus a common
positive denominator (numpy, int64 while values are small, Python ints past
that), always reduced so that equal matrices have identical storage.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

import numpy as np

Scalar = Union[int, Fraction, "CycloNumber"]

# complex values of 1, ζ, ζ², ζ³
ZETA_POWERS = np.exp(1j * np.pi / 4 * np.arange(4))

# products below this bound are computed in int64
_INT64_SAFE = 2**62


class CycloNumber:
    """c0 + c1·ζ + c2·ζ² + c3·ζ³ with rational coefficients."""

    def __init__(self, c0: int | Fraction = 0, c1: int | Fraction = 0,
                 c2: int | Fraction = 0, c3: int | Fraction = 0) -> None:
        self._coef: tuple[Fraction, Fraction, Fraction, Fraction] = (
            Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3)
        )

    @property
    def c0(self) -> Fraction:
        return self._coef[0]

    @property
    def c1(self) -> Fraction:
        return self._coef[1]

    @property
    def c2(self) -> Fraction:
        return self._coef[2]

    @property
    def c3(self) -> Fraction:
        return self._coef[3]

    @property
    def coef(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._coef

    def __repr__(self) -> str:
        return "CycloNumber({}, {}, {}, {})".format(*(str(c) for c in self._coef))

    def __str__(self) -> str:
        terms = []
        for power, c in enumerate(self._coef):
            if c == 0:
                continue
            base = "" if power == 0 else ("ζ" if power == 1 else f"ζ^{power}")
            if base and c == 1:
                terms.append(f"+{base}")
            elif base and c == -1:
                terms.append(f"-{base}")
            else:
                terms.append(f"{'+' if c > 0 else ''}{c}{base}")
        if not terms:
            return "0"
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text

    @classmethod
    def from_int(cls, x: int | Fraction) -> CycloNumber:
        return cls(x, 0, 0, 0)

    @classmethod
    def zeta_power(cls, j: int) -> CycloNumber:
        """ζʲ for any integer j."""
        j %= 8
        coef = [0, 0, 0, 0]
        if j < 4:
            coef[j] = 1
        else:
            coef[j - 4] = -1
        return cls(*coef)

    @classmethod
    def coerce(cls, x: Scalar) -> CycloNumber:
        if isinstance(x, CycloNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.from_int(x)
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.from_int(other)
        if isinstance(other, CycloNumber):
            return self._coef == other.coef
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coef)

    def __add__(self, other: Scalar) -> CycloNumber:
        if not isinstance(other, (int, Fraction, CycloNumber)):
            return NotImplemented
        other = self.coerce(other)
        return CycloNumber(*(a + b for a, b in zip(self._coef, other.coef)))

    def __radd__(self, other: Scalar) -> CycloNumber:
        return self + other

    def __neg__(self) -> CycloNumber:
        return CycloNumber(*(-c for c in self._coef))

    def __sub__(self, other: Scalar) -> CycloNumber:
        if not isinstance(other, (int, Fraction, CycloNumber)):
            return NotImplemented
        return self + (-self.coerce(other))

    def __rsub__(self, other: Scalar) -> CycloNumber:
        return (-self) + other

    def __mul__(self, other: Scalar) -> CycloNumber:
        if isinstance(other, (int, Fraction)):
            return CycloNumber(*(c * other for c in self._coef))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        new_coef = [Fraction(0)] * 4
        for i, a in enumerate(self._coef):
            if a == 0:
                continue
            for j, b in enumerate(other.coef):
                if b == 0:
                    continue
                if i + j < 4:
                    new_coef[i + j] += a * b
                else:
                    new_coef[i + j - 4] -= a * b
        return CycloNumber(*new_coef)

    def __rmul__(self, other: Scalar) -> CycloNumber:
        return self * other

    def __truediv__(self, other: Scalar) -> CycloNumber:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a cyclotomic number by zero")
            return CycloNumber(*(c / other for c in self._coef))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: Scalar) -> CycloNumber:
        return self.coerce(other) * self.inv()

    def __pow__(self, n: int) -> CycloNumber:
        if n < 0:
            return self.inv() ** -n
        result = ONE
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self._coef)

    def conj(self) -> CycloNumber:
        """Complex conjugation, ζ ↦ ζ⁷ = −ζ³."""
        c0, c1, c2, c3 = self._coef
        return CycloNumber(c0, -c3, -c2, -c1)

    def galois(self, k: int) -> CycloNumber:
        """The field automorphism ζ ↦ ζᵏ (k odd)."""
        if k % 2 == 0:
            raise ValueError(f"Galois automorphisms need an odd exponent, got {k}")
        result = ZERO
        for power, c in enumerate(self._coef):
            if c != 0:
                result = result + CycloNumber.zeta_power(power * k) * c
        return result

    @cached_property
    def _others(self) -> CycloNumber:
        return self.galois(3) * self.galois(5) * self.galois(7)

    def norm(self) -> Fraction:
        """Field norm: the (rational) product of all four conjugates."""
        product = self * self._others
        return product.c0

    def inv(self) -> CycloNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(ζ8)")
        return self._others / self.norm()

    def to_complex(self) -> complex:
        return complex(sum(float(c) * z for c, z in zip(self._coef, ZETA_POWERS)))

    def serialize(self) -> list[int]:
        """[n0, d0, n1, d1, n2, d2, n3, d3] in lowest terms."""
        out: list[int] = []
        for c in self._coef:
            out.extend((c.numerator, c.denominator))
        return out

    @classmethod
    def deserialize(cls, data: Sequence[int]) -> CycloNumber:
        if len(data) != 8:
            raise ValueError(f"expected 8 integers for a cyclotomic entry, got {len(data)}")
        if any(not isinstance(v, int) or isinstance(v, bool) for v in data):
            raise ValueError(f"cyclotomic entry must hold integers only: {data!r}")
        if any(data[k] == 0 for k in (1, 3, 5, 7)):
            raise ValueError(f"zero denominator in cyclotomic entry {data!r}")
        return cls(*(Fraction(data[k], data[k + 1]) for k in (0, 2, 4, 6)))

    def key(self) -> tuple[int, ...]:
        return tuple(self.serialize())


ZERO = CycloNumber()
ONE = CycloNumber(1)
ZETA = CycloNumber(0, 1)
I = CycloNumber(0, 0, 1)
SQRT2 = CycloNumber(0, 1, 0, -1)
INV_SQRT2 = CycloNumber(0, Fraction(1, 2), 0, Fraction(-1, 2))


def _integer_vector(c: CycloNumber) -> tuple[list[int], int]:
    den = lcm(*(x.denominator for x in c.coef))
    return [int(x * den) for x in c.coef], den


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)) for v in a.ravel())
    return int(np.abs(a).max())


def _convolve(a: np.ndarray, b: np.ndarray, product, terms: int) -> np.ndarray:
    """Σ ± product(a_i, b_j) collected by power of ζ, with ζ⁴ = −1."""
    if a.dtype == object or b.dtype == object or (
        _max_abs(a) * _max_abs(b) * terms * 4 >= _INT64_SAFE
    ):
        a = a.astype(object)
        b = b.astype(object)
    a_live = [i for i in range(4) if a[i].any()]
    b_live = [j for j in range(4) if b[j].any()]
    out: list[Optional[np.ndarray]] = [None] * 4
    for i in a_live:
        for j in b_live:
            p = product(a[i], b[j])
            m = i + j
            if m >= 4:
                m -= 4
                p = -p
            out[m] = p if out[m] is None else out[m] + p
    ref = next((o for o in out if o is not None), None)
    if ref is None:
        ref = product(a[0], b[0])
    return np.stack([np.zeros_like(ref) if o is None else o for o in out])


def _normalize(coeffs: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    if den <= 0:
        raise ValueError(f"matrix denominator must be positive, got {den}")
    if den != 1:
        if coeffs.dtype == object:
            g = reduce(gcd, (int(v) for v in coeffs.ravel()), den)
        else:
            g = gcd(int(np.gcd.reduce(coeffs.ravel())), den) if coeffs.size else den
        if g > 1:
            coeffs = coeffs // g
            den //= g
    if coeffs.dtype == object and _max_abs(coeffs) < _INT64_SAFE:
        coeffs = coeffs.astype(np.int64)
    elif coeffs.dtype != object and coeffs.dtype != np.int64:
        coeffs = coeffs.astype(np.int64)
    return coeffs, den


class CMatrix:
    """
    Square matrix over Q(ζ), immutable.

    Stored as integer coefficients of shape (4, dim, dim) over a shared
    positive denominator: M = (C₀ + C₁ζ + C₂ζ² + C₃ζ³) / den.
    """

    def __init__(self, coeffs: np.ndarray, den: int = 1) -> None:
        coeffs = np.asarray(coeffs)
        if coeffs.ndim != 3 or coeffs.shape[0] != 4 or coeffs.shape[1] != coeffs.shape[2]:
            raise ValueError(f"expected coefficient array of shape (4, d, d), got {coeffs.shape}")
        if coeffs.shape[1] == 0:
            raise ValueError("matrix dimension must be positive")
        coeffs, den = _normalize(coeffs, int(den))
        coeffs.setflags(write=False)
        self._coeffs = coeffs
        self._den = den

    @property
    def dim(self) -> int:
        return self._coeffs.shape[1]

    @property
    def den(self) -> int:
        return self._den

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence[Scalar]]) -> CMatrix:
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("matrix entries must form a non-empty square array")
        cells = [[CycloNumber.coerce(x) for x in row] for row in rows]
        den = lcm(*(c.denominator for row in cells for x in row for c in x.coef))
        coeffs = np.zeros((4, d, d), dtype=object)
        for i, row in enumerate(cells):
            for j, x in enumerate(row):
                for m, c in enumerate(x.coef):
                    coeffs[m, i, j] = int(c * den)
        return cls(coeffs, den)

    @classmethod
    def diag(cls, values: Iterable[Scalar]) -> CMatrix:
        values = [CycloNumber.coerce(v) for v in values]
        d = len(values)
        return cls.from_entries([[values[i] if i == j else 0 for j in range(d)] for i in range(d)])

    @staticmethod
    @lru_cache(maxsize=None)
    def identity(dim: int) -> CMatrix:
        coeffs = np.zeros((4, dim, dim), dtype=np.int64)
        coeffs[0] = np.eye(dim, dtype=np.int64)
        return CMatrix(coeffs, 1)

    @classmethod
    def zeros(cls, dim: int) -> CMatrix:
        return cls(np.zeros((4, dim, dim), dtype=np.int64), 1)

    @classmethod
    def permutation(cls, images: Sequence[int]) -> CMatrix:
        """Matrix sending basis vector j to basis vector images[j]."""
        d = len(images)
        if sorted(images) != list(range(d)):
            raise ValueError(f"not a permutation of 0..{d - 1}: {list(images)}")
        coeffs = np.zeros((4, d, d), dtype=np.int64)
        for j, i in enumerate(images):
            coeffs[0, i, j] = 1
        return cls(coeffs, 1)

    def entry(self, i: int, j: int) -> CycloNumber:
        return CycloNumber(*(Fraction(int(self._coeffs[m, i, j]), self._den) for m in range(4)))

    def __getitem__(self, index: tuple[int, int]) -> CycloNumber:
        i, j = index
        return self.entry(i, j)

    @cached_property
    def entries(self) -> tuple[tuple[CycloNumber, ...], ...]:
        return tuple(tuple(self.entry(i, j) for j in range(self.dim)) for i in range(self.dim))

    @cached_property
    def key(self) -> tuple:
        """Canonical exact serialization; equal matrices have equal keys."""
        if self._coeffs.dtype == object:
            body = tuple(int(v) for v in self._coeffs.ravel())
        else:
            body = self._coeffs.tobytes()
        return (self.dim, self._den, body)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in self.entries]
        return f"CMatrix(dim={self.dim}, [" + ", ".join(rows) + "])"

    def __matmul__(self, other: CMatrix) -> CMatrix:
        return mat_mul(self, other)

    def _check_same_dim(self, other: CMatrix) -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: CMatrix) -> CMatrix:
        self._check_same_dim(other)
        den = lcm(self._den, other.den)
        a = self._coeffs.astype(object) * (den // self._den)
        b = other.coeffs.astype(object) * (den // other.den)
        return CMatrix(a + b, den)

    def __neg__(self) -> CMatrix:
        return CMatrix(-self._coeffs, self._den)

    def __sub__(self, other: CMatrix) -> CMatrix:
        return self + (-other)

    def scale(self, c: Scalar) -> CMatrix:
        """c·M for a field scalar c."""
        vec, den = _integer_vector(CycloNumber.coerce(c))
        s = np.array(vec, dtype=object).reshape(4, 1, 1)
        coeffs = _convolve(s, self._coeffs, np.multiply, 1)
        return CMatrix(coeffs, den * self._den)

    def dagger(self) -> CMatrix:
        return mat_dagger(self)

    def power(self, n: int) -> CMatrix:
        if n < 0:
            return self.inverse().power(-n)
        result = CMatrix.identity(self.dim)
        base = self
        while n > 0:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def inverse(self) -> CMatrix:
        """Inverse of a unitary matrix (its conjugate transpose)."""
        inv = self.dagger()
        if self @ inv != CMatrix.identity(self.dim):
            raise ValueError("inverse is only available for unitary matrices")
        return inv

    def is_unitary(self) -> bool:
        return self @ self.dagger() == CMatrix.identity(self.dim)

    def is_zero(self) -> bool:
        return not self._coeffs.any()

    def trace(self) -> CycloNumber:
        return sum((self.entry(i, i) for i in range(self.dim)), ZERO)

    def nonzero_index(self) -> Optional[tuple[int, int]]:
        """First nonzero position in row-major order."""
        flat = np.flatnonzero(self._coeffs.any(axis=0).ravel())
        if flat.size == 0:
            return None
        return divmod(int(flat[0]), self.dim)

    @cached_property
    def phase_key(self) -> tuple:
        """
        Key shared by all unit-phase multiples of a matrix.

        The first nonzero entry a is rotated onto the positive real axis
        (M ↦ conj(a)·M). For matrices of equal norm, such as unitaries,
        the keys coincide exactly when the matrices differ by a unit phase.
        """
        index = self.nonzero_index()
        if index is None:
            return self.key
        return self.scale(self.entry(*index).conj()).key

    def rank(self) -> int:
        """Exact rank over Q(ζ) by Gaussian elimination."""
        rows = [list(row) for row in self.entries]
        rank = 0
        for col in range(self.dim):
            pivot = next((r for r in range(rank, self.dim) if not rows[r][col].is_zero()), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = rows[rank][col].inv()
            for r in range(self.dim):
                if r == rank or rows[r][col].is_zero():
                    continue
                factor = rows[r][col] * inv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    def to_complex(self) -> np.ndarray:
        """Floating embedding at ζ = exp(iπ/4); read-only use by the oracle."""
        values = np.tensordot(ZETA_POWERS, self._coeffs.astype(float), axes=(0, 0))
        return values / self._den


def mat_mul(a: CMatrix, b: CMatrix) -> CMatrix:
    if a.dim != b.dim:
        raise ValueError(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    coeffs = _convolve(a.coeffs, b.coeffs, np.matmul, a.dim)
    return CMatrix(coeffs, a.den * b.den)


def mat_dagger(a: CMatrix) -> CMatrix:
    c = a.coeffs
    coeffs = np.stack([c[0].T, -c[3].T, -c[2].T, -c[1].T])
    return CMatrix(coeffs, a.den)


def mat_tensor(a: CMatrix, b: CMatrix) -> CMatrix:
    """Kronecker product, first factor most significant."""
    coeffs = _convolve(a.coeffs, b.coeffs, np.kron, 1)
    return CMatrix(coeffs, a.den * b.den)


def tensor_all(factors: Sequence[CMatrix]) -> CMatrix:
    if not factors:
        raise ValueError("need at least one tensor factor")
    return reduce(mat_tensor, factors)


def equal_up_to_phase(a: CMatrix, b: CMatrix) -> Optional[CycloNumber]:
    """
    λ with a = λ·b for a unit-modulus λ in the field, or None.

    λ is read off the first nonzero entry of b and then verified on every
    entry.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a == b:
        return ONE
    index = b.nonzero_index()
    if index is None:
        return None
    lhs = a.entry(*index)
    if lhs.is_zero():
        return None
    lam = lhs / b.entry(*index)
    if lam * lam.conj() != ONE:
        return None
    if b.scale(lam) == a:
        return lam
    return None


# ---------------------------------------------------------
# JSON matrix format
# ---------------------------------------------------------
def matrix_to_json(m: CMatrix) -> dict:
    return {
        "dim": m.dim,
        "entries": [[x.serialize() for x in row] for row in m.entries],
    }


def matrix_from_json(data: dict) -> CMatrix:
    if not isinstance(data, dict) or "dim" not in data or "entries" not in data:
        raise ValueError("matrix JSON needs 'dim' and 'entries'")
    dim = data["dim"]
    rows = data["entries"]
    if not isinstance(dim, int) or dim <= 0:
        raise ValueError(f"invalid matrix dimension {dim!r}")
    if len(rows) != dim or any(len(row) != dim for row in rows):
        raise ValueError(f"entries do not form a {dim}x{dim} array")
    return CMatrix.from_entries([[CycloNumber.deserialize(x) for x in row] for row in rows])


def load_matrix_file(path: str) -> CMatrix:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path} is not valid JSON: {exc}")
    return matrix_from_json(data)
