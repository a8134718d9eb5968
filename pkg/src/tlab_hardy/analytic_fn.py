"""
Analytic test functions on the closed unit disc.

Every function is a polynomial ``f(z) = a_0 + a_1 z + ... + a_N z^N`` held as
a :class:`TaylorPoly`. For polynomials the Taylor coefficients coincide with
the Fourier coefficients of the boundary function, so ``f.coeffs[k]`` is
both ``a_k`` and ``f^(k)``.

Function specs
--------------
Command-line arguments and reports name functions by spec strings:

``poly:c0,c1,...``
    Explicit coefficients, each a Python complex literal such as ``1``,
    ``-0.5``, ``2j`` or ``1+2j`` (no spaces inside a literal).
    ``poly:`` with an empty list is the zero polynomial.
``logfam:N``
    The partial sum ``z + z^2/2 + ... + z^N/N`` (see `make_log_family`).
``random:degree,seed``
    The seeded Gaussian polynomial of `random_poly`.

Examples
--------
>>> f = TaylorPoly((1, 2, 3))
>>> eval(f, 0.5)
(2.75+0j)
>>> derivative(TaylorPoly((0, 0, 1))).coeffs
(0j, (2+0j))
>>> from_spec("logfam:2").degree
2
"""
from __future__ import annotations

import cmath
import dataclasses
import math
import typing as t
from collections import abc

import numpy as np
import numpy.typing as npt

from tlab_hardy import errors

ComplexArray = npt.NDArray[np.complex128]
FloatArray = npt.NDArray[np.float64]

DISC_TOLERANCE = 1e-12
"""Points with ``|z| <= 1 + DISC_TOLERANCE`` count as inside the closed disc."""
UNIT_TOLERANCE = 1e-12


@dataclasses.dataclass(frozen=True)
class TaylorPoly:
    """
    An analytic polynomial given by its Taylor coefficients.

    Trailing zero coefficients are trimmed on construction, so equal
    polynomials compare and hash equal. The zero polynomial has no
    coefficients and its degree is None.

    Examples
    --------
    >>> TaylorPoly((1, 0, 0)).coeffs
    ((1+0j),)
    >>> TaylorPoly(()).degree is None
    True
    """

    coeffs: tuple[complex, ...] = ()
    """Coefficients a_0, ..., a_N."""
    label: str | None = dataclasses.field(default=None, compare=False)
    """Spec string the polynomial was built from, if any."""

    def __post_init__(self) -> None:
        coeffs = [complex(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_array(
        cls, values: abc.Iterable[complex] | npt.ArrayLike, label: str | None = None
    ) -> TaylorPoly:
        array = np.asarray(values, dtype=np.complex128).ravel()
        return cls(tuple(complex(c) for c in array), label=label)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def array(self) -> ComplexArray:
        """A fresh complex array of the coefficients."""
        return np.array(self.coeffs, dtype=np.complex128)

    def padded(self, size: int) -> ComplexArray:
        """
        Coefficients zero-padded (or truncated) to ``size`` entries.
        """
        out = np.zeros(size, dtype=np.complex128)
        n = min(size, len(self.coeffs))
        out[:n] = self.coeffs[:n]
        return out

    @property
    def spec(self) -> str:
        """
        A spec string denoting the polynomial.

        The label is returned when present; otherwise the coefficients are
        written as shortest round-trip complex literals.
        """
        if self.label is not None:
            return self.label
        return "poly:" + ",".join(_format_complex(c) for c in self.coeffs)

    def is_constant(self) -> bool:
        return self.degree is None or self.degree == 0

    def __add__(self, other: TaylorPoly | complex) -> TaylorPoly:
        if isinstance(other, TaylorPoly):
            size = max(len(self.coeffs), len(other.coeffs))
            return TaylorPoly.from_array(self.padded(size) + other.padded(size))
        coeffs = list(self.coeffs) or [0j]
        coeffs[0] += complex(other)
        return TaylorPoly(tuple(coeffs))

    __radd__ = __add__

    def __mul__(self, scalar: complex) -> TaylorPoly:
        c = complex(scalar)
        return TaylorPoly(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> TaylorPoly:
        return self * -1

    def __sub__(self, other: TaylorPoly | complex) -> TaylorPoly:
        return self + (-other)


ZERO = TaylorPoly(())


@dataclasses.dataclass(frozen=True)
class UnitComplex:
    """
    A point of the unit circle T.

    Both the complex value and an angle are stored. Building from a value
    keeps the value exact (``UnitComplex.from_value(1j).value == 1j``), which
    keeps rotations by quarter turns exact.
    """

    value: complex
    angle: float
    """Angle in radians."""

    def __post_init__(self) -> None:
        if abs(abs(self.value) - 1.0) > UNIT_TOLERANCE:
            raise errors.DomainError(f"{self.value} is not on the unit circle")
        if abs(self.value - cmath.exp(1j * self.angle)) > UNIT_TOLERANCE:
            raise errors.DomainError(
                f"angle {self.angle} does not match value {self.value}"
            )

    @classmethod
    def from_angle(cls, angle: float) -> UnitComplex:
        return cls(cmath.exp(1j * angle), float(angle))

    @classmethod
    def from_value(cls, value: complex) -> UnitComplex:
        value = complex(value)
        return cls(value, cmath.phase(value))

    @classmethod
    def one(cls) -> UnitComplex:
        return cls(1 + 0j, 0.0)

    def conjugate(self) -> UnitComplex:
        return UnitComplex(self.value.conjugate(), -self.angle)

    def __mul__(self, other: UnitComplex) -> UnitComplex:
        return UnitComplex(self.value * other.value, self.angle + other.angle)


def equispaced_angles(n: int, offset: float = 0.0) -> FloatArray:
    """
    The angles ``offset + 2*pi*j/n`` for ``j = 0, ..., n-1``.
    """
    if n < 1:
        raise errors.DomainError(f"grid size must be positive, got {n}")
    return offset + 2.0 * np.pi * np.arange(n) / n


def eta_grid(n: int) -> list[UnitComplex]:
    """
    ``n`` equispaced points of T starting at 1.
    """
    return [UnitComplex.from_angle(float(a)) for a in equispaced_angles(n)]


def _check_disc(modulus: float) -> None:
    if modulus > 1.0 + DISC_TOLERANCE:
        raise errors.DomainError(
            f"|z| = {modulus} lies outside the closed unit disc"
        )


def eval(f: TaylorPoly, z: complex) -> complex:
    """
    Evaluates a polynomial by Horner's scheme.

    Parameters
    ----------
    f : tlab_hardy.analytic_fn.TaylorPoly
        The polynomial.
    z : complex
        A point of the closed unit disc.

    Returns
    -------
    complex
        ``f(z)``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``|z| > 1 + DISC_TOLERANCE``.
    """
    z = complex(z)
    _check_disc(abs(z))
    acc = 0j
    for a in reversed(f.coeffs):
        acc = acc * z + a
    return acc


def eval_many(f: TaylorPoly, z: npt.ArrayLike) -> ComplexArray:
    """
    Evaluates a polynomial at an array of points.

    The summation order is the one of `eval`, applied elementwise.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If any point lies outside the closed disc.
    """
    points = np.asarray(z, dtype=np.complex128)
    if points.size:
        _check_disc(float(np.max(np.abs(points))))
    acc = np.zeros_like(points)
    for a in reversed(f.coeffs):
        acc = acc * points + a
    return acc


def derivative(f: TaylorPoly) -> TaylorPoly:
    return TaylorPoly(tuple(k * a for k, a in enumerate(f.coeffs) if k >= 1))


def rotate(f: TaylorPoly, eta: UnitComplex) -> TaylorPoly:
    """
    Returns ``g`` with ``g(z) = f(z * eta)``.

    The powers of eta are built by repeated multiplication, so the
    coefficient ``a_k * eta**k`` is exact whenever eta is a quarter turn.
    """
    out = []
    power = 1 + 0j
    for a in f.coeffs:
        out.append(a * power)
        power *= eta.value
    return TaylorPoly(tuple(out))


def boundary_grid(n: int, eta: UnitComplex | None = None) -> ComplexArray:
    """
    The points ``exp(2*pi*i*j/n) * eta`` for ``j = 0, ..., n-1``.
    """
    grid = np.exp(1j * equispaced_angles(n))
    if eta is not None:
        grid = grid * eta.value
    return grid


def boundary_samples(
    f: TaylorPoly, n: int, eta: UnitComplex | None = None
) -> ComplexArray:
    """
    Samples ``f(exp(2*pi*i*j/n) * eta)`` on the uniform boundary grid.

    Parameters
    ----------
    f : tlab_hardy.analytic_fn.TaylorPoly
        The polynomial.
    n : int
        Number of grid points. Powers of two keep FFT-based consumers fast.
    eta : tlab_hardy.analytic_fn.UnitComplex | None
        Rotation of the grid. None means ``eta = 1``.

    Returns
    -------
    numpy.ndarray
        ``n`` complex samples.
    """
    return eval_many(f, boundary_grid(n, eta))


def boundary_zeros(f: TaylorPoly, band: float = 0.25) -> list[tuple[float, float]]:
    """
    Zeros of a polynomial lying close to the unit circle.

    Parameters
    ----------
    f : tlab_hardy.analytic_fn.TaylorPoly
        The polynomial.
    band : float
        Only zeros ``w`` with ``abs(abs(w) - 1) < band`` are returned.

    Returns
    -------
    list[tuple[float, float]]
        Pairs ``(angle, distance)`` with the angle in ``[0, 2*pi)`` and the
        distance of the zero to T, sorted by angle.
    """
    if f.degree is None or f.degree < 1:
        return []
    roots = np.roots(f.array[::-1])
    found = []
    for w in roots:
        distance = abs(abs(w) - 1.0)
        if distance < band:
            found.append((cmath.phase(w) % (2.0 * math.pi), float(distance)))
    return sorted(found)


def make_log_family(n: int) -> TaylorPoly:
    """
    The partial sum ``sum_{k=1}^n z^k / k`` of ``-log(1 - z)``.

    These polynomials come close to equality in the Hardy inequality.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``n < 1``.
    """
    if n < 1:
        raise errors.DomainError(f"log family needs N >= 1, got {n}")
    return TaylorPoly((0,) + tuple(1.0 / k for k in range(1, n + 1)), f"logfam:{n}")


def random_poly(degree: int, seed: int) -> TaylorPoly:
    """
    A polynomial with independent standard complex Gaussian coefficients.

    The generator is numpy's PCG64 seeded with ``seed``. The real parts of
    a_0..a_degree are drawn first, then the imaginary parts, each from
    ``N(0, 1)`` and scaled by ``1/sqrt(2)`` so that ``E|a_k|^2 = 1``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``degree < 0``.
    """
    if degree < 0:
        raise errors.DomainError(f"degree must be nonnegative, got {degree}")
    rng = np.random.default_rng(seed)
    real = rng.standard_normal(degree + 1)
    imag = rng.standard_normal(degree + 1)
    return TaylorPoly.from_array(
        (real + 1j * imag) / math.sqrt(2.0), label=f"random:{degree},{seed}"
    )


def make_mobius(a: complex, n: int) -> TaylorPoly:
    """
    Degree-``n`` Taylor truncation of the disc automorphism
    ``(z - a) / (1 - conj(a) z)``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``|a| >= 1`` or ``n < 0``.
    """
    a = complex(a)
    if abs(a) >= 1.0 or n < 0:
        raise errors.DomainError(f"invalid Mobius parameters a={a}, n={n}")
    scale = 1.0 - abs(a) ** 2
    coeffs = [-a] + [scale * a.conjugate() ** (k - 1) for k in range(1, n + 1)]
    return TaylorPoly(tuple(coeffs))


def _format_complex(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    return repr(c).strip("()")


def _tokens(body: str, offset: int) -> list[tuple[str, int]]:
    tokens = []
    position = offset
    for token in body.split(","):
        tokens.append((token, position))
        position += len(token) + 1
    return tokens


def _parse_int(spec: str, token: str, position: int, minimum: int) -> int:
    try:
        value = int(token.strip())
    except ValueError:
        raise errors.SpecError(f"expected an integer, got {token!r}", spec, position)
    if value < minimum:
        raise errors.SpecError(f"expected an integer >= {minimum}", spec, position)
    return value


def from_spec(spec: str) -> TaylorPoly:
    """
    Builds the polynomial denoted by a spec string.

    See the module documentation for the grammar.

    Raises
    ------
    tlab_hardy.errors.SpecError
        If the string is malformed; ``position`` points at the bad token.
    """
    spec = spec.strip()
    kind, sep, body = spec.partition(":")
    if not sep:
        raise errors.SpecError("expected '<kind>:<arguments>'", spec, len(spec))
    offset = len(kind) + 1
    match kind:
        case "poly":
            if not body.strip():
                return TaylorPoly((), label=spec)
            coeffs = []
            for token, position in _tokens(body, offset):
                try:
                    coeffs.append(complex(token.strip()))
                except ValueError:
                    raise errors.SpecError(
                        f"malformed coefficient {token!r}", spec, position
                    )
            return TaylorPoly(tuple(coeffs), label=spec)
        case "logfam":
            tokens = _tokens(body, offset)
            if len(tokens) != 1:
                raise errors.SpecError("logfam takes one argument", spec, offset)
            return make_log_family(_parse_int(spec, *tokens[0], minimum=1))
        case "random":
            tokens = _tokens(body, offset)
            if len(tokens) != 2:
                raise errors.SpecError("random takes degree,seed", spec, offset)
            degree = _parse_int(spec, *tokens[0], minimum=0)
            seed = _parse_int(spec, *tokens[1], minimum=0)
            return random_poly(degree, seed)
        case _:
            raise errors.SpecError(f"unknown function kind {kind!r}", spec, 0)


def corpus(
    degrees: abc.Sequence[int], per_degree: int, seed: int = 0
) -> list[TaylorPoly]:
    """
    A deterministic corpus of random polynomials.

    Member ``i`` of degree ``d`` is ``random_poly(d, seed + i)`` where ``i``
    counts over the whole corpus, so every member has its own stream.
    """
    members = []
    index = 0
    for degree in degrees:
        for _ in range(per_degree):
            members.append(random_poly(degree, seed + index))
            index += 1
    return members
