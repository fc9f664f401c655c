"""
Adjacency spectra, signed p-energies and the closed forms of the families.
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy
from typing_extensions import Literal

from spectral_lab import (
    InvalidFamily,
    NonConvergenceError,
    NoSignChange,
    SpectralLabValueError,
)

from .graphs import FamilyKind, FamilySpec, Graph, build_family

EPS_ZERO = 1e-9
JACOBI_TOLERANCE = 1e-12
MAX_SWEEPS = 64
ROTATION_FLOOR = 1e-15
ROOT_TOLERANCE = 1e-12

Solver = Literal["jacobi", "lapack"]


@dataclass(frozen=True)
class Spectrum:
    """
    Eigenvalues in descending order with their sign classification.

    A value counts as positive above ``eps_zero``, negative below
    ``-eps_zero`` and as zero otherwise.
    """

    values: numpy.ndarray
    eps_zero: float
    pos_count: int
    zero_count: int
    neg_count: int

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def positive(self) -> numpy.ndarray:
        return self.values[self.values > self.eps_zero]

    @property
    def negative(self) -> numpy.ndarray:
        return self.values[self.values < -self.eps_zero]

    def rounded(self, decimals: int = 3) -> List[float]:
        # +0.0 turns a rounded -0.0 into 0.0
        return [round(float(x), decimals) + 0.0 for x in self.values]


def spectrum_from_values(
    values: Iterable[float], eps_zero: float = EPS_ZERO
) -> Spectrum:
    ordered = numpy.sort(numpy.asarray(list(values), dtype=float))[::-1].copy()
    ordered.setflags(write=False)
    pos = int(numpy.count_nonzero(ordered > eps_zero))
    neg = int(numpy.count_nonzero(ordered < -eps_zero))
    return Spectrum(
        values=ordered,
        eps_zero=eps_zero,
        pos_count=pos,
        zero_count=len(ordered) - pos - neg,
        neg_count=neg,
    )


@dataclass(frozen=True)
class EnergyPair:
    e_plus: float
    e_minus: float
    exponent: float

    @property
    def total(self) -> float:
        return self.e_plus + self.e_minus


def _off_diagonal_norm(a: numpy.ndarray) -> numpy.ndarray:
    return numpy.sqrt(2.0 * numpy.sum(numpy.triu(a, 1) ** 2, axis=(-2, -1)))


@lru_cache(maxsize=None)
def _round_robin(n: int) -> Tuple[Tuple[numpy.ndarray, numpy.ndarray], ...]:
    """
    One cyclic sweep over all ``p < q`` as rounds of disjoint pairs.

    Circle scheduling: index 0 stays put while the others rotate, and odd
    ``n`` gets a dummy index whose pairs are dropped.
    """
    size = n + n % 2
    order = list(range(size))
    rounds = []
    for _ in range(size - 1):
        pairs = sorted(
            (min(order[i], order[-1 - i]), max(order[i], order[-1 - i]))
            for i in range(size // 2)
        )
        pairs = [(p, q) for p, q in pairs if q < n]
        if pairs:
            p_idx = numpy.array([p for p, _ in pairs])
            q_idx = numpy.array([q for _, q in pairs])
            p_idx.setflags(write=False)
            q_idx.setflags(write=False)
            rounds.append((p_idx, q_idx))
        order = [order[0], order[-1]] + order[1:-1]
    return tuple(rounds)


def _rotate(a: numpy.ndarray, p: numpy.ndarray, q: numpy.ndarray) -> None:
    # a is a stack (B, n, n); the pairs (p[k], q[k]) are disjoint
    apq = a[:, p, q]
    active = numpy.abs(apq) > ROTATION_FLOOR
    if not active.any():
        return
    theta = (a[:, q, q] - a[:, p, p]) / (2.0 * numpy.where(active, apq, 1.0))
    t = numpy.where(
        active,
        numpy.copysign(1.0, theta) / (numpy.abs(theta) + numpy.hypot(theta, 1.0)),
        0.0,
    )
    c = 1.0 / numpy.sqrt(t * t + 1.0)
    s = t * c
    cols_p, cols_q = a[:, :, p], a[:, :, q]
    a[:, :, p] = c[:, None, :] * cols_p - s[:, None, :] * cols_q
    a[:, :, q] = s[:, None, :] * cols_p + c[:, None, :] * cols_q
    rows_p, rows_q = a[:, p, :], a[:, q, :]
    a[:, p, :] = c[:, :, None] * rows_p - s[:, :, None] * rows_q
    a[:, q, :] = s[:, :, None] * rows_p + c[:, :, None] * rows_q


def jacobi_eigenvalues(
    matrix: numpy.ndarray,
    tolerance: float = JACOBI_TOLERANCE,
    max_sweeps: int = MAX_SWEEPS,
) -> numpy.ndarray:
    """
    Eigenvalues of real symmetric matrices by cyclic Jacobi rotations.

    ``matrix`` is a single ``n x n`` matrix or a stack ``(..., n, n)``; the
    result has shape ``matrix.shape[:-1]`` and is read off the diagonal, so it
    is not sorted. Each sweep visits every ``(p, q)`` pair once, in rounds of
    disjoint pairs that are rotated together across the whole stack. Entries
    already below ``ROTATION_FLOOR`` are not rotated. A matrix sits out further
    sweeps once its off-diagonal Frobenius norm is below ``tolerance * n``, so
    it gets the same rotations alone or in a stack. The input is not
    modified.

    Raises
    ------
    SpectralLabValueError
        If the trailing two axes are not square.
    NonConvergenceError
        If a norm is still above the threshold after ``max_sweeps`` sweeps.
    """
    a = numpy.array(matrix, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise SpectralLabValueError(f"need square matrices, got shape {a.shape}")
    n = a.shape[-1]
    stack = a.reshape((-1, n, n))
    threshold = tolerance * n
    for _ in range(max_sweeps):
        # converged matrices sit out
        active = numpy.flatnonzero(_off_diagonal_norm(stack) >= threshold)
        if active.size == 0:
            break
        work = stack[active]
        for p, q in _round_robin(n):
            _rotate(work, p, q)
        stack[active] = work
    else:
        norms = _off_diagonal_norm(stack)
        if not numpy.all(norms < threshold):
            raise NonConvergenceError(
                f"off-diagonal norm {float(numpy.max(norms)):.3e} still above "
                f"{threshold:.3e} after {max_sweeps} sweeps"
            )
    return numpy.diagonal(stack, axis1=-2, axis2=-1).reshape(a.shape[:-1]).copy()


def _solve(matrices: numpy.ndarray, solver: Solver) -> numpy.ndarray:
    if solver == "jacobi":
        return jacobi_eigenvalues(matrices)
    if solver == "lapack":
        return numpy.linalg.eigvalsh(matrices)
    raise SpectralLabValueError(f"unknown solver {solver!r}")


def eigenvalues(g: Graph, solver: Solver = "jacobi") -> Spectrum:
    """
    The adjacency spectrum of ``g``.

    ``solver="jacobi"`` is the reference path. ``solver="lapack"`` hands the
    matrix to ``numpy.linalg.eigvalsh``.
    """
    if g.n == 1:
        if solver not in ("jacobi", "lapack"):
            raise SpectralLabValueError(f"unknown solver {solver!r}")
        return spectrum_from_values([0.0])
    return spectrum_from_values(_solve(g.adjacency_matrix().astype(float), solver))


def eigenvalues_batch(
    graphs: Iterable[Graph], solver: Solver = "jacobi"
) -> List[Spectrum]:
    """
    Adjacency spectra of many graphs, in input order.

    Graphs of equal order are stacked and solved in one call, which is how the
    exhaustive runs keep the Jacobi path affordable.
    """
    graphs = list(graphs)
    by_order: Dict[int, List[int]] = defaultdict(list)
    for i, g in enumerate(graphs):
        by_order[g.n].append(i)
    spectra: List[Optional[Spectrum]] = [None] * len(graphs)
    for indices in by_order.values():
        stack = numpy.stack([graphs[i].adjacency_matrix() for i in indices])
        for i, values in zip(indices, _solve(stack.astype(float), solver)):
            spectra[i] = spectrum_from_values(values)
    return [spec for spec in spectra if spec is not None]


def energy(spec: Spectrum, r: float) -> EnergyPair:
    """
    Positive and negative ``r``-energies of a spectrum.

    Zero-classified eigenvalues contribute to neither sum.
    """
    if r < 1:
        raise SpectralLabValueError(f"exponent must be >= 1, got {r}")
    e_plus = float(numpy.sum(spec.positive**r))
    e_minus = float(numpy.sum(numpy.abs(spec.negative) ** r))
    return EnergyPair(e_plus=e_plus, e_minus=e_minus, exponent=float(r))


def path_positive_energy(n: int, p: float) -> float:
    """Closed form of the positive ``p``-energy of ``P_n``."""
    if n < 1 or p < 1:
        raise SpectralLabValueError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    return float(
        sum(
            (2.0 * math.cos(k * math.pi / (n + 1))) ** p
            for k in range(1, n // 2 + 1)
        )
    )


# Root multiplicities are kept as (value, multiplicity) pairs.
Roots = Tuple[Tuple[float, int], ...]


@dataclass(frozen=True)
class QuotientPoly:
    """
    Characteristic polynomial ``det(xI - M)`` of a family's quotient matrix.

    ``known_roots`` are roots of the polynomial forced by the construction.
    ``residual`` lists the eigenvalues of the whole graph that the quotient
    does not see; together with the polynomial's roots they make up the full
    spectrum.
    """

    coeffs: Tuple[float, ...]
    known_roots: Roots = ()
    residual: Roots = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[0] != 1.0:
            raise SpectralLabValueError(f"polynomial {self.coeffs} is not monic")
        for root, _ in self.known_roots:
            if abs(self.evaluate(root)) > 1e-9:
                raise SpectralLabValueError(
                    f"{root} is not a root of {self.coeffs}: "
                    f"value {self.evaluate(root)}"
                )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: float) -> float:
        return float(numpy.polyval(self.coeffs, x))

    def derivative(self, x: float) -> float:
        return float(numpy.polyval(numpy.polyder(self.coeffs), x))

    def roots(self) -> numpy.ndarray:
        """Real roots, polished with two Newton steps, in descending order."""
        roots = numpy.real(numpy.roots(self.coeffs))
        for _ in range(2):
            slope = numpy.polyval(numpy.polyder(self.coeffs), roots)
            step = numpy.divide(
                numpy.polyval(self.coeffs, roots),
                slope,
                out=numpy.zeros_like(roots),
                where=slope != 0,
            )
            roots = roots - step
        return numpy.sort(roots)[::-1]


def _expand(roots: Roots) -> List[float]:
    return [value for value, count in roots for _ in range(count)]


def _drop_empty(roots: Iterable[Tuple[float, int]]) -> Roots:
    return tuple((float(value), count) for value, count in roots if count > 0)


def quotient_char_poly(spec: FamilySpec) -> QuotientPoly:
    """
    Characteristic polynomial of the quotient matrix of ``family_partition``.

    Raises
    ------
    InvalidFamily
        For kinds without an equitable-partition closed form.
    """
    n = spec.n
    if spec.kind is FamilyKind.complete_minus_edge:
        return QuotientPoly(
            coeffs=(1, -(n - 3), -(2 * n - 4), 0),
            known_roots=((0.0, 1),),
            residual=_drop_empty([(-1.0, n - 3)]),
        )
    if spec.kind is FamilyKind.complete_plus_pendant:
        return QuotientPoly(
            coeffs=(1, -(n - 3), -(n - 1), n - 3),
            residual=_drop_empty([(-1.0, n - 3)]),
        )
    if spec.kind is FamilyKind.clique_k2:
        return QuotientPoly(
            coeffs=(1, -(n - 4), -n, 3 * n - 14, 3 * n - 11),
            known_roots=((-1.0, 1),),
            residual=_drop_empty([(-1.0, n - 4)]),
        )
    if spec.kind is FamilyKind.subdivided_star:
        t = spec.params[1]
        return QuotientPoly(
            coeffs=(1, 0, -(n + 1), 0, n - t),
            residual=_drop_empty([(0.0, n - t - 1), (1.0, t - 1), (-1.0, t - 1)]),
        )
    raise InvalidFamily(f"no quotient polynomial for {spec.kind.value}")


def family_partition(spec: FamilySpec) -> List[List[int]]:
    """
    The equitable partition behind ``quotient_char_poly`` in the fixed labeling.
    """
    n = spec.n
    if spec.kind is FamilyKind.complete_minus_edge:
        return [[0], [1], list(range(2, n))]
    if spec.kind is FamilyKind.complete_plus_pendant:
        return [[0], [1], list(range(2, n))]
    if spec.kind is FamilyKind.clique_k2:
        return [[0], list(range(1, n - 2)), [n - 2], [n - 1]]
    if spec.kind is FamilyKind.subdivided_star:
        t = spec.params[1]
        return [
            [0],
            list(range(1, t + 1)),
            list(range(t + 1, 2 * t + 1)),
            list(range(2 * t + 1, n + t + 1)),
        ]
    raise InvalidFamily(f"no equitable partition recorded for {spec.kind.value}")


def _cell_counts(g: Graph, cells: Sequence[Sequence[int]]) -> List[List[set]]:
    masks = [sum(1 << v for v in cell) for cell in cells]
    return [
        [
            {bin(g.rows[v] & mask).count("1") for v in cell}
            for mask in masks
        ]
        for cell in cells
    ]


def _check_partition(g: Graph, cells: Sequence[Sequence[int]]) -> None:
    seen = sorted(v for cell in cells for v in cell)
    if seen != list(range(g.n)) or any(not cell for cell in cells):
        raise SpectralLabValueError(
            "cells must be non-empty and partition the vertex set"
        )


def is_equitable(g: Graph, cells: Sequence[Sequence[int]]) -> bool:
    _check_partition(g, cells)
    return all(
        len(counts) == 1 for row in _cell_counts(g, cells) for counts in row
    )


def quotient_matrix(g: Graph, cells: Sequence[Sequence[int]]) -> numpy.ndarray:
    """
    ``M[i][j]``: the number of neighbours a vertex of cell ``i`` has in cell
    ``j``.
    """
    _check_partition(g, cells)
    counts = _cell_counts(g, cells)
    if any(len(c) != 1 for row in counts for c in row):
        raise SpectralLabValueError("partition is not equitable")
    return numpy.array([[next(iter(c)) for c in row] for row in counts], dtype=float)


def closed_form_spectrum(spec: FamilySpec) -> Spectrum:
    """
    Assemble the whole spectrum of a family member from closed forms.

    Raises
    ------
    InvalidFamily
        For ``gadget`` members, which have no closed form.
    """
    kind, n = spec.kind, spec.n
    if kind is FamilyKind.path:
        values = [2.0 * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1)]
    elif kind is FamilyKind.cycle:
        values = [2.0 * math.cos(2.0 * math.pi * k / n) for k in range(n)]
    elif kind is FamilyKind.complete:
        values = [float(n - 1)] + [-1.0] * (n - 1)
    elif kind is FamilyKind.star:
        root = math.sqrt(n)
        values = [root, -root] + [0.0] * (n - 1)
    elif kind is FamilyKind.complete_minus_edge:
        disc = math.sqrt(n * n + 2 * n - 7)
        values = [0.0, (n - 3 + disc) / 2, (n - 3 - disc) / 2] + [-1.0] * (n - 3)
    elif kind in (FamilyKind.complete_plus_pendant, FamilyKind.clique_k2):
        poly = quotient_char_poly(spec)
        values = list(poly.roots()) + _expand(poly.residual)
    elif kind is FamilyKind.subdivided_star:
        t = spec.params[1]
        disc = math.sqrt((n + 1) ** 2 - 4 * (n - t))
        x1, x2 = ((n + 1) + disc) / 2, ((n + 1) - disc) / 2
        poly = quotient_char_poly(spec)
        values = [
            math.sqrt(x1),
            -math.sqrt(x1),
            math.sqrt(x2),
            -math.sqrt(x2),
        ] + _expand(poly.residual)
    else:
        raise InvalidFamily(f"no closed-form spectrum for {kind.value}")
    return spectrum_from_values(values)


def poly_negative_root(
    p: Union[QuotientPoly, Sequence[float]],
    bracket: Tuple[float, float],
    tolerance: float = ROOT_TOLERANCE,
) -> float:
    """
    Bisect for the root of ``p`` inside ``bracket``.

    Raises
    ------
    NoSignChange
        If ``p`` has the same strict sign at both ends of the bracket.
    """
    coeffs = p.coeffs if isinstance(p, QuotientPoly) else tuple(p)
    lo, hi = sorted(float(x) for x in bracket)
    f_lo = float(numpy.polyval(coeffs, lo))
    f_hi = float(numpy.polyval(coeffs, hi))
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChange(
            (lo, hi), f"no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
        )
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        f_mid = float(numpy.polyval(coeffs, mid))
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def negative_root_bracket(spec: FamilySpec) -> Tuple[float, float]:
    """
    A bracket holding exactly one negative root of ``quotient_char_poly(spec)``.

    The lower end is the Perron bound ``-n``. The upper end is just short of
    zero, except for ``clique_k2`` whose quartic also vanishes at -1 and so is
    bracketed just below -1, where its derivative ``2n - 6`` is positive.
    """
    if spec.kind is FamilyKind.clique_k2:
        return (-float(spec.order), -1.0 - 1e-6)
    return (-float(spec.order), -EPS_ZERO)


def family_energy(spec: FamilySpec, r: float = 3, solver: Solver = "jacobi") -> float:
    """Numeric negative ``r``-energy of a built family member."""
    return energy(eigenvalues(build_family(spec), solver=solver), r).e_minus
