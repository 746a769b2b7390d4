"""Discretized Wigner transform, marginals, overlaps, and negativity metrics.

The transform implemented here is

    W(x, p; t) = 1/(pi hbar) * Integral  Psi*(x+y, t) Psi(x-y, t) e^{2ipy/hbar} dy

evaluated on a uniform phase-space lattice.  Two independent
discretizations are provided: a direct trapezoid quadrature over y
(reference path, arbitrary momentum lattice) and a per-column FFT
(production path, canonical momentum lattice p_k = k * pi*hbar/(n_y*dy)).
Both accumulate only the real part; the y -> -y conjugate symmetry of the
integrand makes the imaginary part vanish identically, and a diagnostics
mode reports its floating-point residue.

Any object exposing ``wavefunction(x, t) -> complex ndarray`` can be
transformed; :class:`doublewell.wellcore.SuperpositionState` is the
primary producer.  Column sums use a fixed ascending order, so results
are bit-identical for any ``threads`` setting.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    GridMismatch,
    GridTooSmall,
    InvalidGrid,
    InvalidParameters,
    NoFringes,
    NonFinite,
)
from .wellcore import HBAR

__all__ = [
    "PhaseSpaceGrid",
    "WignerField",
    "NegativityReport",
    "wigner_direct",
    "wigner_fft",
    "total_mass",
    "marginal_position",
    "marginal_momentum",
    "overlap_integral",
    "negativity",
    "fringe_spacing",
    "interference_midpoint",
    "crop_momentum",
]


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Uniform (x, p) lattice with inclusive endpoints."""

    x_min: float
    x_max: float
    n_x: int
    p_min: float
    p_max: float
    n_p: int

    def __post_init__(self):
        if self.n_x < 2 or self.n_p < 2:
            raise InvalidGrid(f"need n_x, n_p >= 2, got {self.n_x}, {self.n_p}")
        if not self.x_max > self.x_min:
            raise InvalidGrid(f"x_max must exceed x_min, got [{self.x_min}, {self.x_max}]")
        if not self.p_max > self.p_min:
            raise InvalidGrid(f"p_max must exceed p_min, got [{self.p_min}, {self.p_max}]")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_x - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.n_p - 1)

    def x_axis(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_x)

    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)


@dataclass(eq=False)
class WignerField:
    """Real Wigner samples on a :class:`PhaseSpaceGrid`.

    ``values`` has shape (n_x, n_p) and is marked read-only after
    construction.  ``imag_sup`` holds the sup-norm of the suppressed
    imaginary part when the field was computed with diagnostics on.
    """

    grid: PhaseSpaceGrid
    values: np.ndarray
    time: float
    method: str
    state: str = ""
    imag_sup: float | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n_x, self.grid.n_p):
            raise InvalidGrid(
                f"values shape {self.values.shape} does not match grid "
                f"({self.grid.n_x}, {self.grid.n_p})")
        if not np.all(np.isfinite(self.values)):
            raise NonFinite("Wigner field contains non-finite samples")
        self.values.setflags(write=False)


@dataclass(frozen=True)
class NegativityReport:
    """Integrated negative part of a field and its most negative sample."""

    negative_volume: float
    min_value: float
    min_location: tuple[float, float]


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

def _describe(state) -> str:
    describe = getattr(state, "describe", None)
    return describe() if callable(describe) else type(state).__name__


def _check_support(state, y_halfwidth: float):
    support = getattr(state, "support_halfwidth", None)
    if support is not None and y_halfwidth < support:
        raise InvalidParameters(
            f"y_halfwidth {y_halfwidth} is smaller than the state support {support}")


def _mass_check(field: WignerField):
    mass = total_mass(field)
    if 1.0 - mass > 1e-3:
        raise GridTooSmall(
            f"total mass {mass:.6f} shows a deficit > 1e-3; "
            "the x grid does not contain the state's support")


def wigner_direct(state, grid: PhaseSpaceGrid, t: float,
                  y_halfwidth: float, n_y: int = 1024,
                  check_mass: bool = True,
                  diagnostics: bool = False) -> WignerField:
    """Trapezoid-rule Wigner transform on an explicit phase-space grid.

    Reference path: O(n_x * n_p * n_y) work.  ``n_y`` is the number of
    trapezoid subintervals on [-y_halfwidth, +y_halfwidth] and must be
    even (>= 64) so the lattice contains y = 0.
    """
    if n_y < 64 or n_y % 2:
        raise InvalidParameters(f"n_y must be even and >= 64, got {n_y}")
    _check_support(state, y_halfwidth)

    xs = grid.x_axis()
    ps = grid.p_axis()
    y = np.linspace(-y_halfwidth, y_halfwidth, n_y + 1)
    dy = y[1] - y[0]
    values = np.empty((grid.n_x, grid.n_p))
    imag_sup = 0.0
    block = 64
    for i, x0 in enumerate(xs):
        corr = np.conj(state.wavefunction(x0 + y, t)) * state.wavefunction(x0 - y, t)
        for j0 in range(0, grid.n_p, block):
            pblk = ps[j0:j0 + block]
            phase = np.exp((2j / HBAR) * pblk[:, None] * y[None, :])
            integrand = phase * corr[None, :]
            values[i, j0:j0 + block] = np.trapezoid(
                integrand.real, dx=dy, axis=1) / (np.pi * HBAR)
            if diagnostics:
                resid = np.trapezoid(integrand.imag, dx=dy, axis=1) / (np.pi * HBAR)
                imag_sup = max(imag_sup, float(np.max(np.abs(resid))))

    out = WignerField(grid=grid, values=values, time=t,
                      method="direct-quadrature", state=_describe(state),
                      imag_sup=imag_sup if diagnostics else None)
    if check_mass:
        _mass_check(out)
    return out


def _fft_columns(state, xs: np.ndarray, t: float, y: np.ndarray,
                 dy: float, alt: np.ndarray) -> np.ndarray:
    corr = (np.conj(state.wavefunction(xs[:, None] + y[None, :], t))
            * state.wavefunction(xs[:, None] - y[None, :], t))
    n_y = y.size
    spectrum = n_y * np.fft.ifft(alt[None, :] * corr, axis=1)
    return alt[None, :] * spectrum * (dy / (np.pi * HBAR))


def wigner_fft(state, x_grid: np.ndarray, t: float,
               n_y: int = 1024, y_halfwidth: float | None = None,
               check_mass: bool = True, threads: int = 1,
               diagnostics: bool = False) -> WignerField:
    """FFT-accelerated Wigner transform; production path.

    For each x column the correlation C(y_j) = Psi*(x+y_j) Psi(x-y_j) is
    formed on the uniform lattice y_j = (j - n_y/2) * dy with
    dy = 2*y_halfwidth/n_y, and its discrete Fourier transform yields the
    canonical momentum lattice p_k = k * dp, dp = pi*hbar/(n_y*dy),
    k = -n_y/2 .. n_y/2 - 1.  The scaling dy/(pi*hbar) makes each column
    match the direct quadrature at shared lattice points.

    ``x_grid`` must be a uniform ascending 1-D axis.  ``y_halfwidth``
    defaults to the state's support halfwidth.  ``n_y`` must be a power
    of two (>= 4).  ``threads`` splits the columns across a thread pool;
    the output is identical for any value.
    """
    if n_y < 4 or n_y & (n_y - 1):
        raise InvalidParameters(f"n_y must be a power of two >= 4, got {n_y}")
    xs = np.asarray(x_grid, dtype=float)
    if xs.ndim != 1 or xs.size < 2:
        raise InvalidGrid("x_grid must be a 1-D axis with at least 2 points")
    steps = np.diff(xs)
    if steps.min() <= 0 or (steps.max() - steps.min()) > 1e-9 * steps.max():
        raise InvalidGrid("x_grid must be uniform and ascending")
    if y_halfwidth is None:
        y_halfwidth = getattr(state, "support_halfwidth", None)
        if y_halfwidth is None:
            raise InvalidParameters(
                "y_halfwidth is required for states without support_halfwidth")
    _check_support(state, y_halfwidth)

    dy = 2.0 * y_halfwidth / n_y
    y = (np.arange(n_y) - n_y // 2) * dy
    dp = np.pi * HBAR / (n_y * dy)
    p_min = -(n_y // 2) * dp
    p_max = (n_y // 2 - 1) * dp
    alt = np.where(np.arange(n_y) % 2, -1.0, 1.0)

    if threads > 1 and xs.size > 1:
        bounds = np.linspace(0, xs.size, threads + 1).astype(int)
        chunks = [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(
                lambda rng: _fft_columns(state, xs[rng[0]:rng[1]], t, y, dy, alt),
                chunks))
        transform = np.concatenate(parts, axis=0)
    else:
        transform = _fft_columns(state, xs, t, y, dy, alt)

    grid = PhaseSpaceGrid(x_min=float(xs[0]), x_max=float(xs[-1]), n_x=xs.size,
                          p_min=p_min, p_max=p_max, n_p=n_y)
    out = WignerField(grid=grid, values=transform.real, time=t,
                      method="fourier", state=_describe(state),
                      imag_sup=(float(np.max(np.abs(transform.imag)))
                                if diagnostics else None))
    if check_mass:
        _mass_check(out)
    return out


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------

def total_mass(field: WignerField) -> float:
    """Trapezoid integral of W over the whole grid; 1 for a unit state."""
    per_x = np.trapezoid(field.values, dx=field.grid.dp, axis=1)
    return float(np.trapezoid(per_x, dx=field.grid.dx))


def marginal_position(field: WignerField) -> np.ndarray:
    """Position density P(x) = Integral W dp, aligned with grid.x_axis().

    Requires the field mass to be within 1e-3 of unity (i.e. an
    uncropped field of a normalized state).
    """
    mass = total_mass(field)
    if abs(mass - 1.0) > 1e-3:
        raise GridTooSmall(
            f"marginal_position needs a unit-mass field, got mass {mass:.6f}")
    return np.trapezoid(field.values, dx=field.grid.dp, axis=1)


def marginal_momentum(field: WignerField) -> np.ndarray:
    """Momentum density P~(p) = Integral W dx, aligned with grid.p_axis()."""
    mass = total_mass(field)
    if abs(mass - 1.0) > 1e-3:
        raise GridTooSmall(
            f"marginal_momentum needs a unit-mass field, got mass {mass:.6f}")
    return np.trapezoid(field.values, dx=field.grid.dx, axis=0)


def overlap_integral(field_a: WignerField, field_b: WignerField) -> float:
    """Raw double integral of W_a * W_b over phase space (trapezoid).

    Proportional to the squared wavefunction overlap; the proportionality
    constant (1/(2*pi*hbar) for unit states on this transform convention)
    is measured empirically by the test suite rather than asserted.
    """
    if field_a.grid != field_b.grid:
        raise GridMismatch("overlap requires identical phase-space grids")
    prod = field_a.values * field_b.values
    per_x = np.trapezoid(prod, dx=field_a.grid.dp, axis=1)
    return float(np.trapezoid(per_x, dx=field_a.grid.dx))


def negativity(field: WignerField) -> NegativityReport:
    """Integrated negative volume plus the most negative sample."""
    neg = np.maximum(-field.values, 0.0)
    per_x = np.trapezoid(neg, dx=field.grid.dp, axis=1)
    volume = float(np.trapezoid(per_x, dx=field.grid.dx))
    flat = int(np.argmin(field.values))
    i, j = np.unravel_index(flat, field.values.shape)
    return NegativityReport(
        negative_volume=volume,
        min_value=float(field.values[i, j]),
        min_location=(float(field.grid.x_axis()[i]), float(field.grid.p_axis()[j])),
    )


def fringe_spacing(field: WignerField, x0: float, p_band: float = 4.0,
                   floor_rel: float = 1e-9) -> float:
    """Mean distance between consecutive zero crossings of W(x0, p).

    The profile is the lattice column nearest x0, restricted to
    |p| <= p_band.  Sign changes whose neighbouring samples both sit
    below ``floor_rel`` times the profile's peak magnitude are ignored;
    they are floating-point noise in the far tail, not fringes.  Raises
    :class:`NoFringes` when fewer than three sign changes remain.
    """
    xs = field.grid.x_axis()
    column = field.values[int(np.argmin(np.abs(xs - x0)))]
    ps = field.grid.p_axis()
    band = np.abs(ps) <= p_band
    prof, pb = column[band], ps[band]
    if prof.size < 4:
        raise NoFringes(f"band |p| <= {p_band} holds fewer than 4 samples")
    floor = floor_rel * np.max(np.abs(prof))
    crossings = []
    for i in range(prof.size - 1):
        w0, w1 = prof[i], prof[i + 1]
        if w0 == 0.0 or w0 * w1 >= 0.0:
            continue
        if max(abs(w0), abs(w1)) <= floor:
            continue
        crossings.append(pb[i] - w0 * (pb[i + 1] - pb[i]) / (w1 - w0))
    if len(crossings) < 3:
        raise NoFringes(
            f"{len(crossings)} sign change(s) in |p| <= {p_band}; "
            "need at least 3")
    return float(np.mean(np.diff(crossings)))


def interference_midpoint(state, n: int = 4001) -> float:
    """Midpoint between the peaks of |psi0| and |psi1|.

    Natural fringe-cut abscissa for asymmetric wells, where the two
    eigenstates concentrate in different wells.  (Symmetric wells use
    x0 = 0, the barrier centre, by parity.)
    """
    model = state.model
    xs = np.linspace(-model.L, model.L, n)
    x_pk0 = xs[int(np.argmax(np.abs(model.psi0(xs))))]
    x_pk1 = xs[int(np.argmax(np.abs(model.psi1(xs))))]
    return 0.5 * (x_pk0 + x_pk1)


def crop_momentum(field: WignerField, p_max: float) -> WignerField:
    """Sub-field restricted to |p| <= p_max (same x axis and spacing).

    Intended for emission: the FFT lattice spans far beyond the
    spectral support.  Mass invariants apply to the full field only.
    """
    ps = field.grid.p_axis()
    keep = np.abs(ps) <= p_max
    if keep.sum() < 2:
        raise InvalidGrid(f"p_max {p_max} keeps fewer than 2 momentum rows")
    idx = np.where(keep)[0]
    sub = PhaseSpaceGrid(
        x_min=field.grid.x_min, x_max=field.grid.x_max, n_x=field.grid.n_x,
        p_min=float(ps[idx[0]]), p_max=float(ps[idx[-1]]), n_p=int(idx.size))
    return WignerField(grid=sub, values=field.values[:, keep].copy(),
                       time=field.time, method=field.method, state=field.state,
                       imag_sup=field.imag_sup)
