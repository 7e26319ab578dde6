"""Entropy, Holevo information, and the capacity optimizers.

The central objects are:

* ``holevo_information`` -- the Holevo quantity of a channel at a fixed input
  ensemble (output entropy of the average minus average output entropy).
* ``reduced_capacity`` -- the exact Holevo capacity of the superposed
  uncorrelated depolarising channel with a diagonal interference operator,
  via the three-parameter ensemble reduction (weights and two real state
  amplitudes), grid search plus coordinate-wise golden-section refinement.
* ``orthogonal_lower_bound`` -- capacity lower bound from two-element
  orthogonal pure-state ensembles on the Bloch sphere.
* ``oracle_holevo`` -- an independent multistart derivative-free maximizer
  over free ensembles of up to four pure states, used to cross-check the
  reduced optimizer.
* ``analytic_upper_bound`` -- the closed-form output-entropy bound in terms
  of the interference-operator norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from .channels import QuantumChannel
from .errors import (
    DimensionMismatchError,
    NegativeSingularValueError,
    NotDensityMatrixError,
    OutOfRangeError,
)
from .linalg import HERMITIAN_ATOL, Z, dagger, hermitian_eigenvalues, require_square

EXACT_CAPACITY = "exact_capacity"
LOWER_BOUND = "lower_bound"
UPPER_BOUND = "upper_bound"

REFINE_FTOL = 1e-7  # stop refinement passes once a full pass gains less than this many bits
_WEIGHT_GRID = 33  # resolution 1/32 on each ensemble parameter


@dataclass(frozen=True)
class Ensemble:
    """Weighted list of density matrices."""

    items: tuple[tuple[float, np.ndarray], ...]

    def __post_init__(self):
        items = []
        total = 0.0
        dim = None
        for weight, state in self.items:
            w = float(weight)
            if w < 0:
                raise NotDensityMatrixError(f"ensemble weight {w!r} is negative")
            rho = _check_density(state)
            if dim is None:
                dim = rho.shape[0]
            elif rho.shape[0] != dim:
                raise DimensionMismatchError("ensemble states must share one dimension")
            rho = rho.copy()
            rho.flags.writeable = False
            items.append((w, rho))
            total += w
        if abs(total - 1.0) > 1e-12:
            raise NotDensityMatrixError(f"ensemble weights sum to {total!r}, expected 1")
        object.__setattr__(self, "items", tuple(items))

    @property
    def dim(self) -> int:
        return self.items[0][1].shape[0]

    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.items])

    def states(self) -> np.ndarray:
        return np.stack([s for _, s in self.items])

    def average(self) -> np.ndarray:
        return sum(w * s for w, s in self.items)


@dataclass(frozen=True)
class CapacityResult:
    """A capacity value in bits, tagged with how it bounds the true capacity."""

    value_bits: float
    argmax: dict
    kind: str


def _check_density(rho: np.ndarray, atol_eig: float = 1e-10) -> np.ndarray:
    r = require_square(np.asarray(rho, dtype=complex))
    if float(np.abs(r - dagger(r)).max()) > HERMITIAN_ATOL:
        raise NotDensityMatrixError("state is not Hermitian")
    if abs(np.trace(r).real - 1.0) > 1e-9:
        raise NotDensityMatrixError(f"state has trace {np.trace(r).real!r}, expected 1")
    vals = hermitian_eigenvalues(r)
    if vals.min() < -atol_eig:
        raise NotDensityMatrixError(f"state has negative eigenvalue {vals.min():.3e}")
    return r


def _entropy_bits(probs: np.ndarray) -> np.ndarray:
    """Shannon entropy along the last axis, with 0 log 0 = 0 and tiny negatives clipped."""
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    safe = np.where(p > 0.0, p, 1.0)
    return -(safe * np.log2(safe)).sum(axis=-1)


def _output_entropies(mats: np.ndarray) -> np.ndarray:
    """Von Neumann entropies of a batch of Hermitian matrices, shape (..., d, d)."""
    return _entropy_bits(np.linalg.eigvalsh(mats))


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy -Tr[rho log2 rho] in bits of a validated density matrix."""
    r = _check_density(rho)
    return float(_entropy_bits(hermitian_eigenvalues(r)))


def holevo_information(ch: QuantumChannel, ensemble: Ensemble) -> float:
    """Holevo quantity of the channel at a fixed ensemble, in bits.

    H of the output of the average state minus the weighted average of the
    output entropies; nonnegative, and zero for single-state ensembles.
    """
    if ensemble.dim != ch.din:
        raise DimensionMismatchError(f"ensemble dimension {ensemble.dim} != channel input {ch.din}")
    weights = ensemble.weights()
    batch = np.concatenate([ensemble.states(), ensemble.average()[None]], axis=0)
    ent = _output_entropies(ch.apply_batch(batch))
    return float(ent[-1] - (weights * ent[:-1]).sum())


# --- refinement helpers ------------------------------------------------------

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(fn, lo: float, hi: float, xtol: float = 1e-10) -> tuple[float, float]:
    """Maximize a scalar function on [lo, hi] by golden-section search."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    x = (a + b) / 2
    return x, fn(x)


def coordinate_refine(
    fn: Callable[[np.ndarray], float],
    x0: np.ndarray,
    bounds: list[tuple[float, float]],
    span: float,
    ftol: float = REFINE_FTOL,
    max_passes: int = 60,
) -> tuple[np.ndarray, float]:
    """Coordinate-wise golden-section ascent from x0, one window of +-span per pass.

    Never returns less than fn(x0); stops once a full pass over all
    coordinates improves the value by less than ftol.
    """
    x = np.array(x0, dtype=float)
    best = fn(x)
    for _ in range(max_passes):
        before = best
        for i in range(x.size):
            lo = max(bounds[i][0], x[i] - span)
            hi = min(bounds[i][1], x[i] + span)
            if hi <= lo:
                continue

            def line(v, i=i):
                trial = x.copy()
                trial[i] = v
                return fn(trial)

            xi, fi = _golden_max(line, lo, hi)
            if fi > best:
                best = fi
                x[i] = xi
        if best - before < ftol:
            break
    return x, best


# --- reduced three-parameter capacity ---------------------------------------


def _reduced_chi_closed(a, b, scale, q, p0, p1):
    """Three-parameter Holevo objective for F = diag(a, b), closed-form eigenvalues.

    Broadcasts over numpy arguments.  The channel output block-diagonalizes
    over the +/- control sectors, so the four output eigenvalues are explicit:
    1/4 +- scale*k^2/2 (and two 1/4's) for a pure input with interference
    weight k^2, and the diagonal analogue for the averaged input.
    """
    k0 = a * a * p0 + b * b * (1 - p0)
    k1 = a * a * p1 + b * b * (1 - p1)

    def pure_entropy(k2):
        quarter = np.broadcast_to(0.25, np.shape(k2))
        lam = np.stack(
            np.broadcast_arrays(0.25 + scale * k2 / 2, quarter, 0.25 - scale * k2 / 2, quarter), axis=-1
        )
        return _entropy_bits(lam)

    h0 = pure_entropy(k0)
    h1 = pure_entropy(k1)
    r = q * p0 + (1 - q) * p1
    ra, rb = a * a * r, b * b * (1 - r)
    havg = _entropy_bits(
        np.stack(
            np.broadcast_arrays(
                0.25 + scale * ra / 2, 0.25 + scale * rb / 2, 0.25 - scale * ra / 2, 0.25 - scale * rb / 2
            ),
            axis=-1,
        )
    )
    return havg - q * h0 - (1 - q) * h1


def _reduced_ensemble(q: float, p0: float, p1: float) -> Ensemble:
    """The four-state covariant ensemble behind the three parameters."""

    def pair(p, weight):
        ket = np.array([math.sqrt(p), math.sqrt(1 - p)], dtype=complex)
        rho = np.outer(ket, ket.conj())
        return [(weight / 2, rho), (weight / 2, Z @ rho @ Z)]

    return Ensemble(tuple(pair(p0, q) + pair(p1, 1 - q)))


def reduced_capacity(
    a: float,
    b: float,
    build: Callable[[float, float], QuantumChannel] | None = None,
    refine: bool = True,
    interference_scale: float = 1.0,
    weight_points: int = _WEIGHT_GRID,
) -> CapacityResult:
    """Holevo capacity of the diagonal-interference channel with F = diag(a, b).

    Grid search over the three ensemble parameters (q, p0, p1) at resolution
    1/32, then coordinate-wise golden-section refinement from the best grid
    point.  With the default builder this equals the classical capacity of the
    uncorrelated superposed channel (entanglement breaking for qubits, and
    Holevo capacity is additive there).  Supplying ``build`` evaluates the
    same reduced ensembles on a custom diagonal-F channel instead.
    """
    a, b = float(a), float(b)
    if a < -1e-12 or b < -1e-12:
        raise NegativeSingularValueError(f"singular values must be nonnegative, got ({a!r}, {b!r})")
    a, b = max(a, 0.0), max(b, 0.0)
    if a * a + b * b > 0.5 + 1e-9:
        raise OutOfRangeError(
            f"({a!r}, {b!r}) lies outside the admissible region a^2 + b^2 <= 1/2"
        )

    if build is not None:
        ch = build(a, b)

        def objective(q, p0, p1):
            return holevo_information(ch, _reduced_ensemble(q, p0, p1))

        grid = np.linspace(0.0, 1.0, weight_points)
        best, arg = -1.0, (0.0, 0.0, 0.0)
        for q in grid:
            for p0 in grid:
                for p1 in grid:
                    val = objective(q, p0, p1)
                    if val > best:
                        best, arg = val, (q, p0, p1)
        fn = lambda x: objective(*np.clip(x, 0.0, 1.0))
    else:
        grid = np.linspace(0.0, 1.0, weight_points)
        qg = grid[:, None, None]
        p0g = grid[None, :, None]
        p1g = grid[None, None, :]
        chi = _reduced_chi_closed(a, b, interference_scale, qg, p0g, p1g)
        flat = int(np.argmax(chi))  # first occurrence = lexicographic tie-break
        idx = np.unravel_index(flat, chi.shape)
        best = float(chi[idx])
        arg = (float(grid[idx[0]]), float(grid[idx[1]]), float(grid[idx[2]]))
        fn = lambda x: float(
            _reduced_chi_closed(a, b, interference_scale, *np.clip(x, 0.0, 1.0))
        )

    if refine:
        step = 1.0 / (weight_points - 1)
        x, best = coordinate_refine(fn, np.array(arg), [(0.0, 1.0)] * 3, span=step)
        arg = tuple(float(v) for v in x)

    return CapacityResult(
        value_bits=float(best),
        argmax={"a": a, "b": b, "q": arg[0], "p0": arg[1], "p1": arg[2]},
        kind=EXACT_CAPACITY,
    )


def maximize_reduced_over_region(
    region: str,
    interference_scale: float = 1.0,
    grid_points: int = 33,
    refine: bool = True,
) -> CapacityResult:
    """Best reduced capacity over a whole admissibility region of diagonal F.

    ``region`` is "quadratic" (a^2 + b^2 <= 1/2, one transmission line) or
    "linear" (a + b <= 1/2, the two-line network where the interference
    operator is a square).  The region is swept on a rectangular grid and the
    best point is refined coordinate-wise.
    """
    if region == "quadratic":
        rmax = 1.0 / math.sqrt(2.0)

        def to_ab(u, t):
            return u * rmax * math.cos(t), u * rmax * math.sin(t)

        axes = (np.linspace(0.0, 1.0, grid_points), np.linspace(0.0, math.pi / 2, grid_points))
        bounds = [(0.0, 1.0), (0.0, math.pi / 2)]
    elif region == "linear":

        def to_ab(u, t):
            return u * 0.5 * t, u * 0.5 * (1.0 - t)

        axes = (np.linspace(0.0, 1.0, grid_points), np.linspace(0.0, 1.0, grid_points))
        bounds = [(0.0, 1.0), (0.0, 1.0)]
    else:
        raise OutOfRangeError(f'region must be "quadratic" or "linear", got {region!r}')

    best, arg = -1.0, None
    for u in axes[0]:
        for t in axes[1]:
            a, b = to_ab(u, t)
            res = reduced_capacity(a, b, interference_scale=interference_scale, refine=False)
            if res.value_bits > best:
                best, arg = res.value_bits, (u, t)

    def fn(x):
        a, b = to_ab(min(max(x[0], bounds[0][0]), bounds[0][1]), min(max(x[1], bounds[1][0]), bounds[1][1]))
        return reduced_capacity(a, b, interference_scale=interference_scale, refine=False).value_bits

    if refine:
        spans = [axes[0][1] - axes[0][0], axes[1][1] - axes[1][0]]
        x, best = coordinate_refine(fn, np.array(arg), bounds, span=max(spans))
        arg = tuple(float(v) for v in x)
    a, b = to_ab(*arg)
    inner = reduced_capacity(a, b, interference_scale=interference_scale, refine=True)
    if inner.value_bits > best:
        best = inner.value_bits
    return CapacityResult(value_bits=float(best), argmax=inner.argmax, kind=EXACT_CAPACITY)


# --- orthogonal-ensemble lower bound -----------------------------------------


def _bloch_pair(theta, phi):
    """An orthogonal pair of qubit kets at Bloch angles (theta, phi), batched."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    half = theta / 2
    psi = np.stack([np.cos(half), np.exp(1j * phi) * np.sin(half)], axis=-1)
    perp = np.stack([np.sin(half), -np.exp(1j * phi) * np.cos(half)], axis=-1)
    return psi, perp


def orthogonal_lower_bound(
    ch: QuantumChannel,
    theta_points: int = 64,
    phi_points: int = 64,
    weight_points: int = _WEIGHT_GRID,
    refine: bool = True,
) -> CapacityResult:
    """Best Holevo information over weighted orthogonal qubit-pair ensembles.

    Scans Bloch angles on a theta_points x phi_points grid and the weight q on
    a 33-point grid, then refines (theta, phi, q) coordinate-wise.  Always a
    lower bound on the Holevo capacity, hence on the classical capacity.
    """
    if ch.din != 2:
        raise DimensionMismatchError(f"orthogonal ensembles need a qubit input, got din={ch.din}")
    thetas = np.linspace(0.0, math.pi, theta_points, endpoint=False)
    phis = np.linspace(0.0, 2 * math.pi, phi_points, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    t, p = tt.ravel(), pp.ravel()
    psi, perp = _bloch_pair(t, p)
    rho_a = psi[:, :, None] * psi.conj()[:, None, :]
    rho_b = perp[:, :, None] * perp.conj()[:, None, :]
    out_a = ch.apply_batch(rho_a)
    out_b = ch.apply_batch(rho_b)
    ent_a = _output_entropies(out_a)
    ent_b = _output_entropies(out_b)

    qs = np.linspace(0.0, 1.0, weight_points)
    best = -1.0
    arg = (0.0, 0.0, 0.0)
    for q in qs:
        chi = _output_entropies(q * out_a + (1 - q) * out_b) - q * ent_a - (1 - q) * ent_b
        i = int(np.argmax(chi))
        if chi[i] > best:
            best = float(chi[i])
            arg = (float(t[i]), float(p[i]), float(q))

    def fn(x):
        th, ph, q = x
        q = min(max(q, 0.0), 1.0)
        psi1, perp1 = _bloch_pair(th, ph)
        ra = np.outer(psi1, psi1.conj())
        rb = np.outer(perp1, perp1.conj())
        ents = _output_entropies(ch.apply_batch(np.stack([ra, rb, q * ra + (1 - q) * rb])))
        return float(ents[2] - q * ents[0] - (1 - q) * ents[1])

    if refine:
        spans = max(math.pi / theta_points, 2 * math.pi / phi_points, 1.0 / (weight_points - 1))
        bounds = [(-math.pi, 2 * math.pi), (-2 * math.pi, 4 * math.pi), (0.0, 1.0)]
        x, best = coordinate_refine(fn, np.array(arg), bounds, span=spans)
        arg = tuple(float(v) for v in x)

    return CapacityResult(
        value_bits=float(best),
        argmax={"theta": arg[0], "phi": arg[1], "q": arg[2]},
        kind=LOWER_BOUND,
    )


# --- analytic bound -----------------------------------------------------------


def analytic_upper_bound(f_norm: float, d: int = 2) -> float:
    """Output-entropy upper bound on the Holevo capacity, in bits.

    log2(2d)/d + t+ log2 t+ + t- log2 t-  with  t+- = (1/d +- f_norm^2)/2.
    Decreasing in f_norm; equals exactly 1/d at the extreme f_norm = 1/sqrt(d).
    """
    if d < 2:
        raise OutOfRangeError(f"dimension must be at least 2, got {d}")
    fmax = 1.0 / math.sqrt(d)
    if not -1e-12 <= f_norm <= fmax + 1e-12:
        raise OutOfRangeError(f"f_norm must lie in [0, {fmax:.6f}], got {f_norm!r}")
    f2 = min(max(f_norm, 0.0), fmax) ** 2
    t = np.array([(1.0 / d + f2) / 2, (1.0 / d - f2) / 2])
    return float(math.log2(2 * d) / d - _entropy_bits(t))


# --- independent multistart oracle -------------------------------------------


def oracle_holevo(
    ch: QuantumChannel,
    n_states: int = 4,
    restarts: int = 64,
    seed: int = 20260808,
) -> CapacityResult:
    """Multistart Nelder-Mead maximization of the Holevo information.

    Free ensembles of ``n_states`` pure qubit states with free weights
    (squared-amplitude parametrization); deterministic for a fixed seed.
    Serves as the independent cross-check for the reduced optimizer.
    """
    if ch.din != 2:
        raise DimensionMismatchError(f"oracle supports qubit inputs only, got din={ch.din}")
    if not 1 <= n_states <= 4:
        raise OutOfRangeError(f"n_states must lie in 1..4, got {n_states}")
    kstack = ch.kraus_stack()

    def unpack(x):
        th = x[:n_states]
        ph = x[n_states : 2 * n_states]
        y = x[2 * n_states :]
        w = y * y
        total = w.sum()
        w = np.full(n_states, 1.0 / n_states) if total <= 0 else w / total
        psi = np.stack([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)], axis=-1)
        rho = psi[:, :, None] * psi.conj()[:, None, :]
        return w, rho

    def negative(x):
        w, rho = unpack(x)
        batch = np.concatenate([rho, (w[:, None, None] * rho).sum(axis=0)[None]], axis=0)
        out = np.einsum("aij,njk,alk->nil", kstack, batch, kstack.conj(), optimize=True)
        ent = _output_entropies(out)
        return -(ent[-1] - (w * ent[:-1]).sum())

    rng = np.random.default_rng(seed)
    best_val, best_x = -np.inf, None
    for _ in range(max(restarts, 1)):
        x0 = np.concatenate(
            [
                rng.uniform(0.0, math.pi, n_states),
                rng.uniform(0.0, 2 * math.pi, n_states),
                rng.uniform(0.5, 1.5, n_states),
            ]
        )
        res = minimize(
            negative, x0, method="Nelder-Mead", options=dict(xatol=1e-7, fatol=1e-10, maxiter=4000, maxfev=4000)
        )
        if -res.fun > best_val:
            best_val, best_x = -res.fun, res.x
    polish = minimize(
        negative, best_x, method="Nelder-Mead", options=dict(xatol=1e-9, fatol=1e-12, maxiter=8000, maxfev=8000)
    )
    if -polish.fun > best_val:
        best_val, best_x = -polish.fun, polish.x
    weights, states = unpack(best_x)
    return CapacityResult(
        value_bits=float(max(best_val, 0.0)),
        argmax={
            "weights": [float(w) for w in weights],
            "thetas": [float(v) for v in best_x[:n_states]],
            "phis": [float(v) for v in best_x[n_states : 2 * n_states]],
        },
        kind=LOWER_BOUND,
    )


def control_state_dominance_check(
    build: Callable[[np.ndarray], QuantumChannel],
    samples: int = 20,
    seed: int = 515151,
    restarts: int = 16,
    baseline_restarts: int = 32,
    slack: float = 1e-4,
) -> bool:
    """Whether the |+> control state dominates random pure controls.

    For channels of the block form L+(rho) (x) omega + L-(rho) (x) Z omega Z,
    every control choice is a post-processing of the |+> choice, so its
    oracle capacity can never exceed the |+> baseline (within ``slack``).
    """
    from .linalg import KET_PLUS, projector, random_pure_state

    baseline = oracle_holevo(build(projector(KET_PLUS)), restarts=baseline_restarts, seed=seed).value_bits
    rng = np.random.default_rng(seed)
    for i in range(samples):
        ket = random_pure_state(rng, 2)
        value = oracle_holevo(build(projector(ket)), restarts=restarts, seed=seed + 7 * i + 1).value_bits
        if value > baseline + slack:
            return False
    return True
