"""Channel constructions for a single particle crossing correlated noise.

A two-use transmission line is a correlated random-unitary channel: unitaries
``V_m`` drawn with joint probability ``p(m, n)`` act on the uses at the two
times.  Extending each unitary to the vacuum sector with a phase ``phi_m``
and sending one particle at a superposition of the two times yields the
effective channel on message (x) control built here, together with its
network counterpart (two lines crossed by two alternative paths), the
coherently controlled order swap of two channels, control dephasing, and
structural tools (Choi matrices, interference operator, PPT block checks).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidChannelError,
    InvalidSpecError,
    InvalidStateError,
    NotIndependentError,
    NotSymmetricError,
    OutOfRangeError,
)
from .linalg import (
    HERMITIAN_ATOL,
    KET_PLUS,
    PAULIS,
    Z,
    dagger,
    hermitian_eigensystem,
    kron,
    max_entangled_ket,
    partial_transpose,
    projector,
    require_square,
)

TWO_PI = 2 * math.pi

PROJ0 = np.array([[1, 0], [0, 0]], dtype=complex)
PROJ1 = np.array([[0, 0], [0, 1]], dtype=complex)
PROJ0.flags.writeable = False
PROJ1.flags.writeable = False

#: permutation exchanging 0 with 1 and 2 with 3 (the pair swap used throughout)
PAIR_SWAP = (1, 0, 3, 2)

JOINT_ATOL = 1e-12
TRACE_PRESERVING_ATOL = 1e-9
COMPLETE_POSITIVITY_ATOL = 1e-9

_EIGENVALUE_CUTOFF = 1e-14  # below this, spectral weights are dropped as zero


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class VacuumExtendedUnitary:
    """A one-particle unitary paired with the phase its vacuum extension applies."""

    matrix: np.ndarray
    phase: float = 0.0

    def __post_init__(self):
        m = require_square(self.matrix)
        defect = float(np.abs(dagger(m) @ m - np.eye(m.shape[0])).max())
        if defect > HERMITIAN_ATOL:
            raise InvalidSpecError(f"matrix is not unitary (V^dag V deviates from I by {defect:.3e})")
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "phase", float(self.phase) % TWO_PI)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class CorrelatedChannelSpec:
    """A set of vacuum-extended unitaries plus the joint distribution over two uses."""

    unitaries: tuple[VacuumExtendedUnitary, ...]
    joint: np.ndarray

    def __post_init__(self):
        unitaries = tuple(self.unitaries)
        if not unitaries:
            raise InvalidSpecError("unitaries must be non-empty")
        d = unitaries[0].dim
        if any(u.dim != d for u in unitaries):
            raise InvalidSpecError("all unitaries must share one dimension")
        joint = np.asarray(self.joint, dtype=float)
        r = len(unitaries)
        if joint.shape != (r, r):
            raise InvalidSpecError(f"joint must be {r}x{r} to match {r} unitaries, got {joint.shape}")
        if joint.min() < 0:
            raise InvalidSpecError(f"joint has a negative entry ({joint.min():.3e})")
        total = joint.sum()
        if abs(total - 1.0) > JOINT_ATOL:
            raise InvalidSpecError(f"joint sums to {total!r}, expected 1 within {JOINT_ATOL:.0e}")
        joint = joint.copy()
        joint.flags.writeable = False
        object.__setattr__(self, "unitaries", unitaries)
        object.__setattr__(self, "joint", joint)

    @property
    def dim(self) -> int:
        return self.unitaries[0].dim

    @property
    def size(self) -> int:
        return len(self.unitaries)

    @property
    def phases(self) -> np.ndarray:
        return np.array([u.phase for u in self.unitaries])

    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        """(first-use, second-use) marginal distributions."""
        return self.joint.sum(axis=1), self.joint.sum(axis=0)

    @property
    def is_symmetric(self) -> bool:
        return bool(np.abs(self.joint - self.joint.T).max() <= JOINT_ATOL)

    @property
    def is_locally_uniform(self) -> bool:
        p1, p2 = self.marginals()
        u = 1.0 / self.size
        return bool(max(np.abs(p1 - u).max(), np.abs(p2 - u).max()) <= JOINT_ATOL)

    @property
    def is_independent(self) -> bool:
        p1, p2 = self.marginals()
        return bool(np.abs(self.joint - np.outer(p1, p2)).max() <= JOINT_ATOL)


@dataclass(frozen=True)
class QuantumChannel:
    """A completely positive trace-preserving map as a finite Kraus family."""

    kraus: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        ks = tuple(_frozen(k) for k in self.kraus)
        if not ks:
            raise InvalidChannelError("Kraus family must be non-empty")
        shape = ks[0].shape
        if any(k.shape != shape for k in ks):
            raise InvalidChannelError("all Kraus operators must share one shape")
        gram = sum(dagger(k) @ k for k in ks)
        defect = float(np.abs(gram - np.eye(shape[1])).max())
        if defect > TRACE_PRESERVING_ATOL:
            raise InvalidChannelError(
                f"Kraus family is not trace preserving (sum K^dag K deviates from I by {defect:.3e})"
            )
        object.__setattr__(self, "kraus", ks)

    @property
    def din(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def dout(self) -> int:
        return self.kraus[0].shape[0]

    def kraus_stack(self) -> np.ndarray:
        """Kraus operators as one (k, dout, din) array."""
        return np.stack(self.kraus)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Channel output for a single density matrix."""
        return self.apply_batch(np.asarray(rho, dtype=complex)[None])[0]

    def apply_batch(self, rhos: np.ndarray) -> np.ndarray:
        """Channel output for a batch of density matrices, shape (n, din, din)."""
        ks = self.kraus_stack()
        return np.einsum("aij,njk,alk->nil", ks, np.asarray(rhos, dtype=complex), ks.conj(), optimize=True)


def depolarizing_qubit_channel() -> QuantumChannel:
    """The completely depolarising qubit channel in its Pauli Kraus form V_m / 2."""
    return QuantumChannel(tuple(p / 2 for p in PAULIS))


def as_control_state(omega: np.ndarray) -> np.ndarray:
    """Validate a control-qubit density matrix and return it as a 2x2 array."""
    w = require_square(np.asarray(omega, dtype=complex))
    if w.shape != (2, 2):
        raise InvalidStateError(f"control state must be 2x2, got {w.shape}")
    if float(np.abs(w - dagger(w)).max()) > HERMITIAN_ATOL:
        raise InvalidStateError("control state is not Hermitian")
    if abs(np.trace(w).real - 1.0) > 1e-9:
        raise InvalidStateError(f"control state has trace {np.trace(w).real!r}, expected 1")
    vals, _ = hermitian_eigensystem(w)
    if vals.min() < -1e-12:
        raise InvalidStateError(f"control state has negative eigenvalue {vals.min():.3e}")
    return w


def _control_branches(omega: np.ndarray) -> list[tuple[float, np.ndarray]]:
    """Spectral decomposition of the control state: (weight, unit ket) pairs."""
    w = as_control_state(omega)
    vals, vecs = hermitian_eigensystem(w)
    return [(float(v), vecs[:, i]) for i, v in enumerate(vals) if v > _EIGENVALUE_CUTOFF]


def pauli_realization(phases) -> CorrelatedChannelSpec:
    """Uniform independent two-use realization over the four Pauli unitaries.

    The marginal channel at either use is the full Pauli twirl (completely
    depolarising); only the vacuum phases distinguish realizations.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (4,):
        raise InvalidSpecError(f"expected 4 phases, got shape {phases.shape}")
    unitaries = tuple(VacuumExtendedUnitary(p, phi) for p, phi in zip(PAULIS, phases))
    return CorrelatedChannelSpec(unitaries, np.full((4, 4), 1 / 16))


def pauli_correlated(phases, sigma) -> CorrelatedChannelSpec:
    """Pauli realization with the permutation-correlated joint p(m,n) = delta_{m,sigma(n)}/4."""
    base = pauli_realization(phases)
    return CorrelatedChannelSpec(base.unitaries, permutation_joint(sigma, 4))


def permutation_joint(sigma, r: int) -> np.ndarray:
    """Joint distribution p(m, n) = 1/r if m = sigma(n) else 0; both marginals uniform."""
    perm = tuple(int(s) for s in sigma)
    if sorted(perm) != list(range(r)):
        raise InvalidSpecError(f"sigma must be a permutation of 0..{r - 1}, got {perm}")
    joint = np.zeros((r, r))
    for n, m in enumerate(perm):
        joint[m, n] = 1.0 / r
    return joint


def interference_operator(spec: CorrelatedChannelSpec) -> np.ndarray:
    """Vacuum interference operator F = sum_m p1(m) e^{-i phi_m} V_m.

    Only defined when the joint factorizes into its marginals; it is the
    amplitude-weighted Kraus sum governing the cross-branch term of the
    superposition, and its operator norm is at most 1/sqrt(d) whenever the
    marginal channel is completely depolarising.
    """
    if not spec.is_independent:
        raise NotIndependentError("joint does not factorize into its marginals")
    p1, _ = spec.marginals()
    f = np.zeros((spec.dim, spec.dim), dtype=complex)
    for p, u in zip(p1, spec.unitaries):
        f += p * np.exp(-1j * u.phase) * u.matrix
    return f


def _w_single(spec: CorrelatedChannelSpec, m: int, n: int) -> np.ndarray:
    um, un = spec.unitaries[m], spec.unitaries[n]
    return kron(um.matrix * np.exp(1j * un.phase), PROJ0) + kron(un.matrix * np.exp(1j * um.phase), PROJ1)


def effective_single(spec: CorrelatedChannelSpec, omega: np.ndarray) -> QuantumChannel:
    """Effective channel on the message when one particle rides both uses coherently.

    Maps a message state rho to  sum_{m,n} p(m,n) W_mn (rho (x) omega) W_mn^dag
    with W_mn = V_m e^{i phi_n} (x) |0><0| + e^{i phi_m} V_n (x) |1><1|.
    Input dimension d, output dimension 2d (message (x) control); mixed
    control states enter through their spectral decomposition.
    """
    d = spec.dim
    inject = np.eye(d, dtype=complex)
    ks = []
    for weight, ket in _control_branches(omega):
        lift = kron(inject, ket.reshape(2, 1))
        for m in range(spec.size):
            for n in range(spec.size):
                p = spec.joint[m, n]
                if p <= 0.0:
                    continue
                ks.append(math.sqrt(p * weight) * (_w_single(spec, m, n) @ lift))
    return QuantumChannel(tuple(ks))


def effective_single_symmetric_decomposition(
    spec: CorrelatedChannelSpec, rho: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """(marginal part, interference part) of the symmetric-joint effective channel.

    Requires a symmetric joint.  The effective channel then splits as
    (C(rho)+G(rho))/2 (x) omega + (C(rho)-G(rho))/2 (x) Z omega Z, where the
    marginal part C ignores correlations and the interference part G carries
    them together with the vacuum-phase differences.
    """
    if not spec.is_symmetric:
        raise NotSymmetricError("joint distribution is not symmetric")
    r = np.asarray(rho, dtype=complex)
    d = spec.dim
    if r.shape != (d, d):
        raise DimensionMismatchError(f"state must be {d}x{d}, got {r.shape}")
    c_part = np.zeros((d, d), dtype=complex)
    g_part = np.zeros((d, d), dtype=complex)
    for m in range(spec.size):
        vm = spec.unitaries[m].matrix
        for n in range(spec.size):
            p = spec.joint[m, n]
            if p <= 0.0:
                continue
            vn = spec.unitaries[n].matrix
            c_part += p * vm @ r @ dagger(vm)
            g_part += p * np.exp(1j * (spec.unitaries[n].phase - spec.unitaries[m].phase)) * vm @ r @ dagger(vn)
    return c_part, g_part


def _w_network(
    a: CorrelatedChannelSpec, b: CorrelatedChannelSpec, m: int, n: int, k: int, l: int
) -> np.ndarray:
    pha, phb = a.phases, b.phases
    va = [u.matrix for u in a.unitaries]
    vb = [u.matrix for u in b.unitaries]
    first = vb[l] @ va[m] * np.exp(1j * (phb[k] + pha[n]))
    second = va[n] @ vb[k] * np.exp(1j * (pha[m] + phb[l]))
    return kron(first, PROJ0) + kron(second, PROJ1)


def effective_network(
    spec_a: CorrelatedChannelSpec, spec_b: CorrelatedChannelSpec, omega: np.ndarray
) -> QuantumChannel:
    """Effective channel for one particle crossing two correlated lines on two paths.

    One path traverses line A first and line B second; the other path visits
    them in the opposite order.  Perfectly correlated joints make this channel
    coincide with the coherent order swap of the two marginal channels.
    """
    if spec_a.dim != spec_b.dim:
        raise DimensionMismatchError(f"line dimensions differ: {spec_a.dim} vs {spec_b.dim}")
    d = spec_a.dim
    inject = np.eye(d, dtype=complex)
    ks = []
    for weight, ket in _control_branches(omega):
        lift = kron(inject, ket.reshape(2, 1))
        for m in range(spec_a.size):
            for n in range(spec_a.size):
                pa = spec_a.joint[m, n]
                if pa <= 0.0:
                    continue
                for k in range(spec_b.size):
                    for l in range(spec_b.size):
                        pb = spec_b.joint[k, l]
                        if pb <= 0.0:
                            continue
                        ks.append(math.sqrt(pa * pb * weight) * (_w_network(spec_a, spec_b, m, n, k, l) @ lift))
    return QuantumChannel(tuple(ks))


def quantum_switch(a: QuantumChannel, b: QuantumChannel, omega: np.ndarray) -> QuantumChannel:
    """Coherently controlled order swap of two channels, with the control fixed.

    Kraus operators A_m B_k (x) |0><0| + B_k A_m (x) |1><1| applied to
    rho (x) omega; the resulting channel does not depend on which Kraus
    representations of the inputs are used.
    """
    if a.din != a.dout or b.din != b.dout:
        raise DimensionMismatchError("both channels must have equal input and output dimension")
    if a.din != b.din:
        raise DimensionMismatchError(f"channel dimensions differ: {a.din} vs {b.din}")
    d = a.din
    inject = np.eye(d, dtype=complex)
    ks = []
    for weight, ket in _control_branches(omega):
        lift = kron(inject, ket.reshape(2, 1))
        for am in a.kraus:
            for bk in b.kraus:
                s = kron(am @ bk, PROJ0) + kron(bk @ am, PROJ1)
                ks.append(math.sqrt(weight) * (s @ lift))
    return QuantumChannel(tuple(ks))


def dephase_control(ch: QuantumChannel, s: float) -> QuantumChannel:
    """Compose phase noise on the control after a message (x) control channel.

    The control undergoes omega -> s Z omega Z + (1-s) omega, which damps the
    interference part of block-form channels by a factor 1 - 2s.
    """
    if not 0.0 <= s <= 0.5:
        raise OutOfRangeError(f"dephasing probability must lie in [0, 1/2], got {s!r}")
    if ch.dout % 2 != 0:
        raise DimensionMismatchError(f"output dimension must be even, got {ch.dout}")
    d = ch.dout // 2
    zc = kron(np.eye(d, dtype=complex), Z)
    ks = []
    if 1.0 - s > 0.0:
        ks.extend(math.sqrt(1.0 - s) * k for k in ch.kraus)
    if s > 0.0:
        ks.extend(math.sqrt(s) * (zc @ k) for k in ch.kraus)
    return QuantumChannel(tuple(ks))


def choi(ch: QuantumChannel) -> np.ndarray:
    """Choi matrix (output (x) reference), positive semidefinite with trace din.

    Channel equality is Choi equality, independent of Kraus representation.
    """
    dim = ch.dout * ch.din
    j = np.zeros((dim, dim), dtype=complex)
    for k in ch.kraus:
        v = k.ravel()
        j += np.outer(v, v.conj())
    return j


def channels_equal(a: QuantumChannel, b: QuantumChannel, atol: float = 1e-10) -> bool:
    """Whether two channels agree as maps (max Choi entry distance below atol)."""
    if a.din != b.din or a.dout != b.dout:
        return False
    return bool(np.abs(choi(a) - choi(b)).max() < atol)


def channel_from_map(apply_fn, din: int, dout: int, cp_atol: float = COMPLETE_POSITIVITY_ATOL) -> QuantumChannel:
    """Kraus family of a linear map given as a callable on density matrices.

    Builds the Choi matrix column by column and eigendecomposes it; the map
    must be completely positive within ``cp_atol`` and trace preserving.
    """
    j = np.zeros((dout * din, dout * din), dtype=complex)
    basis = np.zeros((din, din), dtype=complex)
    for i in range(din):
        for k in range(din):
            basis[i, k] = 1.0
            j += kron(apply_fn(basis.copy()), basis)
            basis[i, k] = 0.0
    vals, vecs = hermitian_eigensystem(j, atol=1e-8)
    if vals.min() < -cp_atol:
        raise InvalidChannelError(f"map is not completely positive (Choi eigenvalue {vals.min():.3e})")
    ks = [
        math.sqrt(v) * vecs[:, i].reshape(dout, din)
        for i, v in enumerate(vals)
        if v > _EIGENVALUE_CUTOFF
    ]
    return QuantumChannel(tuple(ks))


def vacuum_interference_channel(
    f: np.ndarray, omega: np.ndarray | None = None, interference_scale: float = 1.0
) -> QuantumChannel:
    """Effective channel of superposed uncorrelated depolarising noise with operator ``f``.

    rho -> (I/d Tr rho + g F rho F^dag)/2 (x) omega + (I/d Tr rho - g F rho F^dag)/2 (x) Z omega Z,
    where g is ``interference_scale`` (1 for the noiseless control, 1-2s after
    control dephasing by s).
    """
    ff = require_square(np.asarray(f, dtype=complex))
    d = ff.shape[0]
    w = as_control_state(projector(KET_PLUS) if omega is None else omega)
    wz = Z @ w @ Z
    eye = np.eye(d, dtype=complex)
    g = float(interference_scale)

    def apply_fn(rho):
        depol = eye * (np.trace(rho) / d)
        cross = g * (ff @ rho @ dagger(ff))
        return kron((depol + cross) / 2, w) + kron((depol - cross) / 2, wz)

    return channel_from_map(apply_fn, d, 2 * d)


def pair_swap_network_channel(phases, omega: np.ndarray | None = None) -> QuantumChannel:
    """Closed form of the two-line network with the pair-swap joint on both lines.

    For Pauli unitaries and p_A = p_B = delta_{n,sigma(m)}/4 with sigma the
    permutation swapping 0<->1 and 2<->3, the interference part reduces to
    K(rho) = ([cos 2(phi1-phi0) + cos 2(phi3-phi2)] rho + 2 X rho X)/8, and the
    channel is (I/2 + K)/2 (x) omega + (I/2 - K)/2 (x) Z omega Z.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (4,):
        raise InvalidSpecError(f"expected 4 phases, got shape {phases.shape}")
    c = math.cos(2 * (phases[1] - phases[0])) + math.cos(2 * (phases[3] - phases[2]))
    w = as_control_state(projector(KET_PLUS) if omega is None else omega)
    wz = Z @ w @ Z
    x = PAULIS[1]
    eye = np.eye(2, dtype=complex)

    def apply_fn(rho):
        depol = eye * (np.trace(rho) / 2)
        cross = (c * rho + 2 * x @ rho @ x) / 8
        return kron((depol + cross) / 2, w) + kron((depol - cross) / 2, wz)

    return channel_from_map(apply_fn, 2, 4)


def block_ppt_check(f: np.ndarray, atol: float = 1e-10) -> bool:
    """Whether I/4 +- G_F both stay positive under partial transposition.

    G_F = (F (x) I) |Phi+><Phi+| (F (x) I)^dag.  Admissible interference
    operators (norm at most 1/sqrt(2)) always pass; the check failing
    certifies an inadmissible F.
    """
    ff = require_square(np.asarray(f, dtype=complex))
    if ff.shape != (2, 2):
        raise DimensionMismatchError(f"expected a 2x2 operator, got {ff.shape}")
    lifted = kron(ff, np.eye(2, dtype=complex))
    g = lifted @ projector(max_entangled_ket(2)) @ dagger(lifted)
    base = np.eye(4, dtype=complex) / 4
    for sign in (+1.0, -1.0):
        block = base + sign * g
        pt = partial_transpose(block, (2, 2), "B")
        vals, _ = hermitian_eigensystem(pt)
        if vals.min() < -atol:
            return False
    return True


# --- wire format -----------------------------------------------------------

def spec_to_dict(spec: CorrelatedChannelSpec) -> dict:
    """JSON-ready form: row-major matrices with complex entries as [re, im] pairs."""
    return {
        "unitaries": [
            {
                "matrix": [[float(z.real), float(z.imag)] for z in u.matrix.ravel()],
                "phase": float(u.phase),
            }
            for u in spec.unitaries
        ],
        "joint": [[float(x) for x in row] for row in spec.joint],
    }


def spec_from_dict(doc: dict) -> CorrelatedChannelSpec:
    """Parse and validate the wire format, naming the offending field on error."""
    if not isinstance(doc, dict):
        raise InvalidSpecError(f"expected a JSON object, got {type(doc).__name__}")
    for key in ("unitaries", "joint"):
        if key not in doc:
            raise InvalidSpecError(f"missing field {key!r}")
    raw_unitaries = doc["unitaries"]
    if not isinstance(raw_unitaries, list) or not raw_unitaries:
        raise InvalidSpecError("unitaries: expected a non-empty list")
    unitaries = []
    for i, item in enumerate(raw_unitaries):
        where = f"unitaries[{i}]"
        if not isinstance(item, dict) or "matrix" not in item or "phase" not in item:
            raise InvalidSpecError(f"{where}: expected an object with 'matrix' and 'phase'")
        entries = item["matrix"]
        if not isinstance(entries, list) or not entries:
            raise InvalidSpecError(f"{where}.matrix: expected a non-empty list of [re, im] pairs")
        d = math.isqrt(len(entries))
        if d * d != len(entries):
            raise InvalidSpecError(f"{where}.matrix: length {len(entries)} is not a perfect square")
        try:
            flat = [complex(float(re), float(im)) for re, im in entries]
        except (TypeError, ValueError) as exc:
            raise InvalidSpecError(f"{where}.matrix: entries must be [re, im] pairs ({exc})") from exc
        try:
            phase = float(item["phase"])
        except (TypeError, ValueError) as exc:
            raise InvalidSpecError(f"{where}.phase: expected a number ({exc})") from exc
        try:
            unitaries.append(VacuumExtendedUnitary(np.array(flat).reshape(d, d), phase))
        except InvalidSpecError as exc:
            raise InvalidSpecError(f"{where}: {exc}") from exc
    try:
        joint = np.array(doc["joint"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidSpecError(f"joint: expected a matrix of numbers ({exc})") from exc
    if joint.ndim != 2:
        raise InvalidSpecError(f"joint: expected a 2-d matrix, got {joint.ndim}-d")
    return CorrelatedChannelSpec(tuple(unitaries), joint)


def save_spec(spec: CorrelatedChannelSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2)
        fh.write("\n")


def load_spec(path) -> CorrelatedChannelSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return spec_from_dict(doc)
