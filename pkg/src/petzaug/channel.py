"""Classical-quantum channel model: validation, random generation,
serialization, and the classical (diagonal) embedding."""

import hashlib
import json
import logging
from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .errors import (
    ChannelFormatError,
    ChannelValidationError,
    InvalidParameterError,
)

logger = logging.getLogger(__name__)

FORMAT_TAG = "cq-channel/1"
# random_channel rejects states this close to singular and re-draws
FULL_RANK_MIN_EIG = 1e-12


@dataclass
class CQChannel:
    """Ordered list of n density matrices of shared dimension d.

    ``states`` has shape (n, d, d).  Treated as immutable after
    construction; ``powered`` caches the alpha-powered states per session.
    """

    states: np.ndarray
    ensemble: str = "ginibre"
    seed: int | None = None
    _power_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.states = np.ascontiguousarray(self.states, dtype=np.complex128)
        if self.states.ndim != 3 or self.states.shape[1] != self.states.shape[2]:
            raise InvalidParameterError(
                f"states must have shape (n, d, d), got {self.states.shape}"
            )

    @property
    def n(self):
        return self.states.shape[0]

    @property
    def d(self):
        return self.states.shape[1]

    def powered(self, alpha):
        """States raised to the alpha power, cached per alpha."""
        key = float(alpha)
        if key not in self._power_cache:
            wa = np.stack([matcore.mat_power(w, key) for w in self.states])
            self._power_cache[key] = np.ascontiguousarray(wa)
        return self._power_cache[key]


@dataclass
class ClassicalChannel:
    """Classical channel as n rows of output probability vectors."""

    rows: np.ndarray

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float)
        if self.rows.ndim != 2:
            raise InvalidParameterError("rows must be a 2-d array")
        if self.rows.min() < 0 or np.max(np.abs(self.rows.sum(axis=1) - 1)) > 1e-10:
            raise ChannelValidationError("every row must be a probability vector")

    @property
    def n(self):
        return self.rows.shape[0]

    @property
    def d(self):
        return self.rows.shape[1]


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return "channel valid"
        return "\n".join(
            f"state {j}: {kind} violation, magnitude {mag:.3e}"
            for j, kind, mag in self.violations
        )


def validate(ch):
    """Check every state against the density-matrix invariants.

    Returns a report listing (index, kind, magnitude) per violation.
    """
    violations = []
    for j, w in enumerate(ch.states):
        herm_dev = float(np.max(np.abs(w - w.conj().T)))
        if herm_dev > matcore.HERMITICITY_TOL:
            violations.append((j, "hermiticity", herm_dev))
            continue
        lam, _ = matcore.herm_eig(w)
        if lam.min() < -matcore.PSD_EIG_TOL:
            violations.append((j, "positivity", float(-lam.min())))
        tr_dev = abs(float(np.trace(w).real) - 1.0)
        if tr_dev > matcore.TRACE_TOL:
            violations.append((j, "trace", tr_dev))
    return ValidationReport(violations)


def _ginibre_state(d, seed_key):
    rng = np.random.default_rng(seed_key)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_channel(n, d, seed):
    """Seeded random channel of full-rank Ginibre density matrices.

    Identical seeds reproduce identical channels bit-for-bit.  Rank-deficient
    draws (min eigenvalue <= 1e-12) are re-drawn with an incremented
    sub-seed.
    """
    if n < 1 or d < 1:
        raise InvalidParameterError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    states = np.empty((n, d, d), dtype=np.complex128)
    for j in range(n):
        for attempt in range(100):
            rho = _ginibre_state(d, (int(seed), j, attempt))
            lam, _ = matcore.herm_eig(rho)
            if lam.min() > FULL_RANK_MIN_EIG:
                break
            logger.warning(
                "state %d draw %d nearly singular (min eig %.3e), re-drawing",
                j,
                attempt,
                lam.min(),
            )
        states[j] = rho
    return CQChannel(states, ensemble="ginibre", seed=int(seed))


def embed_classical(cc):
    """Embed a classical channel as diagonal quantum states."""
    states = np.stack([np.diag(row).astype(np.complex128) for row in cc.rows])
    return CQChannel(states, ensemble="classical-diagonal")


def extract_classical(ch, tol=1e-12):
    """Inverse of embed_classical; requires every state diagonal."""
    rows = np.empty((ch.n, ch.d))
    for j, w in enumerate(ch.states):
        off = w - np.diag(np.diag(w))
        if np.max(np.abs(off)) > tol:
            raise InvalidParameterError(f"state {j} is not diagonal")
        rows[j] = np.diag(w).real
    return ClassicalChannel(rows)


def _complex_to_pairs(m):
    return [[[z.real, z.imag] for z in row] for row in m]


def _pairs_to_complex(rows, j):
    try:
        arr = np.array(
            [[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128
        )
    except (TypeError, ValueError) as exc:
        raise ChannelFormatError(f"state {j}: malformed entry pairs: {exc}") from exc
    return arr

def save_channel(ch, path):
    """Write the channel JSON file (complex entries as [re, im] pairs)."""
    doc = {
        "format": FORMAT_TAG,
        "n": ch.n,
        "d": ch.d,
        "ensemble": ch.ensemble,
        "seed": ch.seed,
        "states": [_complex_to_pairs(w) for w in ch.states],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_channel(path):
    """Read a channel JSON file, validating format and invariants."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ChannelFormatError(f"{path}: {exc}") from exc
    for key in ("format", "n", "d", "states"):
        if key not in doc:
            raise ChannelFormatError(f"{path}: missing field {key!r}")
    if doc["format"] != FORMAT_TAG:
        raise ChannelFormatError(f"{path}: unknown format {doc['format']!r}")
    n, d = int(doc["n"]), int(doc["d"])
    if len(doc["states"]) != n:
        raise ChannelFormatError(
            f"{path}: header n={n} but {len(doc['states'])} states present"
        )
    states = np.empty((n, d, d), dtype=np.complex128)
    for j, raw in enumerate(doc["states"]):
        arr = _pairs_to_complex(raw, j)
        if arr.shape != (d, d):
            raise ChannelValidationError(
                f"{path}: state {j} has shape {arr.shape}, header says ({d}, {d})"
            )
        states[j] = arr
    ch = CQChannel(states, ensemble=doc.get("ensemble", "unknown"), seed=doc.get("seed"))
    report = validate(ch)
    if not report.ok:
        raise ChannelValidationError(f"{path}: {report}")
    return ch


def channel_hash(ch):
    """Content hash of the channel's states (hex)."""
    return hashlib.sha256(np.ascontiguousarray(ch.states).tobytes()).hexdigest()
