"""
Channel instances for the two-user MIMO interference channel.

A channel is described by the antenna counts ``(M1, N1, M2, N2)``, the four
complex matrices ``H_ij`` (transmitter ``i`` to receiver ``j``, shape
``N_j x M_i``) and the four linear-scale link gains ``rho_ij``. Signals are
never materialized; everything downstream works on second-order statistics.

Random channels are drawn with numpy's PCG64 generator
(``numpy.random.default_rng``) so that a 64-bit integer seed fully
determines the output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

__all__ = [
    "AntennaConfig",
    "LinkGains",
    "ScalingExponents",
    "ChannelInstance",
    "ChannelError",
    "InvalidChannelError",
    "ChannelSchemaError",
    "ValidationReport",
    "validate",
    "reciprocal",
    "random_channel",
    "load_channel",
    "save_channel",
    "channel_to_dict",
    "channel_from_dict",
    "fig3_channel",
    "db_to_linear",
]

MATRIX_KEYS = ("h11", "h12", "h21", "h22")
GAIN_KEYS = ("rho11", "rho12", "rho21", "rho22")
CONFIG_KEYS = ("m1", "n1", "m2", "n2")


class ChannelError(ValueError):
    """Base class for channel-level input errors."""


class InvalidChannelError(ChannelError):
    """Raised when an operation receives a channel that fails validation."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid channel: " + "; ".join(report.violations))


class ChannelSchemaError(ChannelError):
    """Raised when a channel file cannot be parsed or violates the schema.

    ``field`` names the offending key (dotted path) when one is known, and
    ``line``/``column`` locate JSON syntax errors.
    """

    def __init__(self, message: str, field: str | None = None,
                 line: int | None = None, column: int | None = None):
        self.field = field
        self.line = line
        self.column = column
        super().__init__(message)


@dataclass(frozen=True)
class AntennaConfig:
    """Antenna counts ``(M1, N1, M2, N2)`` of the MIMO IC."""

    m1: int
    n1: int
    m2: int
    n2: int

    def __post_init__(self):
        for name in CONFIG_KEYS:
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ChannelError(f"{name} must be an integer, got {v!r}")
            if v < 1:
                raise ChannelError(f"{name} must be >= 1, got {v}")
            object.__setattr__(self, name, int(v))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.m1, self.n1, self.m2, self.n2)

    def shape(self, key: str) -> tuple[int, int]:
        """Expected ``(rows, cols)`` of matrix ``key`` ('h11', 'h12', ...)."""
        i, j = int(key[1]), int(key[2])
        m = self.m1 if i == 1 else self.m2
        n = self.n1 if j == 1 else self.n2
        return (n, m)


@dataclass(frozen=True)
class LinkGains:
    """Linear-scale power gains ``rho_ij`` of the four links.

    Construction does not check signs, so that :func:`validate` can report
    bad gains instead of failing on them.
    """

    rho11: float
    rho12: float
    rho21: float
    rho22: float

    def __post_init__(self):
        for name in GAIN_KEYS:
            object.__setattr__(self, name, float(getattr(self, name)))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.rho11, self.rho12, self.rho21, self.rho22)


@dataclass(frozen=True)
class ScalingExponents:
    """GDoF link-quality exponents ``alpha_ij`` with ``rho_ij ~ SNR**alpha_ij``.

    The direct exponents must be strictly positive: the GDoF constraints are
    written on ``alpha_11 d_1`` and ``alpha_22 d_2``.
    """

    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, v)
        if self.a11 <= 0 or self.a22 <= 0:
            raise ValueError(
                "direct-link exponents a11 and a22 must be > 0 "
                f"(got a11={self.a11}, a22={self.a22})")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a11, self.a12, self.a21, self.a22)


def _readonly(a) -> np.ndarray:
    arr = np.array(a, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ChannelInstance:
    """A complete MIMO IC: antenna counts, matrices and link gains.

    Matrices are copied to read-only complex arrays. ``h_ij`` maps
    transmitter ``i`` to receiver ``j`` and should have shape
    ``(N_j, M_i)``; mismatches are reported by :func:`validate`.
    """

    config: AntennaConfig
    h11: np.ndarray
    h12: np.ndarray
    h21: np.ndarray
    h22: np.ndarray
    gains: LinkGains = field(default_factory=lambda: LinkGains(1, 1, 1, 1))

    def __post_init__(self):
        for key in MATRIX_KEYS:
            object.__setattr__(self, key, _readonly(getattr(self, key)))

    def matrix(self, i: int, j: int) -> np.ndarray:
        return getattr(self, f"h{i}{j}")

    def rho(self, i: int, j: int) -> float:
        return getattr(self.gains, f"rho{i}{j}")

    def tx_antennas(self, i: int) -> int:
        return self.config.m1 if i == 1 else self.config.m2

    def rx_antennas(self, j: int) -> int:
        return self.config.n1 if j == 1 else self.config.n2

    def with_gains(self, gains: LinkGains) -> "ChannelInstance":
        return ChannelInstance(self.config, self.h11, self.h12, self.h21,
                               self.h22, gains)

    def __eq__(self, other):
        if not isinstance(other, ChannelInstance):
            return NotImplemented
        return (self.config == other.config and self.gains == other.gains
                and all(np.array_equal(getattr(self, k), getattr(other, k))
                        for k in MATRIX_KEYS))

    __hash__ = None


@dataclass(frozen=True)
class ValidationReport:
    """Every invariant violated by a channel; empty means valid."""

    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)


def validate(ch: ChannelInstance) -> ValidationReport:
    """Check dimensions, gain signs and finiteness of a channel.

    Returns a report rather than raising.
    """
    problems = []
    for key in MATRIX_KEYS:
        h = getattr(ch, key)
        want = ch.config.shape(key)
        if h.ndim != 2 or h.shape != want:
            problems.append(
                f"{key}: dimension mismatch, expected {want[0]}x{want[1]}, "
                f"got {'x'.join(str(s) for s in h.shape)}")
        if not np.all(np.isfinite(h)):
            problems.append(f"{key}: non-finite entry")
    for key in GAIN_KEYS:
        v = getattr(ch.gains, key)
        if not math.isfinite(v):
            problems.append(f"{key}: non-finite gain {v}")
        elif v < 0:
            problems.append(f"{key}: negative gain {v}")
    return ValidationReport(tuple(problems))


def require_valid(ch: ChannelInstance) -> ChannelInstance:
    report = validate(ch)
    if not report.ok:
        raise InvalidChannelError(report)
    return ch


def reciprocal(ch: ChannelInstance) -> ChannelInstance:
    """Return the reciprocal channel (information flow reversed).

    Antennas ``(M1, N1, M2, N2) -> (N1, M1, N2, M2)``; the new
    ``(h11, h12, h21, h22)`` are ``(H11^T, H21^T, H12^T, H22^T)`` and the
    cross gains are exchanged.
    """
    require_valid(ch)
    c = ch.config
    g = ch.gains
    return ChannelInstance(
        AntennaConfig(c.n1, c.m1, c.n2, c.m2),
        h11=ch.h11.T, h12=ch.h21.T, h21=ch.h12.T, h22=ch.h22.T,
        gains=LinkGains(g.rho11, g.rho21, g.rho12, g.rho22),
    )


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """i.i.d. CN(0, 1) samples: real and imaginary parts each of variance 1/2."""
    return (rng.standard_normal(shape)
            + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def random_channel(config: AntennaConfig, gains: LinkGains,
                   seed: int) -> ChannelInstance:
    """Draw a channel with i.i.d. CN(0, 1) matrix entries.

    Matrices are drawn in the order h11, h12, h21, h22 from a single PCG64
    stream seeded with ``seed``.
    """
    rng = np.random.default_rng(seed)
    mats = {key: complex_gaussian(rng, config.shape(key))
            for key in MATRIX_KEYS}
    return ChannelInstance(config, gains=gains, **mats)


def db_to_linear(db: float) -> float:
    return 10.0 ** (float(db) / 10.0)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _matrix_to_list(h: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in h]


def channel_to_dict(ch: ChannelInstance) -> dict:
    c = ch.config
    return {
        "config": {"m1": c.m1, "n1": c.n1, "m2": c.m2, "n2": c.n2},
        "gains": {k: getattr(ch.gains, k) for k in GAIN_KEYS},
        **{k: _matrix_to_list(getattr(ch, k)) for k in MATRIX_KEYS},
    }


def _check_keys(obj, expected: Iterable[str], where: str):
    if not isinstance(obj, dict):
        raise ChannelSchemaError(f"{where or 'document'} must be a JSON object",
                                 field=where or None)
    expected = tuple(expected)
    prefix = f"{where}." if where else ""
    for k in obj:
        if k not in expected:
            raise ChannelSchemaError(f"unknown key {prefix}{k}",
                                     field=f"{prefix}{k}")
    for k in expected:
        if k not in obj:
            raise ChannelSchemaError(f"missing key {prefix}{k}",
                                     field=f"{prefix}{k}")


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _matrix_from_list(rows, key: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ChannelSchemaError(f"{key} must be a non-empty list of rows",
                                 field=key)
    width = None
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list):
            raise ChannelSchemaError(f"{key}[{r}] must be a list", field=key)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ChannelSchemaError(f"{key}: ragged rows", field=key)
        vals = []
        for c, pair in enumerate(row):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(_is_number(x) for x in pair)):
                raise ChannelSchemaError(
                    f"{key}[{r}][{c}] must be a [re, im] pair of numbers",
                    field=key)
            vals.append(complex(float(pair[0]), float(pair[1])))
        out.append(vals)
    if width == 0:
        raise ChannelSchemaError(f"{key} has empty rows", field=key)
    return np.array(out, dtype=complex)


def channel_from_dict(doc) -> ChannelInstance:
    """Build a channel from the JSON document model, enforcing the schema."""
    _check_keys(doc, ("config", "gains") + MATRIX_KEYS, "")
    _check_keys(doc["config"], CONFIG_KEYS, "config")
    _check_keys(doc["gains"], GAIN_KEYS, "gains")
    try:
        config = AntennaConfig(**doc["config"])
    except ChannelError as exc:
        raise ChannelSchemaError(f"config: {exc}", field="config") from exc
    for k in GAIN_KEYS:
        if not _is_number(doc["gains"][k]):
            raise ChannelSchemaError(f"gains.{k} must be a number",
                                     field=f"gains.{k}")
    gains = LinkGains(**doc["gains"])
    mats = {k: _matrix_from_list(doc[k], k) for k in MATRIX_KEYS}
    ch = ChannelInstance(config, gains=gains, **mats)
    report = validate(ch)
    if not report.ok:
        first = report.violations[0]
        raise ChannelSchemaError("; ".join(report.violations),
                                 field=first.split(":", 1)[0])
    return ch


def save_channel(ch: ChannelInstance, path) -> None:
    """Write ``ch`` as UTF-8 JSON; doubles use shortest round-trip repr."""
    require_valid(ch)
    text = json.dumps(channel_to_dict(ch), indent=2, allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_channel(path) -> ChannelInstance:
    """Read a channel file, raising :class:`ChannelSchemaError` on problems."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChannelSchemaError(
            f"{path}: parse error at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}", line=exc.lineno, column=exc.colno) from exc
    return channel_from_dict(doc)


def fig3_channel() -> ChannelInstance:
    """The (5, 6, 4, 3) example channel shipped with the package."""
    from importlib.resources import files
    with files("fbmimo").joinpath("data/fig3_channel.json").open(
            "r", encoding="utf-8") as fh:
        return channel_from_dict(json.load(fh))
