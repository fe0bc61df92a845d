"""Channel model for a two-user Gaussian interference channel with a
half-duplex out-of-band relay.

The system consists of two parallel channels: the interference channel
(IC) itself, and the orthogonal band in which the relay operates.  The
relay band is split between a multiple-access phase (sources to relay,
bandwidth fraction ``eta_mac``) and a broadcast phase (relay to
destinations, fraction ``eta_bc``).  Direct IC gains are normalized to 1
and all noises have unit power, so powers are linear SNRs and gains are
real amplitudes.  Every SNR expression squares the amplitudes.

All types are immutable values and all functions are pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

#: absolute tolerance for the eta_mac + eta_bc = eta consistency check
BW_TOL = 1e-12

GAIN_FIELDS = ("a12", "a21", "b1", "b2", "c1", "c2")
POWER_FIELDS = ("P1", "P2", "P1R", "P2R", "PR")


def _check_nonneg(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
    return value


@dataclass(frozen=True)
class ChannelGains:
    """Amplitude gains of the IC and the relay band.

    a12, a21: cross gains on the IC (source j to destination i != j).
    b1, b2:   source-to-relay gains (multiple-access phase).
    c1, c2:   relay-to-destination gains (broadcast phase).
    """

    a12: float
    a21: float
    b1: float
    b2: float
    c1: float
    c2: float

    def __post_init__(self):
        for name in GAIN_FIELDS:
            object.__setattr__(self, name, _check_nonneg(name, getattr(self, name)))


@dataclass(frozen=True)
class Powers:
    """Transmit powers in linear SNR units (unit noise power).

    P1, P2:   source powers on the IC.
    P1R, P2R: source powers in the relay multiple-access phase.
    PR:       relay power in the broadcast phase.
    """

    P1: float
    P2: float
    P1R: float
    P2R: float
    PR: float

    def __post_init__(self):
        for name in POWER_FIELDS:
            object.__setattr__(self, name, _check_nonneg(name, getattr(self, name)))


@dataclass(frozen=True)
class BandwidthSplit:
    """Relay-band bandwidth fractions, relative to the IC bandwidth.

    ``eta`` is the total relay-band to IC bandwidth ratio and must equal
    ``eta_mac + eta_bc`` (half-duplex relay: it either listens or talks).
    """

    eta: float
    eta_mac: float
    eta_bc: float

    def __post_init__(self):
        for name in ("eta", "eta_mac", "eta_bc"):
            object.__setattr__(self, name, _check_nonneg(name, getattr(self, name)))
        if abs(self.eta_mac + self.eta_bc - self.eta) > BW_TOL:
            raise ValueError(
                f"eta_mac + eta_bc must equal eta: "
                f"{self.eta_mac} + {self.eta_bc} != {self.eta}"
            )


@dataclass(frozen=True)
class PowerSplit:
    """Relay broadcast power split.

    ``xi`` is the fraction of relay power spent on the stream decoded by
    destination 1 (the relayed message of source 1 plus any forwarded
    common message of source 2); ``xi_bar`` serves destination 2.  When
    ``xi_bar`` is omitted it defaults to ``1 - xi``, which is optimal
    because every rate term is nondecreasing in ``xi_bar``.
    """

    xi: float
    xi_bar: float = None  # type: ignore[assignment]

    def __post_init__(self):
        xi = float(self.xi)
        if not math.isfinite(xi) or not 0.0 <= xi <= 1.0:
            raise ValueError(f"xi must lie in [0, 1], got {xi!r}")
        object.__setattr__(self, "xi", xi)
        xi_bar = 1.0 - xi if self.xi_bar is None else float(self.xi_bar)
        if not math.isfinite(xi_bar) or xi_bar < 0 or xi + xi_bar > 1.0 + BW_TOL:
            raise ValueError(f"need 0 <= xi_bar and xi + xi_bar <= 1, got {xi_bar!r}")
        object.__setattr__(self, "xi_bar", xi_bar)


@dataclass(frozen=True)
class Scenario:
    """One complete channel instance: gains, powers, bandwidth split.

    ``bw`` may be None for scenarios fed to the bandwidth optimizer,
    which chooses the split itself; all other consumers require it.
    """

    gains: ChannelGains
    powers: Powers
    bw: BandwidthSplit | None = None

    def require_bw(self) -> BandwidthSplit:
        if self.bw is None:
            raise ValueError("scenario has no bandwidth split (eta_mac/eta_bc)")
        return self.bw

    def with_bandwidth(self, eta_mac: float, eta_bc: float) -> "Scenario":
        return replace(self, bw=BandwidthSplit(eta_mac + eta_bc, eta_mac, eta_bc))

    def with_param(self, name: str, value: float) -> "Scenario":
        """Return a copy with one gain or power replaced."""
        if name in GAIN_FIELDS:
            return replace(self, gains=replace(self.gains, **{name: value}))
        if name in POWER_FIELDS:
            return replace(self, powers=replace(self.powers, **{name: value}))
        raise ValueError(f"unknown scenario parameter {name!r}")


@dataclass(frozen=True)
class RegimeFlags:
    """Gain-regime predicates used by the optimality conditions."""

    weak_a12: bool     # interference toward destination 2 is weak (a12 <= 1)
    bc_ordered: bool   # relay-to-D1 link at least as good as relay-to-D2 (c1 >= c2)
    strong_a21: bool   # a21 above the strong-interference threshold


def gaussian_capacity(snr):
    """Rate 0.5 * log2(1 + snr) of a real Gaussian channel, in bits per
    IC channel use.

    Accepts a scalar or an ndarray; validates snr >= 0 and finite.
    """
    arr = np.asarray(snr, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise ValueError(f"snr must be finite and >= 0, got {snr!r}")
    out = 0.5 * np.log2(1.0 + arr)
    return float(out) if np.isscalar(snr) or arr.ndim == 0 else out


def strong_interference_threshold(P1: float, a12: float) -> float:
    """Threshold on a21 above which source 2 can send common information
    only: sqrt((1 + P1) / (1 + a12^2 * P1))."""
    P1 = _check_nonneg("P1", P1)
    a12 = _check_nonneg("a12", a12)
    return math.sqrt((1.0 + P1) / (1.0 + a12 ** 2 * P1))


def regime_flags(sc: Scenario) -> RegimeFlags:
    """Evaluate the three regime predicates for a scenario."""
    g, p = sc.gains, sc.powers
    return RegimeFlags(
        weak_a12=g.a12 <= 1.0,
        bc_ordered=g.c1 >= g.c2,
        strong_a21=g.a21 >= strong_interference_threshold(p.P1, g.a12),
    )


def scenario_from_dict(doc: Mapping, require_bw: bool = True) -> Scenario:
    """Build a Scenario from a flat mapping with keys a12, a21, b1, b2,
    c1, c2, P1, P2, P1R, P2R, PR, eta, eta_mac, eta_bc.

    The bandwidth keys may be omitted when ``require_bw`` is False (the
    bandwidth optimizer supplies its own split).
    """
    missing = [k for k in GAIN_FIELDS + POWER_FIELDS if k not in doc]
    if missing:
        raise ValueError(f"scenario config missing keys: {', '.join(missing)}")
    unknown = set(doc) - set(GAIN_FIELDS) - set(POWER_FIELDS) - {"eta", "eta_mac", "eta_bc"}
    if unknown:
        raise ValueError(f"unknown scenario keys: {', '.join(sorted(unknown))}")
    gains = ChannelGains(**{k: doc[k] for k in GAIN_FIELDS})
    powers = Powers(**{k: doc[k] for k in POWER_FIELDS})
    bw = None
    if "eta_mac" in doc or "eta_bc" in doc:
        if not {"eta_mac", "eta_bc"} <= set(doc):
            raise ValueError("eta_mac and eta_bc must be given together")
        eta = doc.get("eta", doc["eta_mac"] + doc["eta_bc"])
        bw = BandwidthSplit(eta, doc["eta_mac"], doc["eta_bc"])
    elif require_bw:
        raise ValueError("scenario config missing keys: eta_mac, eta_bc")
    return Scenario(gains, powers, bw)


def scenario_from_json(path, require_bw: bool = True) -> Scenario:
    """Load a Scenario from a JSON document (see scenario_from_dict)."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a JSON object at top level")
    return scenario_from_dict(doc, require_bw=require_bw)


def scenario_to_dict(sc: Scenario) -> dict:
    doc = {k: getattr(sc.gains, k) for k in GAIN_FIELDS}
    doc.update({k: getattr(sc.powers, k) for k in POWER_FIELDS})
    if sc.bw is not None:
        doc.update(eta=sc.bw.eta, eta_mac=sc.bw.eta_mac, eta_bc=sc.bw.eta_bc)
    return doc
