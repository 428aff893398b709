"""CNFET device model.

A carbon nanotube FET is characterized by the chiral vector (n1, n2) of its
tubes.  The chirality fixes the tube diameter, and the diameter fixes the
threshold voltage, which is the single knob this library uses to build
multi-threshold ternary logic.  Tubes with n1 - n2 divisible by 3 are
metallic and unusable as transistor channels.

All lengths are in nanometers and all voltages in volts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import MetallicTube, OutOfRange, ZeroChirality

# Diameter per unit chiral index: a0 * sqrt(3) / pi with a0 = 0.142 nm,
# folded into a single coefficient.
DIAMETER_COEF_NM = 0.0783

# First-order fit: Vth * D_CNT is a constant for semiconducting tubes.
VTH_DIAMETER_PRODUCT = 0.43

WIDTH_MODES = ("as_published", "corrected")


@dataclass(frozen=True)
class Chirality:
    """Chiral vector (n1, n2), normalized so n1 >= n2."""

    n1: int
    n2: int = 0

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise OutOfRange(f"chiral indices must be non-negative, got ({self.n1}, {self.n2})")
        if self.n1 == 0 and self.n2 == 0:
            raise ZeroChirality("chirality (0, 0) does not describe a tube")
        if self.n2 > self.n1:
            n1, n2 = self.n2, self.n1
            object.__setattr__(self, "n1", n1)
            object.__setattr__(self, "n2", n2)

    def __iter__(self):
        return iter((self.n1, self.n2))


def _as_chirality(c) -> Chirality:
    if isinstance(c, Chirality):
        return c
    n1, n2 = c
    return Chirality(int(n1), int(n2))


def cnt_diameter(c) -> float:
    """Tube diameter in nm: 0.0783 * sqrt(n1^2 + n2^2 + n1*n2)."""
    c = _as_chirality(c)
    return DIAMETER_COEF_NM * math.sqrt(c.n1 * c.n1 + c.n2 * c.n2 + c.n1 * c.n2)


def is_semiconducting(c) -> bool:
    """False when n1 - n2 is a multiple of 3 (metallic tube)."""
    c = _as_chirality(c)
    return (c.n1 - c.n2) % 3 != 0


def threshold_voltage(c) -> float:
    """Threshold voltage in volts: 0.43 / D_CNT(nm).

    Raises MetallicTube for metallic chiralities, which have no bandgap.
    """
    c = _as_chirality(c)
    if not is_semiconducting(c):
        raise MetallicTube(f"chirality ({c.n1}, {c.n2}) is metallic")
    return VTH_DIAMETER_PRODUCT / cnt_diameter(c)


@dataclass(frozen=True)
class DeviceParams:
    """Geometry and material constants of the reference process.

    All lengths in nm, dielectric constant and work function dimensionless /
    eV as conventionally quoted.  The flat-band work function is stored at
    its quoted value.
    """

    l_ch: float = 32.0     # physical channel length
    l_geff: float = 100.0  # mean free path, intrinsic region
    l_dd: float = 32.0     # doped drain-side extension
    l_ss: float = 32.0     # doped source-side extension
    t_ox: float = 1.0      # top-gate oxide thickness
    k_gate: float = 16.0   # gate oxide dielectric constant
    e_fi: float = 6.0      # flat-band voltage term, as quoted
    c_sub: float = 20.0    # substrate-coupling capacitance, aF/um
    pitch: float = 20.0    # inter-tube pitch under one gate
    w_min: float = 32.0    # minimum lithographic gate width

    def __post_init__(self):
        for name in ("l_ch", "l_geff", "l_dd", "l_ss", "t_ox", "k_gate",
                     "e_fi", "c_sub", "pitch", "w_min"):
            if getattr(self, name) <= 0:
                raise OutOfRange(f"DeviceParams.{name} must be strictly positive")


def gate_width(tubes: int, params: DeviceParams = DeviceParams(),
               mode: str = "as_published") -> float:
    """Gate width for N parallel tubes at the given pitch.

    The published width expression takes the smaller of (w_min, N * pitch),
    which shrinks multi-tube gates below the single-tube minimum; the
    "corrected" mode takes the larger of the two instead.  Both are kept
    selectable and every consumer must say which one it uses.
    """
    if mode not in WIDTH_MODES:
        raise OutOfRange(f"unknown width mode {mode!r}, expected one of {WIDTH_MODES}")
    if tubes < 1:
        raise OutOfRange("tube count must be >= 1")
    spread = tubes * params.pitch
    if mode == "as_published":
        return min(params.w_min, spread)
    return max(params.w_min, spread)


class Polarity(Enum):
    NFET = "nfet"
    PFET = "pfet"


@dataclass(frozen=True)
class CnfetInstance:
    """One switch-level transistor: polarity, chirality, parallel tube count,
    and the node ids of its three terminals."""

    polarity: Polarity
    chirality: Chirality
    tubes: int
    drain: str
    gate: str
    source: str

    def __post_init__(self):
        if self.tubes < 1:
            raise OutOfRange("tube count must be >= 1")


def conducts(t: CnfetInstance, v_gate: float, v_src: float) -> bool:
    """Switch-level conduction test against the chirality's threshold.

    NFET conducts iff v_gate - v_src > Vth; PFET iff v_src - v_gate > Vth.
    Metallic chiralities raise MetallicTube (no valid switch exists).
    """
    vth = threshold_voltage(t.chirality)
    if t.polarity is Polarity.NFET:
        return v_gate - v_src > vth
    return v_src - v_gate > vth
