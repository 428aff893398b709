"""Netlist builders for the ternary standard cells and the two full-adder
variants, plus access to the bundled .tnl fixtures.

The adders follow the capacitive-input architecture: three equal capacitors
average the inputs onto a shared sum node with seven levels k * vdd/6, a
detector inverter pair plus an input-referenced all-twos detector band the
node at 2.5 and 5.5 sixths, selector logic routes one of two transmission
gates (or a high-band pulldown) to the sum output, and band cells restore
full swing.  The first variant restores through a shifted inverter followed
by a standard ternary inverter (three sum-path stages including the gate);
the second uses a single shifted buffer stage instead (two stages), which is
where its delay advantage comes from.

Switch-level realities force two documented departures from the published
device totals: every mid-level output is produced by passing an explicit
half-rail source through a transmission gate (a switch model cannot express
the diode-divider trick analog designs use), and the sum-node detectors need
full-swing complementary inverters rather than ratioed stages.  The builders
therefore emit more transistors than the published 55/43; only the ordering
between the variants is preserved.  Detector chiralities are chosen per
supply voltage to center each threshold inside its band gap, the same
multi-threshold design knob the cell library itself is built on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .cells import DesignVariant
from .cnfet import Chirality, CnfetInstance, Polarity, is_semiconducting, threshold_voltage
from .errors import ConfigError
from .netlist import Capacitor, Fet, FixedSource, Netlist, Probe, parse

FIXTURE_NAMES = ("design1.tnl", "design2.tnl", "sti.tnl", "nti.tnl", "pti.tnl", "tgate.tnl")


def fixture_text(name: str) -> str:
    """Text of a bundled .tnl fixture (or the golden truth-table CSV)."""
    return resources.files(__package__).joinpath("fixtures").joinpath(name).read_text()


def load_fixture(name: str) -> Netlist:
    return parse(fixture_text(name))


@lru_cache(maxsize=None)
def _chirality_table(limit: int = 140) -> list[tuple[float, Chirality]]:
    out = []
    for n1 in range(1, limit + 1):
        for n2 in range(0, n1 + 1):
            c = Chirality(n1, n2)
            if is_semiconducting(c):
                out.append((threshold_voltage(c), c))
    return out


def pick_chirality(lo: float, hi: float) -> Chirality:
    """Semiconducting chirality whose Vth sits inside (lo, hi) with maximal
    margin to both edges.  Deterministic: ties break to the smallest indices."""
    if not 0 <= lo < hi:
        raise ConfigError(f"empty threshold window ({lo}, {hi})")
    best = None
    for vth, c in _chirality_table():
        if lo < vth < hi:
            margin = min(vth - lo, hi - vth)
            key = (-margin, c.n1, c.n2)
            if best is None or key < best[0]:
                best = (key, c)
    if best is None:
        raise ConfigError(f"no semiconducting chirality with Vth in ({lo}, {hi})")
    return best[1]


@dataclass(frozen=True)
class BuildConfig:
    """Knobs for the structural builders.

    low_vth / high_vth are the two stock chirality classes every cell is
    wired from; the sum-node detectors pick their own chiralities per vdd.
    """

    vdd: float = 0.9
    low_vth: Chirality = Chirality(19, 0)
    high_vth: Chirality = Chirality(10, 0)
    tubes: int = 3
    input_cap: float = 1e-15
    parasitic_cap: float = 1e-16

    def __post_init__(self):
        if not 0.6 <= self.vdd <= 1.05:
            raise ConfigError(f"builders are validated for vdd in [0.6, 1.05], got {self.vdd}")
        if self.tubes < 1:
            raise ConfigError("tubes must be >= 1")
        if self.input_cap <= 0 or self.parasitic_cap <= 0:
            raise ConfigError("capacitances must be strictly positive")
        v_lo = threshold_voltage(self.low_vth)
        v_hi = threshold_voltage(self.high_vth)
        if not 0 < v_lo < self.vdd / 2:
            raise ConfigError(
                f"low Vth class must switch below vdd/2; ({self.low_vth.n1},"
                f"{self.low_vth.n2}) gives {v_lo:.4f} V at vdd={self.vdd}")
        if not self.vdd / 2 < v_hi < self.vdd:
            raise ConfigError(
                f"high Vth class must switch between vdd/2 and vdd; ({self.high_vth.n1},"
                f"{self.high_vth.n2}) gives {v_hi:.4f} V at vdd={self.vdd}")


class _Builder:
    """Accumulates cards with unique auto-checked names."""

    def __init__(self, name: str):
        self.net = Netlist(name, [])
        self._names: set[str] = set()

    def _add(self, dev):
        if not isinstance(dev, Probe):
            if dev.name in self._names:
                raise ConfigError(f"duplicate device name {dev.name}")
            self._names.add(dev.name)
        self.net.devices.append(dev)

    def fet(self, name: str, drain: str, gate: str, source: str,
            polarity: Polarity, chirality: Chirality, tubes: int):
        self._add(Fet(name, CnfetInstance(polarity, chirality, tubes, drain, gate, source)))

    def cap(self, name: str, a: str, b: str, farads: float):
        self._add(Capacitor(name, a, b, farads))

    def source(self, name: str, node: str, volts: float):
        self._add(FixedSource(name, node, volts))

    def probe(self, node: str):
        self._add(Probe(node))

    def mark_inputs(self, *nodes: str):
        self.net.inputs = self.net.inputs | frozenset(nodes)

    def inverter(self, prefix: str, inp: str, out: str, nch: Chirality,
                 pch: Chirality, tubes: int):
        self.fet(f"M{prefix}p", out, inp, "VDD", Polarity.PFET, pch, tubes)
        self.fet(f"M{prefix}n", out, inp, "GND", Polarity.NFET, nch, tubes)

    def nor2(self, prefix: str, in_a: str, in_b: str, out: str,
             cls: Chirality, tubes: int):
        mid = f"{prefix}x"
        self.fet(f"M{prefix}p1", mid, in_a, "VDD", Polarity.PFET, cls, tubes)
        self.fet(f"M{prefix}p2", out, in_b, mid, Polarity.PFET, cls, tubes)
        self.fet(f"M{prefix}n1", out, in_a, "GND", Polarity.NFET, cls, tubes)
        self.fet(f"M{prefix}n2", out, in_b, "GND", Polarity.NFET, cls, tubes)

    def tgate(self, prefix: str, a: str, b: str, ctrl: str, ctrl_b: str,
              cls: Chirality, tubes: int):
        self.fet(f"M{prefix}tn", a, ctrl, b, Polarity.NFET, cls, tubes)
        self.fet(f"M{prefix}tp", a, ctrl_b, b, Polarity.PFET, cls, tubes)

    def finish(self) -> Netlist:
        self.net.validate()
        return self.net


# ---------------------------------------------------------------------------
# standard cells

def build_nti(cfg: BuildConfig = BuildConfig()) -> Netlist:
    """Negative ternary inverter: low-Vth pulldown, high-Vth pullup."""
    b = _Builder("nti")
    b.fet("Mp", "out", "in", "VDD", Polarity.PFET, cfg.high_vth, cfg.tubes)
    b.fet("Mn", "out", "in", "GND", Polarity.NFET, cfg.low_vth, cfg.tubes)
    b.mark_inputs("in")
    b.probe("out")
    return b.finish()


def build_pti(cfg: BuildConfig = BuildConfig()) -> Netlist:
    """Positive ternary inverter: high-Vth pulldown, low-Vth pullup."""
    b = _Builder("pti")
    b.fet("Mp", "out", "in", "VDD", Polarity.PFET, cfg.low_vth, cfg.tubes)
    b.fet("Mn", "out", "in", "GND", Polarity.NFET, cfg.high_vth, cfg.tubes)
    b.mark_inputs("in")
    b.probe("out")
    return b.finish()


def build_tgate(cfg: BuildConfig = BuildConfig()) -> Netlist:
    """Transmission gate: parallel low-Vth pair, complementary controls c/cb."""
    b = _Builder("tgate")
    b.tgate("", "out", "in", "c", "cb", cfg.low_vth, cfg.tubes)
    b.mark_inputs("in", "c", "cb")
    b.probe("out")
    return b.finish()


def _sti_stage(b: _Builder, prefix: str, inp: str, out: str, half: str,
               cfg: BuildConfig):
    """Standard ternary inverter on a full-swing trit node.

    Rails via the high-Vth class; the middle level comes from the half rail
    through a transmission gate enabled by a mid-level detector built out of
    an NTI/PTI pair.  16 transistors.
    """
    t = cfg.tubes
    nti = f"{prefix}nti"
    pti = f"{prefix}pti"
    ptib = f"{prefix}ptib"
    one = f"{prefix}one"
    oneb = f"{prefix}oneb"
    b.fet(f"M{prefix}up", out, inp, "VDD", Polarity.PFET, cfg.high_vth, t)
    b.fet(f"M{prefix}dn", out, inp, "GND", Polarity.NFET, cfg.high_vth, t)
    b.fet(f"M{prefix}ntip", nti, inp, "VDD", Polarity.PFET, cfg.high_vth, t)
    b.fet(f"M{prefix}ntin", nti, inp, "GND", Polarity.NFET, cfg.low_vth, t)
    b.fet(f"M{prefix}ptip", pti, inp, "VDD", Polarity.PFET, cfg.low_vth, t)
    b.fet(f"M{prefix}ptin", pti, inp, "GND", Polarity.NFET, cfg.high_vth, t)
    b.inverter(f"{prefix}pb", pti, ptib, cfg.low_vth, cfg.low_vth, t)
    b.nor2(f"{prefix}on", nti, ptib, one, cfg.low_vth, t)
    b.inverter(f"{prefix}ob", one, oneb, cfg.low_vth, cfg.low_vth, t)
    b.tgate(f"{prefix}h", out, half, one, oneb, cfg.low_vth, t)
    for node in (nti, pti, ptib, one, oneb):
        b.cap(f"Cp{node}", node, "GND", cfg.parasitic_cap)


def build_sti(cfg: BuildConfig = BuildConfig()) -> Netlist:
    """Standard ternary inverter cell with its own half rail."""
    b = _Builder("sti")
    b.source("Vhalf", "half", cfg.vdd / 2)
    _sti_stage(b, "s", "in", "out", "half", cfg)
    b.mark_inputs("in")
    b.probe("out")
    return b.finish()


# ---------------------------------------------------------------------------
# full adders

def _detector(cfg: BuildConfig, kind: str, k: int) -> Chirality:
    """Chirality for a sum-node detector at vdd = cfg.vdd.

    kind 'nge': NFET conducting iff sigma >= k (threshold between levels
    k-1 and k).  kind 'ple': PFET conducting iff sigma <= k (threshold is
    rail-relative, between levels k and k+1).
    """
    v = cfg.vdd
    if kind == "nge":
        return pick_chirality((k - 1) * v / 6, k * v / 6)
    if kind == "ple":
        return pick_chirality((5 - k) * v / 6, (6 - k) * v / 6)
    raise ConfigError(f"unknown detector kind {kind!r}")


def _common_front_end(b: _Builder, cfg: BuildConfig):
    t = cfg.tubes
    lo, hi = cfg.low_vth, cfg.high_vth

    # capacitive averaging node
    b.cap("Cina", "a", "vsum", cfg.input_cap)
    b.cap("Cinb", "b", "vsum", cfg.input_cap)
    b.cap("Cinc", "cin", "vsum", cfg.input_cap)
    b.source("Vhalf", "half", cfg.vdd / 2)

    # low-band detector inverter: s high iff sigma <= 2 (2.5 band edge)
    b.fet("Msp", "s", "vsum", "VDD", Polarity.PFET, _detector(cfg, "ple", 2), t)
    b.fet("Msn", "s", "vsum", "GND", Polarity.NFET, _detector(cfg, "nge", 3), t)
    b.inverter("sb", "s", "sbar", lo, lo, t)

    # f low iff every input is 2 (5.5 band edge, input-referenced)
    b.fet("Mfa", "f", "a", "VDD", Polarity.PFET, lo, t)
    b.fet("Mfb", "f", "b", "VDD", Polarity.PFET, lo, t)
    b.fet("Mfc", "f", "cin", "VDD", Polarity.PFET, lo, t)
    b.fet("Mfd", "f", "a", "ft1", Polarity.NFET, hi, t)
    b.fet("Mfe", "ft1", "b", "ft2", Polarity.NFET, hi, t)
    b.fet("Mff", "ft2", "cin", "GND", Polarity.NFET, hi, t)
    b.inverter("fb", "f", "fbar", lo, lo, t)

    # mid-band select m = (not s) and f
    b.nor2("m", "s", "fbar", "m", lo, t)
    b.inverter("mb", "m", "mbar", lo, lo, t)

    # ternary carry output: 2 on the high band, half on the mid band,
    # 0 on the low band
    b.fet("Mcp", "cout", "f", "VDD", Polarity.PFET, lo, t)
    b.fet("Mcn", "cout", "s", "GND", Polarity.NFET, lo, t)
    b.tgate("c", "cout", "half", "m", "mbar", lo, t)

    # single-level decoders for the band cells
    b.fet("Mz0p", "z0", "vsum", "VDD", Polarity.PFET, _detector(cfg, "ple", 0), t)
    b.fet("Mz0n", "z0", "vsum", "GND", Polarity.NFET, _detector(cfg, "nge", 1), t)
    b.fet("Mz1p", "z1", "vsum", "VDD", Polarity.PFET, _detector(cfg, "ple", 1), t)
    b.fet("Mz1n", "z1", "vsum", "GND", Polarity.NFET, _detector(cfg, "nge", 2), t)
    b.inverter("z1b", "z1", "z1b", lo, lo, t)
    b.nor2("e1", "z0", "z1b", "e1", lo, t)   # sigma == 1
    b.inverter("e1b", "e1", "e1b", lo, lo, t)
    b.fet("Mz3p", "z3", "vsum", "VDD", Polarity.PFET, _detector(cfg, "ple", 3), t)
    b.fet("Mz3n", "z3", "vsum", "GND", Polarity.NFET, _detector(cfg, "nge", 4), t)
    b.fet("Mz4p", "z4", "vsum", "VDD", Polarity.PFET, _detector(cfg, "ple", 4), t)
    b.fet("Mz4n", "z4", "vsum", "GND", Polarity.NFET, _detector(cfg, "nge", 5), t)
    b.inverter("z4b", "z4", "z4b", lo, lo, t)
    b.nor2("e4", "z3", "z4b", "e4", lo, t)   # sigma == 4
    b.inverter("e4b", "e4", "e4b", lo, lo, t)

    # sum output routing: low band through tg0, mid band through tg1,
    # high band clamped low
    b.fet("Mspd", "sum", "fbar", "GND", Polarity.NFET, lo, t)
    b.tgate("g0", "sum", "out0", "s", "sbar", lo, t)
    b.tgate("g1", "sum", "out1", "m", "mbar", lo, t)

    for node in ("s", "sbar", "f", "fbar", "m", "mbar", "z0", "z1", "z1b",
                 "e1", "e1b", "z3", "z4", "z4b", "e4", "e4b", "out0", "out1"):
        b.cap(f"Cp{node}", node, "GND", cfg.parasitic_cap)

    b.mark_inputs("a", "b", "cin")


def build_design(variant, cfg: BuildConfig = BuildConfig()) -> Netlist:
    """Structural netlist of one adder variant.

    Variant 1 band cells invert the sum-node band onto an intermediate trit
    and restore polarity through a standard ternary inverter; variant 2
    drives the restored trit in a single buffer stage gated by the decoder
    outputs.  Transistor and capacitor totals are available via stats().
    """
    if isinstance(variant, DesignVariant):
        v = variant
    elif variant in (1, "1", "design1"):
        v = DesignVariant.DESIGN1
    elif variant in (2, "2", "design2"):
        v = DesignVariant.DESIGN2
    else:
        raise ConfigError(f"unknown design variant {variant!r}")
    t = cfg.tubes
    lo = cfg.low_vth
    b = _Builder(v.value)
    _common_front_end(b, cfg)

    if v is DesignVariant.DESIGN2:
        # shifted buffers: full-swing rails gated by the decoded levels
        b.fet("Mb0p", "out0", "z1", "VDD", Polarity.PFET, lo, t)   # sigma >= 2
        b.fet("Mb0n", "out0", "z0", "GND", Polarity.NFET, lo, t)   # sigma == 0
        b.tgate("b0", "out0", "half", "e1", "e1b", lo, t)          # sigma == 1
        b.fet("Mb1p", "out1", "z4", "VDD", Polarity.PFET, lo, t)   # sigma >= 5
        b.fet("Mb1n", "out1", "z3", "GND", Polarity.NFET, lo, t)   # sigma <= 3
        b.tgate("b1", "out1", "half", "e4", "e4b", lo, t)          # sigma == 4
    else:
        # shifted inverters straight off the sum node, then STI restores
        b.fet("Mi0p", "i0", "vsum", "VDD", Polarity.PFET, _detector(cfg, "ple", 0), t)
        b.fet("Mi0n", "i0", "vsum", "GND", Polarity.NFET, _detector(cfg, "nge", 2), t)
        b.tgate("i0", "i0", "half", "e1", "e1b", lo, t)
        _sti_stage(b, "sa", "i0", "out0", "half", cfg)
        b.fet("Mi1p", "i1", "vsum", "VDD", Polarity.PFET, _detector(cfg, "ple", 3), t)
        b.fet("Mi1n", "i1", "vsum", "GND", Polarity.NFET, _detector(cfg, "nge", 5), t)
        b.tgate("i1", "i1", "half", "e4", "e4b", lo, t)
        _sti_stage(b, "sb", "i1", "out1", "half", cfg)
        b.cap("Cpi0", "i0", "GND", cfg.parasitic_cap)
        b.cap("Cpi1", "i1", "GND", cfg.parasitic_cap)

    b.probe("sum")
    b.probe("cout")
    return b.finish()
