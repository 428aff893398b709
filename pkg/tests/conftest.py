"""Shared helpers for the test suite."""

from tritsim import SimConfig, Unresolvable, voltage_to_trit


def sim_symbol(sig, cfg: SimConfig) -> str:
    """Trit symbol '0'/'1'/'2' (or 'x'/'z') for one resolved node signal."""
    if isinstance(sig.level, str):
        return sig.level
    try:
        return str(int(voltage_to_trit(sig.level, cfg.vmap(), cfg.tol())))
    except Unresolvable:
        return "x"


def sim_trits(sigs, cfg: SimConfig, *nodes: str) -> tuple:
    return tuple(sim_symbol(sigs[n], cfg) for n in nodes)
