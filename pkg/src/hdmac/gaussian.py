"""Closed-form Gaussian rate regions and outer bounds.

Each function evaluates one region for a fixed channel, slot split and power
allocation and returns it as a LinearRegion (one R1 cap, one R2 cap, the sum
caps in the scheme's order).  A slot of zero length contributes exactly zero
regardless of the allocation, so boundary slot splits are safe.

The decode-forward coherent term is
    K10^2 (P13 + PS1) + K20^2 (P23 + PS2) + 2 K10 K20 sqrt(PS1 PS2),
and the superposition scheme's fully coherent sum cap uses
    PU (K10 sqrt(c2) + K20 sqrt(d3))^2 + PV (K10 sqrt(c3) + K20 sqrt(d2))^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    ChannelGains,
    DfAllocation,
    LinearRegion,
    PdfAllocation,
    PowerBudget,
    RatePolygon,
    TimeSlots,
    ValidationError,
    c_gauss,
    polygon_from_constraints,
)

_SQRT_CLAMP = -1e-12  # round-off guard for sqrt arguments near zero


@dataclass(frozen=True)
class NoiseCorrelation:
    """Correlation factors between each inter-user noise and the destination noise."""

    rho1: float
    rho2: float

    def __post_init__(self) -> None:
        for name in ("rho1", "rho2"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and abs(v) <= 1.0):
                raise ValidationError(f"NoiseCorrelation.{name} must lie in [-1, 1], got {v!r}")


def _sqrt(x: float) -> float:
    if x < 0.0:
        if x < _SQRT_CLAMP:
            raise ValidationError(f"sqrt argument {x!r} below round-off clamp")
        return 0.0
    return math.sqrt(x)


def _term(alpha: float, power_term: float, noise: float) -> float:
    """alpha * C(power/noise), defined as exactly 0 for a zero-length slot."""
    if alpha <= 0.0:
        return 0.0
    if power_term < 0.0:
        if power_term < _SQRT_CLAMP:
            raise ValidationError(f"negative SNR numerator {power_term!r}")
        power_term = 0.0
    return alpha * c_gauss(power_term / noise)


# ---------------------------------------------------------------------------
# superposition / partial-decode-forward scheme
# ---------------------------------------------------------------------------

def _pdf_sum_terms(g: ChannelGains, a: PdfAllocation):
    """Slot-3 power patterns shared by all three PDF-style regions."""
    k10, k20 = g.k10, g.k20
    ac2 = a.c2 * a.pu   # user 1 power on its own public symbol
    ac3 = a.c3 * a.pv   # user 1 power on the partner's public symbol
    ad2 = a.d2 * a.pv   # user 2 power on its own public symbol
    ad3 = a.d3 * a.pu   # user 2 power on the partner's public symbol
    priv = k10 * k10 * a.p13 + k20 * k20 * a.p23
    coh_u = k10 * k10 * ac2 + k20 * k20 * ad3 + 2.0 * k10 * k20 * _sqrt(ac2 * ad3)
    coh_v = k10 * k10 * ac3 + k20 * k20 * ad2 + 2.0 * k10 * k20 * _sqrt(ac3 * ad2)
    return priv, coh_u, coh_v


def pdf_joint_region(g: ChannelGains, slots: TimeSlots, a: PdfAllocation) -> LinearRegion:
    """Superposition scheme, full decoding at each user, joint decoding at the destination."""
    n = g.noise
    a1, a2, a3 = slots.a1, slots.a2, slots.a3
    su1 = a.pu + a.p10
    su2 = a.pv + a.p20
    t12 = _term(a1, g.k12 ** 2 * su1, n)
    t10 = _term(a1, g.k10 ** 2 * su1, n)
    t21 = _term(a2, g.k21 ** 2 * su2, n)
    t20 = _term(a2, g.k20 ** 2 * su2, n)
    priv, coh_u, coh_v = _pdf_sum_terms(g, a)

    r1 = t12 + _term(a3, g.k10 ** 2 * a.p13, n)
    r2 = t21 + _term(a3, g.k20 ** 2 * a.p23, n)
    s1 = t12 + t21 + _term(a3, priv, n)
    s2 = t10 + t21 + _term(a3, priv + coh_u, n)
    s3 = t12 + t20 + _term(a3, priv + coh_v, n)
    s4 = t10 + t20 + _term(a3, priv + coh_u + coh_v, n)
    return LinearRegion((r1,), (r2,), (s1, s2, s3, s4))


def pdf_separate_region(g: ChannelGains, slots: TimeSlots, a: PdfAllocation,
                        literal_p1: float | None = None) -> LinearRegion:
    """Superposition scheme with slot-by-slot decoding at the destination.

    The last sum cap's first min-argument defaults to the slot-1 private
    power p10 (consistent with the adjacent conditioned terms); pass
    ``literal_p1`` to evaluate the total-power variant of that argument
    instead, for comparison.
    """
    n = g.noise
    a1, a2, a3 = slots.a1, slots.a2, slots.a3
    su1 = a.pu + a.p10
    su2 = a.pv + a.p20
    t12 = _term(a1, g.k12 ** 2 * su1, n)
    t21 = _term(a2, g.k21 ** 2 * su2, n)
    priv, coh_u, coh_v = _pdf_sum_terms(g, a)

    # conditioned slot-1/2 terms: only the private power remains
    m1 = min(_term(a1, g.k12 ** 2 * a.p10, n), _term(a1, g.k10 ** 2 * a.p10, n))
    m2 = min(_term(a2, g.k21 ** 2 * a.p20, n), _term(a2, g.k20 ** 2 * a.p20, n))
    if literal_p1 is None:
        m1_last = m1
    else:
        m1_last = min(_term(a1, g.k12 ** 2 * literal_p1, n),
                      _term(a1, g.k10 ** 2 * a.p10, n))

    r1 = t12 + _term(a3, g.k10 ** 2 * a.p13, n)
    r2 = t21 + _term(a3, g.k20 ** 2 * a.p23, n)
    s1 = t12 + t21 + _term(a3, priv, n)
    s2 = m1 + t21 + _term(a3, priv + coh_u, n)
    s3 = t12 + m2 + _term(a3, priv + coh_v, n)
    s4 = m1_last + m2 + _term(a3, priv + coh_u + coh_v, n)
    return LinearRegion((r1,), (r2,), (s1, s2, s3, s4))


def pdf_partial_user_region(g: ChannelGains, slots: TimeSlots, a: PdfAllocation) -> LinearRegion:
    """Superposition scheme where each user decodes only the partner's public part.

    The inter-user terms decompose into the public part decoded against the
    private interference plus the private part decoded by the destination:
        C(K12^2 (PU+P10)/N) -> C(K12^2 PU / (K12^2 P10 + N)) + C(K10^2 P10 / N)
    and symmetrically for user 2.
    """
    n = g.noise
    a1, a2, a3 = slots.a1, slots.a2, slots.a3
    su1 = a.pu + a.p10
    su2 = a.pv + a.p20
    t12 = (_term(a1, g.k12 ** 2 * a.pu * n / (g.k12 ** 2 * a.p10 + n), n)
           + _term(a1, g.k10 ** 2 * a.p10, n))
    t10 = _term(a1, g.k10 ** 2 * su1, n)
    t21 = (_term(a2, g.k21 ** 2 * a.pv * n / (g.k21 ** 2 * a.p20 + n), n)
           + _term(a2, g.k20 ** 2 * a.p20, n))
    t20 = _term(a2, g.k20 ** 2 * su2, n)
    priv, coh_u, coh_v = _pdf_sum_terms(g, a)

    r1 = t12 + _term(a3, g.k10 ** 2 * a.p13, n)
    r2 = t21 + _term(a3, g.k20 ** 2 * a.p23, n)
    s1 = t12 + t21 + _term(a3, priv, n)
    s2 = t10 + t21 + _term(a3, priv + coh_u, n)
    s3 = t12 + t20 + _term(a3, priv + coh_v, n)
    s4 = t10 + t20 + _term(a3, priv + coh_u + coh_v, n)
    return LinearRegion((r1,), (r2,), (s1, s2, s3, s4))


# ---------------------------------------------------------------------------
# decode-forward scheme and its outer bounds
# ---------------------------------------------------------------------------

def _df_assemble(g: ChannelGains, slots: TimeSlots, a: DfAllocation,
                 t12: float, t21: float, drop_middle: bool) -> LinearRegion:
    n = g.noise
    a1, a2, a3 = slots.a1, slots.a2, slots.a3
    k10, k20 = g.k10, g.k20
    t10 = _term(a1, k10 * k10 * a.p12, n)
    t20 = _term(a2, k20 * k20 * a.p21, n)
    priv = k10 * k10 * a.p13 + k20 * k20 * a.p23
    coh = (k10 * k10 * (a.p13 + a.ps1) + k20 * k20 * (a.p23 + a.ps2)
           + 2.0 * k10 * k20 * _sqrt(a.ps1 * a.ps2))

    r1 = t12 + _term(a3, k10 * k10 * a.p13, n)
    r2 = t21 + _term(a3, k20 * k20 * a.p23, n)
    c_coh = _term(a3, coh, n)
    s1 = t12 + t21 + _term(a3, priv, n)
    s4 = t10 + t20 + c_coh
    if drop_middle:
        sums = (s1, s4)
    else:
        s2 = t10 + t21 + c_coh
        s3 = t12 + t20 + c_coh
        sums = (s1, s2, s3, s4)
    return LinearRegion((r1,), (r2,), sums)


def df_region(g: ChannelGains, slots: TimeSlots, a: DfAllocation) -> LinearRegion:
    """Decode-forward scheme with joint decoding at the destination."""
    t12 = _term(slots.a1, g.k12 ** 2 * a.p12, g.noise)
    t21 = _term(slots.a2, g.k21 ** 2 * a.p21, g.noise)
    return _df_assemble(g, slots, a, t12, t21, drop_middle=False)


def gaussian_outer_region(g: ChannelGains, slots: TimeSlots, a: DfAllocation) -> LinearRegion:
    """Cut-set style outer bound: the DF region with K12^2 -> K12^2 + K10^2 and
    K21^2 -> K21^2 + K20^2; the two middle sum caps become redundant and are
    dropped from the returned set."""
    t12 = _term(slots.a1, (g.k12 ** 2 + g.k10 ** 2) * a.p12, g.noise)
    t21 = _term(slots.a2, (g.k21 ** 2 + g.k20 ** 2) * a.p21, g.noise)
    return _df_assemble(g, slots, a, t12, t21, drop_middle=True)


def degraded_outer_region(g: ChannelGains, slots: TimeSlots, a: DfAllocation,
                          rho: NoiseCorrelation) -> LinearRegion:
    """Outer bound when each inter-user noise is correlated with the
    destination noise.  Requires |rho| < 1 for both factors."""
    if abs(rho.rho1) >= 1.0 or abs(rho.rho2) >= 1.0:
        raise ValidationError("degraded_outer_region: |rho| = 1 is singular")
    n = g.noise
    num1 = (g.k12 ** 2 + g.k10 ** 2 - 2.0 * g.k10 * g.k12 * rho.rho1) * a.p12
    num2 = (g.k21 ** 2 + g.k20 ** 2 - 2.0 * g.k20 * g.k21 * rho.rho2) * a.p21
    t12 = _term(slots.a1, num1 / (1.0 - rho.rho1 ** 2), n)
    t21 = _term(slots.a2, num2 / (1.0 - rho.rho2 ** 2), n)
    return _df_assemble(g, slots, a, t12, t21, drop_middle=True)


# ---------------------------------------------------------------------------
# non-cooperative baselines
# ---------------------------------------------------------------------------

def baseline_region(kind: str, g: ChannelGains, budget: PowerBudget) -> RatePolygon:
    """Classical baselines as polygons.

    MAC: both users transmit the whole block, joint decoding.
    TDMA: each user transmits alone in a half slot at doubled power; the
    polygon is the hull of that corner with the full-time single-user rates.
    """
    n = g.noise
    if kind == "MAC":
        region = LinearRegion(
            (c_gauss(g.k10 ** 2 * budget.p1 / n),),
            (c_gauss(g.k20 ** 2 * budget.p2 / n),),
            (c_gauss((g.k10 ** 2 * budget.p1 + g.k20 ** 2 * budget.p2) / n),),
        )
        return polygon_from_constraints(region)
    if kind == "TDMA":
        r1_full = c_gauss(g.k10 ** 2 * budget.p1 / n)
        r2_full = c_gauss(g.k20 ** 2 * budget.p2 / n)
        cx = 0.5 * c_gauss(2.0 * g.k10 ** 2 * budget.p1 / n)
        cy = 0.5 * c_gauss(2.0 * g.k20 ** 2 * budget.p2 / n)
        pts = [(0.0, 0.0), (r1_full, 0.0)]
        # keep the simultaneous corner only when it beats time sharing the
        # single-user points
        if r1_full > 0.0 and r2_full > 0.0 and cx / r1_full + cy / r2_full > 1.0:
            pts.append((cx, cy))
        pts.append((0.0, r2_full))
        out = []
        for p in pts:
            if not out or p != out[-1]:
                out.append(p)
        if len(out) > 1 and out[-1] == out[0]:
            out.pop()
        return RatePolygon(tuple(out))
    raise ValidationError(f"unknown baseline kind {kind!r}, expected 'MAC' or 'TDMA'")
