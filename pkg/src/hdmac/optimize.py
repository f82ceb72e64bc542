"""Weighted sum-rate maximization over slot splits and power allocations.

The search is derivative-free and deterministic: a scan over a slot grid
crossed with a rank-1 lattice sample of each scheme's allocation simplex
(every scanned point satisfies the per-user power identity by construction),
then cyclic pattern refinement with multiplicative step shrink from the best
scanned points, finished by a simplex polish that can walk the ridges where
several sum caps tie.

Directions with mu2 > mu1 are solved on the user-swapped problem and
mirrored back, so symmetric scenarios give exactly symmetric results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

from .core import (
    ChannelGains,
    DfAllocation,
    LinearRegion,
    PdfAllocation,
    PowerBudget,
    RatePolygon,
    TimeSlots,
    ValidationError,
    _check,
    convex_hull_ccw,
    polygon_from_constraints,
)
from .gaussian import (
    NoiseCorrelation,
    df_region,
    degraded_outer_region,
    gaussian_outer_region,
    pdf_joint_region,
    pdf_partial_user_region,
    pdf_separate_region,
)

_LN2 = math.log(2.0)

SCHEMES = ("PDF_JOINT", "PDF_SEPARATE", "PDF_PARTIAL", "DF", "OUTER", "DEGRADED")
_PDF_SCHEMES = ("PDF_JOINT", "PDF_SEPARATE", "PDF_PARTIAL")
_DF_SCHEMES = ("DF", "OUTER", "DEGRADED")

_N_STARTS = 3          # grid points fed into local refinement
_STEP0 = 0.25          # initial refinement step on every unit coordinate
_MIN_STEP = 1e-10


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the two-phase search; defaults are desk-scale."""

    slot_grid: int = 11
    power_grid: int = 9
    refine_iters: int = 60
    refine_shrink: float = 0.7
    seed: int = 0

    def __post_init__(self) -> None:
        _check(self.slot_grid >= 2, "SearchConfig.slot_grid must be >= 2")
        _check(self.power_grid >= 2, "SearchConfig.power_grid must be >= 2")
        _check(self.refine_iters >= 0, "SearchConfig.refine_iters must be >= 0")
        _check(0.0 < self.refine_shrink < 1.0, "SearchConfig.refine_shrink must be in (0, 1)")


@dataclass(frozen=True)
class OptResult:
    """Best point found for one weight direction."""

    scheme: str
    mu: Tuple[float, float]
    slots: TimeSlots
    allocation: Union[PdfAllocation, DfAllocation]
    vertex: Tuple[float, float]
    value: float
    evaluations: int


@dataclass(frozen=True)
class FrontierResult:
    scheme: str
    points: Tuple[OptResult, ...]
    hull: RatePolygon


# ---------------------------------------------------------------------------
# polygon utilities
# ---------------------------------------------------------------------------

def weighted_best_vertex(poly: RatePolygon, mu: Tuple[float, float]):
    """Polygon vertex maximizing mu1*r1 + mu2*r2; ties go to larger r1, then r2."""
    mu1, mu2 = float(mu[0]), float(mu[1])
    _check(mu1 >= 0.0 and mu2 >= 0.0 and (mu1 > 0.0 or mu2 > 0.0),
           "weights must be >= 0 and not both zero")
    _check(len(poly.vertices) > 0, "empty polygon")
    best = max(poly.vertices, key=lambda v: (mu1 * v[0] + mu2 * v[1], v[0], v[1]))
    return best, mu1 * best[0] + mu2 * best[1]


def upper_hull(points: Sequence[Tuple[float, float]]) -> RatePolygon:
    """Convex hull of nonnegative points, closed to the axes through the origin."""
    pts = [(float(x), float(y)) for x, y in points]
    _check(len(pts) > 0, "upper_hull needs at least one point")
    for x, y in pts:
        _check(x >= 0.0 and y >= 0.0, f"upper_hull points must be >= 0, got {(x, y)!r}")
    max_x = max(x for x, _ in pts)
    max_y = max(y for _, y in pts)
    closure = pts + [(0.0, 0.0), (max_x, 0.0), (0.0, max_y)]
    return RatePolygon(convex_hull_ccw(closure))


def _point_slack(vertices, p) -> float:
    """Signed distance of p to the polygon boundary; positive means inside."""
    px, py = p
    if len(vertices) == 1:
        vx, vy = vertices[0]
        return -math.hypot(px - vx, py - vy)
    slack = math.inf
    m = len(vertices)
    degenerate = m == 2
    for i in range(m if not degenerate else 1):
        ax, ay = vertices[i]
        bx, by = vertices[(i + 1) % m]
        ex, ey = bx - ax, by - ay
        norm = math.hypot(ex, ey)
        if norm == 0.0:
            continue
        d = (ex * (py - ay) - ey * (px - ax)) / norm
        if degenerate:
            # distance to the segment, clipped to its endpoints
            t = ((px - ax) * ex + (py - ay) * ey) / (norm * norm)
            t = min(1.0, max(0.0, t))
            cx, cy = ax + t * ex, ay + t * ey
            return -math.hypot(px - cx, py - cy)
        slack = min(slack, d)
    return slack


def region_contains(outer: RatePolygon, inner: RatePolygon, tol: float):
    """True when every inner vertex lies in the outer polygon with slack >= -tol.

    Also returns the worst signed slack (negative means a violation of that
    magnitude).
    """
    worst = math.inf
    for p in inner.vertices:
        worst = min(worst, _point_slack(outer.vertices, p))
    return worst >= -tol, worst


def scheme_region(scheme: str, g: ChannelGains, slots: TimeSlots,
                  alloc: Union[PdfAllocation, DfAllocation],
                  rho: Optional[NoiseCorrelation] = None,
                  literal_p1: Optional[float] = None) -> LinearRegion:
    """Evaluate the named scheme's region at a fixed slot split and allocation."""
    if scheme == "PDF_JOINT":
        return pdf_joint_region(g, slots, alloc)
    if scheme == "PDF_SEPARATE":
        return pdf_separate_region(g, slots, alloc, literal_p1=literal_p1)
    if scheme == "PDF_PARTIAL":
        return pdf_partial_user_region(g, slots, alloc)
    if scheme == "DF":
        return df_region(g, slots, alloc)
    if scheme == "OUTER":
        return gaussian_outer_region(g, slots, alloc)
    if scheme == "DEGRADED":
        if rho is None:
            raise ValidationError("DEGRADED region needs a NoiseCorrelation")
        return degraded_outer_region(g, slots, alloc, rho)
    raise ValidationError(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# feasible parameterizations (unit cube -> allocation)
# ---------------------------------------------------------------------------

def _df_split(a_slot: float, a3: float, total: float, gshare: float, h: float):
    """Slot power split for one DF user: returns (slot power, private, coop)."""
    if a_slot <= 0.0:
        gshare = 0.0
    if a3 <= 0.0:
        gshare = 1.0
    p_slot = gshare * total / a_slot if a_slot > 0.0 else 0.0
    b = (1.0 - gshare) * total / a3 if a3 > 0.0 else 0.0
    p_priv = h * b
    return p_slot, p_priv, b - p_priv


def _pdf_split(a_slot: float, a3: float, total: float, gshare: float, s: float,
               ta: float, tb: float):
    """Slot power split for one PDF user.

    Returns (public, private_slot1, private_slot3, own_atom, cross_atom)
    where the atoms are the slot-3 powers re-spent on the user's own and the
    partner's public symbols.
    """
    if a_slot <= 0.0:
        gshare = 0.0
    if a3 <= 0.0:
        gshare = 1.0
    slot1 = gshare * total / a_slot if a_slot > 0.0 else 0.0
    pu = s * slot1
    b = (1.0 - gshare) * total / a3 if a3 > 0.0 else 0.0
    p3 = ta * b
    rest = b - p3
    own = tb * rest
    return pu, slot1 - pu, p3, own, rest - own


def _evaluator(scheme: str, g: ChannelGains, budget: PowerBudget,
               rho: Optional[NoiseCorrelation]):
    """Build (caps, alloc_of, dim) for a scheme.

    caps(x) maps a feasible parameter vector x = (a1, a2, params...) to the
    region caps (m1, m2, min_sum); alloc_of(x) rebuilds the domain objects.
    """
    n = g.noise
    k10, k20 = g.k10, g.k20
    k10s, k20s = k10 * k10, k20 * k20
    p_1, p_2 = budget.p1, budget.p2
    log1p = math.log1p
    sqrt = math.sqrt

    def term(alpha: float, num: float) -> float:
        return 0.5 * alpha * log1p(num / n) / _LN2 if alpha > 0.0 else 0.0

    if scheme in _DF_SCHEMES:
        if scheme == "DF":
            e12 = g.k12 ** 2
            e21 = g.k21 ** 2
        elif scheme == "OUTER":
            e12 = g.k12 ** 2 + k10s
            e21 = g.k21 ** 2 + k20s
        else:
            if rho is None:
                raise ValidationError("DEGRADED scheme needs a NoiseCorrelation")
            if abs(rho.rho1) >= 1.0 or abs(rho.rho2) >= 1.0:
                raise ValidationError("DEGRADED scheme: |rho| = 1 is singular")
            e12 = (g.k12 ** 2 + k10s - 2.0 * k10 * g.k12 * rho.rho1) / (1.0 - rho.rho1 ** 2)
            e21 = (g.k21 ** 2 + k20s - 2.0 * k20 * g.k21 * rho.rho2) / (1.0 - rho.rho2 ** 2)
            e12 = max(0.0, e12)
            e21 = max(0.0, e21)
        drop_middle = scheme != "DF"

        def caps(x):
            a1, a2 = x[0], x[1]
            a3 = 1.0 - a1 - a2
            if a3 < 0.0:
                a3 = 0.0
            p12, p13, ps1 = _df_split(a1, a3, p_1, x[2], x[3])
            p21, p23, ps2 = _df_split(a2, a3, p_2, x[4], x[5])
            t12 = term(a1, e12 * p12)
            t21 = term(a2, e21 * p21)
            t10 = term(a1, k10s * p12)
            t20 = term(a2, k20s * p21)
            priv = k10s * p13 + k20s * p23
            coh = priv + k10s * ps1 + k20s * ps2 + 2.0 * k10 * k20 * sqrt(ps1 * ps2)
            m1 = t12 + term(a3, k10s * p13)
            m2 = t21 + term(a3, k20s * p23)
            c_coh = term(a3, coh)
            s1 = t12 + t21 + term(a3, priv)
            s4 = t10 + t20 + c_coh
            ms = s1 if s1 < s4 else s4
            if not drop_middle:
                s2 = t10 + t21 + c_coh
                s3 = t12 + t20 + c_coh
                if s2 < ms:
                    ms = s2
                if s3 < ms:
                    ms = s3
            return m1, m2, ms

        def alloc_of(x):
            a1, a2 = x[0], x[1]
            a3 = max(0.0, 1.0 - a1 - a2)
            p12, p13, ps1 = _df_split(a1, a3, p_1, x[2], x[3])
            p21, p23, ps2 = _df_split(a2, a3, p_2, x[4], x[5])
            return (TimeSlots.from_first_two(a1, a2),
                    DfAllocation(p12, p21, p13, p23, ps1, ps2))

        return caps, alloc_of, 4

    if scheme in _PDF_SCHEMES:
        k12s = g.k12 ** 2
        k21s = g.k21 ** 2
        mode = scheme

        def split(x):
            a1, a2 = x[0], x[1]
            a3 = 1.0 - a1 - a2
            if a3 < 0.0:
                a3 = 0.0
            pu, p10, p13, ac2, ac3 = _pdf_split(a1, a3, p_1, x[2], x[3], x[4], x[5])
            pv, p20, p23, ad2, ad3 = _pdf_split(a2, a3, p_2, x[6], x[7], x[8], x[9])
            # atoms riding on a public symbol that carries no power become private
            if pu <= 0.0:
                p13 += ac2
                ac2 = 0.0
                p23 += ad3
                ad3 = 0.0
            if pv <= 0.0:
                p13 += ac3
                ac3 = 0.0
                p23 += ad2
                ad2 = 0.0
            return a1, a2, a3, pu, p10, pv, p20, p13, p23, ac2, ac3, ad2, ad3

        def caps(x):
            a1, a2, a3, pu, p10, pv, p20, p13, p23, ac2, ac3, ad2, ad3 = split(x)
            su1 = pu + p10
            su2 = pv + p20
            t10 = term(a1, k10s * su1)
            t20 = term(a2, k20s * su2)
            if mode == "PDF_PARTIAL":
                t12 = term(a1, k12s * pu * n / (k12s * p10 + n)) + term(a1, k10s * p10)
                t21 = term(a2, k21s * pv * n / (k21s * p20 + n)) + term(a2, k20s * p20)
            else:
                t12 = term(a1, k12s * su1)
                t21 = term(a2, k21s * su2)
            priv = k10s * p13 + k20s * p23
            coh_u = k10s * ac2 + k20s * ad3 + 2.0 * k10 * k20 * sqrt(ac2 * ad3)
            coh_v = k10s * ac3 + k20s * ad2 + 2.0 * k10 * k20 * sqrt(ac3 * ad2)
            m1 = t12 + term(a3, k10s * p13)
            m2 = t21 + term(a3, k20s * p23)
            if mode == "PDF_SEPARATE":
                c1 = min(term(a1, k12s * p10), term(a1, k10s * p10))
                c2_ = min(term(a2, k21s * p20), term(a2, k20s * p20))
                s1 = t12 + t21 + term(a3, priv)
                s2 = c1 + t21 + term(a3, priv + coh_u)
                s3 = t12 + c2_ + term(a3, priv + coh_v)
                s4 = c1 + c2_ + term(a3, priv + coh_u + coh_v)
            else:
                s1 = t12 + t21 + term(a3, priv)
                s2 = t10 + t21 + term(a3, priv + coh_u)
                s3 = t12 + t20 + term(a3, priv + coh_v)
                s4 = t10 + t20 + term(a3, priv + coh_u + coh_v)
            ms = min(s1, s2, s3, s4)
            return m1, m2, ms

        def alloc_of(x):
            a1, a2, a3, pu, p10, pv, p20, p13, p23, ac2, ac3, ad2, ad3 = split(x)
            c2 = ac2 / pu if pu > 0.0 else 0.0
            c3 = ac3 / pv if pv > 0.0 else 0.0
            d2 = ad2 / pv if pv > 0.0 else 0.0
            d3 = ad3 / pu if pu > 0.0 else 0.0
            return (TimeSlots.from_first_two(a1, a2),
                    PdfAllocation(p10, p20, pu, pv, p13, p23, c2, c3, d2, d3))

        return caps, alloc_of, 10 - 2  # 8 allocation params

    raise ValidationError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")


# ---------------------------------------------------------------------------
# search machinery
# ---------------------------------------------------------------------------

_IRRATIONALS = tuple(math.sqrt(p) % 1.0 for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29))


def _lattice(count: int, dim: int, seed: int):
    """Deterministic low-discrepancy points in the unit cube."""
    base = [((seed + 1) * math.sqrt(41 + d)) % 1.0 for d in range(dim)]
    pts = []
    for j in range(1, count + 1):
        pts.append(tuple((base[d] + j * _IRRATIONALS[d % len(_IRRATIONALS)]) % 1.0
                         for d in range(dim)))
    return pts


def _anchors(scheme: str):
    """Structured allocation corners worth probing in every slot cell."""
    levels = (0.0, 0.5, 1.0)
    out = []
    if scheme in _DF_SCHEMES:
        for g1 in levels:
            for h1 in levels:
                for g2 in levels:
                    for h2 in levels:
                        out.append((g1, h1, g2, h2))
        return out
    # superposition family: favor the no-slot-1-private face (s = 1) with
    # symmetric slot shares and a few coherent-split patterns
    for gv in (0.0, 0.25, 0.5, 0.75, 1.0):
        for ta in levels:
            for tb1 in levels:
                for tb2 in levels:
                    out.append((gv, 1.0, ta, tb1, gv, 1.0, ta, tb2))
    for gv in levels:
        for sv in (0.0, 0.5):
            for ta in levels:
                out.append((gv, sv, ta, 0.5, gv, sv, ta, 0.5))
    return out


def _value(caps, mu1: float, mu2: float):
    """Exact LP maximum of mu1*r1 + mu2*r2 over the capped region (greedy fill)."""
    m1, m2, ms = caps
    if mu1 >= mu2:
        r1 = m1 if m1 < ms else ms
        rem = ms - r1
        r2 = m2 if m2 < rem else rem
    else:
        r2 = m2 if m2 < ms else ms
        rem = ms - r2
        r1 = m1 if m1 < rem else rem
    return mu1 * r1 + mu2 * r2, r1, r2


_TIE_EPS = 1e-9


def _score(caps, mu1: float, mu2: float) -> float:
    """Search score: the objective plus an epsilon preference for the
    complementary-weighted vertex, so axis directions still pick allocations
    whose polygon reaches the full corner instead of an equal-value axis
    point."""
    v, r1, r2 = _value(caps, mu1, mu2)
    return v + _TIE_EPS * (mu2 * r1 + mu1 * r2)


def _phase1_xs(scheme: str, dim: int, cfg: SearchConfig):
    slot_vals = [i / (cfg.slot_grid - 1) for i in range(cfg.slot_grid)]
    lat = _lattice(cfg.power_grid ** 2, dim, cfg.seed)
    anchors = _anchors(scheme)
    xs = []
    for a1 in slot_vals:
        for a2 in slot_vals:
            if a1 + a2 > 1.0 + 1e-12:
                continue
            a2c = min(a2, 1.0 - a1)
            head = (a1, a2c)
            for q in lat:
                xs.append(head + q)
            for q in anchors:
                xs.append(head + q)
    return xs


def _clamp_move(x, moves):
    """Apply (coordinate, delta) moves with box and slot-simplex clamping."""
    y = list(x)
    for d, delta in moves:
        if d == 0:
            lo, hi = 0.0, 1.0 - y[1]
        elif d == 1:
            lo, hi = 0.0, 1.0 - y[0]
        else:
            lo, hi = 0.0, 1.0
        y[d] = min(hi, max(lo, y[d] + delta))
    return y


def _move_set(ndim: int):
    """Single-coordinate probes plus paired probes along the slot pair and the
    same-role coordinates of the two users (min-type sum caps form ridges that
    single-coordinate moves cannot follow)."""
    singles = [((d, +1),) for d in range(ndim)] + [((d, -1),) for d in range(ndim)]
    pairs = [(0, 1)]
    half = (ndim - 2) // 2
    pairs += [(2 + k, 2 + half + k) for k in range(half)]
    paired = []
    for a, b in pairs:
        for sa in (+1, -1):
            for sb in (+1, -1):
                paired.append(((a, sa), (b, sb)))
    return singles + paired


def _refine(caps_fn, x0, v0, mu1, mu2, cfg: SearchConfig):
    x = list(x0)
    best = v0
    step = _STEP0
    evals = 0
    moves = _move_set(len(x))
    for _ in range(cfg.refine_iters):
        improved = False
        for mv in moves:
            cand = _clamp_move(x, [(d, s * step) for d, s in mv])
            if cand == x:
                continue
            v = _score(caps_fn(tuple(cand)), mu1, mu2)
            evals += 1
            if v > best + 1e-15:
                best = v
                x = cand
                improved = True
        if not improved:
            step *= cfg.refine_shrink
            if step < _MIN_STEP:
                break
    return tuple(x), best, evals


def _project(x) -> list:
    """Clamp to the unit box and the slot simplex; returns the feasible point."""
    y = [min(1.0, max(0.0, v)) for v in x]
    s = y[0] + y[1]
    if s > 1.0:
        y[0] /= s
        y[1] /= s
    return y


def _nm_polish(caps_fn, x0, v0, mu1, mu2, cfg: SearchConfig):
    """Simplex (Nelder-Mead) polish with restarts.

    The step-based pattern phase stalls on the ridges where several sum caps
    are simultaneously active; the adaptive simplex walks them.  Points
    outside the feasible box are projected with a linear penalty.  The
    evaluation budget scales with cfg.refine_iters.
    """
    from scipy.optimize import minimize as _scipy_minimize

    counter = [0]

    def neg(raw):
        counter[0] += 1
        pen = 0.0
        for v in raw:
            if v < 0.0:
                pen += -v
            elif v > 1.0:
                pen += v - 1.0
        s = raw[0] + raw[1]
        if s > 1.0:
            pen += s - 1.0
        return -_score(caps_fn(tuple(_project(raw))), mu1, mu2) + pen

    x = list(x0)
    best = v0
    maxfev = 12 * len(x) * (cfg.refine_iters + 1)
    for _ in range(3):
        res = _scipy_minimize(neg, x, method="Nelder-Mead",
                              options={"xatol": 1e-10, "fatol": 1e-12,
                                       "maxfev": maxfev})
        cand = [float(v) for v in _project(res.x)]
        v = _score(caps_fn(tuple(cand)), mu1, mu2)
        counter[0] += 1
        if v > best + 1e-11:
            best = v
            x = cand
        else:
            if v > best:
                best, x = v, cand
            break
    return tuple(x), best, counter[0]


def _x_from_alloc(scheme: str, slots: TimeSlots, alloc, budget: PowerBudget):
    """Inverse of the feasible parameterization (clamped), for warm starts."""
    a1, a2 = slots.a1, slots.a2

    def clamp(v):
        return min(1.0, max(0.0, v))

    if scheme in _DF_SCHEMES:
        g1 = clamp(a1 * alloc.p12 / budget.p1)
        g2 = clamp(a2 * alloc.p21 / budget.p2)
        t1 = alloc.p13 + alloc.ps1
        t2 = alloc.p23 + alloc.ps2
        h1 = clamp(alloc.p13 / t1) if t1 > 0.0 else 1.0
        h2 = clamp(alloc.p23 / t2) if t2 > 0.0 else 1.0
        return (a1, a2, g1, h1, g2, h2)
    g1 = clamp(a1 * (alloc.p10 + alloc.pu) / budget.p1)
    g2 = clamp(a2 * (alloc.p20 + alloc.pv) / budget.p2)
    su1 = alloc.pu + alloc.p10
    su2 = alloc.pv + alloc.p20
    s1 = clamp(alloc.pu / su1) if su1 > 0.0 else 1.0
    s2 = clamp(alloc.pv / su2) if su2 > 0.0 else 1.0
    ac2, ac3 = alloc.c2 * alloc.pu, alloc.c3 * alloc.pv
    ad2, ad3 = alloc.d2 * alloc.pv, alloc.d3 * alloc.pu
    b1 = alloc.p13 + ac2 + ac3
    b2 = alloc.p23 + ad2 + ad3
    ta1 = clamp(alloc.p13 / b1) if b1 > 0.0 else 1.0
    ta2 = clamp(alloc.p23 / b2) if b2 > 0.0 else 1.0
    r1 = ac2 + ac3
    r2 = ad2 + ad3
    tb1 = clamp(ac2 / r1) if r1 > 0.0 else 0.5
    tb2 = clamp(ad2 / r2) if r2 > 0.0 else 0.5
    return (a1, a2, g1, s1, ta1, tb1, g2, s2, ta2, tb2)


def sample_allocation(scheme: str, g: ChannelGains, budget: PowerBudget, rng,
                      interior: bool = False):
    """Random feasible (TimeSlots, allocation), uniform over the search
    parameterization; rng is a random.Random.  With interior=True the slot
    fractions and public/private splits are kept away from the boundary so
    every power component is strictly positive."""
    _check(scheme in SCHEMES, f"unknown scheme {scheme!r}")
    _, alloc_fn, dim = _evaluator(scheme if scheme != "DEGRADED" else "DF", g, budget, None)
    u, v = sorted((rng.random(), rng.random()))
    a1, a2 = u, v - u
    params = [rng.random() for _ in range(dim)]
    if interior:
        a1 = 0.1 + 0.5 * a1
        a2 = 0.1 + 0.5 * a2
        params = [0.1 + 0.8 * p for p in params]
    return alloc_fn((a1, a2, *params))


def _swap_gains(g: ChannelGains) -> ChannelGains:
    return ChannelGains(k12=g.k21, k21=g.k12, k10=g.k20, k20=g.k10, noise=g.noise)


def swap_allocation(alloc):
    """Exchange the two users' roles in an allocation."""
    if isinstance(alloc, DfAllocation):
        return DfAllocation(p12=alloc.p21, p21=alloc.p12, p13=alloc.p23,
                            p23=alloc.p13, ps1=alloc.ps2, ps2=alloc.ps1)
    return PdfAllocation(p10=alloc.p20, p20=alloc.p10, pu=alloc.pv, pv=alloc.pu,
                         p13=alloc.p23, p23=alloc.p13, c2=alloc.d2, c3=alloc.d3,
                         d2=alloc.c2, d3=alloc.c3)


def _swap_slots(slots: TimeSlots) -> TimeSlots:
    return TimeSlots(slots.a2, slots.a1, slots.a3)


def optimize_scheme(g: ChannelGains, budget: PowerBudget, scheme: str,
                    mu: Tuple[float, float], cfg: SearchConfig,
                    rho: Optional[NoiseCorrelation] = None,
                    extra_starts: Sequence = (),
                    _cache: Optional[Dict] = None) -> OptResult:
    """Maximize mu1*R1 + mu2*R2 for one scheme.

    extra_starts is an optional sequence of (TimeSlots, allocation) warm
    starts that are evaluated and refined alongside the grid's best points.
    """
    mu1, mu2 = float(mu[0]), float(mu[1])
    _check(mu1 >= 0.0 and mu2 >= 0.0 and (mu1 > 0.0 or mu2 > 0.0),
           "mu components must be >= 0 and not both zero")
    _check(scheme in SCHEMES, f"unknown scheme {scheme!r}")
    if _cache is None:
        _cache = {}

    if mu2 > mu1:
        swapped_rho = None if rho is None else NoiseCorrelation(rho.rho2, rho.rho1)
        swapped_starts = tuple((_swap_slots(s), swap_allocation(a)) for s, a in extra_starts)
        res = optimize_scheme(_swap_gains(g), PowerBudget(budget.p2, budget.p1), scheme,
                              (mu2, mu1), cfg, rho=swapped_rho,
                              extra_starts=swapped_starts, _cache=_cache)
        return OptResult(scheme=res.scheme, mu=(mu1, mu2),
                         slots=_swap_slots(res.slots),
                         allocation=swap_allocation(res.allocation),
                         vertex=(res.vertex[1], res.vertex[0]),
                         value=res.value, evaluations=res.evaluations)

    caps_fn, alloc_fn, dim = _evaluator(scheme, g, budget, rho)
    rho_key = None if rho is None else (rho.rho1, rho.rho2)
    key = (g.k12, g.k21, g.k10, g.k20, g.noise, budget.p1, budget.p2, scheme, rho_key,
           cfg.slot_grid, cfg.power_grid, cfg.seed)
    if key not in _cache:
        xs = _phase1_xs(scheme, dim, cfg)
        _cache[key] = [(x, caps_fn(x)) for x in xs]
    table = _cache[key]

    evals = len(table)
    scored = []
    for x, caps in table:
        scored.append((_score(caps, mu1, mu2), x))
    scored.sort(key=lambda t: t[0], reverse=True)

    # refinement starts come from distinct slot cells so the multi-start
    # probes different basins instead of one winner's neighborhood
    starts = []
    seen_cells = set()
    for v, x in scored:
        cell = (x[0], x[1])
        if cell in seen_cells:
            continue
        seen_cells.add(cell)
        starts.append((v, x))
        if len(starts) >= _N_STARTS:
            break
    warm = []
    for s_slots, s_alloc in extra_starts:
        x = _x_from_alloc(scheme, s_slots, s_alloc, budget)
        v = _score(caps_fn(x), mu1, mu2)
        evals += 1
        warm.append((v, x))
    if warm:
        # every warm point counts as evaluated; the best one is also refined
        warm.sort(key=lambda t: t[0], reverse=True)
        starts.append(warm[0])

    best_v, best_x = max(starts + warm, key=lambda t: t[0])
    for v0, x0 in starts:
        x1, v1, used = _refine(caps_fn, x0, v0, mu1, mu2, cfg)
        evals += used
        x2, v2, used = _nm_polish(caps_fn, x1, v1, mu1, mu2, cfg)
        evals += used
        if v2 > best_v:
            best_v, best_x = v2, x2

    slots, alloc = alloc_fn(best_x)
    _, r1, r2 = _value(caps_fn(best_x), mu1, mu2)
    evals += 1
    return OptResult(scheme=scheme, mu=(mu1, mu2), slots=slots, allocation=alloc,
                     vertex=(r1, r2), value=mu1 * r1 + mu2 * r2, evaluations=evals)


def frontier(g: ChannelGains, budget: PowerBudget, scheme: str, weight_count: int,
             cfg: SearchConfig, rho: Optional[NoiseCorrelation] = None,
             extra_starts: Sequence = ()) -> FrontierResult:
    """Trace the weighted-sum frontier over angularly spaced weight directions
    mu = (cos t, sin t), t in [0, pi/2], and hull the best vertices."""
    _check(weight_count >= 3, "weight_count must be >= 3")
    cache: Dict = {}
    results = []
    for i in range(weight_count):
        theta = 0.5 * math.pi * i / (weight_count - 1)
        mu = (math.cos(theta), math.sin(theta))
        results.append(optimize_scheme(g, budget, scheme, mu, cfg, rho=rho,
                                       extra_starts=extra_starts, _cache=cache))
    hull = upper_hull([r.vertex for r in results])
    return FrontierResult(scheme=scheme, points=tuple(results), hull=hull)
