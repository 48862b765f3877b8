"""Spectral radius, Perron data, the constants chain, and inequality audits.

Power iteration runs on A + I so that bipartite components cannot oscillate
with period two (A + I of a connected graph is primitive), and the reported
eigenvalue subtracts nothing: the Rayleigh quotient of A itself is used, and
convergence is measured on the infinity-norm residual of A, never on the
distance between successive iterates. The start vector is all ones, so the
default numerics are fully deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ParameterError
from .graphs import Graph, shells

__all__ = [
    "PerronData",
    "Constants",
    "VertexPartition",
    "AuditEntry",
    "AuditReport",
    "spectral_radius",
    "split_radius_closed_form",
    "default_constants",
    "constants_with",
    "classify_vertices",
    "audit_extremal_lemmas",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITERATIONS = 10**6


@dataclass(frozen=True)
class PerronData:
    """Spectral radius estimate with its scaled eigenvector.

    ``vector`` is scaled so the maximum entry is exactly 1 and ``z`` is the
    index of such an entry. ``residual`` is the infinity norm of
    A x - radius x. For a disconnected graph the radius is the maximum over
    components and the vector is supported on one attaining component (ties
    broken by smallest canonical byte string, then smallest vertex).
    """

    radius: float
    vector: tuple[float, ...]
    residual: float
    z: int


def spectral_radius(
    g: Graph,
    tol: float = DEFAULT_TOL,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    start=None,
) -> PerronData:
    """Dominant adjacency eigenvalue and scaled Perron vector of g.

    ``start`` overrides the all-ones start vector (any positive vector);
    it exists so tests can confirm the result does not depend on it.
    """
    if tol <= 0:
        raise ParameterError(f"tolerance must be positive, got {tol}")
    comps = g.components()
    best = None
    for comp in comps:
        sub = g.subgraph(comp) if len(comps) > 1 else g
        adj = sub.np_adjacency()
        if start is not None:
            s = np.asarray([start[v] for v in comp], dtype=float)
            if np.any(s <= 0):
                raise ParameterError("start vector must be strictly positive")
        else:
            s = None
        lam, x, residual, ok = _power_with_start(adj, tol, max_iterations, s)
        if not ok:
            partial = _assemble(g, comp, lam, x, residual)
            raise ConvergenceError(
                f"power iteration did not reach residual {tol} in {max_iterations} steps",
                best=partial,
            )
        if best is None or lam > best[0] + tol:
            best = (lam, comp, x, residual)
        elif abs(lam - best[0]) <= tol:
            if _component_key(g, comp) < _component_key(g, best[1]):
                best = (lam, comp, x, residual)
    lam, comp, x, residual = best
    return _assemble(g, comp, lam, x, residual)


def _precise_pair(adj_hi, x):
    """Rayleigh quotient and residual of x, measured in extended precision.

    Float64 dot products over thousands of summands carry rounding noise of
    order n * eps * radius, which can exceed a tight tolerance even for a
    fully converged vector; the extended-precision evaluation reports the
    honest residual of the vector actually returned.
    """
    xh = x.astype(np.longdouble)
    yh = adj_hi @ xh
    lam = float((xh @ yh) / (xh @ xh))
    residual = float(np.max(np.abs(yh - lam * xh)))
    return lam, residual


def _power_with_start(adj, tol, max_iterations, start):
    n = adj.shape[0]
    x = np.ones(n) if start is None else start / start.max()
    eps = float(np.finfo(np.float64).eps)
    lam = 0.0
    residual = math.inf
    it = 0
    # stage 1: float64 steps until the residual reading reaches the
    # tolerance or its own noise floor (about n * eps * radius)
    while it < max_iterations:
        y = adj @ x
        lam = float(x @ y) / float(x @ x)
        residual = float(np.max(np.abs(y - lam * x)))
        it += 1
        if residual <= max(tol, 4.0 * n * eps * (abs(lam) + 1.0)):
            break
        x = y + x
        x /= x.max()
    adj_hi = adj.astype(np.longdouble)
    lam_hi, res_hi = _precise_pair(adj_hi, x)
    if res_hi <= tol:
        return lam_hi, x, res_hi, True
    # stage 2: float64 stepping has hit its own noise equilibrium above the
    # tolerance; continue the iteration in extended precision, then hand
    # back the rounded vector once its measured residual passes
    x_hi = x.astype(np.longdouble)
    target = tol / 4
    while it < max_iterations:
        y = adj_hi @ x_hi
        rq = float((x_hi @ y) / (x_hi @ x_hi))
        step_res = float(np.max(np.abs(y - rq * x_hi)))
        it += 1
        if step_res <= target:
            x64 = np.asarray(x_hi, dtype=np.float64)
            x64 /= x64.max()
            lam_hi, res_hi = _precise_pair(adj_hi, x64)
            if res_hi <= tol:
                return lam_hi, x64, res_hi, True
            target /= 4
        x_hi = y + x_hi
        x_hi /= x_hi.max()
    return lam, x, residual, False


def _component_key(g: Graph, comp: tuple[int, ...]):
    from .canon import canonical_form

    return (canonical_form(g.subgraph(comp)).data, comp[0])


def _assemble(g: Graph, comp: tuple[int, ...], lam, x, residual) -> PerronData:
    full = np.zeros(g.n)
    full[list(comp)] = x / x.max()
    vec = tuple(float(v) for v in full)
    z = max(range(g.n), key=lambda v: vec[v])
    return PerronData(float(lam), vec, float(residual), int(z))


def split_radius_closed_form(n: int, k: int) -> float:
    """Spectral radius of the complete split graph on (n, k).

    The two-class equitable quotient gives the characteristic equation
    x^2 - (k-1)x - k(n-k) = 0, whose positive root is returned.
    """
    if not 1 <= k < n:
        raise ParameterError(f"closed form needs 1 <= k < n, got k={k}, n={n}")
    return (k - 1 + math.sqrt((k - 1) ** 2 + 4 * k * (n - k))) / 2


# ---------------------------------------------------------------------------
# the constants chain


@dataclass(frozen=True)
class Constants:
    """Threshold constants (eta, epsilon, alpha, delta) for weight classes.

    ``satisfies_chain`` records whether the strict inequality chain holds:
    eta below both of its bounds, epsilon below min(eta/2, 1/(8k^3),
    eta/(32k^3+2)), alpha below min(eta, epsilon^2/(22k)), and
    delta = epsilon*alpha/(500 k^2) exactly.
    """

    k: int
    eta: float
    epsilon: float
    alpha: float
    delta: float
    satisfies_chain: bool


def _eta_bound(k: int) -> float:
    second = (1 / ((2 * k + 2) * (16 * k**2))) * (
        16 * k**2 - 1 - 4 * (16 * k**3 - 1) / (5 * k)
    )
    return min(1 / (10 * k), second)


def _epsilon_bound(k: int, eta: float) -> float:
    return min(eta, eta / 2, 1 / (8 * k**3), eta / (32 * k**3 + 2))


def default_constants(k: int) -> Constants:
    """Constants set to 0.9 of each upper bound, evaluated in chain order."""
    if k < 2:
        raise ParameterError(f"constants are defined for k >= 2, got k={k}")
    eta = 0.9 * _eta_bound(k)
    epsilon = 0.9 * _epsilon_bound(k, eta)
    alpha = 0.9 * min(eta, epsilon**2 / (22 * k))
    delta = epsilon * alpha / (500 * k**2)
    return Constants(k, eta, epsilon, alpha, delta, True)


def constants_with(
    k: int,
    eta: float | None = None,
    epsilon: float | None = None,
    alpha: float | None = None,
) -> Constants:
    """Constants with selective overrides; the chain flag is recomputed."""
    if k < 2:
        raise ParameterError(f"constants are defined for k >= 2, got k={k}")
    base = default_constants(k)
    eta = base.eta if eta is None else float(eta)
    epsilon = base.epsilon if epsilon is None else float(epsilon)
    alpha = base.alpha if alpha is None else float(alpha)
    if min(eta, epsilon, alpha) <= 0:
        raise ParameterError("constants must be strictly positive")
    delta = epsilon * alpha / (500 * k**2)
    ok = (
        eta < _eta_bound(k)
        and epsilon < _epsilon_bound(k, eta)
        and alpha < min(eta, epsilon**2 / (22 * k))
    )
    return Constants(k, eta, epsilon, alpha, delta, ok)


# ---------------------------------------------------------------------------
# weight classes


@dataclass(frozen=True)
class VertexPartition:
    """Vertex classes by Perron weight thresholds.

    large:       weight >= alpha            small: the complement
    mid:         weight >= alpha/3          top:   large with weight >= eta
    common:      common neighborhood of the top class
    exceptional: everything outside top and common
    """

    large: tuple[int, ...]
    small: tuple[int, ...]
    mid: tuple[int, ...]
    top: tuple[int, ...]
    common: tuple[int, ...]
    exceptional: tuple[int, ...]


def classify_vertices(g: Graph, p: PerronData, c: Constants) -> VertexPartition:
    x = p.vector
    large = tuple(v for v in range(g.n) if x[v] >= c.alpha)
    small = tuple(v for v in range(g.n) if x[v] < c.alpha)
    mid = tuple(v for v in range(g.n) if x[v] >= c.alpha / 3)
    top = tuple(v for v in large if x[v] >= c.eta)
    mask = (1 << g.n) - 1
    for v in top:
        mask &= g.rows[v]
    common = tuple(v for v in range(g.n) if (mask >> v) & 1)
    rest = set(range(g.n)) - set(top) - set(common)
    return VertexPartition(large, small, mid, top, common, tuple(sorted(rest)))


# ---------------------------------------------------------------------------
# audit


@dataclass(frozen=True)
class AuditEntry:
    """One checked inequality: identifier, rendering with numbers, outcome.

    ``margin`` is (satisfied side - required side) recomputed from the graph;
    None marks a vacuous check (a minimum over an empty set).
    """

    lemma: str
    inequality: str
    passed: bool
    margin: float | None


@dataclass(frozen=True)
class AuditReport:
    entries: tuple[AuditEntry, ...]

    def entry(self, lemma: str) -> AuditEntry:
        for e in self.entries:
            if e.lemma == lemma:
                return e
        raise KeyError(lemma)

    def to_dicts(self) -> list[dict]:
        return [
            {"lemma": e.lemma, "inequality": e.inequality, "pass": e.passed, "margin": e.margin}
            for e in self.entries
        ]


def _num(x: float) -> str:
    return f"{x:.6g}"


def _min_over(values):
    values = list(values)
    if not values:
        return None
    return min(values)


def _edges_between(g: Graph, left, right) -> int:
    rmask = 0
    for v in right:
        rmask |= 1 << v
    return sum((g.rows[v] & rmask).bit_count() for v in left)


def _edges_within(g: Graph, verts) -> int:
    mask = 0
    for v in verts:
        mask |= 1 << v
    return sum((g.rows[v] & mask).bit_count() for v in verts) // 2


def audit_extremal_lemmas(
    g: Graph, k: int, c: Constants, p: PerronData, tol: float = DEFAULT_TOL
) -> AuditReport:
    """Recompute every structural inequality on g and report margins.

    Entries report, never raise: the inequalities are proved for spectral
    extremal graphs at large vertex counts, so failures on concrete small
    graphs are data, not errors.
    """
    if k < 1:
        raise ParameterError(f"audit needs k >= 1, got k={k}")
    n = g.n
    x = p.vector
    lam = p.radius
    part = classify_vertices(g, p, c)
    degs = g.degrees()
    entries = []

    def add(lemma, satisfied, required, relation, passed, margin):
        entries.append(
            AuditEntry(lemma, f"{satisfied} {relation} {required}", bool(passed), margin)
        )

    # size of the large-weight class and of the mid-weight class
    bound = 5 * math.sqrt(k * n) / c.alpha
    add("large-weight-count", f"|L| = {len(part.large)}", _num(bound), "<=",
        len(part.large) <= bound, bound - len(part.large))
    bound = 15 * math.sqrt(k * n) / c.alpha
    add("mid-weight-count", f"|M| = {len(part.mid)}", _num(bound), "<=",
        len(part.mid) <= bound, bound - len(part.mid))
    bound = 500 * k**2 / c.alpha
    add("large-weight-count-refined", f"|L| = {len(part.large)}", _num(bound), "<=",
        len(part.large) <= bound, bound - len(part.large))

    # linear degree floor on the large-weight class
    floor = c.alpha * n / (10 * (4 * k + 3))
    m = _min_over(degs[v] for v in part.large)
    add("large-weight-degree-floor",
        f"min degree over L = {m if m is not None else 'vacuous'}", _num(floor), ">=",
        m is None or m >= floor, None if m is None else m - floor)

    # degree of a top-weight vertex tracks its weight
    m = _min_over(degs[v] - (x[v] - c.epsilon) * n for v in part.top)
    add("top-weight-degree", "min over L' of d(v) - (x_v - eps) n"
        f" = {('vacuous' if m is None else _num(m))}", "0", ">=",
        m is None or m >= 0, m)

    # edge window around the maximum-weight vertex
    sh = shells(g, p.z)
    n1 = set(sh.shells[1]) if len(sh.shells) > 1 else set()
    n2 = set(sh.shells[2]) if len(sh.shells) > 2 else set()
    large_set = set(part.large)
    small_set = set(part.small)
    s1 = [v for v in n1 if v in small_set]
    l12z = [p.z] + [v for v in n1 | n2 if v in large_set]
    val = _edges_between(g, s1, l12z)
    lo = (1 - c.epsilon) * k * n
    hi = (k + c.epsilon) * n
    add("max-vertex-edge-window", f"{lo:.6g} <= e(S1, z u L1 u L2) = {val}", _num(hi),
        "<=", lo <= val <= hi, min(val - lo, hi - val))

    # the top-weight class has exactly k vertices
    add("top-weight-size", f"|L'| = {len(part.top)}", str(k), "==",
        len(part.top) == k, float(len(part.top) - k))

    # top-weight vertices have near-full degree and near-maximal weight
    floor = (1 - 1 / (8 * k**3)) * n
    m = _min_over(degs[v] for v in part.top)
    add("top-weight-degree-floor",
        f"min degree over L' = {m if m is not None else 'vacuous'}", _num(floor), ">=",
        m is None or m >= floor, None if m is None else m - floor)
    floor = 1 - 1 / (16 * k**3)
    m = _min_over(x[v] for v in part.top)
    add("top-weight-floor",
        f"min weight over L' = {('vacuous' if m is None else _num(m))}", _num(floor), ">=",
        m is None or m >= floor, None if m is None else m - floor)

    # every neighborhood carries almost k units of weight
    floor = k - 1 / (16 * k**2)
    m = min(sum(x[u] for u in g.neighbors(v)) for v in range(n))
    add("neighborhood-weight-floor", f"min_v sum of weights over N(v) = {_num(m)}",
        _num(floor), ">=", m >= floor, m - floor)

    # the exceptional class vanishes; the common neighborhood is nearly independent
    add("exceptional-empty", f"|E| = {len(part.exceptional)}", "0", "==",
        len(part.exceptional) == 0, float(-len(part.exceptional)))
    er = _edges_within(g, part.common)
    add("common-neighborhood-edges", f"e(R) = {er}", "1", "<=", er <= 1, float(1 - er))

    # connectivity and the global weight floor
    ncomp = len(g.components())
    add("connected", f"components = {ncomp}", "1", "==", ncomp == 1, float(1 - ncomp))
    m = min(x)
    floor = 1 / lam if lam > 0 else 0.0
    add("weight-floor", f"min weight = {_num(m)}", _num(floor), ">=", m >= floor, m - floor)

    # radius window
    hi = math.sqrt((4 * k + 2) * n)
    add("radius-upper", f"radius = {_num(lam)}", _num(hi), "<", lam < hi, hi - lam)
    lo = split_radius_closed_form(n, k) if k < n else float(k - 1)
    add("radius-lower", f"radius = {_num(lam)}", _num(lo), ">=", lam >= lo, lam - lo)

    # the mechanism ruling out a nonempty exceptional class: its induced
    # subgraph would need spectral radius at least (4 / 5k) of the whole
    if part.exceptional:
        sub = g.subgraph(part.exceptional)
        sub_lam = spectral_radius(sub, tol=max(tol, 1e-10)).radius
    else:
        sub_lam = 0.0
    req = 4 * lam / (5 * k)
    add("exceptional-subgraph-radius", f"radius of G[E] = {_num(sub_lam)}", _num(req),
        ">=", sub_lam >= req, sub_lam - req)

    # second-degree eigen identity, evaluated with the computed pair; drift
    # beyond 10 tol n is numeric rather than structural
    adj = g.np_adjacency()
    xv = np.asarray(x)
    dev = float(np.max(np.abs(adj @ (adj @ xv) - lam * lam * xv)))
    allowance = 10 * tol * n
    add("second-degree-residual", f"max deviation = {_num(dev)}", _num(allowance), "<=",
        dev <= allowance, allowance - dev)

    return AuditReport(tuple(entries))
