"""Bounds and numerical search for splitting correlations privately.

Given a bipartite state on a reference factor R and an acted factor A, an
isometry into B (kept) and E (discarded) redistributes the R-A correlations:
I(R:B) + I(R:E) always reproduces I(R:A) on pure inputs, and the question is
how small the kept share I(R:B) can be made while the discarded share I(R:E)
stays below a privacy level eps and below I(R:B) itself.  This module
provides the closed-form bounds on that minimum, a penalty-based multistart
optimizer that searches the isometry family directly, a measurement-isometry
variant, and a sweep of the trade-off curve over a grid of privacy levels.

The unbounded privacy level is ``float("inf")`` (spelled ``inf`` on the
command line); it is the distinguished IEEE infinity, detectable with
``math.isinf``, never a large finite float.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from . import entropics, isometries, qmat
from .entropics import spectrum_entropy
from .isometries import Isometry
from .qmat import DimSig, ValidationError
from .states import DensityMatrix, as_density

UNBOUNDED = float("inf")
FEASIBLE_TOL = 1e-6
ACCEPT_SLACK = 1e-4

__all__ = [
    "ACCEPT_SLACK",
    "BoundsReport",
    "DecouplingOutcome",
    "FEASIBLE_TOL",
    "OptimizerOptions",
    "SweepResult",
    "SweepRow",
    "UNBOUNDED",
    "apply_isometry",
    "bounds_report",
    "decoupling_scores",
    "half_qmi_upper",
    "optimize_xi",
    "outcome_isometry",
    "povm_upper",
    "prop1_lower",
    "rates_sweep",
    "xi_infinity",
]


# ---------------------------------------------------------------------------
# Applying an isometry and scoring the result


def _bipartite(state: DensityMatrix) -> tuple[str, str, int, int]:
    if len(state.sig.labels) != 2:
        raise ValidationError(
            f"need a bipartite state, got factors {state.sig.labels}; "
            "merge factors first"
        )
    r, a = state.sig.labels
    return r, a, state.sig.dims[0], state.sig.dims[1]


def apply_isometry(state: DensityMatrix, v: Isometry) -> DensityMatrix:
    """Conjugate the second factor of a bipartite state by an isometry.

    Returns the state on (reference, B, E) with the output labels taken from
    the isometry's signature.
    """
    r, _, d_r, d_a = _bipartite(state)
    if v.in_dim != d_a:
        raise ValidationError(
            f"isometry expects input dimension {v.in_dim}, state has {d_a}"
        )
    isometries.validate_isometry(v)
    if r in v.out_sig.labels:
        raise ValidationError(
            f"reference label {r!r} collides with output labels {v.out_sig.labels}"
        )
    out = _conjugate(state.matrix, d_r, d_a, v.matrix)
    sig = DimSig((d_r,) + v.out_sig.dims, (r,) + v.out_sig.labels)
    return as_density(out.reshape(sig.side, sig.side), sig)


def _conjugate(rho: np.ndarray, d_r: int, d_a: int, w: np.ndarray) -> np.ndarray:
    """(1 (x) w) rho (1 (x) w)^dag without forming the Kronecker factor."""
    rho4 = rho.reshape(d_r, d_a, d_r, d_a)
    x = np.tensordot(rho4, w, axes=([1], [1]))        # (r, r', b, o)
    y = np.tensordot(x, w.conj(), axes=([2], [1]))    # (r, r', o, p)
    return y.transpose(0, 2, 1, 3)                    # (r, o, r', p)


def decoupling_scores(state: DensityMatrix) -> tuple[float, float, bool]:
    """Mutual informations of a (reference, kept, discarded) state, canonically ordered.

    Returns ``(i_rb, i_re, swapped)`` where the two output factors are
    relabeled if necessary so that ``i_re <= i_rb``; ``swapped`` records
    whether that relabeling happened.
    """
    if len(state.sig.labels) != 3:
        raise ValidationError(
            f"need a tripartite state, got factors {state.sig.labels}"
        )
    r, b, e = state.sig.labels
    i_rb = entropics.mutual_information(state, r, b)
    i_re = entropics.mutual_information(state, r, e)
    if i_re > i_rb:
        return i_re, i_rb, True
    return i_rb, i_re, False


# ---------------------------------------------------------------------------
# Closed-form bounds


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if math.isnan(eps) or eps < 0.0:
        raise ValidationError(f"privacy level must be >= 0 or inf, got {eps}")
    return eps


def prop1_lower(state: DensityMatrix, eps: float = UNBOUNDED) -> float:
    """Lower bound ``max(2 ic - eps, ic, 0)`` on the optimal kept correlations.

    ``ic`` is the coherent information from the acted factor to the
    reference.  With unbounded privacy the first term drops out and the bound
    is ``max(ic, 0)``.
    """
    eps = _check_eps(eps)
    r, a, _, _ = _bipartite(state)
    ic = entropics.coherent_information(state, a, r)
    return max(2.0 * ic - eps, ic, 0.0)


def half_qmi_upper(state: DensityMatrix) -> float:
    """Upper bound: half the mutual information between the two factors."""
    r, a, _, _ = _bipartite(state)
    return 0.5 * entropics.mutual_information(state, r, a)


def xi_infinity(state: DensityMatrix) -> float:
    """Ineliminable correlations at unbounded privacy in the many-copy limit:
    ``max(ic, 0)`` with ``ic`` the coherent information from the acted factor
    to the reference.  Zero exactly whenever ``ic <= 0``, in particular on
    every separable state."""
    r, a, _, _ = _bipartite(state)
    return max(entropics.coherent_information(state, a, r), 0.0)


@dataclass(frozen=True)
class BoundsReport:
    """Closed-form bounds plus the measurement-search upper bound for one state."""

    qmi: float
    ic_a_to_r: float
    prop1_lower: float
    half_qmi_upper: float
    povm_upper: float
    xi_infinity: float


# ---------------------------------------------------------------------------
# Optimizer


@dataclass(frozen=True)
class OptimizerOptions:
    """Knobs for the multistart searches.

    ``d_b``/``d_e`` override the output dimensions (default: both equal the
    acted factor's dimension).  ``iterations`` is the per-restart descent
    budget.  ``povm_elements`` sets the number of measurement outcomes for
    :func:`povm_upper` (default: the acted factor's dimension).  ``threads``
    caps restart-level parallelism; unset, it reads PQDEC_THREADS and falls
    back to 1.  Results are independent of the thread count.
    """

    d_b: int | None = None
    d_e: int | None = None
    restarts: int = 32
    iterations: int = 2000
    seed: int = 0
    warm_theta: np.ndarray | None = None
    povm_elements: int | None = None
    threads: int | None = None

    def thread_count(self) -> int:
        if self.threads is not None:
            return max(1, int(self.threads))
        env = os.environ.get("PQDEC_THREADS", "")
        try:
            return max(1, int(env)) if env else 1
        except ValueError:
            return 1


@dataclass(frozen=True)
class DecouplingOutcome:
    """Best candidate found by :func:`optimize_xi`.

    ``theta`` parameterizes the certificate isometry (reconstruct it with
    :func:`outcome_isometry`); ``i_rb``/``i_re`` are its canonical scores.
    """

    theta: np.ndarray
    i_rb: float
    i_re: float
    epsilon: float
    feasible: bool
    restarts_used: int
    converged: bool
    d_a: int = 0
    d_b: int = 0
    d_e: int = 0


def outcome_isometry(outcome: DecouplingOutcome) -> Isometry:
    """Rebuild the certificate isometry recorded in an optimizer outcome."""
    return isometries.from_parameters(
        outcome.theta, outcome.d_a, outcome.d_b, outcome.d_e
    )


class _Scorer:
    """Fast raw mutual-information scores for candidate isometry matrices."""

    def __init__(self, rho: np.ndarray, d_r: int, d_a: int, d_b: int, d_e: int):
        self.rho4 = rho.reshape(d_r, d_a, d_r, d_a)
        self.dims = (d_r, d_a, d_b, d_e)
        rho_r = np.trace(self.rho4, axis1=1, axis2=3)
        self.s_r = spectrum_entropy(np.linalg.eigvalsh(rho_r))

    def scores(self, w: np.ndarray) -> tuple[float, float]:
        """Return raw (I(R:B), I(R:E)) for the isometry matrix ``w``."""
        d_r, _, d_b, d_e = self.dims
        x = np.tensordot(self.rho4, w, axes=([1], [1]))
        y = np.tensordot(x, w.conj(), axes=([2], [1]))
        t = y.transpose(0, 2, 1, 3).reshape(d_r, d_b, d_e, d_r, d_b, d_e)
        t_rb = np.trace(t, axis1=2, axis2=5).reshape(d_r * d_b, d_r * d_b)
        t_re = np.trace(t, axis1=1, axis2=4).reshape(d_r * d_e, d_r * d_e)
        t_b = np.trace(
            t_rb.reshape(d_r, d_b, d_r, d_b), axis1=0, axis2=2
        )
        t_e = np.trace(
            t_re.reshape(d_r, d_e, d_r, d_e), axis1=0, axis2=2
        )
        s_rb = spectrum_entropy(np.linalg.eigvalsh(t_rb))
        s_re = spectrum_entropy(np.linalg.eigvalsh(t_re))
        s_b = spectrum_entropy(np.linalg.eigvalsh(t_b))
        s_e = spectrum_entropy(np.linalg.eigvalsh(t_e))
        return self.s_r + s_b - s_rb, self.s_r + s_e - s_re


def _expm_params(theta: np.ndarray, n: int) -> np.ndarray:
    g = isometries._generator_from_parameters(np.asarray(theta, dtype=float), n)
    w, u = np.linalg.eigh(1j * g)
    return (u * np.exp(-1j * w)) @ u.conj().T


def _descend(f, theta, value, step, iters, rng):
    """Mirrored random-direction descent with an adaptive step."""
    n = theta.size
    for _ in range(iters):
        u = rng.standard_normal(n)
        u *= step / float(np.linalg.norm(u))
        cand = theta + u
        v = f(cand)
        if v < value - 1e-13:
            theta, value = cand, v
            step *= 1.4
            continue
        cand = theta - u
        v = f(cand)
        if v < value - 1e-13:
            theta, value = cand, v
            step *= 1.4
        else:
            step *= 0.75
            if step < 1e-8:
                break
    return theta, value, step


def _polish(f, theta, value, rounds, h=1e-5):
    """Central-difference gradient descent with backtracking line search."""
    n = theta.size
    alpha = 0.1
    grad = np.empty(n)
    stationary = False
    for _ in range(rounds):
        for i in range(n):
            e = np.zeros(n)
            e[i] = h
            grad[i] = (f(theta + e) - f(theta - e)) / (2.0 * h)
        gn = float(np.linalg.norm(grad))
        if gn < 1e-9:
            stationary = True
            break
        d = grad / gn
        a = alpha
        improved = False
        for _ in range(25):
            cand = theta - a * d
            v = f(cand)
            if v < value - 1e-13:
                theta, value = cand, v
                alpha = a * 1.5
                improved = True
                break
            a *= 0.5
        if not improved:
            stationary = True
            break
    return theta, value, stationary


def _measurement_start(basis: np.ndarray, d_a: int, d_b: int, d_e: int) -> np.ndarray | None:
    """Parameters of an isometry that records a basis measurement in both outputs."""
    if d_b < d_a or d_e < d_a:
        return None
    n = d_b * d_e
    v = np.zeros((n, d_a), dtype=complex)
    for m in range(d_a):
        v[m * d_e + m, :] = basis[:, m].conj()
    u = isometries.complete_to_unitary(v)
    return isometries.parameters_from_unitary(u)


def _restart_theta(idx: int, opts: OptimizerOptions, d_a: int, d_b: int, d_e: int):
    n2 = (d_b * d_e) ** 2
    if idx == 0:
        if opts.warm_theta is not None:
            return np.asarray(opts.warm_theta, dtype=float).copy()
        return np.zeros(n2)
    if idx == 1:
        start = _measurement_start(np.eye(d_a, dtype=complex), d_a, d_b, d_e)
        if start is not None:
            return start
    if idx == 2:
        start = _measurement_start(isometries.fourier_basis(d_a), d_a, d_b, d_e)
        if start is not None:
            return start
    rng = np.random.default_rng(opts.seed + idx)
    return rng.standard_normal(n2) * 0.7


def _penalized(m_b: float, m_e: float, eps: float, weight: float, symmetric: bool) -> float:
    if symmetric:
        hi, lo = (m_b, m_e) if m_b >= m_e else (m_e, m_b)
        if math.isinf(eps):
            return hi
        return hi + weight * max(0.0, lo - eps) ** 2
    pen = weight * max(0.0, m_e - m_b) ** 2
    if not math.isinf(eps):
        pen += weight * max(0.0, m_e - eps) ** 2
    return m_b + pen


def _solve_restart(
    scorer: _Scorer,
    theta0: np.ndarray,
    eps: float,
    opts: OptimizerOptions,
    rng: np.random.Generator,
    symmetric: bool,
    stop_value: float,
):
    d_b, d_e = scorer.dims[2], scorer.dims[3]
    d_a = scorer.dims[1]
    n = d_b * d_e

    def raw(theta):
        return scorer.scores(_expm_params(theta, n)[:, :d_a])

    def objective(weight):
        def f(theta):
            m_b, m_e = raw(theta)
            return _penalized(m_b, m_e, eps, weight, symmetric)
        return f

    unconstrained = math.isinf(eps) and symmetric
    weights = [0.0] if unconstrained else [10.0 * 10.0 ** s for s in range(5)]
    per_stage = max(1, opts.iterations // len(weights))
    polish_rounds = min(50, max(8, opts.iterations // (3 * theta0.size)))

    theta = theta0
    step = 0.3
    converged = False
    for stage, weight in enumerate(weights):
        f = objective(weight)
        value = f(theta)
        theta, value, step = _descend(f, theta, value, max(step, 0.02), per_stage, rng)
        m_b, m_e = raw(theta)
        lo = min(m_b, m_e) if symmetric else m_e
        # A restart that already sits at the lower bound and satisfies the
        # constraint cannot improve further; skip the remaining stages.
        hi = max(m_b, m_e) if symmetric else m_b
        if hi <= stop_value + 2.5e-7 and (math.isinf(eps) or lo <= eps + 1e-7):
            converged = True
            break
    else:
        theta, value, converged = _polish(objective(weights[-1]), theta, value, polish_rounds)
        # Push the discarded share under the privacy level if it still
        # overshoots; each extra stage raises the penalty tenfold.
        if not unconstrained:
            weight = weights[-1]
            for _ in range(3):
                m_b, m_e = raw(theta)
                lo = min(m_b, m_e) if symmetric else m_e
                if math.isinf(eps) or lo <= eps + 0.5 * FEASIBLE_TOL:
                    break
                weight *= 10.0
                f = objective(weight)
                value = f(theta)
                theta, value, step = _descend(f, theta, value, 0.02, per_stage // 2 + 1, rng)
                theta, value, _ = _polish(f, theta, value, max(4, polish_rounds // 3))
    if step < 1e-7:
        converged = True

    m_b, m_e = raw(theta)
    if symmetric and m_e > m_b:
        m_b, m_e = m_e, m_b
    feasible = m_e <= min(eps, m_b) + FEASIBLE_TOL
    near = m_e <= eps + ACCEPT_SLACK and m_e <= m_b + ACCEPT_SLACK
    return {
        "theta": theta,
        "i_rb": m_b,
        "i_re": m_e,
        "feasible": feasible,
        "near": near,
        "converged": converged,
    }


def _run_restarts(count: int, runner: Callable[[int], dict], stop_value: float, threads: int):
    """Run restarts and keep those up to the first one that hits ``stop_value``.

    The considered set depends only on the restart results, never on
    execution order, so serial and threaded runs select the same winner.
    """

    def meets(res):
        return res["feasible"] and res["i_rb"] <= stop_value + 5e-7

    results: list[dict | None] = [None] * count
    stop_index = count - 1
    if threads <= 1 or count == 1:
        for idx in range(count):
            results[idx] = runner(idx)
            if meets(results[idx]):
                stop_index = idx
                break
    else:
        done = 0
        with ThreadPoolExecutor(max_workers=threads) as pool:
            while done < count:
                chunk = list(range(done, min(done + threads, count)))
                for idx, res in zip(chunk, pool.map(runner, chunk)):
                    results[idx] = res
                done = chunk[-1] + 1
                hit = [i for i in range(done) if results[i] is not None and meets(results[i])]
                if hit:
                    stop_index = hit[0]
                    break
    considered = [(i, results[i]) for i in range(stop_index + 1) if results[i] is not None]
    return considered, stop_index + 1


def optimize_xi(
    state: DensityMatrix, eps: float = UNBOUNDED, opts: OptimizerOptions | None = None
) -> DecouplingOutcome:
    """Search the isometry family for the least kept correlations at privacy ``eps``.

    Runs ``opts.restarts`` independent descents (structured starts first,
    then seeded random ones), each a staged quadratic-penalty minimization of
    the larger mutual information subject to the smaller one staying below
    ``eps``, finished with a central-difference gradient polish.  Returns the
    best feasible candidate, with ties broken by the lowest restart index; if
    no restart satisfies the privacy constraint within ``1e-4``, the returned
    outcome reports the least-leaking candidate with ``feasible=False``.

    Identical inputs, options, and seed give an identical outcome regardless
    of the thread count.
    """
    eps = _check_eps(eps)
    opts = opts if opts is not None else OptimizerOptions()
    _, _, d_r, d_a = _bipartite(state)
    d_b = opts.d_b if opts.d_b is not None else d_a
    d_e = opts.d_e if opts.d_e is not None else d_a
    if d_b * d_e < d_a:
        raise ValidationError(
            f"output side {d_b}x{d_e} cannot accommodate input dimension {d_a}"
        )
    symmetric = d_b == d_e
    scorer = _Scorer(state.matrix, d_r, d_a, d_b, d_e)
    stop_value = prop1_lower(state, eps)

    def runner(idx: int):
        theta0 = _restart_theta(idx, opts, d_a, d_b, d_e)
        # Descent directions draw from a substream distinct from the start
        # values: both derive from the master seed by fixed offsets.
        rng = np.random.default_rng(opts.seed + 100003 + idx)
        return _solve_restart(scorer, theta0, eps, opts, rng, symmetric, stop_value)

    considered, used = _run_restarts(
        max(1, opts.restarts), runner, stop_value, opts.thread_count()
    )

    feasible = [(res["i_rb"], idx, res) for idx, res in considered if res["feasible"]]
    if feasible:
        _, idx, best = min(feasible, key=lambda t: (t[0], t[1]))
        chosen_feasible = True
    else:
        near = [(res["i_rb"], idx, res) for idx, res in considered if res["near"]]
        pool = near if near else [(res["i_re"], idx, res) for idx, res in considered]
        _, idx, best = min(pool, key=lambda t: (t[0], t[1]))
        chosen_feasible = best["feasible"]

    return DecouplingOutcome(
        theta=best["theta"],
        i_rb=float(best["i_rb"]),
        i_re=float(best["i_re"]),
        epsilon=eps,
        feasible=bool(chosen_feasible),
        restarts_used=used,
        converged=bool(best["converged"]),
        d_a=d_a,
        d_b=d_b,
        d_e=d_e,
    )


def povm_upper(state: DensityMatrix, opts: OptimizerOptions | None = None) -> float:
    """Least kept correlations over rank-one measurement isometries.

    Parameterizes the measurement by a unitary on an ``m``-outcome space
    (``opts.povm_elements``, default the acted dimension) and minimizes the
    common value of the two output correlations.  The result is an upper
    bound on the optimum at unbounded privacy, since both outputs of a
    measurement isometry carry identical correlations with the reference.
    """
    opts = opts if opts is not None else OptimizerOptions()
    _, _, d_r, d_a = _bipartite(state)
    m = opts.povm_elements if opts.povm_elements is not None else d_a
    if m < d_a:
        raise ValidationError(
            f"need at least {d_a} measurement outcomes, got {m}"
        )
    scorer = _Scorer(state.matrix, d_r, d_a, m, m)
    floor = xi_infinity(state)
    rows = np.arange(m) * m + np.arange(m)

    def value_of(theta):
        t = _expm_params(theta, m)[:, :d_a]
        v = np.zeros((m * m, d_a), dtype=complex)
        v[rows, :] = t
        m_b, m_e = scorer.scores(v)
        return 0.5 * (m_b + m_e)

    def runner(idx: int):
        n2 = m * m
        if idx == 0:
            theta = np.zeros(n2)
        elif idx == 1:
            theta = isometries.parameters_from_unitary(isometries.fourier_basis(m))
        else:
            theta = np.random.default_rng(opts.seed + idx).standard_normal(n2) * 0.7
        rng = np.random.default_rng(opts.seed + 100003 + idx)
        value = value_of(theta)
        theta, value, step = _descend(value_of, theta, value, 0.3, opts.iterations, rng)
        rounds = min(50, max(8, opts.iterations // (3 * n2)))
        theta, value, stationary = _polish(value_of, theta, value, rounds)
        return {
            "theta": theta,
            "i_rb": value,
            "i_re": value,
            "feasible": True,
            "near": True,
            "converged": stationary or step < 1e-7,
        }

    considered, _ = _run_restarts(
        max(1, opts.restarts), runner, floor, opts.thread_count()
    )
    return float(min(res["i_rb"] for _, res in considered))


def bounds_report(
    state: DensityMatrix,
    eps: float = UNBOUNDED,
    opts: OptimizerOptions | None = None,
) -> BoundsReport:
    """All closed-form bounds plus the measurement-search bound for one state.

    The lower bound is evaluated at the requested privacy level; the
    consistency of the unbounded-privacy ordering (formula below half the
    mutual information, lower bound below the measurement bound) is checked
    and a violation raises :class:`ValidationError`.
    """
    eps = _check_eps(eps)
    r, a, _, _ = _bipartite(state)
    qmi = entropics.mutual_information(state, r, a)
    ic = entropics.coherent_information(state, a, r)
    report = BoundsReport(
        qmi=qmi,
        ic_a_to_r=ic,
        prop1_lower=prop1_lower(state, eps),
        half_qmi_upper=0.5 * qmi,
        povm_upper=povm_upper(state, opts),
        xi_infinity=max(ic, 0.0),
    )
    if report.xi_infinity > report.half_qmi_upper + 1e-9:
        raise ValidationError(
            f"bound ordering violated: formula value {report.xi_infinity:.12g} "
            f"exceeds half the mutual information {report.half_qmi_upper:.12g}"
        )
    if max(ic, 0.0) > report.povm_upper + FEASIBLE_TOL:
        raise ValidationError(
            f"bound ordering violated: lower bound {max(ic, 0.0):.12g} exceeds "
            f"measurement bound {report.povm_upper:.12g}"
        )
    return report


# ---------------------------------------------------------------------------
# Privacy-level sweep


@dataclass(frozen=True)
class SweepRow:
    eps: float
    xi_raw: float
    xi_envelope: float
    i_rb: float
    i_re: float
    prop1_lower: float
    half_qmi_upper: float
    feasible: bool
    restarts_used: int
    converged: bool


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]

    CSV_COLUMNS = (
        "eps",
        "xi_raw",
        "xi_envelope",
        "i_rb",
        "i_re",
        "prop1_lower",
        "half_qmi_upper",
        "feasible",
        "restarts_used",
        "converged",
    )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(
                [
                    _fmt(row.eps),
                    _fmt(row.xi_raw),
                    _fmt(row.xi_envelope),
                    _fmt(row.i_rb),
                    _fmt(row.i_re),
                    _fmt(row.prop1_lower),
                    _fmt(row.half_qmi_upper),
                    str(bool(row.feasible)).lower(),
                    str(int(row.restarts_used)),
                    str(bool(row.converged)).lower(),
                ]
            )
        return buf.getvalue()


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else format(float(x), ".12g")


def rates_sweep(
    state: DensityMatrix,
    eps_grid: Sequence[float],
    opts: OptimizerOptions | None = None,
) -> SweepResult:
    """Optimize over an ascending grid of privacy levels.

    Privacy levels above half the mutual information are solved at that
    ceiling, since larger levels cannot change the optimum.  Each grid point
    warm-starts from its predecessor's certificate, and the reported envelope
    is the running minimum of the raw values, which is a valid monotone
    non-increasing upper bound because the optimum never increases with eps.
    Optimizer infeasibility at one grid point is recorded in its row and does
    not abort the sweep.
    """
    opts = opts if opts is not None else OptimizerOptions()
    grid = [_check_eps(e) for e in eps_grid]
    if not grid:
        raise ValidationError("privacy grid is empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValidationError("privacy grid must be ascending")
    half = half_qmi_upper(state)
    rows = []
    warm = opts.warm_theta
    envelope = math.inf
    for eps in grid:
        eps_solve = eps if eps < half else half
        point_opts = replace(opts, warm_theta=warm)
        outcome = optimize_xi(state, eps_solve, point_opts)
        warm = outcome.theta
        envelope = min(envelope, outcome.i_rb)
        rows.append(
            SweepRow(
                eps=eps,
                xi_raw=outcome.i_rb,
                xi_envelope=envelope,
                i_rb=outcome.i_rb,
                i_re=outcome.i_re,
                prop1_lower=prop1_lower(state, eps),
                half_qmi_upper=half,
                feasible=outcome.feasible,
                restarts_used=outcome.restarts_used,
                converged=outcome.converged,
            )
        )
    return SweepResult(rows=tuple(rows))
