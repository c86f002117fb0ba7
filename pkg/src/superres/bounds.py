"""Closed-form conditioning bounds and tiny-scale exhaustive oracles.

Implements the clump lower bounds for sigma_min of a Vandermonde matrix,
the equispaced upper bound, the worst-case grid constant Theta with its
lower bound and brute-force evaluation, the min-max error sandwich, the
MUSIC noise-tolerance threshold, and the Gaussian Hankel norm bounds.

Every bound evaluates its formula even when hypotheses fail; validity is
flagged in the report so sweeps can cross hypothesis boundaries.
Combinatorial factors are computed in exact integer/rational arithmetic
before the final float conversion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import (
    EvenMRequiredError,
    HypothesisViolationError,
    IntractableEnumerationError,
)
from .torus import SupportSet, decompose_clumps, complexity
from .vandermonde import sigma_extremes, vandermonde

LEAD_CONSTANT = 20.0 * math.sqrt(2.0) / 19.0  # well-separated singleton constant

ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class Hypothesis:
    """One logged hypothesis: condition label, both sides, and the verdict."""

    condition: str
    lhs: float
    rhs: float
    satisfied: bool


@dataclass(frozen=True)
class BoundReport:
    """A named bound value plus the hypothesis log that qualifies it."""

    name: str
    value: float
    hypothesis_log: tuple[Hypothesis, ...]
    inputs: dict

    @property
    def hypotheses_satisfied(self) -> bool:
        return all(h.satisfied for h in self.hypothesis_log)


@dataclass(frozen=True)
class MinMaxBounds:
    """Two-sided min-max recovery error bounds for the on-grid model."""

    lower_report: BoundReport
    upper_report: BoundReport

    @property
    def lower(self) -> float:
        return self.lower_report.value

    @property
    def upper(self) -> float:
        return self.upper_report.value


def _hyp(condition: str, lhs: float, rhs: float, op: str = ">=") -> Hypothesis:
    if op == ">=":
        ok = lhs >= rhs
    elif op == "<=":
        ok = lhs <= rhs
    elif op == "<":
        ok = lhs < rhs
    else:
        raise ValueError(f"unknown comparison {op!r}")
    return Hypothesis(condition=condition, lhs=float(lhs), rhs=float(rhs), satisfied=bool(ok))


def interaction_sum(lam: int) -> Fraction:
    """Exact value of sum_j prod_{k != j} 1/(j-k)^2 over 1..lam."""
    total = Fraction(0)
    for j in range(1, lam + 1):
        denom = (math.factorial(j - 1) * math.factorial(lam - j)) ** 2
        total += Fraction(1, denom)
    return total


def constant_B(lam: int, m: int) -> float:
    """Clump constant: insensitive to geometry, depends on (lam, M) only."""
    if lam < 1:
        raise ValueError("clump size must be positive")
    if lam > m:
        raise HypothesisViolationError(f"requires M >= lambda, got M={m}, lambda={lam}")
    if lam == 1:
        return LEAD_CONSTANT
    taper = (1.0 - math.pi**2 / (3.0 * lam**2)) ** (-(lam - 1) / 2.0)
    rounding = (m / lam) ** (lam - 1) * float(m // lam) ** (-(lam - 1))
    return LEAD_CONSTANT * taper * rounding


def constant_C(lam: int, m: int) -> float:
    """Equispaced-clump constant: B * (lam/pi)^(lam-1) * sqrt(interaction sum)."""
    b = constant_B(lam, m)
    return b * (lam / math.pi) ** (lam - 1) * math.sqrt(float(interaction_sum(lam)))


def clump_separation_threshold(support: SupportSet, m: int) -> float:
    """Required inter-clump distance: max over nodes of
    10 * lam^(5/2) * (S * rho_j)^(1/(2*lam)) / M."""
    dec = decompose_clumps(support, m)
    if dec is None:
        raise ValueError("support does not decompose into clumps at this M")
    rho = complexity(support, m)
    s = support.size
    worst = 0.0
    for members in dec.clumps:
        lam = len(members)
        for j in members:
            req = 10.0 * lam**2.5 * (s * rho[j]) ** (1.0 / (2 * lam)) / m
            worst = max(worst, float(req))
    return worst


def clump1_lower(support: SupportSet, m: int) -> BoundReport:
    """Geometry-aware lower bound for sigma_min via node complexities."""
    from .exceptions import ModelViolationError

    dec = decompose_clumps(support, m)
    if dec is None:
        raise ModelViolationError(
            f"support does not satisfy the clump model at M={m}"
        )
    rho = complexity(support, m)
    s = support.size
    total = 0.0
    for members in dec.clumps:
        lam = len(members)
        b = constant_B(lam, m)
        for j in members:
            total += (b * lam ** (lam - 1) * rho[j]) ** 2
    value = float(math.sqrt(m) * total ** (-0.5))

    log = [_hyp("M >= 2*S^2", m, 2 * s * s)]
    if dec.num_clumps > 1:
        log.append(
            _hyp(
                "inter-clump dist >= complexity separation threshold",
                dec.min_interclump_dist,
                clump_separation_threshold(support, m),
            )
        )
    return BoundReport(
        name="clump1_lower",
        value=value,
        hypothesis_log=tuple(log),
        inputs={
            "M": m,
            "S": s,
            "A": dec.num_clumps,
            "lambda": list(dec.sizes),
        },
    )


def clump2_lower(
    lambda_list,
    alpha: float,
    m: int,
    interclump_dist: float | None = None,
) -> BoundReport:
    """Spacing-parameter lower bound for sigma_min: sqrt(M) / l2-aggregate
    of C_a * alpha^(1 - lam_a) over the clumps."""
    lams = [int(x) for x in lambda_list]
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    s = sum(lams)
    total = sum(
        (constant_C(lam, m) * alpha ** (-(lam - 1))) ** 2 for lam in lams
    )
    value = math.sqrt(m) * total ** (-0.5)

    log = [
        _hyp("M >= S^2", m, s * s),
        _hyp("max(lambda) - 1 < 1/alpha", max(lams) - 1, 1.0 / alpha, op="<"),
    ]
    if len(lams) > 1:
        threshold = max(
            20.0 * math.sqrt(s) * lam**2.5 / (math.sqrt(alpha) * m) for lam in lams
        )
        lhs = interclump_dist if interclump_dist is not None else float("nan")
        log.append(
            Hypothesis(
                condition="inter-clump dist >= 20*sqrt(S)*lambda^(5/2)/(sqrt(alpha)*M)",
                lhs=float(lhs),
                rhs=threshold,
                satisfied=bool(interclump_dist is not None and lhs >= threshold),
            )
        )
    return BoundReport(
        name="clump2_lower",
        value=value,
        hypothesis_log=tuple(log),
        inputs={"M": m, "S": s, "A": len(lams), "lambda": lams, "alpha": alpha},
    )


def derivative_constant(lam: int) -> float:
    """Taylor-remainder constant 2*pi*sum_j binom(lam-1, j)*j^lam/lam!."""
    total = Fraction(0)
    for j in range(lam):
        total += Fraction(math.comb(lam - 1, j) * j**lam, math.factorial(lam))
    return 2.0 * math.pi * float(total)


def upper_equispaced(lam: int, alpha: float, m: int) -> BoundReport:
    """Upper bound for sigma_min when the nodes contain an equispaced clump
    of lam points at spacing alpha/M."""
    if lam < 1:
        raise ValueError("clump size must be positive")
    value = (
        math.comb(2 * lam - 2, lam - 1) ** (-0.5)
        * 2.0
        * math.sqrt(m + 1)
        * (2.0 * math.pi * alpha) ** (lam - 1)
    )
    c = derivative_constant(lam)
    threshold = math.inf if c == 0 else 1.0 / (c * math.sqrt(m + 1))
    log = [_hyp("alpha <= 1/(C(lambda)*sqrt(M+1))", alpha, threshold, op="<=")]
    return BoundReport(
        name="upper_equispaced",
        value=value,
        hypothesis_log=tuple(log),
        inputs={"M": m, "lambda": lam, "alpha": alpha, "alpha_threshold": threshold},
    )


def theta_constant(m: int, s: int) -> float:
    """Constant in the worst-case grid lower bound."""
    lead = math.sqrt((12.0 - math.pi**2) / 24.0)
    inter = float(interaction_sum(s)) ** (-0.5)
    return (
        lead
        * inter
        / math.sqrt(s)
        * (math.pi / s) ** (s - 1)
        * (m / s) ** (-(s - 1))
        * float(m // s) ** (s - 1)
    )


def theta_lower(m: int, n: int, s: int) -> BoundReport:
    """Lower bound for the worst-case sigma_min over size-S grid subsets."""
    value = theta_constant(m, s) * math.sqrt(m) * (m / n) ** (s - 1)
    log = [
        _hyp("S >= 2", s, 2),
        _hyp("M >= 2*S", m, 2 * s),
        _hyp("N >= pi*M*S", n, math.pi * m * s),
    ]
    return BoundReport(
        name="theta_lower",
        value=value,
        hypothesis_log=tuple(log),
        inputs={"M": m, "N": n, "S": s},
    )


def theta_star(m: int, n: int, s: int) -> float:
    """sigma_min of the Vandermonde matrix on S consecutive 1/N-grid nodes."""
    if s > m + 1:
        raise ValueError("need S <= M+1 grid nodes")
    support = SupportSet(np.arange(s) / n)
    return sigma_extremes(vandermonde(support, m))[0]


def theta_bruteforce(
    m: int, n: int, s: int, return_minimizer: bool = False
):
    """Exact min of sigma_min over all size-S subsets of the 1/N grid.

    Enumeration is lexicographic with a running minimum; the budget guards
    against accidental exponential blowups.
    """
    count = math.comb(n, s)
    if count > ENUMERATION_BUDGET:
        raise IntractableEnumerationError(
            f"C({n},{s}) = {count} exceeds budget {ENUMERATION_BUDGET}"
        )
    grid = np.arange(n) / n
    rows = np.arange(m + 1)
    best = math.inf
    best_subset: tuple[int, ...] | None = None
    for subset in itertools.combinations(range(n), s):
        phi = np.exp(-2j * np.pi * np.outer(rows, grid[list(subset)]))
        smin = float(np.linalg.svd(phi, compute_uv=False)[-1])
        if smin < best:
            best = smin
            best_subset = subset
    if return_minimizer:
        return best, best_subset
    return best


def minmax_bounds(m: int, n: int, s: int, delta: float) -> MinMaxBounds:
    """Two-sided bounds for the on-grid min-max recovery error."""
    upper_value = (
        2.0 * delta / theta_constant(m, 2 * s) / math.sqrt(m) * (n / m) ** (2 * s - 1)
    )
    upper_log = (
        _hyp("M >= 4*S", m, 4 * s),
        _hyp("N >= 2*pi*M*S", n, 2.0 * math.pi * m * s),
    )
    upper = BoundReport(
        name="minmax_upper",
        value=upper_value,
        hypothesis_log=upper_log,
        inputs={"M": m, "N": n, "S": s, "delta": delta},
    )

    lower_value = (
        delta
        / 4.0
        * math.comb(4 * s - 2, 2 * s - 1) ** 0.5
        / math.sqrt(m + 1)
        * (n / (2.0 * math.pi * m)) ** (2 * s - 1)
    )
    lower_log = (
        _hyp("M >= 2*S + 1", m, 2 * s + 1),
        _hyp(
            "N/M >= 2*pi*C(2S)*sqrt(M+1)",
            n / m,
            2.0 * math.pi * derivative_constant(2 * s) * math.sqrt(m + 1),
        ),
    )
    lower = BoundReport(
        name="minmax_lower",
        value=lower_value,
        hypothesis_log=lower_log,
        inputs={"M": m, "N": n, "S": s, "delta": delta},
    )
    return MinMaxBounds(lower_report=lower, upper_report=upper)


@dataclass(frozen=True)
class SandwichReport:
    """Outcome of the exhaustive sparsest-fit decoder experiment."""

    m: int
    n: int
    s: int
    delta: float
    theta: float
    error_bound: float          # 2*delta/Theta(M, N, 2S)
    lower_target: float         # delta/(2*Theta(M, N, 2S))
    trials: int
    max_error: float
    violations: int
    adversarial_errors: tuple[float, float]

    @property
    def adversarial_reached_lower(self) -> bool:
        return max(self.adversarial_errors) >= self.lower_target * (1.0 - 1e-9)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.adversarial_reached_lower


def _sparsest_fit(fourier: np.ndarray, y: np.ndarray, s: int, delta: float) -> np.ndarray:
    """Minimal-residual decoder over supports of size 0..S (first feasible size)."""
    n = fourier.shape[1]
    slack = delta + 1e-12 * max(1.0, delta)
    if float(np.linalg.norm(y)) <= slack:
        return np.zeros(n, dtype=complex)
    for k in range(1, s + 1):
        best_res = math.inf
        best_x: np.ndarray | None = None
        for subset in itertools.combinations(range(n), k):
            cols = fourier[:, list(subset)]
            coef, *_ = np.linalg.lstsq(cols, y, rcond=None)
            res = float(np.linalg.norm(cols @ coef - y))
            if res < best_res:
                best_res = res
                best_x = np.zeros(n, dtype=complex)
                best_x[list(subset)] = coef
        if best_res <= slack and best_x is not None:
            return best_x
    # y itself came from an S-sparse signal, so this is unreachable
    raise RuntimeError("no feasible sparse fit found")


def demanet_sandwich_check(
    m: int, n: int, s: int, delta: float, trials: int, seed: int
) -> SandwichReport:
    """Verify the min-max sandwich with the exhaustive sparsest-fit decoder.

    Random S-sparse on-grid signals with ||eta|| <= delta must decode with
    error at most 2*delta/Theta(M,N,2S); the adversarial pair built from the
    Theta-minimizing singular vector must force error >= delta/(2*Theta).
    """
    if n > 16 or s > 2:
        raise IntractableEnumerationError(
            "sandwich check limited to N <= 16 and S <= 2"
        )
    theta, minimizer = theta_bruteforce(m, n, 2 * s, return_minimizer=True)
    bound = 2.0 * delta / theta
    lower_target = delta / (2.0 * theta)
    grid = SupportSet(np.arange(n) / n)
    fourier = vandermonde(grid, m)

    rng = np.random.default_rng(seed)
    max_error = 0.0
    violations = 0
    for _ in range(trials):
        support = rng.choice(n, size=s, replace=False)
        x = np.zeros(n, dtype=complex)
        x[support] = rng.standard_normal(s) + 1j * rng.standard_normal(s)
        direction = rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1)
        eta = direction / np.linalg.norm(direction) * delta * rng.uniform()
        y = fourier @ x + eta
        decoded = _sparsest_fit(fourier, y, s, delta)
        err = float(np.linalg.norm(decoded - x))
        max_error = max(max_error, err)
        if err > bound * (1.0 + 1e-9):
            violations += 1

    # adversarial pair: split the worst-case singular direction into two
    # S-sparse halves whose Fourier images are delta-close
    phi_min = fourier[:, list(minimizer)]
    _, _, vh = np.linalg.svd(phi_min)
    v_small = vh[-1].conj()
    v_full = np.zeros(n, dtype=complex)
    v_full[list(minimizer)] = v_small * (delta / theta)
    v1 = np.zeros(n, dtype=complex)
    v2 = np.zeros(n, dtype=complex)
    v1[list(minimizer[:s])] = v_full[list(minimizer[:s])]
    v2[list(minimizer[s:])] = -v_full[list(minimizer[s:])]
    y_shared = fourier @ v1
    decoded = _sparsest_fit(fourier, y_shared, s, delta)
    adv = (
        float(np.linalg.norm(decoded - v1)),
        float(np.linalg.norm(decoded - v2)),
    )
    max_error = max(max_error, *adv)
    if adv[0] > bound * (1.0 + 1e-9) or adv[1] > bound * (1.0 + 1e-9):
        violations += 1

    return SandwichReport(
        m=m,
        n=n,
        s=s,
        delta=delta,
        theta=theta,
        error_bound=bound,
        lower_target=lower_target,
        trials=trials,
        max_error=max_error,
        violations=violations,
        adversarial_errors=adv,
    )


def music_noise_tolerance(
    lambda_list,
    alpha: float,
    m: int,
    nu: float,
    eps: float,
    interclump_dist: float | None = None,
) -> BoundReport:
    """Noise-to-signal threshold under which the MUSIC correlation moves by
    at most eps with probability 1 - (M+2)^(1-nu); pencil length M/2."""
    if m % 2 != 0:
        raise EvenMRequiredError("threshold is stated for even M")
    lams = [int(x) for x in lambda_list]
    s = sum(lams)
    aggregate = sum(
        (constant_C(lam, m // 2) * alpha ** (-(lam - 1))) ** 2 for lam in lams
    )
    value = (
        m
        / (32.0 * math.sqrt(nu * (m + 2) * math.log(m + 2)))
        / aggregate
        * eps
    )
    log = [
        _hyp("M >= 2*S^2", m, 2 * s * s),
        _hyp("max(lambda) - 1 < 1/alpha", max(lams) - 1, 1.0 / alpha, op="<"),
        _hyp("nu > 1", nu, 1.0 + 1e-15),
    ]
    if len(lams) > 1:
        threshold = max(
            20.0 * math.sqrt(s) * lam**2.5 / (math.sqrt(alpha) * m) for lam in lams
        )
        lhs = interclump_dist if interclump_dist is not None else float("nan")
        log.append(
            Hypothesis(
                condition="inter-clump dist >= 20*sqrt(S)*lambda^(5/2)/(sqrt(alpha)*M)",
                lhs=float(lhs),
                rhs=threshold,
                satisfied=bool(interclump_dist is not None and lhs >= threshold),
            )
        )
    return BoundReport(
        name="music_noise_tolerance",
        value=value,
        hypothesis_log=tuple(log),
        inputs={
            "M": m,
            "S": s,
            "A": len(lams),
            "lambda": lams,
            "alpha": alpha,
            "nu": nu,
            "eps": eps,
        },
    )


def hankel_noise_bound(m: int, pencil: int, sigma: float):
    """Mean and tail bounds for the spectral norm of a Gaussian noise Hankel.

    Returns (mean_bound, tail) where tail(t) is the probability bound
    (M+2) * exp(-t^2 / (2*sigma^2*max(L+1, M-L+1))).
    """
    if not 1 <= pencil <= m:
        raise ValueError(f"pencil parameter L={pencil} outside [1, {m}]")
    longest = max(pencil + 1, m - pencil + 1)
    mean_bound = sigma * math.sqrt(2.0 * longest * math.log(m + 2))

    def tail(t: float) -> float:
        if sigma == 0:
            return 0.0 if t > 0 else float(m + 2)
        return (m + 2) * math.exp(-(t * t) / (2.0 * sigma * sigma * longest))

    return mean_bound, tail
