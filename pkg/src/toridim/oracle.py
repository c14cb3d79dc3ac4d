"""Independent algebraic verification by a small exact Groebner engine.

Polynomials carry exact integer coefficients (content-stripped, positive
leading sign) under the graded reverse lexicographic order; Krull
dimensions of random-coefficient instances probe the generic dimension
predicted combinatorially.  Only standard and weighted gradings are in
scope: there the irrelevant ideal is the maximal one and no saturation is
needed.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from toridim.base import EMPTY, BudgetExceededError, _EmptyType

Monomial = tuple[int, ...]
Poly = dict[Monomial, int]  # primitive integer coefficients


@dataclass(frozen=True)
class GradedPolyRing:
    """A polynomial ring with positive integer variable weights."""

    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.weights or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def degree(self, monomial: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, monomial))


@dataclass(frozen=True)
class OracleLimits:
    """Enforced guards keeping the exact engine at desk scale."""

    max_vars: int = 5
    max_total_degree: int = 12
    max_generators: int = 6
    pair_cap: int = 20000


DEFAULT_LIMITS = OracleLimits()


def _degrevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def leading_monomial(p: Poly) -> Monomial:
    return max(p, key=_degrevlex_key)


def _strip(p: dict[Monomial, int]) -> Poly:
    p = {m: c for m, c in p.items() if c}
    if not p:
        return {}
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = leading_monomial(p)
    sign = 1 if p[lead] > 0 else -1
    g *= sign
    return {m: c // g for m, c in p.items()}


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(p: Poly, basis: Sequence[Poly], leads: Sequence[Monomial]) -> Poly:
    """Full normal form by integer pseudo-reduction (the rational normal
    form times a positive constant, so ideal membership is unchanged)."""
    work = dict(p)
    changed = True
    while changed and work:
        changed = False
        for t in sorted(work, key=_degrevlex_key, reverse=True):
            coef = work.get(t)
            if not coef:
                continue
            for g, lead in zip(basis, leads):
                if _divides(lead, t):
                    lc = g[lead]  # positive: basis members are stripped
                    d = gcd(lc, coef)
                    scale_p = lc // d
                    scale_g = coef // d
                    shift = tuple(a - b for a, b in zip(t, lead))
                    if scale_p != 1:
                        work = {m: scale_p * c for m, c in work.items()}
                        coef = work[t]
                    for m, c in g.items():
                        mm = tuple(a + b for a, b in zip(m, shift))
                        work[mm] = work.get(mm, 0) - scale_g * c
                    work = {m: c for m, c in work.items() if c}
                    changed = True
                    break
            if changed:
                break
    return _strip(work)


def _s_poly(f: Poly, g: Poly, lf: Monomial, lg: Monomial) -> Poly:
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    cf, cg = f[lf], g[lg]
    d = gcd(cf, cg)
    out: dict[Monomial, int] = {}
    for m, c in f.items():
        mm = tuple(a + b for a, b in zip(m, sf))
        out[mm] = out.get(mm, 0) + (cg // d) * c
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, sg))
        out[mm] = out.get(mm, 0) - (cf // d) * c
    return _strip(out)


def _check_guards(gens: Sequence[Poly], nvars: int, limits: OracleLimits) -> None:
    if nvars > limits.max_vars:
        raise ValueError(f"too many variables ({nvars} > {limits.max_vars})")
    if len(gens) > limits.max_generators:
        raise ValueError(
            f"too many generators ({len(gens)} > {limits.max_generators})"
        )
    for g in gens:
        for m in g:
            if sum(m) > limits.max_total_degree:
                raise ValueError(
                    f"total degree {sum(m)} exceeds {limits.max_total_degree}"
                )


def buchberger(
    generators: Iterable[dict],
    limits: OracleLimits = DEFAULT_LIMITS,
) -> list[dict[Monomial, Fraction]]:
    """Reduced Groebner basis under degrevlex, monic over the rationals.

    Classic pair processing with the coprimality and chain criteria and a
    deterministic normal selection strategy; raises BudgetExceededError
    with partial statistics when the pair budget runs out.
    """
    gens = [_strip({tuple(m): int(c) for m, c in g.items()}) for g in generators]
    gens = [g for g in gens if g]
    if not gens:
        return []
    nvars = len(next(iter(gens[0])))
    _check_guards(gens, nvars, limits)

    basis: list[Poly] = []
    leads: list[Monomial] = []
    for g in gens:
        red = _reduce(g, basis, leads)
        if red:
            basis.append(red)
            leads.append(leading_monomial(red))

    pairs = {
        (i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))
    }
    processed = 0
    while pairs:
        if processed >= limits.pair_cap:
            raise BudgetExceededError(
                "pair budget exhausted",
                {"pairs_processed": processed, "basis_size": len(basis), "queue": len(pairs)},
            )

        def lcm_of(pair):
            i, j = pair
            return tuple(max(a, b) for a, b in zip(leads[i], leads[j]))

        pair = min(pairs, key=lambda p: (_degrevlex_key(lcm_of(p)), p))
        pairs.discard(pair)
        processed += 1
        i, j = pair
        li, lj = leads[i], leads[j]
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        # coprime leading monomials reduce to zero automatically
        if all(min(a, b) == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion: a third element dividing the lcm whose pairs
        # with both ends are already settled
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(leads[k], lcm):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik not in pairs and pjk not in pairs:
                skip = True
                break
        if skip:
            continue
        s = _s_poly(basis[i], basis[j], li, lj)
        red = _reduce(s, basis, leads)
        if red:
            basis.append(red)
            leads.append(leading_monomial(red))
            pairs.update((k, len(basis) - 1) for k in range(len(basis) - 1))

    # minimalize: drop members whose lead is divisible by another lead
    keep = []
    for idx, lead in enumerate(leads):
        dominated = any(
            other != idx
            and _divides(leads[other], lead)
            and (leads[other] != lead or other < idx)
            for other in range(len(basis))
        )
        if not dominated:
            keep.append(idx)
    minimal = [basis[i] for i in keep]
    minimal_leads = [leads[i] for i in keep]

    # tail-reduce each member against the others
    reduced: list[Poly] = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        other_leads = minimal_leads[:idx] + minimal_leads[idx + 1 :]
        red = _reduce(g, others, other_leads)
        reduced.append(red)

    reduced.sort(key=lambda g: _degrevlex_key(leading_monomial(g)))
    out = []
    for g in reduced:
        lc = g[leading_monomial(g)]
        out.append({m: Fraction(c, lc) for m, c in g.items()})
    return out


def krull_dimension(groebner_basis: Sequence[dict], nvars: int) -> int:
    """Dimension of the affine variety: the largest set of variables
    supporting no leading monomial of the basis.  Brute force over all
    variable subsets."""
    if not groebner_basis:
        return nvars
    leads = [leading_monomial(g) for g in groebner_basis]
    if any(sum(m) == 0 for m in leads):
        return -1  # unit ideal
    best = -1
    for size in range(nvars, -1, -1):
        for combo in itertools.combinations(range(nvars), size):
            inside = set(combo)
            if not any(
                all(e == 0 or i in inside for i, e in enumerate(m)) for m in leads
            ):
                return size
    return best


@dataclass(frozen=True)
class OracleReport:
    proj_dim: int | _EmptyType
    distribution: tuple[tuple[object, int], ...]
    trials: int
    successes: int


def random_proj_dimension(
    ring: GradedPolyRing,
    degrees: Sequence[int],
    supports: Sequence[Iterable[Monomial]],
    trials: int,
    seed: int,
    limits: OracleLimits = DEFAULT_LIMITS,
    coefficient_bound: int = 10**4,
    min_successes: int = 5,
) -> OracleReport:
    """Projective dimension of random-coefficient instances on the given
    supports: per trial, sample nonzero integer coefficients, compute the
    affine cone dimension through a Groebner basis, and report the minimum
    over trials minus one (EMPTY when the cone is just the origin).

    Dimension is upper-semicontinuous in the coefficients, so the minimum
    over random trials attains the generic value with overwhelming
    probability at this coefficient range; the full distribution is
    reported so flaky trials stay visible.
    """
    if len(degrees) != len(supports):
        raise ValueError("degrees and supports differ in length")
    sups = [tuple(sorted(tuple(int(x) for x in m) for m in s)) for s in supports]
    for d, pts in zip(degrees, sups):
        if not pts:
            raise ValueError("supports must be nonempty")
        for m in pts:
            if len(m) != ring.nvars:
                raise ValueError(f"monomial {m} has wrong arity")
            if ring.degree(m) != d:
                raise ValueError(f"monomial {m} is not homogeneous of degree {d}")

    dims = []
    failures = 0
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        gens = []
        for pts in sups:
            poly = {}
            for m in pts:
                c = 0
                while c == 0:
                    c = rng.randint(-coefficient_bound, coefficient_bound)
                poly[m] = c
            gens.append(poly)
        try:
            gb = buchberger(gens, limits)
        except BudgetExceededError:
            failures += 1
            continue
        dims.append(krull_dimension(gb, ring.nvars))
    if len(dims) < min_successes:
        raise BudgetExceededError(
            f"only {len(dims)} of {trials} trials succeeded "
            f"(need {min_successes})",
            {"successes": len(dims), "failures": failures},
        )
    lowest = min(dims)
    proj: int | _EmptyType = EMPTY if lowest <= 0 else lowest - 1
    counted = Counter(EMPTY if d <= 0 else d - 1 for d in dims)

    def sort_key(item):
        value, _ = item
        return (1, 0) if isinstance(value, _EmptyType) else (0, value)

    distribution = tuple(sorted(counted.items(), key=sort_key))
    return OracleReport(proj, distribution, trials, len(dims))
