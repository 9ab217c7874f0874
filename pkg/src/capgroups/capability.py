"""Generator-order bound for capable p-groups, and witness verification.

A capable p-group ``G`` of class ``c`` minimally generated by elements whose
two largest orders are ``p^a <= p^b`` satisfies ``b <= a + floor((c-1)/(p-1))``.
The witnesses here are groups ``K`` whose central quotient ``K/Z(K)`` attains
equality; the quotient is never built, all of its questions are answered in
``K`` modulo the computed center.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

from . import core
from .constructions import EasterfieldSpec, easterfield
from .core import GroupError, SplitGroup, exact_log

_JSON_SAFE = 2**53


def exponent_gap(p: int, c: int) -> int:
    """``floor((c-1)/(p-1))``: how far ``b`` may exceed ``a`` at class ``c``."""
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    if c < 1:
        raise ValueError(f"class must be positive, got {c}")
    return (c - 1) // (p - 1)


@dataclass(frozen=True)
class PredictedTerm:
    """Predicted ``K_index``, generated by ``x_i^e`` for each ``(i, e)`` in ``powers``."""

    index: int
    powers: tuple[tuple[int, int], ...]

    def __str__(self):
        gens = ", ".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.powers)
        return f"K_{self.index} = <{gens}>"


def expected_lcs(p: int, r: int) -> list[PredictedTerm]:
    """Predicted ``K_2, ..., K_{2+(r-1)(p-1)}`` of ``K(p, r)``.

    Starting from ``<x_1, ..., x_{p-1}>``, each step multiplies the exponent of
    the next generator (cyclically, from ``x_1``) by ``p``.  Generators that are
    already trivial, i.e. ``x_i^{p^{r-1}}`` with ``i >= 2``, are dropped.
    """
    EasterfieldSpec(p, r)
    exps = [0] * (p - 1)
    terms = []
    for n in range(2, 3 + (r - 1) * (p - 1)):
        if n > 2:
            exps[(n - 3) % (p - 1)] += 1
        powers = tuple(
            (i + 1, p**e) for i, e in enumerate(exps) if i == 0 or (p**e) % p ** (r - 1)
        )
        terms.append(PredictedTerm(n, powers))
    return terms


def expected_lcs_dihedral(n: int) -> list[PredictedTerm]:
    """``G_j = <x0^{2^{j-1}}>`` for the dihedral group of order ``2n``."""
    terms = []
    j = 2
    while 2 ** (j - 1) < n:
        terms.append(PredictedTerm(j, ((0, 2 ** (j - 1)),)))
        j += 1
    return terms


def predicted_subgroup(G: SplitGroup, term: PredictedTerm) -> core.Subgroup:
    return core.subgroup_closure(G, [core.power(G, G.x(i), e) for i, e in term.powers])


def lcs_matches(G: SplitGroup, series: list[core.Subgroup], prediction: list[PredictedTerm]) -> bool:
    """True iff ``series`` is ``[G, *prediction, {e}]`` term by term."""
    if len(series) != len(prediction) + 2 or not series[-1].is_trivial():
        return False
    return all(series[t.index - 1] == predicted_subgroup(G, t) for t in prediction)


def lemma_commutator(G: SplitGroup, p: int, r: int) -> core.GroupElement:
    return core.comm(G, core.power(G, G.x(0), p ** (r - 1)), G.top())


def check_lemma(p: int, r: int, *, cap: int = core.DEFAULT_CAP) -> bool:
    """Whether ``x0^{p^{r-1}}`` fails to commute with ``y`` in ``K(p, r)``."""
    G = easterfield(p, r, cap=cap)
    return lemma_commutator(G, p, r) != G.identity()


@dataclass
class WitnessReport:
    p: int
    construction: str
    params: int
    group_order: int | None = None
    class_expected: int | None = None
    class_computed: int | None = None
    center_order: int | None = None
    quotient_order: int | None = None
    order_y_mod_center: int | None = None
    order_x0_mod_center: int | None = None
    quotient_min_generators: int | None = None
    a_exponent: int | None = None
    b_exponent: int | None = None
    bound_rhs: int | None = None
    equality_attained: bool | None = None
    lcs_matches_prediction: bool | None = None
    lemma_holds: bool | None = None
    x1_power_central: bool | None = None
    x0_center_trivial: bool | None = None
    class_matches: bool | None = None
    error: str | None = None

    def checks(self) -> dict[str, bool | None]:
        """Every pass/fail check; None marks checks that do not apply."""
        if self.error is not None:
            return {"error": False}
        return {
            "class_matches": self.class_matches,
            "lcs_matches_prediction": self.lcs_matches_prediction,
            "x1_power_central": self.x1_power_central,
            "x0_center_trivial": self.x0_center_trivial,
            "center_divides_order": self.group_order % self.center_order == 0,
            "quotient_two_generated": self.quotient_min_generators == 2,
            "equality_attained": self.equality_attained,
            "lemma_holds": self.lemma_holds,
        }

    @property
    def passed(self) -> bool:
        return all(v for v in self.checks().values() if v is not None)

    def to_dict(self) -> dict:
        """Flat JSON-ready dict.  Integers past 2**53 become decimal strings
        and ``big_ints_as_strings`` is set."""
        d = dataclasses.asdict(self)
        big = False
        for k, v in d.items():
            if isinstance(v, int) and not isinstance(v, bool) and abs(v) >= _JSON_SAFE:
                d[k] = str(v)
                big = True
        d["big_ints_as_strings"] = big
        return d

    @classmethod
    def from_dict(cls, d: dict) -> WitnessReport:
        d = dict(d)
        big = d.pop("big_ints_as_strings", False)
        names = {f.name for f in dataclasses.fields(cls)}
        kwargs = {k: v for k, v in d.items() if k in names}
        if big:
            for k, v in kwargs.items():
                if isinstance(v, str) and k not in ("construction", "error"):
                    kwargs[k] = int(v)
        return cls(**kwargs)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> WitnessReport:
        return cls.from_dict(json.loads(text))


def verify_witness(G: SplitGroup, p: int, expected_class: int) -> WitnessReport:
    """Run every check on ``G`` as a witness for equality in the bound.

    The capable group is ``G/Z(G)``, of class ``class_computed - 1``; ``y`` and
    ``x0`` are the distinguished generators whose orders modulo the center give
    ``a`` and ``b``.  Easterfield and dihedral groups (recognised by their tag)
    get the lower-central-series prediction and the construction-specific
    center checks.
    """
    kind = G.tag[0] if G.tag else "custom"
    if kind == "easterfield":
        r = G.tag[2]
        params = r
    elif kind == "dihedral":
        n = G.tag[1]
        params = exact_log(n, 2) - 1
    else:
        params = 0
    report = WitnessReport(p=p, construction=kind, params=params, group_order=G.order,
                           class_expected=expected_class)

    series = core.lower_central_series(G)
    Z = core.center(G)
    y, x0 = G.top(), G.x(0)
    oy = core.order_mod_subgroup(G, y, Z)
    ox = core.order_mod_subgroup(G, x0, Z)
    a, b = sorted((exact_log(oy, p), exact_log(ox, p)))
    c = len(series) - 2
    report.class_computed = c + 1
    report.class_matches = c + 1 == expected_class
    report.center_order = len(Z)
    report.quotient_order = G.order // len(Z)
    report.order_y_mod_center = oy
    report.order_x0_mod_center = ox
    report.quotient_min_generators = core.frattini_rank(G, modulo=Z)
    report.a_exponent = a
    report.b_exponent = b
    report.bound_rhs = a + (exponent_gap(p, c) if c >= 1 else 0)
    report.equality_attained = b == report.bound_rhs

    if kind == "easterfield":
        report.lcs_matches_prediction = lcs_matches(G, series, expected_lcs(p, r))
        report.lemma_holds = lemma_commutator(G, p, r) != G.identity()
        report.x1_power_central = core.power(G, G.x(1), p ** (r - 1)) in Z
        x0_codes = [G.code(core.power(G, x0, k)) for k in range(1, G.orders[0])]
        report.x0_center_trivial = not Z.contains_codes(x0_codes).any()
    elif kind == "dihedral":
        report.lcs_matches_prediction = lcs_matches(G, series, expected_lcs_dihedral(n))
    return report


def witness_easterfield(p: int, r: int, *, cap: int = core.DEFAULT_CAP) -> WitnessReport:
    spec = EasterfieldSpec(p, r)
    return verify_witness(easterfield(p, r, cap=cap), p, spec.expected_class)


def scan(p: int, r_max: int, *, cap: int = core.DEFAULT_CAP) -> list[WitnessReport]:
    """Reports for ``K(p, 1), ..., K(p, r_max)``; failures are kept in-report."""
    reports = []
    for r in range(1, r_max + 1):
        try:
            reports.append(witness_easterfield(p, r, cap=cap))
        except GroupError as exc:
            reports.append(WitnessReport(p=p, construction="easterfield", params=r, error=str(exc)))
    return reports
