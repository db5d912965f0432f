"""Target groups, hypothesis checks and classification bookkeeping for the
higher mu-invariants of link maps S^{p_1} + ... + S^{p_r} -> S^n x R^{m-n}.

Nothing here touches actual maps.  Link maps, configuration spaces, framed
links and the geometric constructions behind the invariants are outside the
artifact; what remains is the dimension arithmetic, the assembly of target
groups from a table of stable stems, and the reconstruction of covering-level
data from Hopf values.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import factorial
from pathlib import Path
from typing import Mapping, Sequence

from .groups import AbelianGroup, GroupElement
from .hilton import RangePredicates, range_predicates
from .hopf import MonotonePermutation, basis_matrix, graded_coefficient, permuted_levels, u
from .lie import WedgeSignature
from .transform import Box, WindowInconsistency, invert_Dprime

# names under which inequalities appear in reports
HYP_DOMAIN = "|p| <= r(m-2)"
DIMS = "p_j <= m-3"
HYP_HALF = "|p| <= (r-1)(m-2) + p_r/2"
HYP_DROP = "|p| <= r(m-2) - p_j"
HYP_STABLE = "p_r/2 <= sum_j (m-p_j-2)"
HYP_STABLE_S = "p_r/2 <= s(n-1) + sum_j (m-p_j-2)"


@dataclass(frozen=True)
class LinkProblem:
    p: tuple[int, ...]
    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        if len(self.p) < 2:
            raise ValueError("need r >= 2 components")
        if self.m < 3:
            raise ValueError("need m >= 3")
        if not 1 <= self.n <= self.m - 1:
            raise ValueError(f"need 1 <= n <= m-1, got n={self.n}, m={self.m}")
        if any(x < 1 for x in self.p):
            raise ValueError("component dimensions must be >= 1")

    @property
    def r(self) -> int:
        return len(self.p)

    @property
    def p_abs(self) -> int:
        return sum(self.p)

    def sub(self, indices: Sequence[int]) -> LinkProblem:
        return LinkProblem(tuple(self.p[i] for i in indices), self.m, self.n)

    def to_json(self) -> dict:
        return {"p": [str(x) for x in self.p], "m": str(self.m), "n": str(self.n)}


class StableStemTable:
    """Stable stems pi^S_d by degree: zero below 0, unknown above the table."""

    def __init__(self, stems: Mapping[int, AbelianGroup], source: str = "custom"):
        self.stems = {int(d): g for d, g in stems.items()}
        self.source = source
        if any(d < 0 for d in self.stems):
            raise ValueError("stem degrees must be >= 0")
        top = max(self.stems, default=-1)
        missing = [d for d in range(top + 1) if d not in self.stems]
        if missing:
            raise ValueError(f"stem table has gaps at degrees {missing}")
        self.top = top

    @classmethod
    def from_json(cls, obj: Mapping, source: str = "custom") -> StableStemTable:
        stems = obj.get("stems", obj)
        return cls({int(d): AbelianGroup(int(g.get("free", 0)), tuple(int(t) for t in g.get("torsion", [])))
                    for d, g in stems.items()}, source)

    @classmethod
    def from_file(cls, path: str | Path) -> StableStemTable:
        path = Path(path)
        return cls.from_json(json.loads(path.read_text()), source=str(path))

    @classmethod
    def default(cls) -> StableStemTable:
        text = resources.files("higher_mu").joinpath("data/stems.json").read_text()
        return cls.from_json(json.loads(text), source="default")

    def __getitem__(self, d: int) -> AbelianGroup:
        if d < 0:
            return AbelianGroup()
        if d > self.top:
            return AbelianGroup(unknown=True)
        return self.stems[d]

    def to_json(self) -> dict:
        return {"source": self.source,
                "stems": {str(d): g.to_json() for d, g in sorted(self.stems.items())}}


def stems_used(table: StableStemTable, degrees) -> list[dict]:
    """Table entries a report depends on (negative degrees are zero by definition)."""
    return [{"degree": str(d), "group": str(table[d]), "in_table": 0 <= d <= table.top}
            for d in sorted(set(degrees)) if d >= 0]


def stem_label(d: int) -> str:
    return f"pi^S_{d}"


def mu_stem(prob: LinkProblem, s: int) -> int:
    """Degree of the stable stem receiving mu^(s)."""
    return prob.p_abs - s * (prob.n - 1) - (prob.r - 1) * (prob.m - 2) - 1


def mu_target(prob: LinkProblem, s: int, table: StableStemTable) -> AbelianGroup:
    """u_{r,s} copies of pi^S at degree |p| - s(n-1) - (r-1)(m-2) - 1."""
    if s < 0:
        raise ValueError("s must be >= 0")
    return table[mu_stem(prob, s)].power(u(prob.r, s))


@dataclass(frozen=True)
class KappaDomain:
    sig: WedgeSignature
    k: int
    predicates: RangePredicates
    assumptions: dict

    def to_json(self) -> dict:
        return {"n": str(self.sig.n), "q": [str(x) for x in self.sig.q], "k": str(self.k),
                "range_predicates": self.predicates.to_json(), "assumptions": self.assumptions}


def kappa_domain(prob: LinkProblem) -> KappaDomain:
    """The wedge (n; m-1, ..., m-1) and degree |p| carrying the reduced kappa class."""
    sig = WedgeSignature(prob.n, (prob.m - 1,) * (prob.r - 1))
    return KappaDomain(sig, prob.p_abs, range_predicates(sig, prob.p_abs),
                       {HYP_DOMAIN: prob.p_abs <= prob.r * (prob.m - 2)})


@dataclass(frozen=True)
class StemCheck:
    s: int
    stem_mu: int
    stem_augmented: int
    multiplicity: int
    augmented_multiplicity: int

    @property
    def equal(self) -> bool:
        return (self.stem_mu == self.stem_augmented
                and self.multiplicity * factorial(self.s) == self.augmented_multiplicity)

    def to_json(self) -> dict:
        return {"s": str(self.s), "stem_mu": str(self.stem_mu), "stem_augmented": str(self.stem_augmented),
                "u_rs": str(self.multiplicity), "(r+s-2)!": str(self.augmented_multiplicity),
                "consistent": self.equal}


def augmentation_stem_check(prob: LinkProblem, s: int) -> StemCheck:
    """Compare the stem of mu^(s) with that of the (s+r)-component augmented link
    in R^m (s meridian spheres of dimension m-n-1 added)."""
    if s < 0:
        raise ValueError("s must be >= 0")
    dims = [prob.m - prob.n - 1] * s + list(prob.p)
    stem_b = sum(dims) - (s + prob.r - 1) * (prob.m - 2) - 1
    return StemCheck(s, mu_stem(prob, s), stem_b, u(prob.r, s), factorial(prob.r + s - 2))


# --------------------------------------------------------------------------
# linking coefficients

def sphere_group_label(k: int, d: int) -> str:
    return f"pi_{k}(S^{d})"


@dataclass(frozen=True)
class PipelineRow:
    s: int
    k_s: int
    multiplicity: int
    lambda_group: str
    stable: bool                   # Freudenthal range for pi_{p_r}(S^{k_s})
    mu_stem: int
    mu_group: AbelianGroup
    stable_at_s: bool | None

    def to_json(self) -> dict:
        return {"s": str(self.s), "k_s": str(self.k_s), "u_rs": str(self.multiplicity),
                "lambda_group": self.lambda_group, "lambda_stable": self.stable,
                "mu_stem": str(self.mu_stem), "mu_group": str(self.mu_group),
                "mu_group_json": self.mu_group.to_json(),
                HYP_STABLE_S: self.stable_at_s}


@dataclass(frozen=True)
class PipelineReport:
    prob: LinkProblem
    sig: WedgeSignature
    rows: tuple[PipelineRow, ...]
    assumptions: dict
    caveats: tuple[str, ...]
    table: StableStemTable

    def to_json(self) -> dict:
        return {"problem": self.prob.to_json(),
                "wedge": {"n": str(self.sig.n), "q": [str(x) for x in self.sig.q]},
                "assumptions": self.assumptions, "rows": [r.to_json() for r in self.rows],
                "caveats": list(self.caveats),
                "stems_used": stems_used(self.table, [r.mu_stem for r in self.rows])}


def k_s(prob: LinkProblem, s: int) -> int:
    return s * (prob.n - 1) + (prob.r - 1) * (prob.m - 2) - prob.p_abs + prob.p[-1] + 1


def linking_pipeline(prob: LinkProblem, table: StableStemTable, max_s: int | None = None) -> PipelineReport:
    """Wedge of the linking coefficient, the spheres S^{k_s} its Hilton
    components live on, and the matching mu-target groups."""
    if any(pj > prob.m - 3 for pj in prob.p):
        raise ValueError(f"hypothesis violated: {DIMS} for all j (p={prob.p}, m={prob.m})")
    r, m, n = prob.r, prob.m, prob.n
    sig = WedgeSignature(n, tuple(m - pj - 1 for pj in prob.p[:-1]))
    slack = sum(m - pj - 2 for pj in prob.p[:-1])
    p_r = prob.p[-1]
    caveats = []
    if max_s is None:
        if n >= 2:
            max_s = 0
            while k_s(prob, max_s) <= p_r:
                max_s += 1
            max_s = max(0, max_s - 1)
        else:
            max_s = 3
            caveats.append("n = 1: k_s does not depend on s; list truncated at s = 3")
    rows = []
    for s in range(max_s + 1):
        ks = k_s(prob, s)
        rows.append(PipelineRow(
            s, ks, u(r, s), sphere_group_label(p_r, ks), p_r <= 2 * ks - 2,
            p_r - ks, mu_target(prob, s, table),
            (Fraction(p_r, 2) <= s * (n - 1) + slack) if n >= 2 else None))
    assumptions = {DIMS: True, HYP_STABLE: Fraction(p_r, 2) <= slack}
    return PipelineReport(prob, sig, tuple(rows), assumptions, tuple(caveats), table)


# --------------------------------------------------------------------------
# classification containers

@dataclass(frozen=True)
class Summand:
    label: str
    multiplicity: int
    group: AbelianGroup
    stem: int | None = None

    @property
    def total(self) -> AbelianGroup:
        return self.group.power(self.multiplicity)

    def to_json(self) -> dict:
        return {"label": self.label, "multiplicity": str(self.multiplicity),
                "group": str(self.group), "stem": None if self.stem is None else str(self.stem)}


@dataclass(frozen=True)
class ClassificationReport:
    prob: LinkProblem
    assumptions: dict
    summands: tuple[Summand, ...]
    group: AbelianGroup
    caveats: tuple[str, ...]
    table: StableStemTable
    window: tuple[int, int] | None = None
    mu_group: AbelianGroup | None = None

    @property
    def caveat(self) -> bool:
        return bool(self.caveats)

    def to_json(self) -> dict:
        return {"problem": self.prob.to_json(),
                "window": None if self.window is None else [str(x) for x in self.window],
                "assumptions": self.assumptions,
                "summands": [s.to_json() for s in self.summands],
                "group": str(self.group), "group_json": self.group.to_json(),
                "mu_group": str(self.mu_group if self.mu_group is not None else self.group),
                "caveat": self.caveat, "caveats": list(self.caveats),
                "stems_used": stems_used(self.table, [s.stem for s in self.summands if s.stem is not None])}

    def table_text(self) -> str:
        lines = [f"p={','.join(map(str, self.prob.p))} m={self.prob.m} n={self.prob.n}"
                 + ("" if self.window is None else f" window=[{self.window[0]},{self.window[1]}]")]
        for name, ok in self.assumptions.items():
            lines.append(f"  [{'ok' if ok else '--'}] {name}")
        for s in self.summands:
            lines.append(f"  {s.label:<28} x{s.multiplicity:<4} {s.group}")
        lines.append(f"  group: {self.group}")
        if self.mu_group is not None:
            lines.append(f"  mu part: {self.mu_group}")
        for c in self.caveats:
            lines.append(f"  caveat: {c}")
        return "\n".join(lines)


def _brunnian_assumptions(prob: LinkProblem) -> dict:
    r, m, pa = prob.r, prob.m, prob.p_abs
    return {
        DIMS: all(pj <= m - 3 for pj in prob.p),
        HYP_HALF: 2 * pa <= 2 * (r - 1) * (m - 2) + prob.p[-1],
        HYP_DROP: all(pa <= r * (m - 2) - pj for pj in prob.p[:-1]),
    }


def _mu_summands(prob: LinkProblem, table: StableStemTable, max_s: int | None,
                 prefix: str = "") -> tuple[list[Summand], list[str]]:
    caveats = []
    if max_s is None:
        if prob.n >= 2:
            max_s = 0
            while mu_stem(prob, max_s + 1) >= 0:
                max_s += 1
        else:
            max_s = 3
    summands = []
    for s in range(max_s + 1):
        d = mu_stem(prob, s)
        summands.append(Summand(f"{prefix}mu^({s}) {stem_label(d)}", u(prob.r, s), table[d], d))
    if prob.n >= 2:
        if mu_stem(prob, max_s + 1) >= 0:
            caveats.append(f"{prefix}truncated at s = {max_s}; stems stay non-negative beyond it")
    else:
        caveats.append(f"{prefix}n = 1: stems do not decrease with s; product truncated at s = {max_s}")
    return summands, caveats


def classify_brunnian(prob: LinkProblem, table: StableStemTable, max_s: int | None = None) -> ClassificationReport:
    """Direct sum over s of the mu^(s) targets for homotopy Brunnian link maps.

    For n >= 2 every s beyond the first negative stem contributes 0 (the
    stems drop by n-1 >= 1 per step), so the default range is exact.
    """
    assumptions = _brunnian_assumptions(prob)
    summands, caveats = _mu_summands(prob, table, max_s)
    for name, ok in assumptions.items():
        if not ok:
            caveats.append(f"assumption fails: {name}")
    if prob.n == 1:
        caveats.append("isomorphism onto the assembled group is only claimed for n >= 2")
    group = AbelianGroup().direct_sum(*(s.total for s in summands))
    if group.unknown:
        caveats.append(f"stems beyond degree {table.top} are not in the table")
    return ClassificationReport(prob, assumptions, tuple(summands), group, tuple(caveats), table)


def component_group(p: int, n: int) -> AbelianGroup:
    """pi_p(S^n): forced for the circle, symbolic (unknown) otherwise."""
    if n == 1:
        return AbelianGroup(1) if p == 1 else AbelianGroup()
    return AbelianGroup(unknown=True)


def classify_total(prob: LinkProblem, table: StableStemTable, max_s: int | None = None,
                   window: tuple[int, int] | None = None) -> ClassificationReport:
    """Container for the total invariant: component classes plus the mu-targets
    of every sub-link of size 2..r.

    With n = 1 the sub-link summands are indexed by covering levels; the
    window truncates Z^{size-1} to window^{size-1}.
    """
    if any(pj > prob.m - 3 for pj in prob.p):
        raise ValueError(f"hypothesis violated: {DIMS} for all j (p={prob.p}, m={prob.m})")
    if prob.n == 1 and window is None:
        raise ValueError("a window of covering levels is required when n = 1")
    summands: list[Summand] = []
    caveats: list[str] = []
    for j, pj in enumerate(prob.p, 1):
        summands.append(Summand(f"[f_{j}] in {sphere_group_label(pj, prob.n)}", 1, component_group(pj, prob.n)))
    mu_parts: list[Summand] = []
    for size in range(2, prob.r + 1):
        for idx in itertools.combinations(range(prob.r), size):
            sub = prob.sub(idx)
            name = "{" + ",".join(str(i + 1) for i in idx) + "} "
            if prob.n == 1:
                lo, hi = window
                d = mu_stem(sub, 0)
                levels = (hi - lo + 1) ** (size - 1)
                mu_parts.append(Summand(f"{name}h_(g) {stem_label(d)}", levels * factorial(size - 2), table[d], d))
            else:
                parts, cav = _mu_summands(sub, table, max_s, prefix=name)
                mu_parts.extend(parts)
                caveats.extend(cav)
    summands.extend(mu_parts)
    if prob.n == 1:
        caveats.append(f"n = 1: level-indexed sums truncated to the window [{window[0]}, {window[1]}]")
    if any(component_group(pj, prob.n).unknown for pj in prob.p):
        caveats.append("component classes pi_{p_j}(S^n) are left symbolic")
    caveats.append("assembled container for the total invariant; exactness is not asserted")
    mu_group = AbelianGroup().direct_sum(*(s.total for s in mu_parts))
    group = AbelianGroup().direct_sum(*(s.total for s in summands))
    return ClassificationReport(prob, {DIMS: True}, tuple(summands), group, tuple(caveats), table,
                                window, mu_group)


# --------------------------------------------------------------------------
# covering-level data (n = 1)

GradedKey = tuple[tuple[int, ...], tuple[int, ...]]


def canonicalize_translation(data: Mapping[GradedKey, GroupElement]) -> dict[GradedKey, GroupElement]:
    """Shift all level vectors so that the lexicographically least support point is the origin."""
    support = {k: v for k, v in data.items() if not v.is_zero()}
    if not support:
        return {}
    origin = min(g for g, _ in support)
    return dict(sorted(((tuple(a - b for a, b in zip(g, origin)), gbar), v)
                       for (g, gbar), v in support.items()))


def _chain(gamma_bar: Sequence[int], r: int) -> list[int]:
    """Level coordinates (1-based) in the order they enter the coefficient product."""
    return list(gamma_bar) + [r - 1]


def level_difference_box(window: Box, gamma_bar: Sequence[int], r: int) -> Box:
    """Range of x_j = gbar_j - gbar_{j-1} when g ranges over the window."""
    order = _chain(gamma_bar, r)
    box = [window[order[0] - 1]]
    for prev, cur in zip(order, order[1:]):
        (plo, phi), (clo, chi) = window[prev - 1], window[cur - 1]
        box.append((clo - phi, chi - plo))
    return tuple(box)


def required_hopf_indices(window: Box, r: int) -> list[MonotonePermutation]:
    """Monotone permutations whose Hopf values reconstruct data on the window."""
    out = []
    for gbar in itertools.permutations(range(1, r - 1)):
        box = level_difference_box(window, gbar, r)
        for parts in itertools.product(*(range(hi - lo + 1) for lo, hi in box)):
            out.append(MonotonePermutation.from_decomposition(parts, gbar))
    return out


def hopf_values(data: Mapping[GradedKey, GroupElement], gammas: Sequence[MonotonePermutation],
                group: AbelianGroup) -> dict[MonotonePermutation, GroupElement]:
    """H_{s,gamma} at the requested permutations (cf. hopf.evaluate_H_graded)."""
    by_gbar: dict = {}
    for (g, gbar), x in data.items():
        by_gbar.setdefault(tuple(gbar), []).append((tuple(g), x))
    out = {}
    for gamma in gammas:
        parts, gbar = gamma.decomposition
        total = GroupElement.zero(group)
        for g, x in by_gbar.get(gbar, ()):
            c = graded_coefficient(permuted_levels(g, gbar), parts)
            if c:
                total = total + c * x
        out[gamma] = total
    return out


@dataclass
class KappaReconstruction:
    sig: WedgeSignature
    window: Box
    h_family: dict[GradedKey, GroupElement]
    products: tuple = ()
    hilton: dict[tuple[int, ...], list[GroupElement]] = field(default_factory=dict)

    def canonical(self) -> KappaReconstruction:
        """Translate so that the least nonzero level vector becomes the origin."""
        support = [g for (g, _), v in self.h_family.items() if not v.is_zero()]
        if not support:
            return KappaReconstruction(self.sig, self.window, {}, self.products, {})
        origin = min(support)

        def shift(g):
            return tuple(a - b for a, b in zip(g, origin))
        window = tuple((lo - o, hi - o) for (lo, hi), o in zip(self.window, origin))
        return KappaReconstruction(self.sig, window, canonicalize_translation(self.h_family), self.products,
                                   {shift(g): v for g, v in self.hilton.items()
                                    if any(not x.is_zero() for x in v)})

    def to_json(self) -> dict:
        return {"n": str(self.sig.n), "q": [str(x) for x in self.sig.q],
                "window": [[str(lo), str(hi)] for lo, hi in self.window],
                "h_family": [{"g": [str(x) for x in g], "gamma_bar": [str(x) for x in gb], "value": v.to_json()}
                             for (g, gb), v in sorted(self.h_family.items())],
                "hilton_products": [str(p.tree) for p in self.products],
                "hilton_components": [{"g": [str(x) for x in g], "values": [v.to_json() for v in vals]}
                                      for g, vals in sorted(self.hilton.items())],
                "convention_dependent": True}


def reconstruct_kappa(values: Mapping[MonotonePermutation, GroupElement], window: Box,
                      sig: WedgeSignature, group: AbelianGroup | None = None) -> KappaReconstruction:
    """Recover the covering-level Hopf invariants h_{(g), gamma_bar} from the
    Hopf values H_{s, gamma}, then the Hilton components per level vector
    through the inverse of D_0."""
    r = sig.r
    window = tuple((int(lo), int(hi)) for lo, hi in window)
    if len(window) != r - 1:
        raise ValueError(f"window must have r-1 = {r - 1} level axes")
    if group is None:
        if not values:
            raise ValueError("no Hopf values given")
        group = next(iter(values.values())).group
    h: dict[GradedKey, GroupElement] = {}
    for gbar in itertools.permutations(range(1, r - 1)):
        box = level_difference_box(window, gbar, r)
        block = {}
        for gamma, v in values.items():
            parts, gb = gamma.decomposition
            if gb == gbar:
                block[parts] = v
        seq = invert_Dprime(block, box, group)
        order = _chain(gbar, r)
        for x, v in seq.entries.items():
            g = [0] * (r - 1)
            acc = 0
            for coord, step in zip(order, x):
                acc += step
                g[coord - 1] = acc
            g = tuple(g)
            if not all(lo <= gi <= hi for gi, (lo, hi) in zip(g, window)):
                raise WindowInconsistency(f"reconstructed level vector {g} lies outside the window {window}")
            h[(g, gbar)] = v

    bm = basis_matrix(sig, 0)
    inv_t = bm.matrix.T.inverse()
    zero = GroupElement.zero(group)
    hilton = {}
    for g in sorted({g for g, _ in h}):
        hv = [h.get((g, delta), zero) for delta in bm.columns]
        hilton[g] = inv_t.apply(hv)
    return KappaReconstruction(sig, window, dict(sorted(h.items())), bm.products, hilton)


def h_family_from_hilton(components: Mapping[tuple[int, ...], Sequence[GroupElement]],
                         sig: WedgeSignature, group: AbelianGroup) -> dict[GradedKey, GroupElement]:
    """Covering-level Hopf invariants of a class given by its Hilton
    components (one value per basic product on i_{1,g_1}, ..., i_{r-1,g_{r-1}})."""
    bm = basis_matrix(sig, 0)
    out = {}
    for g, comps in components.items():
        for delta, v in zip(bm.columns, bm.matrix.T.apply(list(comps))):
            if not v.is_zero():
                out[(tuple(g), delta)] = v
    return out
