"""Multiplicity bounds and maximal decompositions ``I = J + (F)`` as executable checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .groebner import (
    Ideal,
    ideal_colon,
    ideal_contains,
    ideal_equal,
    ideal_intersect,
    ideal_member,
    normal_form,
)
from .invariants import NotHomogeneous, hilbert_series, profile
from .linkage import find_ci_inside, is_complete_intersection, is_unmixed, linear_forms_of
from .reduction import (
    DEFAULT_REPLICAS,
    DEFAULT_SEED,
    depth_of,
    is_cohen_macaulay,
    s_invariant,
    socle_type,
)
from .ring import Polynomial


class PreconditionError(ValueError):
    """An input does not satisfy the hypotheses of the check."""


class NotMaximal(PreconditionError):
    pass


class NotCyclic(PreconditionError):
    pass


def _gens(I: Ideal) -> list[str]:
    return [str(f) for f in I.generators]


@dataclass
class DecompositionReport:
    J: Ideal
    F: Polynomial
    e_J: int
    e_I: int
    s: int
    delta: int
    g: int
    dim: int
    j_socle_type: str
    depth_class: str | None = None
    verified: bool = True
    checks: list = field(default_factory=list)
    findings: list = field(default_factory=list)

    @property
    def bound_rhs(self) -> int:
        return self.e_J - max(1, self.s - self.delta + 1)

    @property
    def is_maximal(self) -> bool:
        return self.e_I == self.bound_rhs

    @property
    def c(self) -> int:
        return self.s - self.dim

    def as_dict(self) -> dict:
        return {"J": _gens(self.J), "F": str(self.F), "e_J": self.e_J, "e_I": self.e_I,
                "s": self.s, "c": self.c, "delta": self.delta, "g": self.g,
                "boundRHS": self.bound_rhs, "isMaximal": self.is_maximal,
                "jSocleType": self.j_socle_type, "depthClass": self.depth_class,
                "checks": [{"name": n, "ok": ok} for n, ok in self.checks],
                "verified": self.verified, "findings": list(self.findings)}


def _require_homogeneous(*objs):
    for o in objs:
        if not o.is_homogeneous():
            raise PreconditionError(f"{o} is not homogeneous")


def _same_height(J: Ideal, F: Polynomial) -> int:
    I = J + F
    hs = hilbert_series(I)
    if hs.multiplicity() == 0:
        raise PreconditionError("J + (F) is the unit ideal")
    g = profile(J).height
    if profile(I).height != g:
        raise PreconditionError(f"ht(J + (F)) = {profile(I).height} differs from ht J = {g}")
    return g


def check_bound(J: Ideal, F: Polynomial, seed: int = DEFAULT_SEED,
                replicas: int = DEFAULT_REPLICAS) -> DecompositionReport:
    """Compare e(R/(J+(F))) with e(R/J) - max{1, s(R/J) - deg F + 1}."""
    if F.ring != J.ring:
        raise PreconditionError("J and F live in different rings")
    _require_homogeneous(J, F)
    if not F:
        raise PreconditionError("F is zero")
    if ideal_member(F, J):
        raise PreconditionError("F lies in J")
    g = _same_height(J, F)
    if not is_cohen_macaulay(J, seed, replicas):
        raise PreconditionError(f"R/J is not Cohen-Macaulay for J = {J}")
    pJ = profile(J)
    e_I = profile(J + F).multiplicity
    s = s_invariant(J, seed, replicas).value
    rep = DecompositionReport(J, F, pJ.multiplicity, e_I, s, F.degree(), g, pJ.dim,
                              socle_type(J, seed, replicas))
    if rep.e_I > rep.bound_rhs:
        rep.findings.append(f"bound violated: e(R/I) = {rep.e_I} > {rep.bound_rhs}")
        rep.verified = False
    return rep


def _depth_class(depth: int, dim: int) -> str:
    if depth == dim:
        return "cm"
    if depth == dim - 1:
        return "almost_cm"
    return "other"


def classify_decomposition(J: Ideal, F: Polynomial, seed: int = DEFAULT_SEED,
                           replicas: int = DEFAULT_REPLICAS) -> DecompositionReport:
    """Depth of R/(J+(F)) for a maximal decomposition, checked against ``deg F`` vs ``s``."""
    rep = check_bound(J, F, seed, replicas)
    if not rep.is_maximal:
        raise NotMaximal(f"e(R/I) = {rep.e_I} is below the bound {rep.bound_rhs}")
    I = J + F
    dim = profile(I).dim
    depth = depth_of(I, seed, replicas)
    cm = is_cohen_macaulay(I, seed, replicas)
    rep.depth_class = _depth_class(depth, dim)
    checks = rep.checks
    checks.append(("length test agrees with depth test", cm == (depth == dim)))
    if rep.delta <= rep.s:
        checks.append(("R/I Cohen-Macaulay since deg F <= s", cm))
    else:
        if rep.j_socle_type in ("level", "gorenstein"):
            checks.append(("R/I not Cohen-Macaulay since J level and deg F > s", not cm))
        if rep.j_socle_type == "gorenstein":
            checks.append(("depth R/I = dim - 1 since J Gorenstein and deg F > s",
                           depth == dim - 1))
    for name, ok in checks:
        if not ok:
            rep.findings.append(f"failed: {name}")
    rep.verified = not rep.findings
    return rep


def aci_bound(ci_degrees, f_degree: int) -> int:
    """Bound on e(R/I) for I = (f_1..f_g) + (F) with a complete intersection of the given degrees."""
    ds = list(ci_degrees)
    if not ds:
        raise ValueError("need at least one complete intersection degree")
    if any(d < 1 for d in ds) or f_degree < 1:
        raise ValueError("degrees must be positive")
    return prod(ds) - max(1, sum(d - 1 for d in ds) - (f_degree - 1))


def single_degree_bound(d: int, g: int) -> int:
    """Closed form of ``aci_bound`` when all g + 1 degrees equal d (d, g >= 2)."""
    return d ** g - (d - 1) * (g - 1)


# -- colon structure ---------------------------------------------------------------


@dataclass
class ColonStructure:
    colon: Ideal
    linear_forms: list
    q: Polynomial | None
    matches: bool
    reason: str = ""

    def as_dict(self) -> dict:
        return {"colon": _gens(self.colon), "linearForms": [str(f) for f in self.linear_forms],
                "q": None if self.q is None else str(self.q), "matches": self.matches,
                "reason": self.reason}


def almost_linear_structure(C: Ideal, g: int):
    """``(forms, q)`` with C = (forms) + (q), ``len(forms) == g - 1`` and q outside (forms).

    Returns ``(None, reason)`` when C has no such shape.
    """
    if C.is_unit():
        return None, "colon is the unit ideal"
    if not C.is_homogeneous():
        return None, "colon is not homogeneous"
    lin = linear_forms_of(C)
    k = len(lin)
    if k < g - 1:
        return None, f"only {k} independent linear forms, need {g - 1}"
    if k > g:
        return None, f"{k} independent linear forms exceed height {g}"
    forms = lin[:g - 1]
    L = Ideal(C.ring, forms)
    if k == g:
        q = lin[g - 1]
    else:
        rest = [normal_form(f, L) for f in C.gb() if f.degree() > 1] if forms else \
            [f for f in C.gb() if f.degree() > 1]
        rest = [f.monic() for f in rest if f]
        if not rest:
            return None, "no generator outside the linear forms"
        q = min(rest, key=lambda f: (f.degree(), f.lead_monomial))
    if not ideal_equal(C, L + q):
        return None, "colon needs more than one generator beyond the linear forms"
    return (forms, q), ""


def colon_structure(J: Ideal, F: Polynomial) -> ColonStructure:
    """``J : F`` and whether it is generated by g - 1 linear forms and one more element."""
    _require_homogeneous(J, F)
    g = _same_height(J, F)
    C = ideal_colon(J, F)
    shape, reason = almost_linear_structure(C, g)
    if shape is None:
        return ColonStructure(C, [], None, False, reason)
    return ColonStructure(C, shape[0], shape[1], True)


# -- constructions ---------------------------------------------------------------------


@dataclass
class Construction:
    report: DecompositionReport | None
    trivial: bool
    condition_lhs: int = 0
    condition_rhs: int = 0

    def as_dict(self) -> dict:
        if self.trivial:
            return {"trivial": True, "reason": "I is contained in C'"}
        d = self.report.as_dict()
        d.update({"trivial": False, "conditionLHS": self.condition_lhs,
                  "conditionRHS": self.condition_rhs})
        return d


def _dedupe(gens):
    out, seen = [], set()
    for f in gens:
        m = f.monic()
        if m not in seen:
            seen.add(m)
            out.append(f)
    return out


def _is_minimal_generator(F: Polynomial, others) -> bool:
    # for homogeneous F, F is in m*I + (others) iff F is in (others)
    others = [f for f in others if f]
    return not others or not ideal_member(F, Ideal(F.ring, others))


def char_construct(I: Ideal, Cprime: Ideal, seed: int = DEFAULT_SEED,
                   replicas: int = DEFAULT_REPLICAS) -> Construction:
    """Maximal decomposition ``I = (C' ∩ I) + (F)`` from an almost linear complete intersection C'."""
    _require_homogeneous(I, Cprime)
    if I.ring != Cprime.ring:
        raise PreconditionError("I and C' live in different rings")
    if not is_cohen_macaulay(I, seed, replicas):
        raise PreconditionError(f"R/I is not Cohen-Macaulay for I = {I}")
    g = profile(I).height
    if Cprime.is_unit() or profile(Cprime).height != g:
        raise PreconditionError(f"C' does not have height {g}")
    shape, reason = almost_linear_structure(Cprime, g)
    if shape is None:
        raise PreconditionError(f"C' is not an almost linear complete intersection: {reason}")
    if ideal_contains(Cprime, I):
        return Construction(None, True)
    gens = _dedupe(I.generators)
    order = sorted(range(len(gens)), key=lambda i: (gens[i].degree(), i))
    F = None
    for i in order:
        cand = gens[i]
        if ideal_member(cand, Cprime):
            continue
        if not ideal_contains(Cprime + cand, I):
            continue
        if _is_minimal_generator(cand, gens[:i] + gens[i + 1:]):
            F = cand
            break
    if F is None:
        raise NotCyclic("I/(I ∩ C') is not cyclic by a single minimal generator")
    lhs = profile(Cprime).multiplicity
    rhs = max(1, s_invariant(I, seed, replicas).value - F.degree() + 1)
    if lhs > rhs:
        raise PreconditionError(f"e(R/C') = {lhs} exceeds max{{1, s - deg F + 1}} = {rhs}")
    J = ideal_intersect(Cprime, I)
    rep = check_bound(J, F, seed, replicas)
    if not rep.is_maximal:
        rep.findings.append("construction did not produce a maximal decomposition")
        rep.verified = False
    return Construction(rep, False, lhs, rhs)


def mprimary_decomposition(I: Ideal, F: Polynomial, seed: int = DEFAULT_SEED,
                           replicas: int = DEFAULT_REPLICAS) -> DecompositionReport:
    """``J = (other generators) + F*m`` for a minimal generator F of an m-primary I."""
    _require_homogeneous(I, F)
    if profile(I).dim != 0:
        raise PreconditionError("I is not primary to the maximal ideal")
    monic = F.monic()
    others = [f for f in I.generators if f.monic() != monic]
    if len(others) == len(I.generators):
        raise PreconditionError(f"{F} is not one of the listed generators")
    if not _is_minimal_generator(F, others):
        raise PreconditionError(f"{F} is not a minimal generator")
    J = Ideal(I.ring, others + [F * x for x in I.ring.gens()])
    rep = check_bound(J, F, seed, replicas)
    if rep.e_J != rep.e_I + 1:
        rep.findings.append(f"e(R/J) = {rep.e_J} differs from e(R/I) + 1 = {rep.e_I + 1}")
    if not rep.is_maximal:
        rep.findings.append("decomposition is not maximal")
    rep.verified = not rep.findings
    return rep


# -- quasi-Gorenstein links -----------------------------------------------------------


@dataclass
class QGReport:
    G: Ideal
    h: Polynomial
    Q: Ideal
    a_invariant: int
    dim_q: int
    e_q: int
    gorenstein_verified: bool
    findings: list = field(default_factory=list)

    @property
    def bound_rhs(self) -> int:
        return max(1, self.a_invariant + self.dim_q + 1)

    @property
    def equality(self) -> bool:
        return self.e_q == self.bound_rhs

    def as_dict(self) -> dict:
        return {"G": _gens(self.G), "h": str(self.h), "Q": _gens(self.Q),
                "aInvariant": self.a_invariant, "dimQ": self.dim_q, "e_Q": self.e_q,
                "boundRHS": self.bound_rhs, "equality": self.equality,
                "gorensteinVerified": self.gorenstein_verified, "findings": list(self.findings)}


def ci_from_degrees(ring, degrees) -> Ideal:
    """The monomial complete intersection ``(x_1^d_1, ..., x_g^d_g)``."""
    if len(degrees) > ring.n:
        raise ValueError("more degrees than variables")
    return Ideal(ring, [ring.var(i) ** d for i, d in enumerate(degrees)])


def qg_construct(G: Ideal, h: Polynomial, seed: int = DEFAULT_SEED,
                 replicas: int = DEFAULT_REPLICAS) -> QGReport:
    """``Q = G : (G + (h))`` and the lower bound on e(R/Q) from its a-invariant."""
    _require_homogeneous(G, h)
    if not is_complete_intersection(G):
        raise PreconditionError(f"G = {G} is not a complete intersection")
    if ideal_member(h, G):
        raise PreconditionError("h lies in G")
    _same_height(G, h)
    Q = ideal_colon(G, h)
    a = sum(f.degree() for f in G.generators) - G.ring.n - h.degree()
    pQ = profile(Q)
    gor = is_cohen_macaulay(Q, seed, replicas) and socle_type(Q, seed, replicas) == "gorenstein"
    rep = QGReport(G, h, Q, a, pQ.dim, pQ.multiplicity, gor)
    if rep.e_q < rep.bound_rhs:
        rep.findings.append(f"bound violated: e(R/Q) = {rep.e_q} < {rep.bound_rhs}")
    if rep.equality and not gor:
        rep.findings.append("bound attained but R/Q is not Gorenstein")
    return rep


# -- unmixedness dichotomy --------------------------------------------------------------


@dataclass
class DichotomyReport:
    decomposition: DecompositionReport
    unmixed: bool
    cm: bool
    depth: int
    dim: int
    checks: list
    findings: list

    def as_dict(self) -> dict:
        d = self.decomposition
        return {"e_I": d.e_I, "e_J": d.e_J, "s": d.s, "delta": d.delta,
                "isMaximal": d.is_maximal, "unmixed": self.unmixed, "cm": self.cm,
                "depth": self.depth, "dim": self.dim,
                "checks": [{"name": n, "ok": ok} for n, ok in self.checks],
                "findings": list(self.findings)}


def dichotomy_check(J: Ideal, F: Polynomial, seed: int = DEFAULT_SEED,
                    replicas: int = DEFAULT_REPLICAS) -> DichotomyReport:
    """Unmixed, Cohen-Macaulay and almost Cohen-Macaulay cases of J + (F) for Gorenstein J."""
    rep = check_bound(J, F, seed, replicas)
    if rep.j_socle_type != "gorenstein":
        raise PreconditionError(f"R/J is {rep.j_socle_type}, not Gorenstein")
    if not (rep.e_I == 1 or rep.is_maximal):
        raise PreconditionError("need e(R/I) = 1 or a maximal decomposition")
    I = J + F
    G = J if is_complete_intersection(J) else find_ci_inside(I, seed)
    unmixed = is_unmixed(I, G)
    cm = is_cohen_macaulay(I, seed, replicas)
    depth = depth_of(I, seed, replicas)
    dim = profile(I).dim
    checks = [("unmixed iff Cohen-Macaulay", unmixed == cm),
              ("mixed iff depth = dim - 1", (not unmixed) == (depth == dim - 1))]
    if rep.is_maximal:
        checks.append(("Cohen-Macaulay iff deg F <= s", cm == (rep.delta <= rep.s)))
        checks.append(("depth = dim - 1 iff deg F > s", (depth == dim - 1) == (rep.delta > rep.s)))
    findings = [f"failed: {n}" for n, ok in checks if not ok]
    return DichotomyReport(rep, unmixed, cm, depth, dim, checks, findings)


__all__ = [
    "ColonStructure", "Construction", "DecompositionReport", "DichotomyReport", "NotCyclic",
    "NotHomogeneous", "NotMaximal", "PreconditionError", "QGReport", "aci_bound",
    "almost_linear_structure", "char_construct", "check_bound", "ci_from_degrees",
    "classify_decomposition", "colon_structure", "dichotomy_check", "mprimary_decomposition",
    "qg_construct", "single_degree_bound",
]
