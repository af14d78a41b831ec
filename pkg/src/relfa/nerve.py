"""Nerves of relational Frobenius algebras and their recognition.

The nerve of an algebra is an edge-marked complex: vertices are the
idempotent unit elements, every element becomes an edge between its two
absorbing units, counit elements are marked, and triangles record the
multiplication relation.  Recognition goes the other way: a complex is the
nerve of an algebra exactly when the marked outer horn fillers in dimensions
1 to 3 are unique and the associativity shape extends.  From a recognized
complex the algebra is rebuilt, with the comultiplication recovered by
rotating the multiplication through marked fillers.
"""

from __future__ import annotations

from .algebra import CheckResult, RelFA, ValidationReport, validate
from .complexes import (
    TruncatedEpsilonComplex,
    ShapeInclusion,
    assoc_shape,
    check_lifting,
    horn,
    make_complex,
    marked_horn,
)


def unit_vertices(A: RelFA) -> list[str]:
    """The idempotent unit elements, in carrier order."""
    return [u for u in A.elements if u in A.eta and (u, u, u) in A.mu]


def element_endpoints(A: RelFA) -> tuple[dict[str, str], dict[str, str]]:
    """Source and target of every element: the unique idempotent units
    absorbing it on each side.  Raises if some element has none or many."""
    vertices = unit_vertices(A)
    src, tgt = {}, {}
    for a in A.elements:
        sources = [u for u in vertices if (a, u, a) in A.mu]
        targets = [v for v in vertices if (v, a, a) in A.mu]
        if len(sources) != 1 or len(targets) != 1:
            raise ValueError(
                f"{A.name}: element {a!r} has {len(sources)} absorbing sources "
                f"and {len(targets)} absorbing targets; need exactly one of each")
        src[a], tgt[a] = sources[0], targets[0]
    return src, tgt


def nerve(A: RelFA, name: str | None = None) -> TruncatedEpsilonComplex:
    """The edge-marked complex of an algebra.  Requires every element to
    absorb a unique pair of idempotent units, which holds for every valid
    algebra considered here."""
    vertices = unit_vertices(A)
    src, tgt = element_endpoints(A)
    identity = {u: u for u in vertices}
    triangles = []
    for (x, y, z) in A.mu:
        triangles.append((x, z, y))
    return make_complex(
        name or f"nerve({A.name})",
        vertices, tuple(A.elements), src, tgt, identity,
        triangles, frozenset(A.epsilon))


RECOGNITION_SHAPES: tuple[tuple[str, str], ...] = (
    ("ehorn-1-0", "unique"),
    ("ehorn-1-1", "unique"),
    ("ehorn-2-0", "unique"),
    ("ehorn-2-2", "unique"),
    ("ehorn-3-0", "unique"),
    ("ehorn-3-3", "unique"),
    ("assoc-02", "exists"),
)

OPTIONAL_SHAPES: tuple[tuple[str, str], ...] = (
    ("horn-2-1", "exists"),
    ("horn-3-1", "exists"),
    ("horn-3-2", "exists"),
    ("assoc-13", "exists"),
)


def _shape(name: str) -> ShapeInclusion:
    kind, rest = name.split("-", 1)
    if kind == "ehorn":
        n, i = rest.split("-")
        return marked_horn(int(n), int(i))
    if kind == "horn":
        n, i = rest.split("-")
        return horn(int(n), int(i))
    if kind == "assoc":
        return assoc_shape(rest)
    raise ValueError(name)


def recognize_nerve(C: TruncatedEpsilonComplex,
                    optional: bool = False) -> ValidationReport:
    """Check the lifting conditions that characterize nerves.  With
    ``optional`` the inner horn and second associativity conditions are
    reported as well; they are not required for recognition."""
    checks = []
    shapes = RECOGNITION_SHAPES + (OPTIONAL_SHAPES if optional else ())
    for shape_name, mode in shapes:
        report = check_lifting(_shape(shape_name), C, mode=mode)
        witness = report.failures[0] if report.failures else None
        checks.append(CheckResult(
            name=f"{shape_name}:{mode}",
            passed=report.passed,
            witness=witness,
            detail=f"{report.boundaries} boundary morphisms checked"))
    required = [c for c in checks if (c.name.split(":")[0], c.name.split(":")[1]) in RECOGNITION_SHAPES]
    notes = () if all(c.passed for c in required) else ("not a nerve",)
    return ValidationReport(kind="nerve-recognition", name=C.name,
                            checks=tuple(checks), notes=notes)


def marked_out_edges(C: TruncatedEpsilonComplex) -> dict[str, str]:
    out: dict[str, str] = {}
    for v in C.vertices:
        es = sorted(e for e in C.marked if C.src[e] == v)
        if len(es) != 1:
            raise ValueError(f"{C.name}: vertex {v!r} has {len(es)} marked outgoing edges")
        out[v] = es[0]
    return out


def marked_in_edges(C: TruncatedEpsilonComplex) -> dict[str, str]:
    inn: dict[str, str] = {}
    for v in C.vertices:
        es = sorted(e for e in C.marked if C.tgt[e] == v)
        if len(es) != 1:
            raise ValueError(f"{C.name}: vertex {v!r} has {len(es)} marked incoming edges")
        inn[v] = es[0]
    return inn


def rotations(C: TruncatedEpsilonComplex) -> tuple[dict[str, str], dict[str, str]]:
    """The two edge rotations of a recognized complex.

    alpha sends an edge to the unique left factor completing it to a marked
    composite; beta to the unique right factor.  Both are inverse-like
    companions recovered from marked horn fillers.
    """
    mo = marked_out_edges(C)
    mi = marked_in_edges(C)
    d2_candidates: dict[tuple[str, str], list[str]] = {}
    d0_candidates: dict[tuple[str, str], list[str]] = {}
    for d0, d1, d2 in C.triangles:
        d2_candidates.setdefault((d0, d1), []).append(d2)
        d0_candidates.setdefault((d1, d2), []).append(d0)
    alpha: dict[str, str] = {}
    beta: dict[str, str] = {}
    for a in C.edges:
        ls = sorted(set(d2_candidates.get((a, mi[C.tgt[a]]), [])))
        ms = sorted(set(d0_candidates.get((mo[C.src[a]], a), [])))
        if len(ls) != 1:
            raise ValueError(f"{C.name}: edge {a!r} has {len(ls)} left rotations")
        if len(ms) != 1:
            raise ValueError(f"{C.name}: edge {a!r} has {len(ms)} right rotations")
        alpha[a] = ls[0]
        beta[a] = ms[0]
    return alpha, beta


def nerve_to_algebra(C: TruncatedEpsilonComplex, name: str | None = None) -> RelFA:
    """Rebuild the algebra of a recognized complex.  The multiplication
    reads off the triangles; the comultiplication is transported through the
    right rotation."""
    _, beta = rotations(C)
    mu = set()
    for d0, d1, d2 in C.triangles:
        mu.add((d0, d2, d1))
    delta = set()
    for z in C.edges:
        for x in C.edges:
            for y in C.edges:
                if (beta[y], beta[z], beta[x]) in C.triangles:
                    delta.add((z, x, y))
    eta = frozenset(C.identity.values())
    return RelFA(
        name=name or f"algebra({C.name})",
        elements=tuple(C.edges),
        mu=frozenset(mu),
        eta=eta,
        delta=frozenset(delta),
        epsilon=frozenset(C.marked))


def cross_validate(A: RelFA) -> dict:
    """Round trip an algebra through its nerve and back, reporting the
    recognition verdict, the rebuilt algebra's validation, and whether the
    round trip reproduced the original data."""
    result: dict = {"name": A.name}
    direct = validate("frobenius", A)
    result["direct"] = direct.passed
    try:
        N = nerve(A)
    except ValueError as exc:
        result.update(nerve_built=False, recognized=False, round_trip=False,
                      detail=str(exc))
        return result
    result["nerve_built"] = True
    rec = recognize_nerve(N)
    result["recognized"] = rec.passed
    if not rec.passed:
        result["round_trip"] = False
        result["detail"] = "; ".join(c.name for c in rec.failing())
        return result
    try:
        B = nerve_to_algebra(N)
    except ValueError as exc:
        result.update(round_trip=False, detail=str(exc))
        return result
    back = validate("frobenius", B)
    result["rebuilt_valid"] = back.passed
    result["round_trip"] = (
        tuple(B.elements) == tuple(A.elements)
        and B.mu == A.mu and B.eta == A.eta
        and B.delta == A.delta and B.epsilon == A.epsilon)
    return result
