"""The internal orthogonality relation and classification of algebras.

The relation a ⊡ b internalizes "a and b mesh below every common bound":
whenever d decomposes through a on one side and b on the other, a middle
element must make the two decompositions agree.  For effect algebras it
coincides with "a ⊕ b is defined and equals the join", which is the
independent oracle used by the tests.  Classification reads off
commutativity, cancellation, the counit condition and unit count, decides
the effect algebra characterization from them, and then the orthoalgebra,
orthomodular poset, and braiding refinements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import RelFA, SumTable, derived_order, join
from .complexes import braiding_shape, check_lifting
from .nerve import element_endpoints, nerve


def perp_relation(F: RelFA) -> frozenset[tuple[str, str]]:
    """Pairs (a, b) whose composite exists: some triangle has a as second
    leg and b as first."""
    return frozenset((x, y) for (x, y, z) in F.mu)


def boxslash_relation(F: RelFA) -> frozenset[tuple[str, str]]:
    """The relation a ⊡ b, by exhaustive check of the defining condition:
    for all p, q, d with d in mu(q, a) and d in mu(b, p) there is l with
    p in mu(l, a) and q in mu(b, l)."""
    mu = F.mu
    right_decomp: dict[str, list[tuple[str, str]]] = {a: [] for a in F.elements}
    left_decomp: dict[str, list[tuple[str, str]]] = {b: [] for b in F.elements}
    for (x, y, z) in mu:
        right_decomp[y].append((x, z))
        left_decomp[x].append((y, z))
    mid_by_yz: dict[tuple[str, str], set[str]] = {}
    mid_by_xz: dict[tuple[str, str], set[str]] = {}
    for (x, y, z) in mu:
        mid_by_yz.setdefault((y, z), set()).add(x)
        mid_by_xz.setdefault((x, z), set()).add(y)
    out = set()
    for a in F.elements:
        d_from_a: dict[str, list[str]] = {}
        for (q, d) in right_decomp[a]:
            d_from_a.setdefault(d, []).append(q)
        for b in F.elements:
            d_from_b: dict[str, list[str]] = {}
            for (p, d) in left_decomp[b]:
                d_from_b.setdefault(d, []).append(p)
            ok = True
            for d, qs in d_from_a.items():
                for p in d_from_b.get(d, ()):
                    for q in qs:
                        ls = mid_by_yz.get((a, p), set()) & mid_by_xz.get((b, q), set())
                        if not ls:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                out.add((a, b))
    return frozenset(out)


def boxslash_order_oracle(E: SumTable) -> frozenset[tuple[str, str]]:
    """Order-theoretic account of ⊡ on an effect algebra: a ⊡ b exactly
    when a ⊕ b is defined and is the join of a and b."""
    order = derived_order(E)
    out = set()
    for a in E.elements:
        for b in E.elements:
            s = E.sums.get((a, b))
            if s is not None and join(E, a, b, order=order) == s:
                out.add((a, b))
    return frozenset(out)


def epsilon_boxslash(F: RelFA, boxslash: frozenset[tuple[str, str]] | None = None) -> list[str]:
    """The set of a with e ⊡ a for every counit e, in carrier order."""
    bx = boxslash if boxslash is not None else boxslash_relation(F)
    return [a for a in F.elements if all((e, a) in bx for e in F.epsilon)]


def is_commutative(F: RelFA) -> tuple[bool, tuple | None]:
    for (x, y, z) in F.mu:
        if (y, x, z) not in F.mu:
            return False, (x, y, z)
    return True, None


def is_cancellative(F: RelFA) -> tuple[bool, tuple | None]:
    """Partial (at most one composite per pair) plus cancellation on both
    sides."""
    by_xy: dict[tuple[str, str], str] = {}
    for (x, y, z) in F.mu:
        if by_xy.setdefault((x, y), z) != z:
            return False, (x, y, z, by_xy[(x, y)])
    left: dict[tuple[str, str], str] = {}
    right: dict[tuple[str, str], str] = {}
    for (x, y, z) in F.mu:
        if left.setdefault((x, z), y) != y:
            return False, (x, z, y, left[(x, z)])
        if right.setdefault((y, z), x) != x:
            return False, (y, z, x, right[(y, z)])
    return True, None


def inverse_analysis(F: RelFA, a: str) -> dict:
    """The five inverse conditions for one element: a right inverse through
    a unit, orthogonality to everything composable at the target,
    orthogonality to some counit, and the two ⊡ saturation conditions.
    The first three are equivalent in any algebra; all five when the
    algebra is cancellative.  Both claims are verified on the spot."""
    mu = F.mu
    right_inverse = None
    for c in F.elements:
        if right_inverse is not None:
            break
        for r in F.eta:
            if (a, c, r) in mu:
                right_inverse = c
                break
    src, tgt = element_endpoints(F)
    perp = perp_relation(F)
    perp_all_at_target = all((b, a) in perp for b in F.elements if src[b] == tgt[a])
    epsilon_perp = any((e, a) in perp for e in F.epsilon)
    bx = boxslash_relation(F)
    f_boxslash_a = all((f, a) in bx for f in F.elements)
    epsilon_boxslash_a = all((e, a) in bx for e in F.epsilon)

    first_three = {right_inverse is not None, perp_all_at_target, epsilon_perp}
    if len(first_three) != 1:
        raise ValueError(
            f"{F.name}: inverse conditions (i)-(iii) disagree at {a!r}")
    if epsilon_boxslash_a and right_inverse is None:
        raise ValueError(
            f"{F.name}: counit ⊡ saturation without a right inverse at {a!r}")
    cancellative, _ = is_cancellative(F)
    if cancellative:
        if len({right_inverse is not None, f_boxslash_a, epsilon_boxslash_a}) != 1:
            raise ValueError(
                f"{F.name}: inverse conditions (i)-(v) disagree at {a!r} "
                "despite cancellativity")
    return {
        "element": a,
        "right_inverse": right_inverse,
        "perp_all_at_target": perp_all_at_target,
        "epsilon_perp": epsilon_perp,
        "F_boxslash_a": f_boxslash_a,
        "epsilon_boxslash_a": epsilon_boxslash_a,
        "cancellative": cancellative,
    }


@dataclass(frozen=True)
class ClassificationFlags:
    name: str
    commutative: bool
    cancellative: bool
    eta_singleton: bool
    epsilon_boxslash_is_eta: bool
    effect_algebra: bool
    orthoalgebra: bool | None
    orthomodular_poset: bool | None
    braided: bool | None
    witnesses: dict = field(default_factory=dict)
    cross_checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "commutative": self.commutative,
            "cancellative": self.cancellative,
            "eta_singleton": self.eta_singleton,
            "epsilon_boxslash_is_eta": self.epsilon_boxslash_is_eta,
            "effect_algebra": self.effect_algebra,
            "orthoalgebra": self.orthoalgebra,
            "orthomodular_poset": self.orthomodular_poset,
            "braided": self.braided,
            "witnesses": {k: list(v) if isinstance(v, tuple) else v
                          for k, v in self.witnesses.items()},
            "cross_checks": dict(self.cross_checks),
        }


def _relational_join(F: RelFA, a: str, b: str) -> str | None:
    """Join in the order derived from the multiplication, if it exists."""
    below: dict[str, set[str]] = {x: set() for x in F.elements}
    for (x, y, z) in F.mu:
        below[z].add(y)
    for x in F.elements:
        below[x].add(x)
    uppers = [d for d in F.elements if a in below[d] and b in below[d]]
    least = [d for d in uppers if all(d in below[u] for u in uppers)]
    return least[0] if len(least) == 1 else None


def classify(F: RelFA) -> ClassificationFlags:
    """Full classification of a relational algebra.  Each flag that has an
    independent order-theoretic characterization is recomputed that way too,
    and the agreement verdicts are recorded alongside the flags."""
    witnesses: dict = {}
    commutative, w = is_commutative(F)
    if w:
        witnesses["commutative"] = w
    cancellative, w = is_cancellative(F)
    if w:
        witnesses["cancellative"] = w
    eta_singleton = len(F.eta) == 1
    if not eta_singleton:
        witnesses["eta_singleton"] = sorted(F.eta)
    bx = boxslash_relation(F)
    eps_bx = epsilon_boxslash(F, bx)
    epsilon_boxslash_is_eta = set(eps_bx) == set(F.eta)
    if not epsilon_boxslash_is_eta:
        diff = sorted(set(eps_bx) ^ set(F.eta))
        witnesses["epsilon_boxslash_is_eta"] = diff
    effect_algebra = commutative and cancellative and eta_singleton and epsilon_boxslash_is_eta

    singleton_condition = all(
        len([a for a in F.elements if (e, a) in bx]) == 1 for e in F.epsilon)
    cross_checks = {
        "counit_singleton_equivalence":
            singleton_condition == (epsilon_boxslash_is_eta and eta_singleton),
    }

    orthoalgebra = orthomodular_poset = None
    if effect_algebra:
        perp = perp_relation(F)
        zero = next(iter(F.eta))
        alpha_graph = set()
        for a in F.elements:
            partners = [l for l in F.elements
                        for e in F.epsilon if (a, l, e) in F.mu]
            if len(partners) == 1:
                alpha_graph.add((a, partners[0]))
        orthoalgebra = alpha_graph <= bx
        if not orthoalgebra:
            witnesses["orthoalgebra"] = sorted(alpha_graph - bx)[0]
        orthomodular_poset = perp == bx
        if not orthomodular_poset:
            witnesses["orthomodular_poset"] = sorted(perp ^ bx)[0]

        oa_order = all(a == zero for a in F.elements if (a, a) in perp)
        omp_order = True
        for (x, y, z) in F.mu:
            if _relational_join(F, y, x) != z:
                omp_order = False
                break
        cross_checks["orthoalgebra_order"] = (orthoalgebra == oa_order)
        cross_checks["orthomodular_poset_order"] = (orthomodular_poset == omp_order)

    braided = None
    try:
        N = nerve(F)
        left = check_lifting(braiding_shape("left"), N, mode="exists")
        right = check_lifting(braiding_shape("right"), N, mode="exists")
        braided = left.passed and right.passed
        if not braided:
            bad = left if not left.passed else right
            if bad.failures:
                witnesses["braided"] = bad.failures[0]
    except ValueError:
        pass

    return ClassificationFlags(
        name=F.name,
        commutative=commutative,
        cancellative=cancellative,
        eta_singleton=eta_singleton,
        epsilon_boxslash_is_eta=epsilon_boxslash_is_eta,
        effect_algebra=effect_algebra,
        orthoalgebra=orthoalgebra,
        orthomodular_poset=orthomodular_poset,
        braided=braided,
        witnesses=witnesses,
        cross_checks=cross_checks)


def coherence_check(E: SumTable) -> tuple[bool, tuple | None]:
    """Whether every pairwise orthogonal triple has a defined threefold sum
    in both association orders.  Returns the verdict and the first failing
    triple."""
    for a in E.elements:
        for b in E.elements:
            if not E.defined(a, b):
                continue
            for c in E.elements:
                if not (E.defined(a, c) and E.defined(b, c)):
                    continue
                ab = E.sum_of(a, b)
                bc = E.sum_of(b, c)
                left = E.sums.get((ab, c))
                right = E.sums.get((a, bc))
                if left is None or right is None or left != right:
                    return False, (a, b, c)
    return True, None


def rotate_edge(F: RelFA, a: str, inverse: bool = False) -> str:
    """The rotation of an edge: the unique l completing a to a marked
    composite, solving mu(a, l) at a counit with matching target.  With
    ``inverse`` the other side is solved: the unique m with mu(m, a) at the
    counit with matching source.  In an effect algebra both give the
    orthosupplement; in a group algebra, the group inverse."""
    src, tgt = element_endpoints(F)
    if inverse:
        es = [e for e in F.epsilon if src[e] == src[a]]
        if len(es) != 1:
            raise ValueError(f"{F.name}: {len(es)} counit edges out of {src[a]!r}")
        partners = sorted({m for m in F.elements if (m, a, es[0]) in F.mu})
    else:
        es = [e for e in F.epsilon if tgt[e] == tgt[a]]
        if len(es) != 1:
            raise ValueError(f"{F.name}: {len(es)} counit edges into {tgt[a]!r}")
        partners = sorted({l for l in F.elements if (a, l, es[0]) in F.mu})
    if len(partners) != 1:
        raise ValueError(
            f"{F.name}: edge {a!r} has {len(partners)} rotations; expected one")
    return partners[0]
