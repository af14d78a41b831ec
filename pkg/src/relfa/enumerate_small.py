"""Exhaustive enumeration of small algebras up to isomorphism.

Sum tables are searched directly: the bottom row and column are forced by
neutrality, sums against the top are forced undefined for nonzero arguments,
and only the interior cells are free.  Candidate values exclude the bottom
and both arguments, since a sum equal to one of its arguments forces the
other to be zero.  Branches are cut on duplicated supplements and on
associativity conflicts over the decided cells; every surviving leaf is
still passed through the full validator, which remains the authority.
Representatives are the lexicographically least relabelings under
permutations fixing bottom and top.

Relational structures are searched exhaustively only at very small sizes,
with the comultiplication transported through the rotation of the
multiplication.  Larger relational test material comes from a deterministic
candidate stream: known-good structures together with all of their
single-step mutations that still present a well-formed complex.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .algebra import (
    EffectAlgebraTable,
    PseudoEffectAlgebraTable,
    RelFA,
    SumTable,
    to_relfa,
    validate,
)
from .catalog import cyclic_group_algebra, klein_group_algebra
from .nerve import nerve, rotations

TABLE_BOUND = 5
RELATIONAL_BOUND = 2
CANDIDATE_BOUND = 4

KINDS = (
    "effect-algebra",
    "pseudo-effect-algebra",
    "frobenius",
    "frobenius-candidates",
)

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_OPEN = object()


def _carrier(n: int) -> tuple[str, ...]:
    """Carrier names for a size-n table: bottom, letters, top."""
    if n == 1:
        return ("0",)
    return ("0",) + tuple(_LETTERS[: n - 2]) + ("1",)


# ---------------------------------------------------------------------------
# Sum table search


def _assoc_conflict(T: dict, n: int) -> bool:
    """True when some triple already decides both association orders and
    they disagree, in definedness or in value."""
    for a in range(n):
        for b in range(n):
            ab = T.get((a, b), _OPEN)
            for c in range(n):
                bc = T.get((b, c), _OPEN)
                if ab is _OPEN:
                    left = _OPEN
                elif ab is None:
                    left = None
                else:
                    left = T.get((ab, c), _OPEN)
                if bc is _OPEN:
                    right = _OPEN
                elif bc is None:
                    right = None
                else:
                    right = T.get((a, bc), _OPEN)
                if left is _OPEN or right is _OPEN:
                    continue
                if left != right:
                    return True
    return False


def _supplement_clash(T: dict, n: int, i: int, j: int) -> bool:
    """True when the fresh top-valued cell (i, j) duplicates a supplement."""
    top = n - 1
    if any(T.get((i, c)) == top for c in range(n) if c != j):
        return True
    if any(T.get((r, j)) == top for r in range(n) if r != i):
        return True
    return False


def _forced_cells(n: int) -> dict:
    T: dict = {}
    for k in range(n):
        T[(0, k)] = k
        T[(k, 0)] = k
    top = n - 1
    for k in range(1, n):
        T[(top, k)] = None
        T[(k, top)] = None
    return T


def _canonical_table(T: dict, n: int) -> tuple:
    """Lexicographically least row-major flattening over relabelings that
    fix bottom and top.  Undefined cells flatten to the sentinel n."""
    mids = list(range(1, n - 1))
    best = None
    for perm in permutations(mids):
        m = {0: 0}
        if n > 1:
            m[n - 1] = n - 1
        for old, new in zip(mids, perm):
            m[old] = new
        inv = {v: k for k, v in m.items()}
        flat = []
        for r in range(n):
            for c in range(n):
                v = T[(inv[r], inv[c])]
                flat.append(n if v is None else m[v])
        form = tuple(flat)
        if best is None or form < best:
            best = form
    return best


def _table_from_form(n: int, form: tuple, commutative: bool, index: int) -> SumTable:
    names = _carrier(n)
    sums = {}
    for r in range(n):
        for c in range(n):
            v = form[r * n + c]
            if v < n:
                sums[(names[r], names[c])] = names[v]
    if commutative:
        return EffectAlgebraTable(f"ea{n}_{index}", names, names[0], names[-1], sums)
    return PseudoEffectAlgebraTable(f"pea{n}_{index}", names, names[0], names[-1], sums)


@lru_cache(maxsize=None)
def _table_forms(n: int, commutative: bool) -> tuple[tuple, ...]:
    kind = "effect-algebra" if commutative else "pseudo-effect-algebra"
    mids = range(1, n - 1)
    if commutative:
        cells = [(i, j) for i in mids for j in mids if i <= j]
    else:
        cells = [(i, j) for i in mids for j in mids]
    names = _carrier(n)
    found: dict[tuple, None] = {}

    def leaf(T: dict) -> None:
        sums = {
            (names[a], names[b]): names[v]
            for (a, b), v in T.items()
            if v is not None
        }
        cls = EffectAlgebraTable if commutative else PseudoEffectAlgebraTable
        candidate = cls("candidate", names, names[0], names[-1], sums)
        if validate(kind, candidate).passed:
            found.setdefault(_canonical_table(T, n), None)

    def search(T: dict, k: int) -> None:
        if k == len(cells):
            leaf(T)
            return
        i, j = cells[k]
        options = [None] + [v for v in range(1, n) if v != i and v != j]
        for v in options:
            T[(i, j)] = v
            mirrored = commutative and i != j
            if mirrored:
                T[(j, i)] = v
            ok = True
            if v == n - 1:
                ok = not _supplement_clash(T, n, i, j)
                if ok and mirrored:
                    ok = not _supplement_clash(T, n, j, i)
            if ok and v is not None:
                ok = not _assoc_conflict(T, n)
            if ok:
                search(T, k + 1)
            del T[(i, j)]
            if mirrored:
                del T[(j, i)]

    search(_forced_cells(n), 0)
    return tuple(sorted(found))


def tables_isomorphic(s: SumTable, t: SumTable) -> bool:
    """True when some bijection matching bottoms and tops transports every
    sum of one table exactly onto the other."""
    if len(s.elements) != len(t.elements):
        return False
    if len(s.sums) != len(t.sums):
        return False
    s_mid = [e for e in s.elements if e not in (s.zero, s.one)]
    t_mid = [e for e in t.elements if e not in (t.zero, t.one)]
    if len(s_mid) != len(t_mid):
        return False
    for image in permutations(t_mid):
        f = {s.zero: t.zero, s.one: t.one}
        f.update(zip(s_mid, image))
        if all(t.sums.get((f[a], f[b])) == f[c] for (a, b), c in s.sums.items()):
            return True
    return False


# ---------------------------------------------------------------------------
# Relational structures


def transported_delta(elements, mu, eta, epsilon) -> frozenset:
    """The comultiplication carried over from the multiplication by the
    right rotation of the associated complex.  Empty when the complex does
    not determine the rotation."""
    probe = RelFA("probe", tuple(elements), frozenset(mu), frozenset(eta),
                  frozenset(), frozenset(epsilon))
    try:
        C = nerve(probe)
        _, beta = rotations(C)
    except ValueError:
        return frozenset()
    tris = C.triangles
    out = set()
    for z in elements:
        for x in elements:
            for y in elements:
                if (beta[y], beta[z], beta[x]) in tris:
                    out.add((z, x, y))
    return frozenset(out)


def _relfa_canonical(A: RelFA) -> tuple:
    n = len(A.elements)
    idx = {e: k for k, e in enumerate(A.elements)}
    best = None
    for perm in permutations(range(n)):
        m = {e: perm[idx[e]] for e in A.elements}
        form = (
            n,
            tuple(sorted((m[x], m[y], m[z]) for x, y, z in A.mu)),
            tuple(sorted(m[u] for u in A.eta)),
            tuple(sorted((m[z], m[x], m[y]) for z, x, y in A.delta)),
            tuple(sorted(m[u] for u in A.epsilon)),
        )
        if best is None or form < best:
            best = form
    return best


def _relfa_from_form(form: tuple, index: int) -> RelFA:
    n, mu, eta, delta, eps = form
    els = tuple(f"x{k}" for k in range(n))
    return RelFA(
        f"frob{n}_{index}",
        els,
        frozenset((els[a], els[b], els[c]) for a, b, c in mu),
        frozenset(els[k] for k in eta),
        frozenset((els[a], els[b], els[c]) for a, b, c in delta),
        frozenset(els[k] for k in eps),
    )


@lru_cache(maxsize=None)
def _relational_forms(n: int) -> tuple[tuple, ...]:
    els = tuple(f"x{k}" for k in range(n))
    triples = [(a, b, c) for a in els for b in els for c in els]
    subsets = [()]
    for t in triples:
        subsets = [s for s in subsets] + [s + (t,) for s in subsets]
    unit_choices = [()]
    for e in els:
        unit_choices = [s for s in unit_choices] + [s + (e,) for s in unit_choices]
    found: dict[tuple, None] = {}
    for mu_set in subsets:
        mu = frozenset(mu_set)
        for eta_set, eps_set in product(unit_choices, unit_choices):
            eta = frozenset(eta_set)
            eps = frozenset(eps_set)
            delta = transported_delta(els, mu, eta, eps)
            candidate = RelFA("candidate", els, mu, eta, delta, eps)
            if validate("frobenius", candidate).passed:
                found.setdefault(_relfa_canonical(candidate), None)
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# Candidate stream


def _assemble_candidate(elements, mu, eta, eps, name: str) -> RelFA | None:
    """A stream entry: units must be idempotent and the data must present a
    complex with one absorbing unit on each side of every element.  The
    comultiplication is always the transported one."""
    mu = frozenset(mu)
    eta = frozenset(eta)
    eps = frozenset(eps)
    if any((u, u, u) not in mu for u in eta):
        return None
    probe = RelFA("probe", tuple(elements), mu, eta, frozenset(), eps)
    try:
        nerve(probe)
    except ValueError:
        return None
    delta = transported_delta(elements, mu, eta, eps)
    return RelFA(name, tuple(elements), mu, eta, delta, eps)


def _mutations(base: RelFA) -> list[RelFA]:
    els = base.elements
    out = []
    all_triples = sorted((a, b, c) for a in els for b in els for c in els)
    for t in all_triples:
        if t in base.mu:
            continue
        cand = _assemble_candidate(els, base.mu | {t}, base.eta, base.epsilon,
                                   f"{base.name}+mu:{','.join(t)}")
        if cand is not None:
            out.append(cand)
    for t in sorted(base.mu):
        cand = _assemble_candidate(els, base.mu - {t}, base.eta, base.epsilon,
                                   f"{base.name}-mu:{','.join(t)}")
        if cand is not None:
            out.append(cand)
    for u in els:
        cand = _assemble_candidate(els, base.mu, base.eta ^ {u}, base.epsilon,
                                   f"{base.name}~eta:{u}")
        if cand is not None:
            out.append(cand)
    for u in els:
        cand = _assemble_candidate(els, base.mu, base.eta, base.epsilon ^ {u},
                                   f"{base.name}~eps:{u}")
        if cand is not None:
            out.append(cand)
    return out


@lru_cache(maxsize=None)
def _candidate_stream(limit: int) -> tuple[RelFA, ...]:
    out: list[RelFA] = []
    seen: set[tuple] = set()

    def add(c: RelFA) -> None:
        sig = c.signature()
        if sig not in seen:
            seen.add(sig)
            out.append(c)

    for m in range(1, limit + 1):
        bases: list[RelFA] = []

        def base(c: RelFA) -> None:
            if all(c.signature() != b.signature() for b in bases):
                bases.append(c)

        for t in enumerate_small(m, "effect-algebra"):
            base(to_relfa(t))
        for t in enumerate_small(m, "pseudo-effect-algebra"):
            base(to_relfa(t))
        if m >= 2:
            base(cyclic_group_algebra(m))
        if m == 4:
            base(klein_group_algebra())
        if m <= RELATIONAL_BOUND:
            for c in enumerate_small(m, "frobenius"):
                base(c)
        for b in bases:
            add(b)
            for mut in _mutations(b):
                add(mut)
    return tuple(out)


# ---------------------------------------------------------------------------
# Entry point


def enumerate_small(size: int, kind: str) -> list:
    """All structures of the given kind and size, one per isomorphism
    class, in a deterministic order.  The kind ``frobenius-candidates``
    instead returns the mutation stream over all sizes up to ``size``."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise ValueError(f"size must be a positive integer, got {size!r}")
    if kind == "effect-algebra":
        if size > TABLE_BOUND:
            raise ValueError(
                f"effect-algebra enumeration is exhaustive only up to size "
                f"{TABLE_BOUND}; got {size}")
        forms = _table_forms(size, True)
        return [_table_from_form(size, f, True, k) for k, f in enumerate(forms)]
    if kind == "pseudo-effect-algebra":
        if size > TABLE_BOUND:
            raise ValueError(
                f"pseudo-effect-algebra enumeration is exhaustive only up to "
                f"size {TABLE_BOUND}; got {size}")
        forms = _table_forms(size, False)
        return [_table_from_form(size, f, False, k) for k, f in enumerate(forms)]
    if kind == "frobenius":
        if size > RELATIONAL_BOUND:
            raise ValueError(
                f"frobenius enumeration is exhaustive only up to size "
                f"{RELATIONAL_BOUND}; got {size}")
        return [_relfa_from_form(f, k) for k, f in enumerate(_relational_forms(size))]
    if size > CANDIDATE_BOUND:
        raise ValueError(
            f"the candidate stream is generated only up to size "
            f"{CANDIDATE_BOUND}; got {size}")
    return list(_candidate_stream(size))
