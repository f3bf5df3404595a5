"""Finite commutative rings as addition and multiplication tables.

Elements are ids ``0..n-1`` with ``0`` the zero and ``1`` the unit (the zero
ring has the single element ``0``).  Every predicate here works by exhaustive
scans over the tables; the pair scan in :func:`is_perfectly_reduced` is the
quadratic cost centre.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime, primefactors
from sympy.polys import galoistools as gt
from sympy.polys.domains import ZZ

from .fincat import CapExceeded, Violation, current_caps


class RingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FinCommRing:
    add: np.ndarray
    mul: np.ndarray
    labels: tuple[str, ...] = ()
    name: str = ""

    @property
    def size(self) -> int:
        return self.add.shape[0]

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 if self.size > 1 else 0

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def __repr__(self) -> str:
        return f"FinCommRing({self.name or '?'}, {self.size} elements)"

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == 0, axis=1)

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    @cached_property
    def characteristic(self) -> int:
        x, k = self.one, 1
        while x != 0:
            x = int(self.add[x, self.one])
            k += 1
        return k if self.size > 1 else 1

    def int_elem(self, k: int) -> int:
        """``k · 1``."""
        k %= self.characteristic
        x = 0
        for _ in range(k):
            x = int(self.add[x, self.one])
        return x

    def power_table(self, k: int) -> np.ndarray:
        """``a ↦ a^k`` for every element at once."""
        result = np.full(self.size, self.one, dtype=self.mul.dtype)
        base = np.arange(self.size, dtype=self.mul.dtype)
        while k:
            if k & 1:
                result = self.mul[result, base]
            base = self.mul[base, base]
            k >>= 1
        return result

    def power(self, a: int, k: int) -> int:
        return int(self.power_table(k)[a])

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(int(a) for a in np.nonzero((self.mul == self.one).any(axis=1))[0])

    def is_unit(self, a: int) -> bool:
        return a in self.units

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        diag = self.mul[np.arange(self.size), np.arange(self.size)]
        return tuple(int(a) for a in np.nonzero(diag == np.arange(self.size))[0])

    @cached_property
    def decomposition(self) -> "LocalDecomposition":
        return local_decomposition(self)


def _from_tables(add, mul, labels, name) -> FinCommRing:
    n = len(add)
    caps = current_caps()
    if n > caps.ring:
        raise CapExceeded(f"ring of size {n} exceeds the cap of {caps.ring} elements")
    dtype = np.int32
    return FinCommRing(np.asarray(add, dtype=dtype), np.asarray(mul, dtype=dtype),
                       tuple(labels), name)


# --------------------------------------------------------------------------
# presentations


def build_ring(presentation: dict, name: str | None = None) -> FinCommRing:
    """Build a ring from a presentation dictionary.

    Supported kinds::

        {"kind": "zmod", "n": 6}
        {"kind": "gf", "p": 2, "modulus": [1, 1, 1]}           # F_p[x]/(modulus)
        {"kind": "poly", "n": 4, "moduli": [[-1, -1, 1]]}      # (Z/n)[x1..xk]/(monic m_i(x_i))
        {"kind": "product", "factors": [...]}
        {"kind": "tables", "add": [[...]], "mul": [[...]]}

    Polynomial coefficients are listed from the constant term up.  Each
    modulus must be monic, so the monomials ``x^a`` with ``a_i < deg m_i``
    are the normal forms and the quotient is finite.
    """
    kind = presentation.get("kind")
    name = name or presentation.get("name") or _default_name(presentation)
    if kind == "zmod":
        n = int(presentation["n"])
        if n < 1:
            raise RingError("Z/n needs n >= 1")
        return zmod(n, name)
    if kind == "gf":
        p = int(presentation["p"])
        modulus = [int(c) for c in presentation["modulus"]]
        if not isprime(p):
            raise RingError(f"{p} is not prime")
        poly = gt.gf_from_int_poly(list(reversed(modulus)), p)
        if len(modulus) < 2 or modulus[-1] % p != 1:
            raise RingError("field modulus must be monic of positive degree")
        if not gt.gf_irreducible_p(poly, p, ZZ):
            raise RingError(f"modulus {modulus} is reducible over F_{p}")
        return poly_quotient(p, [modulus], name)
    if kind == "poly":
        moduli = presentation.get("moduli") or [presentation["modulus"]]
        return poly_quotient(int(presentation["n"]), [[int(c) for c in m] for m in moduli], name)
    if kind == "product":
        return product_ring([build_ring(f) for f in presentation["factors"]], name)
    if kind == "tables":
        return _from_tables(presentation["add"], presentation["mul"],
                            presentation.get("labels", [str(i) for i in range(len(presentation["add"]))]),
                            name)
    raise RingError(f"unknown presentation kind {kind!r}")


def _default_name(pres: dict) -> str:
    kind = pres.get("kind")
    if kind == "zmod":
        return f"Z/{pres['n']}"
    if kind == "gf":
        return f"F_{pres['p']}[x]/{_poly_str(pres['modulus'])}"
    if kind == "poly":
        moduli = pres.get("moduli") or [pres["modulus"]]
        vs = _VARS[:len(moduli)]
        return f"(Z/{pres['n']})[{','.join(vs)}]/(" + ", ".join(
            _poly_str(m, v) for m, v in zip(moduli, vs)) + ")"
    if kind == "product":
        return " x ".join(_default_name(f) if not f.get("name") else f["name"] for f in pres["factors"])
    return "ring"


_VARS = "xyzw"


def _poly_str(coeffs, var: str = "x") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def zmod(n: int, name: str | None = None) -> FinCommRing:
    a = np.arange(n)
    return _from_tables((a[:, None] + a[None, :]) % n, (a[:, None] * a[None, :]) % n,
                        [str(i) for i in range(n)], name or f"Z/{n}")


def poly_quotient(n: int, moduli: Sequence[Sequence[int]], name: str | None = None) -> FinCommRing:
    """``(Z/n)[x_1..x_k]/(m_1(x_1), ..., m_k(x_k))`` with monic ``m_i``."""
    degs = []
    for m in moduli:
        if len(m) < 2 or m[-1] % n != 1 % n:
            raise RingError(f"modulus {list(m)} is not monic of positive degree; "
                            "the quotient would not be finite under these normal forms")
        degs.append(len(m) - 1)
    dim = math.prod(degs)
    size = n ** dim
    caps = current_caps()
    if size > caps.ring:
        raise CapExceeded(f"ring of size {size} exceeds the cap of {caps.ring} elements")

    # x^e mod m as a coefficient vector, for 0 <= e <= 2(d-1)
    reductions = []
    for m, d in zip(moduli, degs):
        red = []
        for e in range(2 * d - 1):
            v = [0] * (2 * d - 1)
            v[e] = 1
            for top in range(2 * d - 2, d - 1, -1):
                c = v[top] % n
                if c:
                    v[top] = 0
                    for i in range(d):
                        v[top - d + i] = (v[top - d + i] - c * m[i]) % n
            red.append([x % n for x in v[:d]])
        reductions.append(red)

    monos = list(itertools.product(*[range(d) for d in degs]))
    mono_index = {mo: i for i, mo in enumerate(monos)}
    struct = np.zeros((dim, dim, dim), dtype=np.int64)
    for (i, a), (j, b) in itertools.product(enumerate(monos), repeat=2):
        parts = [reductions[v][a[v] + b[v]] for v in range(len(degs))]
        for combo in itertools.product(*[range(d) for d in degs]):
            coeff = 1
            for v, c in enumerate(combo):
                coeff *= parts[v][c]
            if coeff % n:
                struct[i, j, mono_index[combo]] = (struct[i, j, mono_index[combo]] + coeff) % n

    # element index = sum c_i n^i over monomials in product order (constant first)
    weights = n ** np.arange(dim, dtype=np.int64)
    coords = (np.arange(size, dtype=np.int64)[:, None] // weights[None, :]) % n
    add = ((coords[:, None, :] + coords[None, :, :]) % n) @ weights
    mul = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        prod = np.einsum("i,bj,ijk->bk", coords[a], coords, struct) % n
        mul[a] = prod @ weights
    vs = _VARS[:len(degs)]
    labels = []
    for a in range(size):
        terms = []
        for c, mo in zip(coords[a], monos):
            if c == 0:
                continue
            mono = "".join(v if e == 1 else f"{v}^{e}" for v, e in zip(vs, mo) if e)
            terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        labels.append("+".join(terms) if terms else "0")
    return _from_tables(add, mul, labels, name or f"(Z/{n})[{','.join(vs)}]/...")


def product_ring(factors: Sequence[FinCommRing], name: str | None = None) -> FinCommRing:
    """Finite product; elements ordered zero, one, then the remaining tuples lexicographically."""
    sizes = [A.size for A in factors]
    tuples = list(itertools.product(*[range(s) for s in sizes]))
    zero = tuple(0 for _ in factors)
    one = tuple(A.one for A in factors)
    order = [zero] + ([one] if one != zero else []) + [t for t in tuples if t != zero and t != one]
    n = len(order)
    caps = current_caps()
    if n > caps.ring:
        raise CapExceeded(f"ring of size {n} exceeds the cap of {caps.ring} elements")
    arr = np.array(order, dtype=np.int64).reshape(n, len(factors))
    # mixed-radix code of each tuple -> position
    radix = np.cumprod([1] + sizes[:-1]).astype(np.int64)
    lookup = np.empty(math.prod(sizes), dtype=np.int64)
    lookup[arr @ radix] = np.arange(n)
    add_code = np.zeros((n, n), dtype=np.int64)
    mul_code = np.zeros((n, n), dtype=np.int64)
    for k, A in enumerate(factors):
        col = arr[:, k]
        add_code += A.add[col[:, None], col[None, :]].astype(np.int64) * radix[k]
        mul_code += A.mul[col[:, None], col[None, :]].astype(np.int64) * radix[k]
    labels = ["(" + ", ".join(A.label(c) for A, c in zip(factors, t)) + ")" for t in order]
    return _from_tables(lookup[add_code], lookup[mul_code], labels,
                        name or " x ".join(A.name for A in factors))


def ring_to_json(A: FinCommRing) -> dict:
    return {"schema": "ring.v1", "name": A.name,
            "tables": {"add": A.add.tolist(), "mul": A.mul.tolist()},
            "labels": list(A.labels)}


def ring_from_json(data: dict) -> FinCommRing:
    if "presentation" in data:
        return build_ring(data["presentation"], data.get("name"))
    if "tables" in data:
        t = data["tables"]
        add, mul = t["add"], t["mul"]
        n = len(add)
        if not (isinstance(add, list) and isinstance(mul, list) and len(mul) == n
                and all(isinstance(r, list) and len(r) == n for r in add + mul)):
            raise RingError("tables must be square lists of equal size")
        A = build_ring({"kind": "tables", "add": add, "mul": mul,
                        "labels": data.get("labels") or [str(i) for i in range(n)]},
                       data.get("name", "ring"))
        report = validate_ring(A)
        if report:
            raise RingError(f"not a commutative ring: {report[0].kind} at {report[0].witness}")
        return A
    raise RingError("ring.v1 needs 'tables' or 'presentation'")


# --------------------------------------------------------------------------
# axioms


def validate_ring(A: FinCommRing, exhaustive_limit: int = 64, samples: int = 20000,
                  seed: int = 0) -> list[Violation]:
    """Commutative-ring axioms: exhaustive over triples up to ``exhaustive_limit`` elements, sampled above."""
    n = A.size
    add, mul = A.add, A.mul
    report = []
    if add.shape != (n, n) or mul.shape != (n, n) or add.min() < 0 or add.max() >= n \
            or mul.min() < 0 or mul.max() >= n:
        return [Violation("shape", (), "tables must be n x n with entries in 0..n-1")]
    if n > 1 and A.one == A.zero:
        report.append(Violation("zero_is_one", ()))
    idx = np.arange(n)
    for nm, t in (("add", add), ("mul", mul)):
        bad = np.argwhere(t != t.T)
        if len(bad):
            report.append(Violation(f"{nm}_commutativity", tuple(int(v) for v in bad[0])))
    if (add[0] != idx).any():
        report.append(Violation("additive_identity", (int(np.argmax(add[0] != idx)),)))
    if (mul[A.one] != idx).any():
        report.append(Violation("multiplicative_identity", (int(np.argmax(mul[A.one] != idx)),)))
    no_inverse = np.nonzero(~(add == 0).any(axis=1))[0]
    if len(no_inverse):
        report.append(Violation("additive_inverse", (int(no_inverse[0]),)))
    if report:
        return report
    if n <= exhaustive_limit:
        a, b, c = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    else:
        rng = np.random.default_rng(seed)
        a, b, c = (rng.integers(0, n, samples) for _ in range(3))
    checks = (
        ("add_associativity", add[add[a, b], c], add[a, add[b, c]]),
        ("mul_associativity", mul[mul[a, b], c], mul[a, mul[b, c]]),
        ("distributivity", mul[a, add[b, c]], add[mul[a, b], mul[a, c]]),
    )
    for nm, lhs, rhs in checks:
        lhs, rhs = np.broadcast_arrays(lhs, rhs)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            pos = tuple(bad[0])
            aa, bb, cc = (np.broadcast_to(v, lhs.shape)[pos] for v in (a, b, c))
            report.append(Violation(nm, (int(aa), int(bb), int(cc))))
    return report


# --------------------------------------------------------------------------
# ideals and quotients


def additive_span(A: FinCommRing, gens: Iterable[int]) -> frozenset[int]:
    gens = sorted(set(int(g) for g in gens))
    span = {0}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = int(A.add[x, g])
                if y not in span:
                    span.add(y)
                    new.append(y)
        frontier = new
    return frozenset(span)


def ideal_generated(A: FinCommRing, gens: Iterable[int]) -> frozenset[int]:
    gens = list(gens)
    products = {int(A.mul[g, b]) for g in gens for b in range(A.size)}
    return additive_span(A, products)


def quotient(A: FinCommRing, ideal: Iterable[int], name: str | None = None) -> tuple[FinCommRing, np.ndarray]:
    """``A/I`` and the quotient map (as an element array)."""
    I = sorted(set(int(i) for i in ideal))
    coset_rep = np.full(A.size, -1, dtype=np.int64)
    for a in range(A.size):
        if coset_rep[a] < 0:
            members = A.add[a, I]
            coset_rep[members] = min(a, int(members.min()))
    reps = sorted(set(int(r) for r in coset_rep))
    one_rep = int(coset_rep[A.one])
    order = [0] + ([one_rep] if one_rep != 0 else []) + [r for r in reps if r not in (0, one_rep)]
    pos = {r: i for i, r in enumerate(order)}
    qmap = np.array([pos[int(coset_rep[a])] for a in range(A.size)], dtype=np.int32)
    R = np.array(order)
    add = qmap[A.add[R[:, None], R[None, :]]]
    mul = qmap[A.mul[R[:, None], R[None, :]]]
    labels = [f"[{A.label(r)}]" for r in order]
    return _from_tables(add, mul, labels, name or f"{A.name}/I"), qmap


def nilradical(A: FinCommRing) -> frozenset[int]:
    k = 1
    while k < A.size:
        k *= 2
    return frozenset(int(a) for a in np.nonzero(A.power_table(k) == 0)[0])


def is_reduced(A: FinCommRing) -> bool:
    return nilradical(A) == frozenset({0})


# --------------------------------------------------------------------------
# local decomposition


@dataclass(frozen=True, eq=False)
class LocalFactor:
    idempotent: int
    elements: tuple[int, ...]          # global ids of e·A; position = local id
    ring: FinCommRing
    maximal_ideal: frozenset[int]      # global ids, inside e·A
    prime: frozenset[int]              # the prime ideal {a : e·a ∈ m} of A
    residue: FinCommRing
    residue_map: np.ndarray            # A -> residue field
    char: int
    degree: int

    @property
    def residue_size(self) -> int:
        return self.residue.size


@dataclass(frozen=True, eq=False)
class LocalDecomposition:
    ring: FinCommRing
    factors: tuple[LocalFactor, ...]

    @property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(f.idempotent for f in self.factors)

    def to_json(self) -> dict:
        A = self.ring
        return {
            "ring": A.name,
            "factors": [{
                "idempotent": A.label(f.idempotent),
                "size": f.ring.size,
                "maximal_ideal": sorted(A.label(m) for m in f.maximal_ideal),
                "residue_field": {"p": f.char, "degree": f.degree, "size": f.residue.size},
            } for f in self.factors],
        }


def local_decomposition(A: FinCommRing) -> LocalDecomposition:
    """Primitive idempotents, local factors, maximal ideals and residue fields.

    Primes of a finite ring are the maximal ideals of its local factors.
    """
    if A.size == 1:
        return LocalDecomposition(A, ())
    idem = [e for e in A.idempotents if e != 0]
    primitive = [e for e in idem
                 if not any(f != e and int(A.mul[f, e]) == f for f in idem)]
    factors = []
    for e in primitive:
        members = sorted(set(int(x) for x in A.mul[e]))
        order = [0, e] + [x for x in members if x not in (0, e)]
        loc = {g: i for i, g in enumerate(order)}
        G = np.array(order)
        to_local = np.vectorize(loc.__getitem__, otypes=[np.int32])
        R = _from_tables(to_local(A.add[G[:, None], G[None, :]]), to_local(A.mul[G[:, None], G[None, :]]),
                         [A.label(g) for g in order], f"{A.name}·{A.label(e)}")
        m_local = [i for i in range(R.size) if i not in R.units]
        k, qmap = quotient(R, m_local, name=f"κ({A.label(e)})")
        maximal = frozenset(order[i] for i in m_local)
        prime = frozenset(a for a in range(A.size) if int(A.mul[e, a]) in maximal)
        residue_map = qmap[to_local(A.mul[e])]
        p = k.characteristic
        deg = round(math.log(k.size, p))
        if not isprime(p) or p ** deg != k.size:
            raise RingError(f"residue ring of {A.name} at {A.label(e)} is not a field")
        factors.append(LocalFactor(e, tuple(order), R, maximal, prime, k, residue_map, p, deg))
    return LocalDecomposition(A, tuple(factors))


@dataclass(frozen=True)
class FieldCoordinates:
    """A field ``F_p[α]/(μ)`` with every element written in the basis ``1, α, ..., α^{e-1}``."""

    generator: int
    minpoly: tuple[int, ...]             # low -> high, monic
    coords: dict[int, tuple[int, ...]]   # element -> coefficients (low -> high)


def field_coordinates(k: FinCommRing) -> FieldCoordinates:
    p = k.characteristic
    e = round(math.log(k.size, p))
    one = k.one
    candidates = [one] if e == 1 else range(k.size)
    for alpha in candidates:
        powers = [one]
        for _ in range(e):
            powers.append(int(k.mul[powers[-1], alpha]))
        coords = {}
        for c in itertools.product(range(p), repeat=e):
            x = 0
            for ci, pw in zip(c, powers):
                for _ in range(ci):
                    x = int(k.add[x, pw])
            coords.setdefault(x, c)
        if len(coords) == k.size:
            top = coords[powers[e]]
            mu = tuple((-c) % p for c in top) + (1,)
            return FieldCoordinates(alpha, mu, coords)
    raise RingError(f"{k.name} has no primitive element over F_{p}")


# --------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class RingHom:
    source: FinCommRing
    target: FinCommRing
    images: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __repr__(self) -> str:
        return f"RingHom({self.source.name} -> {self.target.name})"


def validate_hom(f: RingHom) -> list[Violation]:
    A, B = f.source, f.target
    im = np.asarray(f.images)
    if im.shape != (A.size,) or (A.size and (im.min() < 0 or im.max() >= B.size)):
        return [Violation("shape", (), "element map must send every source element into the target")]
    report = []
    if im[0] != 0:
        report.append(Violation("zero", ()))
    if im[A.one] != B.one:
        report.append(Violation("one", ()))
    for nm, sa, sb in (("add", A.add, B.add), ("mul", A.mul, B.mul)):
        bad = np.argwhere(im[sa] != sb[im[:, None], im[None, :]])
        if len(bad):
            report.append(Violation(nm, tuple(int(v) for v in bad[0])))
    return report


def check_hom(f: RingHom) -> RingHom:
    report = validate_hom(f)
    if report:
        raise RingError(f"not a ring homomorphism: {report[0].kind} at {report[0].witness}")
    return f


def identity_hom(A: FinCommRing) -> RingHom:
    return RingHom(A, A, tuple(range(A.size)))


def compose_homs(g: RingHom, f: RingHom) -> RingHom:
    """``g ∘ f``."""
    return RingHom(f.source, g.target, tuple(g.images[b] for b in f.images))


def ring_generators(A: FinCommRing) -> list[int]:
    """Greedy generating set: repeatedly adjoin the least element outside the subring so far."""
    gens: list[int] = []
    sub = _subring(A, gens)
    while len(sub) < A.size:
        g = next(a for a in range(A.size) if a not in sub)
        gens.append(g)
        sub = _subring(A, gens)
    return gens


def _subring(A: FinCommRing, gens: list[int]) -> set[int]:
    known = {0, A.one, *gens}
    frontier = list(known)
    while frontier:
        new = []
        for a in frontier:
            for b in list(known):
                for c in (int(A.add[a, b]), int(A.mul[a, b])):
                    if c not in known:
                        known.add(c)
                        new.append(c)
        frontier = new
    return known


def _extend(A: FinCommRing, B: FinCommRing, partial: dict[int, int], g: int, t: int) -> dict[int, int] | None:
    if g in partial:
        return partial if partial[g] == t else None
    known = dict(partial)
    known[g] = t
    frontier = [g]
    while frontier:
        new = []
        for a in frontier:
            for b in list(known):
                for c, img in ((int(A.add[a, b]), int(B.add[known[a], known[b]])),
                               (int(A.mul[a, b]), int(B.mul[known[a], known[b]]))):
                    if c in known:
                        if known[c] != img:
                            return None
                    else:
                        known[c] = img
                        new.append(c)
        frontier = new
    return known


def find_homs(A: FinCommRing, B: FinCommRing) -> list[RingHom]:
    """All ring homomorphisms ``A -> B`` by backtracking over generator images."""
    gens = ring_generators(A)
    start = _extend(A, B, {0: 0}, A.one, B.one) if A.size > 1 else {0: 0}
    if start is None or (A.size == 1 and B.size != 1):
        return []
    out = []

    def search(i: int, partial: dict[int, int]):
        if i == len(gens):
            out.append(RingHom(A, B, tuple(partial[a] for a in range(A.size))))
            return
        for t in range(B.size):
            ext = _extend(A, B, partial, gens[i], t)
            if ext is not None:
                search(i + 1, ext)

    search(0, start)
    return out


def canonical_hom(A: FinCommRing, B: FinCommRing) -> RingHom:
    homs = find_homs(A, B)
    if len(homs) != 1:
        raise RingError(f"expected a unique homomorphism {A.name} -> {B.name}, found {len(homs)}")
    return homs[0]


def frobenius(A: FinCommRing) -> RingHom:
    p = A.characteristic
    if not isprime(p):
        raise RingError(f"characteristic {p} of {A.name} is not prime")
    return RingHom(A, A, tuple(int(x) for x in A.power_table(p)))


def is_bijective(f: RingHom) -> bool:
    return f.source.size == f.target.size and len(set(f.images)) == f.target.size


# --------------------------------------------------------------------------
# perfect reducedness


@dataclass(frozen=True)
class PerfectReport:
    ok: bool
    certificate: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def _unique_root_scan(A: FinCommRing, lhs: np.ndarray, rhs: np.ndarray,
                      h_first: np.ndarray, h_second: np.ndarray) -> tuple[int, int, int] | None:
    """First (f, g) with ``lhs[f] == rhs[g]`` whose number of h with
    ``(h_first[h], h_second[h]) == (f, g)`` is not exactly one."""
    n = A.size
    counts = np.zeros((n, n), dtype=np.int64)
    np.add.at(counts, (h_first, h_second), 1)
    bad = (lhs[:, None] == rhs[None, :]) & (counts != 1)
    hits = np.argwhere(bad)
    if len(hits):
        f, g = (int(v) for v in hits[0])
        return f, g, int(counts[f, g])
    return None


def cusp_clause(A: FinCommRing) -> tuple[int, int, int] | None:
    """``f² = g³`` must force a unique ``h`` with ``f = h³``, ``g = h²``."""
    sq, cu = A.power_table(2), A.power_table(3)
    return _unique_root_scan(A, sq, cu, cu, sq)


def prime_clause(A: FinCommRing, p: int) -> tuple[int, int, int] | None:
    """``f^p = p^p g`` must force a unique ``h`` with ``f = p h``, ``g = h^p``."""
    pe = A.int_elem(p)
    pp = A.power(pe, p)
    fp = A.power_table(p)
    rhs = A.mul[pp]
    return _unique_root_scan(A, fp, rhs, A.mul[pe], fp)


def is_perfectly_reduced(A: FinCommRing) -> PerfectReport:
    """Exhaustive check of the two unique-root conditions.

    The prime clause is scanned only for primes dividing the characteristic:
    any other prime is a unit, so ``f = p h`` forces ``h = f/p``, and then
    ``f^p = p^p g`` gives ``g = (f/p)^p = h^p``; existence and uniqueness are
    automatic.  The certificate
    is the lowest violating pair of the first failing clause; every failing
    clause is listed under ``failing_clauses``.
    """
    found = []
    bad = cusp_clause(A)
    if bad:
        found.append(("f^2=g^3", None, bad))
    for p in primefactors(A.characteristic):
        bad = prime_clause(A, p)
        if bad:
            found.append((f"f^p=p^p*g (p={p})", p, bad))
    if not found:
        return PerfectReport(True)
    clause, p, (f, g, count) = found[0]
    cert = {"clause": clause, "f": A.label(f), "g": A.label(g),
            "f_id": f, "g_id": g, "solutions": count,
            "failing_clauses": [c for c, _, _ in found]}
    if p is not None:
        cert["p"] = p
    return PerfectReport(False, cert)


def perfection(A: FinCommRing, check: bool = True) -> RingHom:
    """``A -> A/nil``; on spectra this is the counit ``A_perf -> A``.

    Finite reduced rings are products of finite fields, hence perfectly
    reduced, so the reduction is the perfection.  With ``check`` the two
    postconditions are verified rather than assumed.
    """
    red, qmap = quotient(A, nilradical(A), name=f"{A.name}_red")
    f = RingHom(A, red, tuple(int(x) for x in qmap))
    if check:
        if not is_perfectly_reduced(red):
            raise RingError(f"reduction of {A.name} is not perfectly reduced")
        if not is_universal_homeomorphism(f):
            raise RingError(f"{A.name} -> {red.name} is not a universal homeomorphism")
    return f


# --------------------------------------------------------------------------
# morphism predicates (on Spec of the target -> Spec of the source)


def spec_map(f: RingHom) -> tuple[int, ...]:
    """For each prime of the target, the index of its contraction among the source primes."""
    A, B = f.source, f.target
    primes_a = [fa.prime for fa in A.decomposition.factors]
    out = []
    for fb in B.decomposition.factors:
        pulled = frozenset(a for a in range(A.size) if f.images[a] in fb.prime)
        out.append(primes_a.index(pulled))
    return tuple(out)


def is_radicial(f: RingHom) -> bool:
    """Injective on primes with trivial residue extensions (finite fields are perfect)."""
    sm = spec_map(f)
    if len(set(sm)) != len(sm):
        return False
    fa, fb = f.source.decomposition.factors, f.target.decomposition.factors
    return all(fb[j].degree == fa[i].degree for j, i in enumerate(sm))


def is_spec_surjective(f: RingHom) -> bool:
    return set(spec_map(f)) == set(range(len(f.source.decomposition.factors)))


def is_universal_homeomorphism(f: RingHom) -> bool:
    # finite-ring maps are integral, hence universally closed
    return is_radicial(f) and is_spec_surjective(f)


def _factor_module_data(f: RingHom, j: int, i: int) -> tuple[frozenset, frozenset, int]:
    """(``m_A·B_j``, ``B_j``, ``|A_i|``) for the target factor ``j`` over source factor ``i``."""
    A, B = f.source, f.target
    fa, fb = A.decomposition.factors[i], B.decomposition.factors[j]
    Bj = frozenset(fb.elements)
    gens = {int(B.mul[f.images[m], b]) for m in fa.maximal_ideal for b in fb.elements}
    return additive_span(B, gens), Bj, fa.ring.size


def is_unramified(f: RingHom) -> bool:
    sm = spec_map(f)
    for j, i in enumerate(sm):
        mB, _, _ = _factor_module_data(f, j, i)
        if mB != f.target.decomposition.factors[j].maximal_ideal:
            return False
    return True


def is_flat(f: RingHom) -> bool:
    """Each target factor is free over the source factor below it.

    Over a local Artinian ring a finite module ``M`` needs ``r`` generators
    with ``|k|^r = |M/mM|``; it is free iff ``|M| = |A|^r``.
    """
    sm = spec_map(f)
    for j, i in enumerate(sm):
        mB, Bj, size_a = _factor_module_data(f, j, i)
        k_size = f.source.decomposition.factors[i].residue.size
        r = round(math.log(len(Bj) // len(mB), k_size)) if len(Bj) > len(mB) else 0
        if k_size ** r * len(mB) != len(Bj) or size_a ** r != len(Bj):
            return False
    return True


def is_etale(f: RingHom) -> bool:
    """Flat and unramified factorwise; residue extensions of finite fields are separable."""
    return is_flat(f) and is_unramified(f)


def is_finite(f: RingHom) -> bool:
    # every map of finite rings is finite
    return True


def is_quasi_finite(f: RingHom) -> bool:
    return True


def is_monomorphism(f: RingHom) -> bool:
    """Spec(f) is a monomorphism: radicial and unramified (finite presentation)."""
    return is_radicial(f) and is_unramified(f)


def is_surjective(f: RingHom) -> bool:
    return len(set(f.images)) == f.target.size


def is_closed_immersion(f: RingHom) -> bool:
    return is_surjective(f)


def is_open_immersion(f: RingHom) -> bool:
    """Spec(B) -> Spec(A) is the inclusion of a clopen ``Spec(eA)``: ``f`` is onto with kernel ``(1-e)A``."""
    if not is_surjective(f):
        return False
    A = f.source
    kernel = frozenset(a for a in range(A.size) if f.images[a] == 0)
    for e in A.idempotents:
        comp = A.sub(A.one, e)
        if frozenset(int(x) for x in A.mul[comp]) == kernel:
            return True
    return False


def is_local(A: FinCommRing) -> bool:
    return len(A.decomposition.factors) == 1


def is_irreducible(A: FinCommRing) -> bool:
    # Spec of a finite ring is finite and discrete
    return len(A.decomposition.factors) == 1


def hom_to_json(f: RingHom) -> dict:
    return {"schema": "ringhom.v1", "source": ring_to_json(f.source),
            "target": ring_to_json(f.target), "map": list(f.images)}


def hom_from_json(data: dict) -> RingHom:
    f = RingHom(ring_from_json(data["source"]), ring_from_json(data["target"]),
                tuple(int(x) for x in data["map"]))
    return check_hom(f)
