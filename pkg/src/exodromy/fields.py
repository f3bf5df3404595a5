"""Arithmetic in F_{p^N} without element tables.

Geometric points of a finite ring at level ``N`` are homomorphisms into a fixed
model of ``F_{p^N}``; these fields are far too large to tabulate (``5^12``
elements at the default level), so elements are polynomials over ``F_p``
reduced modulo a fixed irreducible polynomial.
"""
from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

from sympy import factorint, isprime
from sympy.polys import galoistools as gt
from sympy.polys.domains import ZZ

# elements are tuples of coefficients, highest degree first, stripped (zero is ())
Elem = tuple


class FieldError(ValueError):
    pass


def _norm(poly) -> Elem:
    return tuple(int(c) for c in poly)


def _digits(k: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        k, r = divmod(k, p)
        out.append(r)
    return out  # low -> high


class GaloisField:
    def __init__(self, p: int, degree: int):
        if not isprime(p):
            raise FieldError(f"{p} is not prime")
        if degree < 1:
            raise FieldError("degree must be positive")
        self.p = p
        self.degree = degree
        self.order = p ** degree
        self.modulus = self._first_irreducible()

    def _first_irreducible(self) -> list:
        # lexicographically first monic irreducible polynomial of the given degree
        for k in itertools.count():
            low = _digits(k, self.p, self.degree)
            poly = [1] + [ZZ(c) for c in reversed(low)]
            if gt.gf_irreducible_p(poly, self.p, ZZ):
                return [int(c) for c in poly]
        raise AssertionError("unreachable")

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"

    def element(self, coeffs_low_to_high) -> Elem:
        poly = gt.gf_from_int_poly([int(c) for c in reversed(list(coeffs_low_to_high))], self.p)
        return _norm(gt.gf_rem(poly, self.modulus, self.p, ZZ))

    def constant(self, c: int) -> Elem:
        return self.element([c])

    @property
    def zero(self) -> Elem:
        return ()

    @property
    def one(self) -> Elem:
        return (1,)

    def add(self, a: Elem, b: Elem) -> Elem:
        return _norm(gt.gf_add(list(a), list(b), self.p, ZZ))

    def mul(self, a: Elem, b: Elem) -> Elem:
        return _norm(gt.gf_rem(gt.gf_mul(list(a), list(b), self.p, ZZ), self.modulus, self.p, ZZ))

    def pow(self, a: Elem, k: int) -> Elem:
        if not a:
            return () if k else self.one
        return _norm(gt.gf_pow_mod(list(a), k, self.modulus, self.p, ZZ))

    def frobenius(self, a: Elem, k: int = 1) -> Elem:
        """``σ^k(a) = a^(p^k)``; ``k`` is read modulo the degree."""
        return self.pow(a, self.p ** (k % self.degree))

    def evaluate(self, coeffs_low_to_high, x: Elem) -> Elem:
        """Evaluate a polynomial with ``F_p`` coefficients at ``x``."""
        acc: Elem = ()
        for c in reversed(list(coeffs_low_to_high)):
            acc = self.add(self.mul(acc, x), self.constant(c))
        return acc

    @cached_property
    def primitive_element(self) -> Elem:
        q1 = self.order - 1
        primes = list(factorint(q1)) if q1 > 1 else []
        for k in range(1, self.order):
            g = self.element(_digits(k, self.p, self.degree))
            if all(self.pow(g, q1 // ell) != self.one for ell in primes):
                return g
        raise AssertionError("no primitive element found")

    def subfield(self, e: int) -> list[Elem]:
        """Elements of the unique subfield of order ``p^e`` (``e`` must divide the degree)."""
        if self.degree % e:
            raise FieldError(f"F_{self.p}^{e} is not a subfield of {self!r}")
        delta = self.pow(self.primitive_element, (self.order - 1) // (self.p ** e - 1))
        out, x = [self.zero], self.one
        for _ in range(self.p ** e - 1):
            out.append(x)
            x = self.mul(x, delta)
        return sorted(set(out))

    def roots_in_subfield(self, coeffs_low_to_high, e: int) -> list[Elem]:
        """All roots lying in ``F_{p^e}``, found by exhaustive evaluation."""
        return [x for x in self.subfield(e) if not self.evaluate(coeffs_low_to_high, x)]


@lru_cache(maxsize=None)
def galois_field(p: int, degree: int) -> GaloisField:
    return GaloisField(p, degree)
