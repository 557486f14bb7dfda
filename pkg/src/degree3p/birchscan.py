"""Integer solutions of the self-paired type IV system.

For a prime p we want integers g1 + g2 + g3 + 1 = 0 with 3 g_i^2 <= 4p - 1 and
one of the square roots sqrt(4p - 1 - 3 g_i^2) equal to the sum of the other
two.  Two independent searches are provided:

* ``nu_solutions_bruteforce`` tries every pair (g1, g2) for one prime and tests
  the radical identity in its squared-out (Heron) form;
* ``birch_factor_scan`` walks S = g2 + g3 and recovers D = g2 - g3 and p from
  factorizations of 3 S^2 and of -8S - 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np
import sympy

from .errors import BadInput, CapExceeded
from .exactalg import QuadraticNumber

DEFAULT_CAP = 10**6

FAMILY_QUADRATIC = "family_quadratic"
FAMILY_SQUARE = "family_square"
SPORADIC = "sporadic"


def _heron(u1: int, u2: int, u3: int) -> int:
    # zero iff +-sqrt(u1) +- sqrt(u2) +- sqrt(u3) = 0 for some choice of signs
    return u1 * u1 + u2 * u2 + u3 * u3 - 2 * (u1 * u2 + u2 * u3 + u3 * u1)


def _classify(p: int, g: tuple[int, int, int]) -> tuple[str, int | None]:
    sq = [x * x for x in g]
    if len(set(sq)) < 3:
        # a repeated value x gives the third -1-2x; compare with 2a+1, -a-1, -a-1
        for x in set(g):
            if g.count(x) >= 2:
                a = -x - 1
                if sorted(g) == sorted((2 * a + 1, -a - 1, -a - 1)) and p == 3 * a * a + 3 * a + 1:
                    return FAMILY_QUADRATIC, a
        for x in g:
            if -x in g and x != 0 and p == x * x:
                return FAMILY_SQUARE, None
    return SPORADIC, None


@dataclass(frozen=True, order=True)
class NuTriple:
    p: int
    gammas: tuple[int, int, int]  # g1 >= g2 >= g3

    def __post_init__(self):
        g = tuple(sorted((int(x) for x in self.gammas), reverse=True))
        object.__setattr__(self, "gammas", g)

    @property
    def S(self) -> int:
        return self.gammas[1] + self.gammas[2]

    @property
    def D(self) -> int:
        return self.gammas[1] - self.gammas[2]

    @property
    def T(self) -> Fraction:
        return Fraction(4 * self.p - 1 - sum(x * x for x in self.gammas), 2)

    @property
    def classification(self) -> str:
        return _classify(self.p, self.gammas)[0]

    @property
    def a(self) -> int | None:
        return _classify(self.p, self.gammas)[1]

    def radicands(self) -> tuple[int, int, int]:
        return tuple(4 * self.p - 1 - 3 * x * x for x in self.gammas)

    def invariant_failures(self) -> list[str]:
        g, p = self.gammas, self.p
        out = []
        if sum(g) + 1:
            out.append("g1 + g2 + g3 + 1 != 0")
        if any(3 * x * x > 4 * p - 1 for x in g):
            out.append("3 g_i^2 exceeds 4p - 1")
        T = self.T
        if T.denominator != 1 or T < 0:
            out.append(f"T = {T} is not a non-negative integer")
        s4 = sum(x**4 for x in g)
        s22 = g[0] ** 2 * g[1] ** 2 + g[1] ** 2 * g[2] ** 2 + g[2] ** 2 * g[0] ** 2
        if T * T != s4 - s22:
            out.append("T^2 != sum g^4 - sum g_i^2 g_j^2")
        if not self.radical_identity():
            out.append("no square root is the sum of the other two")
        return out

    def radical_identity(self) -> bool:
        """Decide sqrt(u_a) + sqrt(u_b) = sqrt(u_c) for some labelling, exactly.

        Nonzero radicands must share a square-free part d, so each root is
        k_i sqrt(d) and the identity reduces to k_a + k_b = k_c.
        """
        u = self.radicands()
        if any(x < 0 for x in u):
            return False
        parts = [QuadraticNumber.sqrt(x) for x in u]
        # a perfect square has square-free part 1; zero roots drop out
        rads = {r.rad or 1 for r in parts if r}
        if len(rads) > 1:
            return False
        ks = sorted(r.coeff if r.rad else r.rat for r in parts)
        return ks[0] + ks[1] == ks[2]


def _require_prime(p: int) -> None:
    if p < 5 or not sympy.isprime(p):
        raise BadInput(f"p must be a prime >= 5, got {p}")


def nu_solutions_bruteforce(p: int) -> list[NuTriple]:
    _require_prime(p)
    K = 4 * p - 1
    b = isqrt(K // 3)
    g = np.arange(-b, b + 1, dtype=np.int64)
    g1, g2 = np.meshgrid(g, g, indexing="ij")
    g3 = -1 - g1 - g2
    ok = (g1 >= g2) & (g2 >= g3) & (3 * g3 * g3 <= K)
    u1, u2, u3 = K - 3 * g1 * g1, K - 3 * g2 * g2, K - 3 * g3 * g3
    ok &= (u1 * u1 + u2 * u2 + u3 * u3 - 2 * (u1 * u2 + u2 * u3 + u3 * u1)) == 0
    out = []
    for x, y in zip(g1[ok].tolist(), g2[ok].tolist()):
        z = -1 - x - y
        # re-check in Python integers so the result never rests on int64 arithmetic
        if _heron(K - 3 * x * x, K - 3 * y * y, K - 3 * z * z) == 0:
            out.append(NuTriple(p, (x, y, z)))
    return sorted(set(out))


def _signed_divisors(n: int) -> list[int]:
    pos = sympy.divisors(abs(n))
    return pos + [-d for d in pos]


def _s_bound(max_p: int) -> int:
    # 4p - 1 >= g1^2 + (g2^2 + g3^2) >= (S + 1)^2 + S^2 / 2
    return isqrt(2 * (4 * max_p - 1)) + 2


def _from_sd(S: int, D: int, max_p: int) -> NuTriple | None:
    if (S - D) % 2:
        return None
    g1, g2, g3 = -1 - S, (S + D) // 2, (S - D) // 2
    E2 = 4 * (S + 1) ** 2 - S * S - D * D  # 2 * (2(S+1)^2 - (S^2 + D^2)/2)
    rhs = E2 * E2 + 12 * S * S * D * D  # (4T)^2
    r = isqrt(rhs)
    if r * r != rhs or r % 4:
        return None
    T = r // 4
    num = g1 * g1 + g2 * g2 + g3 * g3 + 2 * T + 1
    if num % 4:
        return None
    p = num // 4
    if p < 5 or p > max_p or not sympy.isprime(p):
        return None
    t = NuTriple(p, (g1, g2, g3))
    return None if t.invariant_failures() else t


def birch_factor_scan(max_p: int, cap: int = DEFAULT_CAP) -> list[tuple[int, NuTriple]]:
    if max_p > cap:
        raise CapExceeded(f"max_p = {max_p} exceeds the cap {cap}")
    found: set[NuTriple] = set()
    bound = _s_bound(max_p)
    for S in range(-bound, bound + 1):
        Ds: set[int] = set()
        if S == 0:
            # 3 S^2 D^2 = 0: T is fixed by the square and D ranges freely
            Ds.update(range(-2 * bound, 2 * bound + 1))
        else:
            Ds.add(0)
            A = 3 * S * S
            for X in _signed_divisors(A):
                Z = A // X
                for d in _signed_divisors(-8 * S - 4):
                    T = d - X
                    Y = Z - (-8 * S - 4) // d
                    sq = Y * T
                    if sq <= 0:
                        continue
                    D = isqrt(sq)
                    if D * D == sq:
                        Ds.update((D, -D))
        for D in Ds:
            t = _from_sd(S, D, max_p)
            if t is not None:
                found.add(t)
    return [(t.p, t) for t in sorted(found)]


def bruteforce_scan(max_p: int, cap: int = DEFAULT_CAP) -> list[tuple[int, NuTriple]]:
    if max_p > cap:
        raise CapExceeded(f"max_p = {max_p} exceeds the cap {cap}")
    out = []
    for p in sympy.primerange(5, max_p + 1):
        out.extend((p, t) for t in nu_solutions_bruteforce(p))
    return out


@dataclass(frozen=True)
class DensityReport:
    max_p: int
    solvable_primes: tuple[int, ...]
    sporadic_primes: tuple[int, ...]
    counts: dict

    @property
    def ratio(self) -> QuadraticNumber:
        """#solvable primes / sqrt(max_p), exactly."""
        if self.max_p <= 0:
            return QuadraticNumber(0)
        return QuadraticNumber(len(self.solvable_primes)) / QuadraticNumber.sqrt(self.max_p)

    def ratio_decimal(self, digits: int = 6) -> str:
        return f"{float(self.ratio):.{digits}f}"


def density_report(max_p: int, cap: int = DEFAULT_CAP, method: str = "factor") -> DensityReport:
    if method == "factor":
        sols = birch_factor_scan(max_p, cap)
    elif method == "brute":
        sols = bruteforce_scan(max_p, cap)
    else:
        raise BadInput(f"unknown method {method!r}")
    counts = {FAMILY_QUADRATIC: 0, FAMILY_SQUARE: 0, SPORADIC: 0}
    for _, t in sols:
        counts[t.classification] += 1
    solvable = tuple(sorted({p for p, _ in sols}))
    sporadic = tuple(sorted({p for p, t in sols if t.classification == SPORADIC}))
    return DensityReport(max_p, solvable, sporadic, counts)
