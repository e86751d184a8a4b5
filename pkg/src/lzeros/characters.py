"""Dirichlet characters with exact root-of-unity exponents, and Ramanujan tau.

A character modulo k is stored as a tuple of exponents: entry n holds m with
chi(n) = exp(2 pi i m / phi(k)), or None when gcd(n, k) > 1.  Products of
characters and multiplicativity checks are therefore exact integer arithmetic.

Enumeration convention: (Z/kZ)* is split by the Chinese remainder theorem into
cyclic factors, one per odd prime power (generated by its smallest primitive
root) and up to two for the power of 2 (generated by -1 and 5).  Index j - 1 is
read in mixed radix over those factors, the first factor varying fastest, and
the character sends the i-th generator to exp(2 pi i c_i / ord_i).  For prime k
this is chi_j(g) = exp(2 pi i (j-1)/(k-1)) on the smallest primitive root g.
Value tables shipped in ``data/characters.json`` take precedence over the
convention for the (k, j) pairs they list.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from flint import acb, arb, fmpq, fmpz_poly

from .errors import InternalError
from .numerics import PrecisionContext
from .special import euler_phi, factorize

DEFAULT_CTX = PrecisionContext()


def _root_of_unity(m: int, order: int) -> acb:
    """exp(2 pi i m / order) with exact rational argument."""
    s, c = arb.sin_cos_pi_fmpq(fmpq(2 * m, order))
    return acb(c, s)


@dataclass(frozen=True)
class DirichletCharacter:
    """Character chi_{k,j} with exact exponents over phi(k)."""

    modulus: int
    index: int
    exponents: tuple
    phi: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "phi", euler_phi(self.modulus))
        if len(self.exponents) != self.modulus:
            raise ValueError("exponent table must have one entry per residue")

    # -- values --------------------------------------------------------------
    def exponent(self, n: int):
        """m with chi(n) = exp(2 pi i m/phi), or None when chi(n) = 0."""
        return self.exponents[int(n) % self.modulus]

    def value(self, n: int, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
        m = self.exponent(n)
        with ctx.working():
            if m is None:
                return acb(0)
            return _root_of_unity(m, self.phi)

    __call__ = value

    def values(self, ctx: PrecisionContext = DEFAULT_CTX) -> list:
        """chi(1), ..., chi(k) (chi(k) = 0 unless k = 1)."""
        return [self.value(n, ctx) for n in range(1, self.modulus + 1)]

    # -- structure -----------------------------------------------------------
    @property
    def order_a(self) -> int:
        """1 if chi(-1) = -1, else 0."""
        m = self.exponent(-1)
        return 1 if self.phi % 2 == 0 and m % self.phi == self.phi // 2 else 0

    @property
    def is_principal(self) -> bool:
        return all(m is None or m % self.phi == 0 for m in self.exponents)

    @property
    def is_real(self) -> bool:
        return all(m is None or (2 * m) % self.phi == 0 for m in self.exponents)

    def conjugate(self) -> "DirichletCharacter":
        exps = tuple(None if m is None else (-m) % self.phi for m in self.exponents)
        return DirichletCharacter(self.modulus, _index_of(self.modulus, exps), exps)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise ValueError("characters must share a modulus")
        exps = tuple(
            None if a is None or b is None else (a + b) % self.phi
            for a, b in zip(self.exponents, other.exponents)
        )
        return DirichletCharacter(self.modulus, _index_of(self.modulus, exps), exps)

    @property
    def conductor(self) -> int:
        return conductor(self)

    @property
    def primitive(self) -> bool:
        return is_primitive(self)

    def gauss_sum(self, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
        return gauss_sum(self, ctx)

    def __repr__(self):
        return f"DirichletCharacter(k={self.modulus}, j={self.index}, a={self.order_a})"


# ---------------------------------------------------------------------------
# group structure


def primitive_root(pe: int, p: int) -> int:
    """Smallest primitive root modulo the odd prime power pe = p^e."""
    phi = euler_phi(pe)
    prime_factors = [q for q, _ in factorize(phi)]
    for g in range(2, pe):
        if g % p == 0:
            continue
        if all(pow(g, phi // q, pe) != 1 for q in prime_factors):
            return g
    raise InternalError(f"no primitive root modulo {pe}")


def _crt_lift(residue: int, pe: int, k: int) -> int:
    """x with x = residue mod pe and x = 1 mod k/pe."""
    rest = k // pe
    if rest == 1:
        return residue % k
    # x = residue + pe*t, need x = 1 mod rest
    t = ((1 - residue) * pow(pe, -1, rest)) % rest
    return (residue + pe * t) % k


@lru_cache(maxsize=256)
def generators(k: int) -> tuple:
    """((generator mod k, order, discrete-log table on residues mod pe, pe), ...)."""
    gens = []
    for p, e in factorize(k):
        pe = p**e
        if p == 2:
            if e == 1:
                continue
            # -1 generates a factor of order 2
            logs_m1 = {}
            logs_5 = {}
            order5 = 1 if e == 2 else 2 ** (e - 2)
            for a in range(2):
                for b in range(order5):
                    r = (pow(-1, a) * pow(5, b, pe)) % pe
                    logs_m1[r] = a
                    logs_5[r] = b
            gens.append((_crt_lift(pe - 1, pe, k), 2, logs_m1, pe))
            if e >= 3:
                gens.append((_crt_lift(5, pe, k), order5, logs_5, pe))
        else:
            g = primitive_root(pe, p)
            order = euler_phi(pe)
            logs = {}
            x = 1
            for t in range(order):
                logs[x] = t
                x = (x * g) % pe
            gens.append((_crt_lift(g, pe, k), order, logs, pe))
    return tuple(gens)


def _exponents_from_digits(k: int, digits: list) -> tuple:
    phi = euler_phi(k)
    gens = generators(k)
    exps = []
    for n in range(k):
        if math.gcd(n, k) != 1:
            exps.append(None)
            continue
        m = 0
        for (g, order, logs, pe), c in zip(gens, digits):
            m += c * logs[n % pe] * (phi // order)
        exps.append(m % phi)
    if k == 1:
        exps = [0]
    return tuple(exps)


def _digits_of_index(k: int, j: int) -> list:
    idx = j - 1
    digits = []
    for g, order, logs, pe in generators(k):
        digits.append(idx % order)
        idx //= order
    return digits


@lru_cache(maxsize=None)
def _convention_table(k: int) -> dict:
    """Map exponent tuple -> index for the generator convention."""
    return {_exponents_from_digits(k, _digits_of_index(k, j)): j for j in range(1, euler_phi(k) + 1)}


def _index_of(k: int, exps: tuple) -> int:
    for (kk, j), fx in _fixtures().items():
        if kk == k and fx == exps:
            return j
    return _convention_table(k).get(exps, 0)


# ---------------------------------------------------------------------------
# fixtures

_fixture_lock = threading.Lock()
_fixture_cache: dict | None = None


def _fixtures() -> dict:
    global _fixture_cache
    with _fixture_lock:
        if _fixture_cache is None:
            text = resources.files("lzeros").joinpath("data/characters.json").read_text()
            table = {}
            for entry in json.loads(text)["characters"]:
                k = int(entry["k"])
                phi = int(entry["phi"])
                if phi != euler_phi(k):
                    raise InternalError(f"fixture for k={k} has wrong phi")
                table[(k, int(entry["j"]))] = tuple(entry["exponents"])
            _fixture_cache = table
        return _fixture_cache


def convention_character(k: int, j: int) -> DirichletCharacter:
    """chi_{k,j} from the generator convention alone (fixtures ignored)."""
    k, j = int(k), int(j)
    if k < 1:
        raise ValueError("modulus must be positive")
    phi = euler_phi(k)
    if not 1 <= j <= phi:
        raise IndexError(f"character index j={j} outside 1..{phi}")
    return DirichletCharacter(k, j, _exponents_from_digits(k, _digits_of_index(k, j)))


def build_character(k: int, j: int) -> DirichletCharacter:
    """chi_{k,j}: pinned fixture table when available, generator convention otherwise."""
    k, j = int(k), int(j)
    phi = euler_phi(k) if k >= 1 else 0
    if k < 1:
        raise ValueError("modulus must be positive")
    if not 1 <= j <= phi:
        raise IndexError(f"character index j={j} outside 1..{phi}")
    fx = _fixtures().get((k, j))
    if fx is not None:
        return DirichletCharacter(k, j, fx)
    return convention_character(k, j)


def principal_character(k: int) -> DirichletCharacter:
    return build_character(k, 1)


# ---------------------------------------------------------------------------
# Gauss sums and primitivity


def gauss_sum(chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """G(chi) = sum_{m=1}^{k} chi(m) exp(2 pi i m / k)."""
    k, phi = chi.modulus, chi.phi
    with ctx.working():
        total = acb(0)
        for m in range(1, k + 1):
            e = chi.exponent(m)
            if e is None:
                continue
            # exp(2 pi i (e/phi + m/k)) with an exact rational angle
            total += _root_of_unity(e * k + m * phi, phi * k)
        return ctx.finish(total)


def conductor(chi: DirichletCharacter) -> int:
    """Smallest d | k such that chi is trivial on units congruent to 1 mod d."""
    k = chi.modulus
    for d in sorted(x for x in range(1, k + 1) if k % x == 0):
        ok = True
        for n in range(1, k, d) if d < k else []:
            if math.gcd(n, k) == 1 and chi.exponent(n) % chi.phi != 0:
                ok = False
                break
        if ok:
            return d
    return k


def is_primitive(chi: DirichletCharacter, ctx: PrecisionContext | None = None) -> bool:
    """Conductor test, cross-checked against |G(chi)|^2 = k."""
    ctx = ctx or PrecisionContext(40)
    by_conductor = conductor(chi) == chi.modulus
    with ctx.working():
        g2 = abs(gauss_sum(chi, ctx)) ** 2
        by_gauss = bool(abs(g2 - chi.modulus) < arb(10) ** -20)
    if by_conductor != by_gauss:
        raise InternalError(f"primitivity tests disagree for {chi!r}")
    return by_conductor


# ---------------------------------------------------------------------------
# Ramanujan tau


@dataclass(frozen=True)
class RamanujanCoefficients:
    """tau(1..N) as exact integers; indexing is 1-based."""

    values: tuple

    @property
    def length(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= len(self.values):
            raise IndexError(f"tau({n}) outside the table 1..{len(self.values)}")
        return self.values[n - 1]


_tau_lock = threading.Lock()
_tau_cache: RamanujanCoefficients | None = None


def ramanujan_tau(N: int) -> RamanujanCoefficients:
    """Coefficients of q * prod (1 - q^n)^24 through q^N."""
    global _tau_cache
    N = int(N)
    if N < 1:
        raise ValueError("N must be >= 1")
    with _tau_lock:
        if _tau_cache is not None and len(_tau_cache) >= N:
            return RamanujanCoefficients(_tau_cache.values[:N])
        # prod (1 - q^n) through q^(N-1) from the pentagonal-number theorem
        coeffs = [0] * N
        m = 0
        while True:
            done = True
            for mm in ((m, -m) if m else (0,)):
                e = mm * (3 * mm - 1) // 2
                if e < N:
                    coeffs[e] += -1 if mm % 2 else 1
                    done = False
            if done and m > 0:
                break
            m += 1
        eta = fmpz_poly(coeffs)
        delta = eta.pow_trunc(24, N)
        vals = [int(c) for c in delta.coeffs()] + [0] * N
        table = RamanujanCoefficients(tuple(vals[:N]))
        _tau_cache = table
        return table
