"""Exact formal q-series engine.

Laurent series in q^{1/D} and half-integer powers of zeta_i = e^{2 pi i z_i}
with Gaussian-rational coefficients, used to prove identities at finite
order by exact coefficient comparison.  Global phase prefactors (powers of
e^{2 pi i t}) are stripped by the callers before comparison.

The Appell expansions follow the annulus convention |q| < |zeta| < 1:
denominators 1 - w with w carrying positive q-power (or none and a positive
zeta power) expand geometrically in w; those with w "large" expand as
-w^{-1}/(1 - w^{-1}).  The j = 0 denominator of an Appell sum is a pure
zeta geometric series, so every series carries a zeta window `zmax` inside
which its coefficients are guaranteed exact; arithmetic tracks the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .qkernel import HalfInt, UnsupportedCaseError


@dataclass(frozen=True)
class GRat:
    """Gaussian rational a + b*i with exact rational a, b."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, o):
        return GRat(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return GRat(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return GRat(self.re * o.re - self.im * o.im,
                    self.re * o.im + self.im * o.re)

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def as_complex(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else ''}{self.im}i"


GR_ZERO = GRat()
GR_ONE = GRat(Fraction(1))


def unit_phase(r: Fraction) -> GRat:
    """e^{2 pi i r} for r in (1/4)Z, as an exact Gaussian rational."""
    x = (r * 4) % 4
    if x.denominator != 1:
        raise UnsupportedCaseError(f"phase exponent {r} is not a quarter integer")
    return {0: GRat(Fraction(1)), 1: GRat(Fraction(0), Fraction(1)),
            2: GRat(Fraction(-1)), 3: GRat(Fraction(0), Fraction(-1))}[int(x)]


class FormalSeries:
    """terms: {(alpha, b1, b2): GRat} with alpha in Q (power of q) and
    b1, b2 integer *twice* the zeta exponents.  `order` bounds the stored
    q-exponents; `zmax` (also in twice units, None = unlimited) bounds the
    zeta window within which coefficients are exact."""

    __slots__ = ("terms", "order", "zmax")

    def __init__(self, terms=None, order=Fraction(10), zmax=None):
        self.terms = {}
        self.order = Fraction(order)
        self.zmax = zmax
        if terms:
            for k, c in terms.items():
                if c and k[0] <= self.order:
                    self.terms[k] = c

    @staticmethod
    def constant(c=GR_ONE, order=Fraction(10)):
        return FormalSeries({(Fraction(0), 0, 0): c}, order)

    def zspan(self) -> int:
        return max((max(abs(b1), abs(b2)) for (_, b1, b2) in self.terms), default=0)

    def _add_term(self, key, c):
        if not c:
            return
        cur = self.terms.get(key)
        new = cur + c if cur is not None else c
        if new:
            self.terms[key] = new
        elif cur is not None:
            del self.terms[key]

    def __add__(self, other):
        order = min(self.order, other.order)
        zmax = _zmin(self.zmax, other.zmax)
        out = FormalSeries(None, order, zmax)
        for k, c in self.terms.items():
            if k[0] <= order:
                out._add_term(k, c)
        for k, c in other.terms.items():
            if k[0] <= order:
                out._add_term(k, c)
        return out

    def __neg__(self):
        out = FormalSeries(None, self.order, self.zmax)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: GRat):
        out = FormalSeries(None, self.order, self.zmax)
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def __mul__(self, other):
        min_q_self = min((k[0] for k in self.terms), default=Fraction(0))
        min_q_other = min((k[0] for k in other.terms), default=Fraction(0))
        order = min(self.order + min_q_other, other.order + min_q_self)
        zmax = None
        cands = []
        if self.zmax is not None:
            cands.append(self.zmax - other.zspan())
        if other.zmax is not None:
            cands.append(other.zmax - self.zspan())
        if cands:
            zmax = min(cands)
        out = FormalSeries(None, order, zmax)
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                a = a1 + a2
                if a <= order:
                    out._add_term((a, b1 + b2, c1 + c2), x * y)
        return out

    def d0(self) -> "FormalSeries":
        """Termwise (1/2 pi i)(d/dz1 - d/dz2): multiplies each monomial by
        the difference of its zeta exponents."""
        out = FormalSeries(None, self.order, self.zmax)
        for (a, b1, b2), c in self.terms.items():
            w = Fraction(b1 - b2, 2)
            if w:
                out.terms[(a, b1, b2)] = c * GRat(w)
        return out

    def eval_at(self, tau: complex, z1: complex = 0.0, z2: complex = 0.0) -> complex:
        """Numerical value of the truncated series at a point."""
        import cmath

        tot = 0.0 + 0.0j
        for (a, b1, b2), c in self.terms.items():
            tot += c.as_complex() * cmath.exp(
                2j * math.pi * (tau * Fraction(a) + z1 * Fraction(b1, 2) + z2 * Fraction(b2, 2)))
        return tot


def _zmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_equal(a: FormalSeries, b: FormalSeries, zwindow: int | None = None):
    """Exact coefficient comparison up to min(order) within the common
    guaranteed zeta window.  Returns (equal, first difference or None)."""
    order = min(a.order, b.order)
    zmax = _zmin(a.zmax, b.zmax)
    if zwindow is not None:
        zmax = _zmin(zmax, 2 * zwindow)
    keys = set(a.terms) | set(b.terms)
    diffs = []
    for k in keys:
        alpha, b1, b2 = k
        if alpha > order:
            continue
        if zmax is not None and max(abs(b1), abs(b2)) > zmax:
            continue
        ca = a.terms.get(k, GR_ZERO)
        cb = b.terms.get(k, GR_ZERO)
        if ca.re != cb.re or ca.im != cb.im:
            diffs.append((k, ca, cb))
    if not diffs:
        return True, None
    diffs.sort(key=lambda d: (d[0][0], d[0][1], d[0][2]))
    return False, diffs[0]


@dataclass(frozen=True)
class ZArg:
    """Affine argument u = a1*z1 + a2*z2 + c with half-integer data."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    @staticmethod
    def of(a1, a2, c=0) -> "ZArg":
        return ZArg(Fraction(a1), Fraction(a2), Fraction(c))


Z1 = ZArg.of(1, 0)
Z2 = ZArg.of(0, 1)


def _zeta_monomial(t: Fraction, arg: ZArg):
    """e^{2 pi i t u} as (b1_twice, b2_twice, phase)."""
    b1 = t * arg.a1 * 2
    b2 = t * arg.a2 * 2
    if b1.denominator != 1 or b2.denominator != 1:
        raise UnsupportedCaseError(
            f"zeta exponent {t}*({arg.a1},{arg.a2}) leaves (1/2)Z")
    return int(b1), int(b2), unit_phase(t * arg.c)


def expand_theta(j, m, order, tau_scale=1, z: ZArg = Z1, t_weight=None) -> FormalSeries:
    """Theta_{j,m}(tau_scale * tau, u(z)) as a formal series; terms
    q^{tau_scale * m n^2} zeta^{m n * u} over n in Z + j/2m."""
    j = HalfInt.of(j)
    m = HalfInt.of(m)
    if m.twice <= 0:
        raise ValueError("degree m must be positive")
    order = Fraction(order)
    scale = Fraction(tau_scale)
    mv = m.value
    base = Fraction(j.twice, 2 * m.twice)
    base -= math.floor(base)
    out = FormalSeries(None, order)
    k = 0
    while True:
        hit = False
        for n in {base + k, base - k}:
            alpha = scale * mv * n * n
            if alpha <= order:
                hit = True
                b1, b2, ph = _zeta_monomial(mv * n, z)
                out._add_term((alpha, b1, b2), ph)
        if not hit and k > 0:
            break
        k += 1
    return out


def expand_eta_quotient(power: int, order, tau_scale=1) -> FormalSeries:
    """(q^{1/24} prod (1-q^n))^power for power >= 1, at tau_scale * tau."""
    order = Fraction(order)
    scale = Fraction(tau_scale)
    out = FormalSeries.constant(GR_ONE, order)
    n = 1
    while scale * n <= order:
        fac = FormalSeries({(Fraction(0), 0, 0): GR_ONE,
                            (scale * n, 0, 0): -GR_ONE}, order)
        for _ in range(power):
            out = out * fac
        n += 1
    shift = FormalSeries({(scale * Fraction(power, 24), 0, 0): GR_ONE}, order + scale * Fraction(power, 24))
    return shift * out


def expand_phi1(m, s, order, tau_scale=1, z1: ZArg = Z1, z2: ZArg = Z2,
                zcap: int = 24, sign: int = 1) -> FormalSeries:
    """Phi_1^{[m;s]}(tau_scale * tau, u1(z), u2(z)) expanded in the annulus
    regime.  zcap bounds the zeta degree kept for the q^0 geometric pieces;
    the result's zmax records the guaranteed-exact window."""
    m = HalfInt.of(m)
    s = HalfInt.of(s)
    if m.twice <= 0:
        raise ValueError("degree m must be positive")
    mv, sv = m.value, s.value
    order = Fraction(order)
    scale = Fraction(tau_scale)
    out = FormalSeries(None, order, zmax=2 * zcap)

    def add_j(j: int) -> bool:
        base_q = scale * (mv * j * j + sv * j)
        if base_q > order:
            return False
        # numerator monomial e^{2 pi i (m j (u1+u2) + s u1)} q^{base_q}
        zsum = ZArg(z1.a1 + z2.a1, z1.a2 + z2.a2, z1.c + z2.c)
        nb1, nb2, nph = _zeta_monomial(mv * j, zsum)
        sb1, sb2, sph = _zeta_monomial(sv, z1)
        nb1 += sb1
        nb2 += sb2
        nph = nph * sph
        if sign < 0 and j % 2:
            nph = -nph
        # denominator 1 - w, w = e^{2 pi i u1} q^{scale*j}
        wq = scale * j
        wb1, wb2, wph = _zeta_monomial(Fraction(1), z1)
        if wq > 0 or (wq == 0 and (wb1, wb2) > (0, 0)):
            small_q, small_b1, small_b2, small_ph = wq, wb1, wb2, wph
            lead_q, lead_b = Fraction(0), (0, 0)
            lead_ph = GR_ONE
            neg = False
        elif wq < 0 or (wq == 0 and (wb1, wb2) < (0, 0)):
            # 1/(1-w) = -w^{-1}/(1 - w^{-1})
            small_q, small_b1, small_b2 = -wq, -wb1, -wb2
            small_ph = unit_phase(-Fraction(1) * z1.c)
            lead_q, lead_b, lead_ph = small_q, (small_b1, small_b2), -small_ph
            neg = True
        else:
            raise UnsupportedCaseError("denominator is constant; index unsupported")
        r = 0
        while True:
            a = base_q + lead_q + small_q * r
            if a > order:
                break
            b1 = nb1 + lead_b[0] + small_b1 * r
            b2 = nb2 + lead_b[1] + small_b2 * r
            if max(abs(b1), abs(b2)) > 2 * zcap + 2 * abs(lead_b[0]) + 2:
                break
            ph = nph * lead_ph
            for _ in range(r):
                ph = ph * small_ph
            out._add_term((a, b1, b2), ph)
            r += 1
            if small_q == 0 and r > 2 * zcap + 4:
                break
        return True

    add_j(0)
    j = 1
    while add_j(j):
        j += 1
    j = -1
    while add_j(j):
        j -= 1
    return out


def expand_phi(m, s, order, tau_scale=1, z1: ZArg = Z1, z2: ZArg = Z2,
               zcap: int = 24, sign: int = 1) -> FormalSeries:
    """Assembled Phi^{[m;s]} (t-prefactor stripped): Phi_1(u1, u2) minus
    Phi_1 at the swap-negated arguments."""
    a = expand_phi1(m, s, order, tau_scale, z1, z2, zcap, sign)
    nz1 = ZArg(-z2.a1, -z2.a2, -z2.c)
    nz2 = ZArg(-z1.a1, -z1.a2, -z1.c)
    b = expand_phi1(m, s, order, tau_scale, nz1, nz2, zcap, sign)
    return a - b


def expand_jacobi_theta(a: int, b: int, order, tau_scale=1, z: ZArg = Z1) -> FormalSeries:
    """theta_ab as the degree-2 combination of Theta_{j,2}."""
    combos = {(0, 0): ((2, GR_ONE), (0, GR_ONE)),
              (0, 1): ((2, -GR_ONE), (0, GR_ONE)),
              (1, 0): ((1, GR_ONE), (-1, GR_ONE)),
              (1, 1): ((1, GRat(Fraction(0), Fraction(1))), (-1, GRat(Fraction(0), Fraction(-1))))}
    if (a, b) not in combos:
        raise ValueError("Jacobi theta labels must be 0 or 1")
    out = FormalSeries(None, Fraction(order))
    for j, c in combos[(a, b)]:
        out = out + expand_theta(j, 2, order, tau_scale, z).scale(c)
    return out
