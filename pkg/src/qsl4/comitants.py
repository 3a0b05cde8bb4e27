"""Affine comitants of a quadratic system.

Every quantity is a polynomial in (x, y) with coefficients computed from the
twelve system coefficients.  :class:`ComitantBundle` evaluates them lazily and
caches the results per system.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InternalInconsistency
from .exactpoly import MPoly, binary_discriminant, determinant, hessian, jacobian, substitute, sylvester_resultant
from .exactpoly import transvectant as T
from .system import QuadSystem

XY = ("x", "y")

# theta is half the quadratic discriminant used for mu (calibrated on the S_I family)
THETA_SCALE = Fraction(1, 2)


@dataclass(frozen=True)
class ComitantMeta:
    degree_a: int
    degree_xy: int
    weight: int
    # names of comitants whose joint vanishing makes this one translation invariant;
    # empty means invariant everywhere
    ct_variety: tuple[str, ...] = ()


META: dict[str, ComitantMeta] = {
    "eta": ComitantMeta(4, 0, 2),
    "mu": ComitantMeta(4, 0, 2),
    "theta": ComitantMeta(4, 0, 2),
    "C2": ComitantMeta(1, 3, -1),
    "H": ComitantMeta(2, 2, 0),
    "K": ComitantMeta(2, 2, 0),
    "M": ComitantMeta(2, 2, 0),
    "N": ComitantMeta(2, 2, 0),
    "D": ComitantMeta(3, 3, -1),
    "B1": ComitantMeta(12, 0, 3),
    "B2": ComitantMeta(8, 4, 0),
    "B3": ComitantMeta(4, 4, -1),
    "H1": ComitantMeta(6, 0, 2),
    "H2": ComitantMeta(3, 2, 0),
    "H3": ComitantMeta(4, 2, 0),
    "H4": ComitantMeta(6, 0, 2),
    "H10": ComitantMeta(6, 0, 2),
    "H5": ComitantMeta(8, 0, 2),
    "H8": ComitantMeta(8, 0, 2),
    "H6": ComitantMeta(8, 6, 0),
    "H7": ComitantMeta(3, 0, 1),
    "H9": ComitantMeta(12, 0, 2),
    "H11": ComitantMeta(6, 4, 0),
    "N1": ComitantMeta(3, 4, -1, ("eta", "N", "K")),
    "N2": ComitantMeta(3, 1, 0, ("eta", "N", "K", "B3")),
    "N3": ComitantMeta(2, 3, -1, ("M", "N")),
    "N4": ComitantMeta(2, 2, -1, ("M", "N", "N3")),
    "N5": ComitantMeta(4, 2, 0, ("eta", "N", "K", "B3")),
    "N6": ComitantMeta(3, 3, -1, ("M", "theta", "B3")),
    "D1": ComitantMeta(1, 0, 0, ("M", "N")),
}

SCALAR_NAMES = ("eta", "mu", "theta", "B1", "H1", "H4", "H5", "H7", "H8", "H9", "H10", "D1")
ALL_NAMES = (
    "C0", "C1", "C2", "D1", "D2",
    "M", "eta", "K", "mu", "H", "N", "theta", "D",
    "B1", "B2", "B3",
    "H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "H9", "H10", "H11",
    "N1", "N2", "N3", "N4", "N5", "N6",
)


def _scalar(f: MPoly) -> Fraction:
    if not f.is_const():
        raise InternalInconsistency(f"expected an invariant, got {f}")
    return f.const_value()


def _const(c) -> MPoly:
    return MPoly.const(Fraction(c), XY)


def _as_poly(v) -> MPoly:
    return v if isinstance(v, MPoly) else _const(v)


# ---------------------------------------------------------------------- building blocks

def base_comitants(S: QuadSystem) -> dict:
    x, y = MPoly.gens(XY)
    out = {}
    for i in range(3):
        p, q = S.p_i(i), S.q_i(i)
        out[f"C{i}"] = y * p - x * q
        if i:
            d = p.diff("x") + q.diff("y")
            out[f"D{i}"] = d.const_value() if i == 1 else d
    return out


def _c_matrix(S: QuadSystem) -> list[list[MPoly]]:
    """The symmetric pencil alpha*A + beta*B at alpha = -y, beta = x."""
    x, y = MPoly.gens(XY)
    al, be = -y, x
    h = Fraction(1, 2)
    c11 = al * S.a20 + be * S.b20
    c12 = al * S.a11 + be * S.b11
    c22 = al * S.a02 + be * S.b02
    c13 = al * (S.a10 * h) + be * (S.b10 * h)
    c23 = al * (S.a01 * h) + be * (S.b01 * h)
    c33 = al * S.a00 + be * S.b00
    return [[c11, c12, c13], [c12, c22, c23], [c13, c23, c33]]


def quadratic_form_comitants(S: QuadSystem) -> dict:
    b = base_comitants(S)
    C2 = b["C2"]
    M = hessian(C2) * 2
    K = jacobian(S.p_i(2), S.q_i(2))
    c = _c_matrix(S)
    H = (c[0][0] * c[1][1] - c[0][1] * c[0][1]) * 4
    N = K + H
    # odd in (alpha, beta): the sign is the one matching the reference closed forms
    D = _as_poly(determinant(c)) * (-4)
    return {
        "M": M,
        "eta": binary_discriminant(C2) if C2 else Fraction(0),
        "K": K,
        "mu": binary_discriminant(K) if K else Fraction(0),
        "H": H,
        "N": N,
        "theta": binary_discriminant(N) * THETA_SCALE if N else Fraction(0),
        "D": D,
    }


def binary_resultant(f: MPoly, g: MPoly, n: int, m: int) -> Fraction:
    """Resultant of two binary forms of formal degrees n and m (scalar)."""
    one = _const(1)
    fa = substitute(f, {"y": one}, vars=XY)
    ga = substitute(g, {"y": one}, vars=XY)
    return _scalar(sylvester_resultant(fa, ga, "x", degrees=(n, m)))


# ---------------------------------------------------------------------- the bundle

class ComitantBundle:
    """Lazily evaluated, cached comitants of one system.

    Access by attribute (``bundle.B3``) or item (``bundle["B3"]``).  Names not
    used by any decision are still available for reporting.
    """

    def __init__(self, S: QuadSystem):
        self.system = S
        self._cache: dict[str, object] = {}

    def __getitem__(self, name: str):
        if name not in self._cache:
            if name in ("C0", "C1", "C2", "D1", "D2"):
                self._cache.update(base_comitants(self.system))
            elif name in ("M", "eta", "K", "mu", "H", "N", "theta", "D"):
                self._cache.update(quadratic_form_comitants(self.system))
            else:
                fn = _FORMULAS.get(name)
                if fn is None:
                    raise KeyError(name)
                self._cache[name] = fn(self)
        return self._cache[name]

    def __getattr__(self, name: str):
        if name.startswith("_"):
            raise AttributeError(name)
        try:
            return self[name]
        except KeyError:
            raise AttributeError(name) from None

    def poly(self, name: str) -> MPoly:
        return _as_poly(self[name])

    def as_dict(self) -> dict:
        return {n: self[n] for n in ALL_NAMES}

    meta = META


def _t(a, b, k):
    return T(_as_poly(a), _as_poly(b), k)


def _B3(c: ComitantBundle):
    return _t(c.C2, c.D, 1)


def _B2(c: ComitantBundle):
    return _t(c.B3, c.B3, 2) - c.B3 * _t(c.C2, c.D, 3) * 6


def _B1(c: ComitantBundle):
    by_res = binary_resultant(c.C2, c.D, 3, 3) if c.C2 and c.D else Fraction(0)
    by_tv = _scalar(_t(c.B2, c.B3, 4)) * Fraction(-1, 2 ** 9 * 3 ** 8) if c.B3 else Fraction(0)
    if by_res != by_tv:
        raise InternalInconsistency(f"B1 formulas disagree: {by_res} vs {by_tv}")
    return by_res


def _H1(c):
    return -_scalar(_t(_t(_t(c.C2, c.C2, 2), c.C2, 1), c.D, 3))


def _H2(c):
    return _t(c.C1, c.H * 2 - c.N, 1) - c.N * (2 * c.D1)


def _H3(c):
    return _t(c.C2, c.D, 2)


def _H4(c):
    return _scalar(_t(_t(c.C2, c.D, 2), _t(c.C2, c.D2, 1), 2))


def _H5(c):
    return _scalar(_t(_t(c.C2, c.C2, 2), _t(c.D, c.D, 2), 2) + _t(_t(c.C2, c.D, 2), _t(c.D, c.D2, 1), 2) * 8)


def _H6(c):
    return c.N * c.N * _t(c.C2, c.D, 2) * 16 + c.H2 * c.H2 * _t(c.C2, c.C2, 2)


def _H7(c):
    return _scalar(_t(c.N, c.C1, 2))


def _H8(c):
    return _scalar(_t(_t(c.C2, c.D, 2), _t(c.D, c.D2, 1), 2) * 9 + _t(c.C2, c.D, 3) ** 2 * 2)


def _H9(c):
    return -_scalar(_t(_t(_t(c.D, c.D, 2), c.D, 1), c.D, 3))


def _H10(c):
    return _scalar(_t(_t(c.N, c.D, 2), c.D2, 1))


def _H11(c):
    # weight 8 on the second bracket term is forced by the reference closed forms
    return c.H * (_t(c.C2, c.D, 2) + _t(c.D, c.D2, 1) * 8) * 8 + c.H2 * c.H2 * 3


def _N1(c):
    return c.C1 * _t(c.C2, c.C2, 2) - c.C2 * _t(c.C1, c.C2, 2) * 2


def _N2(c):
    return _t(c.C1, c.C2, 2) * c.D1 - _t(_t(c.C2, c.C2, 2), c.C0, 1)


def _N3(c):
    return _t(c.C2, c.C1, 1)


def _N4(c):
    return _t(c.C2, c.C0, 1) * 4 - c.C1 * (3 * c.D1)


def _N5(c):
    a = _t(c.D2, c.C1, 1) + c.D2 * c.D1
    return a * a - _t(c.C2, c.C2, 2) * _t(c.C0, c.D2, 1) * 4


def _N6(c):
    return c.D * 8 + c.C2 * (_t(c.C0, c.D2, 1) * 8 - _t(c.C1, c.C1, 2) * 3 + c.D1 * c.D1 * 2)


_FORMULAS: dict[str, Callable[[ComitantBundle], object]] = {
    "B1": _B1, "B2": _B2, "B3": _B3,
    "H1": _H1, "H2": _H2, "H3": _H3, "H4": _H4, "H5": _H5, "H6": _H6,
    "H7": _H7, "H8": _H8, "H9": _H9, "H10": _H10, "H11": _H11,
    "N1": _N1, "N2": _N2, "N3": _N3, "N4": _N4, "N5": _N5, "N6": _N6,
}


def comitants(S: QuadSystem) -> ComitantBundle:
    return ComitantBundle(S)


def b_comitants(S: QuadSystem) -> dict:
    c = ComitantBundle(S)
    return {"B1": c.B1, "B2": c.B2, "B3": c.B3}


def h_comitants(S: QuadSystem) -> dict:
    c = ComitantBundle(S)
    return {f"H{i}": c[f"H{i}"] for i in range(1, 12)}


def n_comitants(S: QuadSystem) -> dict:
    c = ComitantBundle(S)
    return {f"N{i}": c[f"N{i}"] for i in range(1, 7)}
