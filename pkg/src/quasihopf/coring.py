"""Corings over a base ring and their comodules.

The tensor product over the base ring is represented concretely: maps
land in the plain tensor product, and equality is decided modulo the
span of the balancing relations (x.r) (x) y - x (x) (r.y) by exact row
reduction.  This makes coassociativity over the base ring a finite,
checkable statement.
"""

from __future__ import annotations

from . import linalg
from .errors import AntipodeRequired, ShapeMismatch
from .comodule import BicomoduleAlgebra, ComoduleAlgebra
from .hopf import QuasiHopfAlgebra, drinfeld_twist
from .modcoalg import ModuleCoalgebra
from .report import CheckReport
from .tensor import El, FinAlgebra, LinMap, Tensor, apply_linear_map


class Coring:
    """Bimodule over a base ring with a comultiplication representative
    into the plain tensor square and a counit into the base ring."""

    def __init__(self, R: FinAlgebra, dim: int, left_action: LinMap,
                 right_action: LinMap, comult: LinMap, counit: LinMap, name=""):
        if left_action.src != (R.dim, dim) or left_action.dst != (dim,):
            raise ShapeMismatch("left action must map R x C -> C")
        if right_action.src != (dim, R.dim) or right_action.dst != (dim,):
            raise ShapeMismatch("right action must map C x R -> C")
        if comult.src != (dim,) or comult.dst != (dim, dim):
            raise ShapeMismatch("comultiplication representative has wrong shape")
        if counit.src != (dim,) or counit.dst != (R.dim,):
            raise ShapeMismatch("counit must land in the base ring")
        self.R = R
        self.dim = dim
        self.field = R.field
        self.left_action = left_action
        self.right_action = right_action
        self.comult = comult
        self.counit = counit
        self.name = name
        self._two = None
        self._three = None

    def act_left(self, r_idx: int, vec: Tensor, leg=0) -> Tensor:
        basis_r = Tensor.basis(self.field, (self.R.dim,), (r_idx,))
        return apply_linear_map(self.left_action, basis_r.outer(vec),
                                (0, leg + 1), at=leg)

    def act_right(self, vec: Tensor, r_idx: int, leg=0) -> Tensor:
        basis_r = Tensor.basis(self.field, (self.R.dim,), (r_idx,))
        return apply_linear_map(self.right_action, vec.outer(basis_r),
                                (leg, vec.arity), at=leg)

    def balancing_reducer(self, arity: int) -> linalg.SpanReducer:
        """Reducer modulo the balancing relations in the arity-fold
        plain tensor power of the carrier."""
        if arity == 2 and self._two is not None:
            return self._two
        if arity == 3 and self._three is not None:
            return self._three
        dims = (self.dim,) * arity
        total = self.dim ** arity
        rows = []
        for gap in range(arity - 1):
            for r in range(self.R.dim):
                for left in range(self.dim):
                    for right in range(self.dim):
                        x = Tensor.basis(self.field, (self.dim,), (left,))
                        y = Tensor.basis(self.field, (self.dim,), (right,))
                        moved = self.act_right(x, r).outer(y) - \
                            x.outer(self.act_left(r, y))
                        for rest in _rest_indices(self.dim, arity - 2):
                            vec = _place_pair(self.field, dims, moved, gap, rest)
                            rows.append(vec.to_flat())
        reducer = linalg.SpanReducer(self.field, rows, total)
        if arity == 2:
            self._two = reducer
        elif arity == 3:
            self._three = reducer
        return reducer

    def __repr__(self):
        return "Coring(dim=%d over dim=%d%s)" % (
            self.dim, self.R.dim, ", %r" % self.name if self.name else "")


def _rest_indices(dim, count):
    out = [()]
    for _ in range(count):
        out = [idx + (i,) for idx in out for i in range(dim)]
    return out


def _place_pair(field, dims, pair: Tensor, gap: int, rest) -> Tensor:
    """Embed a two-leg tensor at legs (gap, gap+1), basis vectors from
    ``rest`` at the remaining legs."""
    out = Tensor(field, dims)
    rest_iter = list(rest)
    for (a, b), v in pair.data.items():
        idx = []
        r = 0
        for leg in range(len(dims)):
            if leg == gap:
                idx.append(a)
            elif leg == gap + 1:
                idx.append(b)
            else:
                idx.append(rest_iter[r])
                r += 1
        out.data[tuple(idx)] = v
    return out


def verify_coring(X: Coring, jobs: int = 1) -> CheckReport:
    report = CheckReport("coring %s" % (X.name or ""))
    field = X.field
    red2 = X.balancing_reducer(2)

    witness = None
    for r in range(X.R.dim):
        for c in range(X.dim):
            base = X.comult.column((c,))
            lhs = apply_linear_map(
                X.comult, X.act_left(r, Tensor.basis(field, (X.dim,), (c,))), (0,))
            rhs = X.act_left(r, base, leg=0)
            if red2.reduce(lhs.to_flat()) != red2.reduce(rhs.to_flat()):
                witness = ("left", r, c)
                break
            lhs = apply_linear_map(
                X.comult, X.act_right(Tensor.basis(field, (X.dim,), (c,)), r), (0,))
            rhs = X.act_right(base, r, leg=1)
            if red2.reduce(lhs.to_flat()) != red2.reduce(rhs.to_flat()):
                witness = ("right", r, c)
                break
        if witness:
            break
    report.add("comult-bilinear", witness is None, witness=witness)

    witness = None
    for r in range(X.R.dim):
        for c in range(X.dim):
            e_c = Tensor.basis(field, (X.dim,), (c,))
            lhs = apply_linear_map(X.counit, X.act_left(r, e_c), (0,))
            rhs = X.R.product(Tensor.basis(field, (X.R.dim,), (r,)),
                              X.counit.column((c,)))
            if lhs != rhs:
                witness = ("left", r, c)
                break
            lhs = apply_linear_map(X.counit, X.act_right(e_c, r), (0,))
            rhs = X.R.product(X.counit.column((c,)),
                              Tensor.basis(field, (X.R.dim,), (r,)))
            if lhs != rhs:
                witness = ("right", r, c)
                break
        if witness:
            break
    report.add("counit-bilinear", witness is None, witness=witness)

    red3 = X.balancing_reducer(3)
    witness = None
    for c in range(X.dim):
        two = X.comult.column((c,))
        left = apply_linear_map(X.comult, two, (0,))
        right = apply_linear_map(X.comult, two, (1,))
        if red3.reduce(left.to_flat()) != red3.reduce(right.to_flat()):
            witness = (c,)
            break
    report.add("coassociative", witness is None, witness=witness)

    witness = None
    for c in range(X.dim):
        two = X.comult.column((c,))
        e_c = Tensor.basis(field, (X.dim,), (c,))
        # (counit (x) id): r . y summed
        acc_left = Tensor(field, (X.dim,))
        acc_right = Tensor(field, (X.dim,))
        for (a, b), v in two.data.items():
            eps_a = X.counit.column((a,))
            for (r,), w in eps_a.data.items():
                acc_left = acc_left + X.act_left(
                    r, Tensor.basis(field, (X.dim,), (b,))).scale(v * w)
            eps_b = X.counit.column((b,))
            for (r,), w in eps_b.data.items():
                acc_right = acc_right + X.act_right(
                    Tensor.basis(field, (X.dim,), (a,)), r).scale(v * w)
        if acc_left != e_c:
            witness = ("left", c)
            break
        if acc_right != e_c:
            witness = ("right", c)
            break
    report.add("counit-law", witness is None, witness=witness)
    return report


def trivial_coring(R: FinAlgebra) -> Coring:
    """The base ring over itself with the identity comultiplication."""
    field = R.field
    d = R.dim
    left = LinMap(field, (d, d), (d,), R.mult.cols)
    right = LinMap(field, (d, d), (d,), R.mult.cols)

    def comult_fn(idx):
        # c maps to c (x) 1, a representative of the canonical element
        return Tensor.basis(field, (d,), idx).outer(R.unit)

    comult = LinMap.from_function(field, (d,), (d, d), comult_fn)
    counit = LinMap.identity(field, (d,))
    return Coring(R, d, left, right, comult, counit, name="trivial")


def build_coring(kind: str, **inputs) -> Coring:
    """The three derived corings: over a left comodule algebra with a
    right module coalgebra ("BC"), over a right comodule algebra with a
    left module coalgebra ("CA"), and over a bicomodule algebra with a
    bimodule coalgebra ("YD")."""
    if kind == "BC":
        return _coring_bc(inputs["B"], inputs["C"])
    if kind == "CA":
        return _coring_ca(inputs["A"], inputs["C"])
    if kind == "YD":
        return _coring_yd(inputs["A"], inputs["C"])
    raise ShapeMismatch("unknown coring kind %r" % (kind,))


def _coring_bc(B: ComoduleAlgebra, C: ModuleCoalgebra) -> Coring:
    if B.side != "left" or C.side != "right":
        raise ShapeMismatch("needs a left comodule algebra and right module coalgebra")
    field = B.field
    dB, dC = B.alg.dim, C.dim
    N = dB * dC

    def pair(b, c):
        return b * dC + c

    def left_fn(idx):
        r, n = idx
        b, c = divmod(n, dC)
        out = {}
        for (k,), v in B.alg.basis_product(r, b).data.items():
            out[(pair(k, c),)] = v
        return out

    left = LinMap.from_function(field, (dB, N), (N,), left_fn)

    def right_fn(idx):
        n, r = idx
        b, c = divmod(n, dC)
        e = El.basis((B.alg,), (r,)).map(B.coaction, 0)   # r-1, r0
        e = e.times(El.basis((B.alg,), (b,))).times(El.basis((C.space,), (c,)))
        e = e.merge(2, 1)                                 # b r0
        e = e.map(C.right_action, (2, 0), at=1)           # c . r-1
        return e.t.fuse([[0, 1]])

    right = LinMap.from_function(field, (N, dB), (N,), right_fn)

    # (b x3 (x) c2 . x2) (x) (1 (x) c1 . x1)
    def comult_rep(idx):
        b, c = divmod(idx[0], dC)
        e = B.re_inv_el()
        e = e.times(El.basis((B.alg,), (b,))).times(El.basis((C.space,), (c,)))
        e = e.map(C.comult, 4)            # x1 x2 xB b c1 c2
        e = e.merge(3, 2)                 # b . x3 -> x1 x2 bx3 c1 c2
        e = e.map(C.right_action, (4, 1), at=3)  # c2 . x2 -> x1 bx3 c1 c2x2
        e = e.map(C.right_action, (2, 0), at=1)  # c1 . x1 -> bx3 c1x1 c2x2
        out = Tensor(field, (N, N))
        for (bb, c1, c2), v in e.t.data.items():
            for (u,), w in B.alg.unit.data.items():
                key = (pair(bb, c2), pair(u, c1))
                cur = out.data.get(key, field.zero) + v * w
                if cur:
                    out.data[key] = cur
                else:
                    out.data.pop(key, None)
        return out

    comult = LinMap.from_function(field, (N,), (N, N), comult_rep)

    def counit_fn(idx):
        b, c = divmod(idx[0], dC)
        eps = C.counit.column((c,)).get(())
        return {(b,): eps} if eps else {}

    counit = LinMap.from_function(field, (N,), (dB,), counit_fn)
    return Coring(B.alg, N, left, right, comult, counit,
                  name="BC(%s,%s)" % (B.name or "B", C.name or "C"))


def _coring_ca(A: ComoduleAlgebra, C: ModuleCoalgebra) -> Coring:
    if A.side != "right" or C.side != "left":
        raise ShapeMismatch("needs a right comodule algebra and left module coalgebra")
    field = A.field
    dA, dC = A.alg.dim, C.dim
    N = dC * dA

    def pair(c, a):
        return c * dA + a

    def left_fn(idx):
        r, n = idx
        c, a = divmod(n, dA)
        e = El.basis((A.alg,), (r,)).map(A.coaction, 0)   # r0 r1
        e = e.times(El.basis((C.space,), (c,))).times(El.basis((A.alg,), (a,)))
        e = e.map(C.left_action, (1, 2), at=1)            # r0 (r1.c) a
        e = e.merge(0, 2)                                 # r0 a
        return e.perm((1, 0)).t.fuse([[0, 1]])

    left = LinMap.from_function(field, (dA, N), (N,), left_fn)

    def right_fn(idx):
        n, r = idx
        c, a = divmod(n, dA)
        out = {}
        for (k,), v in A.alg.basis_product(a, r).data.items():
            out[(pair(c, k),)] = v
        return out

    right = LinMap.from_function(field, (N, dA), (N,), right_fn)

    def comult_rep(idx):
        c, a = divmod(idx[0], dA)
        e = A.re_inv_el()                 # xA x2 x3
        e = e.times(El.basis((C.space,), (c,))).times(El.basis((A.alg,), (a,)))
        e = e.map(C.comult, 3)            # xA x2 x3 c1 c2 a
        e = e.map(C.left_action, (2, 4), at=2)   # x3 . c2 -> xA x2 c2' c1 a
        e = e.map(C.left_action, (1, 3), at=1)   # x2 . c1 -> xA c1' c2' a
        e = e.merge(0, 3)                 # xA a
        out = Tensor(field, (N, N))
        for (aa, c1, c2), v in e.t.data.items():
            for (u,), w in A.alg.unit.data.items():
                key = (pair(c2, u), pair(c1, aa))
                cur = out.data.get(key, field.zero) + v * w
                if cur:
                    out.data[key] = cur
                else:
                    out.data.pop(key, None)
        return out

    comult = LinMap.from_function(field, (N,), (N, N), comult_rep)

    def counit_fn(idx):
        c, a = divmod(idx[0], dA)
        eps = C.counit.column((c,)).get(())
        return {(a,): eps} if eps else {}

    counit = LinMap.from_function(field, (N,), (dA,), counit_fn)
    return Coring(A.alg, N, left, right, comult, counit,
                  name="CA(%s,%s)" % (A.name or "A", C.name or "C"))


def _coring_yd(A: BicomoduleAlgebra, C: ModuleCoalgebra) -> Coring:
    if C.side != "bi":
        raise ShapeMismatch("needs a bimodule coalgebra")
    H = A.H
    if not isinstance(H, QuasiHopfAlgebra):
        raise AntipodeRequired("this coring needs antipode data")
    field = A.field
    dA, dC = A.alg.dim, C.dim
    N = dC * dA
    S_inv = H.antipode_inv
    twist = drinfeld_twist(H)
    g_el = El(H.spaces(2), twist.inv)

    def pair(c, a):
        return c * dA + a

    def left_fn(idx):
        r, n = idx
        c, a = divmod(n, dA)
        e = El.basis((A.alg,), (r,)).map(A.left_coaction, 0)
        e = e.map(A.right_coaction, 1)    # r-1 r00 r01
        e = e.times(El.basis((C.space,), (c,))).times(El.basis((A.alg,), (a,)))
        e = e.map(C.left_action, (2, 3), at=2)    # r-1 r00 (r01.c) a
        e = e.map(S_inv, 0)
        e = e.map(C.right_action, (2, 0), at=1)   # r00 c' a
        e = e.merge(0, 2)                 # r00 a
        return e.perm((1, 0)).t.fuse([[0, 1]])

    left = LinMap.from_function(field, (dA, N), (N,), left_fn)

    def right_fn(idx):
        n, r = idx
        c, a = divmod(n, dA)
        out = {}
        for (k,), v in A.alg.basis_product(a, r).data.items():
            out[(pair(c, k),)] = v
        return out

    right = LinMap.from_function(field, (N, dA), (N,), right_fn)

    def comult_rep(idx):
        c, a = divmod(idx[0], dA)
        e = A.mixed_inv_el()              # t1 t2 t3 : H A H
        e = e.times(El((A.alg, H.alg, H.alg), A.reassoc_right_inv))   # yA y2 y3
        e = e.times(El((H.alg, H.alg, A.alg), A.reassoc_left))        # X1 X2 XB
        e = e.times(g_el)                 # g1 g2
        e = e.times(El.basis((C.space,), (c,))).times(El.basis((A.alg,), (a,)))
        # legs: t1(0) t2(1,A) t3(2) yA(3,A) y2(4) y3(5) X1(6) X2(7) XB(8,A)
        #       g1(9) g2(10) c(11,C) a(12,A)
        e = e.map(A.right_coaction, 8)    # XB -> XB0(8,A) XB1(9,H)
        e = e.map(H.comult, 9)            # XB11(9) XB12(10); g1(11) g2(12) c(13) a(14)
        e = e.map(A.right_coaction, 1)    # t2 -> t20(1,A) t21(2,H); rest shifts
        # legs: t1(0) t20(1) t21(2) t3(3) yA(4) y2(5) y3(6) X1(7) X2(8)
        #       XB0(9) XB11(10) XB12(11) g1(12) g2(13) c(14) a(15)
        e = e.map(C.comult, 14)           # c1(14) c2(15) a(16)
        # first coalgebra output: (t3 y3 XB12) . c2 . S^-1(X1 g1)
        e = e.merge(3, 6)                 # t3 y3
        e = e.merge(3, 10)                # . XB12
        e = e.map(C.left_action, (3, 13), at=12)
        e = e.merge(5, 9)                 # X1 g1
        e = e.map(S_inv, 5)
        e = e.map(C.right_action, (11, 5), at=10)
        # legs: t1(0) t20(1) t21(2) yA(3) y2(4) X2(5) XB0(6) XB11(7) g2(8)
        #       c1(9) OUT1(10,C) a(11)
        # second coalgebra output: (t21 y2 XB11) . c1 . S^-1(t1 X2 g2)
        e = e.merge(2, 4)                 # t21 y2
        e = e.merge(2, 6)                 # . XB11
        e = e.map(C.left_action, (2, 7), at=6)
        e = e.merge(0, 3)                 # t1 X2
        e = e.merge(0, 4)                 # . g2
        e = e.map(S_inv, 0)
        e = e.map(C.right_action, (4, 0), at=3)
        # legs: t20(0) yA(1) XB0(2) OUT2(3,C) OUT1(4,C) a(5)
        # base-ring output: t20 yA XB0 a
        e = e.merge(0, 1).merge(0, 1).merge(0, 3)
        # legs: OUTA(0,A) OUT2(1,C) OUT1(2,C)
        out = Tensor(field, (N, N))
        for (aa, cc2, cc1), v in e.t.data.items():
            for (u,), w in A.alg.unit.data.items():
                key = (pair(cc1, u), pair(cc2, aa))
                cur = out.data.get(key, field.zero) + v * w
                if cur:
                    out.data[key] = cur
                else:
                    out.data.pop(key, None)
        return out

    comult = LinMap.from_function(field, (N,), (N, N), comult_rep)

    def counit_fn(idx):
        c, a = divmod(idx[0], dA)
        eps = C.counit.column((c,)).get(())
        return {(a,): eps} if eps else {}

    counit = LinMap.from_function(field, (N,), (dA,), counit_fn)
    return Coring(A.alg, N, left, right, comult, counit,
                  name="YD(%s,%s)" % (A.name or "A", C.name or "C"))
