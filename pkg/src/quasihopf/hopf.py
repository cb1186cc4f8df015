"""Quasi-bialgebras and quasi-Hopf algebras by structure constants.

Provides exhaustive axiom verification, gauge twisting, the op / cop /
op-cop variants, tensor products, and the explicit construction of the
gauge transformation that conjugates the antipode into an
anti-coalgebra map (the Drinfeld twist), together with its inverse.
"""

from __future__ import annotations

from .errors import (AntipodeNotInvertible, GaugeNotNormalized, NotInvertible,
                     ShapeMismatch)
from .report import CheckReport, run_indexed
from .tensor import (El, FinAlgebra, LinMap, Tensor, apply_linear_map,
                     build_tensor_algebra, embed_legs, invert_element,
                     multiply, switch_legs, unit_tensor)


class QuasiBialgebra:
    """Algebra + comultiplication + counit + invertible reassociator."""

    def __init__(self, alg: FinAlgebra, comult: LinMap, counit: LinMap,
                 reassoc: Tensor, reassoc_inv: Tensor = None, name=""):
        d = alg.dim
        if comult.src != (d,) or comult.dst != (d, d):
            raise ShapeMismatch("comultiplication has shape %r -> %r" % (comult.src, comult.dst))
        if counit.src != (d,) or counit.dst != ():
            raise ShapeMismatch("counit has shape %r -> %r" % (counit.src, counit.dst))
        if reassoc.dims != (d, d, d):
            raise ShapeMismatch("reassociator dims %r" % (reassoc.dims,))
        self.alg = alg
        self.field = alg.field
        self.dim = d
        self.comult = comult.rebind((alg, alg))
        self.counit = counit.rebind(())
        self.reassoc = reassoc
        if reassoc_inv is None:
            reassoc_inv = invert_element([alg] * 3, reassoc)
        self.reassoc_inv = reassoc_inv
        self.name = name

    def spaces(self, n: int):
        return (self.alg,) * n

    def el(self, t: Tensor) -> El:
        return El(self.spaces(t.arity), t)

    def basis_el(self, i: int) -> El:
        return El.basis((self.alg,), (i,))

    def unit_el(self, n: int) -> El:
        return El.unit(self.spaces(n))

    def counit_scalar(self, i: int):
        return self.counit.column((i,)).get(())

    def same_structure(self, other) -> bool:
        """Structural equality of the shared bialgebra data; derived
        bases built twice compare equal even as distinct objects."""
        if self is other:
            return True
        if not isinstance(other, QuasiBialgebra) or self.dim != other.dim:
            return False
        return (self.alg.mult.cols == other.alg.mult.cols
                and self.alg.unit == other.alg.unit
                and self.comult.cols == other.comult.cols
                and self.counit.cols == other.counit.cols
                and self.reassoc == other.reassoc)

    def eps(self, x: Tensor):
        """Apply the counit to every leg; returns a scalar."""
        out = x
        for _ in range(x.arity):
            out = apply_linear_map(self.counit, out, (0,))
        return out.get(())

    def __repr__(self):
        return "QuasiBialgebra(dim=%d%s)" % (self.dim, ", %r" % self.name if self.name else "")


class QuasiHopfAlgebra(QuasiBialgebra):
    """Quasi-bialgebra with antipode data (S, alpha, beta)."""

    def __init__(self, alg, comult, counit, reassoc, antipode: LinMap,
                 alpha: Tensor, beta: Tensor, reassoc_inv=None, name=""):
        super().__init__(alg, comult, counit, reassoc, reassoc_inv, name=name)
        d = alg.dim
        if antipode.src != (d,) or antipode.dst != (d,):
            raise ShapeMismatch("antipode has shape %r -> %r" % (antipode.src, antipode.dst))
        if alpha.dims != (d,) or beta.dims != (d,):
            raise ShapeMismatch("alpha/beta must be arity-1 tensors")
        self.antipode = antipode.rebind((alg,))
        self.alpha = alpha
        self.beta = beta
        self._antipode_inv = None

    @property
    def antipode_inv(self) -> LinMap:
        if self._antipode_inv is None:
            try:
                inv = self.antipode.inverse()
            except NotInvertible as exc:
                raise AntipodeNotInvertible(str(exc)) from exc
            inv.dst_spaces = (self.alg,)
            self._antipode_inv = inv
        return self._antipode_inv

    def bialgebra(self) -> QuasiBialgebra:
        return QuasiBialgebra(self.alg, self.comult, self.counit,
                              self.reassoc, self.reassoc_inv, name=self.name)

    def __repr__(self):
        return "QuasiHopfAlgebra(dim=%d%s)" % (self.dim, ", %r" % self.name if self.name else "")


class GaugeTransformation:
    """Invertible counit-normalized element of the tensor square."""

    def __init__(self, H: QuasiBialgebra, t: Tensor, inv: Tensor = None):
        if t.dims != (H.dim, H.dim):
            raise ShapeMismatch("gauge dims %r" % (t.dims,))
        unit = H.alg.unit
        if apply_linear_map(H.counit, t, (0,)) != unit or \
                apply_linear_map(H.counit, t, (1,)) != unit:
            raise GaugeNotNormalized("counit normalization fails")
        self.H = H
        self.t = t
        if inv is None:
            inv = invert_element(H.spaces(2), t)
        self.inv = inv

    def el(self) -> El:
        return H_el(self.H, self.t)

    def inv_el(self) -> El:
        return H_el(self.H, self.inv)


def H_el(H: QuasiBialgebra, t: Tensor) -> El:
    return El(H.spaces(t.arity), t)


def verify_fin_algebra(alg: FinAlgebra, subject="algebra", report=None) -> CheckReport:
    report = report or CheckReport(subject)
    report.add("mult-associative", alg.associativity_witness() is None,
               witness=alg.associativity_witness())
    report.add("unit-two-sided", alg.unit_witness() is None, witness=alg.unit_witness())
    return report


def _algebra_map_records(report, H: QuasiBialgebra, fn, unit_image, tag, jobs=1):
    """Check that basis-wise fn respects products and the unit."""
    alg = H.alg
    pairs = [(i, j) for i in range(alg.dim) for j in range(alg.dim)]

    def check(pair):
        i, j = pair
        image_of_product = fn(alg.basis_product(i, j))
        product_of_images = None
        xi, xj = fn(Tensor.basis(alg.field, (alg.dim,), (i,))), fn(
            Tensor.basis(alg.field, (alg.dim,), (j,)))
        return pair, image_of_product, xi, xj

    witness = None
    for pair, img, xi, xj in run_indexed(pairs, check, jobs):
        if isinstance(img, Tensor) and img.arity:
            prod = multiply([alg] * img.arity, xi, xj)
        else:
            prod = xi.get(()) * xj.get(())
            img = img.get(())
        if img != prod:
            witness = pair
            break
    report.add(tag + "-multiplicative", witness is None, witness=witness)
    unit_ok = fn(alg.unit) == unit_image
    report.add(tag + "-unital", unit_ok)


def verify_quasi_bialgebra(H: QuasiBialgebra, jobs: int = 1) -> CheckReport:
    """Exhaustive check of the quasi-bialgebra axioms over the basis."""
    report = CheckReport("quasi-bialgebra %s" % (H.name or ""))
    alg = H.alg
    verify_fin_algebra(alg, report=report)

    _algebra_map_records(report, H, lambda x: apply_linear_map(H.comult, x, (0,)),
                         unit_tensor(H.spaces(2)), "comult", jobs)
    _algebra_map_records(report, H, lambda x: apply_linear_map(H.counit, x, (0,)),
                         Tensor.scalar(H.field, H.field.one), "counit", jobs)

    phi = H.el(H.reassoc)
    phi_inv = H.el(H.reassoc_inv)
    unit3 = H.unit_el(3)
    report.compare("reassoc-invertible",
                   phi.mul(phi_inv).t + phi_inv.mul(phi).t,
                   unit3.t + unit3.t)

    # comultiplication is coassociative after conjugating by the reassociator
    def coassoc(i):
        h2 = H.basis_el(i).map(H.comult, 0)
        lhs = h2.map(H.comult, 1)                       # (id x Delta) Delta
        rhs = phi.mul(h2.map(H.comult, 0)).mul(phi_inv)  # Phi (Delta x id) Delta Phi^-1
        return i, lhs.t, rhs.t

    for i, lhs, rhs in run_indexed(range(alg.dim), coassoc, jobs):
        if lhs != rhs:
            report.add("quasi-coassoc", False, witness=(i,), lhs=lhs, rhs=rhs)
            break
    else:
        report.add("quasi-coassoc", True)

    # the counit kills either comultiplication leg
    def counit_law(i):
        h2 = H.basis_el(i).map(H.comult, 0)
        left = h2.map(H.counit, (0,)).t
        right = h2.map(H.counit, (1,)).t
        want = H.basis_el(i).t
        return i, left, right, want

    for i, left, right, want in run_indexed(range(alg.dim), counit_law, jobs):
        if left != want or right != want:
            report.add("counit-comult", False, witness=(i,),
                       lhs=left if left != want else right, rhs=want)
            break
    else:
        report.add("counit-comult", True)

    # the reassociator is a normalized 3-cocycle
    lhs = H.el(embed_legs(H.spaces(4), H.reassoc, (1, 2, 3)))
    lhs = lhs.mul(phi.map(H.comult, 1))
    lhs = lhs.mul(H.el(embed_legs(H.spaces(4), H.reassoc, (0, 1, 2))))
    rhs = phi.map(H.comult, 2).mul(phi.map(H.comult, 0))
    report.compare("cocycle", lhs.t, rhs.t)

    unit2 = H.unit_el(2).t
    report.compare("reassoc-counit-middle", phi.map(H.counit, (1,)).t, unit2)
    report.compare("reassoc-counit-left", phi.map(H.counit, (0,)).t, unit2)
    report.compare("reassoc-counit-right", phi.map(H.counit, (2,)).t, unit2)
    return report


def verify_quasi_hopf(H: QuasiHopfAlgebra, jobs: int = 1) -> CheckReport:
    """Quasi-bialgebra axioms plus the antipode axioms."""
    report = verify_quasi_bialgebra(H, jobs=jobs)
    report.subject = "quasi-hopf %s" % (H.name or "")
    alg, S = H.alg, H.antipode

    witness = None
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = apply_linear_map(S, alg.basis_product(i, j), (0,))
            rhs = alg.product(S.column((j,)), S.column((i,)))
            if lhs != rhs:
                witness = (i, j)
                break
        if witness:
            break
    report.add("antipode-antimultiplicative", witness is None, witness=witness)
    report.compare("antipode-unital", apply_linear_map(S, alg.unit, (0,)), alg.unit)
    report.add("antipode-invertible", S.is_invertible())

    alpha_el = El((alg,), H.alpha)
    beta_el = El((alg,), H.beta)

    def cancel(i):
        h2 = H.basis_el(i).map(H.comult, 0)
        left = h2.map(S, 0).times(alpha_el).merge(0, 2).merge(0, 1).t
        right = h2.map(S, 1).times(beta_el).merge(0, 2).merge(0, 1).t
        eps_h = H.counit_scalar(i)
        return i, left, right, H.alpha.scale(eps_h), H.beta.scale(eps_h)

    for i, left, right, want_a, want_b in run_indexed(range(alg.dim), cancel, jobs):
        if left != want_a:
            report.add("antipode-cancel-left", False, witness=(i,), lhs=left, rhs=want_a)
            break
        if right != want_b:
            report.add("antipode-cancel-right", False, witness=(i,), lhs=right, rhs=want_b)
            break
    else:
        report.add("antipode-cancel-left", True)
        report.add("antipode-cancel-right", True)

    phi = H.el(H.reassoc)
    zig = phi.map(S, 1).times(beta_el).merge(0, 3).merge(0, 1)
    zig = zig.times(alpha_el).merge(0, 2).merge(0, 1)
    report.compare("zigzag-forward", zig.t, H.alg.unit)

    phi_inv = H.el(H.reassoc_inv)
    zag = phi_inv.map(S, 0).map(S, 2).times(alpha_el).merge(0, 3).merge(0, 1)
    zag = zag.times(beta_el).merge(0, 2).merge(0, 1)
    report.compare("zigzag-backward", zag.t, H.alg.unit)

    norm = H.eps(H.alpha) * H.eps(H.beta)
    report.add("alpha-beta-normalized", norm == H.field.one, fatal=False,
               lhs=norm, rhs=H.field.one)
    return report


def normalize_antipode(H: QuasiHopfAlgebra) -> QuasiHopfAlgebra:
    """Rescale alpha and beta so both have counit one (when possible)."""
    eps_alpha = H.eps(H.alpha)
    if not eps_alpha:
        return H
    u = H.field.one / eps_alpha
    return QuasiHopfAlgebra(H.alg, H.comult, H.counit, H.reassoc, H.antipode,
                            H.alpha.scale(u), H.beta.scale(H.field.one / u),
                            reassoc_inv=H.reassoc_inv, name=H.name)


def gauge_twist(H: QuasiHopfAlgebra, F: GaugeTransformation) -> QuasiHopfAlgebra:
    """Twist comultiplication, reassociator and alpha/beta by a gauge."""
    if F.H is not H and F.H.alg.dim != H.alg.dim:
        raise ShapeMismatch("gauge lives over a different structure")
    alg = H.alg
    f, g = H.el(F.t), H.el(F.inv)

    def comult_f(idx):
        d = H.basis_el(idx[0]).map(H.comult, 0)
        return f.mul(d).mul(g).t

    comult = LinMap.from_function(H.field, (alg.dim,), (alg.dim, alg.dim),
                                  comult_f, dst_spaces=(alg, alg))

    # the twisted reassociator; the untwisted comultiplication throughout
    sp3 = H.spaces(3)
    one_f = H.el(embed_legs(sp3, F.t, (1, 2)))
    f3 = f.map(H.comult, 1)
    df = g.map(H.comult, 0)
    phi_f = one_f.mul(f3).mul(H.el(H.reassoc)).mul(df).mul(
        H.el(embed_legs(sp3, F.inv, (0, 1))))
    # inverse by the reversed product of inverses
    g3 = g.map(H.comult, 1)
    ef = f.map(H.comult, 0)
    phi_f_inv = H.el(embed_legs(sp3, F.t, (0, 1))).mul(ef).mul(
        H.el(H.reassoc_inv)).mul(g3).mul(H.el(embed_legs(sp3, F.inv, (1, 2))))

    alpha_el = El((alg,), H.alpha)
    beta_el = El((alg,), H.beta)
    alpha_f = g.map(H.antipode, 0).times(alpha_el).merge(0, 2).merge(0, 1).t
    beta_f = f.map(H.antipode, 1).times(beta_el).merge(0, 2).merge(0, 1).t

    return QuasiHopfAlgebra(alg, comult, H.counit, phi_f.t, H.antipode,
                            alpha_f, beta_f, reassoc_inv=phi_f_inv.t,
                            name=(H.name + "_twisted") if H.name else "")


def gauge_product(H_twisted: QuasiHopfAlgebra, F: GaugeTransformation,
                  F2: GaugeTransformation) -> GaugeTransformation:
    """The composite gauge (F2 computed in the twisted structure) * F."""
    t = multiply(H_twisted.spaces(2), F2.t, F.t)
    inv = multiply(H_twisted.spaces(2), F.inv, F2.inv)
    return GaugeTransformation(F.H, t, inv)


VARIANT_KINDS = ("op", "cop", "opcop")


def variant(H, kind: str):
    """Opposite multiplication and/or opposite comultiplication.

    Accepts either a quasi-bialgebra (returns one) or a quasi-Hopf
    algebra (returns one, transforming the antipode data as well).
    """
    if kind not in VARIANT_KINDS:
        raise ShapeMismatch("unknown variant %r" % (kind,))
    alg = H.alg
    d = alg.dim
    flip = LinMap.from_function(
        H.field, (d,), (d, d),
        lambda idx: switch_legs(H.comult.column(idx), (1, 0)))

    if not isinstance(H, QuasiHopfAlgebra):
        if kind == "op":
            new_alg, comult = alg.opposite(), LinMap(H.field, (d,), (d, d), H.comult.cols)
            reassoc, reassoc_inv = H.reassoc_inv, H.reassoc
        elif kind == "cop":
            new_alg, comult = alg, flip
            reassoc = switch_legs(H.reassoc_inv, (2, 1, 0))
            reassoc_inv = switch_legs(H.reassoc, (2, 1, 0))
        else:
            new_alg, comult = alg.opposite(), flip
            reassoc = switch_legs(H.reassoc, (2, 1, 0))
            reassoc_inv = switch_legs(H.reassoc_inv, (2, 1, 0))
        name = (H.name + "^" + kind) if H.name else ""
        return QuasiBialgebra(new_alg, comult, H.counit, reassoc,
                              reassoc_inv=reassoc_inv, name=name)

    def sinv_of(t):
        return apply_linear_map(H.antipode_inv, t, (0,))

    if kind == "op":
        new_alg = alg.opposite()
        comult = LinMap(H.field, (d,), (d, d), H.comult.cols)
        reassoc, reassoc_inv = H.reassoc_inv, H.reassoc
        S = H.antipode_inv
        alpha, beta = sinv_of(H.beta), sinv_of(H.alpha)
    elif kind == "cop":
        new_alg = alg
        comult = flip
        reassoc = switch_legs(H.reassoc_inv, (2, 1, 0))
        reassoc_inv = switch_legs(H.reassoc, (2, 1, 0))
        S = H.antipode_inv
        alpha, beta = sinv_of(H.alpha), sinv_of(H.beta)
    else:
        new_alg = alg.opposite()
        comult = flip
        reassoc = switch_legs(H.reassoc, (2, 1, 0))
        reassoc_inv = switch_legs(H.reassoc_inv, (2, 1, 0))
        S = LinMap(H.field, (d,), (d,), H.antipode.cols)
        alpha, beta = H.beta, H.alpha

    name = (H.name + "^" + kind) if H.name else ""
    return QuasiHopfAlgebra(new_alg, comult, H.counit, reassoc, S, alpha, beta,
                            reassoc_inv=reassoc_inv, name=name)


def drinfeld_twist(H: QuasiHopfAlgebra) -> GaugeTransformation:
    """The gauge transformation conjugating Delta(S(h)) into
    (S x S)(flip Delta(h)), built from its closed formula.

    The result is cached on the (immutable) input."""
    cached = getattr(H, "_drinfeld_twist", None)
    if cached is not None:
        return cached
    alg = H.alg
    S = H.antipode
    alpha_el = El((alg,), H.alpha)
    beta_el = El((alg,), H.beta)
    sp4 = H.spaces(4)

    # four-leg combinations of the reassociator and its inverse
    a4 = H.el(embed_legs(sp4, H.reassoc, (0, 1, 2))).mul(
        H.el(H.reassoc_inv).map(H.comult, 0))
    b4 = H.el(H.reassoc).map(H.comult, 0).mul(
        H.el(embed_legs(sp4, H.reassoc_inv, (0, 1, 2))))

    # gamma = S(A2) alpha A3 (x) S(A1) alpha A4
    gamma = a4.map(S, 0).map(S, 1)
    gamma = gamma.times(alpha_el).merge(1, 4).merge(1, 2)   # S(A2) alpha A3
    gamma = gamma.times(alpha_el).merge(0, 3).merge(0, 2)   # S(A1) alpha A4
    gamma = gamma.perm((1, 0))

    # delta = B1 beta S(B4) (x) B2 beta S(B3)
    delta = b4.map(S, 2).map(S, 3)
    delta = delta.times(beta_el).merge(0, 4).merge(0, 3)    # B1 beta S(B4)
    delta = delta.times(beta_el).merge(1, 3).merge(1, 2)    # B2 beta S(B3)

    phi_inv = H.el(H.reassoc_inv)

    # f = (S x S)(flip Delta(x1)) gamma Delta(x2 beta S(x3))
    e = phi_inv.map(H.comult, 0).perm((1, 0, 2, 3))
    e = e.map(S, 0).map(S, 1)
    e = e.map(S, 3).times(beta_el).merge(2, 4).merge(2, 3)  # x2 beta S(x3)
    e = e.map(H.comult, 2)                                  # S(x1_2) S(x1_1) D1 D2
    e = e.times(gamma).merge(0, 4).merge(1, 4)
    twist = e.merge(0, 2).merge(1, 2)

    # f^-1 = Delta(S(x1) alpha x2) delta (S x S)(flip Delta(x3))
    e = phi_inv.map(S, 0).times(alpha_el).merge(0, 3).merge(0, 1)  # S(x1) alpha x2, x3
    e = e.map(H.comult, 0)                                  # D1 D2 x3
    e = e.map(H.comult, 2).perm((0, 1, 3, 2)).map(S, 2).map(S, 3)
    e = e.times(delta).merge(0, 4).merge(1, 4)
    twist_inv = e.merge(0, 2).merge(1, 2)

    out = GaugeTransformation(H, twist.t, twist_inv.t)
    H._drinfeld_twist = out
    return out


def tensor_qha(H1: QuasiHopfAlgebra, H2: QuasiHopfAlgebra, name="") -> QuasiHopfAlgebra:
    """Componentwise quasi-Hopf structure on H1 (x) H2.

    Basis pairing is (i, j) -> i * dim2 + j; reassociator legs interleave
    the two reassociators, comultiplication interleaves with the middle
    flip, antipode and alpha/beta are componentwise.
    """
    alg = build_tensor_algebra(H1.alg, H2.alg, name=name)
    d1, d2 = H1.dim, H2.dim
    field = H1.field

    def pair(i, j):
        return i * d2 + j

    def comult_fn(idx):
        i, j = divmod(idx[0], d2)
        c1 = H1.comult.column((i,))
        c2 = H2.comult.column((j,))
        out = {}
        for (a1, b1), v1 in c1.data.items():
            for (a2, b2), v2 in c2.data.items():
                out[(pair(a1, a2), pair(b1, b2))] = v1 * v2
        return out

    comult = LinMap.from_function(field, (alg.dim,), (alg.dim, alg.dim), comult_fn,
                                  dst_spaces=(alg, alg))

    def counit_fn(idx):
        i, j = divmod(idx[0], d2)
        v = H1.counit_scalar(i) * H2.counit_scalar(j)
        return {(): v} if v else {}

    counit = LinMap.from_function(field, (alg.dim,), (), counit_fn, dst_spaces=())

    reassoc = interleave(H1.reassoc, H2.reassoc, d2)
    reassoc_inv = interleave(H1.reassoc_inv, H2.reassoc_inv, d2)

    def antipode_fn(idx):
        i, j = divmod(idx[0], d2)
        s1 = H1.antipode.column((i,))
        s2 = H2.antipode.column((j,))
        out = {}
        for (a,), v1 in s1.data.items():
            for (b,), v2 in s2.data.items():
                out[(pair(a, b),)] = v1 * v2
        return out

    antipode = LinMap.from_function(field, (alg.dim,), (alg.dim,), antipode_fn,
                                    dst_spaces=(alg,))
    alpha = H1.alpha.outer(H2.alpha).fuse([[0, 1]])
    beta = H1.beta.outer(H2.beta).fuse([[0, 1]])
    return QuasiHopfAlgebra(alg, comult, counit, reassoc, antipode, alpha, beta,
                            reassoc_inv=reassoc_inv, name=name)


def interleave(x: Tensor, y: Tensor, d2: int) -> Tensor:
    """Legwise pairing of two equal-arity tensors: leg i becomes the
    paired index of x's and y's leg i."""
    if x.arity != y.arity:
        raise ShapeMismatch("interleave needs equal arities")
    out = Tensor(x.field, tuple(a * b for a, b in zip(x.dims, y.dims)))
    for ix, vx in x.data.items():
        for iy, vy in y.data.items():
            idx = tuple(a * d2 + b for a, b in zip(ix, iy))
            out.data[idx] = vx * vy
    return out


def op_tensor(H: QuasiHopfAlgebra, name="") -> QuasiHopfAlgebra:
    """H^op (x) H, the base of the one-sided comodule realizations."""
    return tensor_qha(variant(H, "op"), H, name=name or (H.name + "^op(x)" + H.name))


def tensor_op(H: QuasiHopfAlgebra, name="") -> QuasiHopfAlgebra:
    """H (x) H^op, the base of the mirrored realizations."""
    return tensor_qha(H, variant(H, "op"), name=name or (H.name + "(x)" + H.name + "^op"))
