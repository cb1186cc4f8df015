"""Module coalgebras and (bi)module algebras over a quasi-bialgebra,
their verifiers, dualization, the view of a bimodule coalgebra over the
twisted tensor square, and gauge transport of coalgebra structures.
"""

from __future__ import annotations

from .errors import ShapeMismatch
from .hopf import GaugeTransformation, QuasiBialgebra, gauge_twist, op_tensor
from .report import CheckReport, run_indexed
from .tensor import (El, FinAlgebra, LinMap, Tensor, VectorSpace,
                     apply_linear_map, switch_legs)

SIDES = ("left", "right", "bi")


class ModuleCoalgebra:
    """Coalgebra carrying one or two module actions of the base.

    side "left": action H (x) C -> C; side "right": C (x) H -> C;
    side "bi": both, commuting.
    """

    def __init__(self, H: QuasiBialgebra, side: str, dim: int, comult: LinMap,
                 counit: LinMap, left_action: LinMap = None,
                 right_action: LinMap = None, name=""):
        if side not in SIDES:
            raise ShapeMismatch("side must be one of %r" % (SIDES,))
        if comult.src != (dim,) or comult.dst != (dim, dim):
            raise ShapeMismatch("comultiplication has shape %r -> %r"
                                % (comult.src, comult.dst))
        if counit.src != (dim,) or counit.dst != ():
            raise ShapeMismatch("counit has shape %r -> %r" % (counit.src, counit.dst))
        self.H = H
        self.side = side
        self.dim = dim
        self.field = H.field
        self.space = VectorSpace(H.field, dim, name or "C")
        self.comult = comult.rebind((self.space, self.space))
        self.counit = counit.rebind(())
        if side in ("left", "bi"):
            if left_action is None or left_action.src != (H.dim, dim) \
                    or left_action.dst != (dim,):
                raise ShapeMismatch("left action must map H x C -> C")
            left_action = left_action.rebind((self.space,))
        if side in ("right", "bi"):
            if right_action is None or right_action.src != (dim, H.dim) \
                    or right_action.dst != (dim,):
                raise ShapeMismatch("right action must map C x H -> C")
            right_action = right_action.rebind((self.space,))
        self.left_action = left_action if side in ("left", "bi") else None
        self.right_action = right_action if side in ("right", "bi") else None
        self.name = name

    def basis_el(self, i: int) -> El:
        return El.basis((self.space,), (i,))

    def comult_el(self, i: int) -> El:
        return self.basis_el(i).map(self.comult, 0)

    def as_right_over_op(self) -> "ModuleCoalgebra":
        """Reinterpret a left module coalgebra as a right one over the
        opposite base (a view with transposed action legs)."""
        from .hopf import variant
        if self.side != "left":
            raise ShapeMismatch("the reinterpretation starts from a left structure")
        H_op = variant(self.H, "op")
        action = LinMap.from_function(
            self.field, (self.dim, self.H.dim), (self.dim,),
            lambda idx: self.left_action.column((idx[1], idx[0])))
        return ModuleCoalgebra(H_op, "right", self.dim, self.comult, self.counit,
                               right_action=action,
                               name=(self.name + "-as-right") if self.name else "")

    def cop(self) -> "ModuleCoalgebra":
        """Opposite comultiplication over the cop variant of the base."""
        from .hopf import variant
        flipped = LinMap.from_function(
            self.field, (self.dim,), (self.dim, self.dim),
            lambda idx: switch_legs(self.comult.column(idx), (1, 0)))
        return ModuleCoalgebra(variant(self.H, "cop"), self.side, self.dim,
                               flipped, self.counit, self.left_action,
                               self.right_action,
                               name=(self.name + "^cop") if self.name else "")

    def __repr__(self):
        return "ModuleCoalgebra(%s, dim=%d%s)" % (
            self.side, self.dim, ", %r" % self.name if self.name else "")


class ModuleAlgebra:
    """Algebra object in modules over the base: the carrier may be
    non-associative on the nose, associativity holding only after the
    reassociator acts."""

    def __init__(self, H: QuasiBialgebra, side: str, alg: FinAlgebra,
                 left_action: LinMap = None, right_action: LinMap = None, name=""):
        if side not in SIDES:
            raise ShapeMismatch("side must be one of %r" % (SIDES,))
        d = alg.dim
        self.H = H
        self.side = side
        self.alg = alg
        self.field = alg.field
        if side in ("left", "bi"):
            if left_action is None or left_action.src != (H.dim, d) \
                    or left_action.dst != (d,):
                raise ShapeMismatch("left action must map H x A -> A")
            left_action = left_action.rebind((alg,))
        if side in ("right", "bi"):
            if right_action is None or right_action.src != (d, H.dim) \
                    or right_action.dst != (d,):
                raise ShapeMismatch("right action must map A x H -> A")
            right_action = right_action.rebind((alg,))
        self.left_action = left_action if side in ("left", "bi") else None
        self.right_action = right_action if side in ("right", "bi") else None
        self.name = name

    def __repr__(self):
        return "ModuleAlgebra(%s, dim=%d%s)" % (
            self.side, self.alg.dim, ", %r" % self.name if self.name else "")


def _check_module_law(report, H, dim, action, side, jobs=1, tag=""):
    """Unital associative action of the base on a space."""
    field = H.field
    tag = tag or (side + "-action")

    unital = None
    for c in range(dim):
        acc = Tensor(field, (dim,))
        for (h,), v in H.alg.unit.data.items():
            idx = (h, c) if side == "left" else (c, h)
            acc = acc + action.column(idx).scale(v)
        if acc != Tensor.basis(field, (dim,), (c,)):
            unital = (c,)
            break
    report.add(tag + "-unital", unital is None, witness=unital)

    witness = None
    for i in range(H.dim):
        for j in range(H.dim):
            prod = H.alg.basis_product(i, j)
            for c in range(dim):
                via_product = Tensor(field, (dim,))
                for (k,), v in prod.data.items():
                    idx = (k, c) if side == "left" else (c, k)
                    via_product = via_product + action.column(idx).scale(v)
                if side == "left":
                    inner = action.column((j, c))
                    stepwise = apply_linear_map(
                        action, Tensor.basis(field, (H.dim,), (i,)).outer(inner), (0, 1))
                else:
                    inner = action.column((c, i))
                    stepwise = apply_linear_map(
                        action, inner.outer(Tensor.basis(field, (H.dim,), (j,))), (0, 1))
                if via_product != stepwise:
                    witness = (i, j, c)
                    break
            if witness:
                break
        if witness:
            break
    report.add(tag + "-associative", witness is None, witness=witness)


def verify_module_coalgebra(C: ModuleCoalgebra, jobs: int = 1) -> CheckReport:
    report = CheckReport("%s module coalgebra %s" % (C.side, C.name or ""))
    H = C.H
    field = C.field
    sp = C.space

    # counit laws of the underlying coalgebra
    witness = None
    for i in range(C.dim):
        two = C.comult_el(i)
        want = C.basis_el(i).t
        if two.map(C.counit, (0,)).t != want or two.map(C.counit, (1,)).t != want:
            witness = (i,)
            break
    report.add("counit-comult", witness is None, witness=witness)

    if C.left_action is not None:
        _check_module_law(report, H, C.dim, C.left_action, "left", jobs)
    if C.right_action is not None:
        _check_module_law(report, H, C.dim, C.right_action, "right", jobs)

    if C.side == "bi":
        witness = None
        for h in range(H.dim):
            for c in range(C.dim):
                for h2 in range(H.dim):
                    left_first = apply_linear_map(
                        C.right_action,
                        C.left_action.column((h, c)).outer(
                            Tensor.basis(field, (H.dim,), (h2,))), (0, 1))
                    right_first = apply_linear_map(
                        C.left_action,
                        Tensor.basis(field, (H.dim,), (h,)).outer(
                            C.right_action.column((c, h2))), (0, 1))
                    if left_first != right_first:
                        witness = (h, c, h2)
                        break
                if witness:
                    break
            if witness:
                break
        report.add("actions-commute", witness is None, witness=witness)

    # coassociativity up to the reassociator acting through the actions
    def coassoc(i):
        two = C.comult_el(i)
        left_assoc = two.map(C.comult, 0)     # (comult x id)
        right_assoc = two.map(C.comult, 1)    # (id x comult)
        if C.side == "left":
            lhs = _act_many(C, H.reassoc, left_assoc, "left")
            rhs = right_assoc
        elif C.side == "right":
            lhs = _act_many(C, H.reassoc_inv, left_assoc, "right")
            rhs = right_assoc
        else:
            lhs = _act_many(C, H.reassoc_inv,
                            _act_many(C, H.reassoc, left_assoc, "left"), "right")
            rhs = right_assoc
        return i, lhs.t, rhs.t

    for i, lhs, rhs in run_indexed(range(C.dim), coassoc, jobs):
        if lhs != rhs:
            report.add("coassoc-upto-reassoc", False, witness=(i,), lhs=lhs, rhs=rhs)
            break
    else:
        report.add("coassoc-upto-reassoc", True)

    # comultiplication and counit respect the actions
    def compat(i):
        records = []
        for side, action in (("left", C.left_action), ("right", C.right_action)):
            if action is None:
                continue
            for h in range(H.dim):
                idx = (h, i) if side == "left" else (i, h)
                acted = action.column(idx)
                lhs = apply_linear_map(C.comult, acted, (0,))
                hh = El.basis((H.alg,), (h,)).map(H.comult, 0)
                cc = C.comult_el(i)
                pair = hh.times(cc)
                if side == "left":
                    rhs = pair.map(C.left_action, (0, 2), at=0).map(
                        C.left_action, (1, 2), at=1)
                else:
                    rhs = pair.map(C.right_action, (2, 0), at=0).map(
                        C.right_action, (2, 1), at=1)
                records.append(("comult-action-compat-" + side,
                                lhs == rhs.t, (h, i) if side == "left" else (i, h)))
                eps_acted = apply_linear_map(C.counit, acted, (0,)).get(())
                eps_split = H.counit_scalar(h) * C.counit.column((i,)).get(())
                records.append(("counit-action-compat-" + side,
                                eps_acted == eps_split,
                                (h, i) if side == "left" else (i, h)))
        return records

    seen = {}
    for records in run_indexed(range(C.dim), compat, jobs):
        for check_id, ok, witness in records:
            if check_id not in seen:
                seen[check_id] = (True, None)
            if not ok and seen[check_id][0]:
                seen[check_id] = (False, witness)
    for check_id in sorted(seen):
        ok, witness = seen[check_id]
        report.add(check_id, ok, witness=witness)
    return report


def _act_many(C: ModuleCoalgebra, element: Tensor, target: El, side: str) -> El:
    """Act legwise by a three-leg base element on a three-leg coalgebra
    element, from the stated side."""
    field = C.field
    out = Tensor(field, target.t.dims)
    action = C.left_action if side == "left" else C.right_action
    for idx, v in element.data.items():
        term = target.t
        for leg in range(3):
            h = idx[leg]
            basis_h = Tensor.basis(field, (C.H.dim,), (h,))
            if side == "left":
                term = apply_linear_map(
                    action, basis_h.outer(term),
                    (0, leg + 1), at=leg)
            else:
                term = apply_linear_map(
                    action, term.outer(basis_h),
                    (leg, 3), at=leg)
        out = out + term.scale(v)
    return El(target.spaces, out)


def verify_module_algebra(A: ModuleAlgebra, jobs: int = 1) -> CheckReport:
    report = CheckReport("%s module algebra %s" % (A.side, A.name or ""))
    H, alg = A.H, A.alg
    field = A.field
    report.add("unit-two-sided", alg.unit_witness() is None, witness=alg.unit_witness())

    if A.left_action is not None:
        _check_module_law(report, H, alg.dim, A.left_action, "left", jobs)
    if A.right_action is not None:
        _check_module_law(report, H, alg.dim, A.right_action, "right", jobs)

    if A.side == "bi":
        witness = None
        for h in range(H.dim):
            for c in range(alg.dim):
                for h2 in range(H.dim):
                    one = apply_linear_map(
                        A.right_action, A.left_action.column((h, c)).outer(
                            Tensor.basis(field, (H.dim,), (h2,))), (0, 1))
                    other = apply_linear_map(
                        A.left_action, Tensor.basis(field, (H.dim,), (h,)).outer(
                            A.right_action.column((c, h2))), (0, 1))
                    if one != other:
                        witness = (h, c, h2)
                        break
                if witness:
                    break
            if witness:
                break
        report.add("actions-commute", witness is None, witness=witness)

    # associativity up to the reassociator through the actions
    def reassoc_assoc(triple):
        i, j, k = triple
        plain_left = alg.product(alg.basis_product(i, j),
                                 Tensor.basis(field, (alg.dim,), (k,)))
        a, b, c = (Tensor.basis(field, (alg.dim,), (t,)) for t in (i, j, k))
        acc = Tensor(field, (alg.dim,))
        for idx, v in _assoc_weights(A):
            xa = _act_single(A, idx[0], a)
            xb = _act_single(A, idx[1], b)
            xc = _act_single(A, idx[2], c)
            acc = acc + alg.product(xa, alg.product(xb, xc)).scale(v)
        return triple, plain_left, acc

    triples = [(i, j, k) for i in range(alg.dim)
               for j in range(alg.dim) for k in range(alg.dim)]
    witness = None
    for triple, lhs, rhs in run_indexed(triples, reassoc_assoc, jobs):
        if lhs != rhs:
            witness = triple
            break
    report.add("assoc-upto-reassoc", witness is None, witness=witness)

    # the action distributes over the product via the comultiplication
    def distributes(h):
        for side, action in (("left", A.left_action), ("right", A.right_action)):
            if action is None:
                continue
            hh = El.basis((H.alg,), (h,)).map(H.comult, 0)
            for i in range(alg.dim):
                for j in range(alg.dim):
                    prod = alg.basis_product(i, j)
                    if side == "left":
                        acted = apply_linear_map(
                            action, Tensor.basis(field, (H.dim,), (h,)).outer(prod),
                            (0, 1))
                        split = hh.times(El.basis((alg,), (i,))).times(
                            El.basis((alg,), (j,)))
                        split = split.map(action, (0, 2), at=0)
                        split = split.map(action, (1, 2), at=1)
                    else:
                        acted = apply_linear_map(
                            action, prod.outer(Tensor.basis(field, (H.dim,), (h,))),
                            (0, 1))
                        split = El.basis((alg,), (i,)).times(
                            El.basis((alg,), (j,))).times(hh)
                        split = split.map(action, (0, 2), at=0)
                        split = split.map(action, (1, 2), at=1)
                    got = split.merge(0, 1).t
                    if acted != got:
                        return ("action-distributive-" + side, False, (h, i, j))
        return None

    failure = None
    for result in run_indexed(range(H.dim), distributes, jobs):
        if result is not None:
            failure = result
            break
    if failure:
        report.add(failure[0], False, witness=failure[2])
    else:
        for side, action in (("left", A.left_action), ("right", A.right_action)):
            if action is not None:
                report.add("action-distributive-" + side, True)

    # the unit absorbs the action through the counit
    witness = None
    for h in range(H.dim):
        for side, action in (("left", A.left_action), ("right", A.right_action)):
            if action is None:
                continue
            acc = Tensor(field, (alg.dim,))
            for (u,), v in alg.unit.data.items():
                idx = (h, u) if side == "left" else (u, h)
                acc = acc + action.column(idx).scale(v)
            if acc != alg.unit.scale(H.counit_scalar(h)):
                witness = (h, side)
                break
        if witness:
            break
    report.add("action-counit-unit", witness is None, witness=witness)
    return report


def _assoc_weights(A: ModuleAlgebra):
    """The reassociator data that the associativity law routes through
    the actions: (per-leg index triple, coefficient) pairs; for the bi
    side each leg index is a (left, right) pair."""
    H = A.H
    if A.side == "left":
        return list(H.reassoc.data.items())
    if A.side == "right":
        return list(H.reassoc_inv.data.items())
    pairs = []
    for li, lv in H.reassoc.data.items():
        for ri, rv in H.reassoc_inv.data.items():
            legs = tuple((li[k], ri[k]) for k in range(3))
            pairs.append((legs, lv * rv))
    return pairs


def _act_single(A: ModuleAlgebra, h_idx, vec: Tensor) -> Tensor:
    """Act by basis elements on an algebra vector; for the bi side the
    index is a pair (left index, right index)."""
    field = A.field
    if A.side == "left":
        return apply_linear_map(
            A.left_action, Tensor.basis(field, (A.H.dim,), (h_idx,)).outer(vec), (0, 1))
    if A.side == "right":
        return apply_linear_map(
            A.right_action, vec.outer(Tensor.basis(field, (A.H.dim,), (h_idx,))), (0, 1))
    li, ri = h_idx
    out = apply_linear_map(
        A.left_action, Tensor.basis(field, (A.H.dim,), (li,)).outer(vec), (0, 1))
    return apply_linear_map(
        A.right_action, out.outer(Tensor.basis(field, (A.H.dim,), (ri,))), (0, 1))


def dualize(C: ModuleCoalgebra, name="") -> ModuleAlgebra:
    """The linear dual as a module algebra: convolution product, counit
    as unit, transposed action(s) on the other side."""
    H = C.H
    field = C.field
    d = C.dim

    # convolution: (e^i e^j)(c) = coefficient of e_i x e_j in comult(c)
    table = {}
    for i in range(d):
        for j in range(d):
            img = {}
            for c in range(d):
                v = C.comult.column((c,)).get((i, j))
                if v:
                    img[c] = v
            table[(i, j)] = img
    unit_vec = [C.counit.column((c,)).get(()) for c in range(d)]
    alg = FinAlgebra.from_table(field, d, table, unit_vec,
                                name=name or ((C.name or "C") + "*"), validate=False)

    left = right = None
    if C.right_action is not None:
        # (h . f)(c) = f(c . h)
        def left_fn(idx):
            h, f = idx
            img = {}
            for c in range(d):
                v = C.right_action.column((c, h)).get((f,))
                if v:
                    img[(c,)] = v
            return img
        left = LinMap.from_function(field, (H.dim, d), (d,), left_fn)
    if C.left_action is not None:
        # (f . h)(c) = f(h . c)
        def right_fn(idx):
            f, h = idx
            img = {}
            for c in range(d):
                v = C.left_action.column((h, c)).get((f,))
                if v:
                    img[(c,)] = v
            return img
        right = LinMap.from_function(field, (d, H.dim), (d,), right_fn)

    if C.side == "right":
        return ModuleAlgebra(H, "left", alg, left_action=left, name=alg.name)
    if C.side == "left":
        return ModuleAlgebra(H, "right", alg, right_action=right, name=alg.name)
    return ModuleAlgebra(H, "bi", alg, left_action=left, right_action=right,
                         name=alg.name)


def bimodule_to_op_tensor_module_coalgebra(C: ModuleCoalgebra,
                                           base=None) -> ModuleCoalgebra:
    """View a bimodule coalgebra as a left module coalgebra over the
    opposite base tensored with the base: (h x h') . c = h' . c . h."""
    if C.side != "bi":
        raise ShapeMismatch("input must be a bimodule coalgebra")
    H = C.H
    from .hopf import QuasiHopfAlgebra
    if base is None and not isinstance(H, QuasiHopfAlgebra):
        raise ShapeMismatch("the twisted tensor square needs a quasi-Hopf base")
    HopH = base if base is not None else op_tensor(H)
    field = C.field
    dH = H.dim

    def act(idx):
        k, c = idx
        h, h2 = divmod(k, dH)
        inner = C.left_action.column((h2, c))
        return apply_linear_map(
            C.right_action, inner.outer(Tensor.basis(field, (dH,), (h,))), (0, 1))

    action = LinMap.from_function(field, (HopH.dim, C.dim), (C.dim,), act)
    return ModuleCoalgebra(HopH, "left", C.dim, C.comult, C.counit,
                           left_action=action,
                           name=(C.name + "-over-square") if C.name else "")


def gauge_twist_module_coalgebra(C: ModuleCoalgebra, F: GaugeTransformation):
    """Left module coalgebra over the gauge-twisted base: the
    comultiplication is premultiplied by the gauge, the counit and the
    action survive unchanged.  Returns (twisted coalgebra, twisted base).
    """
    if C.side != "left":
        raise ShapeMismatch("gauge transport twists left module coalgebras")
    H = C.H
    from .hopf import QuasiHopfAlgebra
    if not isinstance(H, QuasiHopfAlgebra):
        raise ShapeMismatch("gauge twisting the base needs antipode data")
    H_f = gauge_twist(H, F)

    def comult_fn(idx):
        two = C.comult_el(idx[0])
        out = Tensor(C.field, (C.dim, C.dim))
        for (h1, h2), v in F.t.data.items():
            term = two.t
            term = apply_linear_map(
                C.left_action,
                Tensor.basis(C.field, (H.dim,), (h1,)).outer(term), (0, 1), at=0)
            term = apply_linear_map(
                C.left_action,
                Tensor.basis(C.field, (H.dim,), (h2,)).outer(term), (0, 2), at=1)
            out = out + term.scale(v)
        return out

    comult = LinMap.from_function(C.field, (C.dim,), (C.dim, C.dim), comult_fn)
    action = LinMap(C.field, (H.dim, C.dim), (C.dim,), C.left_action.cols)
    out = ModuleCoalgebra(H_f, "left", C.dim, comult, C.counit, left_action=action,
                          name=(C.name + "_twisted") if C.name else "")
    return out, H_f
