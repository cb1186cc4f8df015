import pytest

from quasihopf.coring import verify_coring
from quasihopf.doihopf import (DoiHopfContext, FiniteModule, adjunction_maps,
                               compute_rat, coring_comodule_to_doihopf,
                               doihopf_to_coring_comodule, induce_doi_hopf,
                               rational_check, to_smash_module,
                               transport_twist, translate_variant,
                               trivial_module, verify_coring_comodule,
                               verify_doi_hopf)
from quasihopf.errors import VariantMismatch
from quasihopf.fixtures import (c2, h2, h2_bimodule_coalgebra, hh_bicomodule,
                                kz2, regular_comodule_algebra)
from quasihopf.modcoalg import ModuleCoalgebra
from quasihopf.tensor import LinMap, Tensor


def right_left_context(field, make=h2):
    H = make(field)
    B = regular_comodule_algebra(H, "left")
    C = c2(field, H)
    return DoiHopfContext("right-left", B, C)


def left_right_context(field, make=h2):
    H = make(field)
    A = regular_comodule_algebra(H, "right")
    base = c2(field, H)
    action = LinMap.from_function(
        field, (H.dim, 2), (2,),
        lambda idx: {(idx[1],): H.counit_scalar(idx[0])})
    C = ModuleCoalgebra(H, "left", 2, base.comult, base.counit,
                        left_action=action, name="c2-left")
    return DoiHopfContext("left-right", A, C)


@pytest.mark.parametrize("make", [kz2, h2])
def test_induced_right_left_module_passes(field, make):
    ctx = right_left_context(field, make)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    report = verify_doi_hopf(M, ctx)
    assert report.passed, report.render()


@pytest.mark.parametrize("make", [kz2, h2])
def test_induced_left_right_module_passes(field, make):
    ctx = left_right_context(field, make)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    report = verify_doi_hopf(M, ctx)
    assert report.passed, report.render()


def test_zero_coaction_fails(field):
    ctx = right_left_context(field)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    broken = FiniteModule(M.dim, ctx.comodule.alg, M.action, "right",
                          LinMap(field, (M.dim,), (ctx.coalgebra.dim, M.dim), {}),
                          "left")
    report = verify_doi_hopf(broken, ctx)
    assert not report.passed
    failed = {r.check_id for r in report.records if not r.passed}
    assert "coaction-counit" in failed


def test_variant_mismatch_detected(field):
    ctx = right_left_context(field)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    bad = FiniteModule(M.dim, ctx.comodule.alg, M.action, "right",
                       M.coaction, "left")
    lr = left_right_context(field)
    with pytest.raises(VariantMismatch):
        verify_doi_hopf(bad, lr)


def test_induction_is_functorial(field):
    # the induced map of a module morphism acts as the identity on the
    # coalgebra leg
    ctx = right_left_context(field)
    N = trivial_module(ctx)
    M = induce_doi_hopf(N, ctx)
    dC = ctx.coalgebra.dim
    # a module morphism of the regular module: left multiplication by g
    theta = [[field.zero, field.one], [field.one, field.zero]]
    # id_C x theta commutes with the induced coaction on C x N entries
    for c in range(dC):
        for n in range(N.dim):
            src = c * N.dim + n
            img = M.coaction.column((src,))
            moved = Tensor(field, img.dims)
            for (c1, m2), v in img.data.items():
                c2, n2 = divmod(m2, N.dim)
                for j in range(N.dim):
                    if theta[j][n2]:
                        key = (c1, c2 * N.dim + j)
                        moved = moved + Tensor(field, img.dims,
                                               {key: v * theta[j][n2]})
            # pushing theta through the source first gives the same
            pushed = Tensor(field, img.dims)
            for j in range(N.dim):
                if theta[j][n]:
                    pushed = pushed + M.coaction.column(
                        (c * N.dim + j,)).scale(theta[j][n])
            assert moved == pushed


@pytest.mark.parametrize("make", [kz2, h2])
def test_smash_collapse_and_rational_roundtrip(field, make):
    ctx = right_left_context(field, make)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    collapsed, smash = to_smash_module(M, ctx)
    recovered, report = rational_check(collapsed, ctx, smash)
    assert report.passed, report.render()
    for i in range(M.dim):
        assert recovered.coaction.column((i,)) == M.coaction.column((i,))
        for b in range(ctx.comodule.alg.dim):
            assert recovered.action.column((i, b)) == M.action.column((i, b))


def test_free_module_is_rational(field):
    # the smash product acting on itself is rational with the dual-basis
    # coaction
    ctx = right_left_context(field)
    from quasihopf.modcoalg import dualize
    from quasihopf.smash import generalized_smash
    smash = generalized_smash(dualize(ctx.coalgebra), ctx.comodule)
    action = LinMap(field, (smash.carrier.dim, smash.carrier.dim),
                    (smash.carrier.dim,), smash.carrier.mult.cols)
    free = FiniteModule(smash.carrier.dim, smash, action, "right", name="free")
    recovered, report = rational_check(free, ctx, smash)
    assert report.passed, report.render()


def test_compute_rat_returns_whole_module(field):
    ctx = right_left_context(field)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    collapsed, smash = to_smash_module(M, ctx)
    basis, report = compute_rat(collapsed, ctx, smash)
    assert report.passed, report.render()
    assert len(basis) == M.dim


def test_compute_rat_zero_module(field):
    ctx = right_left_context(field)
    from quasihopf.modcoalg import dualize
    from quasihopf.smash import generalized_smash
    smash = generalized_smash(dualize(ctx.coalgebra), ctx.comodule)
    # the zero action on a one-dimensional space is not unital, so use
    # the smallest honest module: the zero-dimensional case is excluded
    # by construction, so take the quotient-like trivial action instead
    eps_action = LinMap.from_function(
        field, (1, smash.carrier.dim), (1,),
        lambda idx: {(0,): _counit_of_smash(smash, ctx, idx[1])})
    triv = FiniteModule(1, smash, eps_action, "right", name="eps")
    basis, report = compute_rat(triv, ctx, smash)
    assert len(basis) == 1
    assert report.passed, report.render()


def _counit_of_smash(smash, ctx, n):
    # the character (dual counit x base counit) of the smash product
    field = ctx.field
    dB = ctx.comodule.alg.dim
    f, b = divmod(n, dB)
    C = ctx.coalgebra
    # evaluate the dual basis vector on the grouplike-ish counit: the
    # character sends e^f x e_b to <e^f, sum eps-weighted basis> eps(b)
    H = ctx.H
    weight = field.zero
    for c in range(C.dim):
        if c == f:
            weight = weight + C.counit.column((c,)).get(())
    hmm = weight
    del hmm
    eps_b = _algebra_counit(ctx, b)
    return weight * eps_b


def _algebra_counit(ctx, b):
    # the comodule algebra is the base itself in these fixtures
    return ctx.H.counit_scalar(b)


def test_cyclic_submodule_bounded(field):
    ctx = right_left_context(field)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    collapsed, smash = to_smash_module(M, ctx)
    bound = ctx.coalgebra.dim * ctx.comodule.alg.dim * M.dim
    from quasihopf import linalg
    for i in range(M.dim):
        seed = Tensor.basis(field, (M.dim,), (i,))
        span = [seed.to_flat()]
        frontier = [seed]
        while frontier:
            nxt = []
            for vec in frontier:
                for n in range(smash.carrier.dim):
                    img = collapsed.act(n, vec)
                    if not linalg.in_span(field, span, img.to_flat()):
                        span.append(img.to_flat())
                        nxt.append(img)
            frontier = nxt
        assert len(span) <= bound


def test_direct_sum_rational_splits(field):
    ctx = right_left_context(field)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    collapsed, smash = to_smash_module(M, ctx)
    two = FiniteModule(
        2 * M.dim, smash,
        LinMap.from_function(
            field, (2 * M.dim, smash.carrier.dim), (2 * M.dim,),
            lambda idx: _direct_sum_action(collapsed, M.dim, idx)),
        "right", name="M+M")
    basis, report = compute_rat(two, ctx, smash)
    assert len(basis) == 2 * M.dim
    assert report.passed, report.render()


def _direct_sum_action(M, block, idx):
    m, n = idx
    half, pos = divmod(m, block)
    img = M.action.column((pos, n))
    return {(half * block + j,): v for (j,), v in img.data.items()}


def test_adjunction_roundtrips(field):
    ctx = right_left_context(field)
    N = trivial_module(ctx)
    M = induce_doi_hopf(N, ctx)
    report = adjunction_maps(M, N, ctx)
    assert report.passed, report.render()


def test_adjunction_unit_formula(field):
    # the unit map tags a module morphism with the coaction leg
    ctx = right_left_context(field)
    N = trivial_module(ctx)
    M = induce_doi_hopf(N, ctx)
    from quasihopf.doihopf import _module_hom_basis
    homs = _module_hom_basis(M, N, ctx.comodule.alg)
    assert homs, "expected a nonzero morphism space"
    mat = homs[0]
    for m in range(M.dim):
        lam = M.coaction.column((m,))
        expect = Tensor(field, (ctx.coalgebra.dim, N.dim))
        for (c, m0), v in lam.data.items():
            for j in range(N.dim):
                if mat[j][m0]:
                    expect = expect + Tensor(field, expect.dims,
                                             {(c, j): v * mat[j][m0]})
        # evaluate xi through the same formula used by the checker
        got = Tensor(field, expect.dims)
        for (c, m0), v in lam.data.items():
            for j in range(N.dim):
                if mat[j][m0]:
                    got = got + Tensor(field, expect.dims, {(c, j): v * mat[j][m0]})
        assert got == expect


@pytest.mark.parametrize("make", [kz2, h2])
def test_coring_comodule_roundtrip(field, make):
    ctx = right_left_context(field, make)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    comodule, coring = doihopf_to_coring_comodule(M, ctx)
    assert verify_coring(coring).passed
    report = verify_coring_comodule(comodule)
    assert report.passed, report.render()
    back = coring_comodule_to_doihopf(comodule, ctx)
    for i in range(M.dim):
        assert back.coaction.column((i,)) == M.coaction.column((i,))
    assert verify_doi_hopf(back, ctx).passed


def test_translate_left_right_to_canonical_and_back(field):
    ctx = left_right_context(field)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    moved, ctx2 = translate_variant(M, ctx, "right-left")
    report = verify_doi_hopf(moved, ctx2)
    assert report.passed, report.render()
    back, ctx3 = translate_variant(moved, ctx2, "left-right")
    assert ctx3.variant == "left-right"
    for i in range(M.dim):
        assert back.coaction.column((i,)) == M.coaction.column((i,))
        for a in range(ctx.comodule.alg.dim):
            assert back.action.column((a, i)) == M.action.column((a, i))
    assert verify_doi_hopf(back, ctx3).passed


@pytest.mark.parametrize("variant", ["right-right", "left-left"])
def test_induce_reflected_variants(field, variant):
    H = h2(field)
    base = c2(field, H)
    if variant == "right-right":
        A = regular_comodule_algebra(H, "right")
        ctx = DoiHopfContext(variant, A, base)
    else:
        B = regular_comodule_algebra(H, "left")
        action = LinMap.from_function(
            field, (H.dim, 2), (2,),
            lambda idx: {(idx[1],): H.counit_scalar(idx[0])})
        C = ModuleCoalgebra(H, "left", 2, base.comult, base.counit,
                            left_action=action)
        ctx = DoiHopfContext(variant, B, C)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    report = verify_doi_hopf(M, ctx)
    assert report.passed, report.render()


def test_transport_twist_roundtrip(field):
    from quasihopf.comodule import bicomodule_to_right_op_tensor
    from quasihopf.modcoalg import bimodule_to_op_tensor_module_coalgebra
    from quasihopf.hopf import op_tensor
    H = h2(field)
    A = hh_bicomodule(field, H)
    square = op_tensor(H)
    first, second, _, witness, _ = bicomodule_to_right_op_tensor(A, base=square)
    assert witness is not None
    C = bimodule_to_op_tensor_module_coalgebra(
        h2_bimodule_coalgebra(field, H), base=square)
    ctx1 = DoiHopfContext("left-right", first, C)
    ctx2 = DoiHopfContext("left-right", second, C)
    M = induce_doi_hopf(trivial_module(ctx1), ctx1)
    assert verify_doi_hopf(M, ctx1).passed
    moved = transport_twist(M, witness, ctx1, ctx2)
    report = verify_doi_hopf(moved, ctx2)
    assert report.passed, report.render()
    back = transport_twist(moved, witness.inverse_witness(), ctx2, ctx1)
    for i in range(M.dim):
        assert back.coaction.column((i,)) == M.coaction.column((i,))


def test_transport_by_unit_witness_is_identity(field):
    from quasihopf.comodule import TwistWitness
    from quasihopf.tensor import unit_tensor
    ctx = left_right_context(field)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    V = TwistWitness(ctx.comodule,
                     unit_tensor((ctx.comodule.alg, ctx.H.alg)))
    moved = transport_twist(M, V, ctx, ctx)
    for i in range(M.dim):
        assert moved.coaction.column((i,)) == M.coaction.column((i,))


def test_translate_right_left_to_left_left(field):
    # over the ordinary Hopf base the canonical module crosses to the
    # left-left world and verifies over the opposite base
    ctx_src = right_left_context(field, kz2)
    M = induce_doi_hopf(trivial_module(ctx_src), ctx_src)
    moved, ctx2 = translate_variant(M, ctx_src, "left-left")
    assert ctx2.variant == "left-left"
    report = verify_doi_hopf(moved, ctx2)
    assert report.passed, report.render()
    back, ctx3 = translate_variant(moved, ctx2, "right-left")
    for i in range(M.dim):
        assert back.coaction.column((i,)) == M.coaction.column((i,))


def test_cyclic_submodule_is_rational(field):
    # the recovered coaction maps each cyclic submodule into the span of
    # the coalgebra with itself, so the submodule is rational on its own
    ctx = right_left_context(field)
    M = induce_doi_hopf(trivial_module(ctx), ctx)
    collapsed, smash = to_smash_module(M, ctx)
    recovered, report = rational_check(collapsed, ctx, smash)
    assert report.passed
    from quasihopf import linalg
    dC = ctx.coalgebra.dim
    for i in range(M.dim):
        seed = Tensor.basis(field, (M.dim,), (i,))
        span = [seed.to_flat()]
        frontier = [seed]
        while frontier:
            nxt = []
            for vec in frontier:
                for n in range(smash.carrier.dim):
                    img = collapsed.act(n, vec)
                    if not linalg.in_span(field, span, img.to_flat()):
                        span.append(img.to_flat())
                        nxt.append(img)
            frontier = nxt
        # coaction legs of every span vector stay inside the span
        for vec_flat in span:
            vec = Tensor.from_flat(field, (M.dim,), vec_flat)
            tagged = Tensor(field, (dC, M.dim))
            for (m,), v in vec.data.items():
                tagged = tagged + recovered.coaction.column((m,)).scale(v)
            for c in range(dC):
                slice_vec = [tagged.get((c, m)) for m in range(M.dim)]
                assert linalg.in_span(field, span, slice_vec)
