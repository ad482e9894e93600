import pytest

import oracles
from opd.algcolim import (
    AlgebraCellPresentation,
    IncompatibleCocone,
    algebra_induced_morphism,
    algebra_pushout,
    extend_cells,
    present,
    verify_algebra_universal,
)
from opd.algebra import (
    SGraphMap,
    algebras_equal,
    check_algebra,
    check_algebra_map,
    free_algebra,
    free_algebra_extension,
    free_algebra_map,
    free_algebra_unit,
    graph_compose,
    initial_algebra,
    restrict,
    sgraph,
    zero_graph,
)
from opd.exactcat import LinMap, Space
from opd.operad import (
    SeqMap,
    Sequence,
    ass_operad,
    check_operad_map,
    free_extension,
    free_operad,
    identity_map,
)

N = 3
S = ("x", "y", "z")
XY = {("x", "y"): 1}
CHAIN = {("x", "y"): 1, ("y", "z"): 1}


def ass():
    return ass_operad(max_arity=N)


def adjoin_yz():
    """F(x→y) with the arrow y→z attached along the empty graph."""
    fa = free_algebra(ass(), sgraph(S, XY), N)
    z = sgraph(S, {("y", "z"): 1})
    y0 = zero_graph(S)
    return fa, algebra_pushout(fa, SGraphMap.zero(y0, z), SGraphMap.zero(y0, fa.carrier), N, N)


# -- push-outs ----------------------------------------------------------------

def test_adjoining_an_arrow_gives_the_longer_chain():
    _, res = adjoin_yz()
    big = free_algebra(ass(), sgraph(S, CHAIN), N)
    assert res.algebra.carrier.dims() == big.carrier.dims()
    assert res.algebra.carrier.dims() == oracles.path_counts(S, CHAIN, N)


def test_adjoined_algebra_is_the_free_one():
    fa, res = adjoin_yz()
    big = free_algebra(ass(), sgraph(S, CHAIN), N)
    inc = SGraphMap(sgraph(S, XY), big.generators, {("x", "y"): LinMap.identity(Space(1))})
    f2 = free_algebra_map(inc, fa, big)
    g2 = SGraphMap(res.f.target, big.carrier,
                   {("y", "z"): free_algebra_unit(big)[("y", "z")]})
    h = algebra_induced_morphism(res, big, f2, g2)
    for p in big.carrier.pairs():
        if big.carrier[p].dim:
            assert h[p].is_iso()
    assert check_algebra_map(h, res.algebra, big).status != "fail"


def iso_pushout():
    fa = free_algebra(ass(), sgraph(S, CHAIN), N)
    y = sgraph(S, {("y", "z"): 1})
    eta = free_algebra_unit(fa)
    gbar = SGraphMap(y, fa.carrier, {("y", "z"): eta[("y", "z")]})
    return fa, algebra_pushout(fa, SGraphMap.identity(y), gbar, N, N)


def test_psi_compatibility_on_every_cell():
    _, res = iso_pushout()
    assert res.report.status != "fail", res.report.details[:3]
    cells = sum(len(st.cells) for st in res.stages)
    assert res.report.checked >= cells > 0


def test_pushout_algebra_axioms():
    _, res = adjoin_yz()
    assert check_algebra(res.algebra).status != "fail"
    assert res.certificate.startswith("truncated")


def test_pushout_along_isomorphism():
    fa, res = iso_pushout()
    assert res.algebra.carrier.dims() == fa.carrier.dims()
    assert all(res.f_prime[p].is_iso() for p in fa.carrier.pairs() if fa.carrier[p].dim)


def test_identifying_parallel_arrows():
    objs = ("x", "y")
    fa = free_algebra(ass(), sgraph(objs, {("x", "y"): 2}), N)
    u = free_algebra_unit(fa)[("x", "y")]
    diff = dict(u.cols[0])
    for k, v in u.cols[1].items():
        diff[k] = diff.get(k, 0) - v
    y = sgraph(objs, XY)
    gbar = SGraphMap(y, fa.carrier, {("x", "y"): LinMap(y[("x", "y")], fa.carrier[("x", "y")],
                                                        (diff,))})
    res = algebra_pushout(fa, SGraphMap.zero(y, zero_graph(objs)), gbar, N, N)
    single = free_algebra(ass(), sgraph(objs, XY), N)
    assert res.algebra.carrier.dims() == single.carrier.dims()
    assert check_algebra(res.algebra).status != "fail"


def test_universal_property_and_uniqueness():
    fa, res = adjoin_yz()
    big = free_algebra(ass(), sgraph(S, CHAIN), N)
    inc = SGraphMap(sgraph(S, XY), big.generators, {("x", "y"): LinMap.identity(Space(1))})
    f2 = free_algebra_map(inc, fa, big)
    samples = []
    for c in (1, 2, -3):
        g2 = SGraphMap(res.f.target, big.carrier,
                       {("y", "z"): free_algebra_unit(big)[("y", "z")] @ LinMap.from_rows([[c]])})
        samples.append((big, f2, g2))
    rep = verify_algebra_universal(res, samples)
    assert rep.status == "pass", rep.details[:3]


def test_reflexive_cocone_is_identity():
    _, res = adjoin_yz()
    h = algebra_induced_morphism(res, res.algebra, res.f_prime, res.gbar_prime)
    assert h == SGraphMap.identity(res.algebra.carrier)


def test_incompatible_cocone():
    objs = ("x", "y")
    fa = free_algebra(ass(), sgraph(objs, XY), N)
    y = sgraph(objs, XY)
    eta = free_algebra_unit(fa)
    res = algebra_pushout(fa, SGraphMap.identity(y), eta, N, N)
    doubled = SGraphMap(y, fa.carrier, {("x", "y"): eta[("x", "y")] @ LinMap.from_rows([[2]])})
    with pytest.raises(IncompatibleCocone):
        algebra_induced_morphism(res, fa, SGraphMap.identity(fa.carrier), doubled)


# -- change of operad -----------------------------------------------------------

def binary_to_ass():
    v = Sequence({2: Space(1)})
    fv = free_operad(v, N)
    a = ass()
    return fv, free_extension(fv, a, SeqMap(v, a.seq, {2: LinMap.from_rows([[1]])}))


def chain_presentation(fv):
    z = sgraph(S, CHAIN)
    y0 = zero_graph(S)
    init = initial_algebra(fv, S)
    return AlgebraCellPresentation(fv, S, [(SGraphMap.zero(y0, init.carrier),
                                            SGraphMap.zero(y0, z))], N, N)


def test_presentation_gives_free_algebra():
    fv, _ = binary_to_ass()
    a = present(chain_presentation(fv))
    assert a.carrier.dims() == free_algebra(fv, sgraph(S, CHAIN), N).carrier.dims()


def test_extension_of_free_is_free():
    fv, phi = binary_to_ass()
    assert check_operad_map(phi).status == "pass"
    ext = extend_cells(phi, chain_presentation(fv))
    fp = free_algebra(ass(), sgraph(S, CHAIN), N)
    assert ext.algebra.carrier.dims() == fp.carrier.dims()
    m = free_algebra_extension(fp, ext.algebra, ext.steps[-1].gbar_prime)
    assert all(m[p].is_iso() for p in fp.carrier.pairs() if fp.carrier[p].dim)
    assert check_algebra_map(m, fp, ext.algebra).status != "fail"


def test_extension_agrees_on_maps():
    # with F_O(Z) ≅ A and F_P(Z) ≅ φ₊A, the unit A → φ*φ₊A is the map
    # F_O(Z) → φ*F_P(Z) adjoint to the generator inclusion Z → F_P(Z)
    fv, phi = binary_to_ass()
    ext = extend_cells(phi, chain_presentation(fv))
    fo = free_algebra(fv, sgraph(S, CHAIN), N)
    fp = free_algebra(ass(), sgraph(S, CHAIN), N)
    m_o = free_algebra_extension(fo, ext.source_algebra, ext.source_steps[-1].gbar_prime)
    m_p = free_algebra_extension(fp, ext.algebra, ext.steps[-1].gbar_prime)
    k = free_algebra_extension(fo, restrict(phi, fp), free_algebra_unit(fp))
    assert graph_compose(ext.unit, m_o) == graph_compose(m_p, k)


def test_unit_is_algebra_map():
    fv, phi = binary_to_ass()
    ext = extend_cells(phi, chain_presentation(fv))
    back = restrict(phi, ext.algebra)
    assert check_algebra_map(ext.unit, ext.source_algebra, back).status != "fail"


def test_extension_along_identity():
    fv, _ = binary_to_ass()
    ext = extend_cells(identity_map(fv), chain_presentation(fv))
    assert algebras_equal(ext.algebra, ext.source_algebra)
    assert ext.unit == SGraphMap.identity(ext.algebra.carrier)
