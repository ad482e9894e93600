import random
from fractions import Fraction

import pytest

import oracles
from opd.exactcat import LinMap, Space, compose
from opd.operad import (
    SeqMap,
    Sequence,
    ass_operad,
    check_operad,
    check_operad_map,
    free_extension,
    free_operad,
    free_unit,
    rescaled_ass,
    unit_operad,
)
from opd.opcolim import (
    IncompatibleCocone,
    PushoutProblem,
    build_pushout,
    coproduct_problem,
    induced_morphism,
    psi_bar_via_operadic_functor,
    spanning_report,
    verify_universal,
)

N = 4
U2 = Sequence({2: Space(1)})


def split_problem(n_max, v_dim=2, f_zero=False):
    """O = F(W) with W(2) = k², U(2) = k included as the first generator."""
    w = Sequence({2: Space(2)})
    v = Sequence({2: Space(v_dim)})
    fw = free_operad(w, n_max)
    gbar = SeqMap(U2, fw.seq, {2: compose(free_unit(fw)[2], LinMap.from_rows([[1], [0]]))})
    fm = LinMap.zero(Space(1), Space(v_dim)) if f_zero else \
        LinMap.from_rows([[1]] + [[0]] * (v_dim - 1))
    return PushoutProblem(SeqMap(U2, v, {2: fm}), gbar, fw)


def merged_generator_dim(prob):
    """dim (V ⊔_U W)(2) = dim V + dim W − rank [f; −ḡ], from dense matrices."""
    f = oracles.dense(prob.f[2])
    g = oracles.dense(compose(_gen_projection(prob), prob.gbar[2]))
    stacked = f + [[-x for x in row] for row in g]
    return len(f) + len(g) - oracles.rank(stacked)


def _gen_projection(prob):
    # ḡ lands in the span of the corollas, so projecting onto them loses nothing
    fw = prob.o
    inc = free_unit(fw)[2]
    rows = [[1 if inc.cols[j].get(i) else 0 for i in range(fw.seq[2].dim)]
            for j in range(inc.source.dim)]
    return LinMap.from_rows(rows, fw.seq[2], inc.source)


# -- coproducts ---------------------------------------------------------------

def test_adjoining_to_unit_operad_is_free():
    res = build_pushout(coproduct_problem(U2, unit_operad(5)), 5, exact=True)
    assert res.dims()[1:] == [oracles.catalan(n - 1) for n in range(1, 6)]
    assert res.dims() == free_operad(U2, 5).dims()
    assert check_operad(res.p).status == "pass"


def _two_colour_counts(n_max):
    """Trees with binary generator vertices and Ass vertices of arity ≥ 2 where
    no Ass vertex sits directly on another (those would merge)."""
    leaf = [0, 1] + [0] * (n_max - 1)
    g = [0] * (n_max + 1)
    a = [0] * (n_max + 1)

    def conv(x, y):
        return [sum(x[i] * y[n - i] for i in range(n + 1)) for n in range(n_max + 1)]

    for _ in range(n_max):
        tot = [l + x + y for l, x, y in zip(leaf, g, a)]
        g = conv(tot, tot)
        child = [l + x for l, x in zip(leaf, g)]
        power, acc = conv(child, child), [0] * (n_max + 1)
        for _k in range(2, n_max + 1):
            acc = [u + v for u, v in zip(acc, power)]
            power = conv(power, child)
        a = acc
    return [x + y + l for x, y, l in zip(g, a, leaf)]


def test_coproduct_with_positive_ass():
    o = rescaled_ass({1: 1, 2: 1, 3: 1, 4: 1}, N)
    res = build_pushout(coproduct_problem(U2, o), N, exact=True)
    assert res.dims() == _two_colour_counts(N) == [0, 1, 2, 7, 31]
    assert check_operad(res.p).status == "pass"


def test_coproduct_with_nullary_ass_is_truncated():
    res = build_pushout(coproduct_problem(U2, ass_operad(max_arity=3)), 3, t_max=2)
    assert res.truncated
    assert res.dims()[2] > 2


# -- split cells --------------------------------------------------------------

@pytest.mark.parametrize("f_zero", [False, True])
def test_split_cell_is_free_on_glued_generators(f_zero):
    prob = split_problem(5, f_zero=f_zero)
    res = build_pushout(prob, 5, exact=True)
    k = merged_generator_dim(prob)
    assert k == 3
    expect = free_operad(Sequence({2: Space(k)}), 5).dims()
    assert res.dims() == expect
    assert res.dims()[1:] == [oracles.catalan(n - 1) * k ** (n - 1) for n in range(1, 6)]


def test_exact_stabilization_certificate():
    res = build_pushout(split_problem(5), 5, exact=True)
    for n, c in res.certificates.items():
        if n < 2:
            continue
        assert c["exact"]
        assert c["stable_from"] <= n - 1
        assert c["dims"][n - 1] == res.dims()[n]


def test_pushout_is_an_operad_and_legs_commute():
    prob = split_problem(N)
    res = build_pushout(prob, N, exact=True, verify=True)
    assert check_operad(res.p).status == "pass"
    assert check_operad_map(res.f_prime).status == "pass"
    for n in range(N + 1):
        assert compose(res.f_prime[n], prob.gbar[n]) == compose(res.gbar_prime[n], prob.f[n])


def test_psi_bar_matches_operadic_functor():
    res = build_pushout(split_problem(N), N, exact=True)
    for c in res.state.cells.values():
        assert psi_bar_via_operadic_functor(res, c) == c.to_final


@pytest.mark.parametrize("kind", ["kill", "iso", "inj"])
def test_small_pushouts_into_rescaled_ass(kind):
    o = rescaled_ass({1: 1, 2: 2, 3: -3, 4: 5}, N)
    v = {"kill": Sequence({}), "iso": U2, "inj": Sequence({2: Space(2)})}[kind]
    fm = {"kill": LinMap.zero(Space(1), Space(0)), "iso": LinMap.from_rows([[3]]),
          "inj": LinMap.from_rows([[1], [1]])}[kind]
    prob = PushoutProblem(SeqMap(U2, v, {2: fm}),
                          SeqMap(U2, o.seq, {2: LinMap.from_rows([[2]])}), o)
    res = build_pushout(prob, N, exact=True, verify=True)
    assert check_operad(res.p).status == "pass"
    if kind == "iso":
        # pushing out along an isomorphism changes nothing
        assert res.dims() == o.dims()
        assert all(res.f_prime[n].is_iso() for n in range(1, N + 1))
    if kind == "kill":
        # killing the binary product of Ass kills everything above arity 1
        assert res.dims() == [0, 1, 0, 0, 0]


def test_truncation_is_flagged():
    res = build_pushout(coproduct_problem(Sequence({0: Space(1)}), ass_operad(max_arity=3)),
                        3, t_max=1)
    assert res.truncated


# -- universal property -------------------------------------------------------

def cocones(prob, count, seed):
    rng = random.Random(seed)
    fw = prob.o
    w = fw.gens
    out = []
    for _ in range(count):
        s = {n: Fraction(rng.choice([1, 2, 3, -1, -2, 5]), rng.choice([1, 2, 3]))
             for n in range(N + 1)}
        p2 = rescaled_ass(s, N)
        phi = LinMap.from_rows([[rng.randint(-3, 3), rng.randint(-3, 3)]])
        f2 = free_extension(fw, p2, SeqMap(w, p2.seq, {2: phi}))
        fg = compose(f2[2], prob.gbar[2])
        g2 = SeqMap(prob.v, p2.seq, {2: LinMap.from_rows([[fg.cols[0].get(0, 0),
                                                             rng.randint(-3, 3)]])})
        out.append((f2, g2))
    return out


def test_universal_property_on_random_cocones():
    prob = split_problem(N)
    res = build_pushout(prob, N, exact=True)
    samples = cocones(prob, 20, seed=1)
    rep = verify_universal(res, samples)
    assert rep.status == "pass", rep.details[:3]
    assert rep.checked >= 20 * (N + 1)


def test_reflexive_cocone_gives_identity():
    res = build_pushout(split_problem(N), N, exact=True)
    h = induced_morphism(res, res.f_prime, res.gbar_prime)
    assert all(h[n] == LinMap.identity(res.p.seq[n]) for n in range(N + 1))


def test_spanning():
    res = build_pushout(split_problem(N), N, exact=True)
    assert spanning_report(res).status == "pass"


def test_incompatible_cocone_rejected():
    prob = split_problem(N)
    res = build_pushout(prob, N, exact=True)
    f2, g2 = cocones(prob, 1, seed=7)[0]
    bad = SeqMap(g2.source, g2.target, {2: LinMap.from_rows([[g2[2].cols[0].get(0, 0) + 1,
                                                               0]])})
    with pytest.raises(IncompatibleCocone):
        induced_morphism(res, f2, bad)
