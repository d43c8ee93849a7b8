"""Every hand-derived reference value, recomputed by the brute-force oracle first.

Each case carries the reference value, an oracle computation and the package
computation.  The oracle must reproduce the reference, and the package must
reproduce the oracle.
"""

from fractions import Fraction

import pytest
import sympy

from conftest import CORPUS, make_ring
from oracle import brute
from gorenstein_lab import lab
from gorenstein_lab.ideal import Ideal, reduced_groebner_basis
from gorenstein_lab.koszul import (
    depth,
    koszul_cohomology,
    koszul_connecting_map,
    local_cohomology_socles,
    phi_kernel,
)
from gorenstein_lab.local import (
    index_of_reducibility,
    is_regular_sequence,
    is_system_of_parameters,
    limit_closure,
    local_part,
    random_homogeneous_sop,
)
from gorenstein_lab.polynomial import PolyRing
from gorenstein_lab.resolutions import (
    compute_ell,
    ext_module,
    ext_socle_system,
    goto_sakurai_check,
    graded_free_resolution,
    identity_deg0,
    lift_chain_map,
)

XY = ["x", "y"]
QXY = PolyRing(XY)


def oq(name, extra=(), D=8):
    variables, ideal = CORPUS[name]
    return brute.Quotient(variables, list(ideal) + list(extra), D)


def gens_text(ideal):
    return [str(g) for g in ideal.gb]


def as_set(polys):
    return {frozenset(p.items()) for p in polys}


def impl_gb(gens):
    return as_set([dict(g.terms) for g in reduced_groebner_basis(Ideal(QXY, gens))])


CASES = []


def case(name, expected):
    def register(fn):
        CASES.append(pytest.param(expected, fn, id=name))
        return fn
    return register


# -- Gröbner bases, colons, saturation, dimension, Hilbert functions ------------


@case("gb-x2-xy", {frozenset({((2, 0), Fraction(1))}), frozenset({((1, 1), Fraction(1))})})
def _gb1():
    return as_set(brute.reduced_gb(XY, ["x^2", "x*y"])), impl_gb(["x^2", "x*y"])


@case("gb-x-minus-y-y2", {frozenset({((1, 0), Fraction(1)), ((0, 1), Fraction(-1))}), frozenset({((0, 2), Fraction(1))})})
def _gb2():
    return as_set(brute.reduced_gb(XY, ["x - y", "y^2"])), impl_gb(["x - y", "y^2"])


def _colon_case(ideal, f, expected):
    Q = brute.Quotient(XY, ideal)
    oracle = brute.colon_equals(Q, f, expected)
    impl_gens = gens_text(Ideal(QXY, ideal).colon(QXY.parse(f)))
    return oracle, brute.colon_equals(Q, f, impl_gens)


@case("colon-x2-xy-by-x", True)
def _c1():
    return _colon_case(["x^2", "x*y"], "x", ["x", "y"])


@case("colon-x2-xy-y3-by-y2", True)
def _c2():
    return _colon_case(["x^2", "x*y", "y^3"], "y^2", ["x", "y"])


@case("saturation-x2-xy-by-m", True)
def _sat():
    Q = brute.Quotient(XY, ["x^2", "x*y"])
    impl = Ideal(QXY, ["x^2", "x*y"]).saturation(Ideal.maximal(QXY))
    return brute.saturation_equals(Q, ["x"]), brute.saturation_equals(Q, gens_text(impl))


@case("dim-x2-xy", 1)
def _dim():
    return brute.Quotient(XY, ["x^2", "x*y"]).krull_dim(), Ideal(QXY, ["x^2", "x*y"]).dimension()


@case("quotient-basis-x2-y2", {(0, 0), (1, 0), (0, 1), (1, 1)})
def _qb():
    Q = brute.Quotient(XY, ["x^2", "y^2"])
    oracle = {m for e in range(Q.D + 1) for m in Q.standard_monomials(e)}
    return oracle, set(Ideal(QXY, ["x^2", "y^2"]).quotient_basis().monomials)


@case("quotient-basis-x2-xy-infinite", False)
def _qb_inf():
    return brute.Quotient(XY, ["x^2", "x*y"]).hf(8) == 0, Ideal(QXY, ["x^2", "x*y"]).quotient_basis().finite


@case("hilbert-x2-xy", [1, 2, 1, 1])
def _hf1():
    return [brute.Quotient(XY, ["x^2", "x*y"]).hf(e) for e in range(4)], [Ideal(QXY, ["x^2", "x*y"]).hilbert_function(e) for e in range(4)]


@case("hilbert-x2-y2", [1, 2, 1, 0])
def _hf2():
    return [brute.Quotient(XY, ["x^2", "y^2"]).hf(e) for e in range(4)], [Ideal(QXY, ["x^2", "y^2"]).hilbert_function(e) for e in range(4)]


# -- local algebra ----------------------------------------------------------------


def _local_case(variables, gens, probes):
    ring = PolyRing(variables)
    L = local_part(Ideal(ring, gens))
    oracle = tuple(brute.local_membership(variables, gens, p) for p in probes)
    return oracle, tuple(L.contains(ring.parse(p)) for p in probes)


@case("local-part-x-times-x-minus-1", (True, False, True, False))
def _lp1():
    return _local_case(["x"], ["x*(x-1)"], ["x", "1", "x^2 + x", "x + 1"])


@case("local-part-y-times-x-minus-1", (True, False, False, True, False))
def _lp2():
    return _local_case(XY, ["y*(x-1)"], ["y", "x", "1", "x*y + y", "x - 1"])


@case("sop-r1-x", False)
def _sop():
    return oq("R1", ["x"]).krull_dim() == 0, is_system_of_parameters(make_ring("R1"), ["x"])


@case("index-r1-y2", 2)
def _idx1():
    return oq("R1", ["y^2"]).socle_dim(), index_of_reducibility(make_ring("R1"), ["y^2"])


@case("index-qxy-m2", 2)
def _idx2():
    return oq("QXY", ["x^2", "x*y", "y^2"]).socle_dim(), index_of_reducibility(make_ring("QXY"), ["x^2", "x*y", "y^2"])


@case("limit-closure-r1-y", True)
def _lc1():
    Q = oq("R1")
    return brute.limit_closure_equals(Q, ["y"], ["x", "y"]), brute.limit_closure_equals(Q, ["y"], gens_text(limit_closure(make_ring("R1"), ["y"])))


@case("limit-closure-r2-y", True)
def _lc2():
    Q = oq("R2")
    return brute.limit_closure_equals(Q, ["y"], ["y"]), brute.limit_closure_equals(Q, ["y"], gens_text(limit_closure(make_ring("R2"), ["y"])))


@case("regular-r1-y", False)
def _reg1():
    Q = oq("R1")
    return Q.is_nonzerodivisor(Q.poly("y")), is_regular_sequence(make_ring("R1"), ["y"])


@case("regular-r2-y", True)
def _reg2():
    Q = oq("R2")
    return Q.is_nonzerodivisor(Q.poly("y")), is_regular_sequence(make_ring("R2"), ["y"])


@case("random-sop-r1-degree-2", {(0, 2)})
def _rsop():
    oracle = set(oq("R1").standard_monomials(2))
    support = set()
    for seed in range(10):
        (f,) = random_homogeneous_sop(make_ring("R1"), 2, seed=seed).elements
        support |= set(f.terms)
    return oracle, support


# -- Koszul ------------------------------------------------------------------------


@case("connecting-map-composition-r2-s1-t3", True)
def _comp():
    Q = oq("QXY")
    x, y = Q.poly("x"), Q.poly("y")
    # level-2 entry: (xy)^(3-1) against (xy)^(2-1) * (xy)^(3-2)
    oracle = Q.pow(Q.mul(x, y), 2) == Q.mul(Q.mul(x, y), Q.mul(x, y))
    R = make_ring("QXY")
    direct = koszul_connecting_map(R, ["x", "y"], 1, 3)
    two = koszul_connecting_map(R, ["x", "y"], 1, 2).compose(koszul_connecting_map(R, ["x", "y"], 2, 3))
    return oracle, direct.equals(two) and dict(direct.maps[2][0][0].terms) == Q.pow(Q.mul(x, y), 2)


@case("koszul-h1-y-r1-total", 2)
def _h1():
    return brute.koszul_total_dim(oq("R1"), ["y"], 1, 1, range(-1, 5)), koszul_cohomology(make_ring("R1"), ["y"], 1).total_dim()


@case("koszul-h0-y-r1-total", 1)
def _h0():
    return brute.koszul_total_dim(oq("R1"), ["y"], 0, 1, range(0, 6)), koszul_cohomology(make_ring("R1"), ["y"], 0).total_dim()


@case("socle-r3", 1)
def _soc3():
    return oq("R3").socle_dim(), koszul_cohomology(make_ring("R3"), [], 0).socle_dim()


@case("socle-r4", 2)
def _soc4():
    return oq("R4").socle_dim(), koszul_cohomology(make_ring("R4"), [], 0).socle_dim()


def _limit_socles(name, seq):
    R = make_ring(name)
    return [local_cohomology_socles(R, i, seq=seq).limit_socle_dim for i in range(R.dim + 1)]


@case("local-cohomology-socles-r1", [1, 1])
def _lcs1():
    Q = oq("R1")
    oracle = [
        brute.koszul_socle_image(Q, ["y"], 0, 3, 5, range(0, 4)),
        brute.koszul_socle_image(Q, ["y"], 1, 2, 4, range(-4, 2)),
    ]
    return oracle, _limit_socles("R1", ["y"])


@case("local-cohomology-socles-qxy", [0, 0, 1])
def _lcs2():
    Q = oq("QXY")
    return [brute.koszul_socle_image(Q, ["x", "y"], k, 2, 4, range(-4, 1)) for k in range(3)], _limit_socles("QXY", ["x", "y"])


@case("local-cohomology-socles-r3", [1])
def _lcs3():
    return [oq("R3").socle_dim()], _limit_socles("R3", [])


def _oracle_depth(name, seq):
    Q = oq(name)
    for k in range(len(seq) + 1):
        if brute.koszul_total_dim(Q, seq, k, 1, range(-2, 5)):
            return k
    return None


@case("depth-r1", 0)
def _d1():
    return _oracle_depth("R1", ["y"]), depth(make_ring("R1"), ["y"])


@case("depth-r2", 1)
def _d2():
    return _oracle_depth("R2", ["y"]), depth(make_ring("R2"), ["y"])


@case("phi-kernel-r1-y-t1", 1)
def _pk1():
    return brute.koszul_kernel_dim(oq("R1"), ["y"], 1, 1, 5, range(-1, 3)), phi_kernel(make_ring("R1"), ["y"], 1)


@case("phi-kernel-r1-y-t3", 1)
def _pk3():
    return brute.koszul_kernel_dim(oq("R1"), ["y"], 1, 3, 7, range(-3, 2)), phi_kernel(make_ring("R1"), ["y"], 3)


# -- resolutions and Ext -------------------------------------------------------------


def _min_gens_of_m(name):
    return oq(name, ["x^2", "x*y", "y^2"]).hf(1)


@case("resolution-r1-m-step1", 2)
def _res1():
    R = make_ring("R1")
    return _min_gens_of_m("R1"), graded_free_resolution(R, R.m, 1).ranks()[1]


@case("resolution-r3-m-step1", 2)
def _res3():
    R = make_ring("R3")
    return _min_gens_of_m("R3"), graded_free_resolution(R, R.m, 1).ranks()[1]


@case("lift-qx-x2-to-x", "x")
def _lift():
    x = sympy.Symbol("x")
    q, r = sympy.div(x**2, x, x)
    assert r == 0
    R = make_ring("QX")
    F2 = graded_free_resolution(R, ["x^2"], 1).complex
    F1 = graded_free_resolution(R, ["x"], 1).complex
    return str(q), str(lift_chain_map(R, F2, F1, identity_deg0(R)).maps[1][0][0])


@case("ext1-qx-socle", [1, 1, 1])
def _ext1():
    Q = oq("QX")
    oracle = []
    for t in (1, 2, 3):
        K = brute.KoszulOracle(Q, ["x"], t)
        oracle.append(sum(K.socle_dim(1, e) for e in range(-t, 2)))
    return oracle, [ext_module(make_ring("QX"), t, 1).socle_dim() for t in (1, 2, 3)]


@case("ext0-r1-dims", [1, 1, 1])
def _ext0():
    Q = oq("R1")
    return [Q.annihilator_dim(t) for t in (1, 2, 3)], [ext_module(make_ring("R1"), t, 0).total_dim() for t in (1, 2, 3)]


@case("ext-system-qx-h1", (1, 1))
def _es1():
    Q = oq("QX")
    oracle_socle = sum(brute.KoszulOracle(Q, ["x"], 1).socle_dim(1, e) for e in range(-1, 2))
    oracle_image = brute.koszul_socle_image(Q, ["x"], 1, 1, 3, range(-1, 2))
    rec = ext_socle_system(make_ring("QX"), 1)
    return (oracle_socle, oracle_image), (rec.socle_dims[1], rec.image_socle_dims[1])


@case("ext-system-r1-h0-limit", 1)
def _es2():
    return oq("R1").annihilator_dim(1), ext_socle_system(make_ring("R1"), 0).limit_socle_dim


@case("ext-system-r3-h0-dims", 1)
def _es3():
    rec = ext_socle_system(make_ring("R3"), 0)
    assert len(set(rec.socle_dims.values())) == 1
    return oq("R3").annihilator_dim(1), rec.socle_dims[1]


@case("ell0-r3", 1)
def _ell0():
    # Ext^0(R/m^0, R) = 0 and Soc(0:m^t) = Soc R for t >= 1
    oracle = 1 if oq("R3").socle_dim() else 0
    return oracle, compute_ell(make_ring("R3"), 0)


@case("ell1-qx", 1)
def _ell1():
    Q = oq("QX")
    surj = all(brute.koszul_socle_image(Q, ["x"], 1, t, t + 2, range(-t, 2)) == 1 for t in (1, 2, 3))
    return (1 if surj else None), compute_ell(make_ring("QX"), 1)


@case("goto-sakurai-r1-h1-deep", True)
def _gs1():
    R1 = make_ring("R1")
    ell = compute_ell(R1, 1)
    Q = oq("R1")
    oracle = all(brute.koszul_socle_image(Q, ["y^%d" % n], 1, 1, 2, range(-2 * n, 3)) == 1 for n in (ell, ell + 1))
    return oracle, all(goto_sakurai_check(R1, 1, ["y^%d" % n]) for n in (ell, ell + 1))


@case("goto-sakurai-qx", True)
def _gs2():
    Q = oq("QX")
    oracle = all(brute.koszul_socle_image(Q, ["x^%d" % t], 1, 1, 2, range(-2 * t, 2)) == 1 for t in (1, 2))
    return oracle, all(goto_sakurai_check(make_ring("QX"), 1, ["x^%d" % t]) for t in (1, 2))


@case("goto-sakurai-r1-h0-y", True)
def _gs3():
    oracle = brute.koszul_socle_image(oq("R1"), ["y"], 0, 1, 4, range(0, 4)) == 1
    return oracle, goto_sakurai_check(make_ring("R1"), 0, ["y"])


@case("ext-pipeline-r1", [1, 1])
def _ep1():
    Q = oq("R1")
    oracle = [Q.annihilator_dim(1), brute.koszul_socle_image(Q, ["y"], 1, 2, 4, range(-4, 2))]
    return oracle, [ext_socle_system(make_ring("R1"), i).limit_socle_dim for i in (0, 1)]


@case("ext-pipeline-qxy-h2", 1)
def _ep2():
    return brute.koszul_socle_image(oq("QXY"), ["x", "y"], 2, 2, 4, range(-4, 1)), ext_socle_system(make_ring("QXY"), 2).limit_socle_dim


@case("ext-pipeline-r3-h0", 1)
def _ep3():
    return oq("R3").annihilator_dim(1), ext_socle_system(make_ring("R3"), 0).limit_socle_dim


# -- ring reports, sweeps, experiments ----------------------------------------------


def _oracle_verdict(name, sop):
    Q = oq(name)
    d = Q.krull_dim()
    dep = _oracle_depth(name, sop) if d else 0
    cm = dep == d
    typ = oq(name, sop).socle_dim() if cm else None
    return (d, dep, cm, bool(cm and typ == 1), typ)


def _impl_verdict(name):
    r = lab.analyze_ring(lab.load_ring({"vars": CORPUS[name][0], "ideal": CORPUS[name][1]}))
    return (r.dim, r.depth, r.cm, r.gorenstein, r.type)


@case("analyze-r1", (1, 0, False, False, None))
def _an1():
    return _oracle_verdict("R1", ["y"]), _impl_verdict("R1")


@case("analyze-r2", (1, 1, True, True, 1))
def _an2():
    return _oracle_verdict("R2", ["y"]), _impl_verdict("R2")


@case("analyze-r4", (0, 0, True, False, 2))
def _an4():
    return _oracle_verdict("R4", []), _impl_verdict("R4")


def _sweep(name, sop, max_n, socles):
    from math import comb

    seq = sop.split(",")
    oracle_rows = []
    for n in range(1, max_n + 1):
        oracle_rows.append(oq(name, ["(%s)^%d" % (s, n) for s in seq]).socle_dim())
    d = len(seq)
    prediction = sum(comb(d, i) * s for i, s in enumerate(socles))
    t = lab.index_sweep(lab.load_ring({"vars": CORPUS[name][0], "ideal": CORPUS[name][1]}), sop, max_n)
    return (oracle_rows, prediction), (t.indices(), t.prediction)


@case("sweep-r1-y", ([1, 2, 2, 2, 2, 2], 2))
def _sw1():
    oracle_socles = _lcs1()[0]
    return _sweep("R1", "y", 6, oracle_socles)


@case("sweep-r2-y", ([1, 1, 1, 1], 1))
def _sw2():
    Q = oq("R2")
    socles = [brute.koszul_socle_image(Q, ["y"], k, 2, 4, range(-4, 2)) for k in range(2)]
    return _sweep("R2", "y", 4, socles)


@case("sweep-qxy-x-y", ([1, 1, 1], 1))
def _sw3():
    return _sweep("QXY", "x,y", 3, _lcs2()[0])


@case("theorem-r1-20-samples", 0)
def _th1():
    v = lab.theorem_main_check({"vars": XY, "ideal": CORPUS["R1"][1]}, 20, seed=7)
    oracle = sum(1 for row in v.sample_rows if oq("R1", row[1].strip("()").split(", ")).socle_dim() == 1)
    return oracle, v.irreducible


@case("theorem-r2-first-sample", 1)
def _th2():
    v = lab.theorem_main_check({"vars": XY, "ideal": CORPUS["R2"][1]}, 20, seed=7)
    first = v.sample_rows[0][1].strip("()").split(", ")
    return oq("R2", first).socle_dim(), v.sample_rows[0][2]


@case("theorem-r3-zero-ideal", 1)
def _th3():
    v = lab.theorem_main_check({"vars": XY, "ideal": CORPUS["R3"][1]}, 3)
    return oq("R3").socle_dim(), v.sample_rows[0][2]


@case("corollary-r2-y-powers", [1, 1, 1, 1])
def _co1():
    R2 = make_ring("R2")
    return [oq("R2", ["y^%d" % n]).socle_dim() for n in range(1, 5)], [index_of_reducibility(R2, ["y^%d" % n]) for n in range(1, 5)]


@case("corollary-r1-none-in-deep-powers", True)
def _co2():
    # every degree-n form of R1 is a multiple of y^n for n >= 2, and (y^n) has index 2
    Q = oq("R1")
    oracle = all(Q.standard_monomials(n) == [(0, n)] and oq("R1", ["y^%d" % n]).socle_dim() == 2 for n in range(2, 5))
    c = lab.corollary_search({"vars": XY, "ideal": CORPUS["R1"][1]}, 4, 50)
    return oracle, all(row[1].startswith("none") and row[3] == "impossible for n >= ell_d" for row in c.rows[1:])


@case("corollary-qxy-power-ideals", [1, 1, 1])
def _co3():
    R = make_ring("QXY")
    return [oq("QXY", ["x^%d" % n, "y^%d" % n]).socle_dim() for n in (1, 2, 3)], [
        index_of_reducibility(R, ["x^%d" % n, "y^%d" % n]) for n in (1, 2, 3)]


@pytest.mark.parametrize("expected,compute", CASES)
def test_reference_value(expected, compute):
    oracle, impl = compute()
    assert oracle == expected, "oracle disagrees with the reference value"
    assert impl == oracle, "implementation disagrees with the oracle"
