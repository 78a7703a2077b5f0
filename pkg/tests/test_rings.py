import random
from fractions import Fraction

import pytest

from nlsslab.errors import PoleError, RingMismatchError
from nlsslab.rings import GaussianRational, Poly, RatFunc, VarSpace, gr


def rand_gr(rng, max_den=10):
    return GaussianRational(
        Fraction(rng.randint(-6, 6), rng.randint(1, max_den)),
        Fraction(rng.randint(-6, 6), rng.randint(1, max_den)),
    )


def rand_poly(rng, space, nterms=4, max_pow=3):
    p = Poly.zero(space)
    for _ in range(nterms):
        t = Poly.const(space, rand_gr(rng))
        for name in space.names:
            lo = -max_pow if space.unit[space.index(name)] else 0
            pw = rng.randint(lo, max_pow)
            if pw >= 0:
                t = t * Poly.var(space, name) ** pw
            else:
                t = t * Poly.var(space, name, pw)
        p = p + t
    return p


def test_gaussian_rational_field_ops():
    a = gr(Fraction(1, 2), Fraction(-3, 4))
    b = gr(2, Fraction(1, 3))
    assert (a + b) - b == a
    assert a * b == b * a
    assert (a * b) / b == a
    assert a * a.inv() == gr(1)
    assert (a ** 3) * (a ** -3) == gr(1)
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert complex(gr(Fraction(1, 2), 1)) == 0.5 + 1j


def test_gaussian_rational_zero_division():
    with pytest.raises(PoleError):
        gr(0).inv()


def test_varspace_validation():
    with pytest.raises(ValueError):
        VarSpace(["x", "x"])
    with pytest.raises(KeyError):
        VarSpace(["x"], conj_pairs={"x": "y"})
    with pytest.raises(ValueError):
        VarSpace(["x", "y"], conj_pairs={"x": "y"}, units=["x"])
    sp = VarSpace(["a", "ab", "r"], conj_pairs={"a": "ab"})
    assert sp.conj_perm == (1, 0, 2)


def test_poly_basic_identity():
    sp = VarSpace(["x", "y"])
    x = Poly.var(sp, "x")
    y = Poly.var(sp, "y")
    assert (x + y) ** 2 == x ** 2 + 2 * x * y + y ** 2
    assert (x - y) * (x + y) == x ** 2 - y ** 2
    assert (x * 0).is_zero()


def test_poly_conj_pairs_and_units():
    sp = VarSpace(["c", "cb", "u"], conj_pairs={"c": "cb"}, units=["u"])
    c = Poly.var(sp, "c")
    cb = Poly.var(sp, "cb")
    u = Poly.var(sp, "u")
    assert c.conj() == cb
    assert (gr(0, 1) * c).conj() == gr(0, -1) * cb
    assert u.conj() == Poly.var(sp, "u", -1)
    assert (u * u.conj()) == Poly.one(sp)
    p = gr(2, 3) * c * u ** 2
    assert p.conj().conj() == p


def test_poly_negative_power_guard():
    sp = VarSpace(["x", "u"], units=["u"])
    with pytest.raises(ValueError):
        Poly.var(sp, "x", -1)
    assert Poly.var(sp, "u", -2) * Poly.var(sp, "u", 2) == Poly.one(sp)


def test_poly_derivative():
    sp = VarSpace(["x", "y"])
    x = Poly.var(sp, "x")
    y = Poly.var(sp, "y")
    p = x ** 3 * y + 2 * x
    assert p.derivative("x") == 3 * x ** 2 * y + 2
    assert p.derivative("y") == x ** 3
    spu = VarSpace(["u"], units=["u"])
    with pytest.raises(ValueError):
        Poly.var(spu, "u").derivative("u")


def test_poly_space_mismatch():
    a = Poly.var(VarSpace(["x"]), "x")
    b = Poly.var(VarSpace(["y"]), "y")
    with pytest.raises(RingMismatchError):
        a + b


def test_poly_eval_exact_and_float():
    sp = VarSpace(["x", "u"], units=["u"])
    p = Poly.var(sp, "x") ** 2 + gr(0, 1) * Poly.var(sp, "u", -1)
    exact = p.evaluate({"x": Fraction(1, 2), "u": gr(0, 1)})
    assert exact == gr(Fraction(1, 4) + 1, 0)
    approx = p.evaluate({"x": 0.5, "u": 1j})
    assert abs(approx - complex(exact)) < 1e-12


def test_poly_eval_partial():
    sp = VarSpace(["x", "y"])
    x = Poly.var(sp, "x")
    y = Poly.var(sp, "y")
    p = x ** 2 * y + 3 * y
    assert p.eval_partial({"x": 2}) == 7 * y


def test_ratfunc_cross_mult_equality():
    sp = VarSpace(["x"])
    x = Poly.var(sp, "x")
    a = RatFunc(x ** 2 - 1, x - 1)
    b = RatFunc.from_poly(x + 1)
    assert a == b
    assert not (a == RatFunc.from_poly(x - 1))


def test_ratfunc_partial_fraction_cancellation():
    sp = VarSpace(["l", "m"])
    l = Poly.var(sp, "l")
    m = Poly.var(sp, "m")
    a = RatFunc(Poly.one(sp), l - m)
    b = RatFunc(Poly.one(sp), m - l)
    assert (a + b).is_zero()
    assert a * (l - m) == RatFunc.const(sp, 1)


def test_ratfunc_monomial_content_normalization():
    sp = VarSpace(["x", "y"])
    x = Poly.var(sp, "x")
    y = Poly.var(sp, "y")
    r = RatFunc(x ** 3 * y, x ** 2 * y + x ** 2 * y ** 2)
    assert r.num == x
    assert r.den == 1 + y
    assert r == RatFunc(x ** 3 * y, x ** 2 * y * (1 + y))


def test_ratfunc_pole_eval():
    sp = VarSpace(["x"])
    r = RatFunc(Poly.one(sp), Poly.var(sp, "x"))
    with pytest.raises(PoleError):
        r.evaluate({"x": 0})
    assert r.evaluate({"x": Fraction(1, 3)}) == gr(3)


def test_ring_axioms_random():
    rng = random.Random(20260815)
    sp = VarSpace(["c", "cb", "t", "u"], conj_pairs={"c": "cb"}, units=["u"])
    for _ in range(25):
        p = rand_poly(rng, sp)
        q = rand_poly(rng, sp)
        r = rand_poly(rng, sp)
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p
        assert (p * q).conj() == p.conj() * q.conj()
        assert (p - p).is_zero()
        assert p.parity() == 0


def test_ratfunc_field_axioms_random():
    rng = random.Random(7)
    sp = VarSpace(["x", "y"])
    for _ in range(12):
        pn, pd = rand_poly(rng, sp, 3, 2), rand_poly(rng, sp, 2, 2) + 1
        qn, qd = rand_poly(rng, sp, 3, 2), rand_poly(rng, sp, 2, 2) + 2
        if pd.is_zero() or qd.is_zero():
            continue
        a = RatFunc(pn, pd)
        b = RatFunc(qn, qd)
        assert a + b == b + a
        assert (a + b) - b == a
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a
        assert (a * b).conj() == a.conj() * b.conj()


def test_eval_consistency_random():
    rng = random.Random(99)
    sp = VarSpace(["c", "cb", "u"], conj_pairs={"c": "cb"}, units=["u"])
    point = {"c": 0.3 + 0.7j, "cb": 0.3 - 0.7j, "u": complex(0.6, 0.8)}
    for _ in range(10):
        p = rand_poly(rng, sp, 3, 2)
        q = rand_poly(rng, sp, 3, 2)
        lhs = (p * q).evaluate(point)
        rhs = p.evaluate(point) * q.evaluate(point)
        assert abs(lhs - rhs) < 1e-9
        assert abs(p.conj().evaluate(point) - p.evaluate(point).conjugate()) < 1e-9
