import pytest
import sympy

from evolab.polyring import GRevLex, Lex

# criterion number -> (description, outcome); one failing test fails the criterion
ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, text = mark.args
    ok = rep.passed and ACCEPTANCE.get(n, (text, "PASS"))[1] == "PASS"
    ACCEPTANCE[n] = (text, "PASS" if ok else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        text, res = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {res}  {text}")


# sympy is used only as an independent oracle


def to_sympy(f, symbols):
    expr = sympy.Integer(0)
    F = f.ring.field
    for e, c in f.terms.items():
        coeff = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else sympy.Integer(c)
        term = coeff
        for s, a in zip(symbols, e):
            term *= s ** a
        expr += term
    return expr


def sympy_groebner(polys, ring, order="grevlex"):
    syms = sympy.symbols(ring.variables)
    kw = {}
    if hasattr(ring.field, "p"):
        kw["modulus"] = ring.field.p
    exprs = [to_sympy(f, syms) for f in polys]
    G = sympy.groebner(exprs, *syms, order=order, **kw)
    return [from_sympy(g, syms, ring) for g in G.exprs]


def from_sympy(expr, syms, ring):
    from fractions import Fraction

    terms = {}
    for e, c in sympy.Poly(expr, *syms).terms():
        c = sympy.Rational(c)
        terms[tuple(e)] = ring.field.convert(Fraction(int(c.p), int(c.q)))
    return ring.from_dict(terms)


def monic_set(polys, order):
    return sorted(p.monic(order).to_string(order) for p in polys if not p.is_zero())


@pytest.fixture
def grevlex():
    return GRevLex()


@pytest.fixture
def lex():
    return Lex()
