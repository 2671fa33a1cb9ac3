import cmath
import math

import pytest

import rotabouss as rb

STEADY = dict(sigma=2.0, ro=1.0, alpha1=math.sqrt(5.0), alpha2=3.0)
HOPF = dict(sigma=0.5, ro=0.04, alpha1=1.0, alpha2=4.5)
STEADY_RC1 = 658.04265805346305
HOPF_RC2 = 3153.4350996794873


def test_version():
    assert isinstance(rb.__version__, str) and rb.__version__


def test_params_validate():
    with pytest.raises(rb.PreconditionError):
        rb.Params(sigma=-1.0, ro=1.0)
    p = rb.Params(**STEADY)
    assert p.with_rayleigh(5.0).rayleigh == 5.0


def test_cubic_roots_satisfy_vieta():
    p = rb.Params(**STEADY, rayleigh=700.0)
    c2, c1, c0 = rb.cubic_coeffs(p, 1, 0, 1)
    b = rb.eigenvalues(p, 1, 0, 1)
    assert abs(sum(b) + c2) < 1e-9 * c2
    assert abs(b[0] * b[1] * b[2] + c0) < 1e-9 * abs(c0)
    assert b[0].real >= b[1].real >= b[2].real


def test_steady_onset():
    p = rb.Params(**STEADY)
    r = rb.rc1(p)
    assert r.unique and tuple(r.argmin) == (1, 0, 1)
    assert r.r_crit == pytest.approx(STEADY_RC1, rel=1e-12)
    assert rb.rc1_closed_form(p, 1) == pytest.approx(STEADY_RC1, rel=1e-12)
    assert abs(rb.eigenvalues(p.with_rayleigh(r.r_crit), 1, 0, 1)[0]) < 1e-9


def test_hopf_onset():
    p = rb.Params(**HOPF)
    r = rb.rc2(p)
    assert r.onset == rb.Onset.HOPF and r.hopf_admissible
    assert r.r_crit == pytest.approx(HOPF_RC2, rel=1e-12)
    b = rb.eigenvalues(p.with_rayleigh(r.r_crit), 3, 0, 1)
    assert abs(b[0].real) < 1e-9 and b[0].imag == pytest.approx(r.hopf_freq, rel=1e-9)
    with pytest.raises(rb.SigmaOutOfRange):
        rb.rc2(rb.Params(**STEADY))


def test_spectrum_and_growth_rate():
    p = rb.Params(**STEADY, rayleigh=0.0)
    rows = rb.spectrum(p, rb.Truncation(1, 1, 1), rb.Space.FULL)
    assert all(beta.real < 0 for *_, beta in rows)
    re, _, idx = rb.growth_rate(p.with_rayleigh(1.01 * STEADY_RC1), rb.Truncation(2, 2, 2))
    assert re > 0 and tuple(idx) == (1, 0, 1)


def test_x_star_solves_stationarity():
    for b in (0.0, 1.0, 1e3, 1e8):
        x = rb.x_star(b)
        assert (2 * x - math.pi**2) * (x + math.pi**2) ** 2 == pytest.approx(b, abs=1e-9 * (1 + b))


def test_amplitude_model():
    m = rb.build_amplitude_model(rb.Params(**STEADY))
    assert m.delta < 0 and m.j1 == 1
    r = 1.05 * STEADY_RC1
    radius = m.radius_pred(r)
    assert radius == pytest.approx(math.sqrt(-m.beta_of_r(r) / m.delta), rel=1e-12)
    t, x, y = rb.integrate_amplitude(m, r, 0.1, 0.05, 60.0)
    assert math.hypot(x[-1], y[-1]) == pytest.approx(radius, rel=1e-6)
    assert math.atan2(y[-1], x[-1]) == pytest.approx(math.atan2(0.05, 0.1), abs=1e-12)


def test_simulation_growth_matches_eigenvalue():
    p = rb.Params(**STEADY, rayleigh=1.05 * STEADY_RC1)
    d = rb.simulate(p, nx=24, nz=12, dt=5e-3, t_end=2.0, diag_every=0.5)
    beta = rb.eigenvalues(p, 1, 0, 1)[0].real
    assert d["growth_rate"][-1] == pytest.approx(beta, rel=1e-3)
    assert max(d["div_max"]) < 1e-10
    assert len(d["t"]) == len(d["wmode"]) == 5


def test_errors_are_typed():
    with pytest.raises(rb.OutOfLattice):
        rb.eigenvalues(rb.Params(**STEADY), 0, 0, 0)
    assert issubclass(rb.BlowUp, rb.Error) and issubclass(rb.Error, RuntimeError)
