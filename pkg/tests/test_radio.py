import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from hetnet.exceptions import DomainError
from hetnet.radio import SystemParams, Tier, db_to_linear, linear_to_db, path_loss, select_tier, sinr

dist = st.floats(0.1, 100.0)


def test_path_loss_examples():
    assert path_loss(2.0, 4.0) == pytest.approx(1 / 16, rel=1e-15)
    assert path_loss(10.0, 3.0) == pytest.approx(1e-3, rel=1e-15)
    np.testing.assert_allclose(path_loss([1.0, 2.0], 4.0), [1.0, 1 / 16])


@pytest.mark.parametrize("r,alpha", [(0.0, 4.0), (-1.0, 4.0), (1.0, 2.0)])
def test_path_loss_domain(r, alpha):
    with pytest.raises(DomainError):
        path_loss(r, alpha)


def test_db_round_trip():
    assert db_to_linear(20.0) == pytest.approx(100.0, rel=1e-15)
    assert linear_to_db(100.0) == pytest.approx(20.0, rel=1e-15)
    assert SystemParams(delta=1000.0).delta_db == pytest.approx(30.0)
    assert SystemParams(delta=0.0).delta_db == -math.inf


def test_select_tier_examples(baseline):
    # Bias exactly cancels the power gap: nearest BS wins, ties go macro.
    assert select_tier(5.0, 6.0, baseline) is Tier.MACRO
    assert select_tier(6.0, 5.0, baseline) is Tier.PICO
    assert select_tier(5.0, 5.0, baseline) is Tier.MACRO
    unbiased = baseline.replace(delta=1.0)
    # macro 100 * 2^-4 = 6.25 beats pico 1 * 1^-4
    assert select_tier(2.0, 1.0, unbiased) is Tier.MACRO
    assert select_tier(2.0, 0.3, unbiased) is Tier.PICO
    assert select_tier(2.0, 1.0, baseline) is Tier.PICO


def test_select_tier_delta_zero_never_pico(baseline):
    assert select_tier(50.0, 0.01, baseline.replace(delta=0.0)) is Tier.MACRO


def test_select_tier_domain(baseline):
    with pytest.raises(DomainError):
        select_tier(0.0, 1.0, baseline)


def test_sinr_examples(baseline):
    # Signal 1 * 1^-4; one interferer at 2 with unit fade gives 1/16.
    assert sinr(1.0, 1.0, [2.0], [1.0], baseline) == pytest.approx(16.0, rel=1e-15)
    noisy = baseline.replace(noise=1.0)
    assert sinr(1.0, 1.0, [], [], noisy) == pytest.approx(1.0)
    assert sinr(1.0, 1.0, [], [], baseline) == math.inf


def test_sinr_shape_mismatch(baseline):
    with pytest.raises(DomainError):
        sinr(1.0, 1.0, [1.0, 2.0], [1.0], baseline)


@given(r1=dist, r2=dist, delta_db=st.floats(0, 60))
def test_equal_bias_is_nearest_bs(r1, r2, delta_db):
    delta = db_to_linear(delta_db)
    p = SystemParams(p1=delta, p2=1.0, delta=delta)
    assume(p.bias_ratio == 1.0)
    assert select_tier(r1, r2, p) is (Tier.MACRO if r1 <= r2 else Tier.PICO)


@given(r1=dist, r2=dist, lo=st.floats(0, 60), step=st.floats(0, 30))
def test_more_bias_never_pulls_users_to_macro(r1, r2, lo, step):
    base = SystemParams()
    a = select_tier(r1, r2, base.replace(delta=db_to_linear(lo)))
    b = select_tier(r1, r2, base.replace(delta=db_to_linear(lo + step)))
    assert not (a is Tier.PICO and b is Tier.MACRO)


@given(
    r=dist,
    h=st.floats(0.01, 10),
    ds=st.lists(dist, min_size=1, max_size=8),
    c=st.floats(0.01, 100),
    p0=st.floats(0.01, 100),
)
def test_sinr_invariances(r, h, ds, c, p0):
    base = SystemParams()
    fades = np.linspace(0.5, 2.0, len(ds))
    s = sinr(r, h, ds, fades, base)
    scaled = sinr(c * r, h, [c * x for x in ds], fades, base)
    powered = sinr(r, h, ds, fades, base.replace(p0=p0))
    assert scaled == pytest.approx(s, rel=1e-9)
    assert powered == pytest.approx(s, rel=1e-9)


@given(r=dist, ds=st.lists(dist, min_size=1, max_size=8), bump=st.floats(0.01, 5))
def test_sinr_monotone(r, ds, bump):
    base = SystemParams(noise=1e-6)
    fades = np.ones(len(ds))
    s = sinr(r, 1.0, ds, fades, base)
    assert sinr(r, 1.0 + bump, ds, fades, base) > s
    assert sinr(r, 1.0, ds, fades + bump, base) < s
    assert sinr(r, 1.0, ds, fades, base.replace(noise=1e-6 + bump)) < s


@pytest.mark.parametrize(
    "kw",
    [
        dict(alpha=2.0),
        dict(alpha=1.5),
        dict(p1=0.5, p2=1.0),
        dict(p2=0.0),
        dict(lambda0=0.0),
        dict(lambda2=-1.0),
        dict(delta=-1.0),
        dict(t1=-0.1),
        dict(d=0.0),
        dict(noise=math.nan),
        dict(t2=math.inf),
    ],
)
def test_params_validation(kw):
    with pytest.raises(DomainError):
        SystemParams(**kw)


def test_params_defaults(baseline):
    assert baseline.bias_ratio == 1.0
    assert baseline.d == pytest.approx(50 / math.sqrt(3))
    assert baseline.replace(t1=2.0).t1 == 2.0
