#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from wellcalc.domain import DomainSpec, Field, laplacian_spectrum, \
    to_spectral, from_spectral, fine_values, project, quadrature, norm_l2, \
    norm_h10, norm_h1sq, norm_lp
from wellcalc.exceptions import InvalidParameter, ShapeMismatch, \
    NonFiniteError

from wellcalc.scenarios import random_fields

from .conftest import sine_field, gauss_legendre


def test_DomainSpec():
    domain = DomainSpec()
    assert domain.dim == 1
    assert domain.lengths == (1.0,)
    assert domain.resolution == (128,)
    assert domain.shape == (128,)
    assert domain.measure == 1.0
    assert domain.scale == 0.5
    assert domain.fine_resolution(2) == (257,)

    square = DomainSpec(dim=2, lengths=(1.0, 2.0))
    assert square.resolution == (32, 32)
    assert square.measure == 2.0
    assert square.scale == 0.5


def test_DomainSpec_fails():
    with pytest.raises(InvalidParameter):
        DomainSpec(dim=3)

    with pytest.raises(InvalidParameter):
        DomainSpec(lengths=-1.0)

    with pytest.raises(InvalidParameter):
        DomainSpec(resolution=4)

    with pytest.raises(InvalidParameter):
        DomainSpec(dim=2, lengths=(1.0, 2.0, 3.0))


def test_Field():
    domain = DomainSpec(resolution=16)
    f = Field.zeros(domain)
    assert f.values.shape == (16,)
    assert not f.values.flags.writeable

    with pytest.raises(ShapeMismatch):
        Field(domain, np.zeros(15))

    with pytest.raises(NonFiniteError):
        Field(domain, np.full(16, np.nan))

    assert np.allclose(f.scaled(2).values, 0)


def test_laplacian_spectrum():
    spectrum = laplacian_spectrum(DomainSpec(lengths=2.0, resolution=8))
    assert spectrum.lambda1 == pytest.approx(math.pi ** 2 / 4)
    assert spectrum.eigenvalues[2] == pytest.approx(9 * math.pi ** 2 / 4)

    square = laplacian_spectrum(DomainSpec(dim=2, resolution=8))
    assert square.lambda1 == pytest.approx(2 * math.pi ** 2)
    assert square.eigenvalues[1, 0] == pytest.approx(5 * math.pi ** 2)


def test_spectral_transforms():
    domain = DomainSpec(resolution=32)
    f = sine_field(domain, ((1, 0.5), (4, -0.25)))
    c = to_spectral(f)
    assert c[0] == pytest.approx(0.5)
    assert c[3] == pytest.approx(-0.25)
    assert np.max(np.abs(np.delete(c, [0, 3]))) < 1e-14
    assert np.allclose(from_spectral(c, domain).values, f.values,
                       atol=1e-14)

    with pytest.raises(ShapeMismatch):
        from_spectral(np.zeros(31), domain)


def test_spectral_transforms_2d():
    domain = DomainSpec(dim=2, resolution=(16, 12), lengths=(1.0, 2.0))
    x, y = domain.mesh()
    f = Field(domain, np.sin(2 * math.pi * x) * np.sin(math.pi * y / 2))
    c = to_spectral(f)
    assert c[1, 0] == pytest.approx(1.0)
    assert np.sum(np.abs(c)) == pytest.approx(1.0)


def test_fine_values_interpolate():
    domain = DomainSpec(resolution=16)
    c = np.zeros(16)
    c[2] = 1.0
    (x,) = domain.axes(oversample=2)
    assert np.allclose(fine_values(c, domain, 2), np.sin(3 * math.pi * x),
                       atol=1e-14)


def test_project_matches_oracle():
    domain = DomainSpec(resolution=64)

    def v(x):
        return 0.7 * np.sin(math.pi * x) + 0.2 * np.sin(2 * math.pi * x)

    (x,) = domain.axes(oversample=2)
    coefficients = project(v(x) ** 3, domain, oversample=2)
    for k in (1, 2, 3, 5):
        expected = 2 * gauss_legendre(
            lambda s: v(s) ** 3 * np.sin(k * math.pi * s), 1.0)
        assert coefficients[k - 1] == pytest.approx(expected, rel=1e-8,
                                                    abs=1e-14)


def test_norms():
    domain = DomainSpec(resolution=32)
    f = sine_field(domain, ((1, 1.0),))
    assert norm_l2(f) == pytest.approx(math.sqrt(0.5))
    assert norm_h10(f) == pytest.approx(math.pi * math.sqrt(0.5))
    assert norm_h1sq(f) == pytest.approx(0.5 * (1 + math.pi ** 2))
    assert norm_lp(f, 2) == pytest.approx(math.sqrt(0.5))
    assert norm_lp(f, 4) ** 4 == pytest.approx(3 / 8)

    with pytest.raises(InvalidParameter):
        norm_lp(f, 0.5)


@pytest.mark.parametrize('domain', [
    DomainSpec(resolution=64),
    DomainSpec(dim=2, lengths=(1.0, 2.0), resolution=(16, 24)),
])
def test_poincare_and_parseval(domain):
    lam = laplacian_spectrum(domain).lambda1
    for f in random_fields(domain, 200, seed=3):
        l2 = norm_l2(f) ** 2
        grad = norm_h10(f) ** 2
        assert grad >= lam * l2 * (1 - 1e-12)
        assert grad >= lam / (1 + lam) * norm_h1sq(f) * (1 - 1e-12)

        nodal = quadrature(f.values ** 2, domain, 1)
        assert nodal == pytest.approx(l2, rel=1e-12)


def test_quadrature_volume():
    domain = DomainSpec(dim=2, lengths=(1.0, 3.0), resolution=16)
    values = np.ones(domain.fine_resolution(2))
    # the nodal rule drops the boundary nodes
    assert quadrature(values, domain, 2) == pytest.approx(
        3.0 * (33 / 34) ** 2 * 1, rel=1e-12)
