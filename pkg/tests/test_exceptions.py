#!/usr/bin/env python
# -*- coding: utf-8 -*-

from wellcalc.exceptions import WellCalcError, InvalidBeta, InvalidDelta, \
    ConfigError, PropertyFailure, ToleranceFailure, StepCollapse


def test_WellCalcError():
    exc = WellCalcError('some message')
    assert str(exc) == 'WellCalcError: some message'
    assert repr(exc) == 'WellCalcError: some message'

    exc2 = WellCalcError()
    assert str(exc2) == 'WellCalcError'


def test_InvalidBeta():
    exc = InvalidBeta(-1)
    assert isinstance(exc, WellCalcError)
    assert isinstance(exc, ValueError)
    assert str(exc) == "InvalidBeta: '-1' should be a number greater than 0"

    # can also be caught by a ValueError try block
    try:
        raise exc
    except ValueError as err:
        assert isinstance(err, WellCalcError)


def test_InvalidDelta():
    exc = InvalidDelta('delta should be > 0')
    assert isinstance(exc, ValueError)
    assert str(exc) == 'InvalidDelta: delta should be > 0'


def test_ConfigError():
    exc = ConfigError("unknown key 'q'", 4)
    assert exc.lineno == 4
    assert exc.lines == (4,)
    assert str(exc) == "ConfigError: line 4: unknown key 'q'"

    dup = ConfigError("duplicate key 'p'", lines=(2, 5))
    assert dup.lineno is None
    assert dup.lines == (2, 5)
    assert str(dup) == "ConfigError: line 2, 5: duplicate key 'p'"

    plain = ConfigError('missing section')
    assert plain.lines == ()
    assert str(plain) == 'ConfigError: missing section'


def test_PropertyFailure():
    exc = PropertyFailure('identity')
    assert isinstance(exc, AssertionError)
    assert str(exc) == 'PropertyFailure: identity'


def test_numerical_failures():
    assert isinstance(ToleranceFailure(), RuntimeError)
    assert isinstance(StepCollapse('dt'), WellCalcError)
    assert str(StepCollapse('dt')) == 'StepCollapse: dt'
