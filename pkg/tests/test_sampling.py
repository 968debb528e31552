import random

import pytest

from heisvoa import linalg as la
from heisvoa import sampling as sm
from heisvoa.bispace import form, is_regular
from heisvoa.conformal import is_automorphism
from heisvoa.scalars import is_zero


def test_seeded_determinism():
    a = [sm.pair(random.Random(9), sm.shift(random.Random(9), 3)) for _ in range(2)]
    assert a[0] == a[1]


def test_shift_classes(rng):
    for d in range(2, 5):
        assert is_zero(form(*[sm.shift(rng, d, "isotropic")] * 2))
        assert not is_zero(form(*[sm.shift(rng, d, "value")] * 2))
        assert la.is_zero_vector(sm.shift(rng, d, "zero"))
    with pytest.raises(ValueError):
        sm.shift(rng, 1, "isotropic")


def test_regular_subspaces(rng):
    for _ in range(30):
        S = sm.regular_subspace(rng, 4, complex_entries=True)
        assert is_regular(S)


def test_stabilizer_elements_fix_h(rng):
    for d in range(1, 5):
        for mod in ("value", "zero") + (("isotropic",) if d > 1 else ()):
            hv = sm.shift(rng, d, mod)
            assert is_automorphism(sm.stabilizer_element(rng, hv), hv)


def test_perturbed_is_invalid(rng):
    for _ in range(30):
        p = sm.pair(rng, sm.shift(rng, 3))
        q = sm.perturbed(rng, p)
        assert la.is_symmetric(q.A) and not q.is_valid()


def test_family_config_rejects_out_of_range():
    with pytest.raises(ValueError):
        sm.family_config("I4", 2, 3)
