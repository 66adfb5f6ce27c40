import pytest

from ucsets import SetFamily


@pytest.fixture
def counterexample():
    """{∅,{a},{b},{a,b},{a,b,c}} on {a,b,c}: fails the r=0 inequality."""
    return SetFamily.from_sets([[], ["a"], ["b"], ["a", "b"], ["a", "b", "c"]], "abc")


@pytest.fixture
def powerset2():
    return SetFamily.powerset(2)
