import pytest

from heisrep import verify


@pytest.mark.parametrize("name", sorted(verify.SUITES))
def test_suite_is_green(name):
    checks = verify.run([name])[name]
    assert checks
    failed = [(c.name, c.detail) for c in checks if not c.passed]
    assert not failed


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify.run(["nope"])
