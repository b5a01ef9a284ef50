import pytest

from gapnkit import make_field

_cache = {}


@pytest.fixture(scope="session")
def field():
    """Memoized field constructor; contexts are immutable and shareable."""

    def get(p, n, modulus=None):
        key = (p, n, None if modulus is None else modulus.coeffs)
        if key not in _cache:
            _cache[key] = make_field(p, n, modulus)
        return _cache[key]

    return get
