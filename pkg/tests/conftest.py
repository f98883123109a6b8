import pytest


class ScriptedRng:
    """Stands in for RngStream; hands out a fixed list of uniforms."""

    def __init__(self, values):
        self.values = list(values)
        self.used = 0

    def random(self):
        if self.used >= len(self.values):
            raise AssertionError("scripted rng exhausted")
        v = self.values[self.used]
        self.used += 1
        return v

    def integer(self, low, high):
        return low + int(self.random() * (high - low + 1))

    @property
    def exhausted(self):
        return self.used == len(self.values)


HIT = 0.0
MISS = 0.999


@pytest.fixture
def scripted():
    return ScriptedRng
