"""Compensated accumulation helpers.

The alternating sums in this package transiently exceed their limits by many
orders of magnitude, so plain ``+=`` loses digits that the tolerance checks
need.  ``KahanSum`` keeps a running compensation term; it works unchanged for
``float`` and ``complex`` because the update uses only componentwise ``+``
and ``-``.
"""


class KahanSum:
    """Compensated running sum (Kahan). Add values, read ``value``."""

    __slots__ = ("_s", "_c")

    def __init__(self, start=0.0):
        self._s = start
        self._c = start * 0

    def add(self, x):
        y = x - self._c
        t = self._s + y
        self._c = (t - self._s) - y
        self._s = t

    @property
    def value(self):
        return self._s
