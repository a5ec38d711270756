from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from homspec.scalars import Cyc

small_fractions = st.fractions(min_value=-10, max_value=10, max_denominator=12)
cyc_elements = st.lists(small_fractions, min_size=8, max_size=8).map(Cyc)
nonzero_cyc = cyc_elements.filter(bool)
int_cyc = st.lists(st.integers(-10, 10), min_size=8, max_size=8).map(Cyc)


def frac(x) -> Fraction:
    return Fraction(x)
