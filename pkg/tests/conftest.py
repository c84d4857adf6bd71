import hypothesis.strategies as st
from hypothesis import settings

from commcount.numfield import QuadRat, parse_ideal

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

TAME_IDEALS = [
    parse_ideal(s)
    for s in ("ram", "inert:3", "inert:7", "split:11:+", "split:11:-", "split:19:+", "split:29:-", "inert:13")
]

small_fractions = st.fractions(min_value=-60, max_value=60, max_denominator=12)
quadrats = st.builds(QuadRat, small_fractions, small_fractions)
nonzero_quadrats = quadrats.filter(bool)
integral_quadrats = st.builds(
    QuadRat, st.integers(-200, 200), st.integers(-200, 200)
).filter(bool)
tame_ideals = st.sampled_from(TAME_IDEALS)
nonzero_rationals = st.fractions(max_denominator=10**4).filter(lambda q: q != 0 and abs(q.numerator) <= 10**4)

