import hypothesis
from hypothesis import strategies as st

from fhodge.scalars import Scalar, rat

hypothesis.settings.register_profile(
    "fhodge", deadline=None, max_examples=40, derandomize=True
)
hypothesis.settings.load_profile("fhodge")


def sc(a, b=0, d=1):
    """Shorthand for the scalar a/d + (b/d)i."""
    return Scalar(rat(a, d), rat(b, d))


rationals = st.fractions(
    min_value=-8, max_value=8, max_denominator=6
).map(lambda f: rat(f.numerator, f.denominator))

scalars = st.builds(Scalar, rationals, rationals)
nonzero_scalars = scalars.filter(lambda s: not s.is_zero())
