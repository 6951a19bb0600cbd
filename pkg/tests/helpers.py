"""Shared shifts and hypothesis strategies for the test modules."""

from hypothesis import strategies as st

from symchaos import catalog
from symchaos.errors import EmptyShift
from symchaos.shift import SftPresentation, build_from_forbidden


def named_shifts():
    """Small named shifts used across modules."""
    return {
        "full2": catalog.full_shift(2),
        "full3": catalog.full_shift(3),
        "golden": catalog.golden_mean(),
        "no_three_ones": build_from_forbidden(["0", "1"], ["111"]),
        "even_blocks": build_from_forbidden(["0", "1"], ["101", "11"]),
        "blocks2": catalog.cyclic_blocks(2),
        "three_symbols": build_from_forbidden(["a", "b", "c"], ["ab", "ca", "cc"]),
    }


@st.composite
def presentations(draw, max_vertices=4, max_symbols=3):
    """Random trimmed presentations (possibly non-transitive or finite)."""
    n = draw(st.integers(1, max_vertices))
    k = draw(st.integers(1, max_symbols))
    symbols = [str(i) for i in range(k)]
    triples = [(f"v{u}", a, f"v{v}") for u in range(n) for a in symbols for v in range(n)]
    chosen = draw(st.lists(st.sampled_from(triples), min_size=1, max_size=3 * n * k,
                           unique=True))
    try:
        return SftPresentation(chosen)
    except EmptyShift:
        return catalog.full_shift(1)


@st.composite
def forbidden_specs(draw):
    alphabet = ["0", "1", "2"][: draw(st.integers(1, 3))]
    words = st.lists(st.sampled_from(alphabet), min_size=1, max_size=3).map(tuple)
    forbidden = draw(st.lists(words, max_size=4))
    return alphabet, forbidden
