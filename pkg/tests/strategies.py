from hypothesis import strategies as st

from approxforms.poset import FinitePoset


@st.composite
def posets(draw, max_size=6):
    """Random orders generated from pairs that respect a random linear order."""
    n = draw(st.integers(1, max_size))
    names = [f"e{i}" for i in range(n)]
    order = draw(st.permutations(names))
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                pairs.append((order[i], order[j]))
    return FinitePoset(names, pairs)


@st.composite
def poset_maps(draw, codomain, max_size=6):
    from approxforms.poset import PosetMap

    M = draw(posets(max_size))
    values = [draw(st.sampled_from(codomain.elements)) for _ in M.elements]
    return PosetMap(M, codomain, values)
