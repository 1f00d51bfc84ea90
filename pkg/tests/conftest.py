import random

from hypothesis import strategies as st

from poset_forge.graph import ColoredMultigraph


@st.composite
def colored_graphs(draw, max_d=4, max_n=5, connected=True):
    """Small colored multigraphs; a random spanning tree keeps them connected."""
    d = draw(st.integers(1, max_d))
    n = draw(st.integers(1, max_n))
    verts = [f"v{i}" for i in range(n)]
    edges = []
    if connected:
        for i in range(1, n):
            j = draw(st.integers(0, i - 1))
            edges.append((verts[i], verts[j], draw(st.integers(1, d))))
    if n > 1:
        extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1),
                                        st.integers(1, d)), max_size=5))
        edges += [(verts[a], verts[b], c) for a, b, c in extra if a != b]
    return ColoredMultigraph(d, verts, edges)


def seeded(seed=0):
    return random.Random(seed)


# Acceptance criteria report one line each at the end of the run.
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {n:>2}. {title}  {detail}")
