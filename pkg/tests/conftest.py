import functools

import pytest

from hallq.gallery import example_quiver
from hallq.hall import HallAlgebra
from hallq.presentation import generate_relations
from hallq.quiver import validate
from hallq.repmod import enumerate_indecomposables
from hallq.unitform import positive_roots, unit_form_of


def a2():
    return validate({"vertices": [1, 2], "arrows": [("a", 1, 2)]})


def a3():
    return validate({"vertices": [1, 2, 3], "arrows": [("a", 1, 2), ("b", 2, 3)]})


QUIVERS = {
    "a2": a2,
    "a3": a3,
    "ex1": lambda: example_quiver(1),
    "ex2": lambda: example_quiver(2, 4),
    "ex3": lambda: example_quiver(3),
    "ex4": lambda: example_quiver(4),
}


@functools.lru_cache(maxsize=None)
def quiver(name):
    return QUIVERS[name]()


@functools.lru_cache(maxsize=None)
def roots(name):
    return positive_roots(unit_form_of(quiver(name)))


@functools.lru_cache(maxsize=None)
def table(name, p):
    return enumerate_indecomposables(quiver(name), p, roots(name), strict=False)


@functools.lru_cache(maxsize=None)
def hall(name, p):
    return HallAlgebra(table(name, p))


@functools.lru_cache(maxsize=None)
def presentation(name):
    bq = quiver(name)
    return generate_relations(unit_form_of(bq), roots(name))


@pytest.fixture
def cache():
    """Session-wide memoized builders, so expensive tables are shared."""
    return type("Cache", (), {
        "quiver": staticmethod(quiver),
        "roots": staticmethod(roots),
        "table": staticmethod(table),
        "hall": staticmethod(hall),
        "presentation": staticmethod(presentation),
    })


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
