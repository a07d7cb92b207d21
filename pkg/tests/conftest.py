import copy
import json
import random

import pytest

from compmachine import fixture_path, load_machine, validate_machine


def load_doc(name):
    return json.loads(fixture_path(name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def example1():
    return load_machine(fixture_path("example1.json"))


@pytest.fixture(scope="session")
def example2():
    return load_machine(fixture_path("example2.json"))


@pytest.fixture(scope="session")
def example31():
    return load_machine(fixture_path("example3_1.json"))


@pytest.fixture
def example1_doc():
    return copy.deepcopy(load_doc("example1.json"))


def chain_doc(exprs, rules=None, config=None):
    """Machine document for a single chain v0 -> v1 -> ... with one computon per arrow."""
    n = len(exprs)
    return {
        "data_types": [{"id": f"d{i}"} for i in range(n + 1)],
        "computons": [
            {"id": f"f{i}", "dom": f"d{i}", "cod": f"d{i + 1}", **({"expr": e} if e else {})}
            for i, e in enumerate(exprs)
        ],
        "quiver": {
            "vertices": [{"id": f"v{i}", "data_type": f"d{i}"} for i in range(n + 1)],
            "arrows": [
                {"id": f"a{i}", "source": f"v{i}", "target": f"v{i + 1}", "computon": f"f{i}"}
                for i in range(n)
            ],
        },
        "rules": rules or {"delta1": 1, "delta2": 6, "delta3": 6, "delta4": 54},
        "initial_configuration": config or "1" * n,
    }


def random_machine_doc(rng: random.Random, max_arrows: int = 10):
    """A random valid machine: chains, some sharing a root vertex, random rules and c0."""
    n_arrows = rng.randint(1, max_arrows)
    vertices, arrows = [], []
    roots = []
    remaining = n_arrows
    while remaining:
        k = rng.randint(1, remaining)
        remaining -= k
        if roots and rng.random() < 0.3:
            start = rng.choice(roots)
        else:
            start = f"v{len(vertices)}"
            vertices.append(start)
            roots.append(start)
        prev = start
        for _ in range(k):
            nxt = f"v{len(vertices)}"
            vertices.append(nxt)
            arrows.append((f"a{len(arrows)}", prev, nxt))
            prev = nxt
    dt = {v: f"d{v[1:]}" for v in vertices}
    return {
        "data_types": [{"id": dt[v]} for v in vertices],
        "computons": [{"id": f"f{a[1:]}", "dom": dt[s], "cod": dt[t]} for a, s, t in arrows],
        "quiver": {
            "vertices": [{"id": v, "data_type": dt[v]} for v in vertices],
            "arrows": [{"id": a, "source": s, "target": t, "computon": f"f{a[1:]}"} for a, s, t in arrows],
        },
        "rules": {
            "delta1": rng.randrange(4),
            "delta2": rng.randrange(16),
            "delta3": rng.randrange(16),
            "delta4": rng.randrange(256),
        },
        "initial_configuration": "".join(rng.choice("01") for _ in arrows),
    }


def random_machine(rng, max_arrows=10):
    return validate_machine(random_machine_doc(rng, max_arrows))


# -- acceptance reporting ----------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    n, title = mark.args
    prev = _CRITERIA.get(n, (title, True))
    _CRITERIA[n] = (title, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
