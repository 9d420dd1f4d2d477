from pathlib import Path

import pytest

import qdm

FAN_DIR = Path(__file__).resolve().parent.parent / "fans"

CORPUS = ["p1", "p2", "p3", "p1xp1", "hirzebruch1", "dp2"]


def load_fan(name):
    return qdm.parse_fan((FAN_DIR / (name + ".json")).read_text())


@pytest.fixture(scope="session")
def corpus():
    """name -> (fan, charge matrix, ring, mori generators) for the test fans."""
    out = {}
    for name in CORPUS:
        fan = load_fan(name)
        cm = qdm.charge_matrix(fan)
        ring = qdm.build_ring(fan, cm)
        gens = qdm.mori_generators(fan, cm)
        out[name] = (fan, cm, ring, gens)
    return out
