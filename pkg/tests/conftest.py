import random
from pathlib import Path

import pytest

from hopes import ground_instantiate, parse_program, typecheck
from hopes.herbrand import GroundProgram

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"

# every well-formed program in the shipped corpus (broken.hop is the
# deliberate parse-error fixture and stays out of this list)
CORPUS = [
    "identity",
    "defaults",
    "subset",
    "stratified_ho",
    "unstratified_ho",
    "choice_pair",
    "asymmetric_choice",
    "even_loop",
    "self_support",
    "naturals",
]


def program_path(name: str) -> Path:
    return PROGRAMS / f"{name}.hop"


def load(name: str):
    return typecheck(parse_program(program_path(name).read_text()))


def load_ground(name: str, k: int = 3) -> GroundProgram:
    return ground_instantiate(load(name), k)


@pytest.fixture
def corpus_grounds():
    return {name: load_ground(name) for name in CORPUS}


def random_ground_program(rng: random.Random, max_atoms: int = 10, max_clauses: int = 15) -> GroundProgram:
    """A random propositional program over atoms a0..a{n-1}."""
    n = rng.randint(1, max_atoms)
    atoms = [f"a{i}" for i in range(n)]
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        head = rng.choice(atoms)
        body_len = rng.randint(0, 4)
        pos, neg = [], []
        for _ in range(body_len):
            (neg if rng.random() < 0.4 else pos).append(rng.choice(atoms))
        clauses.append((head, pos, neg))
    return GroundProgram.build(atoms, clauses)
