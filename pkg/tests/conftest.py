import json
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from orbibraid.words import GroupParams, Letter, Word

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

GRID = [
    GroupParams(2, 0, 1, (2,)),
    GroupParams(2, 1, 1, (2,)),
    GroupParams(2, 1, 1, (3,)),
    GroupParams(3, 1, 1, (3,)),
    GroupParams(3, 1, 2, (2, 3)),
    GroupParams(3, 2, 1, (3,)),
]
GRID_IDS = [str(p) for p in GRID]


def braid_letters(p: GroupParams) -> list[tuple[str, int]]:
    return ([("h", j) for j in range(1, p.n)] + [("t", l) for l in range(1, p.L + 1)]
            + [("u", nu) for nu in range(1, p.N + 1)])


def words_over(gens: list[tuple[str, int]], max_size: int = 12) -> st.SearchStrategy[Word]:
    letter = st.builds(lambda g, s: Letter(g[0], (g[1],), s), st.sampled_from(gens), st.sampled_from((1, -1)))
    return st.lists(letter, max_size=max_size).map(lambda ls: Word(tuple(ls)))


grid_params = st.sampled_from(GRID)


@st.composite
def params_and_word(draw, max_size: int = 12, grid=GRID):
    p = draw(st.sampled_from(grid))
    return p, draw(words_over(braid_letters(p), max_size))


def rewrite_canon(word: Word, n_x: int, orders: tuple[int, ...]) -> tuple:
    """Reference normal form by string rewriting, independent of the library.

    Letters become codes: free generators +-k (x's then y's), cyclic
    generators 100+nu stored only as positive letters."""
    out: list[int] = []
    for l in word.letters:
        i = l.indices[0]
        if l.family in "xy":
            code = i if l.family == "x" else n_x + i
            code *= l.sign
            if out and out[-1] == -code:
                out.pop()
            else:
                out.append(code)
        else:
            m = orders[i - 1]
            for _ in range(1 if l.sign > 0 else m - 1):
                run = 0
                while run < len(out) and out[-1 - run] == 100 + i:
                    run += 1
                if run == m - 1:
                    del out[len(out) - run:]
                else:
                    out.append(100 + i)
    return tuple(out)


SCHEMA_DIR = Path(__file__).resolve().parents[1] / "src" / "orbibraid" / "schemas"


@pytest.fixture(scope="session")
def validate():
    import jsonschema
    from referencing import Registry, Resource

    schemas = {p.name: json.loads(p.read_text()) for p in SCHEMA_DIR.glob("*.schema.json")}
    registry = Registry().with_resources((k, Resource.from_contents(v)) for k, v in schemas.items())

    def check(name: str, instance) -> None:
        cls = jsonschema.validators.validator_for(schemas[f"{name}.schema.json"])
        cls(schemas[f"{name}.schema.json"], registry=registry).validate(instance)

    return check
