"""Named example shifts and a seeded generator of small random ones."""
import random

from .dsl import parse_spec
from .blocks import build_blocks
from .patterns import Alphabet, FinitePattern, SftSpec, normalize_to_cubes
from .strips import block_adjacency, closed_walks

NAMED = {
    "hardsquare": """
        # no two 1s side by side or on top of each other
        sft { dim 2 alphabet 0 1
              forbid { (0,0)=1 (1,0)=1 }
              forbid { (0,0)=1 (0,1)=1 } }
    """,
    "checkerboard": """
        sft { dim 2 alphabet a b
              forbid { (0,0)=a (1,0)=a }  forbid { (0,0)=b (1,0)=b }
              forbid { (0,0)=a (0,1)=a }  forbid { (0,0)=b (0,1)=b } }
    """,
    "contradiction": """
        # horizontal 00, horizontal 01 and vertical 11 cannot all be avoided
        sft { dim 2 alphabet 0 1
              forbid { (0,0)=0 (1,0)=0 }
              forbid { (0,0)=0 (1,0)=1 }
              forbid { (0,0)=1 (0,1)=1 } }
    """,
    "nocells": """
        sft { dim 2 alphabet 0 1 forbid { (0,0)=0 } forbid { (0,0)=1 } }
    """,
    "fullshift": """
        sft { dim 2 alphabet 0 1 }
    """,
}


def named(name) -> SftSpec:
    return parse_spec(NAMED[name]).spec


def random_pattern(rng, k, max_width=3, max_cells=4):
    box = [(x, y) for x in range(max_width) for y in range(max_width)]
    size = min(rng.choice((1, 2, 2, 2, 3, 3, 4, 4)), max_cells, len(box))
    cells = rng.sample(box, size)
    return FinitePattern(2, tuple((c, rng.randrange(k)) for c in cells))


def random_spec(rng, max_symbols=3, max_patterns=4, max_width=3):
    k = rng.randint(2, max_symbols)
    count = rng.randint(1, max_patterns)
    patterns = tuple(random_pattern(rng, k, max_width) for _ in range(count))
    return SftSpec(Alphabet(tuple(str(i) for i in range(k))), 2, patterns)


def strip_walks(spec, max_period):
    blocks = build_blocks(spec, normalize_to_cubes(spec))
    return len(closed_walks(block_adjacency(spec, blocks), max_period, 10 ** 6))


def random_corpus(size=24, seed=20240601, max_blocks=64, max_walks=400):
    """Random planar specs (at most 3 symbols, 4 patterns, width 3).

    Specs with more than ``max_blocks`` allowed cubes, or more than
    ``max_walks`` closed block walks of length at most 3, are skipped so that
    the full strip matrix at period budget 3 stays small.
    Except for every fourth spec, at least two allowed cubes are required so
    the corpus is not dominated by constant or empty shifts.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        spec = random_spec(rng)
        n = len(normalize_to_cubes(spec).allowed)
        if n > max_blocks or (n < 2 and len(out) % 4):
            continue
        if strip_walks(spec, 3) <= max_walks:
            out.append(spec)
    return out
