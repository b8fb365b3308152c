#!/usr/bin/env python3
"""Random-graph survey: sample sink-free labelled graphs, keep the weakly
left-resolving ones, and tabulate family sizes, ideal-lattice sizes, and
simplicity verdicts.  Deterministic for a fixed seed."""

import argparse
import pathlib
import random
import sys
from collections import Counter

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from lgca.accommodating import bar_accommodating, is_weakly_left_resolving
from lgca.dynamics import is_simple
from lgca.graph import LabelledGraph
from lgca.ideals import enumerate_hs
from lgca.merged import merge


def sample_graph(rng, max_vertices, max_labels):
    n = rng.randint(2, max_vertices)
    k = rng.randint(1, max_labels)
    vertices = [f"v{i}" for i in range(n)]
    labels = [chr(ord("a") + i) for i in range(k)]
    edges = set()
    for v in vertices:
        for _ in range(rng.randint(1, 2)):
            edges.add((v, rng.choice(vertices), rng.choice(labels)))
    for _ in range(rng.randint(0, n)):
        edges.add((rng.choice(vertices), rng.choice(vertices), rng.choice(labels)))
    return LabelledGraph(vertices, sorted(edges))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200, help="samples to draw")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--max-vertices", type=int, default=6)
    parser.add_argument("--max-labels", type=int, default=3)
    parser.add_argument("--lmax", type=int, default=8)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    wlr_count = 0
    lattice_sizes = Counter()
    verdicts = Counter()
    merged_shrink = 0

    import warnings

    for _ in range(args.count):
        g = sample_graph(rng, args.max_vertices, args.max_labels)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            bar = bar_accommodating(g)
            ok, _ = is_weakly_left_resolving(g, bar)
            if not ok:
                continue
            wlr_count += 1
            lattice_sizes[len(enumerate_hs(bar))] += 1
            if len(merge(g).graph.vertices) < len(g.vertices):
                merged_shrink += 1
            verdicts[str(is_simple(g, level_bound=args.lmax).verdict)] += 1

    print(f"samples: {args.count}, weakly left-resolving: {wlr_count}")
    print(f"graphs that shrink under merging: {merged_shrink}")
    print("ideal lattice sizes:",
          ", ".join(f"{k}:{v}" for k, v in sorted(lattice_sizes.items())))
    print("simplicity verdicts:",
          ", ".join(f"{k}:{v}" for k, v in sorted(verdicts.items())))


if __name__ == "__main__":
    main()
