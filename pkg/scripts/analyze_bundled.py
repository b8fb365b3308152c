#!/usr/bin/env python3
"""Run the full analysis pipeline over the bundled example graphs and print
one summary block per graph: family sizes, ideal lattice, merged form, and
the simplicity verdict."""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from lgca.accommodating import (
    bar_accommodating,
    is_weakly_left_resolving,
    minimal_accommodating,
)
from lgca.dynamics import is_simple
from lgca.graph import parse_graph_file
from lgca.ideals import enumerate_hs, ideal_descriptor
from lgca.merged import merge, verify_merge


def describe(path):
    g = parse_graph_file(path)
    print(f"== {path.name}")
    print(f"   {len(g.vertices)} vertices, {len(g.edges)} edges, "
          f"alphabet {{{','.join(g.alphabet)}}}")
    minimal = minimal_accommodating(g)
    bar = bar_accommodating(g)
    wlr, _ = is_weakly_left_resolving(g, bar)
    print(f"   families: minimal {len(minimal)} members, "
          f"complement-closed {len(bar)} members, "
          f"weakly left-resolving: {'yes' if wlr else 'no'}")
    lattice = enumerate_hs(bar)
    proper = [
        h for h in lattice if not h.is_trivial and not h.is_whole
    ]
    print(f"   ideal lattice: {len(lattice)} nodes, {len(proper)} proper nonzero")
    for h in proper:
        d = ideal_descriptor(h)
        print(f"     max {{{','.join(h.max_element)}}} -> quotient alphabet "
              f"{{{','.join(d.restricted_alphabet)}}}")
    m = merge(g)
    report = verify_merge(m)
    print(f"   merged graph: {len(m.graph.vertices)} vertices, "
          f"{len(m.graph.edges)} edges, transport checks "
          f"{'all pass' if report.all_pass else 'FAIL: ' + str(report.failures())}")
    if wlr:
        verdict = is_simple(g)
        print(f"   simplicity: {verdict.summary()}")
    else:
        print("   simplicity: skipped (needs weak left-resolving)")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    default_dir = pathlib.Path(__file__).resolve().parent.parent / "graphs"
    parser.add_argument("paths", nargs="*", type=pathlib.Path,
                        help="graph files (default: bundled graphs/)")
    args = parser.parse_args()
    paths = args.paths or sorted(default_dir.glob("*.lgraph"))
    for path in paths:
        describe(path)


if __name__ == "__main__":
    main()
